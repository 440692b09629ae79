//! Interval arithmetic on dyadic fixed-point numbers with outward rounding.
//!
//! An [`Interval`] holds integers `lo <= hi` and a scale `bits`; the real
//! number it encloses lies in `[lo / 2^bits, hi / 2^bits]`. Every operation
//! rounds `lo` down and `hi` up, and series are truncated with an explicit
//! remainder bound, so the true value is always inside.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k as usize
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

/// Working precision in bits for `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

impl Interval {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The exact lower end as a rational.
    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.bits))
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.bits))
    }

    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Interval {
        let n = q.numer() << bits as usize;
        let d = q.denom();
        Interval {
            lo: n.div_floor(d),
            hi: ceil_div(&n, d),
            bits,
        }
    }

    pub fn from_int(n: i64, bits: u32) -> Interval {
        let v = BigInt::from(n) << bits as usize;
        Interval {
            lo: v.clone(),
            hi: v,
            bits,
        }
    }

    /// Re-expresses at a different scale, rounding outward.
    pub fn rescale(&self, bits: u32) -> Interval {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = (bits - self.bits) as usize;
                Interval {
                    lo: &self.lo << s,
                    hi: &self.hi << s,
                    bits,
                }
            }
            Ordering::Less => {
                let d = pow2(self.bits - bits);
                Interval {
                    lo: self.lo.div_floor(&d),
                    hi: ceil_div(&self.hi, &d),
                    bits,
                }
            }
        }
    }

    fn widen(&self, ulps: &BigInt) -> Interval {
        Interval {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
            bits: self.bits,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        assert_eq!(self.bits, o.bits);
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        assert_eq!(self.bits, o.bits);
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let scale = pow2(self.bits);
        let min = products.iter().min().expect("four");
        let max = products.iter().max().expect("four");
        Interval {
            lo: min.div_floor(&scale),
            hi: ceil_div(max, &scale),
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval {
                lo: b,
                hi: a,
                bits: self.bits,
            }
        } else {
            Interval {
                lo: a,
                hi: b,
                bits: self.bits,
            }
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(k.is_positive());
        Interval {
            lo: self.lo.div_floor(k),
            hi: ceil_div(&self.hi, k),
            bits: self.bits,
        }
    }

    /// Multiplication by `2^k` for any sign of `k`.
    pub fn shift(&self, k: i64) -> Interval {
        if k >= 0 {
            Interval {
                lo: &self.lo << k as usize,
                hi: &self.hi << k as usize,
                bits: self.bits,
            }
        } else {
            self.div_int(&pow2((-k) as u32))
        }
    }

    /// `self / o`; panics if `o` contains zero.
    pub fn div(&self, o: &Interval) -> Interval {
        assert_eq!(self.bits, o.bits);
        assert!(!o.contains_zero(), "division by an interval containing zero");
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [&self.lo, &self.hi] {
            for d in [&o.lo, &o.hi] {
                let num = n << self.bits as usize;
                let f = num.div_floor(d);
                let c = ceil_div(&num, d);
                lo = Some(lo.map_or(f.clone(), |l: BigInt| l.min(f)));
                hi = Some(hi.map_or(c.clone(), |h: BigInt| h.max(c)));
            }
        }
        Interval {
            lo: lo.expect("set"),
            hi: hi.expect("set"),
            bits: self.bits,
        }
    }

    /// Midpoint as an `f64`, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let mid = BigRational::new(&self.lo + &self.hi, pow2(self.bits + 1));
        let (n, d) = (mid.numer().clone(), mid.denom().clone());
        // Scale to keep the ratio representable.
        let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
        let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(bits: u32) -> Interval {
    let w = bits + 16;
    atanh(&BigRational::new(1.into(), 3.into()), w)
        .shift(1)
        .rescale(bits)
}

/// `atanh(z)` for rational `|z| <= 1/3`.
fn atanh(z: &BigRational, w: u32) -> Interval {
    assert!(z.abs() * BigInt::from(3) <= BigRational::one());
    let zi = Interval::from_rational(z, w);
    let z2 = zi.mul(&zi);
    let mut power = zi.clone();
    let mut sum = Interval::from_int(0, w);
    let mut j = 0u64;
    loop {
        let term = power.div_int(&BigInt::from(2 * j + 1));
        sum = sum.add(&term);
        if power.lo.abs().max(power.hi.abs()) <= BigInt::from(2) {
            break;
        }
        power = power.mul(&z2);
        j += 1;
    }
    // The remaining terms total at most |z|^(2j+3) / (1 - z^2) <= |power| / 8.
    sum.widen(&BigInt::from(3))
}

/// `ln(x)` for rational `x > 0`.
pub fn ln(x: &BigRational, bits: u32) -> Interval {
    assert!(x.is_positive(), "logarithm of a nonpositive number");
    let w = bits + 32;
    // x = m 2^k with m in [1/2, 2).
    let k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let m = if k >= 0 {
        x / BigRational::from_integer(pow2(k as u32))
    } else {
        x * BigRational::from_integer(pow2((-k) as u32))
    };
    let one = BigRational::one();
    let z = (&m - &one) / (&m + &one);
    let log_m = atanh(&z, w).shift(1);
    ln2(w).mul_int(&BigInt::from(k)).add(&log_m).rescale(bits)
}

/// `exp(v)` over an interval, by evaluating at both ends.
pub fn exp(v: &Interval) -> Interval {
    let bits = v.bits;
    let lo = exp_point(&Interval {
        lo: v.lo.clone(),
        hi: v.lo.clone(),
        bits,
    });
    let hi = exp_point(&Interval {
        lo: v.hi.clone(),
        hi: v.hi.clone(),
        bits,
    });
    Interval {
        lo: lo.lo,
        hi: hi.hi,
        bits,
    }
}

fn exp_point(x: &Interval) -> Interval {
    const HALVINGS: u32 = 10;
    let bits = x.bits;
    let w = bits + 32 + HALVINGS;
    let xw = x.rescale(w);
    let l2 = ln2(w);
    // n = nearest integer to x / ln 2; any n is valid, this keeps r small.
    let n = BigInt::from((xw.to_f64() / std::f64::consts::LN_2).round() as i64);
    let r = xw.sub(&l2.mul_int(&n)).shift(-(HALVINGS as i64));
    // Taylor series; |r| < 1/2 so the tail after a term t is at most |t|.
    let mut sum = Interval::from_int(1, w);
    let mut term = Interval::from_int(1, w);
    let mut j = 1u64;
    loop {
        term = term.mul(&r).div_int(&BigInt::from(j));
        sum = sum.add(&term);
        let size = term.lo.abs().max(term.hi.abs());
        if size <= BigInt::from(1) {
            sum = sum.widen(&(size + 1));
            break;
        }
        j += 1;
    }
    for _ in 0..HALVINGS {
        sum = sum.mul(&sum);
    }
    sum.shift(n.to_i64().expect("exponent fits in i64")).rescale(bits)
}

/// `x^y = exp(y ln x)`.
pub fn pow(x: &BigRational, y: &Interval) -> Interval {
    let bits = y.bits;
    let w = bits + 32;
    exp(&ln(x, w).mul(&y.rescale(w))).rescale(bits)
}

/// Digits of a positive rational in scientific notation with `digits`
/// significant figures, rounded down or up.
pub fn sci(q: &BigRational, digits: u32, round_up: bool) -> String {
    assert!(q.is_positive());
    let ten = BigInt::from(10);
    let (n, d) = (q.numer(), q.denom());
    let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
    // Settle 10^e <= q < 10^(e + 1).
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(ten.pow(k as u32))
        } else {
            BigRational::new(BigInt::one(), ten.pow((-k) as u32))
        }
    };
    while &pow10(e) > q {
        e -= 1;
    }
    while &pow10(e + 1) <= q {
        e += 1;
    }
    let scaled = q * pow10(digits as i64 - 1 - e);
    let mut m = if round_up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    if m >= ten.pow(digits) {
        m /= &ten;
        e += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{head}e{e}")
    } else {
        format!("{head}.{tail}e{e}")
    }
}

/// Fixed-point decimal with `places` digits after the point, truncated toward
/// negative infinity or rounded to nearest (ties up).
pub fn fixed(q: &BigRational, places: u32, round: bool) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = q * BigRational::from_integer(scale.clone());
    let v = if round {
        (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    let neg = v.sign() == Sign::Minus;
    let a = v.abs();
    let int = &a / &scale;
    let frac = &a % &scale;
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = places as usize)
    }
}
