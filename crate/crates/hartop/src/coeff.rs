//! Exact scalar arithmetic: Gaussian rationals and their float images.
//!
//! Every coefficient in the library is a complex number with rational
//! real and imaginary parts, held exactly. Floats appear only at the
//! export boundary, through a correctly rounded conversion.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Exact complex scalar: the coefficient field for all symbols,
/// combinations and matrix entries.
pub type Coeff = Complex<Rat>;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn coeff_zero() -> Coeff {
    Complex::new(rat_zero(), rat_zero())
}

pub fn coeff_one() -> Coeff {
    Complex::new(rat_one(), rat_zero())
}

pub fn coeff_real(r: Rat) -> Coeff {
    Complex::new(r, rat_zero())
}

pub fn coeff_int(v: i64) -> Coeff {
    coeff_real(rat_int(v))
}

pub fn coeff(re: Rat, im: Rat) -> Coeff {
    Complex::new(re, im)
}

pub fn coeff_is_zero(c: &Coeff) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

/// Complex conjugate.
pub fn coeff_conj(c: &Coeff) -> Coeff {
    Complex::new(c.re.clone(), -c.im.clone())
}

/// |c|² as an exact rational.
pub fn coeff_norm_sq(c: &Coeff) -> Rat {
    &c.re * &c.re + &c.im * &c.im
}

/// r^e by binary exponentiation, exact.
pub fn rat_pow(r: &Rat, e: u64) -> Rat {
    let mut base = r.clone();
    let mut e = e;
    let mut acc = rat_one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// c^e by repeated squaring, exact.
pub fn coeff_pow(c: &Coeff, e: u64) -> Coeff {
    let mut base = c.clone();
    let mut e = e;
    let mut acc = coeff_one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// Parses a rational written as `p` or `p/q` in base 10.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let bad = |msg: &str| Error::IllFormedExpression(format!("rational '{s}': {msg}"));
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let p: BigInt = num
        .trim()
        .parse()
        .map_err(|_| bad("numerator is not an integer"))?;
    let q: BigInt = den
        .trim()
        .parse()
        .map_err(|_| bad("denominator is not an integer"))?;
    if q.is_zero() {
        return Err(bad("denominator is zero"));
    }
    Ok(Rat::new(p, q))
}

/// Renders a rational as `p` or `p/q` with positive reduced denominator.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Result of rounding an exact rational to binary64.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rounded {
    /// Nearest double, ties to even; ±∞ when out of range.
    pub value: f64,
    /// True when the magnitude exceeded the finite f64 range.
    pub overflow: bool,
}

/// Correctly rounded conversion of an exact rational to binary64.
///
/// Round-to-nearest, ties-to-even, including subnormal outputs and
/// underflow to zero. Magnitudes at or above 2^1024 (after rounding)
/// become ±∞ with the overflow flag set.
pub fn rat_to_f64(r: &Rat) -> Rounded {
    let p = r.numer();
    let q = r.denom();
    if p.is_zero() {
        return Rounded {
            value: 0.0,
            overflow: false,
        };
    }
    let negative = p.sign() == Sign::Minus;
    let p = p.magnitude().clone();
    let q = q.magnitude().clone();

    // floor(log2(p/q)) via bit lengths, corrected by one comparison
    let mut e = p.bits() as i64 - q.bits() as i64;
    if shifted_cmp(&p, &q, e) == std::cmp::Ordering::Less {
        e -= 1;
    }

    // target precision: 52 fraction bits for normals, fewer in the
    // subnormal range where the exponent is pinned at -1022
    let (prec, min_exp) = (52i64, -1022i64);
    let frac_bits = if e < min_exp {
        prec - (min_exp - e)
    } else {
        prec
    };
    if frac_bits < -1 {
        // smaller than half the least subnormal: underflows to zero
        return Rounded {
            value: signed(0.0, negative),
            overflow: false,
        };
    }

    // integer mantissa m = round(p/q * 2^(frac_bits - e)), ties to even
    let shift = frac_bits - e;
    let (num, den) = if shift >= 0 {
        (p << shift as u64, q)
    } else {
        (p, q << (-shift) as u64)
    };
    let mut m = &num / &den;
    let rem = &num - &m * &den;
    let twice: BigUint = &rem << 1;
    match twice.cmp(&den) {
        std::cmp::Ordering::Greater => m += 1u32,
        std::cmp::Ordering::Equal => {
            if m.bit(0) {
                m += 1u32;
            }
        }
        std::cmp::Ordering::Less => {}
    }
    if e >= min_exp && m.bits() as i64 > prec + 1 {
        // rounding carried into the next binade
        m >>= 1;
        e += 1;
    }
    if e > 1023 {
        return Rounded {
            value: signed(f64::INFINITY, negative),
            overflow: true,
        };
    }

    let value = if e < min_exp {
        // subnormal (or the carry promoted it to the least normal)
        let m64 = m.to_u64().expect("subnormal mantissa fits in 64 bits");
        let bits = if m64 >= 1u64 << 52 {
            1u64 << 52 // least normal: biased exponent 1, fraction 0
        } else {
            m64
        };
        f64::from_bits(bits)
    } else {
        let m64 = m.to_u64().expect("mantissa fits in 64 bits");
        debug_assert!((1u64 << 52..1u64 << 53).contains(&m64));
        let biased = (e + 1023) as u64;
        f64::from_bits((biased << 52) | (m64 & ((1u64 << 52) - 1)))
    };
    Rounded {
        value: signed(value, negative),
        overflow: false,
    }
}

/// Rounds both parts of an exact complex scalar; the flag is the OR of
/// the per-part overflow flags.
pub fn coeff_to_complex_f64(c: &Coeff) -> (Complex<f64>, bool) {
    let re = rat_to_f64(&c.re);
    let im = rat_to_f64(&c.im);
    (
        Complex::new(re.value, im.value),
        re.overflow || im.overflow,
    )
}

fn signed(v: f64, negative: bool) -> f64 {
    if negative {
        -v
    } else {
        v
    }
}

/// Compares p with q·2^e without constructing a quotient.
fn shifted_cmp(p: &BigUint, q: &BigUint, e: i64) -> std::cmp::Ordering {
    if e >= 0 {
        p.cmp(&(q << e as u64))
    } else {
        (p << (-e) as u64).cmp(q)
    }
}
