//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn vec_to_f64(v: &[Q]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q` or a decimal with at most nine fraction digits, exactly.
pub fn parse_q(text: &str) -> Option<Q> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int_part, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.is_empty() && !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().ok()?
        };
        let scale = BigInt::from(10u64.pow(frac.len() as u32));
        let frac_val: BigInt = frac.parse().ok()?;
        let mut value = Q::new(whole * &scale + frac_val, scale);
        if negative {
            value = -value;
        }
        return Some(value);
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// Small random rational `n/d` with `|n| <= max_num`, `1 <= d <= max_den`.
pub fn random_q<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Q {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    qr(n, d)
}

pub fn random_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<Q> {
    (0..len).map(|_| random_q(rng, 5, 4)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn norm_sq(a: &[Q]) -> Q {
    dot(a, a)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_fraction_and_decimal() {
        assert_eq!(parse_q("3"), Some(q(3)));
        assert_eq!(parse_q("-3/6"), Some(qr(-1, 2)));
        assert_eq!(parse_q("0.125"), Some(qr(1, 8)));
        assert_eq!(parse_q("-1.5"), Some(qr(-3, 2)));
        assert_eq!(parse_q("-.5"), Some(qr(-1, 2)));
        assert_eq!(parse_q("0.123456789"), Some(qr(123456789, 1_000_000_000)));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(parse_q(""), None);
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("0.1234567891"), None);
        assert_eq!(parse_q("abc"), None);
        assert_eq!(parse_q("1.2.3"), None);
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_q(&qr(4, 2)), "2");
        assert_eq!(format_q(&qr(-3, 6)), "-1/2");
    }
}
