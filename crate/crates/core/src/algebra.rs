//! Exact eigenvalue arithmetic in the ring generated by γ = 2^(1/n).
//!
//! A value is an integer coefficient vector over the basis {γ^j : j < n}
//! for odd n and {γ^(2j) : j < n/2} for even n, always reduced with
//! γ^n = 2. The triangle uses `n = 1`, where values are plain integers and
//! the folding factor is 2.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{parse_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Number of basis elements for ring index `n`.
pub fn basis_len(n: u32) -> usize {
    if n == 1 {
        1
    } else if n % 2 == 0 {
        (n / 2) as usize
    } else {
        n as usize
    }
}

/// Power of γ carried by basis slot `i`.
pub fn basis_exponent(n: u32, i: usize) -> u32 {
    if n == 1 {
        0
    } else if n % 2 == 0 {
        2 * i as u32
    } else {
        i as u32
    }
}

/// Writes γ^e as 2^q · (basis slot), or `None` when γ^e is outside the ring
/// spanned by the basis (odd powers for even n).
fn reduce_power(n: u32, e: u32) -> Option<(usize, u32)> {
    if n == 1 {
        return if e == 0 { Some((0, 0)) } else { None };
    }
    let (q, r) = e.div_rem(&n);
    if n % 2 == 0 {
        if r % 2 == 1 {
            None
        } else {
            Some(((r / 2) as usize, q))
        }
    } else {
        Some((r as usize, q))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicValue {
    n: u32,
    coeffs: Vec<BigInt>,
}

impl AlgebraicValue {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "ring index must be positive");
        AlgebraicValue {
            n,
            coeffs: vec![BigInt::zero(); basis_len(n)],
        }
    }

    pub fn from_integer(n: u32, c: impl Into<BigInt>) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[0] = c.into();
        v
    }

    pub fn from_coeffs(n: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ring index must be positive".into()));
        }
        if coeffs.len() != basis_len(n) {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for n={}, got {}",
                basis_len(n),
                n,
                coeffs.len()
            )));
        }
        Ok(AlgebraicValue { n, coeffs })
    }

    /// Σ_j γ^(2j) m_j² for a box quantum number, or m₀² + m₁² when `n = 1`.
    pub fn from_quantum_number(n: u32, m: &[u64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("ring index must be positive".into()));
        }
        let expected = if n == 1 { 2 } else { n as usize };
        if m.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "quantum number of length {} does not fit ring n={}",
                m.len(),
                n
            )));
        }
        let mut acc = vec![0u128; basis_len(n)];
        for (j, &mj) in m.iter().enumerate() {
            let sq = (mj as u128) * (mj as u128);
            let (slot, q) = if n == 1 {
                (0, 0)
            } else {
                reduce_power(n, 2 * j as u32).expect("even powers always reduce")
            };
            acc[slot] += sq << q;
        }
        Ok(AlgebraicValue {
            n,
            coeffs: acc.into_iter().map(BigInt::from).collect(),
        })
    }

    /// γ^e reduced into the basis. Fails for odd e when n is even.
    pub fn gamma_power(n: u32, e: u32) -> Result<Self> {
        let (slot, q) = reduce_power(n, e).ok_or_else(|| {
            Error::InvalidArgument(format!("g^{e} is not in the ring for n={n}"))
        })?;
        let mut v = Self::zero(n);
        v.coeffs[slot] = BigInt::one() << q;
        Ok(v)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Parity of the constant coefficient.
    pub fn parity(&self) -> Parity {
        if self.coeffs[0].is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::RingMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(AlgebraicValue {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(AlgebraicValue {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul_integer(&self, c: &BigInt) -> Self {
        AlgebraicValue {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Ring product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = basis_exponent(self.n, i) + basis_exponent(self.n, j);
                let (slot, q) = reduce_power(self.n, e).expect("basis products stay in the ring");
                out.coeffs[slot] += (a * b) << q;
            }
        }
        Ok(out)
    }

    fn scale_up_once(&self) -> Self {
        if self.n == 1 {
            return self.mul_integer(&BigInt::from(2));
        }
        let mut out = Self::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = basis_exponent(self.n, i) + 2;
            let (slot, q) = reduce_power(self.n, e).expect("even shift stays in the ring");
            out.coeffs[slot] = c << q;
        }
        out
    }

    fn scale_down_once(&self) -> Option<Self> {
        if self.n == 1 {
            return if self.coeffs[0].is_even() {
                Some(AlgebraicValue {
                    n: 1,
                    coeffs: vec![&self.coeffs[0] >> 1],
                })
            } else {
                None
            };
        }
        let mut out = Self::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = basis_exponent(self.n, i);
            if e >= 2 {
                let (slot, _) = reduce_power(self.n, e - 2).expect("even shift stays in the ring");
                out.coeffs[slot] = c.clone();
            } else {
                if c.is_odd() {
                    return None;
                }
                let (slot, _) = reduce_power(self.n, e + self.n - 2).expect("even shift stays in the ring");
                out.coeffs[slot] = c >> 1;
            }
        }
        Some(out)
    }

    /// Multiplies by the folding factor to the power `k` (γ² for boxes, 2 for
    /// the triangle). Negative `k` divides and fails when the quotient leaves
    /// the ring.
    pub fn scale_gamma2(&self, k: i32) -> Result<Self> {
        let mut v = self.clone();
        if k >= 0 {
            for _ in 0..k {
                v = v.scale_up_once();
            }
        } else {
            for _ in 0..(-k) {
                v = v
                    .scale_down_once()
                    .ok_or_else(|| Error::NotDivisible(self.to_string()))?;
            }
        }
        Ok(v)
    }

    /// Floating-point approximation.
    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_f64().unwrap_or(f64::NAN) * gamma_pow_f64(self.n, basis_exponent(self.n, i)))
            .sum()
    }

    /// Exact sign of the represented real number.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(ord) = fast_sign(self) {
            return ord;
        }
        interval_sign(self)
    }

    /// Exact comparison; fails only when the rings differ.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check_ring(other)?;
        if self.coeffs == other.coeffs {
            return Ok(Ordering::Equal);
        }
        Ok(self.sub(other)?.signum())
    }

    pub fn parse(n: u32, s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err(s, "empty value"));
        }
        let mut v = Self::zero(n);
        for (sign, term) in split_signed_terms(&compact).map_err(|r| parse_err(s, r))? {
            let (coef, e) = parse_term(term).map_err(|r| parse_err(s, r))?;
            let (slot, q) = reduce_power(n, e)
                .ok_or_else(|| parse_err(s, format!("g^{e} is not in the ring for n={n}")))?;
            let c = if sign { -coef } else { coef };
            v.coeffs[slot] += c << q;
        }
        Ok(v)
    }
}

impl PartialOrd for AlgebraicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: by ring index first, then by exact real value.
impl Ord for AlgebraicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.compare(other).expect("same ring"))
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = basis_exponent(self.n, i);
            let mag = c.abs();
            let body = if e == 0 {
                mag.to_string()
            } else {
                format!("{mag}*g^{e}")
            };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                f.write_str(&body)?;
                first = false;
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                f.write_str(&body)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for AlgebraicValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn split_signed_terms(s: &str) -> std::result::Result<Vec<(bool, &str)>, String> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut negative = false;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        negative = bytes[0] == b'-';
        start = 1;
    }
    let mut i = start;
    while i <= bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            let term = &s[start..i];
            if term.is_empty() {
                return Err("empty term".into());
            }
            out.push((negative, term));
            if i < bytes.len() {
                negative = bytes[i] == b'-';
            }
            start = i + 1;
        }
        i += 1;
    }
    Ok(out)
}

fn parse_term(term: &str) -> std::result::Result<(BigInt, u32), String> {
    let (coef_part, g_part) = match term.find('g') {
        None => (term, None),
        Some(pos) => {
            let coef = term[..pos].trim_end_matches('*');
            (coef, Some(&term[pos + 1..]))
        }
    };
    let coef = if coef_part.is_empty() {
        BigInt::one()
    } else {
        coef_part
            .parse::<BigInt>()
            .map_err(|_| format!("bad coefficient {coef_part:?}"))?
    };
    let e = match g_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .ok_or_else(|| format!("expected '^' in {term:?}"))?
            .parse::<u32>()
            .map_err(|_| format!("bad exponent in {term:?}"))?,
    };
    Ok((coef, e))
}

fn gamma_pow_f64(n: u32, e: u32) -> f64 {
    if e == 0 {
        1.0
    } else {
        2f64.powf(e as f64 / n as f64)
    }
}

/// Decides the sign in double precision when the result is far from zero.
fn fast_sign(v: &AlgebraicValue) -> Option<Ordering> {
    let mut sum = 0.0f64;
    let mut mag = 0.0f64;
    for (i, c) in v.coeffs.iter().enumerate() {
        let cf = c.to_f64()?;
        let t = cf * gamma_pow_f64(v.n, basis_exponent(v.n, i));
        sum += t;
        mag += t.abs();
    }
    if !sum.is_finite() || !mag.is_finite() {
        return None;
    }
    let slack = mag * 1e-12;
    if sum > slack {
        Some(Ordering::Greater)
    } else if sum < -slack {
        Some(Ordering::Less)
    } else {
        None
    }
}

type RootKey = (u32, u32, u32);

fn root_cache() -> &'static Mutex<HashMap<RootKey, (BigUint, BigUint)>> {
    static CACHE: OnceLock<Mutex<HashMap<RootKey, (BigUint, BigUint)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer bounds lo ≤ γ^e·2^p ≤ hi.
fn scaled_power_bounds(n: u32, e: u32, p: u32) -> (BigUint, BigUint) {
    let key = (n, e, p);
    if let Some(b) = root_cache().lock().expect("cache lock").get(&key) {
        return b.clone();
    }
    let bounds = if e == 0 {
        let x = BigUint::one() << p;
        (x.clone(), x)
    } else {
        let target = BigUint::one() << (e + n * p);
        let lo = target.nth_root(n);
        if lo.pow(n) == target {
            (lo.clone(), lo)
        } else {
            let hi = &lo + 1u32;
            (lo, hi)
        }
    };
    root_cache()
        .lock()
        .expect("cache lock")
        .insert(key, bounds.clone());
    bounds
}

fn interval_sign(v: &AlgebraicValue) -> Ordering {
    let mut p = 64u32;
    loop {
        let mut lo_sum = BigInt::zero();
        let mut hi_sum = BigInt::zero();
        for (i, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (lo, hi) = scaled_power_bounds(v.n, basis_exponent(v.n, i), p);
            let lo = BigInt::from(lo);
            let hi = BigInt::from(hi);
            if c.is_positive() {
                lo_sum += c * &lo;
                hi_sum += c * &hi;
            } else {
                lo_sum += c * &hi;
                hi_sum += c * &lo;
            }
        }
        if lo_sum.is_positive() {
            return Ordering::Greater;
        }
        if hi_sum.is_negative() {
            return Ordering::Less;
        }
        p *= 2;
    }
}

/// Strict upper bound `numer / denom` for spectral enumeration, so that
/// decimal cutoffs compare exactly against ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cutoff {
    numer: AlgebraicValue,
    denom: BigInt,
}

impl Cutoff {
    pub fn exact(v: AlgebraicValue) -> Self {
        Cutoff {
            numer: v,
            denom: BigInt::one(),
        }
    }

    pub fn integer(n: u32, c: i64) -> Self {
        Self::exact(AlgebraicValue::from_integer(n, c))
    }

    /// Accepts integers, decimals (`12.5`), fractions (`25/2`) and the ring
    /// text form (`3 + 2*g^2`).
    pub fn parse(n: u32, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains('g') {
            return Ok(Self::exact(AlgebraicValue::parse(n, t)?));
        }
        let (num, den) = if let Some((a, b)) = t.split_once('/') {
            let a: BigInt = a.trim().parse().map_err(|_| parse_err(s, "bad numerator"))?;
            let b: BigInt = b.trim().parse().map_err(|_| parse_err(s, "bad denominator"))?;
            (a, b)
        } else if let Some((whole, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err(s, "bad decimal fraction"));
            }
            let negative = whole.starts_with('-');
            let whole_digits = whole.trim_start_matches(['-', '+']);
            let digits = format!("{}{}", if whole_digits.is_empty() { "0" } else { whole_digits }, frac);
            let mut a: BigInt = digits.parse().map_err(|_| parse_err(s, "bad decimal"))?;
            if negative {
                a = -a;
            }
            (a, BigInt::from(10u32).pow(frac.len() as u32))
        } else {
            let a: BigInt = t.parse().map_err(|_| parse_err(s, "not a number"))?;
            (a, BigInt::one())
        };
        if !den.is_positive() {
            return Err(parse_err(s, "denominator must be positive"));
        }
        let g = num.gcd(&den);
        Ok(Cutoff {
            numer: AlgebraicValue::from_integer(n, &num / &g),
            denom: &den / &g,
        })
    }

    pub fn n(&self) -> u32 {
        self.numer.n
    }

    pub fn is_positive(&self) -> bool {
        self.numer.signum() == Ordering::Greater
    }

    /// True when `v` lies strictly below the cutoff.
    pub fn admits(&self, v: &AlgebraicValue) -> bool {
        let scaled = v.mul_integer(&self.denom);
        scaled.compare(&self.numer).expect("same ring") == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        self.numer.to_f64() / self.denom.to_f64().unwrap_or(f64::INFINITY)
    }

    /// The cutoff as a ring element, when the denominator is 1.
    pub fn as_value(&self) -> Option<&AlgebraicValue> {
        if self.denom.is_one() {
            Some(&self.numer)
        } else {
            None
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({})/{}", self.numer, self.denom)
        }
    }
}

impl Serialize for Cutoff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn values_from_quantum_numbers() {
        let t = AlgebraicValue::from_quantum_number(1, &[2, 1]).unwrap();
        assert_eq!(t.coeffs(), ints(&[5]).as_slice());
        let b3 = AlgebraicValue::from_quantum_number(3, &[1, 1, 1]).unwrap();
        assert_eq!(b3.coeffs(), ints(&[1, 2, 1]).as_slice());
        let expected = 1.0 + 2f64.powf(2.0 / 3.0) + 2f64.powf(4.0 / 3.0);
        assert!((b3.to_f64() - expected).abs() < 1e-12);
        let b2 = AlgebraicValue::from_quantum_number(2, &[2, 1]).unwrap();
        assert_eq!(b2.coeffs(), ints(&[6]).as_slice());
        assert!(AlgebraicValue::from_quantum_number(3, &[1, 1]).is_err());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(AlgebraicValue::from_integer(1, 5).parity(), Parity::Odd);
        assert_eq!(AlgebraicValue::from_integer(2, 6).parity(), Parity::Even);
        let v = AlgebraicValue::from_coeffs(3, ints(&[1, 2, 1])).unwrap();
        assert_eq!(v.parity(), Parity::Odd);
    }

    #[test]
    fn scaling_examples() {
        let v = AlgebraicValue::from_integer(2, 3).scale_gamma2(1).unwrap();
        assert_eq!(v.coeffs(), ints(&[6]).as_slice());
        let a = AlgebraicValue::from_coeffs(4, ints(&[1, 0])).unwrap();
        assert_eq!(a.scale_gamma2(1).unwrap().coeffs(), ints(&[0, 1]).as_slice());
        let b = AlgebraicValue::from_coeffs(4, ints(&[0, 1])).unwrap();
        assert_eq!(b.scale_gamma2(1).unwrap().coeffs(), ints(&[2, 0]).as_slice());
        assert!(AlgebraicValue::from_integer(1, 5).scale_gamma2(-1).is_err());
        let t = AlgebraicValue::from_integer(1, 5).scale_gamma2(2).unwrap();
        assert_eq!(t.coeffs(), ints(&[20]).as_slice());
    }

    #[test]
    fn comparison_examples() {
        let five = AlgebraicValue::from_integer(1, 5);
        assert_eq!(five.compare(&five).unwrap(), Ordering::Equal);
        let g2 = AlgebraicValue::gamma_power(3, 2).unwrap();
        let two = AlgebraicValue::from_integer(3, 2);
        assert_eq!(g2.compare(&two).unwrap(), Ordering::Less);
        let v = AlgebraicValue::from_coeffs(3, ints(&[1, 2, 1])).unwrap();
        assert_eq!(v.compare(&AlgebraicValue::from_integer(3, 4)).unwrap(), Ordering::Greater);
        assert!(five.compare(&two).is_err());
    }

    #[test]
    fn interval_path_separates_close_values() {
        // 2^(1/3) is irrational: 5 g^0 vs a tight rational approximation.
        let n = 3;
        let g = AlgebraicValue::gamma_power(n, 1).unwrap();
        let scaled = g.mul_integer(&BigInt::from(1_000_000_000_000i64));
        let approx = AlgebraicValue::from_integer(n, 1_259_921_049_894i64);
        assert_eq!(interval_sign(&scaled.sub(&approx).unwrap()), Ordering::Greater);
        let approx_hi = AlgebraicValue::from_integer(n, 1_259_921_049_895i64);
        assert_eq!(interval_sign(&scaled.sub(&approx_hi).unwrap()), Ordering::Less);
    }

    #[test]
    fn text_round_trip() {
        let v = AlgebraicValue::from_coeffs(3, ints(&[1, -2, 1])).unwrap();
        assert_eq!(v.to_string(), "1 - 2*g^1 + 1*g^2");
        assert_eq!(AlgebraicValue::parse(3, &v.to_string()).unwrap(), v);
        let w = AlgebraicValue::from_coeffs(4, ints(&[3, 3])).unwrap();
        assert_eq!(w.to_string(), "3 + 3*g^2");
        assert_eq!(AlgebraicValue::parse(4, "3 + 3*g^2").unwrap(), w);
        assert_eq!(AlgebraicValue::parse(4, "g^4").unwrap(), AlgebraicValue::from_integer(4, 2));
        assert!(AlgebraicValue::parse(4, "g").is_err());
        assert_eq!(AlgebraicValue::zero(2).to_string(), "0");
    }

    #[test]
    fn cutoffs() {
        let c = Cutoff::parse(1, "12.5").unwrap();
        assert!(c.admits(&AlgebraicValue::from_integer(1, 12)));
        assert!(!c.admits(&AlgebraicValue::from_integer(1, 13)));
        let exact = Cutoff::parse(1, "9").unwrap();
        assert!(!exact.admits(&AlgebraicValue::from_integer(1, 9)));
        let r = Cutoff::parse(3, "5.10").unwrap();
        let v = AlgebraicValue::from_coeffs(3, ints(&[1, 2, 1])).unwrap();
        assert!(!r.admits(&v));
        assert!(Cutoff::parse(3, "5.11").unwrap().admits(&v));
        assert!(Cutoff::parse(1, "abc").is_err());
        assert!(Cutoff::parse(1, "3/0").is_err());
    }
}
