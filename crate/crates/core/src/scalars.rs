//! Exact scalars: Gaussian rationals and power series in the deformation
//! parameter `h`, truncated at a fixed order.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A number `re + i·im` with `re`, `im` exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational(Complex<BigRational>);

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational(Complex::new(re, im))
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.re.is_one() && self.0.im.is_zero()
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.0.re * &self.0.re + &self.0.im * &self.0.im;
        Some(Self::new(&self.0.re / &norm, -&self.0.im / &norm))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.0.re.clone(), -self.0.im.clone())
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussRational {
    fn from(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational(Complex::new(&self.0.re + &rhs.0.re, &self.0.im + &rhs.0.im))
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational(Complex::new(&self.0.re - &rhs.0.re, &self.0.im - &rhs.0.im))
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        // skip the full complex product in the common real case
        if self.0.im.is_zero() && rhs.0.im.is_zero() {
            return GaussRational::new(&self.0.re * &rhs.0.re, BigRational::zero());
        }
        GaussRational(&self.0 * &rhs.0)
    }
}

impl Add for GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: GaussRational) -> GaussRational {
        GaussRational(self.0 + rhs.0)
    }
}

impl Sub for GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: GaussRational) -> GaussRational {
        GaussRational(self.0 - rhs.0)
    }
}

impl Mul for GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: GaussRational) -> GaussRational {
        &self * &rhs
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational(-self.0)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational(-self.0.clone())
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.0.re += &rhs.0.re;
        self.0.im += &rhs.0.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.0.re -= &rhs.0.re;
        self.0.im -= &rhs.0.im;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        match (re.is_zero(), im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(re)),
            (true, false) => {
                if im.is_one() {
                    write!(f, "i")
                } else if (-im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rational(im))
                }
            }
            (false, false) => {
                let sign = if im.is_negative() { '-' } else { '+' };
                let mag = im.abs();
                if mag.is_one() {
                    write!(f, "{}{}i", fmt_rational(re), sign)
                } else {
                    write!(f, "{}{}{}i", fmt_rational(re), sign, fmt_rational(&mag))
                }
            }
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

/// Parses the format produced by `Display`: `3/4`, `-i`, `2/3i`, `1/2-5i`.
impl FromStr for GaussRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Gaussian rational `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(&t).map(GaussRational::from).ok_or_else(bad);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re).ok_or_else(bad)?
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.trim_start_matches('+')).ok_or_else(bad)?,
        };
        Ok(GaussRational::new(re, im))
    }
}

/// A power series `c₀ + c₁h + … + c_N h^N` with all terms of degree above
/// `N` discarded.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<GaussRational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![GaussRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussRational::one(), order)
    }

    pub fn constant(c: GaussRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c·h^k`; zero when `k` exceeds the order.
    pub fn monomial(c: GaussRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds a series from explicit coefficients, padding with zeros or
    /// dropping terms above `order`.
    pub fn from_coeffs(mut coeffs: Vec<GaussRational>, order: usize) -> Self {
        coeffs.resize(order + 1, GaussRational::zero());
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &GaussRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussRational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(GaussRational::is_zero)
    }

    /// Lowest power of `h` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Two-sided inverse; fails when the constant coefficient vanishes.
    pub fn invert(&self) -> Result<Self> {
        let a0_inv = self.coeffs[0].inv().ok_or(Error::NonInvertible)?;
        let n = self.order();
        let mut r = Self::zero(n);
        r.coeffs[0] = a0_inv.clone();
        for k in 1..=n {
            let mut acc = GaussRational::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &r.coeffs[k - j]);
            }
            r.coeffs[k] = -(&acc * &a0_inv);
        }
        Ok(r)
    }

    /// Same series viewed at a lower (or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    /// Multiplies by `h^k`, discarding overflow.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for j in 0..=n.saturating_sub(k) {
            if j + k <= n {
                out.coeffs[j + k] = self.coeffs[j].clone();
            }
        }
        out
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left: self.order(), right: other.order() })
        }
    }
}

impl AddAssign<&TruncSeries> for TruncSeries {
    fn add_assign(&mut self, rhs: &TruncSeries) {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&TruncSeries> for TruncSeries {
    fn sub_assign(&mut self, rhs: &TruncSeries) {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl<'a> Add<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_add(rhs).expect("series order mismatch")
    }
}

impl<'a> Sub<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_sub(rhs).expect("series order mismatch")
    }
}

impl<'a> Mul<&'a TruncSeries> for &'a TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.checked_mul(rhs).expect("series order mismatch")
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut c_str = c.to_string();
            let compound = !c.re().is_zero() && !c.im().is_zero();
            if compound {
                c_str = format!("({c_str})");
            }
            if !first {
                if let Some(rest) = c_str.strip_prefix('-') {
                    write!(f, " - ")?;
                    c_str = rest.to_string();
                } else {
                    write!(f, " + ")?;
                }
            }
            first = false;
            match k {
                0 => write!(f, "{c_str}")?,
                _ => {
                    let hpow = if k == 1 { "h".to_string() } else { format!("h^{k}") };
                    match c_str.as_str() {
                        "1" => write!(f, "{hpow}")?,
                        "-1" => write!(f, "-{hpow}")?,
                        _ => write!(f, "{c_str}·{hpow}")?,
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [N={}]", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(cs: &[i64], n: usize) -> TruncSeries {
        TruncSeries::from_coeffs(cs.iter().map(|&c| c.into()).collect(), n)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 1], 3) + &s(&[1, -1], 3), s(&[2], 3));
        let x = s(&[4, 0, -2], 3);
        assert_eq!(&TruncSeries::zero(3) + &x, x);
        let ih = TruncSeries::monomial(GaussRational::i(), 1, 3);
        let two_ih = TruncSeries::monomial(GaussRational::i() * 2.into(), 1, 3);
        assert_eq!(&ih + &ih, two_ih);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1], 3) * &s(&[1, -1, 1, -1], 3), TruncSeries::one(3));
        let i = TruncSeries::constant(GaussRational::i(), 2);
        assert_eq!(&i * &i, s(&[-1], 2));
        let h = TruncSeries::monomial(1.into(), 1, 4);
        let h4 = TruncSeries::monomial(1.into(), 4, 4);
        assert!((&h * &h4).is_zero());
    }

    #[test]
    fn invert_examples() {
        let half = TruncSeries::constant(GaussRational::from_frac(1, 2), 2);
        assert_eq!(TruncSeries::constant(2.into(), 2).invert().unwrap(), half);
        assert_eq!(s(&[1, 1], 2).invert().unwrap(), s(&[1, -1, 1], 2));
        assert!(matches!(
            TruncSeries::monomial(1.into(), 1, 2).invert(),
            Err(Error::NonInvertible)
        ));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = TruncSeries::one(2);
        let b = TruncSeries::one(3);
        assert!(matches!(a.checked_add(&b), Err(Error::OrderMismatch { left: 2, right: 3 })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn gauss_display_and_parse_agree() {
        for text in ["0", "1", "-3/4", "i", "-i", "2/3i", "1/2-5i", "-7+i"] {
            let g: GaussRational = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
        }
        assert!("1/0".parse::<GaussRational>().is_err());
        assert!("x".parse::<GaussRational>().is_err());
    }

    #[test]
    fn series_display() {
        let a = TruncSeries::from_coeffs(vec![1.into(), GaussRational::i(), (-2).into()], 3);
        assert_eq!(a.to_string(), "1 + i·h - 2·h^2");
    }
}
