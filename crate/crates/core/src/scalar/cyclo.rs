use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, is_negative, parse_rational, Rational};
use crate::error::Error;

/// Element `c0 + c1 z + c2 z^2 + c3 z^3` of Q(z) with `z^4 = -1`, i.e. z is a
/// primitive 8th root of unity (`z^2 = i`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycloScalar {
    c: [Rational; 4],
}

impl CycloScalar {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Self { c: [c0, c1, c2, c3] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// The primitive 8th root of unity `exp(i pi / 4)`.
    pub fn zeta() -> Self {
        Self::new(int(0), int(1), int(0), int(0))
    }

    /// The imaginary unit, `zeta^2`.
    pub fn i() -> Self {
        Self::new(int(0), int(0), int(1), int(0))
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.c[0])
    }

    /// Complex conjugation, `z -> z^7 = -z^3`.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Fixed by conjugation (lies in the real subfield Q(sqrt 2)).
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Negated by conjugation.
    pub fn is_imaginary(&self) -> bool {
        self.conj() == -self.clone()
    }

    /// The Galois automorphism `z -> z^k` for odd `k`.
    pub fn galois(&self, k: usize) -> Self {
        assert!(k % 2 == 1, "galois exponent must be odd");
        let mut out: [Rational; 4] = Default::default();
        for (j, cj) in self.c.iter().enumerate() {
            let m = (j * k) % 8;
            if m < 4 {
                out[m] += cj;
            } else {
                out[m - 4] -= cj;
            }
        }
        Self { c: out }
    }

    /// Field norm down to Q: product of the four Galois conjugates.
    pub fn norm(&self) -> Rational {
        let p = self * &self.galois(3) * self.galois(5) * self.galois(7);
        debug_assert!(p.is_rational());
        p.c[0].clone()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let co = self.galois(3) * self.galois(5) * self.galois(7);
        let n = self.norm();
        Some(co.scale(&n.recip()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { c: std::array::from_fn(|k| &self.c[k] * r) }
    }

    pub fn parse_coeffs(parts: &[String]) -> Result<Self, Error> {
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "zeta8 scalar needs 4 coefficients, got {}",
                parts.len()
            )));
        }
        Ok(Self::new(
            parse_rational(&parts[0])?,
            parse_rational(&parts[1])?,
            parse_rational(&parts[2])?,
            parse_rational(&parts[3])?,
        ))
    }
}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for CycloScalar {
    fn zero() -> Self {
        Self { c: Default::default() }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for CycloScalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        CycloScalar { c: std::array::from_fn(|k| &self.c[k] + &rhs.c[k]) }
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        CycloScalar { c: std::array::from_fn(|k| &self.c[k] - &rhs.c[k]) }
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        let mut out: [Rational; 4] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p;
                }
            }
        }
        CycloScalar { c: out }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<CycloScalar> for &'a CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn div(self, rhs: &CycloScalar) -> CycloScalar {
        self * &rhs.inv().expect("division by zero in Q(zeta8)")
    }
}

impl Div<CycloScalar> for CycloScalar {
    type Output = CycloScalar;
    fn div(self, rhs: CycloScalar) -> CycloScalar {
        &self / &rhs
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { c: self.c.map(|x| -x) }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -self.clone()
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl AddAssign for CycloScalar {
    fn add_assign(&mut self, rhs: CycloScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for CycloScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints `z` for zeta8, `i` for zeta8^2 and `i*z` for zeta8^3.
impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "z", "i", "i*z"];
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = is_negative(c);
            let mag = format_rational(&if neg { -c.clone() } else { c.clone() });
            let body = match (k, mag.as_str()) {
                (0, _) => mag,
                (_, "1") => UNITS[k].to_string(),
                _ => format!("{mag}*{}", UNITS[k]),
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (idx, (neg, body)) in parts.iter().enumerate() {
            match (idx, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        if parts.len() > 1 {
            write!(f, "({s})")
        } else {
            write!(f, "{s}")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Zeta8Json {
    zeta8: Vec<String>,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Zeta8Json { zeta8: self.c.iter().map(format_rational).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Zeta8Json::deserialize(d)?;
        CycloScalar::parse_coeffs(&raw.zeta8).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalar::rational::rat;
    use proptest::prelude::*;

    fn z() -> CycloScalar {
        CycloScalar::zeta()
    }

    #[test]
    fn zeta_squared_is_i() {
        assert_eq!(z() * z(), CycloScalar::i());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(CycloScalar::i() * CycloScalar::i(), CycloScalar::from_int(-1));
    }

    #[test]
    fn one_plus_i_times_one_minus_i() {
        let one = CycloScalar::one();
        let i = CycloScalar::i();
        assert_eq!((&one + &i) * (&one - &i), CycloScalar::from_int(2));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(CycloScalar::i().conj(), -CycloScalar::i());
        let q = CycloScalar::from_rational(rat(3, 2));
        assert_eq!(q.conj(), q);
        let zeta3 = z() * z() * z();
        assert_eq!(z().conj(), -zeta3);
    }

    #[test]
    fn zeta_has_order_eight() {
        let mut p = CycloScalar::one();
        for _ in 0..4 {
            p = p * z();
        }
        assert_eq!(p, CycloScalar::from_int(-1));
        assert_eq!(z().inv().unwrap(), z().conj());
    }

    #[test]
    fn sqrt_two_is_real() {
        let s = z() - z() * z() * z();
        assert!(s.is_real());
        assert_eq!(&s * &s, CycloScalar::from_int(2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycloScalar::i().to_string(), "i");
        assert_eq!((-CycloScalar::i()).to_string(), "-i");
        assert_eq!(CycloScalar::from_rational(rat(1, 2)).to_string(), "1/2");
        let x = CycloScalar::new(rat(1, 2), int(0), int(-2), int(0));
        assert_eq!(x.to_string(), "(1/2 - 2*i)");
    }

    #[test]
    fn json_round_trip() {
        let x = CycloScalar::new(rat(1, 2), int(0), int(-2), rat(7, 3));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"zeta8":["1/2","0","-2","7/3"]}"#);
        let back: CycloScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    pub(crate) fn arb_scalar() -> impl Strategy<Value = CycloScalar> {
        prop::array::uniform4((-9i64..=9, 1i64..=4)).prop_map(|c| {
            CycloScalar::new(
                rat(c[0].0, c[0].1),
                rat(c[1].0, c[1].1),
                rat(c[2].0, c[2].1),
                rat(c[3].0, c[3].1),
            )
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), CycloScalar::one());
                prop_assert!(a.norm() != Rational::zero());
            }
        }

        #[test]
        fn conj_is_involutive_automorphism(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!((&a + &b).conj(), a.conj() + b.conj());
        }
    }
}
