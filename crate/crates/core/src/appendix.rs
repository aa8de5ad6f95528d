//! Polynomials on the line with the involution `x -> -x`, multiplied by a
//! deformed product on their even and odd parts.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::rational::is_negative;
use crate::scalar::{parse_rational, rat, CycloScalar, Rational};

pub const DEFAULT_DEGREE_BOUND: usize = 64;

/// Dense polynomial in `x`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<CycloScalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<CycloScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, CycloScalar::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, CycloScalar::one())
    }

    pub fn monomial(k: usize, c: CycloScalar) -> Self {
        let mut v = vec![CycloScalar::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CycloScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-CycloScalar::one()))
    }

    pub fn scale(&self, c: &CycloScalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![CycloScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, t: &CycloScalar) -> CycloScalar {
        self.coeffs.iter().rev().fold(CycloScalar::zero(), |acc, c| &(&acc * t) + c)
    }

    /// Keeps the powers of the given parity.
    fn parity_part(&self, parity: usize) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == parity { c.clone() } else { CycloScalar::zero() })
                .collect(),
        )
    }

    /// Parses sums of terms `c`, `c*x`, `c*x^k`, `x^k` with rational `c`,
    /// for example `1+x`, `x^2 - 3/2*x^3`.
    pub fn parse(input: &str) -> Result<Poly> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, ch) in s.char_indices() {
            if k > 0 && (ch == '+' || ch == '-') && !s[..k].ends_with('^') {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        let mut out = Poly::zero();
        for t in terms {
            out = out.add(&parse_term(t)?);
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("bad polynomial term `{t}`"));
    let (sign, body) = match t.as_bytes().first() {
        Some(b'+') => (rat(1, 1), &t[1..]),
        Some(b'-') => (rat(-1, 1), &t[1..]),
        _ => (rat(1, 1), t),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let Some(xpos) = body.find('x') else {
        return Ok(Poly::monomial(0, (sign * parse_rational(body)?).into()));
    };
    let coeff = match &body[..xpos] {
        "" => rat(1, 1),
        c => parse_rational(c.strip_suffix('*').ok_or_else(bad)?)?,
    };
    let power = match &body[xpos + 1..] {
        "" => 1,
        p => p.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?,
    };
    Ok(Poly::monomial(power, (sign * coeff).into()))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.to_string();
            let (neg, body) = match c.as_rational() {
                Some(r) if is_negative(r) => (true, (-c.clone()).to_string()),
                Some(_) => (false, body),
                None => (false, format!("({body})")),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match (k, unit) {
                (0, _) => write!(f, "{body}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{body}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{body}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// A real polynomial stored as its even and odd parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenOddPoly {
    even: Poly,
    odd: Poly,
    bound: usize,
}

impl EvenOddPoly {
    pub fn with_bound(p: &Poly, bound: usize) -> Result<Self> {
        if let Some(c) = p.coeffs.iter().find(|c| !c.is_real()) {
            return Err(Error::NonRealCoefficient(c.to_string()));
        }
        if let Some(d) = p.degree().filter(|&d| d > bound) {
            return Err(Error::DegreeOverflow { degree: d, bound });
        }
        Ok(Self { even: p.parity_part(0), odd: p.parity_part(1), bound })
    }

    pub fn even(&self) -> &Poly {
        &self.even
    }

    pub fn odd(&self) -> &Poly {
        &self.odd
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn to_poly(&self) -> Poly {
        self.even.add(&self.odd)
    }

    pub fn degree(&self) -> Option<usize> {
        self.to_poly().degree()
    }
}

impl fmt::Display for EvenOddPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "even: {}, odd: {}", self.even, self.odd)
    }
}

pub fn parity_split(p: &Poly) -> Result<EvenOddPoly> {
    EvenOddPoly::with_bound(p, DEFAULT_DEGREE_BOUND)
}

/// `(f+ h+ - f- h-) + (f+ h- + f- h+)`.
pub fn star_product(f: &EvenOddPoly, h: &EvenOddPoly) -> Result<EvenOddPoly> {
    let bound = f.bound.min(h.bound);
    let degree = f.degree().unwrap_or(0) + h.degree().unwrap_or(0);
    if degree > bound {
        return Err(Error::DegreeOverflow { degree, bound });
    }
    let even = f.even.mul(&h.even).sub(&f.odd.mul(&h.odd));
    let odd = f.even.mul(&h.odd).add(&f.odd.mul(&h.even));
    Ok(EvenOddPoly { even, odd, bound })
}

/// A complex polynomial with `g(-x) = conj(g(x))`: real even coefficients
/// and imaginary odd ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjSymPoly {
    poly: Poly,
}

impl ConjSymPoly {
    pub fn new(poly: Poly) -> Result<Self> {
        for (k, c) in poly.coeffs.iter().enumerate() {
            let ok = if k % 2 == 0 { c.is_real() } else { c.is_imaginary() };
            if !ok {
                return Err(Error::Malformed(format!("coefficient of x^{k} breaks g(-x) = conj g(x)")));
            }
        }
        Ok(Self { poly })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn mul(&self, other: &ConjSymPoly) -> ConjSymPoly {
        ConjSymPoly { poly: self.poly.mul(&other.poly) }
    }

    /// Inverse of [`to_complex`].
    pub fn to_even_odd(&self, bound: usize) -> Result<EvenOddPoly> {
        let minus_i = -CycloScalar::i();
        let even = self.poly.parity_part(0);
        let odd = self.poly.parity_part(1).scale(&minus_i);
        EvenOddPoly::with_bound(&even.add(&odd), bound)
    }
}

/// `g = f+ + i f-`.
pub fn to_complex(f: &EvenOddPoly) -> ConjSymPoly {
    ConjSymPoly { poly: f.even.add(&f.odd.scale(&CycloScalar::i())) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ResidueField {
    R,
    C,
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidueField::R => "R",
            ResidueField::C => "C",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterValue {
    pub value: CycloScalar,
    pub field: ResidueField,
}

/// `chi_a(f) = f+(a) + i f-(a)`, tagged with the residue field at `a`.
pub fn character_at(a: &Rational, f: &EvenOddPoly) -> Result<CharacterValue> {
    if is_negative(a) {
        return Err(Error::NegativePoint);
    }
    let t = CycloScalar::from_rational(a.clone());
    let value = &f.even.eval(&t) + &(&CycloScalar::i() * &f.odd.eval(&t));
    let field = if a.is_zero() { ResidueField::R } else { ResidueField::C };
    Ok(CharacterValue { value, field })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub t: i64,
    pub star_square: CycloScalar,
    pub pointwise_square: CycloScalar,
}

/// Evaluations of `x * x` in the deformed and in the pointwise product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rows: Vec<CertificateRow>,
}

impl Certificate {
    pub fn verify(&self) -> bool {
        self.rows.iter().all(|r| {
            let t2 = CycloScalar::from_int(r.t * r.t);
            r.star_square == -t2.clone() && r.pointwise_square == t2
        })
    }
}

pub fn star_vs_pointwise_distinguisher(n_max: usize) -> Certificate {
    let x = parity_split(&Poly::x()).expect("x is real");
    let star = star_product(&x, &x).expect("degree 2 fits");
    let pointwise = Poly::x().mul(&Poly::x());
    let rows = (0..=n_max as i64)
        .map(|t| {
            let tc = CycloScalar::from_int(t);
            CertificateRow { t, star_square: star.to_poly().eval(&tc), pointwise_square: pointwise.eval(&tc) }
        })
        .collect();
    Certificate { rows }
}

/// A real element `c0 + c1 sqrt(2)` of the cyclotomic field.
fn random_real(rng: &mut ChaCha8Rng) -> CycloScalar {
    let sqrt2 = CycloScalar::new(rat(0, 1), rat(1, 1), rat(0, 1), rat(-1, 1));
    let c0 = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    let c1 = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    &CycloScalar::from_rational(c0) + &sqrt2.scale(&c1)
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    Poly::new((0..=d).map(|_| random_real(rng)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub trials: usize,
    pub degree: usize,
    pub seed: u64,
    pub failures: Vec<usize>,
}

impl IsoReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `to_complex(f * h)` with `to_complex(f) to_complex(h)` on
/// seeded random pairs of degree at most `degree`.
pub fn iso_check(degree: usize, trials: usize, seed: u64) -> Result<IsoReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = (2 * degree).max(DEFAULT_DEGREE_BOUND);
    let mut failures = Vec::new();
    for k in 0..trials {
        let f = EvenOddPoly::with_bound(&random_poly(&mut rng, degree), bound)?;
        let h = EvenOddPoly::with_bound(&random_poly(&mut rng, degree), bound)?;
        if to_complex(&star_product(&f, &h)?) != to_complex(&f).mul(&to_complex(&h)) {
            failures.push(k);
        }
    }
    Ok(IsoReport { trials, degree, seed, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> EvenOddPoly {
        parity_split(&Poly::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(Poly::parse("1+x").unwrap().to_string(), "1 + x");
        assert_eq!(Poly::parse("x^2 - 3/2*x^3").unwrap().to_string(), "x^2 - 3/2*x^3");
        assert_eq!(Poly::parse("-x + x").unwrap(), Poly::zero());
        assert_eq!(Poly::parse("2*x*").map_err(|_| ()), Err(()));
        assert!(Poly::parse("").is_err());
        assert!(Poly::parse("x^").is_err());
    }

    #[test]
    fn split_examples() {
        let f = p("1+x+x^2");
        assert_eq!(f.even(), &Poly::parse("1+x^2").unwrap());
        assert_eq!(f.odd(), &Poly::x());
        let f = p("x^3");
        assert!(f.even().is_zero());
        let z = p("0");
        assert!(z.even().is_zero() && z.odd().is_zero());
        assert!(matches!(parity_split(&Poly::monomial(1, CycloScalar::i())), Err(Error::NonRealCoefficient(_))));
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_product(&p("x"), &p("x")).unwrap(), p("-x^2"));
        assert_eq!(star_product(&p("1"), &p("2+x^3")).unwrap(), p("2+x^3"));
        assert_eq!(star_product(&p("1+x"), &p("1-x")).unwrap(), p("1+x^2"));
        let small = EvenOddPoly::with_bound(&Poly::parse("x^3").unwrap(), 4).unwrap();
        assert_eq!(star_product(&small, &small), Err(Error::DegreeOverflow { degree: 6, bound: 4 }));
    }

    #[test]
    fn complex_model() {
        let ix = Poly::monomial(1, CycloScalar::i());
        assert_eq!(to_complex(&p("x")).poly(), &ix);
        assert_eq!(to_complex(&p("1")).poly(), &Poly::one());
        assert_eq!(to_complex(&p("x")).mul(&to_complex(&p("x"))).poly(), &Poly::parse("-x^2").unwrap());
        let g = to_complex(&p("1+2*x+x^2-x^5"));
        assert_eq!(g.to_even_odd(DEFAULT_DEGREE_BOUND).unwrap(), p("1+2*x+x^2-x^5"));
        assert!(ConjSymPoly::new(Poly::x()).is_err());
    }

    #[test]
    fn characters() {
        let c = character_at(&rat(0, 1), &p("x")).unwrap();
        assert_eq!((c.value, c.field), (CycloScalar::zero(), ResidueField::R));
        let c = character_at(&rat(1, 1), &p("x")).unwrap();
        assert_eq!((c.value, c.field), (CycloScalar::i(), ResidueField::C));
        assert_eq!(character_at(&rat(2, 1), &p("1+x^2")).unwrap().value, CycloScalar::from_int(5));
        assert_eq!(character_at(&rat(-1, 1), &p("x")), Err(Error::NegativePoint));
    }

    #[test]
    fn certificate() {
        let c = star_vs_pointwise_distinguisher(3);
        assert!(c.verify());
        assert_eq!(c.rows[3].star_square, CycloScalar::from_int(-9));
        assert_eq!(c.rows[0].pointwise_square, CycloScalar::zero());
    }

    fn arb_poly() -> impl Strategy<Value = EvenOddPoly> {
        any::<u64>().prop_map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            EvenOddPoly::with_bound(&random_poly(&mut rng, 6), DEFAULT_DEGREE_BOUND).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn star_is_commutative_and_associative(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(star_product(&f, &g).unwrap(), star_product(&g, &f).unwrap());
            let l = star_product(&star_product(&f, &g).unwrap(), &h).unwrap();
            let r = star_product(&f, &star_product(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn characters_multiplicative(f in arb_poly(), g in arb_poly(), a in 0i64..5) {
            let a = rat(a, 2);
            let fg = star_product(&f, &g).unwrap();
            let lhs = character_at(&a, &fg).unwrap().value;
            let rhs = &character_at(&a, &f).unwrap().value * &character_at(&a, &g).unwrap().value;
            prop_assert_eq!(lhs, rhs);
            prop_assert!(character_at(&rat(0, 1), &f).unwrap().value.is_real());
        }

        #[test]
        fn to_complex_is_multiplicative(f in arb_poly(), g in arb_poly()) {
            // oracle: multiply the complex models coefficientwise by hand
            let (a, b) = (to_complex(&f), to_complex(&g));
            let n = a.poly().coeffs().len() + b.poly().coeffs().len();
            let mut want = vec![CycloScalar::zero(); n];
            for (i, x) in a.poly().coeffs().iter().enumerate() {
                for (j, y) in b.poly().coeffs().iter().enumerate() {
                    want[i + j] += &(x * y);
                }
            }
            let got = to_complex(&star_product(&f, &g).unwrap());
            prop_assert_eq!(got.poly(), &Poly::new(want));
        }
    }

    #[test]
    fn iso_sweep() {
        assert!(iso_check(8, 20, 7).unwrap().passes());
    }
}
