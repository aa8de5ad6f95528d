use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::CycloScalar;

/// A sign `+1` or `-1`, usable directly as a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sign(i8);

impl Sign {
    pub const PLUS: Sign = Sign(1);
    pub const MINUS: Sign = Sign(-1);

    /// `(-1)^k`.
    pub fn pow(k: u32) -> Sign {
        if k % 2 == 0 {
            Sign::PLUS
        } else {
            Sign::MINUS
        }
    }

    pub fn is_minus(self) -> bool {
        self.0 < 0
    }

    pub fn value(self) -> i64 {
        self.0 as i64
    }

    pub fn apply(self, x: CycloScalar) -> CycloScalar {
        if self.is_minus() {
            -x
        } else {
            x
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 * rhs.0)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign(-self.0)
    }
}

impl From<Sign> for CycloScalar {
    fn from(s: Sign) -> Self {
        CycloScalar::from_int(s.value())
    }
}

impl Mul<&CycloScalar> for Sign {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.apply(rhs.clone())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_minus() { "-1" } else { "+1" })
    }
}

/// A bi-degree `(eps1, eps2)` in Z2 x Z2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BiDegree {
    pub eps1: u8,
    pub eps2: u8,
}

impl BiDegree {
    pub const D00: BiDegree = BiDegree { eps1: 0, eps2: 0 };
    pub const D01: BiDegree = BiDegree { eps1: 0, eps2: 1 };
    pub const D10: BiDegree = BiDegree { eps1: 1, eps2: 0 };
    pub const D11: BiDegree = BiDegree { eps1: 1, eps2: 1 };
    pub const ALL: [BiDegree; 4] = [Self::D00, Self::D01, Self::D10, Self::D11];

    pub fn new(eps1: u8, eps2: u8) -> Self {
        Self { eps1: eps1 & 1, eps2: eps2 & 1 }
    }

    /// Total Z2 degree `eps1 + eps2`.
    pub fn parity(self) -> u8 {
        (self.eps1 + self.eps2) & 1
    }

    /// The symmetric pairing `eps1 eps1' + eps2 eps2'` mod 2.
    pub fn pairing(self, other: BiDegree) -> u8 {
        (self.eps1 * other.eps1 + self.eps2 * other.eps2) & 1
    }

    /// True for (1,0) and (0,1): letters that square to half their self-bracket.
    pub fn is_exterior(self) -> bool {
        self.pairing(self) == 1
    }

    /// True for (0,0) and (1,1).
    pub fn is_even_type(self) -> bool {
        self.parity() == 0
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.eps1 ^ rhs.eps1, self.eps2 ^ rhs.eps2)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.eps1, self.eps2)
    }
}

impl Serialize for BiDegree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.eps1, self.eps2].serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiDegree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[u8; 2]>::deserialize(d)?;
        if a > 1 || b > 1 {
            return Err(serde::de::Error::custom(format!(
                "bi-degree entries must be 0 or 1, got [{a}, {b}]"
            )));
        }
        Ok(BiDegree::new(a, b))
    }
}

/// Deligne swap sign `(-1)^(eps1 eps1' + eps2 eps2')`.
pub fn sign_deligne(d1: BiDegree, d2: BiDegree) -> Sign {
    Sign::pow(d1.pairing(d2) as u32)
}

/// Super swap sign `(-1)^(p p')` using total parity only.
pub fn sign_super(d1: BiDegree, d2: BiDegree) -> Sign {
    Sign::pow((d1.parity() * d2.parity()) as u32)
}

/// Unbraiding sign `(-1)^(eps1(d1) eps2(d2))`. Not symmetric.
pub fn sign_unbraid(d1: BiDegree, d2: BiDegree) -> Sign {
    Sign::pow((d1.eps1 * d2.eps2) as u32)
}

/// Which swap rule a bracket is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    Deligne,
    Super,
}

impl SignRule {
    pub fn sign(self, d1: BiDegree, d2: BiDegree) -> Sign {
        match self {
            SignRule::Deligne => sign_deligne(d1, d2),
            SignRule::Super => sign_super(d1, d2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(a: u8, b: u8) -> BiDegree {
        BiDegree::new(a, b)
    }

    #[test]
    fn deligne_examples() {
        assert_eq!(sign_deligne(d(1, 0), d(0, 1)), Sign::PLUS);
        assert_eq!(sign_deligne(d(0, 1), d(1, 1)), Sign::MINUS);
        assert_eq!(sign_deligne(d(1, 1), d(1, 1)), Sign::PLUS);
    }

    #[test]
    fn super_examples() {
        assert_eq!(sign_super(d(1, 0), d(0, 1)), Sign::MINUS);
        assert_eq!(sign_super(d(1, 1), d(1, 0)), Sign::PLUS);
        assert_eq!(sign_super(d(0, 0), d(0, 1)), Sign::PLUS);
    }

    #[test]
    fn unbraid_examples() {
        assert_eq!(sign_unbraid(d(1, 0), d(0, 1)), Sign::MINUS);
        assert_eq!(sign_unbraid(d(0, 1), d(1, 0)), Sign::PLUS);
        assert_eq!(sign_unbraid(d(1, 1), d(1, 1)), Sign::MINUS);
    }

    #[test]
    fn sign_compatibility_all_pairs() {
        for a in BiDegree::ALL {
            for b in BiDegree::ALL {
                assert_eq!(
                    sign_deligne(a, b),
                    sign_super(a, b) * sign_unbraid(a, b) * sign_unbraid(b, a),
                    "{a} {b}"
                );
                assert_eq!(sign_deligne(a, b), sign_deligne(b, a));
                assert_eq!(sign_super(a, b), sign_super(b, a));
                assert_eq!((a + b).parity(), (a.parity() + b.parity()) % 2);
            }
            assert_eq!(sign_deligne(a, BiDegree::D00), Sign::PLUS);
        }
    }

    #[test]
    fn commutation_types() {
        // g01 and g10 commute; g01, g10 each anticommute with g11
        assert_eq!(sign_deligne(BiDegree::D01, BiDegree::D10), Sign::PLUS);
        assert_eq!(sign_deligne(BiDegree::D01, BiDegree::D11), Sign::MINUS);
        assert_eq!(sign_deligne(BiDegree::D10, BiDegree::D11), Sign::MINUS);
    }

    #[test]
    fn degree_json() {
        let x: BiDegree = serde_json::from_str("[1,0]").unwrap();
        assert_eq!(x, BiDegree::D10);
        assert!(serde_json::from_str::<BiDegree>("[2,0]").is_err());
        assert_eq!(serde_json::to_string(&BiDegree::D01).unwrap(), "[0,1]");
    }
}
