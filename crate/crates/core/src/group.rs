//! The Klein four-group `G = <a> x <b>`, sign tables on `G x G`, 2-cocycles
//! and skew-symmetric bicharacters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `a^i b^j` with `i, j` in `{0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub i: u8,
    pub j: u8,
}

impl GroupElement {
    pub const E: GroupElement = GroupElement { i: 0, j: 0 };
    pub const A: GroupElement = GroupElement { i: 1, j: 0 };
    pub const B: GroupElement = GroupElement { i: 0, j: 1 };
    pub const AB: GroupElement = GroupElement { i: 1, j: 1 };

    /// All four elements in the order `e, a, b, ab`.
    pub const ALL: [GroupElement; 4] = [Self::E, Self::A, Self::B, Self::AB];

    pub fn new(i: u8, j: u8) -> Result<Self> {
        if i > 1 || j > 1 {
            return Err(Error::InvalidArgument(format!(
                "group element exponents must be bits, got ({i},{j})"
            )));
        }
        Ok(GroupElement { i, j })
    }

    /// Position in `ALL`.
    pub fn index(self) -> usize {
        (self.i + 2 * self.j) as usize
    }

    pub fn from_index(idx: usize) -> Self {
        Self::ALL[idx & 3]
    }

    pub fn is_identity(self) -> bool {
        self == Self::E
    }

    pub fn symbol(self) -> &'static str {
        ["e", "a", "b", "ab"][self.index()]
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Self::E),
            "a" => Ok(Self::A),
            "b" => Ok(Self::B),
            "ab" | "ba" => Ok(Self::AB),
            _ => Err(Error::Parse(format!("unknown group element {s:?}"))),
        }
    }
}

impl std::ops::Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        group_mul(self, rhs)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn group_mul(x: GroupElement, y: GroupElement) -> GroupElement {
    GroupElement {
        i: x.i ^ y.i,
        j: x.j ^ y.j,
    }
}

/// Product of a word of group elements (identity for the empty word).
pub fn group_product<I: IntoIterator<Item = GroupElement>>(items: I) -> GroupElement {
    items.into_iter().fold(GroupElement::E, group_mul)
}

/// A raw 4x4 table of `+1/-1` values indexed by `(g, h)` in the order
/// `e, a, b, ab`. No axioms are assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i8; 4]; 4]", into = "[[i8; 4]; 4]")]
pub struct SignTable([[i8; 4]; 4]);

impl SignTable {
    pub fn from_rows(rows: [[i8; 4]; 4]) -> Result<Self> {
        for row in rows.iter() {
            for &v in row.iter() {
                if v != 1 && v != -1 {
                    return Err(Error::MalformedCocycle(format!(
                        "table entries must be +1 or -1, found {v}"
                    )));
                }
            }
        }
        Ok(SignTable(rows))
    }

    pub fn from_fn(f: impl Fn(GroupElement, GroupElement) -> i8) -> Self {
        let mut rows = [[1i8; 4]; 4];
        for g in GroupElement::ALL {
            for h in GroupElement::ALL {
                rows[g.index()][h.index()] = f(g, h);
            }
        }
        SignTable(rows)
    }

    pub fn ones() -> Self {
        SignTable([[1; 4]; 4])
    }

    pub fn get(&self, g: GroupElement, h: GroupElement) -> i8 {
        self.0[g.index()][h.index()]
    }

    pub fn rows(&self) -> &[[i8; 4]; 4] {
        &self.0
    }

    /// Entrywise product of two tables.
    pub fn pointwise(&self, other: &SignTable) -> SignTable {
        SignTable::from_fn(|g, h| self.get(g, h) * other.get(g, h))
    }

    pub fn is_symmetric(&self) -> bool {
        GroupElement::ALL
            .iter()
            .all(|&g| GroupElement::ALL.iter().all(|&h| self.get(g, h) == self.get(h, g)))
    }

    /// Every `(g, h, k)` where `s(g,h) s(gh,k) != s(h,k) s(g,hk)`, plus
    /// normalization failures `s(e,g) != 1` / `s(g,e) != 1` reported as
    /// `CocycleViolation::Normalization`.
    pub fn cocycle_violations(&self) -> Vec<CocycleViolation> {
        let mut out = Vec::new();
        for g in GroupElement::ALL {
            if self.get(GroupElement::E, g) != 1 || self.get(g, GroupElement::E) != 1 {
                out.push(CocycleViolation::Normalization { g });
            }
        }
        for g in GroupElement::ALL {
            for h in GroupElement::ALL {
                for k in GroupElement::ALL {
                    let lhs = self.get(g, h) * self.get(g * h, k);
                    let rhs = self.get(h, k) * self.get(g, h * k);
                    if lhs != rhs {
                        out.push(CocycleViolation::CocycleLaw { g, h, k });
                    }
                }
            }
        }
        out
    }
}

impl TryFrom<[[i8; 4]; 4]> for SignTable {
    type Error = Error;

    fn try_from(rows: [[i8; 4]; 4]) -> Result<Self> {
        SignTable::from_rows(rows)
    }
}

impl From<SignTable> for [[i8; 4]; 4] {
    fn from(t: SignTable) -> Self {
        t.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CocycleViolation {
    Normalization { g: GroupElement },
    CocycleLaw { g: GroupElement, h: GroupElement, k: GroupElement },
}

/// A normalized 2-cocycle with values in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SignTable", into = "SignTable")]
pub struct Cocycle(SignTable);

impl Cocycle {
    pub fn new(table: SignTable) -> Result<Self> {
        let violations = table.cocycle_violations();
        if let Some(v) = violations.first() {
            return Err(Error::MalformedCocycle(format!(
                "{} violation(s), first: {:?}",
                violations.len(),
                v
            )));
        }
        Ok(Cocycle(table))
    }

    pub fn table(&self) -> &SignTable {
        &self.0
    }

    pub fn get(&self, g: GroupElement, h: GroupElement) -> i8 {
        self.0.get(g, h)
    }
}

impl AsRef<SignTable> for Cocycle {
    fn as_ref(&self) -> &SignTable {
        &self.0
    }
}

impl AsRef<SignTable> for SignTable {
    fn as_ref(&self) -> &SignTable {
        self
    }
}

impl TryFrom<SignTable> for Cocycle {
    type Error = Error;

    fn try_from(t: SignTable) -> Result<Self> {
        Cocycle::new(t)
    }
}

impl From<Cocycle> for SignTable {
    fn from(c: Cocycle) -> Self {
        c.0
    }
}

/// `sigma(a^i b^j, a^k b^l) = (-1)^(j*k)`: the twist that makes `e, a, b, ab`
/// multiply like the 2x2 matrices `I, diag(-1,1), antidiag(1,1), [[0,-1],[1,0]]`.
pub fn canonical_cocycle() -> Cocycle {
    Cocycle(SignTable::from_fn(|g, h| if g.j * h.i == 1 { -1 } else { 1 }))
}

/// The table `(-1)^(j+k)` taken verbatim from the product formula of the
/// construction. Not a normalized cocycle; kept for negative tests.
pub fn literal_sign_table() -> SignTable {
    SignTable::from_fn(|g, h| if (g.j + h.i) % 2 == 1 { -1 } else { 1 })
}

/// The all-ones cocycle (untwisted group algebra).
pub fn trivial_cocycle() -> Cocycle {
    Cocycle(SignTable::ones())
}

/// A `+1/-1` table meant to be a skew-symmetric bicharacter; checked by
/// [`validate_bicharacter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bicharacter(pub SignTable);

impl Bicharacter {
    pub fn get(&self, g: GroupElement, h: GroupElement) -> i8 {
        self.0.get(g, h)
    }

    pub fn trivial() -> Self {
        Bicharacter(SignTable::ones())
    }

    /// The bicharacter with `beta(a,a) = beta(b,b) = 1`, `beta(a,b) = -1`,
    /// extended bimultiplicatively.
    pub fn canonical() -> Self {
        Bicharacter(SignTable::from_fn(|g, h| {
            // beta(a^i b^j, a^k b^l) = (-1)^(il + jk)
            if (g.i * h.j + g.j * h.i) % 2 == 1 {
                -1
            } else {
                1
            }
        }))
    }
}

/// `beta(g,h) = s(g,h) * s(h,g)^{-1}`.
pub fn bicharacter_from_cocycle(s: &Cocycle) -> Bicharacter {
    Bicharacter(SignTable::from_fn(|g, h| s.get(g, h) * s.get(h, g)))
}

/// Like [`bicharacter_from_cocycle`] but accepts a raw table and rejects it
/// when the cocycle law fails.
pub fn bicharacter_from_table(s: &SignTable) -> Result<Bicharacter> {
    let c = Cocycle::new(*s)?;
    Ok(bicharacter_from_cocycle(&c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BicharacterViolation {
    UnitLeft { g: GroupElement },
    UnitRight { g: GroupElement },
    Skew { g: GroupElement, h: GroupElement },
    LeftMultiplicative { g: GroupElement, h: GroupElement, k: GroupElement },
    RightMultiplicative { g: GroupElement, h: GroupElement, k: GroupElement },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicharacterReport {
    pub violations: Vec<BicharacterViolation>,
}

impl BicharacterReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_bicharacter(b: &Bicharacter) -> BicharacterReport {
    let mut violations = Vec::new();
    for g in GroupElement::ALL {
        if b.get(GroupElement::E, g) != 1 {
            violations.push(BicharacterViolation::UnitLeft { g });
        }
        if b.get(g, GroupElement::E) != 1 {
            violations.push(BicharacterViolation::UnitRight { g });
        }
    }
    for g in GroupElement::ALL {
        for h in GroupElement::ALL {
            if b.get(g, h) * b.get(h, g) != 1 {
                violations.push(BicharacterViolation::Skew { g, h });
            }
        }
    }
    for g in GroupElement::ALL {
        for h in GroupElement::ALL {
            for k in GroupElement::ALL {
                if b.get(g * h, k) != b.get(g, k) * b.get(h, k) {
                    violations.push(BicharacterViolation::LeftMultiplicative { g, h, k });
                }
                if b.get(g, h * k) != b.get(g, h) * b.get(g, k) {
                    violations.push(BicharacterViolation::RightMultiplicative { g, h, k });
                }
            }
        }
    }
    BicharacterReport { violations }
}
