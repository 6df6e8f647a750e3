//! Tagged vectors in the primal lattice `N` and the dual lattice `M`.
//!
//! The two ambient spaces are linked by the pairing `⟨·,·⟩ : M × N → Q`.
//! Every vector carries its space tag and operations check tags at the
//! boundary, so primal and dual data cannot be mixed by accident.

use num::bigint::BigInt;
use num::Zero;
use std::fmt;

use crate::rational::{gcd_all, Rational};
use crate::Error;

/// Ambient space tag. `N` is the primal side, `M` its dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    N,
    M,
}

impl Space {
    /// The space paired with this one.
    pub fn dual(self) -> Space {
        match self {
            Space::N => Space::M,
            Space::M => Space::N,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::N => write!(f, "N"),
            Space::M => write!(f, "M"),
        }
    }
}

/// A rational point of `N_R` or `M_R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector {
    space: Space,
    coords: Vec<Rational>,
}

impl QVector {
    pub fn new(space: Space, coords: Vec<Rational>) -> Self {
        QVector { space, coords }
    }

    /// Builds a vector from machine integers, mostly for tests and examples.
    pub fn from_ints(space: Space, coords: &[i64]) -> Self {
        QVector::new(
            space,
            coords
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(space: Space, dim: usize) -> Self {
        QVector::new(space, vec![Rational::zero(); dim])
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// True when every coordinate is an integer.
    pub fn is_lattice_point(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.space, other.space);
        debug_assert_eq!(self.dim(), other.dim());
        QVector::new(
            self.space,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        debug_assert_eq!(self.space, other.space);
        debug_assert_eq!(self.dim(), other.dim());
        QVector::new(
            self.space,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rational) -> QVector {
        QVector::new(self.space, self.coords.iter().map(|c| c * factor).collect())
    }
}

/// An integer vector of `N` or `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    space: Space,
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(space: Space, coords: Vec<BigInt>) -> Self {
        LatticeVector { space, coords }
    }

    pub fn from_ints(space: Space, coords: &[i64]) -> Self {
        LatticeVector::new(space, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BigInt::is_zero)
    }

    /// The same vector as a rational point.
    pub fn to_q(&self) -> QVector {
        QVector::new(
            self.space,
            self.coords
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn negate(&self) -> LatticeVector {
        LatticeVector::new(self.space, self.coords.iter().map(|c| -c).collect())
    }

    /// True when the coordinate gcd is one.
    pub fn is_primitive(&self) -> bool {
        gcd_all(&self.coords) == BigInt::from(1)
    }
}

/// The natural pairing `⟨v, u⟩` of `v ∈ M_R` with `u ∈ N_R`.
///
/// The first argument must be tagged `M` and the second `N`; anything else is
/// a usage error, as is a dimension mismatch.
pub fn pairing(v: &QVector, u: &QVector) -> Result<Rational, Error> {
    if v.space() != Space::M {
        return Err(Error::SpaceMismatch {
            expected: Space::M,
            found: v.space(),
        });
    }
    if u.space() != Space::N {
        return Err(Error::SpaceMismatch {
            expected: Space::N,
            found: u.space(),
        });
    }
    if v.dim() != u.dim() {
        return Err(Error::DimensionMismatch(v.dim(), u.dim()));
    }
    Ok(dot(v.coords(), u.coords()))
}

/// Unchecked rational dot product used internally once tags are validated.
pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut sum = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        sum += x * y;
    }
    sum
}

/// Integer dot product.
pub(crate) fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    let mut sum = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        sum += x * y;
    }
    sum
}

/// Pairing of an integer vector against a rational point, checked.
pub fn pairing_lattice(v: &LatticeVector, u: &QVector) -> Result<Rational, Error> {
    pairing(
        &if v.space() == Space::M {
            v.to_q()
        } else {
            u.clone()
        },
        &if v.space() == Space::M {
            u.clone()
        } else {
            v.to_q()
        },
    )
}

/// Divides a nonzero integer vector by the gcd of its coordinates.
pub fn make_primitive(v: &LatticeVector) -> Result<LatticeVector, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = gcd_all(v.coords());
    Ok(LatticeVector::new(
        v.space(),
        v.coords().iter().map(|c| c / &g).collect(),
    ))
}

/// Divides a raw integer vector by the gcd of its coordinates. Zero stays zero.
pub(crate) fn primitive_part(coords: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_all(coords);
    if g.is_zero() {
        return coords.to_vec();
    }
    coords.iter().map(|c| c / &g).collect()
}
