//! Dual-representation rational polyhedra.
//!
//! A [`Polyhedron`] is a line-free intersection of rational half-spaces,
//! stored in a canonical vertex/ray form with the canonical irredundant
//! half-space list computed on demand and cached. Canonical form means:
//! vertices sorted lexicographically, ray generators primitive and sorted,
//! half-space normals primitive with the list sorted. Equality of polyhedra
//! is therefore plain structural equality.
//!
//! Lower-dimensional polytopes (slices, factors, segments) are first-class
//! values kept in ambient coordinates; their affine-hull dimension is
//! computed on demand. The ambient space `R^dim` itself is representable as
//! the degenerate dual of the origin, but it supports only duality and
//! equality, not the Minkowski calculus.

use std::sync::OnceLock;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::dd::extreme_rays;
use crate::linalg::rank;
use crate::rational::{denominator_lcm, Rational};
use crate::vector::{dot, LatticeVector, QVector, Space};
use crate::Error;

/// The half-space `{u : ⟨normal, u⟩ ≥ rhs}` with a primitive integer normal
/// living in the dual space of the polyhedron it bounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: LatticeVector,
    rhs: Rational,
}

impl HalfSpace {
    /// Builds a half-space, rescaling so the normal becomes primitive.
    pub fn new(normal: LatticeVector, rhs: Rational) -> Result<Self, Error> {
        if normal.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = crate::rational::gcd_all(normal.coords());
        let normal = LatticeVector::new(
            normal.space(),
            normal.coords().iter().map(|c| c / &g).collect(),
        );
        let rhs = rhs / Rational::from_integer(g);
        Ok(HalfSpace { normal, rhs })
    }

    pub fn from_ints(space: Space, normal: &[i64], rhs: i64) -> Result<Self, Error> {
        HalfSpace::new(
            LatticeVector::from_ints(space, normal),
            Rational::from_integer(rhs.into()),
        )
    }

    pub fn normal(&self) -> &LatticeVector {
        &self.normal
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    /// Value of `⟨normal, point⟩ - rhs`; nonnegative iff the point satisfies
    /// the half-space.
    pub fn slack(&self, point: &QVector) -> Rational {
        let mut value = -self.rhs.clone();
        for (a, x) in self.normal.coords().iter().zip(point.coords()) {
            value += Rational::from_integer(a.clone()) * x;
        }
        value
    }

    pub fn satisfied_by(&self, point: &QVector) -> bool {
        !self.slack(point).is_negative()
    }

    /// Whether the recession direction `ray` stays inside the half-space.
    pub fn bounds_ray(&self, ray: &LatticeVector) -> bool {
        !crate::vector::dot_int(self.normal.coords(), ray.coords()).is_negative()
    }
}

/// Canonical vertex/ray description: `conv(vertices) + cone(rays)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<QVector>,
    pub rays: Vec<LatticeVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Pointed(VRep),
    /// All of the ambient space; arises as the polar dual of the origin.
    WholeSpace,
}

/// A line-free rational polyhedron tagged with its ambient space.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    space: Space,
    dim: usize,
    repr: Repr,
    hrep: OnceLock<Vec<HalfSpace>>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.dim == other.dim && self.repr == other.repr
    }
}

impl Eq for Polyhedron {}

impl Polyhedron {
    /// Intersection of half-spaces. An empty list yields the whole space.
    pub fn from_hrep(space: Space, dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self, Error> {
        for hs in &halfspaces {
            if hs.normal.space() != space.dual() {
                return Err(Error::SpaceMismatch {
                    expected: space.dual(),
                    found: hs.normal.space(),
                });
            }
            if hs.normal.dim() != dim {
                return Err(Error::DimensionMismatch(hs.normal.dim(), dim));
            }
        }
        if halfspaces.is_empty() {
            return Ok(Polyhedron {
                space,
                dim,
                repr: Repr::WholeSpace,
                hrep: OnceLock::from(Vec::new()),
            });
        }
        let vrep = hrep_to_vrep(space, dim, &halfspaces)?;
        Ok(Polyhedron {
            space,
            dim,
            repr: Repr::Pointed(vrep),
            hrep: OnceLock::new(),
        })
    }

    /// `conv(vertices) + cone(rays)`, canonicalized. The input lists may be
    /// redundant; vertices must be nonempty.
    pub fn from_vrep(
        space: Space,
        dim: usize,
        vertices: Vec<QVector>,
        rays: Vec<LatticeVector>,
    ) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        for v in &vertices {
            if v.space() != space {
                return Err(Error::SpaceMismatch {
                    expected: space,
                    found: v.space(),
                });
            }
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(v.dim(), dim));
            }
        }
        let mut prim_rays = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.space() != space {
                return Err(Error::SpaceMismatch {
                    expected: space,
                    found: r.space(),
                });
            }
            if r.dim() != dim {
                return Err(Error::DimensionMismatch(r.dim(), dim));
            }
            prim_rays.push(crate::vector::make_primitive(r)?);
        }
        let hrep = vrep_to_hrep(space, dim, &vertices, &prim_rays)?;
        let poly = Polyhedron::from_hrep(space, dim, hrep.clone())?;
        // redundant generators do not change the set, so this list is
        // already the canonical one; publish it into the cache
        let _ = poly.hrep.set(hrep);
        Ok(poly)
    }

    /// Single point.
    pub fn point(p: QVector) -> Self {
        let space = p.space();
        let dim = p.dim();
        Polyhedron::from_canonical(space, dim, vec![p], vec![])
    }

    /// Builds directly from data already known to be canonical (sorted,
    /// irredundant, primitive rays). Callers must uphold that invariant.
    pub(crate) fn from_canonical(
        space: Space,
        dim: usize,
        mut vertices: Vec<QVector>,
        mut rays: Vec<LatticeVector>,
    ) -> Self {
        vertices.sort();
        rays.sort();
        Polyhedron {
            space,
            dim,
            repr: Repr::Pointed(VRep { vertices, rays }),
            hrep: OnceLock::new(),
        }
    }

    fn whole_space(space: Space, dim: usize) -> Self {
        Polyhedron {
            space,
            dim,
            repr: Repr::WholeSpace,
            hrep: OnceLock::from(Vec::new()),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_whole_space(&self) -> bool {
        matches!(self.repr, Repr::WholeSpace)
    }

    fn vrep(&self) -> Result<&VRep, Error> {
        match &self.repr {
            Repr::Pointed(v) => Ok(v),
            Repr::WholeSpace => Err(Error::NotPointed),
        }
    }

    /// Canonical vertex list. Panics on the whole-space value, which has no
    /// vertex description.
    pub fn vertices(&self) -> &[QVector] {
        &self
            .vrep()
            .expect("whole space has no vertex description")
            .vertices
    }

    /// Canonical minimal ray generators.
    pub fn rays(&self) -> &[LatticeVector] {
        &self
            .vrep()
            .expect("whole space has no vertex description")
            .rays
    }

    /// Canonical irredundant half-space list, computed on first use and
    /// cached (compute-then-publish, so concurrent fills are benign).
    pub fn hrep(&self) -> &[HalfSpace] {
        self.hrep.get_or_init(|| match &self.repr {
            Repr::WholeSpace => Vec::new(),
            Repr::Pointed(v) => vrep_to_hrep(self.space, self.dim, &v.vertices, &v.rays)
                .expect("canonical vrep always converts"),
        })
    }

    pub fn is_bounded(&self) -> bool {
        match &self.repr {
            Repr::WholeSpace => self.dim == 0,
            Repr::Pointed(v) => v.rays.is_empty(),
        }
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        match &self.repr {
            Repr::WholeSpace => self.dim,
            Repr::Pointed(v) => {
                let base = v.vertices[0].coords();
                let mut rows: Vec<Vec<Rational>> = v.vertices[1..]
                    .iter()
                    .map(|p| p.coords().iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                rows.extend(v.rays.iter().map(|r| r.to_q().into_coords()));
                rank(&rows)
            }
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn contains(&self, point: &QVector) -> Result<bool, Error> {
        if point.space() != self.space {
            return Err(Error::SpaceMismatch {
                expected: self.space,
                found: point.space(),
            });
        }
        if point.dim() != self.dim {
            return Err(Error::DimensionMismatch(point.dim(), self.dim));
        }
        Ok(self.hrep().iter().all(|hs| hs.satisfied_by(point)))
    }

    /// Whether the polyhedron contains another one (vertices and recession
    /// rays of `other` all satisfy this polyhedron's half-spaces).
    pub fn contains_polyhedron(&self, other: &Polyhedron) -> Result<bool, Error> {
        if other.space != self.space {
            return Err(Error::SpaceMismatch {
                expected: self.space,
                found: other.space,
            });
        }
        if other.is_whole_space() {
            return Ok(self.is_whole_space());
        }
        let vr = other.vrep().expect("checked");
        Ok(vr
            .vertices
            .iter()
            .all(|v| self.hrep().iter().all(|hs| hs.satisfied_by(v)))
            && vr
                .rays
                .iter()
                .all(|r| self.hrep().iter().all(|hs| hs.bounds_ray(r))))
    }

    /// The canonical half-space list has every rhs ≤ 0 exactly when the
    /// origin belongs to the polyhedron.
    pub fn contains_origin(&self) -> bool {
        self.hrep().iter().all(|hs| !hs.rhs().is_positive())
    }

    /// Strict version: every rhs < 0, which also forces full dimension.
    pub fn contains_origin_interior(&self) -> bool {
        self.hrep().iter().all(|hs| hs.rhs().is_negative())
    }

    /// Translate by a vector of the same space.
    pub fn translate(&self, offset: &QVector) -> Result<Polyhedron, Error> {
        if offset.space() != self.space || offset.dim() != self.dim {
            return Err(Error::SpaceMismatch {
                expected: self.space,
                found: offset.space(),
            });
        }
        let v = self.vrep()?;
        Ok(Polyhedron::from_canonical(
            self.space,
            self.dim,
            v.vertices.iter().map(|p| p.add(offset)).collect(),
            v.rays.clone(),
        ))
    }

    /// Scale a polytope by an arbitrary rational. Scaling by zero collapses
    /// to the origin.
    pub fn scale(&self, factor: &Rational) -> Result<Polyhedron, Error> {
        let v = self.vrep()?;
        if !v.rays.is_empty() {
            return Err(Error::Unbounded);
        }
        if factor.is_zero() {
            return Ok(Polyhedron::point(QVector::zero(self.space, self.dim)));
        }
        Ok(Polyhedron::from_canonical(
            self.space,
            self.dim,
            v.vertices.iter().map(|p| p.scale(factor)).collect(),
            vec![],
        ))
    }

    /// Set equality (canonical representations compared structurally).
    pub fn equals(&self, other: &Polyhedron) -> bool {
        self == other
    }
}

/// A pointed rational polyhedral cone given by its minimal primitive
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    space: Space,
    dim: usize,
    rays: Vec<LatticeVector>,
}

impl Cone {
    /// Canonicalizes an arbitrary generator list; fails with [`Error::NotPointed`]
    /// when the generated cone contains a line.
    pub fn new(space: Space, dim: usize, generators: Vec<LatticeVector>) -> Result<Self, Error> {
        if generators.is_empty() {
            return Ok(Cone {
                space,
                dim,
                rays: vec![],
            });
        }
        let apex = QVector::zero(space, dim);
        let poly = Polyhedron::from_vrep(space, dim, vec![apex], generators)?;
        let rays = poly.rays().to_vec();
        Ok(Cone { space, dim, rays })
    }

    pub fn trivial(space: Space, dim: usize) -> Self {
        Cone {
            space,
            dim,
            rays: vec![],
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal generators, primitive and sorted.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty()
    }

    /// The cone as a polyhedron with apex at the origin.
    pub fn to_polyhedron(&self) -> Polyhedron {
        Polyhedron::from_canonical(
            self.space,
            self.dim,
            vec![QVector::zero(self.space, self.dim)],
            self.rays.clone(),
        )
    }
}

/// Converts a half-space list to the canonical vertex/ray form.
///
/// Fails with [`Error::EmptyPolyhedron`] when the intersection is empty and
/// with [`Error::NotPointed`] when it contains a line.
pub fn hrep_to_vrep(space: Space, dim: usize, halfspaces: &[HalfSpace]) -> Result<VRep, Error> {
    let mut rows = Vec::with_capacity(halfspaces.len() + 1);
    for hs in halfspaces {
        // ⟨a,u⟩ ≥ p/q becomes q·a·u − p·t ≥ 0 in homogenized coordinates.
        let q = hs.rhs.denom();
        let mut row: Vec<BigInt> = hs.normal.coords().iter().map(|a| a * q).collect();
        row.push(-hs.rhs.numer().clone());
        rows.push(row);
    }
    let mut t_row = vec![BigInt::zero(); dim];
    t_row.push(BigInt::one());
    rows.push(t_row);

    let generators = extreme_rays(dim + 1, &rows);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in generators.rays {
        let t = r[dim].clone();
        if t.is_zero() {
            rays.push(LatticeVector::new(space, r[..dim].to_vec()));
        } else {
            vertices.push(QVector::new(
                space,
                r[..dim]
                    .iter()
                    .map(|c| Rational::new(c.clone(), t.clone()))
                    .collect(),
            ));
        }
    }
    if vertices.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if !generators.lineality.is_empty() {
        return Err(Error::NotPointed);
    }
    vertices.sort();
    rays.sort();
    Ok(VRep { vertices, rays })
}

/// Converts vertices and rays to the canonical irredundant half-space list.
///
/// The affine hull's equations come out as pairs of opposite half-spaces, so
/// lower-dimensional inputs (down to single points) are fine.
pub fn vrep_to_hrep(
    space: Space,
    dim: usize,
    vertices: &[QVector],
    rays: &[LatticeVector],
) -> Result<Vec<HalfSpace>, Error> {
    if vertices.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    // A valid inequality ⟨a,u⟩ ≥ b is a point (a, -b) of the cone dual to the
    // homogenized generators, so the facets are that cone's extreme rays and
    // the affine-hull equations are its lineality space.
    let mut rows = Vec::with_capacity(vertices.len() + rays.len());
    for v in vertices {
        let scale = denominator_lcm(v.coords());
        let mut row: Vec<BigInt> = v
            .coords()
            .iter()
            .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
            .collect();
        row.push(scale);
        rows.push(row);
    }
    for r in rays {
        let mut row = r.coords().to_vec();
        row.push(BigInt::zero());
        rows.push(row);
    }
    let generators = extreme_rays(dim + 1, &rows);

    let dual_space = space.dual();
    let mut halfspaces = Vec::new();
    for y in generators.rays {
        let (normal, c) = split_dual_row(&y, dim);
        if normal.iter().all(BigInt::is_zero) {
            // the trivially true inequality 0 ≥ -c
            continue;
        }
        halfspaces.push(HalfSpace::new(
            LatticeVector::new(dual_space, normal),
            Rational::from_integer(-c),
        )?);
    }
    for y in generators.lineality {
        let (normal, c) = split_dual_row(&y, dim);
        debug_assert!(!normal.iter().all(BigInt::is_zero));
        let positive = HalfSpace::new(
            LatticeVector::new(dual_space, normal.clone()),
            Rational::from_integer(-c.clone()),
        )?;
        let negative = HalfSpace::new(
            LatticeVector::new(dual_space, normal.iter().map(|v| -v).collect()),
            Rational::from_integer(c),
        )?;
        halfspaces.push(positive);
        halfspaces.push(negative);
    }
    halfspaces.sort();
    Ok(halfspaces)
}

fn split_dual_row(row: &[BigInt], dim: usize) -> (Vec<BigInt>, BigInt) {
    (row[..dim].to_vec(), row[dim].clone())
}

/// Polar dual `{v in the dual space : ⟨v, u⟩ ≥ -1 for all u ∈ P}`.
///
/// Requires the origin to be contained in `P`. Duals of lower-dimensional
/// polyhedra other than the origin itself contain lines and are reported as
/// [`Error::NotPointed`].
pub fn polar_dual(poly: &Polyhedron) -> Result<Polyhedron, Error> {
    let dual_space = poly.space().dual();
    if poly.is_whole_space() {
        return Ok(Polyhedron::point(QVector::zero(dual_space, poly.dim())));
    }
    if !poly.contains_origin() {
        return Err(Error::OriginNotContained);
    }
    let origin = QVector::zero(poly.space(), poly.dim());
    if poly.rays().is_empty() && poly.vertices() == [origin] {
        return Ok(Polyhedron::whole_space(dual_space, poly.dim()));
    }
    // The dual lives in the dual space, so its half-space normals are the
    // vertices and rays of P, which live in P's own space.
    let mut halfspaces = Vec::new();
    for v in poly.vertices() {
        if v.is_zero() {
            // ⟨0, u⟩ ≥ -1 holds everywhere
            continue;
        }
        let scale = denominator_lcm(v.coords());
        let normal: Vec<BigInt> = v
            .coords()
            .iter()
            .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
            .collect();
        halfspaces.push(HalfSpace::new(
            LatticeVector::new(poly.space(), normal),
            -Rational::from_integer(scale),
        )?);
    }
    for r in poly.rays() {
        halfspaces.push(HalfSpace::new(r.clone(), Rational::zero())?);
    }
    Polyhedron::from_hrep(dual_space, poly.dim(), halfspaces)
}

/// Unique decomposition of a line-free polyhedron into its vertex polytope
/// and recession cone.
pub fn decompose(poly: &Polyhedron) -> Result<(Polyhedron, Cone), Error> {
    let v = poly.vrep()?;
    let polytope = Polyhedron::from_canonical(poly.space(), poly.dim(), v.vertices.clone(), vec![]);
    let cone = Cone {
        space: poly.space(),
        dim: poly.dim(),
        rays: v.rays.clone(),
    };
    Ok((polytope, cone))
}

/// Minkowski sum of two polyhedra in the same space.
pub fn minkowski_sum(a: &Polyhedron, b: &Polyhedron) -> Result<Polyhedron, Error> {
    if a.space() != b.space() {
        return Err(Error::SpaceMismatch {
            expected: a.space(),
            found: b.space(),
        });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.is_whole_space() || b.is_whole_space() {
        return Ok(Polyhedron::whole_space(a.space(), a.dim()));
    }
    let mut points = Vec::with_capacity(a.vertices().len() * b.vertices().len());
    for va in a.vertices() {
        for vb in b.vertices() {
            points.push(va.add(vb));
        }
    }
    let mut rays = a.rays().to_vec();
    rays.extend(b.rays().iter().cloned());
    Polyhedron::from_vrep(a.space(), a.dim(), points, rays)
}

/// Minkowski difference `{x : x + B ⊆ A}` of polytopes, possibly empty.
pub fn minkowski_difference(a: &Polyhedron, b: &Polyhedron) -> Result<Option<Polyhedron>, Error> {
    if a.space() != b.space() {
        return Err(Error::SpaceMismatch {
            expected: a.space(),
            found: b.space(),
        });
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    if !a.is_bounded() || !b.is_bounded() {
        return Err(Error::Unbounded);
    }
    // Each half-space ⟨n,x⟩ ≥ c of A tightens to c - min over V(B) of ⟨n,b⟩.
    let mut halfspaces = Vec::with_capacity(a.hrep().len());
    for hs in a.hrep() {
        let min_value = b
            .vertices()
            .iter()
            .map(|v| {
                let normal_q: Vec<Rational> = hs
                    .normal()
                    .coords()
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect();
                dot(&normal_q, v.coords())
            })
            .min()
            .expect("polytope has vertices");
        halfspaces.push(HalfSpace::new(hs.normal().clone(), hs.rhs() - min_value)?);
    }
    match Polyhedron::from_hrep(a.space(), a.dim(), halfspaces) {
        Ok(poly) => Ok(Some(poly)),
        Err(Error::EmptyPolyhedron) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Exact hyperplane section `P ∩ {⟨w, ·⟩ = h}`, possibly empty.
pub fn slice(
    poly: &Polyhedron,
    w: &LatticeVector,
    h: &Rational,
) -> Result<Option<Polyhedron>, Error> {
    if w.space() != poly.space().dual() {
        return Err(Error::SpaceMismatch {
            expected: poly.space().dual(),
            found: w.space(),
        });
    }
    if w.dim() != poly.dim() {
        return Err(Error::DimensionMismatch(w.dim(), poly.dim()));
    }
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut halfspaces = poly.hrep().to_vec();
    halfspaces.push(HalfSpace::new(w.clone(), h.clone())?);
    halfspaces.push(HalfSpace::new(w.negate(), -h.clone())?);
    match Polyhedron::from_hrep(poly.space(), poly.dim(), halfspaces) {
        Ok(p) => Ok(Some(p)),
        Err(Error::EmptyPolyhedron) => Ok(None),
        Err(e) => Err(e),
    }
}
