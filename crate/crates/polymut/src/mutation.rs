//! Combinatorial mutation of polytopes, pointed cones, and their Minkowski
//! sums.
//!
//! A mutation is driven by a [`Factor`]: a primitive width vector `w` in `M`
//! together with a lattice polytope `F` inside the hyperplane `w⊥` of `N`.
//! Slicing the input at height `h = ⟨w, ·⟩`, the negative slices must factor
//! as `G_h + (-h)F` for some witness polytope `G_h`, and the result is the
//! hull of the witnesses together with the nonnegative slices expanded by
//! `hF`. The witness at each height is taken to be the Minkowski difference
//! `P_{w,h} ⊖ (-h)F`, which is inclusion-maximal among all valid choices, so
//! a mutation exists exactly when these maximal witnesses cover the vertices
//! at their heights; choosing any smaller valid family gives the same
//! result. Outcomes are reported as [`MutationCertificate`] values rather
//! than errors so that failed mutations can be counted and audited.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::polyhedron::{minkowski_difference, minkowski_sum, slice, Cone, Polyhedron};
use crate::rational::Rational;
use crate::vector::{dot, LatticeVector, QVector, Space};
use crate::Error;

/// A width vector `w ∈ M` with a lattice polytope factor `F ⊆ w⊥ ⊆ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    width: LatticeVector,
    polytope: Polyhedron,
}

impl Factor {
    /// Validates that `w` is primitive and nonzero, and that `F` is a
    /// nonempty lattice polytope contained in `w⊥`.
    pub fn new(width: LatticeVector, polytope: Polyhedron) -> Result<Self, Error> {
        if width.space() != Space::M {
            return Err(Error::SpaceMismatch {
                expected: Space::M,
                found: width.space(),
            });
        }
        if polytope.space() != Space::N {
            return Err(Error::SpaceMismatch {
                expected: Space::N,
                found: polytope.space(),
            });
        }
        if width.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !width.is_primitive() {
            return Err(Error::InvalidFactor(
                "width vector must be primitive".into(),
            ));
        }
        if width.dim() != polytope.dim() {
            return Err(Error::DimensionMismatch(width.dim(), polytope.dim()));
        }
        if polytope.is_whole_space() || !polytope.is_bounded() {
            return Err(Error::InvalidFactor("factor must be a polytope".into()));
        }
        let w_q = width.to_q();
        for v in polytope.vertices() {
            if !v.is_lattice_point() {
                return Err(Error::InvalidFactor(format!(
                    "factor vertex {v:?} is not a lattice point"
                )));
            }
            if !dot(w_q.coords(), v.coords()).is_zero() {
                return Err(Error::InvalidFactor(
                    "factor must lie in the hyperplane orthogonal to the width vector".into(),
                ));
            }
        }
        Ok(Factor { width, polytope })
    }

    /// Builds the factor from integer vertex coordinates.
    pub fn from_vertices(width: LatticeVector, vertices: &[Vec<i64>]) -> Result<Self, Error> {
        let dim = width.dim();
        let points = vertices
            .iter()
            .map(|v| QVector::from_ints(Space::N, v))
            .collect::<Vec<_>>();
        let polytope = Polyhedron::from_vrep(Space::N, dim, points, vec![])?;
        Factor::new(width, polytope)
    }

    pub fn width_vector(&self) -> &LatticeVector {
        &self.width
    }

    pub fn polytope(&self) -> &Polyhedron {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.width.dim()
    }

    /// The same factor with the width vector negated; mutating by it undoes
    /// a mutation by `self`.
    pub fn negated(&self) -> Factor {
        Factor {
            width: self.width.negate(),
            polytope: self.polytope.clone(),
        }
    }

    /// Height `⟨w, u⟩` of a point of `N`.
    pub fn height(&self, point: &QVector) -> Rational {
        dot(&self.width.to_q().into_coords(), point.coords())
    }
}

/// Which part of a decomposition a witness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyPart {
    Polytope,
    Cone,
}

/// One recorded witness: the chosen `G_h` at a height `h ≤ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhEntry {
    pub height: Rational,
    pub witness: Option<Polyhedron>,
    pub part: FamilyPart,
}

/// The family of height witnesses used by a mutation, kept for audit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GhFamily {
    pub entries: Vec<GhEntry>,
}

/// Outcome of a mutation: the result when defined, or the failing height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationCertificate {
    pub input: Polyhedron,
    pub factor: Factor,
    pub family: GhFamily,
    pub defined: bool,
    pub failure_height: Option<Rational>,
    pub result: Option<Polyhedron>,
}

impl MutationCertificate {
    fn undefined(input: Polyhedron, factor: Factor, family: GhFamily, height: Rational) -> Self {
        MutationCertificate {
            input,
            factor,
            family,
            defined: false,
            failure_height: Some(height),
            result: None,
        }
    }

    /// The result polyhedron; panics when the mutation was undefined.
    pub fn result(&self) -> &Polyhedron {
        self.result.as_ref().expect("mutation was not defined")
    }
}

fn check_factor_input(poly: &Polyhedron, factor: &Factor) -> Result<(), Error> {
    if poly.space() != Space::N {
        return Err(Error::SpaceMismatch {
            expected: Space::N,
            found: poly.space(),
        });
    }
    if poly.dim() != factor.dim() {
        return Err(Error::DimensionMismatch(poly.dim(), factor.dim()));
    }
    Ok(())
}

/// The inclusion-maximal witness `P_{w,h} ⊖ (-h)F` at a height `h ≤ 0`,
/// possibly empty. Any valid witness is contained in this one, so coverage of
/// the height's vertices by the maximal witness decides existence.
pub fn maximal_gh(
    poly: &Polyhedron,
    factor: &Factor,
    height: &Rational,
) -> Result<Option<Polyhedron>, Error> {
    check_factor_input(poly, factor)?;
    if height.is_positive() {
        return Err(Error::InvalidHeight);
    }
    let Some(section) = slice(poly, factor.width_vector(), height)? else {
        return Ok(None);
    };
    let scaled = factor.polytope().scale(&-height.clone())?;
    minkowski_difference(&section, &scaled)
}

/// Vertices of `poly` lying at the given height.
fn vertices_at_height(poly: &Polyhedron, factor: &Factor, height: &Rational) -> Vec<QVector> {
    poly.vertices()
        .iter()
        .filter(|v| factor.height(v) == *height)
        .cloned()
        .collect()
}

/// Checks `points ⊆ witness + (-h)F` and reports the first uncovered point.
fn coverage_gap(
    points: &[QVector],
    witness: &Option<Polyhedron>,
    factor: &Factor,
    height: &Rational,
) -> Result<Option<QVector>, Error> {
    if points.is_empty() {
        return Ok(None);
    }
    let Some(witness) = witness else {
        return Ok(Some(points[0].clone()));
    };
    let expanded = minkowski_sum(witness, &factor.polytope().scale(&-height.clone())?)?;
    for p in points {
        if !expanded.contains(p)? {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// Combinatorial mutation of a rational polytope.
///
/// Only the heights of vertices (plus zero) ever matter: witnesses may be
/// empty away from vertex heights, and the nonnegative slices interpolate
/// convexly between the ones at vertex heights.
pub fn mutate_polytope(poly: &Polyhedron, factor: &Factor) -> Result<MutationCertificate, Error> {
    check_factor_input(poly, factor)?;
    if !poly.is_bounded() {
        return Err(Error::Unbounded);
    }
    let mut heights: BTreeSet<Rational> =
        poly.vertices().iter().map(|v| factor.height(v)).collect();
    let zero = Rational::zero();
    if heights.iter().next().unwrap() < &zero && heights.iter().next_back().unwrap() > &zero {
        heights.insert(zero.clone());
    }

    let mut family = GhFamily::default();
    let mut hull_points: Vec<QVector> = Vec::new();
    for h in &heights {
        if !h.is_positive() {
            let witness = maximal_gh(poly, factor, h)?;
            if h.is_negative() {
                // at h = 0 the condition holds trivially since (-0)F = {0}
                let at_height = vertices_at_height(poly, factor, h);
                if coverage_gap(&at_height, &witness, factor, h)?.is_some() {
                    family.entries.push(GhEntry {
                        height: h.clone(),
                        witness,
                        part: FamilyPart::Polytope,
                    });
                    return Ok(MutationCertificate::undefined(
                        poly.clone(),
                        factor.clone(),
                        family,
                        h.clone(),
                    ));
                }
            }
            if let Some(g) = &witness {
                hull_points.extend(g.vertices().iter().cloned());
            }
            family.entries.push(GhEntry {
                height: h.clone(),
                witness,
                part: FamilyPart::Polytope,
            });
        } else {
            let section =
                slice(poly, factor.width_vector(), h)?.expect("vertex height has a nonempty slice");
            let expanded = minkowski_sum(&section, &factor.polytope().scale(h)?)?;
            hull_points.extend(expanded.vertices().iter().cloned());
        }
    }
    let result = Polyhedron::from_vrep(poly.space(), poly.dim(), hull_points, vec![])?;
    Ok(MutationCertificate {
        input: poly.clone(),
        factor: factor.clone(),
        family,
        defined: true,
        failure_height: None,
        result: Some(result),
    })
}

/// Combinatorial mutation of a rational polytope with a caller-supplied
/// witness family in place of the maximal one.
///
/// Both inclusions of the defining condition are validated at every
/// nonpositive vertex height: the expanded witness must sit inside the slice
/// and cover the vertices there. Heights missing from the family count as
/// empty witnesses. Any valid family produces the same result as
/// [`mutate_polytope`].
pub fn mutate_polytope_with_family(
    poly: &Polyhedron,
    factor: &Factor,
    family: &GhFamily,
) -> Result<MutationCertificate, Error> {
    check_factor_input(poly, factor)?;
    if !poly.is_bounded() {
        return Err(Error::Unbounded);
    }
    let mut heights: BTreeSet<Rational> =
        poly.vertices().iter().map(|v| factor.height(v)).collect();
    let zero = Rational::zero();
    if heights.iter().next().unwrap() < &zero && heights.iter().next_back().unwrap() > &zero {
        heights.insert(zero.clone());
    }

    let mut used = GhFamily::default();
    let mut hull_points: Vec<QVector> = Vec::new();
    for h in &heights {
        if !h.is_positive() {
            let witness = family
                .entries
                .iter()
                .find(|entry| entry.height == *h)
                .and_then(|entry| entry.witness.clone());
            let section =
                slice(poly, factor.width_vector(), h)?.expect("vertex height has a nonempty slice");
            let mut valid = true;
            if let Some(g) = &witness {
                let expanded = minkowski_sum(g, &factor.polytope().scale(&-h.clone())?)?;
                valid = section.contains_polyhedron(&expanded)?;
            }
            let at_height = vertices_at_height(poly, factor, h);
            if valid {
                valid = coverage_gap(&at_height, &witness, factor, h)?.is_none();
            }
            used.entries.push(GhEntry {
                height: h.clone(),
                witness: witness.clone(),
                part: FamilyPart::Polytope,
            });
            if !valid {
                return Ok(MutationCertificate::undefined(
                    poly.clone(),
                    factor.clone(),
                    used,
                    h.clone(),
                ));
            }
            if let Some(g) = &witness {
                hull_points.extend(g.vertices().iter().cloned());
            }
            if h.is_zero() {
                // the nonnegative part of the hull always includes the plain
                // zero slice, whatever witness was chosen there
                hull_points.extend(section.vertices().iter().cloned());
            }
        } else {
            let section =
                slice(poly, factor.width_vector(), h)?.expect("vertex height has a nonempty slice");
            let expanded = minkowski_sum(&section, &factor.polytope().scale(h)?)?;
            hull_points.extend(expanded.vertices().iter().cloned());
        }
    }
    let result = Polyhedron::from_vrep(poly.space(), poly.dim(), hull_points, vec![])?;
    Ok(MutationCertificate {
        input: poly.clone(),
        factor: factor.clone(),
        family: used,
        defined: true,
        failure_height: None,
        result: Some(result),
    })
}

/// Combinatorial mutation of a pointed rational cone.
///
/// The width vector must be strictly positive or strictly negative on every
/// generator. In the ascending case the result is the cone over the
/// height-one slice expanded by `F` and no witness is needed. In the
/// descending case the witness at the largest generator height `a` scales
/// linearly to every other height, where it is again the maximal witness, and
/// coverage is checked at each generator height.
pub fn mutate_cone(cone: &Cone, factor: &Factor) -> Result<MutationCertificate, Error> {
    let input = cone.to_polyhedron();
    check_factor_input(&input, factor)?;
    if cone.is_trivial() {
        return Ok(MutationCertificate {
            input: input.clone(),
            factor: factor.clone(),
            family: GhFamily::default(),
            defined: true,
            failure_height: None,
            result: Some(input),
        });
    }
    let heights: Vec<Rational> = cone
        .rays()
        .iter()
        .map(|r| factor.height(&r.to_q()))
        .collect();
    if heights.iter().any(Rational::is_zero)
        || (heights.iter().any(|h| h.is_positive()) && heights.iter().any(|h| h.is_negative()))
    {
        return Err(Error::MixedSigns);
    }

    if heights[0].is_positive() {
        let one = Rational::from_integer(1.into());
        let section = slice(&input, factor.width_vector(), &one)?
            .expect("an ascending cone meets height one");
        let expanded = minkowski_sum(&section, factor.polytope())?;
        let result = cone_over(&expanded)?;
        return Ok(MutationCertificate {
            input,
            factor: factor.clone(),
            family: GhFamily::default(),
            defined: true,
            failure_height: None,
            result: Some(result),
        });
    }

    // descending case
    let top = heights.iter().max().unwrap().clone();
    let g_top = maximal_gh(&input, factor, &top)?;
    let mut family = GhFamily::default();
    let distinct: BTreeSet<Rational> = heights.into_iter().collect();
    for h in distinct.iter().rev() {
        // (h/top)·G_top is exactly the maximal witness at h because the
        // slices of a cone scale linearly with the height
        let witness = match &g_top {
            Some(g) => Some(g.scale(&(h / &top))?),
            None => None,
        };
        let at_height: Vec<QVector> = cone
            .rays()
            .iter()
            .map(LatticeVector::to_q)
            .filter(|p| factor.height(p) == *h)
            .collect();
        let gap = coverage_gap(&at_height, &witness, factor, h)?;
        family.entries.push(GhEntry {
            height: h.clone(),
            witness,
            part: FamilyPart::Cone,
        });
        if gap.is_some() {
            return Ok(MutationCertificate::undefined(
                input,
                factor.clone(),
                family,
                h.clone(),
            ));
        }
    }
    let result = cone_over(
        g_top
            .as_ref()
            .expect("coverage succeeded, so the top witness is nonempty"),
    )?;
    Ok(MutationCertificate {
        input,
        factor: factor.clone(),
        family,
        defined: true,
        failure_height: None,
        result: Some(result),
    })
}

/// The cone spanned by a polytope, as a polyhedron with apex at the origin.
fn cone_over(polytope: &Polyhedron) -> Result<Polyhedron, Error> {
    let mut generators = Vec::new();
    for v in polytope.vertices() {
        if v.is_zero() {
            continue;
        }
        let scale = crate::rational::denominator_lcm(v.coords());
        let coords: Vec<BigInt> = v
            .coords()
            .iter()
            .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
            .collect();
        generators.push(LatticeVector::new(polytope.space(), coords));
    }
    Ok(Cone::new(polytope.space(), polytope.dim(), generators)?.to_polyhedron())
}

/// Combinatorial mutation of a line-free polyhedron with the origin in its
/// interior: the vertex polytope and the recession cone mutate separately
/// and the results are Minkowski-summed.
pub fn mutate_polyhedron(poly: &Polyhedron, factor: &Factor) -> Result<MutationCertificate, Error> {
    check_factor_input(poly, factor)?;
    if poly.is_whole_space() {
        return Err(Error::NotPointed);
    }
    if !poly.contains_origin_interior() {
        return Err(Error::OriginNotContained);
    }
    let (polytope, cone) = crate::polyhedron::decompose(poly)?;
    let bounded_part = mutate_polytope(&polytope, factor)?;
    let cone_part = mutate_cone(&cone, factor)?;
    let mut family = bounded_part.family;
    family.entries.extend(cone_part.family.entries);
    let defined = bounded_part.defined && cone_part.defined;
    let failure_height = bounded_part.failure_height.or(cone_part.failure_height);
    let result = match (&bounded_part.result, &cone_part.result) {
        (Some(a), Some(b)) if defined => Some(minkowski_sum(a, b)?),
        _ => None,
    };
    Ok(MutationCertificate {
        input: poly.clone(),
        factor: factor.clone(),
        family,
        defined,
        failure_height,
        result,
    })
}
