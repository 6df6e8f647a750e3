//! The piecewise-linear map `φ_{w,F}` on the dual space `M_R`.
//!
//! For a factor `(w, F)` the map sends `u` to `u - u_min · w` where `u_min`
//! is the minimum of `⟨u, v⟩` over `v ∈ F`. It is linear on the region
//! `K_v = {u : ⟨u, v⟩ ≤ ⟨u, v'⟩ for all v' ∈ V(F)}` attached to each vertex
//! `v` of `F`, where it acts by the unimodular map `u ↦ u - ⟨u, v⟩ w`. The
//! regions are defined directly by these minimum-attainment inequalities,
//! which sidesteps the usual sign bookkeeping of indexing them by the normal
//! fan of `F`: the chamber of `v` here is the negative of `v`'s normal cone.
//!
//! Applied to a full-dimensional polytope the image may fail to be convex;
//! convexity is certified exactly through volumes: each chamber map
//! preserves volume and distinct chambers overlap in measure zero, so the
//! image is convex precisely when the volume of the convex hull of the
//! pieces equals the total volume of the pieces.

use num::bigint::BigInt;
use num::Zero;

use crate::mutation::{mutate_polyhedron, Factor};
use crate::polyhedron::{polar_dual, HalfSpace, Polyhedron};
use crate::rational::Rational;
use crate::vector::{dot, LatticeVector, QVector, Space};
use crate::volume::exact_volume;
use crate::Error;

/// A maximal linearity region of `φ_{w,F}` with its vertex and linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    vertex: LatticeVector,
    width: LatticeVector,
    region: Vec<HalfSpace>,
}

impl Chamber {
    /// The vertex of `F` on which the minimum is attained in this chamber.
    pub fn vertex(&self) -> &LatticeVector {
        &self.vertex
    }

    /// Half-spaces of `M_R` cutting out the region; empty for a point factor.
    pub fn region(&self) -> &[HalfSpace] {
        &self.region
    }

    pub fn contains(&self, point: &QVector) -> bool {
        self.region.iter().all(|hs| hs.satisfied_by(point))
    }

    /// The linear piece `u ↦ u - ⟨u, v⟩ w`, integral with integral inverse.
    pub fn apply(&self, point: &QVector) -> QVector {
        let height = dot(&self.vertex.to_q().into_coords(), point.coords());
        point.sub(&self.width.to_q().scale(&height))
    }
}

/// One chamber per vertex of the factor polytope; their union is all of
/// `M_R` and the maps agree on overlaps.
pub fn chambers(factor: &Factor) -> Vec<Chamber> {
    let verts = factor.polytope().vertices();
    let mut out = Vec::with_capacity(verts.len());
    for v in verts {
        let v_int = lattice_point(v);
        let mut region = Vec::new();
        for other in verts {
            if other == v {
                continue;
            }
            let normal: Vec<BigInt> = lattice_point(other)
                .iter()
                .zip(&v_int)
                .map(|(o, s)| o - s)
                .collect();
            region.push(
                HalfSpace::new(LatticeVector::new(Space::N, normal), Rational::zero())
                    .expect("distinct vertices give a nonzero normal"),
            );
        }
        region.sort();
        out.push(Chamber {
            vertex: LatticeVector::new(Space::N, v_int),
            width: factor.width_vector().clone(),
            region,
        });
    }
    out
}

fn lattice_point(v: &QVector) -> Vec<BigInt> {
    v.coords().iter().map(|c| c.to_integer()).collect()
}

/// `φ_{w,F}(u) = u - min over V(F) of ⟨u, v⟩ · w`.
pub fn phi_point(factor: &Factor, point: &QVector) -> Result<QVector, Error> {
    if point.space() != Space::M {
        return Err(Error::SpaceMismatch {
            expected: Space::M,
            found: point.space(),
        });
    }
    if point.dim() != factor.dim() {
        return Err(Error::DimensionMismatch(point.dim(), factor.dim()));
    }
    let minimum = factor
        .polytope()
        .vertices()
        .iter()
        .map(|v| dot(point.coords(), v.coords()))
        .min()
        .expect("factor has vertices");
    Ok(point.sub(&factor.width_vector().to_q().scale(&minimum)))
}

/// The image of a full-dimensional polytope under `φ_{w,F}`: the linear
/// pieces, their convex hull, and the exact convexity verdict.
#[derive(Debug, Clone)]
pub struct PlImage {
    pub factor: Factor,
    pub source: Polyhedron,
    /// Chambers meeting the source in full dimension, with the image of the
    /// intersection under that chamber's map. The pieces cover the image and
    /// overlap in measure zero.
    pub pieces: Vec<(Chamber, Polyhedron)>,
    /// Convex hull of all the pieces.
    pub hull: Polyhedron,
    /// Total volume of the pieces; always equals the source volume.
    pub piece_volume: Rational,
    /// Volume of the hull; equals `piece_volume` exactly when the image is
    /// convex, in which case `hull` is the image.
    pub hull_volume: Rational,
    pub convex: bool,
}

/// Applies `φ_{w,F}` to a full-dimensional polytope of `M_R`.
pub fn phi_polytope(factor: &Factor, polytope: &Polyhedron) -> Result<PlImage, Error> {
    if polytope.space() != Space::M {
        return Err(Error::SpaceMismatch {
            expected: Space::M,
            found: polytope.space(),
        });
    }
    if polytope.dim() != factor.dim() {
        return Err(Error::DimensionMismatch(polytope.dim(), factor.dim()));
    }
    if polytope.is_whole_space() || !polytope.is_bounded() {
        return Err(Error::Unbounded);
    }
    if !polytope.is_full_dimensional() {
        return Err(Error::LowerDimensional);
    }
    let dim = polytope.dim();
    let mut pieces = Vec::new();
    let mut hull_points = Vec::new();
    let mut piece_volume = Rational::zero();
    for chamber in chambers(factor) {
        let mut hrep = polytope.hrep().to_vec();
        hrep.extend(chamber.region().iter().cloned());
        let source_piece = match Polyhedron::from_hrep(Space::M, dim, hrep) {
            Ok(p) => p,
            Err(Error::EmptyPolyhedron) => continue,
            Err(e) => return Err(e),
        };
        if source_piece.affine_dim() != dim {
            continue;
        }
        // a chamber map is a linear bijection, so it sends vertices to
        // vertices and the image stays canonical after sorting
        let image_vertices: Vec<QVector> = source_piece
            .vertices()
            .iter()
            .map(|v| chamber.apply(v))
            .collect();
        hull_points.extend(image_vertices.iter().cloned());
        let image = Polyhedron::from_canonical(Space::M, dim, image_vertices, vec![]);
        piece_volume += exact_volume(&image)?;
        pieces.push((chamber, image));
    }
    let hull = Polyhedron::from_vrep(Space::M, dim, hull_points, vec![])?;
    let hull_volume = exact_volume(&hull)?;
    let convex = hull_volume == piece_volume;
    Ok(PlImage {
        factor: factor.clone(),
        source: polytope.clone(),
        pieces,
        hull,
        piece_volume,
        hull_volume,
        convex,
    })
}

/// Confirms that mutation and the piecewise-linear map are polar to each
/// other on a given input: `φ_{w,F}(P^*)` must be convex and equal to
/// `mut_w(P,F)^*`. Fails with [`Error::UndefinedMutation`] when the mutation
/// does not exist.
pub fn check_commutation(poly: &Polyhedron, factor: &Factor) -> Result<bool, Error> {
    let cert = mutate_polyhedron(poly, factor)?;
    if !cert.defined {
        return Err(Error::UndefinedMutation);
    }
    let dual = polar_dual(poly)?;
    let image = phi_polytope(factor, &dual)?;
    let dual_of_result = polar_dual(cert.result())?;
    Ok(image.convex && image.hull == dual_of_result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn mq(coords: &[i64]) -> QVector {
        QVector::from_ints(Space::M, coords)
    }

    fn hull_m(points: &[&[i64]]) -> Polyhedron {
        Polyhedron::from_vrep(
            Space::M,
            points[0].len(),
            points.iter().map(|p| mq(p)).collect(),
            vec![],
        )
        .unwrap()
    }

    fn running_factor() -> Factor {
        Factor::from_vertices(
            LatticeVector::from_ints(Space::M, &[1, 1]),
            &[vec![0, 0], vec![1, -1]],
        )
        .unwrap()
    }

    #[test]
    fn chambers_of_a_segment_factor() {
        let chs = chambers(&running_factor());
        assert_eq!(chs.len(), 2);
        // K_{(0,0)} = {u : ⟨u,(1,-1)⟩ ≥ 0} and K_{(1,-1)} is its complement
        let origin_chamber = chs.iter().find(|c| c.vertex().is_zero()).unwrap();
        assert_eq!(
            origin_chamber.region(),
            &[HalfSpace::from_ints(Space::N, &[1, -1], 0).unwrap()]
        );
        let other = chs.iter().find(|c| !c.vertex().is_zero()).unwrap();
        assert_eq!(
            other.vertex(),
            &LatticeVector::from_ints(Space::N, &[1, -1])
        );
        assert_eq!(
            other.region(),
            &[HalfSpace::from_ints(Space::N, &[-1, 1], 0).unwrap()]
        );
        // opposite half-spaces, as forced by a two-vertex factor
        assert_eq!(
            origin_chamber.region()[0].normal().negate(),
            other.region()[0].normal().clone()
        );
    }

    #[test]
    fn point_factor_gives_one_chamber_and_identity() {
        let factor =
            Factor::from_vertices(LatticeVector::from_ints(Space::M, &[1, 1]), &[vec![0, 0]])
                .unwrap();
        let chs = chambers(&factor);
        assert_eq!(chs.len(), 1);
        assert!(chs[0].region().is_empty());
        let u = mq(&[3, -7]);
        assert_eq!(phi_point(&factor, &u).unwrap(), u);
    }

    #[test]
    fn phi_point_examples() {
        let factor = running_factor();
        // (0,1) maps to (1,2): the minimum is ⟨(0,1),(1,-1)⟩ = -1
        assert_eq!(phi_point(&factor, &mq(&[0, 1])).unwrap(), mq(&[1, 2]));
        // (1,0) is fixed: the minimum is attained at the origin vertex
        assert_eq!(phi_point(&factor, &mq(&[1, 0])).unwrap(), mq(&[1, 0]));
    }

    #[test]
    fn phi_point_agrees_with_every_containing_chamber() {
        let factor = running_factor();
        for u in [
            mq(&[0, 1]),
            mq(&[1, 0]),
            mq(&[1, 1]),
            mq(&[-2, 3]),
            mq(&[2, 2]),
        ] {
            let image = phi_point(&factor, &u).unwrap();
            for chamber in chambers(&factor) {
                if chamber.contains(&u) {
                    assert_eq!(chamber.apply(&u), image, "chamber map disagrees at {u:?}");
                }
            }
        }
        // (1,1) lies on the common boundary of both chambers
        let tie = mq(&[1, 1]);
        let chs = chambers(&factor);
        assert!(chs.iter().all(|c| c.contains(&tie)));
    }

    #[test]
    fn chamber_maps_are_unimodular() {
        let factor = running_factor();
        for chamber in chambers(&factor) {
            let dim = factor.dim();
            let mut rows = Vec::new();
            for i in 0..dim {
                let mut e = vec![0i64; dim];
                e[i] = 1;
                rows.push(chamber.apply(&mq(&e)).into_coords());
            }
            let det = crate::linalg::determinant(rows);
            assert_eq!(det, int(1));
            // integral inverse: applying the opposite-width chamber map undoes it
            let u = mq(&[5, -3]);
            let forward = chamber.apply(&u);
            let back = forward.sub(&factor.width_vector().negate().to_q().scale(&dot(
                &chamber.vertex().to_q().into_coords(),
                forward.coords(),
            )));
            assert_eq!(back, u);
        }
    }

    #[test]
    fn image_of_the_unit_square() {
        let square = hull_m(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let image = phi_polytope(&running_factor(), &square).unwrap();
        assert!(image.convex);
        assert_eq!(image.hull, hull_m(&[&[0, 0], &[1, 0], &[1, 2]]));
        assert_eq!(image.pieces.len(), 2);
        assert_eq!(image.piece_volume, int(1));
        assert_eq!(image.hull_volume, int(1));
    }

    #[test]
    fn point_factor_fixes_polytopes() {
        let factor =
            Factor::from_vertices(LatticeVector::from_ints(Space::M, &[1, 1]), &[vec![0, 0]])
                .unwrap();
        let square = hull_m(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let image = phi_polytope(&factor, &square).unwrap();
        assert!(image.convex);
        assert_eq!(image.hull, square);
    }

    #[test]
    fn inverse_direction_restores_the_square() {
        let triangle = hull_m(&[&[0, 0], &[1, 0], &[1, 2]]);
        let inverse_factor = running_factor().negated();
        let image = phi_polytope(&inverse_factor, &triangle).unwrap();
        assert!(image.convex);
        assert_eq!(image.hull, hull_m(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
    }

    #[test]
    fn phi_rejects_lower_dimensional_input() {
        let segment = hull_m(&[&[0, 0], &[1, 1]]);
        assert_eq!(
            phi_polytope(&running_factor(), &segment).unwrap_err(),
            Error::LowerDimensional
        );
    }

    #[test]
    fn piece_volumes_sum_to_the_source_volume_even_when_nonconvex() {
        // big triangle with a long bottom edge; the map folds it
        let tri = hull_m(&[&[-3, -3], &[3, -3], &[0, 3]]);
        let image = phi_polytope(&running_factor(), &tri).unwrap();
        let source_volume = exact_volume(&tri).unwrap();
        assert_eq!(image.piece_volume, source_volume);
        if !image.convex {
            assert!(image.hull_volume > image.piece_volume);
        }
    }

    #[test]
    fn commutation_on_the_running_example() {
        let p = Polyhedron::from_hrep(
            Space::N,
            2,
            vec![
                HalfSpace::from_ints(Space::M, &[1, 0], -1).unwrap(),
                HalfSpace::from_ints(Space::M, &[0, 1], -1).unwrap(),
                HalfSpace::from_ints(Space::M, &[1, 1], -1).unwrap(),
            ],
        )
        .unwrap();
        assert!(check_commutation(&p, &running_factor()).unwrap());
    }

    #[test]
    fn commutation_with_point_factor_is_trivially_true() {
        let p = hull_m(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let p = polar_dual(&p).unwrap();
        let factor =
            Factor::from_vertices(LatticeVector::from_ints(Space::M, &[1, 1]), &[vec![0, 0]])
                .unwrap();
        assert!(check_commutation(&p, &factor).unwrap());
    }

    #[test]
    fn convex_image_does_not_imply_admissible_cone_slicing() {
        // when the width vector takes both signs on the recession cone the
        // mutation side is rejected outright, even though the image here is
        // convex (the map is the identity on the square); the equivalence of
        // convexity and existence presumes proper slicing
        let square = hull_m(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let factor = Factor::from_vertices(
            LatticeVector::from_ints(Space::M, &[1, -1]),
            &[vec![0, 0], vec![1, 1]],
        )
        .unwrap();
        let image = phi_polytope(&factor, &square).unwrap();
        assert!(image.convex);
        assert_eq!(image.hull, square);
        let p = polar_dual(&square).unwrap();
        assert_eq!(
            mutate_polyhedron(&p, &factor).unwrap_err(),
            Error::MixedSigns
        );
    }

    #[test]
    fn commutation_propagates_undefined_mutations() {
        // diamond with a segment factor: the bottom vertex cannot factor
        let p = Polyhedron::from_vrep(
            Space::N,
            2,
            [[1, 0], [-1, 0], [0, 1], [0, -1]]
                .iter()
                .map(|c| QVector::from_ints(Space::N, c))
                .collect(),
            vec![],
        )
        .unwrap();
        let factor = Factor::from_vertices(
            LatticeVector::from_ints(Space::M, &[0, 1]),
            &[vec![0, 0], vec![1, 0]],
        )
        .unwrap();
        match check_commutation(&p, &factor) {
            Err(Error::UndefinedMutation) => {}
            other => panic!("expected undefined mutation, got {other:?}"),
        }
    }
}
