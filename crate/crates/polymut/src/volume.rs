//! Exact Euclidean volume of full-dimensional polytopes.
//!
//! The polytope is triangulated combinatorially by pulling its first vertex:
//! a face is either a simplex or the union of pyramids over the facets of the
//! face that miss the pulled vertex. The face lattice needed for this comes
//! from the vertex/facet incidence, so only one representation conversion is
//! ever performed. Each simplex contributes `|det| / d!` in the original
//! ambient coordinates.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::linalg::determinant;
use crate::polyhedron::Polyhedron;
use crate::rational::Rational;
use crate::vector::{QVector, Space};
use crate::Error;

/// Euclidean volume of a full-dimensional polytope, as an exact rational.
pub fn exact_volume(poly: &Polyhedron) -> Result<Rational, Error> {
    if poly.is_whole_space() || !poly.is_bounded() {
        return Err(Error::Unbounded);
    }
    let dim = poly.dim();
    if poly.affine_dim() != dim {
        return Err(Error::LowerDimensional);
    }
    let vertices = poly.vertices();
    let facets: Vec<Vec<usize>> = poly
        .hrep()
        .iter()
        .map(|hs| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| hs.slack(v).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let top: Vec<usize> = (0..vertices.len()).collect();
    let mut total = Rational::zero();
    for simplex in pull_triangulation(&top, dim, &facets) {
        let base = vertices[simplex[0]].coords();
        let rows: Vec<Vec<Rational>> = simplex[1..]
            .iter()
            .map(|&i| {
                vertices[i]
                    .coords()
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        total += determinant(rows).abs();
    }
    Ok(total / Rational::from_integer(factorial(dim)))
}

/// Volume of the convex hull of a vertex list, full-dimensional in `R^dim`.
pub fn exact_volume_of_points(
    space: Space,
    dim: usize,
    points: Vec<QVector>,
) -> Result<Rational, Error> {
    exact_volume(&Polyhedron::from_vrep(space, dim, points, vec![])?)
}

/// Triangulates a face (given by sorted vertex indices) of known dimension.
fn pull_triangulation(face: &[usize], face_dim: usize, facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if face.len() == face_dim + 1 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut subfaces: Vec<Vec<usize>> = facets
        .iter()
        .map(|f| intersect_sorted(face, f))
        .filter(|s| !s.is_empty() && s.len() < face.len())
        .collect();
    subfaces.sort();
    subfaces.dedup();
    // facets of the face are the maximal proper intersections with the
    // polytope's facets
    let maximal: Vec<&Vec<usize>> = subfaces
        .iter()
        .filter(|s| {
            !subfaces
                .iter()
                .any(|t| t.len() > s.len() && is_subset(s, t))
        })
        .collect();
    let mut simplices = Vec::new();
    for sub in maximal {
        if sub.binary_search(&apex).is_ok() {
            continue;
        }
        for mut simplex in pull_triangulation(sub, face_dim - 1, facets) {
            simplex.insert(0, apex);
            simplices.push(simplex);
        }
    }
    simplices
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::from(1);
    for k in 2..=n {
        out *= BigInt::from(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::vector::Space;

    fn hull(points: &[&[i64]]) -> Polyhedron {
        Polyhedron::from_vrep(
            Space::N,
            points[0].len(),
            points
                .iter()
                .map(|p| QVector::from_ints(Space::N, p))
                .collect(),
            vec![],
        )
        .unwrap()
    }

    /// Test-only oracle: shoelace area of a polygon given in ccw order.
    fn shoelace(points: &[&[i64]]) -> Rational {
        let mut twice = Rational::zero();
        for i in 0..points.len() {
            let (p, q) = (points[i], points[(i + 1) % points.len()]);
            twice += int(p[0] * q[1] - q[0] * p[1]);
        }
        twice / int(2)
    }

    #[test]
    fn unit_square_has_volume_one() {
        let square = hull(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(exact_volume(&square).unwrap(), int(1));
    }

    #[test]
    fn triangles_match_the_shoelace_oracle() {
        let wide = [&[0i64, 0][..], &[1, 0], &[1, 2]];
        assert_eq!(shoelace(&wide), int(1));
        assert_eq!(exact_volume(&hull(&wide)).unwrap(), int(1));

        let half = [&[0i64, 0][..], &[1, 1], &[0, 1]];
        assert_eq!(shoelace(&half), rat(1, 2));
        assert_eq!(exact_volume(&hull(&half)).unwrap(), rat(1, 2));
    }

    #[test]
    fn cube_and_simplex_in_three_dimensions() {
        let cube = hull(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ]);
        assert_eq!(exact_volume(&cube).unwrap(), int(1));

        let simplex = hull(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(exact_volume(&simplex).unwrap(), rat(1, 6));
    }

    #[test]
    fn octahedron_volume() {
        let oct = hull(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        assert_eq!(exact_volume(&oct).unwrap(), rat(4, 3));
    }

    #[test]
    fn invariant_under_unimodular_maps_and_vertex_order() {
        let tri = [&[0i64, 0][..], &[3, 1], &[1, 2]];
        let vol = exact_volume(&hull(&tri)).unwrap();
        // shear (x, y) -> (x + y, y) and rotation (x, y) -> (-y, x)
        let sheared: Vec<Vec<i64>> = tri.iter().map(|p| vec![p[0] + p[1], p[1]]).collect();
        let rotated: Vec<Vec<i64>> = tri.iter().map(|p| vec![-p[1], p[0]]).collect();
        for image in [sheared, rotated] {
            let refs: Vec<&[i64]> = image.iter().map(Vec::as_slice).collect();
            assert_eq!(exact_volume(&hull(&refs)).unwrap(), vol);
        }
        let reordered = hull(&[&[1, 2], &[0, 0], &[3, 1]]);
        assert_eq!(exact_volume(&reordered).unwrap(), vol);
    }

    #[test]
    fn degenerate_inputs_error() {
        let segment = hull(&[&[0, 0], &[1, 1]]);
        assert_eq!(exact_volume(&segment).unwrap_err(), Error::LowerDimensional);

        let unbounded = Polyhedron::from_vrep(
            Space::N,
            2,
            vec![QVector::from_ints(Space::N, &[0, 0])],
            vec![crate::vector::LatticeVector::from_ints(Space::N, &[1, 0])],
        )
        .unwrap();
        assert_eq!(exact_volume(&unbounded).unwrap_err(), Error::Unbounded);
    }
}
