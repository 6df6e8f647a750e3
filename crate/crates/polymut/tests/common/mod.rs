//! Seeded random generators shared by the property and acceptance suites.

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polymut::mutation::Factor;
use polymut::polyhedron::Polyhedron;
use polymut::vector::{LatticeVector, QVector, Space};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_lattice_point(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// A random full-dimensional lattice polytope containing the origin,
/// sometimes strictly inside and sometimes on the boundary.
pub fn random_polytope_with_origin(
    rng: &mut ChaCha8Rng,
    space: Space,
    dim: usize,
    bound: i64,
) -> Polyhedron {
    loop {
        let count = rng.gen_range(dim + 1..=dim + 4);
        let mut points: Vec<QVector> = (0..count)
            .map(|_| QVector::from_ints(space, &random_lattice_point(rng, dim, bound)))
            .collect();
        if rng.gen_bool(0.5) {
            points.push(QVector::zero(space, dim));
        }
        let Ok(poly) = Polyhedron::from_vrep(space, dim, points, vec![]) else {
            continue;
        };
        if poly.affine_dim() != dim {
            continue;
        }
        if !poly.contains_origin() {
            continue;
        }
        return poly;
    }
}

/// A random full-dimensional lattice polytope, origin not required.
pub fn random_polytope(rng: &mut ChaCha8Rng, space: Space, dim: usize, bound: i64) -> Polyhedron {
    loop {
        let count = rng.gen_range(dim + 1..=dim + 4);
        let points: Vec<QVector> = (0..count)
            .map(|_| QVector::from_ints(space, &random_lattice_point(rng, dim, bound)))
            .collect();
        let Ok(poly) = Polyhedron::from_vrep(space, dim, points, vec![]) else {
            continue;
        };
        if poly.affine_dim() != dim {
            continue;
        }
        return poly;
    }
}

/// A random unbounded member of the dual class: the polar of a random
/// polytope containing the origin on its boundary comes with rays.
pub fn random_dual_class_member(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Polyhedron {
    let q = random_polytope_with_origin(rng, Space::M, dim, bound);
    polymut::polyhedron::polar_dual(&q).expect("polytopes with the origin dualize")
}

/// Integer vectors spanning the hyperplane orthogonal to `w`; one vector in
/// dimension two, two independent ones in dimension three.
pub fn orthogonal_directions(w: &[i64]) -> Vec<Vec<i64>> {
    match w.len() {
        2 => vec![vec![-w[1], w[0]]],
        3 => {
            let candidates = [
                vec![0, -w[2], w[1]],
                vec![-w[2], 0, w[0]],
                vec![-w[1], w[0], 0],
            ];
            let nonzero: Vec<Vec<i64>> = candidates
                .into_iter()
                .filter(|v| v.iter().any(|&c| c != 0))
                .collect();
            for a in &nonzero {
                for b in &nonzero {
                    let cross = [
                        a[1] * b[2] - a[2] * b[1],
                        a[2] * b[0] - a[0] * b[2],
                        a[0] * b[1] - a[1] * b[0],
                    ];
                    if cross.iter().any(|&c| c != 0) {
                        return vec![a.clone(), b.clone()];
                    }
                }
            }
            unreachable!("a nonzero w in three dimensions has a planar kernel")
        }
        d => panic!("unsupported dimension {d}"),
    }
}

/// A random factor in the given dimension: primitive width vector and a
/// factor polytope with one to three lattice vertices in its kernel.
pub fn random_factor(rng: &mut ChaCha8Rng, dim: usize) -> Factor {
    loop {
        let w: Vec<i64> = random_lattice_point(rng, dim, 2);
        if w.iter().all(|&c| c == 0) {
            continue;
        }
        let width = LatticeVector::from_ints(Space::M, &w);
        let width = polymut::vector::make_primitive(&width).unwrap();
        let w_small: Vec<i64> = width
            .coords()
            .iter()
            .map(|c| i64::try_from(c).expect("small coordinates"))
            .collect();
        let dirs = orthogonal_directions(&w_small);
        let vertex_count = rng.gen_range(1..=3);
        let mut vertices = Vec::new();
        for _ in 0..vertex_count {
            let mut v = vec![0i64; dim];
            for dir in &dirs {
                let scale = rng.gen_range(-1..=1i64);
                for (vi, di) in v.iter_mut().zip(dir) {
                    *vi += scale * di;
                }
            }
            vertices.push(v);
        }
        if let Ok(factor) = Factor::from_vertices(width, &vertices) {
            return factor;
        }
    }
}

/// Lattice points of the `m`-th dilation of a polytope, by box enumeration.
pub fn dilation_lattice_points(poly: &Polyhedron, m: i64) -> Vec<Vec<BigInt>> {
    use num::ToPrimitive;
    let dim = poly.dim();
    let mut lower = vec![i64::MAX; dim];
    let mut upper = vec![i64::MIN; dim];
    for v in poly.vertices() {
        for (i, c) in v.coords().iter().enumerate() {
            let scaled = c * polymut::rational::int(m);
            lower[i] = lower[i].min(scaled.ceil().to_integer().to_i64().unwrap());
            upper[i] = upper[i].max(scaled.floor().to_integer().to_i64().unwrap());
        }
    }
    let mut out = Vec::new();
    let mut point = lower.clone();
    'outer: loop {
        let q = QVector::new(
            poly.space(),
            point
                .iter()
                .map(|&x| polymut::rational::rat(x, m))
                .collect(),
        );
        if poly.contains(&q).unwrap() {
            out.push(point.iter().map(|&x| BigInt::from(x)).collect());
        }
        let mut i = 0;
        loop {
            point[i] += 1;
            if point[i] <= upper[i] {
                break;
            }
            point[i] = lower[i];
            i += 1;
            if i == dim {
                break 'outer;
            }
        }
    }
    out
}
