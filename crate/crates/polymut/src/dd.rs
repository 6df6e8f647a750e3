//! Exact incremental double description.
//!
//! [`extreme_rays`] computes the minimal generators of a cone
//! `{x ∈ Q^dim : row · x ≥ 0 for every row}`: its extreme rays modulo the
//! lineality space, plus a canonical basis of that lineality space. Both
//! representation conversions and the polar dual are built on this single
//! routine, working on homogenized coordinates.
//!
//! The implementation is the classic one: keep the extreme rays of the cone
//! cut out by the rows processed so far, and for each new row combine
//! adjacent rays across the hyperplane. Adjacency is decided combinatorially
//! from the sets of rows tight at each ray. While the intersection of the
//! processed rows' kernels is nontrivial it is carried separately as the
//! lineality space; cutting it down turns one basis vector into a ray.
//! Target dimensions are small, so no insertion-order heuristics are needed.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::linalg::canonical_subspace_basis;
use crate::vector::{dot_int, primitive_part};

/// Minimal generators of a cone: extreme rays modulo the lineality space.
#[derive(Debug, Clone)]
pub struct Generators {
    /// Primitive integer extreme rays.
    pub rays: Vec<Vec<BigInt>>,
    /// Canonical primitive basis of the lineality space; empty iff pointed.
    pub lineality: Vec<Vec<BigInt>>,
}

/// Set of constraint indices tight at a ray.
#[derive(Debug, Clone)]
struct TightSet {
    words: Vec<u64>,
}

impl TightSet {
    fn new(capacity: usize) -> Self {
        TightSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    fn full_up_to(capacity: usize, count: usize) -> Self {
        let mut set = TightSet::new(capacity);
        for i in 0..count {
            set.insert(i);
        }
        set
    }

    fn insert(&mut self, index: usize) {
        self.words[index / 64] |= 1 << (index % 64);
    }

    fn intersection(&self, other: &TightSet) -> TightSet {
        TightSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_subset_of(&self, other: &TightSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

#[derive(Debug, Clone)]
struct Ray {
    v: Vec<BigInt>,
    tight: TightSet,
}

/// Extreme rays and lineality of `{x : row · x ≥ 0 for all rows}` in `Q^dim`.
pub fn extreme_rays(dim: usize, rows: &[Vec<BigInt>]) -> Generators {
    let capacity = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), dim);

        // While the row is nonzero on the lineality space, trade one basis
        // vector for a ray and project the rest onto the row's kernel.
        if let Some(idx) = lineality.iter().position(|l| !dot_int(l, row).is_zero()) {
            let mut pivot = lineality.remove(idx);
            let mut pivot_val = dot_int(&pivot, row);
            if pivot_val.is_negative() {
                pivot = pivot.iter().map(|c| -c).collect();
                pivot_val = -pivot_val;
            }
            for l in lineality.iter_mut() {
                let val = dot_int(l, row);
                if !val.is_zero() {
                    *l = primitive_part(&linear_combination(l, &pivot_val, &pivot, &-val));
                }
            }
            for ray in rays.iter_mut() {
                let val = dot_int(&ray.v, row);
                if !val.is_zero() {
                    ray.v = primitive_part(&linear_combination(&ray.v, &pivot_val, &pivot, &-val));
                }
                // Every projected ray lies on the new hyperplane; the old
                // tight sets are unaffected because the previous rows all
                // vanish on the lineality space.
                ray.tight.insert(k);
            }
            rays.push(Ray {
                v: primitive_part(&pivot),
                tight: TightSet::full_up_to(capacity, k),
            });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(&r.v, row)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (ray, value) in rays.iter_mut().zip(&values) {
                if value.is_zero() {
                    ray.tight.insert(k);
                }
            }
            continue;
        }

        let mut new_rays: Vec<Ray> = Vec::new();
        for (i, ri) in rays.iter().enumerate() {
            if !values[i].is_positive() {
                continue;
            }
            for (j, rj) in rays.iter().enumerate() {
                if !values[j].is_negative() {
                    continue;
                }
                let common = ri.tight.intersection(&rj.tight);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(l, rl)| l == i || l == j || !common.is_subset_of(&rl.tight));
                if adjacent {
                    let mut tight = common;
                    tight.insert(k);
                    new_rays.push(Ray {
                        v: primitive_part(&linear_combination(
                            &rj.v,
                            &values[i],
                            &ri.v,
                            &-&values[j],
                        )),
                        tight,
                    });
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (mut ray, value) in rays.into_iter().zip(values) {
            if value.is_zero() {
                ray.tight.insert(k);
                kept.push(ray);
            } else if value.is_positive() {
                kept.push(ray);
            }
        }
        kept.extend(new_rays);
        rays = kept;
    }

    Generators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality: canonical_subspace_basis(&lineality),
    }
}

/// `scale_a * a + scale_b * b` componentwise.
fn linear_combination(
    a: &[BigInt],
    scale_a: &BigInt,
    b: &[BigInt],
    scale_b: &BigInt,
) -> Vec<BigInt> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * scale_a + y * scale_b)
        .collect()
}
