//! Exact lattice-point counts in integer dilations of polytopes.
//!
//! Counting enumerates the integer bounding box of the dilation and tests
//! each point against the scaled half-space list. Target sizes are tiny
//! (dimension at most six or so, dilations up to four), so this is both
//! trivially correct and fast enough; no generating-function machinery is
//! attempted. The half-space tests run in fixed-width integers when the data
//! fits comfortably, with an exact big-integer fallback.

use num::bigint::BigInt;
use num::{ToPrimitive, Zero};

use crate::polyhedron::Polyhedron;
use crate::rational::{ceil_int, floor_int, Rational};
use crate::Error;

/// Exact lattice-point counts of the dilations `1..=max` of one polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    /// Identifier of the counted polytope, echoed into reports.
    pub label: String,
    /// `(m, #(mQ ∩ Z^d))` for consecutive dilations starting at 1.
    pub counts: Vec<(u32, u64)>,
}

/// Number of lattice points in the `m`-th dilation of a polytope.
pub fn count_lattice_points(polytope: &Polyhedron, m: u32) -> Result<u64, Error> {
    if polytope.is_whole_space() || !polytope.is_bounded() {
        return Err(Error::Unbounded);
    }
    if m == 0 {
        return Err(Error::Parse("dilation must be positive".into()));
    }
    let dim = polytope.dim();
    let m_int = BigInt::from(m);

    // integer bounding box of mQ
    let mut lower = vec![BigInt::zero(); dim];
    let mut upper = vec![BigInt::zero(); dim];
    for i in 0..dim {
        let coords = polytope.vertices().iter().map(|v| &v.coords()[i]);
        let min = coords.clone().min().unwrap() * Rational::from_integer(m_int.clone());
        let max = coords.max().unwrap() * Rational::from_integer(m_int.clone());
        lower[i] = ceil_int(&min);
        upper[i] = floor_int(&max);
        if lower[i] > upper[i] {
            return Ok(0);
        }
    }

    // mQ is {x : r·⟨a,x⟩ ≥ m·p} for each half-space ⟨a,x⟩ ≥ p/r of Q
    let constraints: Vec<(Vec<BigInt>, BigInt, BigInt)> = polytope
        .hrep()
        .iter()
        .map(|hs| {
            (
                hs.normal().coords().to_vec(),
                hs.rhs().denom().clone(),
                &m_int * hs.rhs().numer(),
            )
        })
        .collect();

    if let Some(count) = count_fixed_width(&lower, &upper, &constraints) {
        return Ok(count);
    }
    Ok(count_big(&lower, &upper, &constraints))
}

/// Fixed-width fast path; declines when any magnitude could get close to
/// overflowing an i128 dot product.
fn count_fixed_width(
    lower: &[BigInt],
    upper: &[BigInt],
    constraints: &[(Vec<BigInt>, BigInt, BigInt)],
) -> Option<u64> {
    const LIMIT: i128 = 1 << 40;
    let small = |v: &BigInt| -> Option<i128> {
        let x = v.to_i128()?;
        (x.abs() < LIMIT).then_some(x)
    };
    let lo: Vec<i128> = lower.iter().map(small).collect::<Option<_>>()?;
    let hi: Vec<i128> = upper.iter().map(small).collect::<Option<_>>()?;
    let rows: Vec<(Vec<i128>, i128, i128)> = constraints
        .iter()
        .map(|(a, r, t)| {
            Some((
                a.iter().map(small).collect::<Option<Vec<_>>>()?,
                small(r)?,
                small(t)?,
            ))
        })
        .collect::<Option<_>>()?;
    if lower.len() > 16 {
        return None;
    }

    let mut count = 0u64;
    let mut point = lo.clone();
    if point.is_empty() {
        return Some(1);
    }
    loop {
        let inside = rows.iter().all(|(a, r, t)| {
            let dot: i128 = a.iter().zip(&point).map(|(c, x)| c * x).sum();
            r * dot >= *t
        });
        if inside {
            count += 1;
        }
        // odometer increment
        let mut i = 0;
        loop {
            point[i] += 1;
            if point[i] <= hi[i] {
                break;
            }
            point[i] = lo[i];
            i += 1;
            if i == point.len() {
                return Some(count);
            }
        }
    }
}

fn count_big(
    lower: &[BigInt],
    upper: &[BigInt],
    constraints: &[(Vec<BigInt>, BigInt, BigInt)],
) -> u64 {
    let mut count = 0u64;
    let mut point = lower.to_vec();
    if point.is_empty() {
        return 1;
    }
    loop {
        let inside = constraints.iter().all(|(a, r, t)| {
            let dot: BigInt = a.iter().zip(&point).map(|(c, x)| c * x).sum();
            r * dot >= *t
        });
        if inside {
            count += 1;
        }
        let mut i = 0;
        loop {
            point[i] += 1;
            if point[i] <= upper[i] {
                break;
            }
            point[i] = lower[i].clone();
            i += 1;
            if i == point.len() {
                return count;
            }
        }
    }
}

/// Counts for every dilation `1..=max`.
pub fn count_series(
    label: impl Into<String>,
    polytope: &Polyhedron,
    max: u32,
) -> Result<CountSeries, Error> {
    let mut counts = Vec::with_capacity(max as usize);
    for m in 1..=max {
        counts.push((m, count_lattice_points(polytope, m)?));
    }
    Ok(CountSeries {
        label: label.into(),
        counts,
    })
}
