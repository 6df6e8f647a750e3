//! Finite posets, their order and chain polytopes, the transfer map, and the
//! pipeline connecting the two polytopes by tropical mutations.
//!
//! Both polytopes live in `M_R = R^Π` with coordinates in the poset's
//! element-list order. The order polytope is cut out by the cover relations
//! and the unit box; its vertices are the indicator vectors of the upward
//! closed subsets (filters). The chain polytope is cut out by the maximal
//! chains and nonnegativity; its vertices are the indicator vectors of the
//! antichains. The transfer map `x_p ↦ min{x_p - x_p' : p' covered by p}`
//! (with `x_p` unchanged at minimal elements) is a piecewise-linear bijection
//! between them, and [`verify_theorem`] certifies, step by step, that it
//! factors into the tropical mutations produced by [`mutation_sequence`].

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::mutation::Factor;
use crate::polyhedron::{HalfSpace, Polyhedron};
use crate::rational::Rational;
use crate::tropical::{phi_point, phi_polytope};
use crate::vector::{LatticeVector, QVector, Space};
use crate::Error;

/// A finite poset given by its irredundant cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    /// (lower, upper) index pairs: `upper` covers `lower`.
    covers: Vec<(usize, usize)>,
    /// Full strict order: `less[i][j]` iff element `i` is below element `j`.
    less: Vec<Vec<bool>>,
}

impl Poset {
    /// Validates labels, acyclicity, and that every cover pair is a true
    /// cover (no transitive edges).
    pub fn new(elements: Vec<String>, cover_labels: &[(String, String)]) -> Result<Self, Error> {
        let n = elements.len();
        let mut seen = BTreeSet::new();
        for label in &elements {
            if !seen.insert(label.clone()) {
                return Err(Error::InvalidPoset(format!("duplicate element {label:?}")));
            }
        }
        let index = |label: &str| {
            elements
                .iter()
                .position(|e| e == label)
                .ok_or_else(|| Error::InvalidPoset(format!("unknown element {label:?}")))
        };
        let mut covers = Vec::with_capacity(cover_labels.len());
        for (low, high) in cover_labels {
            let (i, j) = (index(low)?, index(high)?);
            if i == j {
                return Err(Error::InvalidPoset(format!("self-cover on {low:?}")));
            }
            covers.push((i, j));
        }
        covers.sort();
        covers.dedup();

        // transitive closure by repeated squaring of the adjacency relation
        let mut less = vec![vec![false; n]; n];
        for &(i, j) in &covers {
            less[i][j] = true;
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if !less[i][j] {
                        continue;
                    }
                    for k in 0..n {
                        if less[j][k] && !less[i][k] {
                            less[i][k] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for (i, row) in less.iter().enumerate() {
            if row[i] {
                return Err(Error::InvalidPoset("cover relation has a cycle".into()));
            }
        }
        for &(i, j) in &covers {
            if (0..n).any(|k| less[i][k] && less[k][j]) {
                return Err(Error::InvalidPoset(format!(
                    "({}, {}) is a transitive edge, not a cover",
                    elements[i], elements[j]
                )));
            }
        }
        Ok(Poset {
            elements,
            covers,
            less,
        })
    }

    /// Convenience constructor over string literals.
    pub fn from_labels(elements: &[&str], covers: &[(&str, &str)]) -> Result<Self, Error> {
        Poset::new(
            elements.iter().map(|s| s.to_string()).collect(),
            &covers
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element labels; their order fixes the coordinate order of `R^Π`.
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// Cover pairs as (lower, upper) indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_less(&self, lower: usize, upper: usize) -> bool {
        self.less[lower][upper]
    }

    /// Indices covered by `p` (its lower covers).
    pub fn lower_covers(&self, p: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(_, j)| j == p)
            .map(|&(i, _)| i)
            .collect()
    }

    pub fn is_minimal(&self, p: usize) -> bool {
        (0..self.len()).all(|i| !self.less[i][p])
    }

    /// All upward closed subsets, the empty set and the whole set included,
    /// as sorted index lists in bitmask order.
    pub fn filters(&self) -> Vec<Vec<usize>> {
        self.subsets_where(|members| self.covers.iter().all(|&(i, j)| !members[i] || members[j]))
    }

    /// All antichains, the empty set included, as sorted index lists.
    pub fn antichains(&self) -> Vec<Vec<usize>> {
        self.subsets_where(|members| {
            (0..self.len())
                .all(|i| (0..self.len()).all(|j| !members[i] || !members[j] || !self.less[i][j]))
        })
    }

    fn subsets_where(&self, keep: impl Fn(&[bool]) -> bool) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let members: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
            if keep(&members) {
                out.push((0..n).filter(|&i| members[i]).collect());
            }
        }
        out
    }

    /// The 0/1 point of `M_R` indicating a subset of the elements.
    pub fn indicator(&self, subset: &[usize]) -> QVector {
        let mut coords = vec![Rational::zero(); self.len()];
        for &i in subset {
            coords[i] = Rational::one();
        }
        QVector::new(Space::M, coords)
    }
}

fn unit_normal(n: usize, i: usize, sign: i64) -> LatticeVector {
    let mut coords = vec![0i64; n];
    coords[i] = sign;
    LatticeVector::from_ints(Space::N, &coords)
}

/// The order polytope `{x ∈ [0,1]^Π : x_p ≤ x_q whenever p ≺ q}` in `M_R`.
pub fn order_polytope(poset: &Poset) -> Result<Polyhedron, Error> {
    let n = poset.len();
    if n == 0 {
        return Err(Error::InvalidPoset("the poset is empty".into()));
    }
    let mut halfspaces = Vec::new();
    for &(i, j) in poset.covers() {
        let mut coords = vec![0i64; n];
        coords[j] = 1;
        coords[i] = -1;
        halfspaces.push(HalfSpace::new(
            LatticeVector::from_ints(Space::N, &coords),
            Rational::zero(),
        )?);
    }
    for i in 0..n {
        halfspaces.push(HalfSpace::new(unit_normal(n, i, 1), Rational::zero())?);
        halfspaces.push(HalfSpace::new(unit_normal(n, i, -1), -Rational::one())?);
    }
    Polyhedron::from_hrep(Space::M, n, halfspaces)
}

/// All maximal chains, as index paths along the cover digraph.
fn maximal_chains(poset: &Poset) -> Vec<Vec<usize>> {
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..poset.len())
        .filter(|&p| poset.is_minimal(p))
        .map(|p| vec![p])
        .collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        let ups: Vec<usize> = poset
            .covers()
            .iter()
            .filter(|&&(i, _)| i == last)
            .map(|&(_, j)| j)
            .collect();
        if ups.is_empty() {
            chains.push(chain);
            continue;
        }
        for up in ups {
            let mut longer = chain.clone();
            longer.push(up);
            stack.push(longer);
        }
    }
    chains.sort();
    chains
}

/// The chain polytope `{x ≥ 0 : sums along chains ≤ 1}` in `M_R`. Only
/// maximal chains are materialized; sub-chain inequalities are dominated.
pub fn chain_polytope(poset: &Poset) -> Result<Polyhedron, Error> {
    let n = poset.len();
    if n == 0 {
        return Err(Error::InvalidPoset("the poset is empty".into()));
    }
    let mut halfspaces = Vec::new();
    for chain in maximal_chains(poset) {
        let mut coords = vec![0i64; n];
        for i in chain {
            coords[i] = -1;
        }
        halfspaces.push(HalfSpace::new(
            LatticeVector::from_ints(Space::N, &coords),
            -Rational::one(),
        )?);
    }
    for i in 0..n {
        halfspaces.push(HalfSpace::new(unit_normal(n, i, 1), Rational::zero())?);
    }
    Polyhedron::from_hrep(Space::M, n, halfspaces)
}

/// Checks membership in the order polytope directly from the relations.
fn in_order_polytope(poset: &Poset, x: &QVector) -> bool {
    let coords = x.coords();
    coords
        .iter()
        .all(|c| !c.is_negative() && *c <= Rational::one())
        && poset.covers().iter().all(|&(i, j)| coords[i] <= coords[j])
}

/// Stanley's transfer map on a point of the order polytope: each coordinate
/// becomes `min{x_p - x_p' : p' covered by p}`, and stays `x_p` at minimal
/// elements, where the minimum would be empty.
pub fn transfer_point(poset: &Poset, x: &QVector) -> Result<QVector, Error> {
    if x.space() != Space::M {
        return Err(Error::SpaceMismatch {
            expected: Space::M,
            found: x.space(),
        });
    }
    if x.dim() != poset.len() {
        return Err(Error::DimensionMismatch(x.dim(), poset.len()));
    }
    if !in_order_polytope(poset, x) {
        return Err(Error::OutsidePolytope);
    }
    let coords = x.coords();
    let image = (0..poset.len())
        .map(|p| {
            let below = poset.lower_covers(p);
            match below.iter().map(|&q| &coords[q]).max() {
                Some(largest) => &coords[p] - largest,
                None => coords[p].clone(),
            }
        })
        .collect();
    Ok(QVector::new(Space::M, image))
}

/// The factor sequence realizing the transfer map: one factor per
/// non-minimal element `p`, with width `-e_p` and factor polytope
/// `conv{-e_p' : p' covered by p}`, ordered maximal elements first (the
/// reverse of the lexicographic-by-label linear extension). Any order that
/// puts each element before everything below it gives the same composite;
/// fixing this one keeps certificates reproducible.
pub fn mutation_sequence(poset: &Poset) -> Result<Vec<(usize, Factor)>, Error> {
    let n = poset.len();
    // Kahn's algorithm with lexicographic-by-label tie break
    let mut placed = vec![false; n];
    let mut extension = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&p| !placed[p])
            .filter(|&p| (0..n).all(|q| placed[q] || !poset.is_less(q, p)))
            .min_by(|&a, &b| poset.elements()[a].cmp(&poset.elements()[b]))
            .expect("acyclic posets always have an available element");
        placed[next] = true;
        extension.push(next);
    }
    extension.reverse();

    let mut sequence = Vec::new();
    for p in extension {
        let below = poset.lower_covers(p);
        if below.is_empty() {
            continue;
        }
        let mut width = vec![0i64; n];
        width[p] = -1;
        let vertices: Vec<Vec<i64>> = below
            .iter()
            .map(|&q| {
                let mut v = vec![0i64; n];
                v[q] = -1;
                v
            })
            .collect();
        let factor = Factor::from_vertices(LatticeVector::from_ints(Space::M, &width), &vertices)?;
        sequence.push((p, factor));
    }
    Ok(sequence)
}

/// Per-step record of the verification pipeline.
#[derive(Debug, Clone)]
pub struct TheoremStep {
    /// The non-minimal element this step's factor belongs to.
    pub element: String,
    pub factor: Factor,
    /// Exact convexity verdict of the step's image.
    pub convex: bool,
    /// All vertex images are 0/1 vectors.
    pub vertex_images_are_01: bool,
    /// The step changes nothing but its own coordinate, which becomes the
    /// minimum of the differences over the covered elements.
    pub acts_as_single_coordinate_min: bool,
    /// Convex hull of the image, the next step's input.
    pub image: Polyhedron,
}

/// Full verification record for one poset.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub poset: Poset,
    pub order_polytope: Polyhedron,
    pub chain_polytope: Polyhedron,
    pub steps: Vec<TheoremStep>,
    /// The final image equals the chain polytope.
    pub final_equals_chain: bool,
    /// The composite of the steps agrees with the transfer map on every
    /// vertex of the order polytope.
    pub composite_matches_transfer: bool,
    pub passed: bool,
    /// Index of the first failing step, when a step check failed.
    pub failing_step: Option<usize>,
    /// Human-readable description of the first failure.
    pub witness: Option<String>,
}

/// Runs the whole pipeline: applies the factor sequence to the order
/// polytope, checking at every step that the image is convex with 0/1 vertex
/// images and single-coordinate action, and finally that the result is the
/// chain polytope and the composite equals the transfer map on vertices.
pub fn verify_theorem(poset: &Poset) -> Result<TheoremReport, Error> {
    let order = order_polytope(poset)?;
    let chain = chain_polytope(poset)?;
    let sequence = mutation_sequence(poset)?;

    let mut steps = Vec::with_capacity(sequence.len());
    let mut failing_step = None;
    let mut witness = None;
    let mut current = order.clone();
    for (k, (element, factor)) in sequence.iter().enumerate() {
        let image = phi_polytope(factor, &current)?;
        let mut images_01 = true;
        let mut single_coordinate = true;
        for u in current.vertices() {
            let img = phi_point(factor, u)?;
            if !img.coords().iter().all(|c| c.is_zero() || c.is_one()) {
                images_01 = false;
            }
            if !single_step_formula_holds(poset, *element, u, &img) {
                single_coordinate = false;
            }
        }
        let step = TheoremStep {
            element: poset.elements()[*element].clone(),
            factor: factor.clone(),
            convex: image.convex,
            vertex_images_are_01: images_01,
            acts_as_single_coordinate_min: single_coordinate,
            image: image.hull.clone(),
        };
        let ok = step.convex && step.vertex_images_are_01 && step.acts_as_single_coordinate_min;
        if !ok && failing_step.is_none() {
            failing_step = Some(k);
            witness = Some(format!(
                "step {} (element {}): convex={}, zero_one_vertices={}, single_coordinate={}",
                k,
                step.element,
                step.convex,
                step.vertex_images_are_01,
                step.acts_as_single_coordinate_min,
            ));
        }
        let next = image.hull.clone();
        steps.push(step);
        if failing_step.is_some() {
            break;
        }
        current = next;
    }

    let final_equals_chain = failing_step.is_none() && current == chain;
    let mut composite_matches_transfer = failing_step.is_none();
    if composite_matches_transfer {
        for v in order.vertices() {
            let mut moved = v.clone();
            for (_, factor) in &sequence {
                moved = phi_point(factor, &moved)?;
            }
            if moved != transfer_point(poset, v)? {
                composite_matches_transfer = false;
                witness = Some(format!("composite differs from the transfer map at {v:?}"));
                break;
            }
        }
    }
    if failing_step.is_none() && !final_equals_chain && witness.is_none() {
        witness = Some("final image is not the chain polytope".into());
    }

    let passed = failing_step.is_none() && final_equals_chain && composite_matches_transfer;
    Ok(TheoremReport {
        poset: poset.clone(),
        order_polytope: order,
        chain_polytope: chain,
        steps,
        final_equals_chain,
        composite_matches_transfer,
        passed,
        failing_step,
        witness,
    })
}

/// The single-step formula: coordinate `q` becomes
/// `min{x_q - x_p' : p' covered by q}` and every other coordinate is fixed.
fn single_step_formula_holds(poset: &Poset, q: usize, input: &QVector, image: &QVector) -> bool {
    let x = input.coords();
    let y = image.coords();
    for p in 0..poset.len() {
        if p != q && x[p] != y[p] {
            return false;
        }
    }
    let expected = poset
        .lower_covers(q)
        .iter()
        .map(|&p| &x[q] - &x[p])
        .min()
        .expect("only non-minimal elements get factors");
    y[q] == expected
}

/// All posets on `n` labeled elements up to isomorphism, deterministically
/// ordered, with elements named `p1, p2, …` in a linear extension order.
///
/// Strict upper-triangular transitive relations enumerate every isomorphism
/// class at least once (order the elements along a linear extension), and a
/// canonical form over all relabelings removes duplicates. Practical up to
/// n = 6 or so.
pub fn enumerate_posets(n: usize) -> Vec<Poset> {
    assert!(n <= 8, "poset enumeration is exponential; n ≤ 8");
    if n == 0 {
        return vec![Poset::new(vec![], &[]).unwrap()];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut canonical_keys = BTreeSet::new();
    'masks: for mask in 0u32..(1 << pairs.len()) {
        let mut less = vec![vec![false; n]; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << b) != 0 {
                less[i][j] = true;
            }
        }
        // transitivity: i < j < k numerically, so one pass suffices
        for i in 0..n {
            for j in i + 1..n {
                if !less[i][j] {
                    continue;
                }
                for k in j + 1..n {
                    if less[j][k] && !less[i][k] {
                        continue 'masks;
                    }
                }
            }
        }
        canonical_keys.insert(canonical_key(&less, n));
    }
    canonical_keys
        .into_iter()
        .map(|key| poset_from_matrix_key(key, n))
        .collect()
}

/// Minimum over all relabelings of the relation matrix packed into bits.
fn canonical_key(less: &[Vec<bool>], n: usize) -> u64 {
    let mut best = u64::MAX;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |perm| {
        let mut bits = 0u64;
        for i in 0..n {
            for j in 0..n {
                if less[perm[i]][perm[j]] {
                    bits |= 1 << (i * n + j);
                }
            }
        }
        if bits < best {
            best = bits;
        }
    });
    best
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn poset_from_matrix_key(key: u64, n: usize) -> Poset {
    let less = |i: usize, j: usize| key & (1 << (i * n + j)) != 0;
    let elements: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if less(i, j) && !(0..n).any(|k| less(i, k) && less(k, j)) {
                covers.push((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    Poset::new(elements, &covers).expect("canonical matrices are valid posets")
}
