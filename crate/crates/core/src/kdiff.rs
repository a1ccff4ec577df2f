//! The Kähler different of a point configuration: minors of the Jacobian
//! of the vanishing ideal's minimal generators, its per-bidegree Hilbert
//! function, minimal generator degrees, and the stabilization pair and
//! border of its Hilbert function.

use std::collections::BTreeMap;

use num::One;
use thiserror::Error;

use crate::bipoly::{self, Bidegree, BiPoly, Var};
use crate::exactlin::RowSpace;
use crate::hilbert::{monomial_eval_columns, HFTable};
use crate::idealgen::{self, component_span, SpanSet};
use crate::pointset::{choose_regular_forms, Point, PointSet};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KDiffError {
    #[error("the Kähler different is only defined for arithmetically Cohen-Macaulay configurations")]
    NotAcm,
    #[error("need at least {need} generators to form the Jacobian minors, found {found}")]
    TooFewGenerators { need: usize, found: usize },
}

/// The Kähler different with its Hilbert function data. All internal
/// computations happen in coordinates where x_0 and y_0 vanish at no point
/// (the Hilbert function is invariant under that change).
#[derive(Clone, Debug)]
pub struct KDiff {
    /// The nonzero Jacobian minors as a span inside the coordinate ring.
    pub minors: SpanSet,
    /// The minimal generators of the vanishing ideal the Jacobian was
    /// built from (in the regularized coordinates).
    pub source_gens: SpanSet,
    /// Hilbert function grid on the guaranteed-stabilization box, with the
    /// stabilization pair (ν, ϱ) as its `reg_pair` and the border along it.
    pub hf_table: HFTable,
    /// Degrees of a minimal generating set, with multiplicity, sorted.
    pub min_gen_degrees: Vec<Bidegree>,
}

/// All (m+n)-minors of the Jacobian of the generators with respect to
/// x_1..x_m, y_1..y_n (the forms x_0, y_0 are excluded: they play the role
/// of the regular pair). Zero minors are dropped; the order follows the
/// lexicographic choice of generator rows.
pub fn jacobian_minors(
    gens: &SpanSet,
    m: usize,
    n: usize,
) -> Result<Vec<(BiPoly, Bidegree)>, KDiffError> {
    let r = gens.generators.len();
    let k = m + n;
    if r < k {
        return Err(KDiffError::TooFewGenerators { need: k, found: r });
    }
    let mut vars = Vec::with_capacity(k);
    for i in 1..=m {
        vars.push(Var::X(i));
    }
    for j in 1..=n {
        vars.push(Var::Y(j));
    }
    let jac: Vec<Vec<BiPoly>> = gens
        .generators
        .iter()
        .map(|(g, _)| vars.iter().map(|&v| g.diff(v)).collect())
        .collect();

    let mut minors = Vec::new();
    let mut choice: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<Vec<BiPoly>> = choice.iter().map(|&i| jac[i].clone()).collect();
        let det = bipoly::poly_det(&rows, m, n);
        if !det.is_zero() {
            let d = det
                .bidegree()
                .expect("a minor of bihomogeneous partials is bihomogeneous");
            minors.push((det, d));
        }
        // Next k-combination of 0..r in lexicographic order.
        let mut pos = k;
        while pos > 0 && choice[pos - 1] == r - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        choice[pos - 1] += 1;
        for t in pos..k {
            choice[t] = choice[t - 1] + 1;
        }
    }
    Ok(minors)
}

/// Memoizing view of HF_ϑ, capped at the point count.
struct ThetaHF<'a> {
    minors: &'a SpanSet,
    s: usize,
    cache: BTreeMap<(usize, usize), usize>,
}

impl<'a> ThetaHF<'a> {
    fn new(minors: &'a SpanSet) -> Self {
        ThetaHF {
            s: minors.points.len(),
            minors,
            cache: BTreeMap::new(),
        }
    }

    fn get(&mut self, i: usize, j: usize) -> usize {
        if let Some(&v) = self.cache.get(&(i, j)) {
            return v;
        }
        let v = component_span(self.minors, Bidegree::new(i, j), Some(self.s)).rank();
        self.cache.insert((i, j), v);
        v
    }
}

/// Evaluation-vector basis of the degree-d component as a row space.
fn theta_component(minors: &SpanSet, d: Bidegree) -> RowSpace {
    component_span(minors, d, Some(minors.points.len()))
}

/// Degrees (with multiplicity) of a minimal generating set of the ideal
/// spanned by the minors, found by span growth: at degree d the new
/// generators are counted by dim ϑ_d minus the dimension of
/// S_{1,0}·ϑ_{d-(1,0)} + S_{0,1}·ϑ_{d-(0,1)}. Every minimal generator
/// degree occurs among the minors' own degrees, so only those are checked.
fn minimal_generator_degrees(minors: &SpanSet) -> Vec<Bidegree> {
    let s = minors.points.len();
    let mut candidates: Vec<Bidegree> = minors.generators.iter().map(|(_, d)| *d).collect();
    candidates.sort_by_key(|d| (d.graded_lex_key(), d.j));
    candidates.dedup();
    let mut out = Vec::new();
    for d in candidates {
        let full = theta_component(minors, d).rank();
        let mut step = RowSpace::new(s);
        let feed = |lower: Bidegree, unit: Bidegree, step: &mut RowSpace| {
            let basis = theta_component(minors, lower);
            let unit_cols = monomial_eval_columns(&minors.points, minors.m, minors.n, unit);
            for row in basis.basis_rows() {
                for col in &unit_cols {
                    let prod: Vec<Rat> = row.iter().zip(col).map(|(a, b)| a * b).collect();
                    step.insert(prod);
                }
            }
        };
        if d.i > 0 {
            feed(Bidegree::new(d.i - 1, d.j), Bidegree::new(1, 0), &mut step);
        }
        if d.j > 0 {
            feed(Bidegree::new(d.i, d.j - 1), Bidegree::new(0, 1), &mut step);
        }
        for _ in step.rank()..full {
            out.push(d);
        }
    }
    out.sort();
    out
}

/// Builds the Kähler different of an ACM configuration; the caller passes
/// the ACM verdict (the construction needs x_0, y_0 to act regularly).
pub fn hf_kdiff(x: &PointSet, acm: bool) -> Result<KDiff, KDiffError> {
    if !acm {
        return Err(KDiffError::NotAcm);
    }
    let frame = choose_regular_forms(x).transform(x);
    let source_gens = idealgen::vanishing_ideal_min_gens(&frame);
    let raw_minors = jacobian_minors(&source_gens, x.m, x.n)?;
    let minors = SpanSet::ideal_in_rx(
        x.m,
        x.n,
        raw_minors.into_iter().map(|(g, _)| g).collect(),
        frame.points().to_vec(),
    );
    assert!(
        !minors.generators.is_empty(),
        "all Jacobian minors vanished on an ACM configuration"
    );

    let min_gen_degrees = minimal_generator_degrees(&minors);
    let i_min = min_gen_degrees.iter().map(|d| d.i).min().unwrap();
    let i_max = min_gen_degrees.iter().map(|d| d.i).max().unwrap();
    let j_min = min_gen_degrees.iter().map(|d| d.j).min().unwrap();
    let j_max = min_gen_degrees.iter().map(|d| d.j).max().unwrap();

    let mut theta = ThetaHF::new(&minors);

    // Stable value of a column (fixed j): the first equality at or beyond
    // i_max persists, and by monotonicity the first index attaining the
    // stable value is the stabilization index of that column.
    let mut nu = 0usize;
    for k in j_min..=j_max {
        let mut i = i_max;
        let stable = loop {
            let v = theta.get(i, k);
            if v == theta.get(i + 1, k) {
                break v;
            }
            i += 1;
        };
        let nu_k = (0..=i).find(|&t| theta.get(t, k) == stable).unwrap();
        nu = nu.max(nu_k);
    }
    let mut rho = 0usize;
    for l in i_min..=i_max {
        let mut j = j_max;
        let stable = loop {
            let v = theta.get(l, j);
            if v == theta.get(l, j + 1) {
                break v;
            }
            j += 1;
        };
        let rho_l = (0..=j).find(|&t| theta.get(l, t) == stable).unwrap();
        rho = rho.max(rho_l);
    }

    let corner = Bidegree::new(
        (frame.s1() - 1) * (x.m + 2),
        (frame.s2() - 1) * (x.n + 2),
    );
    let values: Vec<Vec<usize>> = (0..=corner.i)
        .map(|i| (0..=corner.j).map(|j| theta.get(i, j)).collect())
        .collect();
    let border_c = (0..=rho).map(|j| theta.get(nu, j)).collect();
    let border_r = (0..=nu).map(|i| theta.get(i, rho)).collect();
    let hf_table = HFTable {
        box_corner: corner,
        values,
        reg_pair: Bidegree::new(nu, rho),
        border_c,
        border_r,
    };

    Ok(KDiff {
        minors,
        source_gens,
        hf_table,
        min_gen_degrees,
    })
}

impl KDiff {
    /// HF_ϑ at an arbitrary bidegree (recomputed if outside the table).
    pub fn hf_at(&self, d: Bidegree) -> usize {
        if d.i <= self.hf_table.box_corner.i && d.j <= self.hf_table.box_corner.j {
            self.hf_table.value(d.i, d.j)
        } else {
            theta_component(&self.minors, d).rank()
        }
    }
}

/// Single-factor Kähler different of points in one projective space:
/// Hilbert function sequence up to its stabilization at the point count
/// (truncated at degree (m+2)(count−1) otherwise) and whether the ideal
/// is principal.
pub fn proj_kdiff(points: &[Vec<Rat>]) -> (Vec<usize>, bool) {
    assert!(!points.is_empty());
    let m = points[0].len() - 1;
    let count = points.len();
    // Regularize so x_0 vanishes nowhere, using the same geometric form
    // search as the bigraded case.
    let as_pointset = PointSet::from_points(
        m,
        0,
        points
            .iter()
            .map(|a| Point::new(a, &[Rat::one()]).unwrap())
            .collect(),
    )
    .expect("distinct points");
    let frame = choose_regular_forms(&as_pointset).transform(&as_pointset);
    let gens = idealgen::vanishing_ideal_min_gens(&frame);
    let raw_minors = jacobian_minors(&gens, m, 0).expect("r >= m generators in one factor");
    let minors = SpanSet::ideal_in_rx(
        m,
        0,
        raw_minors.into_iter().map(|(g, _)| g).collect(),
        frame.points().to_vec(),
    );
    let principal = minimal_generator_degrees(&minors).len() == 1;
    let mut seq = Vec::new();
    let cap = (m + 2) * (count - 1) + 1;
    for d in 0..=cap {
        let v = theta_component(&minors, Bidegree::new(d, 0)).rank();
        seq.push(v);
        if v == count {
            break;
        }
    }
    (seq, principal)
}

/// True iff the degree-d component of the span (inside the coordinate
/// ring of x) contains a separator of p: a function vanishing at every
/// point except p. In evaluation coordinates that is membership of the
/// p-th coordinate vector.
pub fn contains_separator_in(
    j: &SpanSet,
    x: &PointSet,
    p: &Point,
    d: Bidegree,
) -> Result<bool, crate::separators::SeparatorError> {
    if !x.contains(p) {
        return Err(crate::separators::SeparatorError::PointNotInSet);
    }
    let idx = j
        .points
        .iter()
        .position(|q| q == p)
        .ok_or(crate::separators::SeparatorError::PointNotInSet)?;
    let comp = theta_component(j, d);
    let mut e = vec![Rat::from_integer(0.into()); j.points.len()];
    e[idx] = Rat::one();
    Ok(comp.contains(&e))
}
