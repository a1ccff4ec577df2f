//! Minimal bihomogeneous generating sets of vanishing ideals, computed
//! degree by degree: at each bidegree the kernel of the evaluation matrix
//! is compared with the component spanned by the generators found so far,
//! and a basis of the complement is adjoined. A verification pass over an
//! enlarged box certifies completeness and grows the search box if needed.

use crate::bipoly::{self, Bidegree, BiPoly};
use crate::exactlin::{kernel_basis, QMatrix, RowSpace};
use crate::hilbert::{self, monomial_eval_columns};
use crate::pointset::{Point, PointSet};
use crate::Rat;

/// How the elements of a `SpanSet` are interpreted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpanKind {
    /// An ideal of the polynomial ring; components live in monomial
    /// coordinates.
    IdealInS,
    /// An ideal of the coordinate ring of a point set; components are
    /// identified with their evaluation vectors at the points.
    IdealInRx,
}

/// A bigraded ideal presented by a finite list of bihomogeneous elements.
#[derive(Clone, Debug)]
pub struct SpanSet {
    pub m: usize,
    pub n: usize,
    pub kind: SpanKind,
    pub generators: Vec<(BiPoly, Bidegree)>,
    /// Evaluation points, required when `kind` is `IdealInRx`.
    pub points: Vec<Point>,
}

impl SpanSet {
    pub fn ideal_in_s(m: usize, n: usize, gens: Vec<BiPoly>) -> SpanSet {
        let generators = gens
            .into_iter()
            .map(|g| {
                let d = g.bidegree().expect("generators must be bihomogeneous and nonzero");
                (g, d)
            })
            .collect();
        SpanSet {
            m,
            n,
            kind: SpanKind::IdealInS,
            generators,
            points: Vec::new(),
        }
    }

    pub fn ideal_in_rx(m: usize, n: usize, gens: Vec<BiPoly>, points: Vec<Point>) -> SpanSet {
        let generators = gens
            .into_iter()
            .map(|g| {
                let d = g.bidegree().expect("generators must be bihomogeneous and nonzero");
                (g, d)
            })
            .collect();
        SpanSet {
            m,
            n,
            kind: SpanKind::IdealInRx,
            generators,
            points,
        }
    }

    pub fn degrees(&self) -> Vec<Bidegree> {
        self.generators.iter().map(|(_, d)| *d).collect()
    }
}

/// Coefficient vector (over the degree-d monomial basis) of
/// `g · x^shift_x y^shift_y`, without forming the product polynomial.
fn shifted_coeff_vector(
    g: &BiPoly,
    shift: &(Vec<u32>, Vec<u32>),
    d: Bidegree,
    index: &std::collections::BTreeMap<(Vec<u32>, Vec<u32>), usize>,
) -> Vec<Rat> {
    let mut v = vec![Rat::from_integer(0.into()); index.len()];
    for ((xe, ye), c) in g.terms() {
        let mono = (
            xe.iter().zip(&shift.0).map(|(a, b)| a + b).collect::<Vec<_>>(),
            ye.iter().zip(&shift.1).map(|(a, b)| a + b).collect::<Vec<_>>(),
        );
        let k = index.get(&mono).unwrap_or_else(|| panic!("product term outside degree {d}"));
        v[*k] = c.clone();
    }
    v
}

/// The degree-d component of the span as a row space: in monomial
/// coordinates for an ideal of S, in evaluation coordinates for an ideal
/// of the coordinate ring. `cap` optionally stops accumulation early once
/// the rank is known to have peaked (it must be a proven upper bound).
pub fn component_span(j: &SpanSet, d: Bidegree, cap: Option<usize>) -> RowSpace {
    match j.kind {
        SpanKind::IdealInS => {
            let basis = bipoly::monomial_exponents(j.m, j.n, d);
            let index: std::collections::BTreeMap<_, usize> = basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(k, m)| (m, k))
                .collect();
            let mut sp = RowSpace::new(basis.len());
            'outer: for (g, e) in &j.generators {
                let Some(rest) = d.checked_sub(e) else { continue };
                for shift in bipoly::monomial_exponents(j.m, j.n, rest) {
                    sp.insert(shifted_coeff_vector(g, &shift, d, &index));
                    if cap.is_some_and(|c| sp.rank() >= c) {
                        break 'outer;
                    }
                }
            }
            sp
        }
        SpanKind::IdealInRx => {
            let s = j.points.len();
            let mut sp = RowSpace::new(s);
            let limit = cap.unwrap_or(s).min(s);
            'outer: for (g, e) in &j.generators {
                let Some(rest) = d.checked_sub(e) else { continue };
                let gvec = hilbert::eval_vector(&j.points, g);
                for col in monomial_eval_columns(&j.points, j.m, j.n, rest) {
                    let prod: Vec<Rat> = gvec.iter().zip(&col).map(|(a, b)| a * b).collect();
                    sp.insert(prod);
                    if sp.rank() >= limit {
                        break 'outer;
                    }
                }
            }
            sp
        }
    }
}

/// Row basis of the degree-d component of the span.
pub fn component_basis(j: &SpanSet, d: Bidegree) -> QMatrix {
    component_span(j, d, None).into_matrix()
}

fn degrees_in_box(corner: Bidegree) -> Vec<Bidegree> {
    let mut ds = Vec::new();
    for i in 0..=corner.i {
        for j in 0..=corner.j {
            ds.push(Bidegree::new(i, j));
        }
    }
    ds.sort_by_key(|d| (d.graded_lex_key(), d.j));
    ds
}

/// Minimal bihomogeneous generators of the vanishing ideal of X.
///
/// The degree loop runs over a box that starts at (s_1, s_2); afterwards
/// the generated components are checked against the Hilbert function on a
/// box enlarged by one in each direction, and on any mismatch the search
/// box grows to cover the failing degree and the procedure restarts
/// (the ideal is finitely generated, so this terminates).
pub fn vanishing_ideal_min_gens(x: &PointSet) -> SpanSet {
    let (m, n) = (x.m, x.n);
    let mut corner = Bidegree::new(x.s1(), x.s2());
    for _attempt in 0..64 {
        let mut gens = SpanSet::ideal_in_s(m, n, Vec::new());
        for d in degrees_in_box(corner) {
            let nd = bipoly::monomial_exponents(m, n, d).len();
            let target = nd - hilbert::hf(x, d);
            let mut sp = component_span(&gens, d, Some(target));
            if sp.rank() == target {
                continue;
            }
            let kernel = kernel_basis(&hilbert::evaluation_matrix(x, d, false));
            for v in kernel {
                if sp.insert(v.clone()) {
                    gens.generators
                        .push((BiPoly::from_coeff_vector(m, n, d, &v), d));
                }
            }
            assert_eq!(sp.rank(), target, "kernel dimension mismatch at {d}");
        }
        // Completeness check on the enlarged box.
        let check = Bidegree::new(corner.i + 1, corner.j + 1);
        let failing = degrees_in_box(check).into_iter().find(|&d| {
            let nd = bipoly::monomial_exponents(m, n, d).len();
            let target = nd - hilbert::hf(x, d);
            component_span(&gens, d, Some(target)).rank() != target
        });
        match failing {
            None => return gens,
            Some(d) => {
                corner = Bidegree::new(corner.i.max(d.i), corner.j.max(d.j));
            }
        }
    }
    panic!("generator search failed to stabilize; this is a bug");
}

/// Minimal homogeneous generators of the vanishing ideal of a finite set
/// of points in a single projective space. The points are given by
/// coordinate vectors; the result uses the n = 0 representation (X-block
/// only) and records each degree d as the bidegree (d, 0).
pub fn proj_vanishing_ideal(points: &[Vec<Rat>]) -> SpanSet {
    assert!(!points.is_empty());
    let m = points[0].len() - 1;
    let as_points: Vec<Point> = points
        .iter()
        .map(|a| Point::new(a, &[Rat::from_integer(1.into())]).unwrap())
        .collect();
    let x = PointSet::from_points(m, 0, as_points).expect("distinct projection points");
    let gens = vanishing_ideal_min_gens(&x);
    debug_assert!(gens.degrees().iter().all(|d| d.j == 0));
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::Var;
    use crate::fixtures::{self, SplitMix64};
    use crate::pointset::parse_pointset;
    use num::FromPrimitive;

    fn q(k: i64) -> Rat {
        Rat::from_i64(k).unwrap()
    }

    fn six_points() -> PointSet {
        parse_pointset(fixtures::SIX_POINTS).unwrap()
    }

    #[test]
    fn component_of_principal_ideal() {
        let j = SpanSet::ideal_in_s(1, 1, vec![BiPoly::var(1, 1, Var::X(0))]);
        let b = component_basis(&j, Bidegree::new(1, 0));
        assert_eq!(b.rows(), 1);
    }

    #[test]
    fn component_below_generators_is_zero() {
        let x0 = BiPoly::var(1, 1, Var::X(0));
        let j = SpanSet::ideal_in_s(1, 1, vec![x0.mul(&x0)]);
        assert_eq!(component_basis(&j, Bidegree::new(1, 1)).rows(), 0);
    }

    #[test]
    fn six_points_component_11_is_zero() {
        // dim S_{1,1} = 2·3 = 6 and HF(1,1) = 6, so (I_X)_{1,1} = 0.
        let x = six_points();
        let gens = vanishing_ideal_min_gens(&x);
        let b = component_basis(&gens, Bidegree::new(1, 1));
        assert_eq!(b.rows(), 0);
    }

    #[test]
    fn six_points_minimal_generators() {
        let x = six_points();
        let gens = vanishing_ideal_min_gens(&x);
        let mut degs = gens.degrees();
        degs.sort_by_key(|d| d.graded_lex_key());
        assert_eq!(
            degs,
            vec![
                Bidegree::new(0, 2),
                Bidegree::new(0, 2),
                Bidegree::new(0, 2),
                Bidegree::new(2, 0),
            ]
        );
        // The printed generating set spans the same components.
        let x0 = BiPoly::var(1, 2, Var::X(0));
        let x1 = BiPoly::var(1, 2, Var::X(1));
        let y0 = BiPoly::var(1, 2, Var::Y(0));
        let y1 = BiPoly::var(1, 2, Var::Y(1));
        let y2 = BiPoly::var(1, 2, Var::Y(2));
        let printed = SpanSet::ideal_in_s(
            1,
            2,
            vec![
                x0.mul(&x1).sub(&x1.mul(&x1)),
                y0.mul(&y1).sub(&y1.mul(&y1)),
                y1.mul(&y2).sub(&y2.mul(&y2)),
                y0.mul(&y2).sub(&y2.mul(&y2)),
            ],
        );
        for d in [Bidegree::new(2, 0), Bidegree::new(0, 2), Bidegree::new(2, 2)] {
            let a = component_basis(&gens, d);
            let b = component_basis(&printed, d);
            assert_eq!(a.rows(), b.rows());
            assert!(crate::exactlin::row_space_contains(&a, &b).unwrap());
        }
    }

    #[test]
    fn single_coordinate_point_generators() {
        let x = parse_pointset("m 2\nn 1\npoint 1 0 0 | 1 0\n").unwrap();
        let gens = vanishing_ideal_min_gens(&x);
        let mut degs = gens.degrees();
        degs.sort_by_key(|d| d.graded_lex_key());
        // X_1, X_2 of degree (1,0) and Y_1 of degree (0,1).
        assert_eq!(
            degs,
            vec![Bidegree::new(0, 1), Bidegree::new(1, 0), Bidegree::new(1, 0)]
        );
        for (g, _) in &gens.generators {
            assert_eq!(g.eval(&[q(1), q(0), q(0)], &[q(1), q(0)]), q(0));
        }
    }

    #[test]
    fn product_ideal_is_sum_of_factor_ideals() {
        let mut rng = SplitMix64(21);
        for _ in 0..5 {
            let x = fixtures::random_product(&mut rng);
            let gens = vanishing_ideal_min_gens(&x);
            let gx = proj_vanishing_ideal(x.x1());
            let gy = proj_vanishing_ideal(x.x2());
            let mut lifted = Vec::new();
            for (g, _) in &gx.generators {
                lifted.push(g.embed_x(x.n));
            }
            for (g, _) in &gy.generators {
                lifted.push(g.embed_y(x.m));
            }
            let sum = SpanSet::ideal_in_s(x.m, x.n, lifted);
            for i in 0..=x.s1() {
                for j in 0..=x.s2() {
                    let d = Bidegree::new(i, j);
                    let a = component_basis(&gens, d);
                    let b = component_basis(&sum, d);
                    assert_eq!(a.rows(), b.rows(), "dim mismatch at {d}");
                    assert!(crate::exactlin::row_space_contains(&a, &b).unwrap());
                }
            }
        }
    }

    #[test]
    fn proj_ideal_of_two_points_in_p1() {
        let pts = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        let gens = proj_vanishing_ideal(&pts);
        assert_eq!(gens.degrees(), vec![Bidegree::new(2, 0)]);
        // The unique generator is x0 x1 - x1^2 up to scaling.
        let x0 = BiPoly::var(1, 0, Var::X(0));
        let x1 = BiPoly::var(1, 0, Var::X(1));
        let expect = SpanSet::ideal_in_s(1, 0, vec![x0.mul(&x1).sub(&x1.mul(&x1))]);
        let a = component_basis(&gens, Bidegree::new(2, 0));
        let b = component_basis(&expect, Bidegree::new(2, 0));
        assert!(crate::exactlin::row_space_contains(&a, &b).unwrap());
    }

    #[test]
    fn proj_ideal_of_one_point_in_p2() {
        let gens = proj_vanishing_ideal(&[vec![q(1), q(2), q(3)]]);
        assert_eq!(gens.degrees(), vec![Bidegree::new(1, 0); 2]);
    }

    #[test]
    fn proj_ideal_of_four_points_in_p2() {
        let pts = vec![
            vec![q(1), q(0), q(0)],
            vec![q(1), q(1), q(0)],
            vec![q(1), q(0), q(1)],
            vec![q(1), q(1), q(1)],
        ];
        let gens = proj_vanishing_ideal(&pts);
        assert_eq!(gens.degrees(), vec![Bidegree::new(2, 0); 2]);
    }

    #[test]
    fn soundness_and_completeness_on_random_configs() {
        let mut rng = SplitMix64(22);
        for _ in 0..6 {
            let x = fixtures::random_pointset(&mut rng);
            let gens = vanishing_ideal_min_gens(&x);
            for (g, d) in &gens.generators {
                assert_eq!(g.bidegree(), Some(*d));
                for p in x.points() {
                    assert_eq!(g.eval(&p.a, &p.b), q(0), "generator fails to vanish");
                }
            }
            for i in 0..=x.s1() + 1 {
                for j in 0..=x.s2() + 1 {
                    let d = Bidegree::new(i, j);
                    let nd = bipoly::monomial_exponents(x.m, x.n, d).len();
                    assert_eq!(
                        component_basis(&gens, d).rows(),
                        nd - hilbert::hf(&x, d),
                        "completeness fails at {d}"
                    );
                }
            }
        }
    }

    #[test]
    fn minimality_on_random_configs() {
        let mut rng = SplitMix64(23);
        for _ in 0..4 {
            let x = fixtures::random_pointset(&mut rng);
            let gens = vanishing_ideal_min_gens(&x);
            for k in 0..gens.generators.len() {
                let d = gens.generators[k].1;
                let full = component_basis(&gens, d).rows();
                let mut reduced = gens.clone();
                reduced.generators.remove(k);
                assert!(
                    component_basis(&reduced, d).rows() < full,
                    "generator {k} is redundant"
                );
            }
        }
    }
}
