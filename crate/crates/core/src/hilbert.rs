//! Bigraded Hilbert functions: of a point set, of its double-point scheme,
//! of the projections, and of the Kähler differential modules; regularity
//! pair and border extraction.

use num::One;
use thiserror::Error;

use crate::bipoly::{self, Bidegree, BiPoly, Var};
use crate::exactlin::{row_space_intersect, QMatrix, RowSpace};
use crate::pointset::{Point, PointSet};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HilbertError {
    #[error("computation requires an arithmetically Cohen-Macaulay configuration")]
    NotAcm,
}

/// Method for the double-point Hilbert function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DoublePointMethod {
    /// Intersect the squared point ideals per bidegree (reference path).
    Intersection,
    /// Rank of the value-and-first-partials evaluation matrix (fast path).
    Derivative,
}

/// The module the differentials are taken relative to in `hf_omega`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OmegaRelative {
    /// Differentials over the base field.
    K,
    /// Differentials over the Noether normalization K[x_0, y_0]
    /// (requires an ACM configuration).
    Ro,
}

/// Powers of each coordinate of each point, so monomial evaluation is a
/// table lookup times product.
struct PowerTable {
    a: Vec<Vec<Vec<Rat>>>,
    b: Vec<Vec<Vec<Rat>>>,
}

impl PowerTable {
    fn new(points: &[Point], di: usize, dj: usize) -> Self {
        let pows = |coords: &[Rat], up_to: usize| -> Vec<Vec<Rat>> {
            coords
                .iter()
                .map(|c| {
                    let mut v = Vec::with_capacity(up_to + 1);
                    v.push(Rat::one());
                    for _ in 0..up_to {
                        v.push(v.last().unwrap() * c);
                    }
                    v
                })
                .collect()
        };
        PowerTable {
            a: points.iter().map(|p| pows(&p.a, di)).collect(),
            b: points.iter().map(|p| pows(&p.b, dj)).collect(),
        }
    }

    fn eval(&self, point: usize, xe: &[u32], ye: &[u32]) -> Rat {
        let mut acc = Rat::one();
        for (k, &e) in xe.iter().enumerate() {
            if e > 0 {
                acc *= &self.a[point][k][e as usize];
            }
        }
        for (l, &e) in ye.iter().enumerate() {
            if e > 0 {
                acc *= &self.b[point][l][e as usize];
            }
        }
        acc
    }
}

/// Evaluation vector of a polynomial at a list of points.
pub fn eval_vector(points: &[Point], f: &BiPoly) -> Vec<Rat> {
    points.iter().map(|p| f.eval(&p.a, &p.b)).collect()
}

/// One evaluation column (length = number of points) per monomial of
/// bidegree d, in canonical monomial order.
pub fn monomial_eval_columns(points: &[Point], m: usize, n: usize, d: Bidegree) -> Vec<Vec<Rat>> {
    let table = PowerTable::new(points, d.i, d.j);
    bipoly::monomial_exponents(m, n, d)
        .iter()
        .map(|(xe, ye)| (0..points.len()).map(|p| table.eval(p, xe, ye)).collect())
        .collect()
}

/// Evaluation matrix of the degree-d monomials at the points; with
/// `with_derivatives`, additional rows evaluate every first partial, so the
/// kernel encodes "value and all first partials vanish".
pub fn evaluation_matrix(x: &PointSet, d: Bidegree, with_derivatives: bool) -> QMatrix {
    let points = x.points();
    let basis = bipoly::monomial_basis(x.m, x.n, d);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        rows.push(basis.iter().map(|f| f.eval(&p.a, &p.b)).collect());
    }
    if with_derivatives {
        let mut vars = Vec::new();
        for k in 0..=x.m {
            vars.push(Var::X(k));
        }
        for l in 0..=x.n {
            vars.push(Var::Y(l));
        }
        for p in points {
            for &v in &vars {
                rows.push(basis.iter().map(|f| f.diff(v).eval(&p.a, &p.b)).collect());
            }
        }
    }
    QMatrix::from_rows_with_cols(rows, basis.len())
}

/// Hilbert function of an arbitrary list of distinct points (not
/// necessarily a full PointSet; the empty list gives 0). Computed as the
/// rank of the evaluation matrix, accumulating columns with early exit.
pub fn hf_of_points(points: &[Point], m: usize, n: usize, d: Bidegree) -> usize {
    let s = points.len();
    if s == 0 {
        return 0;
    }
    let mut sp = RowSpace::new(s);
    for col in monomial_eval_columns(points, m, n, d) {
        sp.insert(col);
        if sp.rank() == s {
            break;
        }
    }
    sp.rank()
}

/// HF_X(d) = dim of the degree-d component of the coordinate ring.
pub fn hf(x: &PointSet, d: Bidegree) -> usize {
    hf_of_points(x.points(), x.m, x.n, d)
}

/// HF extended by zero to negative degrees.
pub fn hf_z(x: &PointSet, i: isize, j: isize) -> usize {
    if i < 0 || j < 0 {
        0
    } else {
        hf(x, Bidegree::new(i as usize, j as usize))
    }
}

/// A Hilbert function on a finite box, with its regularity pair and the
/// border read along that pair's row and column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HFTable {
    /// Inclusive upper corner (i, j) of the computed grid.
    pub box_corner: Bidegree,
    /// values[i][j] for 0 ≤ i ≤ box.i, 0 ≤ j ≤ box.j.
    pub values: Vec<Vec<usize>>,
    /// (ν, ϱ): the pair of stabilization indices.
    pub reg_pair: Bidegree,
    /// B_C = (HF(ν,0), …, HF(ν,ϱ)).
    pub border_c: Vec<usize>,
    /// B_R = (HF(0,ϱ), …, HF(ν,ϱ)).
    pub border_r: Vec<usize>,
}

impl HFTable {
    pub fn value(&self, i: usize, j: usize) -> usize {
        self.values[i][j]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "box": [self.box_corner.i, self.box_corner.j],
            "values": self.values,
            "reg_pair": [self.reg_pair.i, self.reg_pair.j],
            "border": {"BC": self.border_c, "BR": self.border_r},
        })
    }

    /// Plain-text matrix: row index i downward, column index j across.
    pub fn to_text(&self) -> String {
        let width = self
            .values
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        self.values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| format!("{v:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Hilbert function of points in a single projective space: the value
/// sequence for d = 0..=r and the regularity index r (least degree where
/// the count of points is reached).
pub fn hf_projection(points: &[Vec<Rat>]) -> (Vec<usize>, usize) {
    assert!(!points.is_empty());
    let count = points.len();
    let mut seq = Vec::new();
    for d in 0.. {
        let v = proj_hf(points, d);
        seq.push(v);
        if v == count {
            return (seq, d);
        }
    }
    unreachable!()
}

/// Hilbert function at a single degree of a list of points in one
/// projective space (0 for the empty list).
pub fn proj_hf(points: &[Vec<Rat>], d: usize) -> usize {
    if points.is_empty() {
        return 0;
    }
    let count = points.len();
    let vars = points[0].len();
    let mut sp = RowSpace::new(count);
    for xe in bipoly::single_monomial_exponents(vars, d) {
        let col: Vec<Rat> = points
            .iter()
            .map(|p| {
                let mut acc = Rat::one();
                for (c, &e) in p.iter().zip(&xe) {
                    for _ in 0..e {
                        acc *= c;
                    }
                }
                acc
            })
            .collect();
        sp.insert(col);
        if sp.rank() == count {
            break;
        }
    }
    sp.rank()
}

/// Builds the Hilbert function table of X on the given box.
pub fn hf_table_box(x: &PointSet, corner: Bidegree) -> HFTable {
    let values: Vec<Vec<usize>> = (0..=corner.i)
        .map(|i| {
            (0..=corner.j)
                .map(|j| hf(x, Bidegree::new(i, j)))
                .collect()
        })
        .collect();
    let (_, r1) = hf_projection(x.x1());
    let (_, r2) = hf_projection(x.x2());
    let border_c = (0..=r2).map(|j| hf(x, Bidegree::new(r1, j))).collect();
    let border_r = (0..=r1).map(|i| hf(x, Bidegree::new(i, r2))).collect();
    HFTable {
        box_corner: corner,
        values,
        reg_pair: Bidegree::new(r1, r2),
        border_c,
        border_r,
    }
}

/// Hilbert function table on the default box (s_1, s_2), on which the
/// function has provably stabilized.
pub fn hf_table(x: &PointSet) -> HFTable {
    hf_table_box(x, Bidegree::new(x.s1(), x.s2()))
}

/// Basis of the linear forms (in `vars` variables) vanishing at a single
/// affine representative; always `vars - 1` independent forms.
fn point_linear_forms(coords: &[Rat]) -> Vec<Vec<Rat>> {
    let m = QMatrix::from_rows_with_cols(vec![coords.to_vec()], coords.len());
    crate::exactlin::kernel_basis(&m)
}

/// Basis (as a row space in monomial coordinates) of the degree-d component
/// of the squared vanishing ideal of one point.
fn squared_point_ideal_component(
    p: &Point,
    m: usize,
    n: usize,
    d: Bidegree,
) -> RowSpace {
    let dim = bipoly::monomial_exponents(m, n, d).len();
    let mut sp = RowSpace::new(dim);
    // Linear generators of I_p: m forms of degree (1,0), n of degree (0,1).
    let mut gens: Vec<BiPoly> = Vec::new();
    for v in point_linear_forms(&p.a) {
        let mut f = BiPoly::zero(m, n);
        for (k, c) in v.iter().enumerate() {
            f = f.add(&BiPoly::var(m, n, Var::X(k)).scale(c));
        }
        gens.push(f);
    }
    for v in point_linear_forms(&p.b) {
        let mut f = BiPoly::zero(m, n);
        for (l, c) in v.iter().enumerate() {
            f = f.add(&BiPoly::var(m, n, Var::Y(l)).scale(c));
        }
        gens.push(f);
    }
    for (a, ga) in gens.iter().enumerate() {
        for gb in &gens[a..] {
            let prod = ga.mul(gb);
            let Some(e) = prod.bidegree() else { continue };
            let Some(rest) = d.checked_sub(&e) else { continue };
            for mono in bipoly::monomial_basis(m, n, rest) {
                sp.insert(prod.mul(&mono).coeff_vector(d));
            }
        }
    }
    sp
}

/// Hilbert function of the scheme of doubled points.
pub fn hf_double_points(x: &PointSet, d: Bidegree, method: DoublePointMethod) -> usize {
    match method {
        DoublePointMethod::Derivative => {
            let mat = evaluation_matrix(x, d, true);
            let mut sp = RowSpace::new(mat.cols());
            for r in 0..mat.rows() {
                sp.insert(mat.row(r).to_vec());
            }
            sp.rank()
        }
        DoublePointMethod::Intersection => {
            let dim = bipoly::monomial_exponents(x.m, x.n, d).len();
            let mut acc: Option<QMatrix> = None;
            for p in x.points() {
                let comp = squared_point_ideal_component(p, x.m, x.n, d).into_matrix();
                acc = Some(match acc {
                    None => comp,
                    Some(prev) => row_space_intersect(&prev, &comp)
                        .expect("components share one ambient space"),
                });
            }
            dim - acc.map_or(0, |m| m.rows())
        }
    }
}

/// Hilbert function of the module of Kähler differentials, over K or over
/// the Noether normalization (the latter only for ACM configurations; the
/// caller passes the ACM verdict).
pub fn hf_omega(
    x: &PointSet,
    d: Bidegree,
    relative_to: OmegaRelative,
    is_acm: bool,
    method: DoublePointMethod,
) -> Result<usize, HilbertError> {
    let (i, j) = (d.i as isize, d.j as isize);
    let hx = hf(x, d) as isize;
    let hy = hf_double_points(x, d, method) as isize;
    let hi = hf_z(x, i - 1, j) as isize;
    let hj = hf_z(x, i, j - 1) as isize;
    let (cm, cn) = match relative_to {
        OmegaRelative::K => ((x.m + 1) as isize, (x.n + 1) as isize),
        OmegaRelative::Ro => {
            if !is_acm {
                return Err(HilbertError::NotAcm);
            }
            (x.m as isize, x.n as isize)
        }
    };
    let val = cm * hi + cn * hj + hx - hy;
    assert!(val >= 0, "Hilbert function formula went negative");
    Ok(val as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rank;
    use crate::fixtures::{self, SplitMix64};
    use crate::pointset::parse_pointset;
    use num::FromPrimitive;

    fn q(n: i64) -> Rat {
        Rat::from_i64(n).unwrap()
    }

    fn pt(a: &[i64], b: &[i64]) -> Point {
        Point::new(
            &a.iter().map(|&x| q(x)).collect::<Vec<_>>(),
            &b.iter().map(|&x| q(x)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    pub fn nine_points() -> PointSet {
        parse_pointset(fixtures::NINE_POINTS).unwrap()
    }

    pub fn six_points() -> PointSet {
        parse_pointset(fixtures::SIX_POINTS).unwrap()
    }

    fn grid22() -> PointSet {
        PointSet::from_points(
            1,
            1,
            vec![
                pt(&[1, 0], &[1, 0]),
                pt(&[1, 0], &[1, 1]),
                pt(&[1, 1], &[1, 0]),
                pt(&[1, 1], &[1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluation_matrix_nine_points_11() {
        let x = nine_points();
        let m = evaluation_matrix(&x, Bidegree::new(1, 1), false);
        assert_eq!((m.rows(), m.cols()), (9, 9));
        assert_eq!(rank(&m), 8);
    }

    #[test]
    fn evaluation_matrix_degree_zero() {
        let x = nine_points();
        let m = evaluation_matrix(&x, Bidegree::new(0, 0), false);
        assert_eq!((m.rows(), m.cols()), (9, 1));
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn hf_single_point_always_one() {
        let x = PointSet::from_points(2, 1, vec![pt(&[1, 2, 3], &[1, -1])]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(hf(&x, Bidegree::new(i, j)), 1);
            }
        }
    }

    #[test]
    fn hf_nine_points_values() {
        let x = nine_points();
        assert_eq!(hf(&x, Bidegree::new(0, 0)), 1);
        assert_eq!(hf(&x, Bidegree::new(1, 1)), 8);
        assert_eq!(hf(&x, Bidegree::new(0, 2)), 4);
        assert_eq!(hf(&x, Bidegree::new(2, 2)), 9);
    }

    #[test]
    fn hf_six_points_product_formula() {
        let x = six_points();
        // s = 6 with regularity pair (1,1), so HF(1,1) = 2·3 = 6.
        assert_eq!(hf(&x, Bidegree::new(1, 1)), 6);
    }

    #[test]
    fn hf_table_nine_points() {
        let x = nine_points();
        let t = hf_table(&x);
        assert_eq!(t.reg_pair, Bidegree::new(1, 2));
        assert_eq!(t.border_c, vec![3, 8, 9]);
        assert_eq!(t.border_r, vec![4, 9]);
        assert_eq!(&t.values[0][..4], &[1, 3, 4, 4]);
        assert_eq!(&t.values[1][..4], &[3, 8, 9, 9]);
        assert_eq!(&t.values[2][..4], &[3, 8, 9, 9]);
        assert_eq!(&t.values[3][..4], &[3, 8, 9, 9]);
    }

    #[test]
    fn hf_table_single_point() {
        let x = PointSet::from_points(1, 1, vec![pt(&[1, 5], &[2, 3])]).unwrap();
        let t = hf_table(&x);
        assert_eq!(t.reg_pair, Bidegree::new(0, 0));
        assert!(t.values.iter().flatten().all(|&v| v == 1));
    }

    #[test]
    fn hf_table_grid22() {
        let t = hf_table(&grid22());
        assert_eq!(
            t.values,
            vec![vec![1, 2, 2], vec![2, 4, 4], vec![2, 4, 4]]
        );
    }

    #[test]
    fn projection_hf_nine_points() {
        let x = nine_points();
        let (seq2, r2) = hf_projection(x.x2());
        assert_eq!(seq2, vec![1, 3, 4]);
        assert_eq!(r2, 2);
        let (seq1, r1) = hf_projection(x.x1());
        assert_eq!(seq1, vec![1, 3]);
        assert_eq!(r1, 1);
    }

    #[test]
    fn projection_hf_three_points_p2() {
        let x = six_points();
        let (seq, r) = hf_projection(x.x2());
        assert_eq!(seq, vec![1, 3]);
        assert_eq!(r, 1);
    }

    #[test]
    fn projection_hf_single_point() {
        let pts = vec![vec![q(1), q(0), q(0)]];
        let (seq, r) = hf_projection(&pts);
        assert_eq!((seq, r), (vec![1], 0));
    }

    #[test]
    fn double_points_single_point_11() {
        let x = PointSet::from_points(1, 1, vec![pt(&[1, 0], &[1, 0])]).unwrap();
        let d = Bidegree::new(1, 1);
        assert_eq!(hf_double_points(&x, d, DoublePointMethod::Intersection), 3);
        assert_eq!(hf_double_points(&x, d, DoublePointMethod::Derivative), 3);
    }

    #[test]
    fn double_points_degree_zero() {
        let x = grid22();
        let d = Bidegree::new(0, 0);
        assert_eq!(hf_double_points(&x, d, DoublePointMethod::Intersection), 1);
        assert_eq!(hf_double_points(&x, d, DoublePointMethod::Derivative), 1);
    }

    #[test]
    fn double_points_six_points_stabilizes_at_24() {
        let x = six_points();
        // Eventual value s·(m+n+1) = 6·4.
        let d = Bidegree::new(4, 4);
        assert_eq!(hf_double_points(&x, d, DoublePointMethod::Derivative), 24);
    }

    #[test]
    fn omega_single_point_over_k() {
        let x = PointSet::from_points(1, 1, vec![pt(&[1, 0], &[1, 0])]).unwrap();
        let d = Bidegree::new(1, 1);
        assert_eq!(
            hf_omega(&x, d, OmegaRelative::K, true, DoublePointMethod::Derivative).unwrap(),
            2
        );
        assert_eq!(
            hf_omega(&x, d, OmegaRelative::Ro, true, DoublePointMethod::Derivative).unwrap(),
            0
        );
    }

    #[test]
    fn omega_degree_zero_is_zero() {
        let x = grid22();
        let d = Bidegree::new(0, 0);
        assert_eq!(
            hf_omega(&x, d, OmegaRelative::K, true, DoublePointMethod::Derivative).unwrap(),
            0
        );
    }

    #[test]
    fn omega_ro_refused_without_acm() {
        let x = grid22();
        let d = Bidegree::new(1, 1);
        assert_eq!(
            hf_omega(&x, d, OmegaRelative::Ro, false, DoublePointMethod::Derivative),
            Err(HilbertError::NotAcm)
        );
    }

    #[test]
    fn monotone_bounded_and_stabilized() {
        let mut rng = SplitMix64(11);
        for _ in 0..8 {
            let x = fixtures::random_pointset(&mut rng);
            let t = hf_table(&x);
            let (bi, bj) = (t.box_corner.i, t.box_corner.j);
            for i in 0..=bi {
                for j in 0..=bj {
                    let v = t.values[i][j];
                    assert!(v <= x.s());
                    if i + 1 <= bi {
                        assert!(v <= t.values[i + 1][j]);
                    }
                    if j + 1 <= bj {
                        assert!(v <= t.values[i][j + 1]);
                    }
                    if i + 1 >= x.s1() && j + 1 >= x.s2() {
                        assert_eq!(v, x.s());
                    }
                }
            }
        }
    }

    #[test]
    fn once_equal_always_equal_and_propagation() {
        let mut rng = SplitMix64(12);
        for _ in 0..8 {
            let x = fixtures::random_pointset(&mut rng);
            let t = hf_table(&x);
            let (bi, bj) = (t.box_corner.i, t.box_corner.j);
            for i in 0..bi.saturating_sub(1) {
                for j in 0..=bj {
                    if t.values[i][j] == t.values[i + 1][j] {
                        assert_eq!(t.values[i][j], t.values[i + 2][j]);
                        if j + 1 <= bj {
                            assert_eq!(t.values[i][j + 1], t.values[i + 1][j + 1]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_law_for_random_grids() {
        let mut rng = SplitMix64(13);
        for _ in 0..6 {
            let a: Vec<Vec<Rat>> = (0..rng.range(1, 4))
                .map(|k| vec![q(1), q(k)])
                .collect();
            let b: Vec<Vec<Rat>> = (0..rng.range(1, 4))
                .map(|k| vec![q(1), q(k), q(k * k)])
                .collect();
            let pts: Vec<Point> = a
                .iter()
                .flat_map(|u| b.iter().map(move |v| Point::new(u, v).unwrap()))
                .collect();
            let x = PointSet::from_points(1, 2, pts).unwrap();
            let (h1, _) = hf_projection(&a);
            let (h2, _) = hf_projection(&b);
            let t = hf_table(&x);
            let at = |seq: &Vec<usize>, d: usize, cnt: usize| {
                *seq.get(d).unwrap_or(&cnt)
            };
            for i in 0..=t.box_corner.i {
                for j in 0..=t.box_corner.j {
                    assert_eq!(
                        t.values[i][j],
                        at(&h1, i, a.len()) * at(&h2, j, b.len())
                    );
                }
            }
        }
    }

    #[test]
    fn double_point_methods_agree_on_random_configs() {
        let mut rng = SplitMix64(14);
        for _ in 0..5 {
            let x = fixtures::random_pointset(&mut rng);
            for i in 0..=2 {
                for j in 0..=2 {
                    let d = Bidegree::new(i, j);
                    assert_eq!(
                        hf_double_points(&x, d, DoublePointMethod::Intersection),
                        hf_double_points(&x, d, DoublePointMethod::Derivative),
                        "double-point methods disagree at {d}"
                    );
                }
            }
        }
    }
}
