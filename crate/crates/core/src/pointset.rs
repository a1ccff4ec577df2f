//! Configurations of distinct points in ℙ^m × ℙ^n: parsing and
//! normalization, projections and fibers, the cross-point closure property,
//! product detection, and the choice of linear forms that do not vanish on
//! either projection.

use std::collections::BTreeSet;
use std::str::FromStr;

use num::{One, Zero};
use thiserror::Error;

use crate::bipoly::{BiPoly, Var};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PointSetError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: zero coordinate vector")]
    ZeroVector { line: usize },
    #[error("line {line}: duplicate point")]
    DuplicatePoint { line: usize },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("missing `m`/`n` header lines")]
    MissingHeader,
    #[error("empty point set")]
    Empty,
}

/// A point of ℙ^m × ℙ^n with pinned affine representatives: each factor is
/// scaled so its first nonzero coordinate equals 1, making equality and
/// evaluation deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Point {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
}

/// Scales a projective coordinate vector so its first nonzero entry is 1.
pub fn normalize_coords(v: &[Rat]) -> Option<Vec<Rat>> {
    let lead = v.iter().find(|e| !e.is_zero())?;
    Some(v.iter().map(|e| e / lead).collect())
}

impl Point {
    pub fn new(a: &[Rat], b: &[Rat]) -> Option<Point> {
        Some(Point {
            a: normalize_coords(a)?,
            b: normalize_coords(b)?,
        })
    }
}

/// A finite set of distinct points with its projections and fibers.
///
/// `x1` and `x2` hold the distinct projection points. `x2` is sorted by
/// decreasing fiber size then lexicographic coordinates, and `x1` likewise
/// by its fiber sizes, so that for configurations with the cross-point
/// closure property the fibers form nested chains. `v_fibers[j]` lists
/// indices into `x1` of the points lying over `x2[j]`; `w_fibers[i]` lists
/// indices into `x2` of the points over `x1[i]`.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub m: usize,
    pub n: usize,
    points: Vec<Point>,
    membership: BTreeSet<(Vec<Rat>, Vec<Rat>)>,
    x1: Vec<Vec<Rat>>,
    x2: Vec<Vec<Rat>>,
    v_fibers: Vec<Vec<usize>>,
    w_fibers: Vec<Vec<usize>>,
}

impl PointSet {
    pub fn from_points(m: usize, n: usize, points: Vec<Point>) -> Result<PointSet, PointSetError> {
        if points.is_empty() {
            return Err(PointSetError::Empty);
        }
        let mut membership = BTreeSet::new();
        for (k, p) in points.iter().enumerate() {
            assert_eq!(p.a.len(), m + 1);
            assert_eq!(p.b.len(), n + 1);
            if !membership.insert((p.a.clone(), p.b.clone())) {
                return Err(PointSetError::DuplicatePoint { line: k + 1 });
            }
        }

        let mut x1: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| p.a.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut x2: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| p.b.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        // Sort the projections by decreasing fiber cardinality, ties broken
        // lexicographically; with the cross-point closure property this
        // makes the fibers a descending chain.
        let fiber_size = |proj: &[Vec<Rat>], second: bool| -> Vec<usize> {
            proj.iter()
                .map(|q| {
                    points
                        .iter()
                        .filter(|p| if second { &p.b == q } else { &p.a == q })
                        .count()
                })
                .collect()
        };
        let sz2 = fiber_size(&x2, true);
        let mut order2: Vec<usize> = (0..x2.len()).collect();
        order2.sort_by(|&a, &b| sz2[b].cmp(&sz2[a]).then_with(|| x2[a].cmp(&x2[b])));
        x2 = order2.into_iter().map(|k| x2[k].clone()).collect();
        let sz1 = fiber_size(&x1, false);
        let mut order1: Vec<usize> = (0..x1.len()).collect();
        order1.sort_by(|&a, &b| sz1[b].cmp(&sz1[a]).then_with(|| x1[a].cmp(&x1[b])));
        x1 = order1.into_iter().map(|k| x1[k].clone()).collect();

        let v_fibers: Vec<Vec<usize>> = x2
            .iter()
            .map(|q2| {
                x1.iter()
                    .enumerate()
                    .filter(|(_, q1)| membership.contains(&((*q1).clone(), q2.clone())))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let w_fibers: Vec<Vec<usize>> = x1
            .iter()
            .map(|q1| {
                x2.iter()
                    .enumerate()
                    .filter(|(_, q2)| membership.contains(&(q1.clone(), (*q2).clone())))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();

        Ok(PointSet {
            m,
            n,
            points,
            membership,
            x1,
            x2,
            v_fibers,
            w_fibers,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn s(&self) -> usize {
        self.points.len()
    }

    /// Distinct first-factor projection points.
    pub fn x1(&self) -> &[Vec<Rat>] {
        &self.x1
    }

    /// Distinct second-factor projection points.
    pub fn x2(&self) -> &[Vec<Rat>] {
        &self.x2
    }

    pub fn s1(&self) -> usize {
        self.x1.len()
    }

    pub fn s2(&self) -> usize {
        self.x2.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.membership.contains(&(p.a.clone(), p.b.clone()))
    }

    pub fn contains_pair(&self, a: &[Rat], b: &[Rat]) -> bool {
        self.membership.contains(&(a.to_vec(), b.to_vec()))
    }

    /// Fibers over the second factor: element j lists the first-factor
    /// points lying over `x2()[j]`, as indices into `x1()`.
    pub fn v_fibers(&self) -> &[Vec<usize>] {
        &self.v_fibers
    }

    /// Fibers over the first factor, as indices into `x2()`.
    pub fn w_fibers(&self) -> &[Vec<usize>] {
        &self.w_fibers
    }

    /// Coordinate vectors of the fiber V_j.
    pub fn v_fiber_points(&self, j: usize) -> Vec<Vec<Rat>> {
        self.v_fibers[j].iter().map(|&i| self.x1[i].clone()).collect()
    }

    /// Coordinate vectors of the fiber W_i.
    pub fn w_fiber_points(&self, i: usize) -> Vec<Vec<Rat>> {
        self.w_fibers[i].iter().map(|&j| self.x2[j].clone()).collect()
    }

    /// True iff for every pair of points q1×q1', q2×q2' in the set, at
    /// least one of the cross points q1×q2', q2×q1' is also in the set.
    pub fn has_star_property(&self) -> bool {
        for p in &self.points {
            for q in &self.points {
                if !self.contains_pair(&p.a, &q.b) && !self.contains_pair(&q.a, &p.b) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the set is the full product of its projections.
    pub fn is_product(&self) -> bool {
        self.s() == self.s1() * self.s2()
            && self
                .x1
                .iter()
                .all(|a| self.x2.iter().all(|b| self.contains_pair(a, b)))
    }

    /// Returns the subset with one point removed (by value).
    pub fn without(&self, p: &Point) -> Vec<Point> {
        self.points.iter().filter(|q| *q != p).cloned().collect()
    }
}

/// Linear forms ℓ of bidegree (1,0) and ℓ' of bidegree (0,1) that vanish at
/// no point of the first resp. second projection, together with the data
/// needed to change coordinates so the forms become X_0 and Y_0.
#[derive(Clone, Debug)]
pub struct RegularForms {
    pub ell: BiPoly,
    pub ellp: BiPoly,
    /// ℓ = Σ_k t_x^k X_k.
    pub t_x: u64,
    /// ℓ' = Σ_l t_y^l Y_l.
    pub t_y: u64,
}

fn geometric_form_vanishes(points: &[Vec<Rat>], t: u64) -> bool {
    let t = Rat::from_integer(t.into());
    points.iter().any(|p| {
        let mut acc = Rat::zero();
        let mut pw = Rat::one();
        for c in p {
            acc += c * &pw;
            pw *= &t;
        }
        acc.is_zero()
    })
}

/// Deterministic choice of regular linear forms: ℓ = Σ t^k X_k for the
/// least t = 0, 1, 2, … nonvanishing on the first projection, and likewise
/// for ℓ'. Always succeeds over the rationals.
pub fn choose_regular_forms(x: &PointSet) -> RegularForms {
    let t_x = (0u64..).find(|&t| !geometric_form_vanishes(&x.x1, t)).unwrap();
    let t_y = (0u64..).find(|&t| !geometric_form_vanishes(&x.x2, t)).unwrap();
    let mut ell = BiPoly::zero(x.m, x.n);
    let mut pw = Rat::one();
    for k in 0..=x.m {
        ell = ell.add(&BiPoly::var(x.m, x.n, Var::X(k)).scale(&pw));
        pw *= Rat::from_integer(t_x.into());
    }
    let mut ellp = BiPoly::zero(x.m, x.n);
    let mut pw = Rat::one();
    for l in 0..=x.n {
        ellp = ellp.add(&BiPoly::var(x.m, x.n, Var::Y(l)).scale(&pw));
        pw *= Rat::from_integer(t_y.into());
    }
    RegularForms { ell, ellp, t_x, t_y }
}

impl RegularForms {
    /// Applies the invertible substitution Z_0 = ℓ, Z_k = X_k (k ≥ 1) and
    /// the analogue in Y to the point coordinates, then renormalizes. In
    /// the returned configuration every point has first coordinate 1 in
    /// both factors, so x_0 and y_0 are nonvanishing on it.
    pub fn transform(&self, x: &PointSet) -> PointSet {
        let pts = x
            .points()
            .iter()
            .map(|p| {
                let mut a = p.a.clone();
                a[0] = self.ell.eval(&p.a, &p.b);
                let mut b = p.b.clone();
                b[0] = self.ellp.eval(&p.a, &p.b);
                Point::new(&a, &b).expect("regular form vanished on a point")
            })
            .collect();
        PointSet::from_points(x.m, x.n, pts).expect("coordinate change preserved distinctness")
    }
}

/// Parses the point-set file format: `#` comments, `m <int>` and `n <int>`
/// header lines, then `point a_0 … a_m | b_0 … b_n` lines with integer or
/// `p/q` coordinates.
pub fn parse_pointset(text: &str) -> Result<PointSet, PointSetError> {
    let mut m: Option<usize> = None;
    let mut n: Option<usize> = None;
    let mut points: Vec<Point> = Vec::new();
    let mut seen = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "m" | "n" => {
                let val: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| PointSetError::Syntax {
                        line,
                        msg: format!("expected `{head} <nonnegative integer>`"),
                    })?;
                if toks.next().is_some() {
                    return Err(PointSetError::Syntax {
                        line,
                        msg: "trailing tokens after header".into(),
                    });
                }
                if head == "m" {
                    m = Some(val);
                } else {
                    n = Some(val);
                }
            }
            "point" => {
                let (m, n) = (m.ok_or(PointSetError::MissingHeader)?, n.ok_or(PointSetError::MissingHeader)?);
                let rest: Vec<&str> = toks.collect();
                let bar = rest
                    .iter()
                    .position(|&t| t == "|")
                    .ok_or_else(|| PointSetError::Syntax {
                        line,
                        msg: "expected `|` between the two factors".into(),
                    })?;
                let parse_coords = |toks: &[&str]| -> Result<Vec<Rat>, PointSetError> {
                    toks.iter()
                        .map(|t| {
                            Rat::from_str(t).map_err(|_| PointSetError::Syntax {
                                line,
                                msg: format!("bad coordinate `{t}`"),
                            })
                        })
                        .collect()
                };
                let a = parse_coords(&rest[..bar])?;
                let b = parse_coords(&rest[bar + 1..])?;
                if a.len() != m + 1 {
                    return Err(PointSetError::DimensionMismatch {
                        line,
                        expected: m + 1,
                        found: a.len(),
                    });
                }
                if b.len() != n + 1 {
                    return Err(PointSetError::DimensionMismatch {
                        line,
                        expected: n + 1,
                        found: b.len(),
                    });
                }
                let p = Point::new(&a, &b).ok_or(PointSetError::ZeroVector { line })?;
                if !seen.insert((p.a.clone(), p.b.clone())) {
                    return Err(PointSetError::DuplicatePoint { line });
                }
                points.push(p);
            }
            other => {
                return Err(PointSetError::Syntax {
                    line,
                    msg: format!("unexpected token `{other}`"),
                });
            }
        }
    }
    if m.is_none() || n.is_none() {
        return Err(PointSetError::MissingHeader);
    }
    PointSet::from_points(m.unwrap(), n.unwrap(), points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> Rat {
        Rat::from_i64(n).unwrap()
    }

    pub fn pt(a: &[i64], b: &[i64]) -> Point {
        Point::new(
            &a.iter().map(|&x| q(x)).collect::<Vec<_>>(),
            &b.iter().map(|&x| q(x)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    /// A staircase of nine points in ℙ²×ℙ² built from q1=(1:0:0),
    /// q2=(1:1:0), q3=(1:0:1), q4=(1:1:1): the full fiber over q1 shrinks
    /// step by step over q2 and q3.
    pub fn nine_points_file() -> &'static str {
        "m 2\nn 2\n\
         point 1 0 0 | 1 0 0\n\
         point 1 0 0 | 1 1 0\n\
         point 1 0 0 | 1 0 1\n\
         point 1 0 0 | 1 1 1\n\
         point 1 1 0 | 1 0 0\n\
         point 1 1 0 | 1 1 0\n\
         point 1 1 0 | 1 0 1\n\
         point 1 0 1 | 1 0 0\n\
         point 1 0 1 | 1 1 0\n"
    }

    #[test]
    fn parse_nine_points() {
        let x = parse_pointset(nine_points_file()).unwrap();
        assert_eq!(x.s(), 9);
        assert_eq!(x.s1(), 3);
        assert_eq!(x.s2(), 4);
    }

    #[test]
    fn parse_single_point() {
        let x = parse_pointset("m 2\nn 1\npoint 1 0 0 | 1 0\n").unwrap();
        assert_eq!((x.s(), x.s1(), x.s2()), (1, 1, 1));
    }

    #[test]
    fn parse_rejects_duplicate() {
        let err = parse_pointset("m 1\nn 1\npoint 1 0 | 1 0\npoint 2 0 | 3 0\n").unwrap_err();
        assert_eq!(err, PointSetError::DuplicatePoint { line: 4 });
    }

    #[test]
    fn parse_rejects_zero_vector() {
        let err = parse_pointset("m 1\nn 1\npoint 0 0 | 1 0\n").unwrap_err();
        assert_eq!(err, PointSetError::ZeroVector { line: 3 });
    }

    #[test]
    fn parse_accepts_rationals_and_comments() {
        let x = parse_pointset("# header\nm 1\nn 1\npoint 1/2 1 | 1 -2/3 # inline\n").unwrap();
        // Normalized: leading coordinate scaled to 1.
        assert_eq!(x.points()[0].a, vec![q(1), q(2)]);
    }

    #[test]
    fn fibers_of_diagonal_are_singletons() {
        let x = PointSet::from_points(
            1,
            1,
            vec![pt(&[1, 0], &[1, 0]), pt(&[0, 1], &[0, 1])],
        )
        .unwrap();
        assert!(x.v_fibers().iter().all(|f| f.len() == 1));
        assert!(x.w_fibers().iter().all(|f| f.len() == 1));
    }

    #[test]
    fn fibers_of_product_are_full() {
        let pts = vec![
            pt(&[1, 0], &[1, 0]),
            pt(&[1, 0], &[1, 1]),
            pt(&[1, 1], &[1, 0]),
            pt(&[1, 1], &[1, 1]),
        ];
        let x = PointSet::from_points(1, 1, pts).unwrap();
        assert!(x.v_fibers().iter().all(|f| f.len() == x.s1()));
        assert!(x.w_fibers().iter().all(|f| f.len() == x.s2()));
        assert!(x.is_product());
        assert!(x.has_star_property());
    }

    #[test]
    fn star_fails_on_diagonal() {
        let x = PointSet::from_points(
            1,
            1,
            vec![pt(&[1, 0], &[1, 0]), pt(&[0, 1], &[0, 1])],
        )
        .unwrap();
        assert!(!x.has_star_property());
        assert!(!x.is_product());
    }

    #[test]
    fn single_point_is_product() {
        let x = PointSet::from_points(1, 1, vec![pt(&[1, 0], &[1, 0])]).unwrap();
        assert!(x.is_product());
    }

    #[test]
    fn fiber_sizes_sum_to_s() {
        let x = parse_pointset(nine_points_file()).unwrap();
        let sv: usize = x.v_fibers().iter().map(|f| f.len()).sum();
        let sw: usize = x.w_fibers().iter().map(|f| f.len()).sum();
        assert_eq!(sv, x.s());
        assert_eq!(sw, x.s());
    }

    #[test]
    fn star_implies_nested_fibers() {
        let x = parse_pointset(nine_points_file()).unwrap();
        assert!(x.has_star_property());
        for w in x.w_fibers().windows(2) {
            assert!(w[1].iter().all(|j| w[0].contains(j)));
        }
        for v in x.v_fibers().windows(2) {
            assert!(v[1].iter().all(|i| v[0].contains(i)));
        }
    }

    #[test]
    fn regular_forms_trivial_when_leading_coords_nonzero() {
        let x = parse_pointset(nine_points_file()).unwrap();
        let rf = choose_regular_forms(&x);
        assert_eq!((rf.t_x, rf.t_y), (0, 0));
        assert_eq!(rf.ell, BiPoly::var(2, 2, Var::X(0)));
    }

    #[test]
    fn regular_forms_skip_vanishing_candidate() {
        let x = PointSet::from_points(
            1,
            1,
            vec![pt(&[1, 0], &[1, 0]), pt(&[0, 1], &[1, 1])],
        )
        .unwrap();
        let rf = choose_regular_forms(&x);
        assert_eq!(rf.t_x, 1); // X_0 vanishes at (0:1), X_0 + X_1 does not.
        for p in x.points() {
            assert!(!rf.ell.eval(&p.a, &p.b).is_zero());
            assert!(!rf.ellp.eval(&p.a, &p.b).is_zero());
        }
        let y = rf.transform(&x);
        assert_eq!(y.s(), x.s());
        for p in y.points() {
            assert_eq!(p.a[0], q(1));
            assert_eq!(p.b[0], q(1));
        }
    }
}
