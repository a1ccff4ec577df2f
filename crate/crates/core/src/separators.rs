//! Separator polynomials, point degrees as antichains of minimal
//! bidegrees, and the Cayley-Bacharach predicate, for a configuration and
//! for finite subsets of a single projective space.

use thiserror::Error;

use crate::bipoly::{Bidegree, BiPoly};
use crate::exactlin::solve;
use crate::hilbert::{self, evaluation_matrix, hf, hf_of_points, proj_hf};
use crate::pointset::{Point, PointSet};
use crate::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparatorError {
    #[error("point does not belong to the configuration")]
    PointNotInSet,
}

/// The set of minimal separator bidegrees of one point: a nonempty
/// ⪯-antichain, sorted for determinism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeSet {
    pub point: Point,
    pub mins: Vec<Bidegree>,
}

/// The bidegrees where removing p drops the Hilbert function, i.e. where a
/// separator of p exists, returned through its minimal elements. The
/// search box (s_1 − 1, s_2 − 1) suffices: both Hilbert functions have
/// stabilized in each direction there, so no new minimal element can
/// appear outside it.
pub fn point_degree(x: &PointSet, p: &Point) -> Result<DegreeSet, SeparatorError> {
    if !x.contains(p) {
        return Err(SeparatorError::PointNotInSet);
    }
    let rest = x.without(p);
    let (bi, bj) = (x.s1() - 1, x.s2() - 1);
    let mut hits: Vec<Bidegree> = Vec::new();
    for i in 0..=bi {
        for j in 0..=bj {
            let d = Bidegree::new(i, j);
            if hf(x, d) - hf_of_points(&rest, x.m, x.n, d) == 1 {
                hits.push(d);
            }
        }
    }
    let mut mins: Vec<Bidegree> = hits
        .iter()
        .filter(|d| !hits.iter().any(|e| e != *d && e.leq(d)))
        .cloned()
        .collect();
    mins.sort();
    Ok(DegreeSet {
        point: p.clone(),
        mins,
    })
}

/// One separator of minimal bidegree d for each d in the point's degree
/// set: a form with value 1 at p and 0 at every other point, chosen as the
/// deterministic least-pivot solution of the interpolation system.
pub fn minimal_separators(x: &PointSet, p: &Point) -> Result<Vec<BiPoly>, SeparatorError> {
    let degs = point_degree(x, p)?;
    let e_p: Vec<Rat> = x
        .points()
        .iter()
        .map(|q| {
            if q == p {
                Rat::from_integer(1.into())
            } else {
                Rat::from_integer(0.into())
            }
        })
        .collect();
    let mut out = Vec::new();
    for d in &degs.mins {
        let mat = evaluation_matrix(x, *d, false);
        let c = solve(&mat, &e_p).expect("separator system must be solvable at a minimal degree");
        out.push(BiPoly::from_coeff_vector(x.m, x.n, *d, &c));
    }
    Ok(out)
}

/// True iff every point has the same set of minimal separator degrees.
pub fn has_cayley_bacharach(x: &PointSet) -> bool {
    let mut first: Option<Vec<Bidegree>> = None;
    for p in x.points() {
        let mins = point_degree(x, p).unwrap().mins;
        match &first {
            None => first = Some(mins),
            Some(f) => {
                if *f != mins {
                    return false;
                }
            }
        }
    }
    true
}

/// Degree of a point of a finite subset of one projective space: the least
/// d at which removing the point drops the Hilbert function.
pub fn proj_point_degree(subset: &[Vec<Rat>], q: &[Rat]) -> Result<usize, SeparatorError> {
    let qn = crate::pointset::normalize_coords(q).ok_or(SeparatorError::PointNotInSet)?;
    if !subset.contains(&qn) {
        return Err(SeparatorError::PointNotInSet);
    }
    let rest: Vec<Vec<Rat>> = subset.iter().filter(|p| **p != qn).cloned().collect();
    for d in 0..subset.len() {
        if proj_hf(subset, d) - proj_hf(&rest, d) == 1 {
            return Ok(d);
        }
    }
    unreachable!("a separator exists by degree |subset| - 1")
}

/// Cayley-Bacharach predicate for a subset of one projective space: all
/// points have the same degree.
pub fn proj_is_cb(subset: &[Vec<Rat>]) -> bool {
    let degs: Vec<usize> = subset
        .iter()
        .map(|q| proj_point_degree(subset, q).unwrap())
        .collect();
    degs.windows(2).all(|w| w[0] == w[1])
}

/// Regularity index of a subset of one projective space.
pub fn proj_reg_index(subset: &[Vec<Rat>]) -> usize {
    hilbert::hf_projection(subset).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, SplitMix64};
    use crate::pointset::parse_pointset;
    use num::FromPrimitive;

    fn q(k: i64) -> Rat {
        Rat::from_i64(k).unwrap()
    }

    fn pt(a: &[i64], b: &[i64]) -> Point {
        Point::new(
            &a.iter().map(|&x| q(x)).collect::<Vec<_>>(),
            &b.iter().map(|&x| q(x)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn six_points() -> PointSet {
        parse_pointset(fixtures::SIX_POINTS).unwrap()
    }

    #[test]
    fn six_points_all_degrees_are_11() {
        let x = six_points();
        for p in x.points() {
            let d = point_degree(&x, p).unwrap();
            assert_eq!(d.mins, vec![Bidegree::new(1, 1)]);
        }
        assert!(has_cayley_bacharach(&x));
    }

    #[test]
    fn single_point_degree_is_origin() {
        let x = PointSet::from_points(1, 1, vec![pt(&[1, 3], &[1, -2])]).unwrap();
        let p = x.points()[0].clone();
        assert_eq!(point_degree(&x, &p).unwrap().mins, vec![Bidegree::new(0, 0)]);
        let seps = minimal_separators(&x, &p).unwrap();
        assert_eq!(seps.len(), 1);
        assert_eq!(seps[0].eval(&p.a, &p.b), q(1));
    }

    #[test]
    fn diagonal_two_points_has_two_minimal_degrees() {
        let x = PointSet::from_points(
            1,
            1,
            vec![pt(&[1, 0], &[1, 0]), pt(&[0, 1], &[0, 1])],
        )
        .unwrap();
        let p = x.points()[0].clone();
        assert_eq!(
            point_degree(&x, &p).unwrap().mins,
            vec![Bidegree::new(0, 1), Bidegree::new(1, 0)]
        );
    }

    #[test]
    fn point_not_in_set_is_rejected() {
        let x = PointSet::from_points(1, 1, vec![pt(&[1, 0], &[1, 0])]).unwrap();
        let outsider = pt(&[1, 1], &[1, 1]);
        assert_eq!(
            point_degree(&x, &outsider),
            Err(SeparatorError::PointNotInSet)
        );
    }

    #[test]
    fn separators_separate() {
        let x = six_points();
        for p in x.points() {
            for f in minimal_separators(&x, p).unwrap() {
                assert_eq!(f.eval(&p.a, &p.b), q(1));
                for other in x.points() {
                    if other != p {
                        assert_eq!(f.eval(&other.a, &other.b), q(0));
                    }
                }
            }
        }
    }

    #[test]
    fn grid_separator_is_product_of_factor_separators() {
        let x = parse_pointset(fixtures::GRID_2X2).unwrap();
        let p = pt(&[1, 0], &[1, 0]);
        let degs = point_degree(&x, &p).unwrap();
        assert_eq!(degs.mins, vec![Bidegree::new(1, 1)]);
        let f = &minimal_separators(&x, &p).unwrap()[0];
        // (x0 - x1)(y0 - y1) separates p; the computed separator spans the
        // same line since HF drops by exactly one.
        assert_eq!(f.eval(&p.a, &p.b), q(1));
        for other in x.points() {
            if *other != p {
                assert_eq!(f.eval(&other.a, &other.b), q(0));
            }
        }
    }

    #[test]
    fn l_shape_is_not_cayley_bacharach() {
        let x = PointSet::from_points(
            1,
            1,
            vec![
                pt(&[1, 0], &[1, 0]),
                pt(&[1, 0], &[1, 1]),
                pt(&[1, 1], &[1, 0]),
            ],
        )
        .unwrap();
        assert!(!has_cayley_bacharach(&x));
    }

    #[test]
    fn proj_degree_of_two_points_in_p1() {
        let pts = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        for p in &pts {
            assert_eq!(proj_point_degree(&pts, p).unwrap(), 1);
        }
        assert!(proj_is_cb(&pts));
    }

    #[test]
    fn proj_degree_three_points_p2() {
        let x = six_points();
        for p in x.x2() {
            assert_eq!(proj_point_degree(x.x2(), p).unwrap(), 1);
        }
        assert!(proj_is_cb(x.x2()));
    }

    #[test]
    fn proj_degree_five_point_conic_config() {
        let x = parse_pointset(fixtures::TWENTY_FOUR_POINTS).unwrap();
        assert_eq!(x.s1(), 5);
        for p in x.x1() {
            assert_eq!(proj_point_degree(x.x1(), p).unwrap(), 2);
        }
        assert_eq!(proj_reg_index(x.x1()), 2);
    }

    #[test]
    fn full_grid_law_on_random_configs() {
        let mut rng = SplitMix64(31);
        for _ in 0..5 {
            let x = fixtures::random_pointset(&mut rng);
            for p in x.points() {
                let degs = point_degree(&x, p).unwrap();
                let rest = x.without(p);
                for i in 0..=x.s1() - 1 {
                    for j in 0..=x.s2() - 1 {
                        let d = Bidegree::new(i, j);
                        let in_up_closure = degs.mins.iter().any(|e| e.leq(&d));
                        let expected = hf(&x, d) - usize::from(in_up_closure);
                        assert_eq!(hf_of_points(&rest, x.m, x.n, d), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_set_is_antichain_within_box() {
        let mut rng = SplitMix64(32);
        for _ in 0..6 {
            let x = fixtures::random_pointset(&mut rng);
            for p in x.points() {
                let mins = point_degree(&x, p).unwrap().mins;
                assert!(!mins.is_empty());
                let corner = Bidegree::new(x.s1() - 1, x.s2() - 1);
                for d in &mins {
                    assert!(d.leq(&corner));
                }
                for a in &mins {
                    for b in &mins {
                        if a != b {
                            assert!(!a.leq(b) && !b.leq(a));
                        }
                    }
                }
            }
        }
    }
}
