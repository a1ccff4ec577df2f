//! Structural predicates of a configuration: arithmetically
//! Cohen-Macaulay, complete intersection with type extraction, and the
//! characterizations available for configurations with the cross-point
//! closure property.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bipoly::Bidegree;
use crate::exactlin::RowSpace;
use crate::hilbert::{hf_projection, hf_z, monomial_eval_columns};
use crate::idealgen::proj_vanishing_ideal;
use crate::kdiff::hf_kdiff;
use crate::pointset::{choose_regular_forms, PointSet};
use crate::separators::{has_cayley_bacharach, point_degree, proj_is_cb, proj_reg_index};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the configuration does not have the cross-point closure property")]
    StarRequired,
    #[error("this check applies only to configurations with m = 1")]
    FirstFactorNotLine,
}

/// A complete-intersection type: m generator degrees for the first factor
/// and n for the second, each sorted ascending.
pub type CiType = (Vec<usize>, Vec<usize>);

/// The combined verdicts with supporting evidence.
#[derive(Clone, Debug)]
pub struct Classification {
    pub acm: bool,
    pub product: bool,
    pub star: bool,
    pub cb: bool,
    pub ci: Option<CiType>,
    pub evidence: BTreeMap<String, serde_json::Value>,
}

impl Classification {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "acm": self.acm,
            "product": self.product,
            "star": self.star,
            "cb": self.cb,
            "ci": self.ci.as_ref().map(|(a, b)| serde_json::json!([a, b])),
            "evidence": self.evidence,
        })
    }
}

/// Kernel dimension of multiplication by y_0 on the degree-(i,j) component
/// of R_X/(x_0), computed in coordinates where x_0 and y_0 evaluate to 1 at
/// every point. With E the monomial evaluation map, the component has
/// dimension HF(i,j) − HF(i−1,j), and the image of the multiplication has
/// dimension r_xy(i,j+1) − HF(i−1,j+1), where r_xy is the joint rank of
/// the evaluation vectors of the x_0-divisible and y_0-divisible monomials
/// of degree (i,j+1) — which coincide with the evaluation vectors of the
/// full monomial sets of degrees (i−1,j+1) and (i,j).
fn y0_mult_kernel_dim(frame: &PointSet, i: usize, j: usize) -> usize {
    let s = frame.s();
    let ii = i as isize;
    let jj = j as isize;
    let hf_ij = hf_z(frame, ii, jj);
    let hf_im1_j = hf_z(frame, ii - 1, jj);
    let hf_im1_j1 = hf_z(frame, ii - 1, jj + 1);
    let mut sp = RowSpace::new(s);
    if i > 0 {
        for col in monomial_eval_columns(frame.points(), frame.m, frame.n, Bidegree::new(i - 1, j + 1)) {
            sp.insert(col);
            if sp.rank() == s {
                break;
            }
        }
    }
    if sp.rank() < s {
        for col in monomial_eval_columns(frame.points(), frame.m, frame.n, Bidegree::new(i, j)) {
            sp.insert(col);
            if sp.rank() == s {
                break;
            }
        }
    }
    let r_xy = sp.rank();
    let ker = (hf_ij + hf_im1_j1) as isize - (hf_im1_j + r_xy) as isize;
    assert!(ker >= 0, "kernel dimension formula went negative");
    ker as usize
}

/// True iff the bigraded coordinate ring has depth 2, decided by checking
/// that y_0 acts injectively on R_X/(x_0) in every bidegree of the box
/// [0, s_1] × [0, s_2] (both the Hilbert function and the relevant column
/// spans have stabilized beyond it). Sufficient conditions (cross-point
/// closure, product shape) are asserted as cross-checks.
pub fn is_acm(x: &PointSet) -> bool {
    let frame = choose_regular_forms(x).transform(x);
    let mut acm = true;
    'outer: for i in 0..=frame.s1() {
        for j in 0..=frame.s2() {
            if y0_mult_kernel_dim(&frame, i, j) > 0 {
                acm = false;
                break 'outer;
            }
        }
    }
    if x.has_star_property() || x.is_product() {
        assert!(acm, "a configuration with nested fibers must be ACM");
    }
    acm
}

fn sorted_proj_degrees(points: &[Vec<crate::Rat>]) -> Vec<usize> {
    let gens = proj_vanishing_ideal(points);
    let mut ds: Vec<usize> = gens.degrees().iter().map(|d| d.i).collect();
    ds.sort_unstable();
    ds
}

fn detect_ci_given(x: &PointSet, product: bool, cb: bool) -> Option<CiType> {
    if !product || !cb {
        return None;
    }
    let (_, r1) = hf_projection(x.x1());
    let (_, r2) = hf_projection(x.x2());
    let kd = hf_kdiff(x, true).expect("a product configuration is ACM");
    if kd.hf_at(Bidegree::new(r1, r2)) == 0 {
        return None;
    }
    let dx = sorted_proj_degrees(x.x1());
    let dy = sorted_proj_degrees(x.x2());
    assert_eq!(dx.len(), x.m, "first projection is not a complete intersection");
    assert_eq!(dy.len(), x.n, "second projection is not a complete intersection");
    assert_eq!(r1, dx.iter().sum::<usize>() - x.m, "regularity index mismatch");
    assert_eq!(r2, dy.iter().sum::<usize>() - x.n, "regularity index mismatch");
    Some((dx, dy))
}

/// Complete-intersection test with type extraction: the configuration is a
/// complete intersection iff it is a product with the Cayley-Bacharach
/// property whose Kähler different is nonzero at the regularity pair; the
/// type is read off the projections' vanishing ideals.
pub fn detect_ci(x: &PointSet) -> Option<CiType> {
    detect_ci_given(x, x.is_product(), has_cayley_bacharach(x))
}

/// For a configuration with the cross-point closure property: decides the
/// Cayley-Bacharach property through the fibers (each fiber of both
/// projections a Cayley-Bacharach scheme, with equal regularity indices on
/// each side), returning the verdict and per-fiber evidence.
pub fn star_cb_characterization(
    x: &PointSet,
) -> Result<(bool, BTreeMap<String, serde_json::Value>), ClassifyError> {
    if !x.has_star_property() {
        return Err(ClassifyError::StarRequired);
    }
    let v_fibers: Vec<_> = (0..x.s2()).map(|j| x.v_fiber_points(j)).collect();
    let w_fibers: Vec<_> = (0..x.s1()).map(|i| x.w_fiber_points(i)).collect();
    let v_cb: Vec<bool> = v_fibers.iter().map(|f| proj_is_cb(f)).collect();
    let w_cb: Vec<bool> = w_fibers.iter().map(|f| proj_is_cb(f)).collect();
    let v_reg: Vec<usize> = v_fibers.iter().map(|f| proj_reg_index(f)).collect();
    let w_reg: Vec<usize> = w_fibers.iter().map(|f| proj_reg_index(f)).collect();
    let cond_a = v_cb.iter().all(|&b| b) && v_reg.windows(2).all(|w| w[0] == w[1]);
    let cond_b = w_cb.iter().all(|&b| b) && w_reg.windows(2).all(|w| w[0] == w[1]);
    let mut ev = BTreeMap::new();
    ev.insert("fiber_cond_a".into(), serde_json::json!(cond_a));
    ev.insert("fiber_cond_b".into(), serde_json::json!(cond_b));
    ev.insert("r_V".into(), serde_json::json!(v_reg));
    ev.insert("r_W".into(), serde_json::json!(w_reg));
    Ok((cond_a && cond_b, ev))
}

/// Complete-intersection test specialized to m = 1 with the cross-point
/// closure property: every finite subset of the line is a complete
/// intersection of degree s_1, so the verdict reduces to the
/// Cayley-Bacharach property plus nonvanishing of the Kähler different at
/// (s_1 − 1, r_{X_2}).
pub fn p1pn_ci_check(x: &PointSet) -> Result<Option<CiType>, ClassifyError> {
    if x.m != 1 {
        return Err(ClassifyError::FirstFactorNotLine);
    }
    if !x.has_star_property() {
        return Err(ClassifyError::StarRequired);
    }
    if !has_cayley_bacharach(x) {
        return Ok(None);
    }
    let d1 = x.s1();
    let (_, r2) = hf_projection(x.x2());
    let kd = hf_kdiff(x, true).expect("cross-point closure implies ACM");
    if kd.hf_at(Bidegree::new(d1 - 1, r2)) == 0 {
        return Ok(None);
    }
    let dy = sorted_proj_degrees(x.x2());
    Ok(Some((vec![d1], dy)))
}

/// Runs every predicate, with internal cross-validation between the
/// independent routes (fiber characterization vs. direct Cayley-Bacharach,
/// degree sets vs. ACM, line-specialized vs. general CI detection).
pub fn classification(x: &PointSet) -> Classification {
    let star = x.has_star_property();
    let product = x.is_product();
    let acm = is_acm(x);

    let degree_sets: Vec<Vec<Bidegree>> = x
        .points()
        .iter()
        .map(|p| point_degree(x, p).unwrap().mins)
        .collect();
    let cb = degree_sets.windows(2).all(|w| w[0] == w[1]);
    if degree_sets.iter().any(|mins| mins.len() > 1) {
        assert!(!acm, "an ACM configuration must have singleton degree sets");
    }

    let ci = detect_ci_given(x, product, cb);

    let mut evidence = BTreeMap::new();
    evidence.insert("s".into(), serde_json::json!(x.s()));
    evidence.insert("s1".into(), serde_json::json!(x.s1()));
    evidence.insert("s2".into(), serde_json::json!(x.s2()));
    let (_, r1) = hf_projection(x.x1());
    let (_, r2) = hf_projection(x.x2());
    evidence.insert("reg_pair".into(), serde_json::json!([r1, r2]));
    let mins0: Vec<[usize; 2]> = degree_sets[0].iter().map(|d| [d.i, d.j]).collect();
    evidence.insert("degree_set".into(), serde_json::json!(mins0));
    if acm {
        let kd = hf_kdiff(x, true).unwrap();
        evidence.insert(
            "hf_kdiff_at_reg_pair".into(),
            serde_json::json!(kd.hf_at(Bidegree::new(r1, r2))),
        );
    }
    if star {
        let (via_fibers, ev) = star_cb_characterization(x).unwrap();
        assert_eq!(via_fibers, cb, "fiber characterization disagrees with the direct test");
        evidence.extend(ev);
        if x.m == 1 {
            let specialized = p1pn_ci_check(x).unwrap();
            assert_eq!(specialized, ci, "line-specialized CI test disagrees");
        }
    }

    Classification {
        acm,
        product,
        star,
        cb,
        ci,
        evidence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::pointset::parse_pointset;

    fn six_points() -> PointSet {
        parse_pointset(fixtures::SIX_POINTS).unwrap()
    }

    #[test]
    fn product_is_acm() {
        assert!(is_acm(&six_points()));
    }

    #[test]
    fn diagonal_is_not_acm() {
        let x = parse_pointset("m 1\nn 1\npoint 1 0 | 1 0\npoint 0 1 | 0 1\n").unwrap();
        assert!(!is_acm(&x));
    }

    #[test]
    fn twenty_four_points_is_acm() {
        let x = parse_pointset(fixtures::TWENTY_FOUR_POINTS).unwrap();
        assert!(x.has_star_property());
        assert!(is_acm(&x));
    }

    #[test]
    fn grid_is_ci_2_2() {
        let x = parse_pointset(fixtures::GRID_2X2).unwrap();
        assert_eq!(detect_ci(&x), Some((vec![2], vec![2])));
        assert_eq!(p1pn_ci_check(&x).unwrap(), Some((vec![2], vec![2])));
    }

    #[test]
    fn six_points_is_not_ci() {
        let x = six_points();
        assert_eq!(detect_ci(&x), None);
        assert_eq!(p1pn_ci_check(&x).unwrap(), None);
    }

    #[test]
    fn star_characterization_on_l_shape() {
        let x = parse_pointset("m 1\nn 1\npoint 1 0 | 1 0\npoint 1 0 | 1 1\npoint 1 1 | 1 0\n")
            .unwrap();
        assert!(x.has_star_property());
        let (cb, _) = star_cb_characterization(&x).unwrap();
        assert!(!cb);
    }

    #[test]
    fn star_characterization_requires_star() {
        let x = parse_pointset("m 1\nn 1\npoint 1 0 | 1 0\npoint 0 1 | 0 1\n").unwrap();
        assert_eq!(
            star_cb_characterization(&x).unwrap_err(),
            ClassifyError::StarRequired
        );
    }

    #[test]
    fn classification_of_six_points() {
        let c = classification(&six_points());
        assert!(c.acm && c.product && c.star && c.cb);
        assert_eq!(c.ci, None);
        assert_eq!(c.evidence["hf_kdiff_at_reg_pair"], serde_json::json!(0));
    }

    #[test]
    fn classification_json_shape() {
        let x = parse_pointset(fixtures::GRID_2X2).unwrap();
        let j = classification(&x).to_json();
        assert_eq!(j["acm"], serde_json::json!(true));
        assert_eq!(j["ci"], serde_json::json!([[2], [2]]));
        assert!(j["evidence"].is_object());
    }
}
