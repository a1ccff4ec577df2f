//! Bihomogeneous polynomials in two blocks of variables X_0..X_m and
//! Y_0..Y_n over exact rationals: arithmetic, partial derivatives,
//! determinants, evaluation, and per-bidegree monomial bases.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::Rat;

/// A bidegree (i, j): degree i in the X-block, j in the Y-block.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Bidegree {
    pub i: usize,
    pub j: usize,
}

impl Bidegree {
    pub fn new(i: usize, j: usize) -> Self {
        Bidegree { i, j }
    }

    /// Componentwise partial order: self ⪯ other.
    pub fn leq(&self, other: &Bidegree) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    /// Componentwise difference; None if not self ⪰ other.
    pub fn checked_sub(&self, other: &Bidegree) -> Option<Bidegree> {
        if other.leq(self) {
            Some(Bidegree::new(self.i - other.i, self.j - other.j))
        } else {
            None
        }
    }

    /// Key for the fixed linear extension of ⪯ used when iterating degrees:
    /// graded lex on (i + j, i).
    pub fn graded_lex_key(&self) -> (usize, usize) {
        (self.i + self.j, self.i)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// One of the ambient variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X(usize),
    Y(usize),
}

type Mono = (Vec<u32>, Vec<u32>);

/// A polynomial in K[X_0..X_m, Y_0..Y_n] stored as a sparse term map.
/// The zero polynomial has an empty map; coefficients are never zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    pub m: usize,
    pub n: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl BiPoly {
    pub fn zero(m: usize, n: usize) -> Self {
        BiPoly {
            m,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize, n: usize) -> Self {
        Self::monomial(m, n, vec![0; m + 1], vec![0; n + 1], Rat::one())
    }

    pub fn var(m: usize, n: usize, v: Var) -> Self {
        let mut xe = vec![0; m + 1];
        let mut ye = vec![0; n + 1];
        match v {
            Var::X(k) => xe[k] = 1,
            Var::Y(l) => ye[l] = 1,
        }
        Self::monomial(m, n, xe, ye, Rat::one())
    }

    pub fn monomial(m: usize, n: usize, xe: Vec<u32>, ye: Vec<u32>, c: Rat) -> Self {
        assert_eq!(xe.len(), m + 1);
        assert_eq!(ye.len(), n + 1);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((xe, ye), c);
        }
        BiPoly { m, n, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, mono: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        assert_eq!((self.m, self.n), (other.m, other.n));
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero(self.m, self.n);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * k;
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        assert_eq!((self.m, self.n), (other.m, other.n));
        let mut out = BiPoly::zero(self.m, self.n);
        for ((xa, ya), ca) in &self.terms {
            for ((xb, yb), cb) in &other.terms {
                let xe: Vec<u32> = xa.iter().zip(xb).map(|(a, b)| a + b).collect();
                let ye: Vec<u32> = ya.iter().zip(yb).map(|(a, b)| a + b).collect();
                out.add_term((xe, ye), ca * cb);
            }
        }
        out
    }

    /// Formal partial derivative.
    pub fn diff(&self, v: Var) -> BiPoly {
        let mut out = BiPoly::zero(self.m, self.n);
        for ((xe, ye), c) in &self.terms {
            let (mut xe, mut ye) = (xe.clone(), ye.clone());
            let e = match v {
                Var::X(k) => {
                    let e = xe[k];
                    if e > 0 {
                        xe[k] -= 1;
                    }
                    e
                }
                Var::Y(l) => {
                    let e = ye[l];
                    if e > 0 {
                        ye[l] -= 1;
                    }
                    e
                }
            };
            if e > 0 {
                out.add_term((xe, ye), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact substitution at a pair of affine representatives.
    pub fn eval(&self, a: &[Rat], b: &[Rat]) -> Rat {
        assert_eq!(a.len(), self.m + 1, "X-coordinate length mismatch");
        assert_eq!(b.len(), self.n + 1, "Y-coordinate length mismatch");
        let mut acc = Rat::zero();
        for ((xe, ye), c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in a.iter().zip(xe) {
                for _ in 0..e {
                    t *= v;
                }
            }
            for (v, &e) in b.iter().zip(ye) {
                for _ in 0..e {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// The bidegree if bihomogeneous (zero polynomial returns None).
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys();
        let (xe, ye) = it.next()?;
        let d = Bidegree::new(
            xe.iter().sum::<u32>() as usize,
            ye.iter().sum::<u32>() as usize,
        );
        for (xe, ye) in it {
            if xe.iter().sum::<u32>() as usize != d.i || ye.iter().sum::<u32>() as usize != d.j {
                return None;
            }
        }
        Some(d)
    }

    /// Coefficient vector with respect to `monomial_basis(m, n, d)`.
    /// Panics if a term falls outside bidegree d.
    pub fn coeff_vector(&self, d: Bidegree) -> Vec<Rat> {
        let basis = monomial_exponents(self.m, self.n, d);
        let index: BTreeMap<&Mono, usize> =
            basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut v = vec![Rat::zero(); basis.len()];
        for (mono, c) in &self.terms {
            let k = index
                .get(mono)
                .unwrap_or_else(|| panic!("term outside bidegree {d}"));
            v[*k] = c.clone();
        }
        v
    }

    /// Reconstructs a polynomial from a coefficient vector over
    /// `monomial_basis(m, n, d)`.
    pub fn from_coeff_vector(m: usize, n: usize, d: Bidegree, v: &[Rat]) -> BiPoly {
        let basis = monomial_exponents(m, n, d);
        assert_eq!(v.len(), basis.len());
        let mut out = BiPoly::zero(m, n);
        for (mono, c) in basis.into_iter().zip(v) {
            out.add_term(mono, c.clone());
        }
        out
    }
}

impl BiPoly {
    /// Lifts a polynomial of the first factor (represented with n = 0)
    /// into the full ring with n Y-variables.
    pub fn embed_x(&self, n: usize) -> BiPoly {
        assert_eq!(self.n, 0);
        let mut out = BiPoly::zero(self.m, n);
        for ((xe, _), c) in &self.terms {
            out.add_term((xe.clone(), vec![0; n + 1]), c.clone());
        }
        out
    }

    /// Lifts a polynomial of the second factor (its variables become the
    /// Y-block) into the full ring with m X-variables.
    pub fn embed_y(&self, m: usize) -> BiPoly {
        assert_eq!(self.n, 0);
        let mut out = BiPoly::zero(m, self.m);
        for ((xe, _), c) in &self.terms {
            out.add_term((vec![0; m + 1], xe.clone()), c.clone());
        }
        out
    }
}

/// Degrevlex comparison on exponent vectors of equal total degree:
/// a precedes b when a is larger, i.e. the last nonzero entry of a - b
/// is negative.
fn degrevlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Less => return Ordering::Less,
            Ordering::Greater => return Ordering::Greater,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Exponent tuples of the degree-d monomials in a single block of `vars`
/// variables, degrevlex descending. Used for computations on one factor.
pub fn single_monomial_exponents(vars: usize, d: usize) -> Vec<Vec<u32>> {
    let mut xs = compositions(d as u32, vars);
    xs.sort_by(|a, b| degrevlex_desc(a, b));
    xs
}

/// Exponent tuples of all monomials of bidegree d, in the canonical order:
/// degrevlex descending within each factor, X-block varying slowest.
pub fn monomial_exponents(m: usize, n: usize, d: Bidegree) -> Vec<Mono> {
    let mut xs = compositions(d.i as u32, m + 1);
    xs.sort_by(|a, b| degrevlex_desc(a, b));
    let mut ys = compositions(d.j as u32, n + 1);
    ys.sort_by(|a, b| degrevlex_desc(a, b));
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for xe in &xs {
        for ye in &ys {
            out.push((xe.clone(), ye.clone()));
        }
    }
    out
}

/// All monomials of bidegree d as polynomials, canonical order.
/// Length is C(i+m, m) · C(j+n, n).
pub fn monomial_basis(m: usize, n: usize, d: Bidegree) -> Vec<BiPoly> {
    monomial_exponents(m, n, d)
        .into_iter()
        .map(|(xe, ye)| BiPoly::monomial(m, n, xe, ye, Rat::one()))
        .collect()
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(mat: &[Vec<BiPoly>], m: usize, n: usize) -> BiPoly {
    let k = mat.len();
    for row in mat {
        assert_eq!(row.len(), k, "poly_det requires a square matrix");
    }
    if k == 0 {
        return BiPoly::one(m, n);
    }
    if k == 1 {
        return mat[0][0].clone();
    }
    let mut acc = BiPoly::zero(m, n);
    for c in 0..k {
        if mat[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BiPoly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let cof = mat[0][c].mul(&poly_det(&minor, m, n));
        acc = if c % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}

impl fmt::Display for BiPoly {
    /// Canonical rendering: terms in map order, variables written as
    /// `x[k]` / `y[l]`, e.g. `x[0]*x[1] - x[1]^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|((xa, ya), _), ((xb, yb), _)| {
            let da: u32 = xa.iter().chain(ya.iter()).sum();
            let db: u32 = xb.iter().chain(yb.iter()).sum();
            db.cmp(&da)
                .then_with(|| degrevlex_desc(xa, xb))
                .then_with(|| degrevlex_desc(ya, yb))
        });
        for (k, ((xe, ye), c)) in ordered.into_iter().enumerate() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in xe.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x[{i}]")),
                    _ => factors.push(format!("x[{i}]^{e}")),
                }
            }
            for (j, &e) in ye.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("y[{j}]")),
                    _ => factors.push(format!("y[{j}]^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
