//! Sparse multivariate polynomials over a [`Field`], linear forms, and the
//! spectral-variable layer `YPoly` (polynomials in `y` whose coefficients
//! are multivariate polynomials in `x_1, …, x_d`).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{check_field, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `x_1, …, x_d`. Zero coefficients are never stored, so
/// structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedPoly {
    pub fn zero(field: Field, nvars: usize) -> GradedPoly {
        GradedPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> GradedPoly {
        GradedPoly::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(field: Field, nvars: usize) -> GradedPoly {
        GradedPoly::constant(field, nvars, field.one())
    }

    /// The coordinate `x_{i+1}` (0-based index `i`).
    pub fn var(field: Field, nvars: usize, i: usize) -> GradedPoly {
        GradedPoly::from_terms(field, nvars, [(Monomial::var(nvars, i), field.one())])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> GradedPoly {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length");
            assert_eq!(c.field(), field, "coefficient field");
            match map.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        GradedPoly {
            field,
            nvars,
            terms: map,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficient of the greatest monomial, if nonzero.
    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// True when every term has total degree `deg` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == deg)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn scale(&self, c: &Scalar) -> GradedPoly {
        GradedPoly::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)),
        )
    }

    pub fn pow(&self, e: u32) -> GradedPoly {
        let mut acc = GradedPoly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_compat(&self, other: &GradedPoly) {
        assert_eq!(self.field, other.field, "polynomial field mismatch");
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
    }

    /// Exact evaluation at a point of `k^d`.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        for c in point {
            check_field(self.field, c.field())?;
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Linear change of variables `x_j ↦ Σ_k sub[j][k] x_k`.
    pub fn substitute_linear(&self, sub: &Matrix) -> GradedPoly {
        assert_eq!(sub.nrows(), self.nvars);
        assert_eq!(sub.ncols(), self.nvars);
        let images: Vec<GradedPoly> = (0..self.nvars)
            .map(|j| LinearForm::new(self.field, sub.row(j).to_vec()).to_poly())
            .collect();
        let mut power_cache: BTreeMap<(usize, u32), GradedPoly> = BTreeMap::new();
        let mut acc = GradedPoly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(self.field, self.nvars, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power_cache
                    .entry((j, e))
                    .or_insert_with(|| images[j].pow(e));
                t = &t * p;
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.check_compat(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(e) => *e = &*e + c,
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        GradedPoly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self + &(-rhs)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.check_compat(rhs);
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        GradedPoly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", c, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A homogeneous degree-1 element `Σ c_k x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> LinearForm {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        LinearForm { field, coeffs }
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> LinearForm {
        LinearForm::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field, nvars: usize) -> LinearForm {
        LinearForm::new(field, vec![field.zero(); nvars])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .zip(point)
            .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn to_poly(&self) -> GradedPoly {
        let n = self.coeffs.len();
        GradedPoly::from_terms(
            self.field,
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    /// Reads back a polynomial that is homogeneous of degree 1.
    pub fn from_poly(p: &GradedPoly) -> Option<LinearForm> {
        if !p.is_homogeneous(1) {
            return None;
        }
        let n = p.nvars();
        Some(LinearForm::new(
            p.field(),
            (0..n).map(|i| p.coeff(&Monomial::var(n, i))).collect(),
        ))
    }

    /// The matrix acts on the coefficient column vector.
    pub fn act(&self, g: &Matrix) -> LinearForm {
        LinearForm::new(self.field, g.mul_vec(&self.coeffs))
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Ord for LinearForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl PartialOrd for LinearForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A polynomial in the spectral variable `y`; `coeffs[j]` multiplies `y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoly {
    field: Field,
    nvars: usize,
    coeffs: Vec<GradedPoly>,
}

impl YPoly {
    pub fn new(field: Field, nvars: usize, mut coeffs: Vec<GradedPoly>) -> YPoly {
        while coeffs.last().is_some_and(GradedPoly::is_zero) {
            coeffs.pop();
        }
        YPoly {
            field,
            nvars,
            coeffs,
        }
    }

    pub fn one(field: Field, nvars: usize) -> YPoly {
        YPoly::new(field, nvars, vec![GradedPoly::one(field, nvars)])
    }

    /// `y - t`.
    pub fn linear(t: &LinearForm) -> YPoly {
        let f = t.field();
        let n = t.nvars();
        YPoly::new(f, n, vec![-&t.to_poly(), GradedPoly::one(f, n)])
    }

    /// `∏ (y - t)` over the given roots.
    pub fn from_roots<'a>(
        field: Field,
        nvars: usize,
        roots: impl IntoIterator<Item = &'a LinearForm>,
    ) -> YPoly {
        roots
            .into_iter()
            .fold(YPoly::one(field, nvars), |acc, t| acc.mul(&YPoly::linear(t)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == GradedPoly::one(self.field, self.nvars))
    }

    pub fn coeff(&self, j: usize) -> GradedPoly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| GradedPoly::zero(self.field, self.nvars))
    }

    pub fn mul(&self, rhs: &YPoly) -> YPoly {
        if self.is_zero() || rhs.is_zero() {
            return YPoly::new(self.field, self.nvars, vec![]);
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![GradedPoly::zero(self.field, self.nvars); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        YPoly::new(self.field, self.nvars, out)
    }

    /// Synthetic division by `y - t`: returns `(q, rem)` with
    /// `self = (y - t)·q + rem` and `rem` free of `y`.
    pub fn divrem_linear(&self, t: &LinearForm) -> (YPoly, GradedPoly) {
        let zero = GradedPoly::zero(self.field, self.nvars);
        let Some(deg) = self.degree() else {
            return (self.clone(), zero);
        };
        if deg == 0 {
            return (YPoly::new(self.field, self.nvars, vec![]), self.coeffs[0].clone());
        }
        let tp = t.to_poly();
        let mut q = vec![zero.clone(); deg];
        q[deg - 1] = self.coeffs[deg].clone();
        for k in (1..deg).rev() {
            q[k - 1] = &self.coeffs[k] + &(&tp * &q[k]);
        }
        let rem = &self.coeffs[0] + &(&tp * &q[0]);
        (YPoly::new(self.field, self.nvars, q), rem)
    }

    /// Specializes the `x` variables, giving a univariate polynomial in `y`
    /// (coefficients ascending).
    pub fn specialize(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }
}

/// Recovers the unique linear form through `samples` by solving the exact
/// linear system; extra samples are checked for consistency.
pub fn interpolate_linear(
    field: Field,
    nvars: usize,
    samples: &[(Vec<Scalar>, Scalar)],
) -> Result<LinearForm> {
    if samples.len() < nvars {
        return Err(Error::RankDeficient);
    }
    let mut aug = Matrix::zeros(field, samples.len(), nvars + 1);
    for (i, (pt, val)) in samples.iter().enumerate() {
        if pt.len() != nvars {
            return Err(Error::DimensionMismatch(format!(
                "sample point has {} coordinates, expected {nvars}",
                pt.len()
            )));
        }
        for (j, c) in pt.iter().enumerate() {
            check_field(field, c.field())?;
            aug.set(i, j, c.clone());
        }
        check_field(field, val.field())?;
        aug.set(i, nvars, val.clone());
    }
    let pivots = aug.rref();
    let coeff_rank = pivots.iter().filter(|&&c| c < nvars).count();
    if coeff_rank < nvars {
        return Err(Error::RankDeficient);
    }
    if pivots.contains(&nvars) {
        return Err(Error::Inconsistent);
    }
    Ok(LinearForm::new(
        field,
        (0..nvars).map(|i| aug.get(i, nvars).clone()).collect(),
    ))
}
