//! Points of the Hitchin base `A^{r,F} = ⊕ Sym^i` and of its projective
//! completion, together with the multiplication (direct-sum) maps.
//!
//! Sign convention: a point `(s_1, …, s_r)` stands for the monic polynomial
//! `y^r − s_1 y^{r−1} + s_2 y^{r−2} − … + (−1)^r s_r`.

use std::fmt;

use crate::error::{check_field, Error, Result};
use crate::poly::{GradedPoly, LinearForm, YPoly};
use crate::scalar::{Field, Scalar};

fn sign(i: usize, p: &GradedPoly) -> GradedPoly {
    if i.is_multiple_of(2) {
        p.clone()
    } else {
        -p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HitchinPoint {
    field: Field,
    nvars: usize,
    coeffs: Vec<GradedPoly>,
}

impl HitchinPoint {
    /// Validates that `coeffs[i-1]` is homogeneous of degree `i`.
    pub fn new(field: Field, nvars: usize, coeffs: Vec<GradedPoly>) -> Result<HitchinPoint> {
        for (i, c) in coeffs.iter().enumerate() {
            check_field(field, c.field())?;
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "s_{} has {} variables, expected {nvars}",
                    i + 1,
                    c.nvars()
                )));
            }
            if !c.is_homogeneous(i as u32 + 1) {
                return Err(Error::NotHomogeneous { index: i + 1 });
            }
        }
        Ok(HitchinPoint {
            field,
            nvars,
            coeffs,
        })
    }

    /// The point `y^r`.
    pub fn zero(field: Field, nvars: usize, r: usize) -> HitchinPoint {
        HitchinPoint {
            field,
            nvars,
            coeffs: vec![GradedPoly::zero(field, nvars); r],
        }
    }

    /// Elementary symmetric functions of the roots.
    pub fn from_roots<'a>(
        field: Field,
        nvars: usize,
        roots: impl IntoIterator<Item = &'a LinearForm>,
    ) -> HitchinPoint {
        HitchinPoint::from_ypoly(&YPoly::from_roots(field, nvars, roots))
            .expect("product of linear factors is monic and graded")
    }

    /// Reads the coefficients of a monic y-polynomial.
    pub fn from_ypoly(p: &YPoly) -> Result<HitchinPoint> {
        if !p.is_monic() {
            return Err(Error::Parse("y-polynomial is not monic".into()));
        }
        let r = p.degree().unwrap_or(0);
        let coeffs = (1..=r).map(|i| sign(i, &p.coeff(r - i))).collect();
        HitchinPoint::new(p.field(), p.nvars(), coeffs)
    }

    pub fn to_ypoly(&self) -> YPoly {
        let r = self.rank();
        let mut c = vec![GradedPoly::zero(self.field, self.nvars); r + 1];
        c[r] = GradedPoly::one(self.field, self.nvars);
        for (i, s) in self.coeffs.iter().enumerate() {
            c[r - i - 1] = sign(i + 1, s);
        }
        YPoly::new(self.field, self.nvars, c)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    pub fn map_coeffs(&self, f: impl Fn(&GradedPoly) -> GradedPoly) -> HitchinPoint {
        HitchinPoint {
            field: self.field,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub(crate) fn check_compat(&self, other: &HitchinPoint) -> Result<()> {
        check_field(self.field, other.field)?;
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "d = {} vs d = {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }
}

impl fmt::Display for HitchinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The multiplication map `A^{p} × A^{q} → A^{p+q}`: coefficients of the
/// product of the two monic y-polynomials.
pub fn hb_product(s: &HitchinPoint, t: &HitchinPoint) -> Result<HitchinPoint> {
    s.check_compat(t)?;
    HitchinPoint::from_ypoly(&s.to_ypoly().mul(&t.to_ypoly()))
}

/// Multiset of linear forms, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootMultiset {
    roots: Vec<LinearForm>,
}

impl RootMultiset {
    pub fn new(mut roots: Vec<LinearForm>) -> RootMultiset {
        roots.sort();
        RootMultiset { roots }
    }

    pub fn empty() -> RootMultiset {
        RootMultiset { roots: vec![] }
    }

    pub fn roots(&self) -> &[LinearForm] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Distinct roots with their multiplicities, in sorted order.
    pub fn multiplicities(&self) -> Vec<(LinearForm, usize)> {
        let mut out: Vec<(LinearForm, usize)> = Vec::new();
        for t in &self.roots {
            match out.last_mut() {
                Some((u, m)) if u == t => *m += 1,
                _ => out.push((t.clone(), 1)),
            }
        }
        out
    }

    pub fn to_point(&self, field: Field, nvars: usize) -> HitchinPoint {
        HitchinPoint::from_roots(field, nvars, &self.roots)
    }
}

impl fmt::Display for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// A point `[s_0 : s_1 : … : s_r]` of the projective completion, stored in
/// normalized form (first nonzero coordinate has leading coefficient 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjHitchinPoint {
    field: Field,
    nvars: usize,
    s0: Scalar,
    coeffs: Vec<GradedPoly>,
}

impl ProjHitchinPoint {
    pub fn new(
        field: Field,
        nvars: usize,
        s0: Scalar,
        coeffs: Vec<GradedPoly>,
    ) -> Result<ProjHitchinPoint> {
        check_field(field, s0.field())?;
        // reuse the affine validation for s_1..s_r
        let affine = HitchinPoint::new(field, nvars, coeffs)?;
        if s0.is_zero() && affine.coeffs.iter().all(GradedPoly::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let mut p = ProjHitchinPoint {
            field,
            nvars,
            s0,
            coeffs: affine.coeffs,
        };
        p.normalize();
        Ok(p)
    }

    /// The affine chart `s_0 = 1`.
    pub fn from_affine(s: &HitchinPoint) -> ProjHitchinPoint {
        ProjHitchinPoint {
            field: s.field,
            nvars: s.nvars,
            s0: s.field.one(),
            coeffs: s.coeffs.clone(),
        }
    }

    pub fn to_affine(&self) -> Option<HitchinPoint> {
        if self.s0.is_zero() {
            return None;
        }
        let inv = self.s0.inv()?;
        Some(HitchinPoint {
            field: self.field,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|c| c.scale(&inv)).collect(),
        })
    }

    fn normalize(&mut self) {
        let lead = if !self.s0.is_zero() {
            self.s0.clone()
        } else {
            self.coeffs
                .iter()
                .find_map(|c| c.leading_coeff().cloned())
                .expect("nonzero point")
        };
        let inv = lead.inv().expect("nonzero");
        self.s0 = &self.s0 * &inv;
        for c in &mut self.coeffs {
            *c = c.scale(&inv);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn s0(&self) -> &Scalar {
        &self.s0
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    pub fn is_zero_tuple(&self) -> bool {
        self.s0.is_zero() && self.coeffs.iter().all(GradedPoly::is_zero)
    }
}

impl fmt::Display for ProjHitchinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.s0)?;
        for c in &self.coeffs {
            write!(f, " : {c}")?;
        }
        write!(f, "]")
    }
}

/// The extension of [`hb_product`] to the projective completion. With the
/// alternating signs, `v_k = Σ_{i+j=k} s_i t_j` for `0 ≤ k ≤ r_1 + r_2`.
pub fn proj_product(a: &ProjHitchinPoint, b: &ProjHitchinPoint) -> Result<ProjHitchinPoint> {
    check_field(a.field, b.field)?;
    if a.nvars != b.nvars {
        return Err(Error::DimensionMismatch(format!(
            "d = {} vs d = {}",
            a.nvars, b.nvars
        )));
    }
    if a.is_zero_tuple() || b.is_zero_tuple() {
        return Err(Error::ZeroPoint);
    }
    let (f, n) = (a.field, a.nvars);
    let lift = |p: &ProjHitchinPoint| -> Vec<GradedPoly> {
        std::iter::once(GradedPoly::constant(f, n, p.s0.clone()))
            .chain(p.coeffs.iter().cloned())
            .collect()
    };
    let (u, w) = (lift(a), lift(b));
    let mut v = vec![GradedPoly::zero(f, n); u.len() + w.len() - 1];
    for (i, ui) in u.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            v[i + j] = &v[i + j] + &(ui * wj);
        }
    }
    let s0 = v[0].constant_term();
    ProjHitchinPoint::new(f, n, s0, v.split_off(1))
}
