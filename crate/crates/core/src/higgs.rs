//! Twisted Higgs fields on a trivialized bundle `F ≅ O^d`, represented as
//! commuting tuples of constant matrices, and the Hitchin morphism.

use crate::error::{check_field, Error, Result};
use crate::hitchin::HitchinPoint;
use crate::matrix::Matrix;
use crate::poly::GradedPoly;
use crate::scalar::Field;

/// `θ = Σ_k A_k x_k`, with pairwise commuting `A_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsField {
    field: Field,
    rank: usize,
    components: Vec<Matrix>,
}

/// Checks the integrability condition `θ ∧ θ = 0`, i.e. `[A_j, A_k] = 0`.
pub fn validate_higgs(field: Field, components: Vec<Matrix>) -> Result<HiggsField> {
    if components.is_empty() {
        return Err(Error::DimensionMismatch("a Higgs field needs d >= 1 components".into()));
    }
    let rank = components[0].nrows();
    for a in &components {
        check_field(field, a.field())?;
        if !a.is_square() || a.nrows() != rank {
            return Err(Error::DimensionMismatch(format!(
                "component is {}x{}, expected {rank}x{rank}",
                a.nrows(),
                a.ncols()
            )));
        }
    }
    for j in 0..components.len() {
        for k in j + 1..components.len() {
            if !components[j].commutes_with(&components[k]) {
                return Err(Error::NotHiggs(j + 1, k + 1));
            }
        }
    }
    Ok(HiggsField {
        field,
        rank,
        components,
    })
}

impl HiggsField {
    /// The neutral element for [`direct_sum`].
    pub fn rank_zero(field: Field, dim: usize) -> HiggsField {
        HiggsField {
            field,
            rank: 0,
            components: vec![Matrix::zeros(field, 0, 0); dim],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    /// The r×r matrix of linear forms `Σ_k A_k x_k`.
    pub fn linear_matrix(&self) -> PolyMatrix {
        let (f, d, r) = (self.field, self.dim(), self.rank);
        let mut m = vec![vec![GradedPoly::zero(f, d); r]; r];
        for (k, a) in self.components.iter().enumerate() {
            let xk = GradedPoly::var(f, d, k);
            for (i, row) in m.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    let c = a.get(i, j);
                    if !c.is_zero() {
                        *e = &*e + &xk.scale(c);
                    }
                }
            }
        }
        m
    }
}

pub type PolyMatrix = Vec<Vec<GradedPoly>>;

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, zero: &GradedPoly) -> PolyMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![zero.clone(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = &out[i][j] + &(&a[i][k] * &bk[j]);
            }
        }
    }
    out
}

fn trace(a: &PolyMatrix, zero: &GradedPoly) -> GradedPoly {
    a.iter()
        .enumerate()
        .fold(zero.clone(), |acc, (i, row)| &acc + &row[i])
}

/// `(tr θ, tr θ², …, tr θ^r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerTraces {
    pub traces: Vec<GradedPoly>,
}

pub fn power_traces(theta: &HiggsField) -> PowerTraces {
    let m = theta.linear_matrix();
    let zero = GradedPoly::zero(theta.field, theta.dim());
    let mut traces = Vec::with_capacity(theta.rank);
    let mut power = m.clone();
    for i in 0..theta.rank {
        if i > 0 {
            power = mat_mul(&power, &m, &zero);
        }
        traces.push(trace(&power, &zero));
    }
    PowerTraces { traces }
}

/// Coefficients of `det(y I − A)`, highest degree first, by the
/// division-free Berkowitz recursion.
pub fn berkowitz(a: &PolyMatrix, zero: &GradedPoly, one: &GradedPoly) -> Vec<GradedPoly> {
    let n = a.len();
    let mut poly = vec![one.clone()];
    // Peel off leading principal blocks from the bottom-right corner up.
    for start in (0..n).rev() {
        let size = n - start;
        let a11 = &a[start][start];
        let row: Vec<&GradedPoly> = (start + 1..n).map(|j| &a[start][j]).collect();
        let mut col: Vec<GradedPoly> = (start + 1..n).map(|i| a[i][start].clone()).collect();
        // Toeplitz column: 1, -a11, -R C, -R A1 C, …, -R A1^{size-2} C
        let mut toeplitz = Vec::with_capacity(size + 1);
        toeplitz.push(one.clone());
        toeplitz.push(-a11);
        for _ in 0..size.saturating_sub(1) {
            let rc = row
                .iter()
                .zip(&col)
                .fold(zero.clone(), |acc, (r, c)| &acc + &(*r * c));
            toeplitz.push(-&rc);
            col = (start + 1..n)
                .map(|i| {
                    (start + 1..n)
                        .zip(&col)
                        .fold(zero.clone(), |acc, (j, c)| &acc + &(&a[i][j] * c))
                })
                .collect();
        }
        let mut next = vec![zero.clone(); size + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j {
                    *slot = &*slot + &(&toeplitz[i - j] * p);
                }
            }
        }
        poly = next;
    }
    poly
}

fn check_char(field: Field, r: usize) -> Result<()> {
    let p = field.characteristic();
    if p != 0 && p as usize <= r {
        return Err(Error::CharTooSmall { p, r });
    }
    Ok(())
}

fn elementary_from_desc(desc: &[GradedPoly]) -> Vec<GradedPoly> {
    desc.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
        .collect()
}

/// The Hitchin morphism at `θ`: `(s_1, …, s_r)` with
/// `det(y − θ) = y^r − s_1 y^{r−1} + … + (−1)^r s_r`.
pub fn char_poly(theta: &HiggsField) -> HitchinPoint {
    let (f, d) = (theta.field, theta.dim());
    let desc = berkowitz(
        &theta.linear_matrix(),
        &GradedPoly::zero(f, d),
        &GradedPoly::one(f, d),
    );
    HitchinPoint::new(f, d, elementary_from_desc(&desc)).expect("char poly coefficients are graded")
}

/// Faddeev–LeVerrier; divides by `1, …, r`, so only defined when the
/// characteristic is 0 or exceeds `r`.
pub fn char_poly_faddeev(theta: &HiggsField) -> Result<HitchinPoint> {
    let (f, d, r) = (theta.field, theta.dim(), theta.rank);
    check_char(f, r)?;
    let zero = GradedPoly::zero(f, d);
    let one = GradedPoly::one(f, d);
    let a = theta.linear_matrix();
    // desc[k] is the coefficient of y^{r-k}
    let mut desc = vec![one.clone()];
    let mut mk: PolyMatrix = vec![vec![zero.clone(); r]; r];
    for k in 1..=r {
        let mut next = mat_mul(&a, &mk, &zero);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &desc[k - 1];
        }
        mk = next;
        let tr = trace(&mat_mul(&a, &mk, &zero), &zero);
        let inv_k = f.from_i64(k as i64).inv().expect("k invertible");
        desc.push(-&tr.scale(&inv_k));
    }
    HitchinPoint::new(f, d, elementary_from_desc(&desc))
}

/// Power sums to elementary symmetric functions by Newton's identities.
pub fn power_to_elementary(p: &PowerTraces, field: Field, nvars: usize) -> Result<HitchinPoint> {
    let r = p.traces.len();
    check_char(field, r)?;
    let mut e = vec![GradedPoly::one(field, nvars)];
    for k in 1..=r {
        let mut acc = GradedPoly::zero(field, nvars);
        for i in 1..=k {
            let term = &e[k - i] * &p.traces[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        let inv_k = field.from_i64(k as i64).inv().expect("k invertible");
        e.push(acc.scale(&inv_k));
    }
    HitchinPoint::new(field, nvars, e.split_off(1))
}

/// Elementary symmetric functions to power sums by Newton's identities.
pub fn elementary_to_power(s: &HitchinPoint) -> Result<PowerTraces> {
    let (field, nvars, r) = (s.field(), s.nvars(), s.rank());
    check_char(field, r)?;
    let one = GradedPoly::one(field, nvars);
    let e = |i: usize| if i == 0 { one.clone() } else { s.coeffs()[i - 1].clone() };
    let mut p: Vec<GradedPoly> = Vec::with_capacity(r);
    for k in 1..=r {
        let ke = e(k).scale(&field.from_i64(k as i64));
        let mut acc = if k % 2 == 1 { ke } else { -&ke };
        for i in 1..k {
            let term = &e(k - i) * &p[i - 1];
            acc = if (k - 1 + i) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        p.push(acc);
    }
    Ok(PowerTraces { traces: p })
}

/// Input to [`newton_convert`]; the output is the other presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricData {
    Power(PowerTraces),
    Elementary(HitchinPoint),
}

pub fn newton_convert(input: &SymmetricData, field: Field, nvars: usize) -> Result<SymmetricData> {
    match input {
        SymmetricData::Power(p) => power_to_elementary(p, field, nvars).map(SymmetricData::Elementary),
        SymmetricData::Elementary(s) => elementary_to_power(s).map(SymmetricData::Power),
    }
}

/// Block-diagonal direct sum `θ1 ⊕ θ2`.
pub fn direct_sum(a: &HiggsField, b: &HiggsField) -> Result<HiggsField> {
    check_field(a.field, b.field)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "d = {} vs d = {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(HiggsField {
        field: a.field,
        rank: a.rank + b.rank,
        components: a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.direct_sum(y))
            .collect(),
    })
}
