//! Finite affine group actions on the torus `ℝⁿ/ℤⁿ`: fixed loci, the
//! components `Y_{σ,τ}` of `Y ×_X Y` meeting the diagonal, connecting
//! groups and the ramification type of the quotient map `Y → Y/G`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{determinant, hermite_normal_form, IntMatrix};
use crate::matrix::Matrix;
use crate::scalar::Field;

pub const DEFAULT_TORUS_ORDER_BOUND: usize = 4096;

fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// `x ↦ A x + b (mod ℤⁿ)` with `A ∈ GL(n, ℤ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineTorusMap {
    a: IntMatrix,
    b: Vec<BigRational>,
}

impl AffineTorusMap {
    pub fn new(a: IntMatrix, b: Vec<BigRational>) -> Result<AffineTorusMap> {
        let n = a.len();
        if a.iter().any(|r| r.len() != n) || b.len() != n || n == 0 {
            return Err(Error::InvalidAction(format!(
                "affine map needs a square {n}x{n} matrix and {n} translations"
            )));
        }
        let det = determinant(&a);
        if det != BigInt::one() && det != -BigInt::one() {
            return Err(Error::InvalidAction(format!("det A = {det}, expected ±1")));
        }
        Ok(AffineTorusMap {
            a,
            b: b.iter().map(frac).collect(),
        })
    }

    pub fn from_i64(a: &[&[i64]], b: &[(i64, i64)]) -> Result<AffineTorusMap> {
        AffineTorusMap::new(
            a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            b.iter()
                .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    pub fn identity(n: usize) -> AffineTorusMap {
        let a = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        AffineTorusMap {
            a,
            b: vec![BigRational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.a
    }

    pub fn translation(&self) -> &[BigRational] {
        &self.b
    }

    fn apply_linear(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, x)| acc + BigRational::from_integer(a.clone()) * x)
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineTorusMap) -> AffineTorusMap {
        let a = crate::lattice::mat_mul(&self.a, &other.a);
        let b = self
            .apply_linear(&other.b)
            .iter()
            .zip(&self.b)
            .map(|(x, y)| frac(&(x + y)))
            .collect();
        AffineTorusMap { a, b }
    }

    pub fn inverse(&self) -> AffineTorusMap {
        let inv = self.rational_linear().inverse().expect("det ±1");
        let a: IntMatrix = inv
            .to_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| s.as_rational().expect("rational").to_integer())
                    .collect()
            })
            .collect();
        let mut out = AffineTorusMap {
            a,
            b: vec![BigRational::zero(); self.dim()],
        };
        out.b = out.apply_linear(&self.b).iter().map(|x| frac(&-x)).collect();
        out
    }

    fn rational_linear(&self) -> Matrix {
        let q = Field::Rationals;
        Matrix::from_rows(
            q,
            self.a
                .iter()
                .map(|r| r.iter().map(|v| q.from_bigint(v)).collect())
                .collect(),
        )
        .expect("square")
    }

    /// `rank(A − I)` over ℚ.
    pub fn moved_rank(&self) -> usize {
        let n = self.dim();
        let q = Field::Rationals;
        self.rational_linear()
            .add(&Matrix::identity(q, n).scale(&q.from_i64(-1)))
            .rank()
    }

    /// Whether `(A − I)x ≡ −b (mod ℤⁿ)` has a real solution. With
    /// `U (A − I) = H` in Hermite form of rank `k`, this holds iff the last
    /// `n − k` entries of `U b` are integers.
    pub fn has_fixed_point(&self) -> bool {
        let n = self.dim();
        let m: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.a[i][j] - BigInt::from((i == j) as i64))
                    .collect()
            })
            .collect();
        let hnf = hermite_normal_form(&m);
        hnf.u[hnf.rank..].iter().all(|row| {
            row.iter()
                .zip(&self.b)
                .fold(BigRational::zero(), |acc, (u, b)| acc + BigRational::from_integer(u.clone()) * b)
                .is_integer()
        })
    }
}

impl fmt::Display for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .a
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        let b: Vec<String> = self.b.iter().map(|v| v.to_string()).collect();
        write!(f, "x -> [{}] x + ({})", rows.join(", "), b.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodimConvention {
    Real,
    /// Complex structure `J` supplied; codimensions are complex (halved).
    Complex,
}

#[derive(Clone, Debug)]
pub struct TorusGroupAction {
    n: usize,
    elements: Vec<AffineTorusMap>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    complex_structure: Option<Matrix>,
    convention: CodimConvention,
}

impl TorusGroupAction {
    /// Closes the generators under composition (identity first, then
    /// breadth-first order).
    pub fn from_generators(
        n: usize,
        generators: &[AffineTorusMap],
        complex_structure: Option<Matrix>,
        convention: CodimConvention,
    ) -> Result<TorusGroupAction> {
        Self::from_generators_bounded(n, generators, complex_structure, convention, DEFAULT_TORUS_ORDER_BOUND)
    }

    pub fn from_generators_bounded(
        n: usize,
        generators: &[AffineTorusMap],
        complex_structure: Option<Matrix>,
        convention: CodimConvention,
        bound: usize,
    ) -> Result<TorusGroupAction> {
        if n == 0 {
            return Err(Error::InvalidAction("torus dimension must be positive".into()));
        }
        if generators.iter().any(|g| g.dim() != n) {
            return Err(Error::InvalidAction(format!("map dimension differs from n = {n}")));
        }
        let mut elements = vec![AffineTorusMap::identity(n)];
        let mut index: HashMap<AffineTorusMap, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let h = elements[next].compose(g);
                if !index.contains_key(&h) {
                    if elements.len() == bound {
                        return Err(Error::OrderBoundExceeded(bound));
                    }
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            next += 1;
        }
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let inverses = (0..elements.len())
            .map(|i| index[&elements[i].inverse()])
            .collect();
        let action = TorusGroupAction {
            n,
            elements,
            table,
            inverses,
            complex_structure,
            convention,
        };
        action.validate_complex()?;
        Ok(action)
    }

    fn validate_complex(&self) -> Result<()> {
        if self.convention == CodimConvention::Real {
            return Ok(());
        }
        if !self.n.is_multiple_of(2) {
            return Err(Error::InvalidAction("complex convention needs even n".into()));
        }
        let Some(j) = &self.complex_structure else {
            return Err(Error::InvalidAction("complex convention needs J".into()));
        };
        let q = Field::Rationals;
        if j.field() != q || j.nrows() != self.n || j.ncols() != self.n {
            return Err(Error::InvalidAction("J must be an n x n rational matrix".into()));
        }
        let minus_i = Matrix::identity(q, self.n).scale(&q.from_i64(-1));
        if j.mul(j) != minus_i {
            return Err(Error::InvalidAction("J^2 != -I".into()));
        }
        for g in &self.elements {
            if !g.rational_linear().commutes_with(j) {
                return Err(Error::InvalidAction(format!("A does not commute with J for {g}")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineTorusMap] {
        &self.elements
    }

    pub fn convention(&self) -> CodimConvention {
        self.convention
    }

    pub fn complex_structure(&self) -> Option<&Matrix> {
        self.complex_structure.as_ref()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Dimension of `Y` in the chosen convention.
    pub fn variety_dim(&self) -> usize {
        match self.convention {
            CodimConvention::Real => self.n,
            CodimConvention::Complex => self.n / 2,
        }
    }

    pub fn fixed_locus(&self, g: usize) -> Result<FixedLocusReport> {
        fixed_locus(&self.elements[g], self.convention)
    }

    /// `Y_{σ,τ} ≅ Fix(σ⁻¹τ)`.
    pub fn pairwise_component(&self, sigma: usize, tau: usize) -> Result<FixedLocusReport> {
        self.fixed_locus(self.mul(self.inverse(sigma), tau))
    }

    /// Subgroup generated by `gens`, as sorted element indices.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[0] = true;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !members[y] {
                    members[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| members[i]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixedLocusReport {
    pub nonempty: bool,
    pub codim: Option<usize>,
}

pub fn fixed_locus(g: &AffineTorusMap, convention: CodimConvention) -> Result<FixedLocusReport> {
    if !g.has_fixed_point() {
        return Ok(FixedLocusReport {
            nonempty: false,
            codim: None,
        });
    }
    let rank = g.moved_rank();
    let codim = match convention {
        CodimConvention::Real => rank,
        CodimConvention::Complex => {
            if !rank.is_multiple_of(2) {
                return Err(Error::Internal(format!(
                    "rank(A - I) = {rank} is odd under a complex structure"
                )));
            }
            rank / 2
        }
    };
    Ok(FixedLocusReport {
        nonempty: true,
        codim: Some(codim),
    })
}

/// `G_1 ⊆ G_2 ⊆ … ⊆ G_dim`, each as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingSeries {
    pub series: Vec<Vec<usize>>,
}

/// `G_i` is generated by the elements whose fixed locus is nonempty of
/// codimension ≤ i; since `Y_{σρ,τρ} ≅ Y_{σ,τ}`, chains from the identity
/// reduce to words in those elements.
pub fn connecting_series(action: &TorusGroupAction) -> Result<ConnectingSeries> {
    let reports: Vec<FixedLocusReport> = (0..action.order())
        .map(|g| action.fixed_locus(g))
        .collect::<Result<_>>()?;
    let mut series = Vec::with_capacity(action.variety_dim());
    for i in 1..=action.variety_dim() {
        let gens: Vec<usize> = reports
            .iter()
            .enumerate()
            .filter(|(_, r)| r.codim.is_some_and(|c| c <= i))
            .map(|(g, _)| g)
            .collect();
        let subgroup = action.generated_subgroup(&gens);
        for &h in &gens {
            for t in 0..action.order() {
                let conj = action.mul(action.mul(t, h), action.inverse(t));
                if subgroup.binary_search(&conj).is_err() {
                    return Err(Error::Internal(format!("G_{i} is not normal")));
                }
            }
        }
        if let Some(prev) = series.last() {
            let prev: &Vec<usize> = prev;
            if !prev.iter().all(|g| subgroup.binary_search(g).is_ok()) {
                return Err(Error::Internal(format!("G_{} is not contained in G_{i}", i - 1)));
            }
        }
        series.push(subgroup);
    }
    Ok(ConnectingSeries { series })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverClassification {
    pub order: usize,
    pub etale: bool,
    pub quasi_etale: bool,
    /// Least `i` with `G_i = G`.
    pub genuinely_ramified_in_codim: Option<usize>,
    pub prime_to_p: bool,
    pub series: ConnectingSeries,
}

pub fn classify_cover(action: &TorusGroupAction, p: u64) -> Result<CoverClassification> {
    let reports: Vec<FixedLocusReport> = (1..action.order())
        .map(|g| action.fixed_locus(g))
        .collect::<Result<_>>()?;
    let etale = reports.iter().all(|r| !r.nonempty);
    let quasi_etale = reports.iter().all(|r| r.codim.is_none_or(|c| c >= 2));
    let series = connecting_series(action)?;
    let genuinely_ramified_in_codim = series
        .series
        .iter()
        .position(|g| g.len() == action.order())
        .map(|i| i + 1);
    let prime_to_p = p == 0 || !(action.order() as u64).is_multiple_of(p);
    Ok(CoverClassification {
        order: action.order(),
        etale,
        quasi_etale,
        genuinely_ramified_in_codim,
        prime_to_p,
        series,
    })
}

/// `J` for `ℂ^m = ℝ^{2m}` with coordinates `(x_1, y_1, …, x_m, y_m)`.
pub fn standard_complex_structure(m: usize) -> Matrix {
    let q = Field::Rationals;
    let mut j = Matrix::zeros(q, 2 * m, 2 * m);
    for k in 0..m {
        j.set(2 * k, 2 * k + 1, q.from_i64(-1));
        j.set(2 * k + 1, 2 * k, q.from_i64(1));
    }
    j
}
