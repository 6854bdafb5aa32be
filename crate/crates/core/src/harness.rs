//! Seeded generators and the property suites behind the acceptance tests.
//!
//! Every generator is a pure function of its [`GenConfig`]. A suite derives
//! one seed per case from the configured seed; a failure records that case
//! seed, and rerunning the case with it reproduces the failure.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::equivariance::{
    descend, h_split_report, image_check, image_sample, is_invariant, non_invariant_monomial,
    orbit_factorization, orbit_stabilizer, stable_multiset,
};
use crate::error::{Error, Result};
use crate::group::{close_group, close_group_bounded, GroupRep};
use crate::higgs::{
    char_poly, char_poly_faddeev, direct_sum, elementary_to_power, power_to_elementary,
    power_traces, validate_higgs, HiggsField,
};
use crate::hitchin::{hb_product, proj_product, HitchinPoint, ProjHitchinPoint, RootMultiset};
use crate::matrix::Matrix;
use crate::poly::{GradedPoly, LinearForm, Monomial};
use crate::scalar::{Field, Scalar};
use crate::split::{brute_split, total_split, SplitConfig, SplitOutcome, DEFAULT_BRUTE_BOUND};
use crate::torus::{
    classify_cover, connecting_series, AffineTorusMap, CodimConvention, TorusGroupAction,
};

pub const SUITES: [&str; 8] = [
    "roundtrip",
    "oracle_eq",
    "charpoly",
    "direct_sum",
    "proj",
    "galois",
    "image",
    "torus",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub field: Field,
    pub r_max: usize,
    pub d_max: usize,
    /// Bound on numerators and denominators of random rationals.
    pub height: i64,
}

impl GenConfig {
    pub fn new(seed: u64, field: Field) -> GenConfig {
        GenConfig {
            seed,
            field,
            r_max: 5,
            d_max: 3,
            height: 9,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn with_seed(&self, seed: u64) -> GenConfig {
        GenConfig { seed, ..*self }
    }
}

/// Seed of case `i`, a splitmix64 step away from the suite seed.
pub fn case_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_scalar(field: Field, height: i64, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => {
            let num = rng.gen_range(-height..=height);
            let den = if rng.gen_bool(0.25) { rng.gen_range(1..=height) } else { 1 };
            Scalar::Q(BigRational::new(num.into(), den.into()))
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

fn random_form(field: Field, d: usize, height: i64, rng: &mut ChaCha8Rng) -> LinearForm {
    LinearForm::new(field, (0..d).map(|_| random_scalar(field, height, rng)).collect())
}

/// A random homogeneous polynomial of degree `deg`: each monomial is kept
/// with probability 1/2 and given a random coefficient.
fn random_homogeneous(field: Field, d: usize, deg: u32, height: i64, rng: &mut ChaCha8Rng) -> GradedPoly {
    let terms: Vec<(Monomial, Scalar)> = crate::equivariance::monomials(field, d, deg)
        .into_iter()
        .filter_map(|m| {
            let (mono, _) = m.terms().next().map(|(e, c)| (e.clone(), c.clone()))?;
            rng.gen_bool(0.5).then(|| (mono, random_scalar(field, height, rng)))
        })
        .collect();
    GradedPoly::from_terms(field, d, terms)
}

fn random_point(field: Field, d: usize, r: usize, height: i64, rng: &mut ChaCha8Rng) -> HitchinPoint {
    let coeffs = (1..=r)
        .map(|i| random_homogeneous(field, d, i as u32, height, rng))
        .collect();
    HitchinPoint::new(field, d, coeffs).expect("homogeneous by construction")
}

fn random_invertible(field: Field, r: usize, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    loop {
        let rows = (0..r)
            .map(|_| (0..r).map(|_| random_scalar(field, 2, rng)).collect())
            .collect();
        let p = Matrix::from_rows(field, rows).expect("square");
        if let Some(inv) = p.inverse() {
            return (p, inv);
        }
    }
}

/// Companion matrix of the monic `y^r + c_{r−1} y^{r−1} + … + c_0`, given
/// `c_0, …, c_{r−1}`.
pub fn companion_matrix(field: Field, lower: &[Scalar]) -> Matrix {
    let r = lower.len();
    let mut c = Matrix::zeros(field, r, r);
    for i in 1..r {
        c.set(i, i - 1, field.one());
    }
    for (i, a) in lower.iter().enumerate() {
        c.set(i, r - 1, -a);
    }
    c
}

/// `Σ_j q_j C^j`.
fn poly_of_matrix(c: &Matrix, q: &[Scalar]) -> Matrix {
    let field = c.field();
    let mut acc = Matrix::zeros(field, c.nrows(), c.ncols());
    let mut power = Matrix::identity(field, c.nrows());
    for a in q {
        acc = acc.add(&power.scale(a));
        power = power.mul(c);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleMode {
    Diagonalizable,
    Companion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedTuple {
    pub higgs: HiggsField,
    /// The diagonal entries as linear forms (diagonalizable mode only).
    pub forms: Option<RootMultiset>,
}

/// A commuting tuple of rank `1..=r_max` in `1..=d_max` variables.
pub fn gen_commuting_tuple(cfg: &GenConfig, mode: TupleMode) -> GeneratedTuple {
    let mut rng = cfg.rng();
    let d = rng.gen_range(1..=cfg.d_max);
    let r = rng.gen_range(1..=cfg.r_max);
    tuple_with(cfg.field, d, r, cfg.height, mode, &mut rng)
}

fn tuple_with(
    field: Field,
    d: usize,
    r: usize,
    height: i64,
    mode: TupleMode,
    rng: &mut ChaCha8Rng,
) -> GeneratedTuple {
    match mode {
        TupleMode::Diagonalizable => {
            let forms: Vec<LinearForm> = (0..r).map(|_| random_form(field, d, height, rng)).collect();
            let (p, p_inv) = random_invertible(field, r, rng);
            let components = (0..d)
                .map(|k| {
                    let diag: Vec<Scalar> = forms.iter().map(|t| t.coeffs()[k].clone()).collect();
                    p.mul(&Matrix::diagonal(field, &diag)).mul(&p_inv)
                })
                .collect();
            GeneratedTuple {
                higgs: validate_higgs(field, components).expect("conjugate diagonal matrices commute"),
                forms: Some(RootMultiset::new(forms)),
            }
        }
        TupleMode::Companion => {
            let lower: Vec<Scalar> = (0..r).map(|_| random_scalar(field, height, rng)).collect();
            let c = companion_matrix(field, &lower);
            companion_tuple(&c, d, height, rng)
        }
    }
}

fn companion_tuple(c: &Matrix, d: usize, height: i64, rng: &mut ChaCha8Rng) -> GeneratedTuple {
    let field = c.field();
    let components = (0..d)
        .map(|_| {
            let q: Vec<Scalar> = (0..c.nrows()).map(|_| random_scalar(field, height, rng)).collect();
            poly_of_matrix(c, &q)
        })
        .collect();
    GeneratedTuple {
        higgs: validate_higgs(field, components).expect("polynomials in one matrix commute"),
        forms: None,
    }
}

/// Companion mode with a fixed companion polynomial `y^r + Σ c_i y^i`.
pub fn gen_companion_tuple(cfg: &GenConfig, lower: &[Scalar], d: usize) -> GeneratedTuple {
    let mut rng = cfg.rng();
    companion_tuple(&companion_matrix(cfg.field, lower), d, cfg.height, &mut rng)
}

pub fn gen_stable_multiset(group: &GroupRep, r: usize, cfg: &GenConfig) -> Result<RootMultiset> {
    stable_multiset(group, r, cfg.seed)
}

/// A random multiset of `1..=r_max` forms in `1..=d_max` variables.
pub fn gen_root_multiset(cfg: &GenConfig) -> (usize, RootMultiset) {
    let mut rng = cfg.rng();
    let d = rng.gen_range(1..=cfg.d_max);
    let r = rng.gen_range(1..=cfg.r_max);
    let roots = (0..r).map(|_| random_form(cfg.field, d, cfg.height, &mut rng)).collect();
    (d, RootMultiset::new(roots))
}

/// `∏ (y − t)` folded through [`hb_product`].
pub fn product_of_roots(field: Field, d: usize, roots: &[LinearForm]) -> HitchinPoint {
    roots.iter().fold(HitchinPoint::zero(field, d, 0), |acc, t| {
        let lin = HitchinPoint::new(field, d, vec![t.to_poly()]).expect("degree 1");
        hb_product(&acc, &lin).expect("compatible")
    })
}

/// Signed permutation matrices in `GL(d, ℤ)` as `(permutation, signs)`.
fn random_signed_perm(d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut a = vec![vec![0i64; d]; d];
    for (j, &i) in perm.iter().enumerate() {
        a[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    a
}

fn int_matrix(field: Field, a: &[Vec<i64>]) -> Matrix {
    let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(field, &rows)
}

/// A group of signed permutation matrices of order at most `bound`.
pub fn gen_signed_perm_group(field: Field, d: usize, bound: usize, rng: &mut ChaCha8Rng) -> GroupRep {
    loop {
        let k = rng.gen_range(1..=2);
        let gens: Vec<Matrix> = (0..k).map(|_| int_matrix(field, &random_signed_perm(d, rng))).collect();
        if let Ok(g) = close_group_bounded(field, d, &gens, bound) {
            return g;
        }
    }
}

/// A torus action generated by signed permutations with translations in
/// `{0, 1/2}^n`, of order at most `bound`.
pub fn gen_torus_action(n: usize, bound: usize, rng: &mut ChaCha8Rng) -> TorusGroupAction {
    loop {
        let k = rng.gen_range(1..=2);
        let gens: Vec<AffineTorusMap> = (0..k)
            .map(|_| {
                let a = random_signed_perm(n, rng)
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                let b = (0..n)
                    .map(|_| BigRational::new(BigInt::from(rng.gen_range(0..2)), BigInt::from(2)))
                    .collect();
                AffineTorusMap::new(a, b).expect("signed permutations are unimodular")
            })
            .collect();
        if let Ok(action) =
            TorusGroupAction::from_generators_bounded(n, &gens, None, CodimConvention::Real, bound)
        {
            return action;
        }
    }
}

/// Brute-force fixed-locus oracle for a signed permutation `A` with
/// `b ∈ ½ℤⁿ`. On a cycle of `A` with sign product `ε`, the fixed-point
/// equations force `(1 − ε) x_i ∈ ½ℤ`, so a fixed point exists iff one
/// exists in `(¼ℤ/ℤ)ⁿ`; the fixed locus has one free coordinate per cycle
/// with `ε = +1`.
pub fn signed_perm_fixed_oracle(g: &AffineTorusMap) -> Option<(bool, usize)> {
    let n = g.dim();
    let a: Vec<Vec<i64>> = g
        .linear()
        .iter()
        .map(|r| r.iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    // image[j] = (i, s) with A e_j = s e_i
    let mut image = Vec::with_capacity(n);
    for j in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&i| a[i][j] != 0).collect();
        if nz.len() != 1 || a[nz[0]][j].abs() != 1 {
            return None;
        }
        image.push((nz[0], a[nz[0]][j]));
    }
    let mut seen = vec![false; n];
    let mut plus_cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let (mut j, mut sign) = (start, 1);
        while !seen[j] {
            seen[j] = true;
            sign *= image[j].1;
            j = image[j].0;
        }
        if sign == 1 {
            plus_cycles += 1;
        }
    }
    let b = g.translation();
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let total = 4usize.pow(n as u32);
    let nonempty = (0..total).any(|code| {
        let x: Vec<BigRational> = (0..n)
            .map(|i| &quarter * BigInt::from((code / 4usize.pow(i as u32)) % 4))
            .collect();
        (0..n).all(|i| {
            let ax: BigRational = (0..n)
                .map(|j| BigRational::from_integer(BigInt::from(a[i][j])) * &x[j])
                .sum();
            (ax + &b[i] - &x[i]).is_integer()
        })
    });
    Some((nonempty, n - plus_cycles))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures.iter().map(|f| json!({
                "case": f.case,
                "seed": f.seed,
                "detail": f.detail,
            })).collect::<Vec<_>>(),
            "millis": self.millis as u64,
        })
    }
}

type CaseFn = fn(&GenConfig) -> std::result::Result<(), String>;

/// Runs `cases` seeded cases of a registered suite in parallel.
pub fn run_suite(name: &str, cfg: &GenConfig, cases: usize) -> Result<SuiteReport> {
    let case: CaseFn = match name {
        "roundtrip" => roundtrip_case,
        "oracle_eq" => {
            if cfg.field.characteristic() == 0 {
                return Err(Error::RequiresPrimeField);
            }
            oracle_eq_case
        }
        "charpoly" => charpoly_case,
        "direct_sum" => direct_sum_case,
        "proj" => proj_case,
        "galois" => galois_case,
        "image" => image_case,
        "torus" => torus_case,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let start = Instant::now();
    let mut failures: Vec<Failure> = (0..cases)
        .into_par_iter()
        .filter_map(|i| {
            let seed = case_seed(cfg.seed, i);
            let outcome = std::panic::catch_unwind(|| case(&cfg.with_seed(seed)))
                .unwrap_or_else(|_| Err("panic".to_string()));
            outcome.err().map(|detail| Failure { case: i, seed, detail })
        })
        .collect();
    failures.sort_by_key(|f| f.case);
    Ok(SuiteReport {
        suite: name.to_string(),
        cases,
        failures,
        millis: start.elapsed().as_millis(),
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

fn roundtrip_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let (d, roots) = gen_root_multiset(cfg);
    let s = product_of_roots(cfg.field, d, roots.roots());
    match total_split(&s, SplitConfig::with_seed(cfg.seed)) {
        SplitOutcome::Split(found) if found == roots => Ok(()),
        other => Err(format!("roots {roots}: total_split gave {other:?}")),
    }
}

fn oracle_eq_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let mut rng = cfg.rng();
    let (field, d) = (cfg.field, cfg.d_max);
    let r = rng.gen_range(1..=cfg.r_max);
    let k = rng.gen_range(0..=r);
    let roots: Vec<LinearForm> = (0..k).map(|_| random_form(field, d, cfg.height, &mut rng)).collect();
    let rest = random_point(field, d, r - k, cfg.height, &mut rng);
    let s = hb_product(&product_of_roots(field, d, &roots), &rest).map_err(err_str)?;
    let fast = total_split(&s, SplitConfig::with_seed(cfg.seed));
    let brute = brute_split(&s, DEFAULT_BRUTE_BOUND).map_err(err_str)?;
    ensure(fast == brute, || format!("s = {s}: total_split {fast:?} vs brute_split {brute:?}"))
}

fn charpoly_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let mode = if cfg.seed.is_multiple_of(2) { TupleMode::Diagonalizable } else { TupleMode::Companion };
    let GeneratedTuple { higgs, forms } = gen_commuting_tuple(cfg, mode);
    let s = char_poly(&higgs);
    let (field, d, r) = (higgs.field(), higgs.dim(), higgs.rank());
    for (i, c) in s.coeffs().iter().enumerate() {
        ensure(c.is_homogeneous(i as u32 + 1), || format!("s_{} not homogeneous", i + 1))?;
    }
    let p = field.characteristic();
    if p == 0 || p as usize > r {
        let faddeev = char_poly_faddeev(&higgs).map_err(err_str)?;
        ensure(faddeev == s, || format!("Berkowitz {s} vs Faddeev-LeVerrier {faddeev}"))?;
        let traces = power_traces(&higgs);
        let from_traces = power_to_elementary(&traces, field, d).map_err(err_str)?;
        ensure(from_traces == s, || format!("Newton from traces gave {from_traces}, expected {s}"))?;
        let back = elementary_to_power(&s).map_err(err_str)?;
        ensure(back == traces, || "elementary to power sums disagrees with traces".into())?;
    }
    if let Some(forms) = forms {
        match total_split(&s, SplitConfig::with_seed(cfg.seed)) {
            SplitOutcome::Split(found) if found == forms => {}
            other => return Err(format!("diagonal forms {forms}: total_split gave {other:?}")),
        }
    }
    Ok(())
}

fn direct_sum_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let mut rng = cfg.rng();
    let d = rng.gen_range(1..=cfg.d_max);
    let pick = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.1) {
            return HiggsField::rank_zero(cfg.field, d);
        }
        let mode = if rng.gen_bool(0.5) { TupleMode::Diagonalizable } else { TupleMode::Companion };
        let r = rng.gen_range(1..=cfg.r_max);
        tuple_with(cfg.field, d, r, cfg.height, mode, rng).higgs
    };
    let a = pick(&mut rng);
    let b = pick(&mut rng);
    let sum = direct_sum(&a, &b).map_err(err_str)?;
    let lhs = char_poly(&sum);
    let rhs = hb_product(&char_poly(&a), &char_poly(&b)).map_err(err_str)?;
    ensure(lhs == rhs, || format!("char_poly of sum {lhs} vs product {rhs}"))
}

fn random_proj(field: Field, d: usize, r: usize, height: i64, rng: &mut ChaCha8Rng) -> ProjHitchinPoint {
    loop {
        let s0 = match rng.gen_range(0..3) {
            0 => field.zero(),
            1 => field.one(),
            _ => random_scalar(field, height, rng),
        };
        let mut coeffs = random_point(field, d, r, height, rng).coeffs().to_vec();
        // sparse boundary points such as [0 : 0 : … : s_r]
        if rng.gen_bool(0.2) {
            let keep = rng.gen_range(0..r);
            for (i, c) in coeffs.iter_mut().enumerate() {
                if i != keep {
                    *c = GradedPoly::zero(field, d);
                }
            }
        }
        if let Ok(p) = ProjHitchinPoint::new(field, d, s0, coeffs) {
            return p;
        }
    }
}

fn proj_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let mut rng = cfg.rng();
    let field = cfg.field;
    let d = rng.gen_range(1..=cfg.d_max);
    let (r1, r2) = (rng.gen_range(1..=cfg.r_max), rng.gen_range(1..=cfg.r_max));
    let (a, b) = (
        random_point(field, d, r1, cfg.height, &mut rng),
        random_point(field, d, r2, cfg.height, &mut rng),
    );
    let chart = proj_product(&ProjHitchinPoint::from_affine(&a), &ProjHitchinPoint::from_affine(&b))
        .map_err(err_str)?
        .to_affine();
    let affine = hb_product(&a, &b).map_err(err_str)?;
    ensure(chart.as_ref() == Some(&affine), || format!("chart {chart:?} vs hb_product {affine}"))?;

    let (u, w) = (
        random_proj(field, d, r1, cfg.height, &mut rng),
        random_proj(field, d, r2, cfg.height, &mut rng),
    );
    let v = proj_product(&u, &w).map_err(err_str)?;
    ensure(!v.is_zero_tuple(), || format!("{u} * {w} is the zero tuple"))?;
    let again = ProjHitchinPoint::new(field, d, v.s0().clone(), v.coeffs().to_vec()).map_err(err_str)?;
    ensure(again == v, || format!("normalization of {v} is not idempotent"))
}

fn galois_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let mut rng = cfg.rng();
    let field = cfg.field;
    let d = rng.gen_range(1..=cfg.d_max);
    let group = gen_signed_perm_group(field, d, 24, &mut rng);
    let t = loop {
        let t = random_form(field, d, cfg.height, &mut rng);
        if !t.is_zero() {
            break t;
        }
    };
    let (orbit, _) = orbit_stabilizer(&t, &group);
    let r = orbit.len();
    let s = product_of_roots(field, d, &orbit);
    let split = SplitConfig::with_seed(cfg.seed);
    ensure(is_invariant(&s, &group).map_err(err_str)?, || format!("orbit product {s} not invariant"))?;
    let decomposition = orbit_factorization(&s, &group, split).map_err(err_str)?;
    ensure(decomposition.orbits.len() == 1, || {
        format!("{} orbits on the roots of {s}", decomposition.orbits.len())
    })?;
    let only = &decomposition.orbits[0];
    ensure(only.multiplicity == 1 && only.roots.len() == r, || "roots are not pairwise distinct".into())?;
    let datum = descend(&s, &group, split).map_err(err_str)?;
    ensure(datum.reconstruct(field, d) == s, || "descent does not reconstruct s".into())?;
    ensure(datum.index() == r && group.order() / datum.subgroup.len() == r, || {
        format!("[G:H] = {} but orbit size {r}", datum.index())
    })?;
    for entry in h_split_report(&s, &group, split).map_err(err_str)? {
        ensure(entry.orbit_size <= r, || format!("stabilizer index {} > r = {r}", entry.orbit_size))?;
    }
    Ok(())
}

/// `{trivial, ⟨−I⟩, Klein four}` acting on `k^d`; Klein needs `d ≥ 2`.
pub fn image_groups(field: Field, d: usize) -> Vec<(&'static str, GroupRep)> {
    let mut out = vec![
        ("trivial", GroupRep::trivial(field, d)),
        (
            "minus_identity",
            close_group(field, d, &[Matrix::identity(field, d).scale(&field.from_i64(-1))])
                .expect("order 2"),
        ),
    ];
    if d >= 2 {
        let reflect = |k: usize| {
            let mut m = Matrix::identity(field, d);
            m.set(k, k, field.from_i64(-1));
            m
        };
        out.push(("klein", close_group(field, d, &[reflect(0), reflect(1)]).expect("order 4")));
    }
    out
}

fn image_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let mut rng = cfg.rng();
    let field = cfg.field;
    let d = rng.gen_range(1..=cfg.d_max);
    let r = rng.gen_range(1..=cfg.r_max);
    let split = SplitConfig::with_seed(cfg.seed);
    for (name, group) in image_groups(field, d) {
        let s = image_sample(&group, r, cfg.seed).map_err(err_str)?;
        ensure(image_check(&s, &group, split).map_err(err_str)?, || {
            format!("{name}: sample {s} fails image_check")
        })?;
        let i = rng.gen_range(1..=r);
        if let Some(m) = non_invariant_monomial(&group, i as u32) {
            let mut coeffs = s.coeffs().to_vec();
            coeffs[i - 1] = &coeffs[i - 1] + &m;
            let perturbed = HitchinPoint::new(field, d, coeffs).map_err(err_str)?;
            ensure(!image_check(&perturbed, &group, split).map_err(err_str)?, || {
                format!("{name}: perturbation {perturbed} still passes")
            })?;
        }
    }
    // abelian case: membership for the trivial group is total splitting
    let trivial = GroupRep::trivial(field, d);
    let roots: Vec<LinearForm> = (0..r).map(|_| random_form(field, d, cfg.height, &mut rng)).collect();
    let mut s = product_of_roots(field, d, &roots);
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(1..=r);
        let mut coeffs = s.coeffs().to_vec();
        coeffs[i - 1] = &coeffs[i - 1] + &random_homogeneous(field, d, i as u32, cfg.height, &mut rng);
        s = HitchinPoint::new(field, d, coeffs).map_err(err_str)?;
    }
    let member = image_check(&s, &trivial, split).map_err(err_str)?;
    let splits = total_split(&s, split);
    ensure(member == splits.is_split(), || format!("{s}: image_check {member} vs {splits:?}"))?;
    if field.characteristic() != 0 {
        if let Ok(brute) = brute_split(&s, DEFAULT_BRUTE_BOUND) {
            ensure(member == brute.is_split(), || format!("{s}: image_check {member} vs brute {brute:?}"))?;
        }
    }
    Ok(())
}

fn torus_case(cfg: &GenConfig) -> std::result::Result<(), String> {
    let mut rng = cfg.rng();
    let n = rng.gen_range(1..=4);
    let action = gen_torus_action(n, 16, &mut rng);
    let order = action.order();
    let e = action.fixed_locus(0).map_err(err_str)?;
    ensure(e.nonempty && e.codim == Some(0), || "identity has a proper fixed locus".into())?;
    for (g, map) in action.elements().iter().enumerate() {
        let report = action.fixed_locus(g).map_err(err_str)?;
        let (nonempty, codim) = signed_perm_fixed_oracle(map).ok_or("not a signed permutation")?;
        ensure(report.nonempty == nonempty, || format!("{map}: nonempty {} vs oracle {nonempty}", report.nonempty))?;
        if nonempty {
            ensure(report.codim == Some(codim), || format!("{map}: codim {:?} vs oracle {codim}", report.codim))?;
        }
    }
    let (s, v, t) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
    let conj = |x: usize| action.mul(action.mul(t, x), action.inverse(t));
    let before = action.pairwise_component(s, v).map_err(err_str)?;
    let after = action.pairwise_component(conj(s), conj(v)).map_err(err_str)?;
    ensure(before == after, || format!("conjugation changed Y_(s,v): {before:?} vs {after:?}"))?;
    let series = connecting_series(&action).map_err(err_str)?;
    let class = classify_cover(&action, 2).map_err(err_str)?;
    ensure(!class.etale || class.quasi_etale, || "etale but not quasi-etale".into())?;
    if let Some(i) = class.genuinely_ramified_in_codim {
        ensure(series.series[i - 1].len() == order, || format!("G_{i} != G"))?;
    }
    Ok(())
}
