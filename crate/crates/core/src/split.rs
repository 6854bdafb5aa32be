//! Total splitting of Hitchin-base points into linear factors over the base
//! field, the exhaustive oracle, and stratum profiling.
//!
//! The Las Vegas splitter specializes `s` at `d + 1` random points, finds
//! the roots of the univariate images, interpolates candidate linear forms
//! from `d` of the points, filters them against the remaining point and
//! certifies the result exactly: by one product comparison when the
//! candidates account for all `r` roots, by repeated division otherwise.
//! Because the `d`
//! interpolation points span `k^d`, every linear factor of `s` shows up as
//! some candidate tuple, so a completed attempt is a certificate for both
//! verdicts.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::roots;
use crate::error::{Error, Result};
use crate::hitchin::{HitchinPoint, RootMultiset};
use crate::matrix::Matrix;
use crate::poly::{LinearForm, YPoly};
use crate::scalar::{Field, Scalar};

pub const DEFAULT_MAX_RETRIES: u32 = 32;
pub const DEFAULT_BRUTE_BOUND: u128 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitConfig {
    pub seed: u64,
    /// Number of randomized attempts; `0` performs none.
    pub max_retries: u32,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

impl SplitConfig {
    pub fn with_seed(seed: u64) -> SplitConfig {
        SplitConfig {
            seed,
            ..SplitConfig::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(RootMultiset),
    NotSplit,
    Inconclusive,
}

impl SplitOutcome {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitOutcome::Split(_))
    }
}

/// Distinct roots in `k` of a univariate polynomial (ascending coefficients,
/// nonzero).
pub fn univariate_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let field = coeffs.last().expect("nonzero polynomial").field();
    let mut roots = match field {
        Field::Prime(_) => field
            .elements()
            .expect("finite field")
            .into_iter()
            .filter(|a| horner(coeffs, a).is_zero())
            .collect(),
        Field::Rationals => rational_roots(coeffs),
    };
    roots.sort();
    roots.dedup();
    roots
}

fn horner(coeffs: &[Scalar], a: &Scalar) -> Scalar {
    coeffs
        .iter()
        .rev()
        .fold(a.field().zero(), |acc, c| &(&acc * a) + c)
}

fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let qs: Vec<BigRational> = coeffs
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients").clone())
        .collect();
    roots::rational_roots(&qs).into_iter().map(Scalar::Q).collect()
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// Divides out `(y − t)` as often as it divides; returns the count.
fn strip_factor(s: &mut YPoly, t: &LinearForm) -> usize {
    let mut count = 0;
    loop {
        if s.degree().unwrap_or(0) == 0 {
            return count;
        }
        let (q, rem) = s.divrem_linear(t);
        if !rem.is_zero() {
            return count;
        }
        *s = q;
        count += 1;
    }
}

/// Every linear factor of `s` over the base field, with multiplicity, plus
/// the residual cofactor. `None` when the sampled points were unusable.
fn extract_attempt(s: &HitchinPoint, rng: &mut ChaCha8Rng) -> Option<(Vec<LinearForm>, YPoly)> {
    let (field, d) = (s.field(), s.nvars());
    let points: Vec<Vec<Scalar>> = (0..=d)
        .map(|_| (0..d).map(|_| random_scalar(field, rng)).collect())
        .collect();
    let basis = Matrix::from_rows(field, points[1..].to_vec()).expect("square sample matrix");
    // t = basis^{-1} v for the values v at points[1..]
    let inv = basis.inverse()?;
    // t(points[0]) = weights · v
    let weights = inv.transpose().mul_vec(&points[0]);
    let mut residual = s.to_ypoly();
    let mut root_sets = Vec::with_capacity(d + 1);
    for pt in &points {
        let spec = residual.specialize(pt).expect("point in k^d");
        root_sets.push(univariate_roots(&spec));
    }
    if root_sets.iter().any(Vec::is_empty) {
        return Some((vec![], residual));
    }
    let mut candidates = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let values: Vec<Scalar> = (0..d).map(|k| root_sets[k + 1][idx[k]].clone()).collect();
        let at_base = weights
            .iter()
            .zip(&values)
            .fold(field.zero(), |acc, (w, v)| &acc + &(w * v));
        if root_sets[0].binary_search(&at_base).is_ok() {
            candidates.push((LinearForm::new(field, inv.mul_vec(&values)), at_base));
        }
        // odometer over the candidate tuples
        let mut k = 0;
        while k < d {
            idx[k] += 1;
            if idx[k] < root_sets[k + 1].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    // one product comparison certifies the common totally split case
    let base = residual.specialize(&points[0]).expect("point in k^d");
    let guess: Vec<LinearForm> = candidates
        .iter()
        .flat_map(|(t, v)| std::iter::repeat_n(t.clone(), root_multiplicity(&base, v)))
        .collect();
    if guess.len() == s.rank() && YPoly::from_roots(field, d, &guess) == residual {
        return Some((guess, YPoly::one(field, d)));
    }
    let mut found = Vec::new();
    for (t, _) in &candidates {
        let m = strip_factor(&mut residual, t);
        found.extend(std::iter::repeat_n(t.clone(), m));
        if residual.degree() == Some(0) {
            break;
        }
    }
    Some((found, residual))
}

/// Multiplicity of `a` as a root of the univariate `f` (ascending).
fn root_multiplicity(f: &[Scalar], a: &Scalar) -> usize {
    let mut f = f.to_vec();
    let mut m = 0;
    while f.len() > 1 {
        // synthetic division by (y − a)
        let mut q = vec![a.field().zero(); f.len() - 1];
        let mut carry = a.field().zero();
        for i in (1..f.len()).rev() {
            carry = &f[i] + &(&carry * a);
            q[i - 1] = carry.clone();
        }
        if !(&f[0] + &(&carry * a)).is_zero() {
            break;
        }
        f = q;
        m += 1;
    }
    m
}

fn extract_linear_factors(
    s: &HitchinPoint,
    cfg: SplitConfig,
) -> Option<(Vec<LinearForm>, YPoly)> {
    if s.rank() == 0 {
        return Some((vec![], s.to_ypoly()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.max_retries).find_map(|_| extract_attempt(s, &mut rng))
}

/// Decides whether `s` is a product of `r` linear factors over the base
/// field and, if so, returns them.
pub fn total_split(s: &HitchinPoint, cfg: SplitConfig) -> SplitOutcome {
    match extract_linear_factors(s, cfg) {
        None => SplitOutcome::Inconclusive,
        Some((roots, residual)) if residual.degree() == Some(0) => {
            SplitOutcome::Split(RootMultiset::new(roots))
        }
        Some(_) => SplitOutcome::NotSplit,
    }
}

/// Exhaustive oracle over `F_q`: divide-tests all `q^d` linear forms.
pub fn brute_split(s: &HitchinPoint, bound: u128) -> Result<SplitOutcome> {
    let Field::Prime(q) = s.field() else {
        return Err(Error::RequiresPrimeField);
    };
    let d = s.nvars();
    let candidates = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if candidates > bound {
        return Err(Error::BoundExceeded { candidates, bound });
    }
    let elements = s.field().elements().expect("finite field");
    let mut residual = s.to_ypoly();
    let mut roots = Vec::new();
    let mut idx = vec![0usize; d];
    'outer: loop {
        if residual.degree() == Some(0) {
            break;
        }
        let t = LinearForm::new(s.field(), idx.iter().map(|&i| elements[i].clone()).collect());
        let m = strip_factor(&mut residual, &t);
        roots.extend(std::iter::repeat_n(t, m));
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < elements.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    Ok(if residual.degree() == Some(0) {
        SplitOutcome::Split(RootMultiset::new(roots))
    } else {
        SplitOutcome::NotSplit
    })
}

/// Linear part and residual of a Hitchin-base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitProfile {
    pub linear_part: RootMultiset,
    pub residual_degree: usize,
    /// True when the residual is certified irreducible over the base field
    /// (vacuously when it is constant).
    pub residual_certified: bool,
    pub residual: HitchinPoint,
}

/// Maximal linear factorization `s = ∏(y − t_i) · residual`.
pub fn split_profile(s: &HitchinPoint, cfg: SplitConfig) -> Result<SplitProfile> {
    let (roots, residual) = extract_linear_factors(s, cfg).ok_or(Error::Inconclusive)?;
    let residual = HitchinPoint::from_ypoly(&residual)?;
    let residual_degree = residual.rank();
    let residual_certified = residual_degree == 0 || irreducibility_witness(&residual, cfg.seed);
    Ok(SplitProfile {
        linear_part: RootMultiset::new(roots),
        residual_degree,
        residual_certified,
        residual,
    })
}

const WITNESS_SAMPLES: usize = 64;

/// Looks for a point where the monic residual specializes to an irreducible
/// univariate polynomial over `F_p`; any such point certifies irreducibility
/// of the residual itself. Never succeeds over ℚ.
fn irreducibility_witness(residual: &HitchinPoint, seed: u64) -> bool {
    let Field::Prime(p) = residual.field() else {
        return false;
    };
    let d = residual.nvars();
    let y = residual.to_ypoly();
    let check = |pt: &[Scalar]| {
        let spec = y.specialize(pt).expect("point in k^d");
        let coeffs: Vec<u64> = spec
            .iter()
            .map(|c| match c {
                Scalar::Fp { v, .. } => *v,
                Scalar::Q(_) => unreachable!(),
            })
            .collect();
        fp_irreducible(&coeffs, p)
    };
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    let field = residual.field();
    if total <= DEFAULT_BRUTE_BOUND {
        let mut idx = vec![0u64; d];
        loop {
            let pt: Vec<Scalar> = idx.iter().map(|&v| field.from_i64(v as i64)).collect();
            if check(&pt) {
                return true;
            }
            let mut k = 0;
            while k < d {
                idx[k] += 1;
                if idx[k] < p {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == d {
                return false;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1dea);
    (0..WITNESS_SAMPLES).any(|_| {
        let pt: Vec<Scalar> = (0..d).map(|_| random_scalar(field, &mut rng)).collect();
        check(&pt)
    })
}

// Dense univariate arithmetic over F_p (ascending coefficients, trimmed).

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let (mut b, mut e, m) = (a as u128 % p as u128, p - 2, p as u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv = fp_inv(*b.last().unwrap(), p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = (*r.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (f as u128 * bi as u128 % p as u128) as u64;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a polynomial of degree ≥ 1 over `F_p`.
pub(crate) fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = fp_rem(&x, &f, p);
    for _ in 1..=n / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, &f, p);
            }
            base = fp_mulmod(&base, &base, &f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_gcd(&f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::GradedPoly;

    fn point(field: Field, coeffs: Vec<GradedPoly>) -> HitchinPoint {
        HitchinPoint::new(field, coeffs[0].nvars(), coeffs).unwrap()
    }

    fn x(field: Field, d: usize, i: usize) -> GradedPoly {
        GradedPoly::var(field, d, i)
    }

    #[test]
    fn splits_constructed_product() {
        let q = Field::Rationals;
        let s = point(q, vec![&x(q, 2, 0) + &x(q, 2, 1), &x(q, 2, 0) * &x(q, 2, 1)]);
        let expect = RootMultiset::new(vec![
            LinearForm::from_i64(q, &[1, 0]),
            LinearForm::from_i64(q, &[0, 1]),
        ]);
        assert_eq!(total_split(&s, SplitConfig::default()), SplitOutcome::Split(expect));
    }

    #[test]
    fn splits_repeated_root() {
        let q = Field::Rationals;
        let s = point(q, vec![x(q, 2, 0).scale(&q.from_i64(2)), x(q, 2, 0).pow(2)]);
        let t = LinearForm::from_i64(q, &[1, 0]);
        assert_eq!(
            total_split(&s, SplitConfig::default()),
            SplitOutcome::Split(RootMultiset::new(vec![t.clone(), t]))
        );
    }

    fn y2_minus_x1x2(field: Field) -> HitchinPoint {
        // s_2 = -x1 x2 encodes y^2 - x1 x2
        point(
            field,
            vec![GradedPoly::zero(field, 2), -&(&x(field, 2, 0) * &x(field, 2, 1))],
        )
    }

    #[test]
    fn y2_minus_x1x2_does_not_split_over_f3() {
        let f3 = Field::Prime(3);
        let s = y2_minus_x1x2(f3);
        assert_eq!(total_split(&s, SplitConfig::default()), SplitOutcome::NotSplit);
        assert_eq!(brute_split(&s, DEFAULT_BRUTE_BOUND).unwrap(), SplitOutcome::NotSplit);
        assert_eq!(
            total_split(&y2_minus_x1x2(Field::Rationals), SplitConfig::default()),
            SplitOutcome::NotSplit
        );
    }

    #[test]
    fn brute_split_examples() {
        let f3 = Field::Prime(3);
        // y^2 - x^2, d = 1: roots x and 2x
        let s = point(f3, vec![GradedPoly::zero(f3, 1), -&x(f3, 1, 0).pow(2)]);
        let expect = RootMultiset::new(vec![
            LinearForm::from_i64(f3, &[1]),
            LinearForm::from_i64(f3, &[2]),
        ]);
        assert_eq!(brute_split(&s, DEFAULT_BRUTE_BOUND).unwrap(), SplitOutcome::Split(expect));

        let s = point(f3, vec![x(f3, 2, 0)]);
        assert_eq!(
            brute_split(&s, DEFAULT_BRUTE_BOUND).unwrap(),
            SplitOutcome::Split(RootMultiset::new(vec![LinearForm::from_i64(f3, &[1, 0])]))
        );
    }

    #[test]
    fn brute_split_bound_and_field() {
        let f7 = Field::Prime(7);
        let s = point(f7, vec![x(f7, 5, 0)]);
        assert!(matches!(
            brute_split(&s, DEFAULT_BRUTE_BOUND),
            Err(Error::BoundExceeded { .. })
        ));
        let q = Field::Rationals;
        assert_eq!(
            brute_split(&point(q, vec![x(q, 1, 0)]), DEFAULT_BRUTE_BOUND),
            Err(Error::RequiresPrimeField)
        );
    }

    #[test]
    fn zero_retries_is_inconclusive() {
        let q = Field::Rationals;
        let s = point(q, vec![x(q, 1, 0)]);
        let cfg = SplitConfig { seed: 0, max_retries: 0 };
        assert_eq!(total_split(&s, cfg), SplitOutcome::Inconclusive);
    }

    #[test]
    fn profile_examples() {
        let f3 = Field::Prime(3);
        let t1 = LinearForm::from_i64(f3, &[1, 0]);
        let t2 = LinearForm::from_i64(f3, &[0, 1]);
        let s = HitchinPoint::from_roots(f3, 2, [&t1, &t2]);
        let prof = split_profile(&s, SplitConfig::default()).unwrap();
        assert_eq!(prof.linear_part, RootMultiset::new(vec![t1.clone(), t2]));
        assert_eq!(prof.residual_degree, 0);
        assert!(prof.residual_certified);

        let cubic = crate::hitchin::hb_product(&HitchinPoint::from_roots(f3, 2, [&t1]), &y2_minus_x1x2(f3)).unwrap();
        let prof = split_profile(&cubic, SplitConfig::default()).unwrap();
        assert_eq!(prof.linear_part, RootMultiset::new(vec![t1]));
        assert_eq!(prof.residual_degree, 2);
        assert!(prof.residual_certified);
        assert_eq!(prof.residual, y2_minus_x1x2(f3));

        let prof = split_profile(&y2_minus_x1x2(f3), SplitConfig::default()).unwrap();
        assert!(prof.linear_part.is_empty());
        assert_eq!(prof.residual_degree, 2);

        let q = Field::Rationals;
        let prof = split_profile(&y2_minus_x1x2(q), SplitConfig::default()).unwrap();
        assert_eq!(prof.residual_degree, 2);
        assert!(!prof.residual_certified);
    }

    #[test]
    fn rational_roots_with_denominators() {
        let q = Field::Rationals;
        // (y - 2/3)(y + 5/2) y
        let c: Vec<Scalar> = ["0", "-5/3", "11/6", "1"].iter().map(|v| q.parse(v).unwrap()).collect();
        let roots = univariate_roots(&c);
        let expect: Vec<Scalar> = ["-5/2", "0", "2/3"].iter().map(|v| q.parse(v).unwrap()).collect();
        assert_eq!(roots, expect);
    }

    #[test]
    fn ben_or() {
        // y^2 + 1 irreducible over F_3, y^2 - 1 not
        assert!(fp_irreducible(&[1, 0, 1], 3));
        assert!(!fp_irreducible(&[2, 0, 1], 3));
        // y^4 + 1 = (y^2+y+2)(y^2+2y+2) over F_3
        assert!(!fp_irreducible(&[1, 0, 0, 0, 1], 3));
        // y^3 - y - 1 irreducible over F_3
        assert!(fp_irreducible(&[2, 2, 0, 1], 3));
    }
}
