//! Finite group actions on `V = k^d` and on the Hitchin base: invariance,
//! orbit factorization of totally split points, descent to the stabilizer
//! of a root, and the image of the Hitchin morphism for Galois-twisted
//! (hyperelliptic) and abelian data.
//!
//! Convention: a matrix `g` acts on linear forms through their coefficient
//! vectors, `(g·t)(x) = t(gᵀx)`, and on polynomials by the same
//! substitution, so `g·e_i(t_1, …, t_r) = e_i(g·t_1, …, g·t_r)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::GroupRep;
use crate::hitchin::{HitchinPoint, RootMultiset};
use crate::matrix::Matrix;
use crate::poly::{GradedPoly, LinearForm};
use crate::scalar::Field;
use crate::split::{total_split, SplitConfig, SplitOutcome};

pub fn act_poly(g: &Matrix, p: &GradedPoly) -> GradedPoly {
    p.substitute_linear(&g.transpose())
}

pub fn act_point(g: &Matrix, s: &HitchinPoint) -> HitchinPoint {
    s.map_coeffs(|c| act_poly(g, c))
}

fn check_dims(s: &HitchinPoint, group: &GroupRep) -> Result<()> {
    crate::error::check_field(s.field(), group.field())?;
    if s.nvars() != group.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has d = {}, group acts on dimension {}",
            s.nvars(),
            group.dim()
        )));
    }
    Ok(())
}

/// True iff every generator fixes every coefficient.
pub fn is_invariant(s: &HitchinPoint, group: &GroupRep) -> Result<bool> {
    check_dims(s, group)?;
    Ok(group
        .generators()
        .iter()
        .all(|&g| act_point(group.element(g), s) == *s))
}

/// The orbit of `t` in element order (first occurrence), and its stabilizer.
pub fn orbit_stabilizer(t: &LinearForm, group: &GroupRep) -> (Vec<LinearForm>, Vec<usize>) {
    let mut orbit: Vec<LinearForm> = Vec::new();
    let mut stabilizer = Vec::new();
    for (i, g) in group.elements().iter().enumerate() {
        let u = t.act(g);
        if u == *t {
            stabilizer.push(i);
        }
        if !orbit.contains(&u) {
            orbit.push(u);
        }
    }
    debug_assert_eq!(orbit.len() * stabilizer.len(), group.order());
    (orbit, stabilizer)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub roots: Vec<LinearForm>,
    pub multiplicity: usize,
    /// Stabilizer of `roots[0]`, as element indices.
    pub stabilizer: Vec<usize>,
    /// `∏_{u ∈ orbit} (y − u)^multiplicity`.
    pub invariant_factor: HitchinPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
}

fn split_roots(s: &HitchinPoint, cfg: SplitConfig) -> Result<RootMultiset> {
    match total_split(s, cfg) {
        SplitOutcome::Split(roots) => Ok(roots),
        SplitOutcome::NotSplit => Err(Error::NotSplitOverField),
        SplitOutcome::Inconclusive => Err(Error::Inconclusive),
    }
}

/// Partitions the roots of a totally split invariant point into orbits.
pub fn orbit_factorization(
    s: &HitchinPoint,
    group: &GroupRep,
    cfg: SplitConfig,
) -> Result<OrbitDecomposition> {
    if !is_invariant(s, group)? {
        return Err(Error::NotInvariant);
    }
    let roots = split_roots(s, cfg)?;
    orbits_of(&roots, s.field(), s.nvars(), group)
}

fn orbits_of(
    roots: &RootMultiset,
    field: Field,
    nvars: usize,
    group: &GroupRep,
) -> Result<OrbitDecomposition> {
    let mult: BTreeMap<LinearForm, usize> = roots.multiplicities().into_iter().collect();
    let mut assigned: Vec<&LinearForm> = Vec::new();
    let mut orbits = Vec::new();
    for (t, &m) in &mult {
        if assigned.contains(&t) {
            continue;
        }
        let (orbit, stabilizer) = orbit_stabilizer(t, group);
        for u in &orbit {
            match mult.get_key_value(u) {
                Some((key, &mu)) if mu == m => assigned.push(key),
                _ => {
                    return Err(Error::Internal(format!(
                        "orbit of {t} is not contained in the roots with equal multiplicity"
                    )))
                }
            }
        }
        let factor_roots: Vec<&LinearForm> =
            orbit.iter().flat_map(|u| std::iter::repeat_n(u, m)).collect();
        let invariant_factor = HitchinPoint::from_roots(field, nvars, factor_roots);
        if !is_invariant(&invariant_factor, group)? {
            return Err(Error::Internal(format!("orbit factor of {t} is not invariant")));
        }
        orbits.push(Orbit {
            roots: orbit,
            multiplicity: m,
            stabilizer,
            invariant_factor,
        });
    }
    Ok(OrbitDecomposition { orbits })
}

/// Descent data of a transitive orbit of pairwise distinct roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralDatum {
    /// Stabilizer `H` of the chosen root.
    pub subgroup: Vec<usize>,
    /// `coset_reps[j]` maps the chosen root to `orbit[j]`.
    pub coset_reps: Vec<usize>,
    pub root: LinearForm,
    pub orbit: Vec<LinearForm>,
    /// For each group element, the induced permutation of `orbit` (= `G/H`).
    pub coset_action: Vec<Vec<usize>>,
    pub decomposition_type: usize,
}

impl SpectralDatum {
    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    /// Characteristic polynomial of the diagonal Higgs field `diag(orbit)`.
    pub fn reconstruct(&self, field: Field, nvars: usize) -> HitchinPoint {
        HitchinPoint::from_roots(field, nvars, &self.orbit)
    }
}

pub fn descend(s: &HitchinPoint, group: &GroupRep, cfg: SplitConfig) -> Result<SpectralDatum> {
    let decomposition = orbit_factorization(s, group, cfg)?;
    if decomposition.orbits.iter().any(|o| o.multiplicity > 1) {
        return Err(Error::RepeatedRoots);
    }
    if decomposition.orbits.len() != 1 {
        return Err(Error::NotTransitive(decomposition.orbits.len()));
    }
    let orbit = decomposition.orbits.into_iter().next().expect("one orbit");
    let root = orbit.roots[0].clone();
    let position = |u: &LinearForm| orbit.roots.iter().position(|v| v == u).expect("orbit is closed");
    let coset_reps = orbit
        .roots
        .iter()
        .map(|u| {
            group
                .elements()
                .iter()
                .position(|g| root.act(g) == *u)
                .expect("u lies in the orbit")
        })
        .collect();
    let coset_action = group
        .elements()
        .iter()
        .map(|g| orbit.roots.iter().map(|u| position(&u.act(g))).collect())
        .collect();
    let datum = SpectralDatum {
        subgroup: orbit.stabilizer,
        coset_reps,
        root,
        decomposition_type: orbit.roots.len(),
        orbit: orbit.roots,
        coset_action,
    };
    if datum.reconstruct(s.field(), s.nvars()) != *s {
        return Err(Error::Internal("descended orbit does not reconstruct s".into()));
    }
    Ok(datum)
}

/// Membership in the image of the Hitchin morphism: `s` is invariant and
/// splits into linear factors over `V`. For the trivial group this is the
/// abelian case `(A^d)^r // S_r`.
pub fn image_check(s: &HitchinPoint, group: &GroupRep, cfg: SplitConfig) -> Result<bool> {
    if !is_invariant(s, group)? {
        return Ok(false);
    }
    match total_split(s, cfg) {
        SplitOutcome::Split(_) => Ok(true),
        SplitOutcome::NotSplit => Ok(false),
        SplitOutcome::Inconclusive => Err(Error::Inconclusive),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HSplitEntry {
    pub orbit_size: usize,
    pub stabilizer_order: usize,
}

/// Per-orbit index data; asserts `[G : Stab] ≤ r` and invariance of each
/// orbit factor.
pub fn h_split_report(
    s: &HitchinPoint,
    group: &GroupRep,
    cfg: SplitConfig,
) -> Result<Vec<HSplitEntry>> {
    let decomposition = orbit_factorization(s, group, cfg)?;
    let r = s.rank();
    decomposition
        .orbits
        .iter()
        .map(|o| {
            let index = group.order() / o.stabilizer.len();
            if index > r || index != o.roots.len() {
                return Err(Error::Internal(format!(
                    "stabilizer index {index} exceeds r = {r}"
                )));
            }
            Ok(HSplitEntry {
                orbit_size: o.roots.len(),
                stabilizer_order: o.stabilizer.len(),
            })
        })
        .collect()
}

/// `Z(m1) ≤ Z(m2)` in the stratification by decomposition type.
pub fn stratum_order(m1: usize, m2: usize) -> bool {
    assert!(m1 >= 1 && m2 >= 1, "decomposition types are positive");
    m2.is_multiple_of(m1)
}

const POOL_ROUNDS: usize = 8;
const QUOTIENT_HEIGHT: i64 = 9;

fn random_vector(field: Field, d: usize, rng: &mut ChaCha8Rng) -> LinearForm {
    let coeffs = (0..d)
        .map(|_| match field {
            Field::Rationals => field.from_i64(rng.gen_range(-QUOTIENT_HEIGHT..=QUOTIENT_HEIGHT)),
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        })
        .collect();
    LinearForm::new(field, coeffs)
}

/// Picks orbits whose sizes sum to `target`, preferring earlier orbits;
/// each orbit used at most once unless `repeat`.
fn choose_orbits(sizes: &[usize], target: usize, repeat: bool) -> Option<Vec<usize>> {
    let n = sizes.len();
    // reach[i][t]: orbits i.. can realize exactly t
    let mut reach = vec![vec![false; target + 1]; n + 1];
    reach[n][0] = true;
    for i in (0..n).rev() {
        for t in 0..=target {
            let rest = if repeat { i } else { i + 1 };
            reach[i][t] = reach[i + 1][t] || (sizes[i] <= t && reach[rest][t - sizes[i]]);
        }
    }
    if !reach[0][target] {
        return None;
    }
    let mut picks = Vec::new();
    let (mut i, mut t) = (0, target);
    while t > 0 {
        let rest = if repeat { i } else { i + 1 };
        if sizes[i] <= t && reach[rest][t - sizes[i]] {
            picks.push(i);
            t -= sizes[i];
            i = rest;
        } else {
            i += 1;
        }
    }
    Some(picks)
}

/// A seeded `G`-stable multiset of `r` linear forms, built from full orbits
/// of random vectors (the zero vector supplies a size-1 orbit).
pub fn stable_multiset(group: &GroupRep, r: usize, seed: u64) -> Result<RootMultiset> {
    let (field, d) = (group.field(), group.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orbits: Vec<Vec<LinearForm>> = Vec::new();
    for round in 0..POOL_ROUNDS {
        for _ in 0..(4 + 4 * round) {
            let t = random_vector(field, d, &mut rng);
            if t.is_zero() || orbits.iter().any(|o| o.contains(&t)) {
                continue;
            }
            orbits.push(orbit_stabilizer(&t, group).0);
        }
        let mut ordered: Vec<&Vec<LinearForm>> = orbits.iter().collect();
        // larger orbits first; stable sort keeps draw order among equals
        ordered.sort_by_key(|o| std::cmp::Reverse(o.len()));
        let zero = vec![LinearForm::zero(field, d)];
        ordered.push(&zero);
        let sizes: Vec<usize> = ordered.iter().map(|o| o.len()).collect();
        let picks = choose_orbits(&sizes, r, false).or_else(|| choose_orbits(&sizes, r, true));
        if let Some(picks) = picks {
            let roots = picks.iter().flat_map(|&i| ordered[i].iter().cloned()).collect();
            return Ok(RootMultiset::new(roots));
        }
    }
    Err(Error::NoCombination)
}

/// A seeded point of the image: elementary symmetric functions of a
/// `G`-stable multiset.
pub fn image_sample(group: &GroupRep, r: usize, seed: u64) -> Result<HitchinPoint> {
    let roots = stable_multiset(group, r, seed)?;
    Ok(roots.to_point(group.field(), group.dim()))
}

/// Homogeneous monomials of degree `deg` in `nvars` variables, as
/// polynomials with coefficient 1.
pub fn monomials(field: Field, nvars: usize, deg: u32) -> Vec<GradedPoly> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(nvars, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut exps = Vec::new();
    rec(nvars, deg, &mut Vec::new(), &mut exps);
    exps.into_iter()
        .map(|e| {
            GradedPoly::from_terms(field, nvars, [(crate::poly::Monomial::new(e), field.one())])
        })
        .collect()
}

/// The first degree-`deg` monomial not fixed by the group, if any.
pub fn non_invariant_monomial(group: &GroupRep, deg: u32) -> Option<GradedPoly> {
    monomials(group.field(), group.dim(), deg).into_iter().find(|m| {
        group
            .generators()
            .iter()
            .any(|&g| act_poly(group.element(g), m) != *m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::close_group;
    use crate::hitchin::hb_product;

    fn q() -> Field {
        Field::Rationals
    }

    fn minus_one() -> GroupRep {
        close_group(q(), 1, &[Matrix::from_i64(q(), &[&[-1]])]).unwrap()
    }

    fn klein() -> GroupRep {
        close_group(
            q(),
            2,
            &[
                Matrix::from_i64(q(), &[&[1, 0], &[0, -1]]),
                Matrix::from_i64(q(), &[&[-1, 0], &[0, 1]]),
            ],
        )
        .unwrap()
    }

    fn lf(c: &[i64]) -> LinearForm {
        LinearForm::from_i64(q(), c)
    }

    fn x(d: usize, i: usize) -> GradedPoly {
        GradedPoly::var(q(), d, i)
    }

    fn y2_minus_x2() -> HitchinPoint {
        HitchinPoint::new(q(), 1, vec![GradedPoly::zero(q(), 1), -&x(1, 0).pow(2)]).unwrap()
    }

    #[test]
    fn act_examples() {
        let neg = Matrix::from_i64(q(), &[&[-1]]);
        assert_eq!(act_poly(&neg, &x(1, 0)), -&x(1, 0));
        let swap = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        let x1x2 = &x(2, 0) * &x(2, 1);
        assert_eq!(act_poly(&swap, &x1x2), x1x2);
        assert_eq!(act_poly(&swap, &x(2, 0).pow(2)), x(2, 1).pow(2));
    }

    #[test]
    fn action_commutes_with_elementary_symmetric() {
        let g = Matrix::from_i64(q(), &[&[2, 1], &[-1, 3]]);
        let roots = [lf(&[1, 2]), lf(&[-3, 1]), lf(&[0, 4])];
        let moved: Vec<LinearForm> = roots.iter().map(|t| t.act(&g)).collect();
        assert_eq!(
            act_point(&g, &HitchinPoint::from_roots(q(), 2, &roots)),
            HitchinPoint::from_roots(q(), 2, &moved)
        );
    }

    #[test]
    fn invariance_examples() {
        assert!(is_invariant(&y2_minus_x2(), &minus_one()).unwrap());
        let s = HitchinPoint::new(q(), 1, vec![x(1, 0), GradedPoly::zero(q(), 1)]).unwrap();
        assert!(!is_invariant(&s, &minus_one()).unwrap());
        assert!(is_invariant(&s, &GroupRep::trivial(q(), 1)).unwrap());
    }

    #[test]
    fn orbit_factorization_examples() {
        let cfg = SplitConfig::default();
        let dec = orbit_factorization(&y2_minus_x2(), &minus_one(), cfg).unwrap();
        assert_eq!(dec.orbits.len(), 1);
        assert_eq!(dec.orbits[0].roots, vec![lf(&[-1]), lf(&[1])]);
        assert_eq!(dec.orbits[0].stabilizer, vec![0]);
        assert_eq!(dec.orbits[0].invariant_factor, y2_minus_x2());

        let g = close_group(q(), 2, &[Matrix::from_i64(q(), &[&[-1, 0], &[0, -1]])]).unwrap();
        let s = HitchinPoint::from_roots(q(), 2, &[lf(&[1, 0]), lf(&[-1, 0]), lf(&[0, 1]), lf(&[0, -1])]);
        let dec = orbit_factorization(&s, &g, cfg).unwrap();
        assert_eq!(dec.orbits.len(), 2);
        assert!(dec.orbits.iter().all(|o| o.roots.len() == 2));

        let s = HitchinPoint::from_roots(q(), 2, &[lf(&[1, 0]), lf(&[0, 1])]);
        let dec = orbit_factorization(&s, &GroupRep::trivial(q(), 2), cfg).unwrap();
        assert_eq!(dec.orbits.len(), 2);
    }

    #[test]
    fn orbit_factorization_errors() {
        let cfg = SplitConfig::default();
        let s = HitchinPoint::new(q(), 1, vec![x(1, 0)]).unwrap();
        assert_eq!(orbit_factorization(&s, &minus_one(), cfg), Err(Error::NotInvariant));
        // y^2 - 2x^2 is invariant but irrational
        let s = HitchinPoint::new(
            q(),
            1,
            vec![GradedPoly::zero(q(), 1), x(1, 0).pow(2).scale(&q().from_i64(-2))],
        )
        .unwrap();
        assert_eq!(orbit_factorization(&s, &minus_one(), cfg), Err(Error::NotSplitOverField));
    }

    #[test]
    fn descend_examples() {
        let cfg = SplitConfig::default();
        let datum = descend(&y2_minus_x2(), &minus_one(), cfg).unwrap();
        assert_eq!(datum.subgroup, vec![0]);
        assert_eq!(datum.coset_reps, vec![0, 1]);
        assert_eq!(datum.decomposition_type, 2);
        assert_eq!(datum.orbit, vec![lf(&[-1]), lf(&[1])]);
        assert_eq!(datum.coset_action, vec![vec![0, 1], vec![1, 0]]);

        let s = HitchinPoint::from_roots(q(), 1, &[lf(&[1]), lf(&[1])]);
        assert_eq!(descend(&s, &GroupRep::trivial(q(), 1), cfg), Err(Error::RepeatedRoots));

        let roots = [lf(&[1, 1]), lf(&[1, -1]), lf(&[-1, 1]), lf(&[-1, -1])];
        let s = roots[1..].iter().fold(HitchinPoint::from_roots(q(), 2, &roots[..1]), |acc, t| {
            hb_product(&acc, &HitchinPoint::from_roots(q(), 2, [t])).unwrap()
        });
        let datum = descend(&s, &klein(), cfg).unwrap();
        assert_eq!(datum.subgroup, vec![0]);
        assert_eq!(datum.decomposition_type, 4);
        assert_eq!(datum.reconstruct(q(), 2), s);
    }

    #[test]
    fn descend_rejects_two_orbits() {
        let s = HitchinPoint::from_roots(q(), 2, &[lf(&[1, 0]), lf(&[0, 1])]);
        assert_eq!(
            descend(&s, &GroupRep::trivial(q(), 2), SplitConfig::default()),
            Err(Error::NotTransitive(2))
        );
    }

    #[test]
    fn image_check_examples() {
        let cfg = SplitConfig::default();
        assert!(image_check(&y2_minus_x2(), &minus_one(), cfg).unwrap());
        let s = HitchinPoint::new(q(), 1, vec![x(1, 0), GradedPoly::zero(q(), 1)]).unwrap();
        assert!(!image_check(&s, &minus_one(), cfg).unwrap());
        let f3 = Field::Prime(3);
        let s = HitchinPoint::new(
            f3,
            2,
            vec![
                GradedPoly::zero(f3, 2),
                -&(&GradedPoly::var(f3, 2, 0) * &GradedPoly::var(f3, 2, 1)),
            ],
        )
        .unwrap();
        assert!(!image_check(&s, &GroupRep::trivial(f3, 2), cfg).unwrap());
    }

    #[test]
    fn image_sample_shapes() {
        let cfg = SplitConfig::default();
        let s = image_sample(&GroupRep::trivial(q(), 2), 2, 7).unwrap();
        assert!(image_check(&s, &GroupRep::trivial(q(), 2), cfg).unwrap());

        let roots = stable_multiset(&minus_one(), 2, 3).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots.roots()[0], roots.roots()[1].neg());
        assert!(!roots.roots()[0].is_zero());

        let roots = stable_multiset(&minus_one(), 3, 3).unwrap();
        assert_eq!(roots.roots().iter().filter(|t| t.is_zero()).count(), 1);

        let roots = stable_multiset(&minus_one(), 1, 3).unwrap();
        assert_eq!(roots.roots(), &[LinearForm::zero(q(), 1)]);
    }

    #[test]
    fn h_split_examples() {
        let cfg = SplitConfig::default();
        assert_eq!(
            h_split_report(&y2_minus_x2(), &minus_one(), cfg).unwrap(),
            vec![HSplitEntry { orbit_size: 2, stabilizer_order: 1 }]
        );
        let s = HitchinPoint::from_roots(q(), 2, &[lf(&[1, 0]), lf(&[0, 1]), lf(&[1, 1])]);
        let report = h_split_report(&s, &GroupRep::trivial(q(), 2), cfg).unwrap();
        assert_eq!(report, vec![HSplitEntry { orbit_size: 1, stabilizer_order: 1 }; 3]);
    }

    #[test]
    fn stratum_order_examples() {
        assert!(stratum_order(1, 4));
        assert!(stratum_order(2, 4));
        assert!(!stratum_order(3, 4));
    }

    #[test]
    fn orbit_chooser_prefers_large_orbits() {
        assert_eq!(choose_orbits(&[2, 1], 2, false), Some(vec![0]));
        assert_eq!(choose_orbits(&[2, 1], 3, false), Some(vec![0, 1]));
        assert_eq!(choose_orbits(&[2], 3, false), None);
        assert_eq!(choose_orbits(&[2, 1], 5, true).map(|v| v.len()), Some(3));
    }
}
