//! Closed-form character sums: principal-subspace characters in R-form and
//! P-form (with primed variants), the vacuum-space lattice sum, the full
//! module character, and the parafermionic character.
//!
//! Every sum runs over a provably complete finite domain: the minimal exponent
//! of each summand is computed exactly (forms::minimal_energy and the K/C
//! quadratic data), and the definiteness facts behind the domain bounds are
//! asserted per instance.

use crate::error::{Error, Result};
use crate::forms::{self, Column};
use crate::linalg::{self, Mat, Q};
use crate::root_system::{rat, rat_to_q, Instance, Rat, RootSystem};
use crate::series::{pochhammer_inv, Energy, GradedSeries};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

/// Which space a character request targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Principal,
    PrincipalPrimed,
    Vacuum,
    Module,
    Parafermionic,
}

/// Which parameterization of the principal-subspace sum to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Form {
    #[default]
    RSum,
    PSum,
}

#[derive(Clone, Copy, Debug)]
pub struct CharacterRequest {
    pub space: Space,
    pub form: Form,
    pub truncation: Energy,
}

/// F-factor of one color: q^{sum r^2 + window sum} / prod_t (q;q)_{p^(t)};
/// weight-neutral, weights are attached by the caller.
pub fn f_factor(inst: &Instance, i: usize, col: &[i64], trunc: Energy) -> Result<GradedSeries> {
    if col.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Input(format!(
            "dual-charge column must be weakly decreasing, got {col:?}"
        )));
    }
    if col.iter().any(|&r| r < 0) {
        return Err(Error::Input("negative dual-charge entry".into()));
    }
    let l = inst.rs.rank();
    let height = col.len().max(1);
    let p = forms::p_of_column(col, height);
    let mut s = GradedSeries::monomial(
        Energy::from_integer(forms::f_exponent(inst, i, col)),
        vec![0; l],
        trunc,
    );
    for pt in p {
        s = s.times(&pochhammer_inv(pt, l, trunc));
    }
    Ok(s)
}

/// I-factor monomial q^{-exponent}; identically 1 for i = 1.
pub fn i_factor(inst: &Instance, i: usize, col_i: &[i64], col_ip: &[i64], trunc: Energy) -> GradedSeries {
    let l = inst.rs.rank();
    let e = forms::i_exponent(inst, i, col_i, col_ip);
    GradedSeries::monomial(Energy::from_integer(-e), vec![0; l], trunc)
}

/// Full weight-neutral product prod_i F_{R_i} I^{i i'} for one dual-charge
/// type, truncated at `trunc`. Internally widens the truncation by the total
/// I-exponent so nothing that the negative I-shift would bring back is lost.
pub fn type_series(inst: &Instance, cols: &[Column], trunc: Energy) -> GradedSeries {
    let l = inst.rs.rank();
    let d_i: i64 = (1..=l)
        .map(|i| match inst.rs.i_prime(i) {
            Some(ip) => forms::i_exponent(inst, i, &cols[i - 1], &cols[ip - 1]),
            None => 0,
        })
        .sum();
    let wide = trunc + Energy::from_integer(d_i);
    let mut prod = GradedSeries::one(l, wide);
    for i in 1..=l {
        prod = prod.times(&f_factor(inst, i, &cols[i - 1], wide).expect("valid column"));
        if let Some(ip) = inst.rs.i_prime(i) {
            prod = prod.times(&i_factor(inst, i, &cols[i - 1], &cols[ip - 1], wide));
        }
    }
    prod.truncated(trunc)
}

fn weight_i32(beta: &[i64]) -> Vec<i32> {
    beta.iter().map(|&x| i32::try_from(x).expect("small weight")).collect()
}

/// Candidate dual-charge types with minimal energy <= bound.
fn candidate_types(inst: &Instance, bound: Rat, primed: bool) -> Vec<Vec<Column>> {
    let l = inst.rs.rank();
    let caps = forms::charge_caps(inst, bound);
    let per_color: Vec<Vec<Column>> = (1..=l)
        .map(|i| {
            let height = (inst.k_alpha(i) - if primed { 1 } else { 0 }) as usize;
            forms::columns_up_to(height, caps[i - 1])
        })
        .collect();
    let mut types: Vec<Vec<Column>> = vec![Vec::new()];
    for cols in &per_color {
        let mut next = Vec::with_capacity(types.len() * cols.len());
        for t in &types {
            for c in cols {
                let mut t2 = t.clone();
                t2.push(c.clone());
                next.push(t2);
            }
        }
        types = next;
    }
    let bound_floor = bound.floor().to_integer();
    types.retain(|r| forms::minimal_energy(inst, r) <= bound_floor);
    types
}

/// Principal-subspace character as the R-parameterized sum
/// sum_R prod_i F_{R_i} I^{i i'} prod_p y_p^{n_p}.
pub fn principal_char_r(inst: &Instance, trunc: Energy, primed: bool) -> GradedSeries {
    forms::assert_definiteness(inst);
    let l = inst.rs.rank();
    let types = candidate_types(inst, trunc, primed);
    let parts: Vec<GradedSeries> = types
        .par_iter()
        .map(|cols| {
            let beta: Vec<i64> = cols.iter().map(|c| forms::column_charge(c)).collect();
            type_series(inst, cols, trunc).shift(Energy::zero(), &weight_i32(&beta))
        })
        .collect();
    let mut acc = GradedSeries::zero(l, trunc);
    for p in parts {
        acc = acc.plus(&p);
    }
    acc
}

/// Nonnegative integer tuples p (flattened in charge_levels order) with
/// n_i(P) within the per-color caps, lexicographic order.
fn candidate_p_tuples(inst: &Instance, bound: Rat, primed: bool) -> Vec<forms::PTuple> {
    let idx = forms::charge_levels(inst, primed);
    let caps = forms::charge_caps(inst, bound);
    let mut out: Vec<forms::PTuple> = vec![Vec::new()];
    for &(i, m) in &idx {
        let mut next = Vec::new();
        for t in &out {
            // Budget left for color i at charge m: n_i so far + m*p <= cap_i.
            let used: i64 = idx[..t.len()]
                .iter()
                .zip(t.iter())
                .filter(|(&(ci, _), _)| ci == i)
                .map(|(&(_, cm), &v)| cm * v)
                .sum();
            let room = (caps[i - 1] - used).max(-1);
            for v in 0..=(room / m).max(-1) {
                let mut t2 = t.clone();
                t2.push(v);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Principal-subspace character as the P-parameterized sum
/// sum_P D_P G_P B_P prod y_i^{n_i}; independent route, must equal the R-form.
pub fn principal_char_p(inst: &Instance, trunc: Energy, primed: bool) -> GradedSeries {
    forms::assert_definiteness(inst);
    let l = inst.rs.rank();
    let idx = forms::charge_levels(inst, primed);
    let mut tuples = candidate_p_tuples(inst, trunc, primed);
    tuples.retain(|p| {
        rat(forms::gp_exponent(inst, &idx, p) + forms::bp_exponent(inst, &idx, p)) <= trunc
    });
    let parts: Vec<GradedSeries> = tuples
        .par_iter()
        .map(|p| {
            let shift = forms::gp_exponent(inst, &idx, p) + forms::bp_exponent(inst, &idx, p);
            let beta = forms::beta_of_p(inst, &idx, p);
            let mut d = GradedSeries::one(l, trunc);
            for &pt in p {
                d = d.times(&pochhammer_inv(pt, l, trunc));
            }
            d.shift(Energy::from_integer(shift), &weight_i32(&beta))
        })
        .collect();
    let mut acc = GradedSeries::zero(l, trunc);
    for p in parts {
        acc = acc.plus(&p);
    }
    acc
}

/// Weyl-translation shift data for mu = sum_i c_i alpha_i^vee acting on a
/// vector of h-weight Lambda-bar + beta: the h-weight moves by
/// sum_i c_i k_{alpha_i} alpha_i and the delta-depth by
/// lambda(mu) + (k/2) <mu, mu>.
pub fn weyl_shift(
    rs: &RootSystem,
    weight: &crate::root_system::HighestWeight,
    mu: &[i64],
    beta: &[i64],
) -> Result<(Vec<i64>, i64)> {
    let l = rs.rank();
    let k = weight.level();
    let weight_shift: Vec<i64> = (0..l).map(|i| mu[i] * rs.k_alpha(i + 1, k)).collect();
    // lambda(mu) = <Lambda-bar + beta, mu>
    let mut lam_mu: i64 = 0;
    for i in 1..=l {
        if mu[i - 1] == 0 {
            continue;
        }
        let lb = if i == weight.j { weight.kj } else { 0 };
        lam_mu += mu[i - 1] * (lb + rs.pair_coroot(beta, i));
    }
    // (k/2) <mu, mu> via the coroot pairing; <mu,mu> is even.
    let mut mumu: i64 = 0;
    for i in 1..=l {
        for r in 1..=l {
            mumu += mu[i - 1] * mu[r - 1] * rs.coroot_pairing(i, r);
        }
    }
    if (k * mumu) % 2 != 0 {
        return Err(Error::InternalConsistency(format!(
            "non-integer depth shift for mu={mu:?}: k<mu,mu> = {}",
            k * mumu
        )));
    }
    Ok((weight_shift, lam_mu + k * mumu / 2))
}

/// One (dual-charge-type, mu) cell of the vacuum-space lattice sum.
struct LatticeCell {
    cols: Vec<Column>,
    beta: Vec<i64>,
    /// mu in coroot coordinates.
    mu: Vec<i64>,
    /// Depth shift of e_mu on top of the type's own energies.
    shift: i64,
    /// h-weight in alpha-coordinates after the shift.
    out_weight: Vec<i64>,
}

/// Complete list of lattice cells with minimal depth <= trunc.
fn lattice_cells(inst: &Instance, trunc: Energy) -> Vec<LatticeCell> {
    let rs = inst.rs;
    let l = rs.rank();
    let k = inst.level();
    let idx = forms::charge_levels(inst, true);
    // Minimal depth of a cell is conf_min(P) + (1/2k)|beta+k mu|^2
    // + (k_j/k_alpha_j)(beta + k mu)_j, so P is confined by conf_min <= trunc - g0
    // with g0 the exact real minimum of the lattice part.
    let g_over_k = Mat::from_fn(l, |i, r| {
        rat_to_q(rs.pairing(i + 1, r + 1) / rat(k))
    });
    let lin_j: Vec<Q> = (0..l)
        .map(|i| {
            if i + 1 == inst.weight.j {
                rat_to_q(Rat::new(inst.weight.kj, inst.k_alpha(inst.weight.j)))
            } else {
                Q::zero()
            }
        })
        .collect();
    let g0 = linalg::quadratic_minimum(&g_over_k, &lin_j);
    let g0 = Rat::new(
        i64::try_from(g0.numer()).expect("desk scale"),
        i64::try_from(g0.denom()).expect("desk scale"),
    );
    let p_feasible = forms::primed_p_with_conf_min_le(inst, trunc - g0);

    let mut cells = Vec::new();
    for p in &p_feasible {
        let cols = forms::columns_of_p_tuple(inst, p, true);
        let beta = forms::beta_of_p(inst, &idx, p);
        let q_min = forms::minimal_energy(inst, &cols);
        // Depth shift of e_mu as a quadratic in the coroot coordinates c:
        // (k/2)<mu,mu> + <Lambda-bar + beta, mu>.
        let a = Mat::from_fn(l, |i, r| linalg::qi(k * rs.coroot_pairing(i + 1, r + 1)));
        let b: Vec<Q> = (1..=l)
            .map(|i| {
                let lb = if i == inst.weight.j { inst.weight.kj } else { 0 };
                linalg::qi(lb + rs.pair_coroot(&beta, i))
            })
            .collect();
        let room = trunc - rat(q_min);
        for mu in linalg::ellipsoid_points(&a, &b, &rat_to_q(room)) {
            let (wshift, dshift) = weyl_shift(rs, &inst.weight, &mu, &beta)
                .expect("integral depth shift");
            let out_weight: Vec<i64> = (0..l).map(|s| beta[s] + wshift[s]).collect();
            cells.push(LatticeCell {
                cols: cols.clone(),
                beta: beta.clone(),
                mu,
                shift: dshift,
                out_weight,
            });
        }
    }
    // Deterministic order regardless of ellipsoid iteration details.
    cells.sort_by(|a, b| (&a.beta, &a.mu).cmp(&(&b.beta, &b.mu)));
    cells
}

/// Vacuum-space character: sum over mu in the coroot lattice of the Weyl
/// shift applied termwise to the primed principal character. Grading: q is
/// delta-depth, y the h-weight in alpha-coordinates relative to Lambda-bar.
pub fn vacuum_char(inst: &Instance, trunc: Energy) -> GradedSeries {
    forms::assert_definiteness(inst);
    let l = inst.rs.rank();
    let cells = lattice_cells(inst, trunc);
    let parts: Vec<GradedSeries> = cells
        .par_iter()
        .map(|cell| {
            // The cell needs type terms up to trunc - shift (shift may be
            // negative, so the inner series is computed on its own domain).
            let inner_trunc = trunc - Energy::from_integer(cell.shift);
            let inner = type_series(inst, &cell.cols, inner_trunc);
            let mut out = GradedSeries::zero(l, trunc);
            let w = weight_i32(&cell.out_weight);
            for (e, _, c) in inner.iter() {
                out.add_term(e + Energy::from_integer(cell.shift), w.clone(), c);
            }
            out
        })
        .collect();
    let mut acc = GradedSeries::zero(l, trunc);
    for p in parts {
        acc = acc.plus(&p);
    }
    acc
}

/// Full-module character: Fock factor times the vacuum character.
pub fn module_char(inst: &Instance, trunc: Energy) -> GradedSeries {
    let l = inst.rs.rank();
    let fock = crate::series::euler_power(-1, l, l, trunc);
    fock.times(&vacuum_char(inst, trunc))
}

/// Window class (beta_i mod k_{alpha_i}) of a color-type.
fn window_class(inst: &Instance, beta: &[i64]) -> Vec<i64> {
    (0..inst.rs.rank())
        .map(|i| beta[i].rem_euclid(inst.k_alpha(i + 1)))
        .collect()
}

fn parafermionic_sum(inst: &Instance, trunc: Energy, class: Option<&[i64]>) -> GradedSeries {
    forms::assert_definiteness(inst);
    let l = inst.rs.rank();
    let idx = forms::charge_levels(inst, true);
    let feasible = forms::primed_p_with_conf_min_le(inst, trunc);
    let parts: Vec<GradedSeries> = feasible
        .par_iter()
        .filter(|p| match class {
            Some(c) => window_class(inst, &forms::beta_of_p(inst, &idx, p)) == c,
            None => true,
        })
        .map(|p| {
            let e0 = forms::kp_exponent(inst, &idx, p) + forms::cp_exponent(inst, &idx, p);
            let mut d = GradedSeries::one(l, trunc - e0);
            for &pt in p {
                d = d.times(&pochhammer_inv(pt, l, trunc - e0));
            }
            let mut out = GradedSeries::zero(l, trunc);
            for (e, w, c) in d.iter() {
                out.add_term(e + e0, w.to_vec(), c);
            }
            out
        })
        .collect();
    let mut acc = GradedSeries::zero(l, trunc);
    for p in parts {
        acc = acc.plus(&p);
    }
    acc
}

/// Parafermionic character sum_P D'_P C_P K_P; a pure q-series (weight
/// vectors all zero), exponents rational.
pub fn parafermionic_char(inst: &Instance, trunc: Energy) -> GradedSeries {
    parafermionic_sum(inst, trunc, None)
}

/// Per-window-class refinement of the parafermionic character: the P-sum
/// restricted to the class n_i(P) = m_i mod k_{alpha_i}. Classes in
/// lexicographic order; their sum is the full character.
pub fn parafermionic_char_per_class(
    inst: &Instance,
    trunc: Energy,
) -> Vec<(Vec<i64>, GradedSeries)> {
    let l = inst.rs.rank();
    let mut classes: Vec<Vec<i64>> = vec![Vec::new()];
    for i in 1..=l {
        let mut next = Vec::new();
        for c in &classes {
            for m in 0..inst.k_alpha(i) {
                let mut c2 = c.clone();
                c2.push(m);
                next.push(c2);
            }
        }
        classes = next;
    }
    classes
        .into_iter()
        .map(|c| {
            let s = parafermionic_sum(inst, trunc, Some(&c));
            (c, s)
        })
        .collect()
}

/// Dispatcher used by the CLI.
pub fn compute(inst: &Instance, req: &CharacterRequest) -> Result<GradedSeries> {
    if req.truncation.is_negative() {
        return Err(Error::Input("truncation must be nonnegative".into()));
    }
    match (req.space, req.form) {
        (Space::Principal, Form::RSum) => Ok(principal_char_r(inst, req.truncation, false)),
        (Space::Principal, Form::PSum) => Ok(principal_char_p(inst, req.truncation, false)),
        (Space::PrincipalPrimed, Form::RSum) => Ok(principal_char_r(inst, req.truncation, true)),
        (Space::PrincipalPrimed, Form::PSum) => Ok(principal_char_p(inst, req.truncation, true)),
        (Space::Vacuum, Form::RSum) => Ok(vacuum_char(inst, req.truncation)),
        (Space::Module, Form::RSum) => Ok(module_char(inst, req.truncation)),
        (Space::Parafermionic, Form::RSum) => Ok(parafermionic_char(inst, req.truncation)),
        (space, Form::PSum) => Err(Error::Input(format!(
            "form P_sum does not apply to space {space:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{HighestWeight, JtSign, RootSystem};
    use num_bigint::BigInt;

    fn e(n: i64) -> Energy {
        Energy::from_integer(n)
    }

    fn setup(ty: &str, k0: i64, kj: i64, j: usize) -> (RootSystem, HighestWeight) {
        let rs = RootSystem::build(ty.parse().unwrap());
        let w = HighestWeight::new(&rs, k0, kj, j).unwrap();
        (rs, w)
    }

    fn coeff(s: &GradedSeries, en: Energy, w: &[i32]) -> i64 {
        i64::try_from(s.coefficient(en, w).unwrap()).unwrap()
    }

    #[test]
    fn f_factor_examples() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        // Empty column -> 1.
        assert_eq!(
            f_factor(&inst, 1, &[0], e(4)).unwrap(),
            GradedSeries::one(1, e(4))
        );
        // A_1 level 1: q^{r^2}/(q;q)_r.
        for r in 1..3 {
            let f = f_factor(&inst, 1, &[r], e(8)).unwrap();
            let expect = pochhammer_inv(r, 1, e(8)).shift(e(r * r), &[0]);
            assert_eq!(f, expect);
        }
        // Increasing column is an input error.
        assert!(f_factor(&inst, 1, &[1, 2], e(4)).is_err());
        // A_1, k=2, L_0+L_1, R=(1,1): q^3/(q;q)_1.
        let (rs, w) = setup("A1", 1, 1, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let f = f_factor(&inst, 1, &[1, 1], e(8)).unwrap();
        assert_eq!(f, pochhammer_inv(1, 1, e(8)).shift(e(3), &[0]));
    }

    #[test]
    fn i_factor_examples() {
        let (rs, w) = setup("A2", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        assert_eq!(
            i_factor(&inst, 2, &[1], &[], e(4)),
            GradedSeries::one(2, e(4))
        );
        let m = i_factor(&inst, 2, &[1], &[1], e(4));
        assert_eq!(coeff(&m, e(-1), &[0, 0]), 1);
        let (rs, w) = setup("B2", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let m = i_factor(&inst, 2, &[1, 1], &[1], e(4));
        assert_eq!(coeff(&m, e(-2), &[0, 0]), 1);
    }

    #[test]
    fn principal_r_a1_level1() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let ch = principal_char_r(&inst, e(4), false);
        // 1 + q y + q^2 y + q^3 y + q^4 (y + y^2)
        assert_eq!(coeff(&ch, e(0), &[0]), 1);
        for n in 1..=4 {
            assert_eq!(coeff(&ch, e(n), &[1]), 1, "q^{n} y");
        }
        assert_eq!(coeff(&ch, e(4), &[2]), 1);
        assert_eq!(coeff(&ch, e(3), &[2]), 0);
        // Primed set is empty at level 1 for simply-laced types.
        assert_eq!(
            principal_char_r(&inst, e(4), true),
            GradedSeries::one(1, e(4))
        );
    }

    #[test]
    fn principal_any_n0() {
        for (ty, k0, kj, j) in [("A2", 1, 0, 1), ("G2", 0, 1, 2), ("B2", 1, 1, 2)] {
            let (rs, w) = setup(ty, k0, kj, j);
            let inst = Instance::new(&rs, w, JtSign::Plus);
            let l = rs.rank();
            assert_eq!(
                principal_char_r(&inst, e(0), false),
                GradedSeries::one(l, e(0)),
                "{ty}"
            );
        }
    }

    #[test]
    fn principal_r_equals_p_small() {
        for (ty, k0, kj, j, n) in [
            ("A1", 1, 1, 1, 6),
            ("A2", 2, 0, 1, 5),
            ("B2", 1, 1, 2, 5),
            ("G2", 1, 0, 2, 4),
        ] {
            let (rs, w) = setup(ty, k0, kj, j);
            for sign in [JtSign::Plus, JtSign::Minus] {
                let inst = Instance::new(&rs, w, sign);
                for primed in [false, true] {
                    let r = principal_char_r(&inst, e(n), primed);
                    let p = principal_char_p(&inst, e(n), primed);
                    assert_eq!(r, p, "{ty} primed={primed} sign={sign:?}");
                }
            }
        }
    }

    #[test]
    fn principal_p_a1_level2_primed() {
        let (rs, w) = setup("A1", 2, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let ch = principal_char_p(&inst, e(3), true);
        // sum_p q^{p^2}/(q;q)_p y^p truncated at 3: counts 1,1,1,2.
        let mut expect = GradedSeries::zero(1, e(3));
        for p in 0..2 {
            let t = pochhammer_inv(p, 1, e(3)).shift(e(p * p), &[p as i32]);
            expect = expect.plus(&t);
        }
        assert_eq!(ch, expect);
    }

    #[test]
    fn weyl_shift_examples() {
        let (rs, w) = setup("A1", 1, 0, 1);
        assert_eq!(weyl_shift(&rs, &w, &[0], &[0]).unwrap(), (vec![0], 0));
        // mu = alpha^vee on the highest weight vector: weight +alpha, depth +1.
        assert_eq!(weyl_shift(&rs, &w, &[1], &[0]).unwrap(), (vec![1], 1));
        // Same on a vector of h-weight alpha: depth shift 2 + 1 = 3.
        assert_eq!(weyl_shift(&rs, &w, &[1], &[1]).unwrap(), (vec![1], 3));
    }

    #[test]
    fn vacuum_a1_level1_is_theta() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let v = vacuum_char(&inst, e(4));
        let mut expect = GradedSeries::zero(1, e(4));
        for m in -2i64..=2 {
            expect.add_term(e(m * m), vec![m as i32], &BigInt::from(1));
        }
        assert_eq!(v, expect);
    }

    #[test]
    fn vacuum_a1_level2_coefficient() {
        let (rs, w) = setup("A1", 2, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let v = vacuum_char(&inst, e(2));
        assert_eq!(coeff(&v, e(1), &[1]), 1);
        assert_eq!(coeff(&v, e(0), &[0]), 1);
    }

    #[test]
    fn module_char_n0_and_depth1() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        assert_eq!(module_char(&inst, e(0)), GradedSeries::one(1, e(0)));
        let m = module_char(&inst, e(1));
        // Depth one of the basic module: h(-1)v and x_alpha(-1)v and x_{-alpha}(-1)v.
        assert_eq!(coeff(&m, e(1), &[0]), 1);
        assert_eq!(coeff(&m, e(1), &[1]), 1);
        assert_eq!(coeff(&m, e(1), &[-1]), 1);
    }

    #[test]
    fn parafermionic_trivial_simply_laced_level1() {
        for ty in ["A1", "A2", "A3", "D4", "E6"] {
            let (rs, w) = setup(ty, 1, 0, 1);
            let inst = Instance::new(&rs, w, JtSign::Plus);
            let l = rs.rank();
            assert_eq!(
                parafermionic_char(&inst, e(10)),
                GradedSeries::one(l, e(10)),
                "{ty}"
            );
        }
    }

    #[test]
    fn parafermionic_a1_level2_vacuum_shape() {
        let (rs, w) = setup("A1", 2, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let ch = parafermionic_char(&inst, Energy::new(5, 2));
        // sum_p q^{p^2/2}/(q;q)_p = 1 + q^{1/2} + q^{3/2} + q^2 + q^{5/2} + ...
        let half = |n: i64| Energy::new(n, 2);
        for (num, c) in [(0, 1), (1, 1), (2, 0), (3, 1), (4, 1), (5, 1)] {
            assert_eq!(
                coeff(&ch, half(num), &[0]),
                c,
                "exponent {num}/2"
            );
        }
    }

    #[test]
    fn per_class_sums_to_total() {
        let (rs, w) = setup("A1", 1, 1, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let n = Energy::new(7, 2);
        let total = parafermionic_char(&inst, n);
        let classes = parafermionic_char_per_class(&inst, n);
        assert_eq!(classes.len(), 2);
        let mut acc = GradedSeries::zero(1, n);
        for (_, s) in &classes {
            acc = acc.plus(s);
        }
        assert_eq!(acc, total);
    }

    #[test]
    fn dispatcher_rejects_bad_combo() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let req = CharacterRequest {
            space: Space::Vacuum,
            form: Form::PSum,
            truncation: e(2),
        };
        assert!(compute(&inst, &req).is_err());
    }
}
