//! Quasi-particle monomial combinatorics: charge/dual-charge/P views, the
//! difference and initial conditions as a membership predicate, exhaustive
//! enumeration up to an energy bound, and conformal energies.
//!
//! A monomial is a collection of particles per color i; position p = 1 carries
//! the largest charge, so charges are weakly decreasing in p. The membership
//! predicate bounds each m_{p,i} by
//!
//!   -n_{p,i} + sum_q min{mu_i n_{q,i'}, n_{p,i}} - 2(p-1) n_{p,i}
//!                                              - sum_{t=1}^{n_{p,i}} delta_{i j_t}
//!
//! (interaction sum absent for i = 1), with m_{p+1,i} <= m_{p,i} - 2 n_{p,i}
//! for equal-charge neighbors; the primed set additionally requires every
//! charge to stay below k_{alpha_i}.

use crate::error::{Error, Result};
use crate::forms;
use crate::root_system::{rat, Instance, Rat};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Particles of one color; index 0 is position p = 1 (largest charge).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorFactor {
    pub charges: Vec<i64>,
    pub energies: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiParticleMonomial {
    colors: Vec<ColorFactor>,
}

/// Charge-type R': per color, charges written low-to-high as in the monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeType(pub Vec<Vec<i64>>);

/// Dual-charge-type R: per color, r^(t) = number of particles of charge >= t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualChargeType(pub Vec<Vec<i64>>);

/// P view: per color, p^(t) = number of particles of charge exactly t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSequence(pub Vec<Vec<i64>>);

/// Color-type: total charge per color, stored as (chg_1, ..., chg_l).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorType(pub Vec<i64>);

impl QuasiParticleMonomial {
    pub fn empty(rank: usize) -> Self {
        QuasiParticleMonomial {
            colors: vec![
                ColorFactor {
                    charges: Vec::new(),
                    energies: Vec::new(),
                };
                rank
            ],
        }
    }

    /// Build from per-color (charges, energies) lists, position 1 first.
    pub fn new(colors: Vec<ColorFactor>) -> Result<Self> {
        for (ci, c) in colors.iter().enumerate() {
            if c.charges.len() != c.energies.len() {
                return Err(Error::Input(format!(
                    "color {}: {} charges vs {} energies",
                    ci + 1,
                    c.charges.len(),
                    c.energies.len()
                )));
            }
            if c.charges.iter().any(|&n| n < 1) {
                return Err(Error::Input(format!("color {}: charges must be >= 1", ci + 1)));
            }
            if c.charges.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Input(format!(
                    "color {}: charges must be weakly decreasing from position 1",
                    ci + 1
                )));
            }
        }
        Ok(QuasiParticleMonomial { colors })
    }

    pub fn rank(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, i: usize) -> &ColorFactor {
        &self.colors[i - 1]
    }

    pub fn is_empty(&self) -> bool {
        self.colors.iter().all(|c| c.charges.is_empty())
    }

    pub fn particle_count(&self) -> usize {
        self.colors.iter().map(|c| c.charges.len()).sum()
    }

    /// Mutually consistent charge-type, dual-charge-type, P and color-type views.
    pub fn charge_views(&self) -> (ChargeType, DualChargeType, PSequence, ColorType) {
        let mut rprime = Vec::new();
        let mut dual = Vec::new();
        let mut pseq = Vec::new();
        let mut color_type = Vec::new();
        for c in &self.colors {
            let mut low_to_high = c.charges.clone();
            low_to_high.reverse();
            let s = c.charges.first().copied().unwrap_or(0);
            let col: Vec<i64> = (1..=s)
                .map(|t| c.charges.iter().filter(|&&n| n >= t).count() as i64)
                .collect();
            pseq.push(forms::p_of_column(&col, s as usize));
            dual.push(col);
            rprime.push(low_to_high);
            color_type.push(c.charges.iter().sum());
        }
        (
            ChargeType(rprime),
            DualChargeType(dual),
            PSequence(pseq),
            ColorType(color_type),
        )
    }

    /// Weight vector (chg_1, ..., chg_l) and total energy en b = -sum m.
    pub fn weight_and_energy(&self) -> (Vec<i64>, i64) {
        let wt = self.colors.iter().map(|c| c.charges.iter().sum()).collect();
        let en = -self
            .colors
            .iter()
            .map(|c| c.energies.iter().sum::<i64>())
            .sum::<i64>();
        (wt, en)
    }

    /// Deterministic order: color-type, then charge-type, then energy-type.
    pub fn sort_key(&self) -> (Vec<i64>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let (wt, _) = self.weight_and_energy();
        (
            wt,
            self.colors.iter().map(|c| c.charges.clone()).collect(),
            self.colors.iter().map(|c| c.energies.clone()).collect(),
        )
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct J<'a> {
            charges: Vec<&'a [i64]>,
            energies: Vec<&'a [i64]>,
        }
        serde_json::to_string(&J {
            charges: self.colors.iter().map(|c| c.charges.as_slice()).collect(),
            energies: self.colors.iter().map(|c| c.energies.as_slice()).collect(),
        })
        .expect("monomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct J {
            charges: Vec<Vec<i64>>,
            energies: Vec<Vec<i64>>,
        }
        let j: J = serde_json::from_str(s)?;
        if j.charges.len() != j.energies.len() {
            return Err(Error::Input("charges/energies length mismatch".into()));
        }
        QuasiParticleMonomial::new(
            j.charges
                .into_iter()
                .zip(j.energies)
                .map(|(charges, energies)| ColorFactor { charges, energies })
                .collect(),
        )
    }
}

/// Interaction term sum_q min{mu_i n_{q,i'}, n}; zero for i = 1.
fn interaction(inst: &Instance, b: &QuasiParticleMonomial, i: usize, n: i64) -> i64 {
    match (inst.rs.mu(i), inst.rs.i_prime(i)) {
        (Some(mu), Some(ip)) => b
            .color(ip)
            .charges
            .iter()
            .map(|&nq| (mu * nq).min(n))
            .sum(),
        _ => 0,
    }
}

/// The Theorem-1.1 upper bound on m_{p,i} (1-based position p).
pub fn energy_ceiling(inst: &Instance, b: &QuasiParticleMonomial, i: usize, p: usize) -> Result<i64> {
    let c = b.color(i);
    if p < 1 || p > c.charges.len() {
        return Err(Error::Input(format!(
            "position p={p} out of range for color {i} with {} particles",
            c.charges.len()
        )));
    }
    let n = c.charges[p - 1];
    Ok(-n + interaction(inst, b, i, n) - 2 * (p as i64 - 1) * n - inst.window_count(i, n))
}

/// Membership predicate: every particle energy within its ceiling, the
/// equal-charge difference conditions, and (primed) all charges < k_{alpha_i}.
pub fn satisfies_conditions(inst: &Instance, b: &QuasiParticleMonomial, primed: bool) -> bool {
    for i in 1..=b.rank() {
        let c = b.color(i);
        if primed {
            if let Some(&top) = c.charges.first() {
                if top >= inst.k_alpha(i) {
                    return false;
                }
            }
        }
        for p in 1..=c.charges.len() {
            let ceiling = energy_ceiling(inst, b, i, p).expect("p in range");
            if c.energies[p - 1] > ceiling {
                return false;
            }
            if p < c.charges.len() && c.charges[p] == c.charges[p - 1] {
                // m_{p+1,i} <= m_{p,i} - 2 n_{p,i}
                if c.energies[p] > c.energies[p - 1] - 2 * c.charges[p - 1] {
                    return false;
                }
            }
        }
    }
    true
}

/// Conformal energy of a primed monomial (exact rational): total energy minus
/// the quadratic charge correction and the highest-weight shift of color j.
pub fn conformal_energy(inst: &Instance, b: &QuasiParticleMonomial) -> Result<Rat> {
    for i in 1..=b.rank() {
        if let Some(&top) = b.color(i).charges.first() {
            if top >= inst.k_alpha(i) {
                return Err(Error::Input(format!(
                    "conformal energy requires a primed monomial; color {i} has charge {top} >= k_alpha = {}",
                    inst.k_alpha(i)
                )));
            }
        }
    }
    let rs = inst.rs;
    let k = inst.level();
    let (_, en) = b.weight_and_energy();
    let mut acc = rat(en);
    for i in 1..=b.rank() {
        let charges = &b.color(i).charges;
        for (u, &n) in charges.iter().enumerate() {
            // n^2 / k_{alpha_i}
            acc -= Rat::new(n * n, inst.k_alpha(i));
            // (1/k) <n alpha_i, sum_{s<u} n_s alpha_i + sum_{p<i} chg_p alpha_p>
            let same_color: i64 = charges[..u].iter().sum();
            let mut inner = rat(same_color) * rs.pairing(i, i);
            for p in 1..i {
                let chg_p: i64 = b.color(p).charges.iter().sum();
                inner += rat(chg_p) * rs.pairing(i, p);
            }
            acc -= rat(n) * inner / rat(k);
        }
    }
    // -(k_j / k_{alpha_j}) sum_t t p_j^{(t)}
    let j = inst.weight.j;
    let tsum: i64 = b.color(j).charges.iter().sum();
    acc -= rat(inst.weight.kj) * rat(tsum) / rat(inst.k_alpha(j));
    Ok(acc)
}

/// Positions of one dual-charge-type, with per-position charges and ceilings.
struct Skeleton {
    /// (color, charge, original ceiling), colors ascending then p ascending.
    positions: Vec<(usize, i64, i64)>,
    /// Saturated minimal energy of positions idx.. (a valid lower bound).
    suffix_min: Vec<i64>,
}

fn skeleton(inst: &Instance, cols: &[forms::Column]) -> Skeleton {
    let l = inst.rs.rank();
    // Charges per color from the dual-charge column (conjugate partition).
    let mut charges: Vec<Vec<i64>> = Vec::with_capacity(l);
    for col in cols.iter() {
        let r1 = forms::r_at(col, 1);
        charges.push(
            (1..=r1)
                .map(|p| col.iter().filter(|&&r| r >= p).count() as i64)
                .collect(),
        );
    }
    let mut positions = Vec::new();
    for i in 1..=l {
        for (p0, &n) in charges[i - 1].iter().enumerate() {
            let p = p0 as i64 + 1;
            let inter: i64 = match (inst.rs.mu(i), inst.rs.i_prime(i)) {
                (Some(mu), Some(ip)) => charges[ip - 1].iter().map(|&nq| (mu * nq).min(n)).sum(),
                _ => 0,
            };
            let ceiling = -n + inter - 2 * (p - 1) * n - inst.window_count(i, n);
            positions.push((i, n, ceiling));
        }
    }
    let mut suffix_min = vec![0i64; positions.len() + 1];
    for idx in (0..positions.len()).rev() {
        suffix_min[idx] = suffix_min[idx + 1] - positions[idx].2;
    }
    Skeleton {
        positions,
        suffix_min,
    }
}

fn dfs_energies(
    inst: &Instance,
    sk: &Skeleton,
    idx: usize,
    acc: i64,
    bound: i64,
    picks: &mut Vec<i64>,
    out: &mut Vec<QuasiParticleMonomial>,
) {
    if idx == sk.positions.len() {
        let l = inst.rs.rank();
        let mut colors = vec![
            ColorFactor {
                charges: Vec::new(),
                energies: Vec::new(),
            };
            l
        ];
        for (pos, &(i, n, _)) in sk.positions.iter().enumerate() {
            colors[i - 1].charges.push(n);
            colors[i - 1].energies.push(picks[pos]);
        }
        out.push(QuasiParticleMonomial { colors });
        return;
    }
    let (i, n, ceiling) = sk.positions[idx];
    let mut cap = ceiling;
    if idx > 0 {
        let (pi, pn, _) = sk.positions[idx - 1];
        if pi == i && pn == n {
            cap = cap.min(picks[idx - 1] - 2 * n);
        }
    }
    let mut m = cap;
    loop {
        let here = acc - m;
        if here + sk.suffix_min[idx + 1] > bound {
            break; // lower m only increases the total
        }
        picks.push(m);
        dfs_energies(inst, sk, idx + 1, here, bound, picks, out);
        picks.pop();
        m -= 1;
    }
}

/// Exactly the monomials with satisfies_conditions = true and total energy
/// <= n_bound, in deterministic order (color-type, charge-type, energy-type).
pub fn enumerate(inst: &Instance, n_bound: i64, primed: bool) -> Vec<QuasiParticleMonomial> {
    if n_bound < 0 {
        return Vec::new();
    }
    forms::assert_definiteness(inst);
    let l = inst.rs.rank();
    let caps = forms::charge_caps(inst, rat(n_bound));
    let per_color: Vec<Vec<forms::Column>> = (1..=l)
        .map(|i| {
            let height = (inst.k_alpha(i) - if primed { 1 } else { 0 }) as usize;
            forms::columns_up_to(height, caps[i - 1])
        })
        .collect();
    // Cartesian product of per-color columns, filtered by the exact minimal
    // energy of the type.
    let mut types: Vec<Vec<forms::Column>> = vec![Vec::new()];
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
    types.retain(|r| forms::minimal_energy(inst, r) <= n_bound);

    let mut all: Vec<QuasiParticleMonomial> = types
        .par_iter()
        .map(|r| {
            let sk = skeleton(inst, r);
            let mut out = Vec::new();
            let mut picks = Vec::new();
            dfs_energies(inst, &sk, 0, 0, n_bound, &mut picks, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    all
}

/// Generating series sum q^{en b} y^{wt b} of an enumerated family, as data
/// for identity checks.
pub fn counts_by_energy(monomials: &[QuasiParticleMonomial], n_bound: i64) -> Vec<usize> {
    let mut counts = vec![0usize; (n_bound + 1) as usize];
    for b in monomials {
        let (_, en) = b.weight_and_energy();
        if en <= n_bound {
            counts[en as usize] += 1;
        }
    }
    counts
}

/// Brute-force parafermionic character: sum over primed monomials of
/// q^{conformal_energy}, complete for conformal energies <= n_bound.
///
/// Iterates the finitely many primed dual-charge-types with conformal minimum
/// <= n_bound; within a type the energy budget is n_bound plus that type's
/// exact quadratic correction (1/2k)<beta,beta> + (k_j/k_{alpha_j}) n_j, since
/// conformal energy and total energy differ by a type constant.
pub fn parafermionic_brute_force(
    inst: &Instance,
    n_bound: Rat,
) -> Vec<(Rat, QuasiParticleMonomial)> {
    forms::assert_definiteness(inst);
    let idx = forms::charge_levels(inst, true);
    let feasible = forms::primed_p_with_conf_min_le(inst, n_bound);
    let per_type: Vec<Vec<(Rat, QuasiParticleMonomial)>> = feasible
        .par_iter()
        .map(|p| {
            let beta = forms::beta_of_p(inst, &idx, p);
            let nj: i64 = idx
                .iter()
                .zip(p)
                .filter(|(&(i, _), _)| i == inst.weight.j)
                .map(|(&(_, t), &v)| t * v)
                .sum();
            let corr = forms::norm_over_2k(inst, &beta)
                + rat(inst.weight.kj) * rat(nj) / rat(inst.k_alpha(inst.weight.j));
            let budget = (n_bound + corr).floor().to_integer();
            let cols = forms::columns_of_p_tuple(inst, p, true);
            let sk = skeleton(inst, &cols);
            let mut monos = Vec::new();
            let mut picks = Vec::new();
            dfs_energies(inst, &sk, 0, 0, budget, &mut picks, &mut monos);
            monos
                .into_iter()
                .filter_map(|b| {
                    let ce = conformal_energy(inst, &b).expect("primed by construction");
                    (ce <= n_bound).then_some((ce, b))
                })
                .collect()
        })
        .collect();
    let mut out: Vec<(Rat, QuasiParticleMonomial)> = per_type.into_iter().flatten().collect();
    out.sort_by(|a, b| (a.0, a.1.sort_key()).cmp(&(b.0, b.1.sort_key())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{HighestWeight, JtSign, RootSystem};
    use crate::series::{pochhammer_inv, Energy, GradedSeries};
    use num_bigint::BigInt;

    fn setup(ty: &str, k0: i64, kj: i64, j: usize) -> (RootSystem, HighestWeight) {
        let rs = RootSystem::build(ty.parse().unwrap());
        let w = HighestWeight::new(&rs, k0, kj, j).unwrap();
        (rs, w)
    }

    fn mono(colors: &[&[(i64, i64)]]) -> QuasiParticleMonomial {
        QuasiParticleMonomial::new(
            colors
                .iter()
                .map(|ps| ColorFactor {
                    charges: ps.iter().map(|x| x.0).collect(),
                    energies: ps.iter().map(|x| x.1).collect(),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn charge_views_examples() {
        let b = QuasiParticleMonomial::empty(2);
        let (r, d, p, c) = b.charge_views();
        assert_eq!(r.0, vec![Vec::<i64>::new(), Vec::new()]);
        assert_eq!(d.0, vec![Vec::<i64>::new(), Vec::new()]);
        assert_eq!(p.0, vec![Vec::<i64>::new(), Vec::new()]);
        assert_eq!(c.0, vec![0, 0]);

        let b = mono(&[&[(2, -1), (1, -1)]]);
        let (r, d, p, c) = b.charge_views();
        assert_eq!(r.0[0], vec![1, 2]); // written low-to-high
        assert_eq!(d.0[0], vec![2, 1]);
        assert_eq!(p.0[0], vec![1, 1]);
        assert_eq!(c.0[0], 3);

        let b = mono(&[&[(3, -1), (3, -7), (1, -1)]]);
        let (_, d, p, c) = b.charge_views();
        assert_eq!(d.0[0], vec![3, 2, 2]);
        assert_eq!(p.0[0], vec![1, 0, 2]);
        assert_eq!(c.0[0], 7);
    }

    #[test]
    fn views_round_trip_on_enumerated() {
        let (rs, w) = setup("B2", 1, 1, 2);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        for b in enumerate(&inst, 5, false) {
            let (r, d, p, c) = b.charge_views();
            for i in 0..2 {
                // R' determines R and P and back.
                assert_eq!(forms::column_of_p(&p.0[i]), d.0[i]);
                let s = d.0[i].len();
                assert_eq!(forms::p_of_column(&d.0[i], s), p.0[i]);
                let mut high_to_low = r.0[i].clone();
                high_to_low.reverse();
                let back: Vec<i64> = (1..=*high_to_low.first().unwrap_or(&0))
                    .map(|t| high_to_low.iter().filter(|&&n| n >= t).count() as i64)
                    .collect();
                assert_eq!(back, d.0[i]);
                assert_eq!(r.0[i].iter().sum::<i64>(), c.0[i]);
            }
        }
    }

    #[test]
    fn ceiling_examples() {
        // A_1, k=1, Lambda_0, single charge-1 particle -> -1.
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let b = mono(&[&[(1, -1)]]);
        assert_eq!(energy_ceiling(&inst, &b, 1, 1).unwrap(), -1);
        assert!(energy_ceiling(&inst, &b, 1, 2).is_err());

        // A_1, k=2, 2Lambda_0, charge-1 particles, p=2 -> -3.
        let (rs, w) = setup("A1", 2, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let b = mono(&[&[(1, -1), (1, -3)]]);
        assert_eq!(energy_ceiling(&inst, &b, 1, 2).unwrap(), -3);

        // A_1, k=2, Lambda_0+Lambda_1, charge-2 particle -> -3 (window at t=2).
        let (rs, w) = setup("A1", 1, 1, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let b = mono(&[&[(2, -3)]]);
        assert_eq!(energy_ceiling(&inst, &b, 1, 1).unwrap(), -3);
    }

    #[test]
    fn predicate_examples() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        assert!(satisfies_conditions(
            &inst,
            &QuasiParticleMonomial::empty(1),
            true
        ));
        // Charge 1 = k_alpha excluded from the primed set at level 1.
        let b = mono(&[&[(1, -1)]]);
        assert!(satisfies_conditions(&inst, &b, false));
        assert!(!satisfies_conditions(&inst, &b, true));
        // Adjacent equal-charge condition: m_2 <= m_1 - 2.
        let good = mono(&[&[(1, -1), (1, -3)]]);
        let bad = mono(&[&[(1, -1), (1, -2)]]);
        assert!(satisfies_conditions(&inst, &good, false));
        assert!(!satisfies_conditions(&inst, &bad, false));
    }

    /// Oracle for enumeration counts: expand sum_r q^{r^2 + a r} / (q;q)_r.
    fn rr_sum_counts(a: i64, n: i64) -> Vec<usize> {
        let trunc = Energy::from_integer(n);
        let mut acc = GradedSeries::zero(0, trunc);
        let mut r = 0;
        while r * r + a * r <= n {
            let f = pochhammer_inv(r, 0, trunc)
                .shift(Energy::from_integer(r * r + a * r), &[]);
            acc = acc.plus(&f);
            r += 1;
        }
        (0..=n)
            .map(|e| {
                usize::try_from(
                    acc.coefficient(Energy::from_integer(e), &[]).unwrap(),
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn enumerate_a1_level1_counts() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let monos = enumerate(&inst, 4, false);
        for b in &monos {
            assert!(satisfies_conditions(&inst, b, false));
        }
        // Oracle: sum_r q^{r^2}/(q;q)_r through q^4 has coefficients 1,1,1,1,2.
        assert_eq!(rr_sum_counts(0, 4), vec![1, 1, 1, 1, 2]);
        assert_eq!(counts_by_energy(&monos, 4), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn enumerate_n_zero() {
        let (rs, w) = setup("G2", 1, 0, 2);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let monos = enumerate(&inst, 0, false);
        assert_eq!(monos.len(), 1);
        assert!(monos[0].is_empty());
    }

    #[test]
    fn enumerate_a1_level2_primed_counts() {
        let (rs, w) = setup("A1", 2, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        // Only charge-1 particles survive the primed restriction; the counts
        // must match the oracle sum_p q^{p^2}/(q;q)_p (1,1,1,1 through q^3,
        // with the first 2 appearing at q^4).
        for n in [3i64, 4] {
            let monos = enumerate(&inst, n, true);
            assert!(monos
                .iter()
                .all(|b| b.color(1).charges.iter().all(|&c| c == 1)));
            assert_eq!(counts_by_energy(&monos, n), rr_sum_counts(0, n), "n={n}");
        }
        assert_eq!(rr_sum_counts(0, 4), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn primed_subset_of_unprimed() {
        let (rs, w) = setup("B2", 1, 1, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let full = enumerate(&inst, 5, false);
        let primed = enumerate(&inst, 5, true);
        for b in &primed {
            assert!(full.contains(b));
        }
        assert!(primed.len() < full.len());
    }

    #[test]
    fn weight_and_energy_examples() {
        let (wt, en) = QuasiParticleMonomial::empty(3).weight_and_energy();
        assert_eq!((wt, en), (vec![0, 0, 0], 0));
        let b = mono(&[&[(1, -1), (1, -3)]]);
        assert_eq!(b.weight_and_energy(), (vec![2], 4));
        let b2 = mono(&[&[], &[(3, -5)]]);
        assert_eq!(b2.weight_and_energy(), (vec![0, 3], 5));
    }

    #[test]
    fn conformal_energy_examples() {
        let (rs, w) = setup("A1", 2, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        assert_eq!(
            conformal_energy(&inst, &QuasiParticleMonomial::empty(1)).unwrap(),
            rat(0)
        );
        let b = mono(&[&[(1, -1)]]);
        assert_eq!(conformal_energy(&inst, &b).unwrap(), Rat::new(1, 2));
        let b2 = mono(&[&[(1, -1), (1, -3)]]);
        assert_eq!(conformal_energy(&inst, &b2).unwrap(), rat(2));
        // Unprimed monomial: contract violation.
        let un = mono(&[&[(2, -2)]]);
        assert!(conformal_energy(&inst, &un).is_err());
    }

    #[test]
    fn conformal_energy_nonnegative_on_primed() {
        for (ty, k0, kj, j) in [
            ("A1", 1, 1, 1),
            ("A1", 2, 1, 1),
            ("A2", 2, 0, 1),
            ("B2", 1, 1, 2),
            ("G2", 1, 0, 2),
        ] {
            let (rs, w) = setup(ty, k0, kj, j);
            let inst = Instance::new(&rs, w, JtSign::Plus);
            for b in enumerate(&inst, 5, true) {
                let ce = conformal_energy(&inst, &b).unwrap();
                assert!(ce >= rat(0), "{ty}: negative conformal energy for {b:?}");
            }
        }
    }

    #[test]
    fn enumeration_matches_predicate_filter() {
        // Cross-check the pruned search against a naive filter of all
        // candidate energy assignments for one small instance.
        let (rs, w) = setup("B2", 0, 1, 2);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let fast = enumerate(&inst, 4, false);
        for b in &fast {
            assert!(satisfies_conditions(&inst, b, false));
            assert!(b.weight_and_energy().1 <= 4);
        }
        let mut seen = fast.clone();
        seen.dedup();
        assert_eq!(seen.len(), fast.len(), "no duplicates");
    }

    #[test]
    fn json_round_trip() {
        let b = mono(&[&[(2, -4), (1, -1)], &[(1, -2)]]);
        let s = b.to_json();
        assert_eq!(
            s,
            r#"{"charges":[[2,1],[1]],"energies":[[-4,-1],[-2]]}"#
        );
        assert_eq!(QuasiParticleMonomial::from_json(&s).unwrap(), b);
        assert!(QuasiParticleMonomial::from_json(
            r#"{"charges":[[1,2]],"energies":[[-1,-2]]}"#
        )
        .is_err());
    }

    #[test]
    fn counts_series_helper() {
        let (rs, w) = setup("A1", 1, 0, 1);
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let monos = enumerate(&inst, 4, false);
        let mut series = GradedSeries::zero(1, Energy::from_integer(4));
        for b in &monos {
            let (wt, en) = b.weight_and_energy();
            series.add_term(
                Energy::from_integer(en),
                wt.iter().map(|&x| x as i32).collect(),
                &BigInt::from(1),
            );
        }
        assert_eq!(
            series.coefficient(Energy::from_integer(4), &[2]).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            series.coefficient(Energy::from_integer(4), &[1]).unwrap(),
            BigInt::from(1)
        );
    }
}
