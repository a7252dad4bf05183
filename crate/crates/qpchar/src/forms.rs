//! Exponent engine shared by the enumerator and the character sums: window
//! weights, F/I exponents, the G, B, K, C quadratic data in the P
//! parameterization, dual-charge-type <-> P conversions, and the definiteness
//! facts that make every truncation domain provably complete.

use crate::linalg::{self, ellipsoid_points, quadratic_minimum, Mat, Q};
use crate::root_system::{rat, rat_to_q, Instance, Rat};
use num_traits::{Signed, Zero};

/// Dual-charge column for one color: r^(1) >= r^(2) >= ... >= 0, stored to its
/// natural height (trailing zeros allowed but not required).
pub type Column = Vec<i64>;

/// r^(t) with out-of-range indices reading as 0.
pub fn r_at(col: &[i64], t: i64) -> i64 {
    if t < 1 {
        return 0;
    }
    col.get((t - 1) as usize).copied().unwrap_or(0)
}

/// Total charge n_i = sum_t r^(t).
pub fn column_charge(col: &[i64]) -> i64 {
    col.iter().sum()
}

/// p^(t) = r^(t) - r^(t+1), t = 1..height.
pub fn p_of_column(col: &[i64], height: usize) -> Vec<i64> {
    (1..=height as i64)
        .map(|t| r_at(col, t) - r_at(col, t + 1))
        .collect()
}

/// Inverse of `p_of_column`: r^(t) = sum_{s >= t} p^(s).
pub fn column_of_p(p: &[i64]) -> Column {
    let mut acc = 0;
    let mut col: Vec<i64> = p
        .iter()
        .rev()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect();
    col.reverse();
    col
}

/// The B_P window weight of charge t for the configured sign: number of window
/// values <= t, i.e. max(0, t - max(T, 0)).
pub fn window_weight(inst: &Instance, t: i64) -> i64 {
    let thr = inst.window_threshold().max(0);
    (t - thr).max(0)
}

/// F-factor exponent for color i: sum_t r^(t)^2 + sum_{t in window} r^(t).
pub fn f_exponent(inst: &Instance, i: usize, col: &[i64]) -> i64 {
    let mut e: i64 = col.iter().map(|r| r * r).sum();
    if i == inst.weight.j {
        let thr = inst.window_threshold().max(0);
        let cap = inst.k_alpha(inst.weight.j);
        for t in (thr + 1)..=cap {
            e += r_at(col, t);
        }
    }
    e
}

/// Magnitude of the I^{i i'} exponent (the factor is q^{-value}); 0 for i = 1.
/// The inner index sum runs until the i' column is exhausted, which realizes
/// sum_{q,p} min{mu_i n_{q,i'}, n_{p,i}} exactly for every type.
pub fn i_exponent(inst: &Instance, i: usize, col_i: &[i64], col_ip: &[i64]) -> i64 {
    let Some(mu) = inst.rs.mu(i) else {
        return 0;
    };
    let t_max = col_ip.len() as i64;
    let mut e = 0;
    for t in 1..=t_max {
        for p in 0..mu {
            e += r_at(col_ip, t) * r_at(col_i, mu * t - p);
        }
    }
    e
}

/// Minimal total energy of monomials with dual-charge-type R: the exponent of
/// the leading term of prod_i F_{R_i} I^{i i'}.
pub fn minimal_energy(inst: &Instance, r: &[Column]) -> i64 {
    let l = inst.rs.rank();
    let mut q = 0;
    for i in 1..=l {
        q += f_exponent(inst, i, &r[i - 1]);
        if let Some(ip) = inst.rs.i_prime(i) {
            q -= i_exponent(inst, i, &r[i - 1], &r[ip - 1]);
        }
    }
    q
}

/// Flattened (color, charge) index set for the G/K matrices: charges run
/// 1..k_{alpha_i} (unprimed) or 1..k_{alpha_i}-1 (primed).
pub fn charge_levels(inst: &Instance, primed: bool) -> Vec<(usize, i64)> {
    let l = inst.rs.rank();
    let mut idx = Vec::new();
    for i in 1..=l {
        let cap = inst.k_alpha(i) - if primed { 1 } else { 0 };
        for m in 1..=cap {
            idx.push((i, m));
        }
    }
    idx
}

/// G_{ir}^{mn} = min{nu_r m, nu_i n} <alpha_i, alpha_r>; always an integer.
pub fn g_entry(inst: &Instance, i: usize, m: i64, r: usize, n: i64) -> i64 {
    let rs = inst.rs;
    let v = rat((rs.nu(r) * m).min(rs.nu(i) * n)) * rs.pairing(i, r);
    debug_assert!(v.is_integer(), "G entries are integral");
    v.to_integer()
}

/// K_{ir}^{mn} = G_{ir}^{mn} - (mn/k) <alpha_i, alpha_r>.
pub fn k_entry(inst: &Instance, i: usize, m: i64, r: usize, n: i64) -> Rat {
    rat(g_entry(inst, i, m, r, n)) - rat(m * n) / rat(inst.level()) * inst.rs.pairing(i, r)
}

pub fn g_matrix(inst: &Instance, primed: bool) -> Mat {
    let idx = charge_levels(inst, primed);
    Mat::from_fn(idx.len(), |a, b| {
        let (i, m) = idx[a];
        let (r, n) = idx[b];
        linalg::qi(g_entry(inst, i, m, r, n))
    })
}

pub fn k_matrix(inst: &Instance, primed: bool) -> Mat {
    let idx = charge_levels(inst, primed);
    Mat::from_fn(idx.len(), |a, b| {
        let (i, m) = idx[a];
        let (r, n) = idx[b];
        rat_to_q(k_entry(inst, i, m, r, n))
    })
}

/// A P tuple flattened in `charge_levels` order.
pub type PTuple = Vec<i64>;

pub fn p_tuple_of_columns(inst: &Instance, r: &[Column], primed: bool) -> PTuple {
    let mut p = Vec::new();
    for i in 1..=inst.rs.rank() {
        let cap = (inst.k_alpha(i) - if primed { 1 } else { 0 }) as usize;
        p.extend(p_of_column(&r[i - 1], cap));
    }
    p
}

pub fn columns_of_p_tuple(inst: &Instance, p: &PTuple, primed: bool) -> Vec<Column> {
    let mut cols = Vec::new();
    let mut off = 0;
    for i in 1..=inst.rs.rank() {
        let cap = (inst.k_alpha(i) - if primed { 1 } else { 0 }) as usize;
        cols.push(column_of_p(&p[off..off + cap]));
        off += cap;
    }
    cols
}

/// Total charges (n_1, ..., n_l) of a P tuple.
pub fn beta_of_p(inst: &Instance, idx: &[(usize, i64)], p: &PTuple) -> Vec<i64> {
    let mut beta = vec![0i64; inst.rs.rank()];
    for (&(i, m), &v) in idx.iter().zip(p) {
        beta[i - 1] += m * v;
    }
    beta
}

/// G_P exponent (1/2) sum G_{ir}^{mn} p_i^(m) p_r^(n); an integer.
pub fn gp_exponent(inst: &Instance, idx: &[(usize, i64)], p: &PTuple) -> i64 {
    let mut twice = 0i64;
    for (a, &(i, m)) in idx.iter().enumerate() {
        for (b, &(r, n)) in idx.iter().enumerate() {
            twice += g_entry(inst, i, m, r, n) * p[a] * p[b];
        }
    }
    debug_assert_eq!(twice % 2, 0, "G_P exponent is integral");
    twice / 2
}

/// B_P exponent sum_t (window weight of t) p_j^(t).
pub fn bp_exponent(inst: &Instance, idx: &[(usize, i64)], p: &PTuple) -> i64 {
    idx.iter()
        .zip(p)
        .filter(|(&(i, _), _)| i == inst.weight.j)
        .map(|(&(_, t), &v)| window_weight(inst, t) * v)
        .sum()
}

/// K_P exponent (1/2) sum K_{ir}^{mn} p_i^(m) p_r^(n); rational.
pub fn kp_exponent(inst: &Instance, idx: &[(usize, i64)], p: &PTuple) -> Rat {
    let mut acc = Rat::zero();
    for (a, &(i, m)) in idx.iter().enumerate() {
        for (b, &(r, n)) in idx.iter().enumerate() {
            acc += k_entry(inst, i, m, r, n) * rat(p[a] * p[b]);
        }
    }
    acc / rat(2)
}

/// C_P exponent: B_P exponent minus (k_j / k_{alpha_j}) sum_t t p_j^(t).
pub fn cp_exponent(inst: &Instance, idx: &[(usize, i64)], p: &PTuple) -> Rat {
    let j = inst.weight.j;
    let tsum: i64 = idx
        .iter()
        .zip(p)
        .filter(|(&(i, _), _)| i == j)
        .map(|(&(_, t), &v)| t * v)
        .sum();
    rat(bp_exponent(inst, idx, p)) - rat(inst.weight.kj) * rat(tsum) / rat(inst.k_alpha(j))
}

/// (1/2k) <beta, beta> for beta in integer alpha-coordinates.
pub fn norm_over_2k(inst: &Instance, beta: &[i64]) -> Rat {
    inst.rs.form_i64(beta, beta) / rat(2 * inst.level())
}

/// Largest integer b >= 0 with b^2 <= q; 0 for negative q.
pub fn floor_sqrt(q: &Q) -> i64 {
    if q.is_negative() {
        return 0;
    }
    let f = q.floor().to_integer();
    let mut b = i64::try_from(f.sqrt()).expect("desk-scale bound");
    while linalg::qi((b + 1) * (b + 1)) <= *q {
        b += 1;
    }
    while b > 0 && linalg::qi(b * b) > *q {
        b -= 1;
    }
    b
}

/// Per-color caps B_i on the total charge n_i implied by
/// (1/2k) <beta, beta> <= bound,
/// via the Cauchy-Schwarz box beta_i^2 <= 2k * bound * (G^{-1})_{ii}.
///
/// Relies on minimal_energy(R) >= (1/2k)<beta,beta> (K positive semidefinite
/// plus nonnegative window term), which `assert_definiteness` checks per
/// instance.
pub fn charge_caps(inst: &Instance, bound: Rat) -> Vec<i64> {
    let l = inst.rs.rank();
    if bound.is_negative() {
        return vec![-1; l];
    }
    let g = Mat::from_fn(l, |i, r| rat_to_q(inst.rs.pairing(i + 1, r + 1)));
    let ginv = g.inverse().expect("pairing matrix is invertible");
    (0..l)
        .map(|i| {
            let cap_sq = rat_to_q(rat(2 * inst.level()) * bound) * ginv.at(i, i);
            floor_sqrt(&cap_sq)
        })
        .collect()
}

/// Runtime definiteness facts behind the truncation bounds: the unprimed K
/// matrix must be positive semidefinite and the primed one positive definite.
pub fn assert_definiteness(inst: &Instance) {
    assert!(
        k_matrix(inst, false).is_positive_semidefinite(),
        "unprimed K matrix not PSD for {} at level {}",
        inst.rs.lie_type,
        inst.level()
    );
    assert!(
        k_matrix(inst, true).is_positive_definite(),
        "primed K matrix not positive definite for {} at level {}",
        inst.rs.lie_type,
        inst.level()
    );
}

/// All weakly decreasing columns with the given height whose total does not
/// exceed `max_total`, in lexicographic order.
pub fn columns_up_to(height: usize, max_total: i64) -> Vec<Column> {
    fn rec(out: &mut Vec<Column>, cur: &mut Column, left: usize, prev: i64, budget: i64) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in 0..=prev.min(budget) {
            cur.push(v);
            rec(out, cur, left - 1, v, budget - v);
            cur.pop();
        }
    }
    if max_total < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(&mut out, &mut cur, height, max_total, max_total);
    out
}

/// All primed P tuples with conformal minimum K_P + C_P <= bound, via exact
/// ellipsoid enumeration (K' is positive definite). Sorted lexicographically.
pub fn primed_p_with_conf_min_le(inst: &Instance, bound: Rat) -> Vec<PTuple> {
    let idx = charge_levels(inst, true);
    let kmat = k_matrix(inst, true);
    // Linear part of C_P in the p coordinates.
    let lin: Vec<Q> = idx
        .iter()
        .map(|&(i, t)| {
            let mut c = rat(0);
            if i == inst.weight.j {
                c = rat(window_weight(inst, t))
                    - rat(inst.weight.kj) * rat(t) / rat(inst.k_alpha(inst.weight.j));
            }
            rat_to_q(c)
        })
        .collect();
    let mut pts: Vec<PTuple> = ellipsoid_points(&kmat, &lin, &rat_to_q(bound))
        .into_iter()
        .filter(|p| p.iter().all(|&x| x >= 0))
        .collect();
    pts.sort();
    pts
}

/// Exact minimum over real P of the primed conformal form, a lower bound used
/// when splitting bounds between P and the lattice directions.
pub fn primed_conf_min_real(inst: &Instance) -> Rat {
    let idx = charge_levels(inst, true);
    let kmat = k_matrix(inst, true);
    let lin: Vec<Q> = idx
        .iter()
        .map(|&(i, t)| {
            let mut c = rat(0);
            if i == inst.weight.j {
                c = rat(window_weight(inst, t))
                    - rat(inst.weight.kj) * rat(t) / rat(inst.k_alpha(inst.weight.j));
            }
            rat_to_q(c)
        })
        .collect();
    let q = quadratic_minimum(&kmat, &lin);
    Rat::new(
        i64::try_from(q.numer()).expect("desk scale"),
        i64::try_from(q.denom()).expect("desk scale"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{HighestWeight, JtSign, RootSystem};

    fn inst(rs: &RootSystem, k0: i64, kj: i64, j: usize) -> Instance<'_> {
        Instance::new(rs, HighestWeight::new(rs, k0, kj, j).unwrap(), JtSign::Plus)
    }

    #[test]
    fn column_p_round_trip() {
        let col = vec![3, 2, 2];
        let p = p_of_column(&col, 3);
        assert_eq!(p, vec![1, 0, 2]);
        assert_eq!(column_of_p(&p), col);
        assert_eq!(column_charge(&col), 7);
    }

    #[test]
    fn i_exponent_examples() {
        // A_2, k=1 (mu=1): R_2=(1), R_1=(1) -> exponent 1.
        let a2 = RootSystem::build("A2".parse().unwrap());
        let i1 = inst(&a2, 1, 0, 1);
        assert_eq!(i_exponent(&i1, 2, &[1], &[1]), 1);
        // B_2, k=1 (mu_2=2): R_2=(1,1), R_1=(1) -> r_1^(1)(r_2^(2)+r_2^(1)) = 2.
        let b2 = RootSystem::build("B2".parse().unwrap());
        let i2 = inst(&b2, 1, 0, 1);
        assert_eq!(i_exponent(&i2, 2, &[1, 1], &[1]), 2);
        // i = 1 has no interaction.
        assert_eq!(i_exponent(&i2, 1, &[1], &[1, 1]), 0);
    }

    #[test]
    fn f_exponent_examples() {
        // A_1, k=1, Lambda_0, R=(r): q^{r^2}.
        let a1 = RootSystem::build("A1".parse().unwrap());
        let i0 = inst(&a1, 1, 0, 1);
        for r in 0..4 {
            assert_eq!(f_exponent(&i0, 1, &[r]), r * r);
        }
        // A_1, k=2, Lambda_0+Lambda_1, R_1=(1,1): 1+1+1 (delta fires at t=2).
        let iw = inst(&a1, 1, 1, 1);
        assert_eq!(f_exponent(&iw, 1, &[1, 1]), 3);
    }

    #[test]
    fn g_entries_match_spec_values() {
        let a2 = RootSystem::build("A2".parse().unwrap());
        let i1 = inst(&a2, 1, 0, 1);
        assert_eq!(g_entry(&i1, 1, 1, 2, 1), -1);
        let b2 = RootSystem::build("B2".parse().unwrap());
        let i2 = inst(&b2, 1, 0, 1);
        assert_eq!(g_entry(&i2, 2, 1, 2, 1), 2);
        assert_eq!(g_entry(&i2, 1, 1, 2, 1), -1);
        assert_eq!(g_entry(&i2, 1, 1, 2, 2), -2);
    }

    /// The identity behind every truncation bound:
    /// minimal_energy(R) = K_P + (1/2k)<beta,beta> + B_P.
    #[test]
    fn minimal_energy_decomposition() {
        let cases: Vec<(&str, i64, i64, usize)> = vec![
            ("A1", 2, 1, 1),
            ("A2", 2, 0, 1),
            ("B2", 1, 1, 2),
            ("B2", 1, 1, 1),
            ("C2", 2, 0, 1),
            ("G2", 0, 1, 2),
            ("F4", 1, 0, 4),
            ("D4", 1, 0, 1),
        ];
        for (ty, k0, kj, j) in cases {
            let rs = RootSystem::build(ty.parse().unwrap());
            for sign in [JtSign::Plus, JtSign::Minus] {
                let w = HighestWeight::new(&rs, k0, kj, j).unwrap();
                let inst = Instance::new(&rs, w, sign);
                let idx = charge_levels(&inst, false);
                let caps = vec![3i64; idx.len()];
                // Walk a deterministic sample of P tuples.
                let mut p = vec![0i64; idx.len()];
                for step in 0..200u64 {
                    for (a, slot) in p.iter_mut().enumerate() {
                        *slot = ((step * 31 + a as u64 * 17) % (caps[a] as u64 + 1)) as i64;
                    }
                    let cols = columns_of_p_tuple(&inst, &p, false);
                    let beta = beta_of_p(&inst, &idx, &p);
                    let lhs = rat(minimal_energy(&inst, &cols));
                    let rhs = kp_exponent(&inst, &idx, &p)
                        + norm_over_2k(&inst, &beta)
                        + rat(bp_exponent(&inst, &idx, &p));
                    assert_eq!(lhs, rhs, "{ty} k0={k0} kj={kj} sign={sign:?} P={p:?}");
                    // And G_P + B_P matches F/I directly.
                    let gb = gp_exponent(&inst, &idx, &p) + bp_exponent(&inst, &idx, &p);
                    assert_eq!(minimal_energy(&inst, &cols), gb);
                }
            }
        }
    }

    #[test]
    fn definiteness_holds_on_desk_instances() {
        for (ty, k) in [
            ("A1", 3),
            ("A2", 2),
            ("B2", 2),
            ("C2", 2),
            ("D4", 1),
            ("G2", 1),
            ("F4", 1),
        ] {
            let rs = RootSystem::build(ty.parse().unwrap());
            let inst = inst(&rs, k, 0, 1);
            assert_definiteness(&inst);
        }
    }

    #[test]
    fn columns_generator() {
        let cols = columns_up_to(2, 2);
        assert_eq!(
            cols,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![1, 1],
                vec![2, 0],
            ]
        );
        assert_eq!(columns_up_to(0, 5), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn charge_caps_sane() {
        let a1 = RootSystem::build("A1".parse().unwrap());
        let i0 = inst(&a1, 1, 0, 1);
        // (1/2k)|n alpha|^2 = n^2 <= N
        assert_eq!(charge_caps(&i0, rat(10)), vec![3]);
        assert_eq!(charge_caps(&i0, rat(9)), vec![3]);
        assert_eq!(charge_caps(&i0, rat(8)), vec![2]);
    }
}
