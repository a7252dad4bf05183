//! Finite root-system data for types A-G and the level constants used by the
//! character formulas.
//!
//! The bilinear form is normalized so long roots have squared norm 2; short
//! roots then have norm 1 (types B, C, F) or 2/3 (G_2). Node labelings follow
//! the fixed Dynkin diagram conventions of this crate:
//!
//! - A_l, B_l, C_l, F_4, G_2: a chain 1 - 2 - ... - l. In B_l the short root
//!   is node l; in C_l node 1 is the long root; in F_4 nodes 3,4 are short;
//!   in G_2 node 2 is short.
//! - D_l: chain 1 ... l-1 with node l attached to node l-2.
//! - E_6, E_7: chain with the branch node (6 resp. 7) attached to node 3;
//!   E_8: branch node 8 attached to node 5.
//!
//! Pairing matrices are hardcoded per labeling; a self-test regenerates them
//! from the hardcoded Cartan matrices and compares.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Q};
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub type Rat = Rational64;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A finite Dynkin type: family plus rank, restricted to the valid diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidLieType {
                family: family.letter(),
                rank,
                reason: "family/rank combination is not a finite Dynkin diagram".into(),
            })
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownAlgebra(s.into())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownAlgebra(s.into()))?;
        LieType::new(fam, rank).map_err(|_| Error::UnknownAlgebra(s.into()))
    }
}

/// Which window threshold the j_t function uses. `Plus` is the shipped default,
/// pinned by the sign-resolution acceptance run; `Minus` reproduces the
/// alternative reading and is kept for the resolution record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum JtSign {
    #[default]
    Plus,
    Minus,
}

/// Immutable root-system record: pairing matrices, imaginary-root marks and
/// everything derived from them. Safe for unrestricted concurrent reads.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    /// <alpha_i, alpha_r>, 0-based storage.
    pairing: Vec<Vec<Rat>>,
    /// <alpha_i^vee, alpha_r^vee> = 4 <a_i,a_r> / (<a_i,a_i><a_r,a_r>).
    coroot_pairing: Vec<Vec<i64>>,
    /// Cartan matrix a_{ir} = 2 <alpha_i, alpha_r> / <alpha_i, alpha_i>.
    cartan: Vec<Vec<i64>>,
    /// Imaginary-root labels a_1..a_l (a_0 = 1 implicit).
    marks: Vec<i64>,
    /// nu_i = 2 / <alpha_i, alpha_i> = k_{alpha_i} / k.
    nu: Vec<i64>,
    /// Node indices j admitting a rectangular weight k_0 L_0 + k_j L_j.
    allowed_j: Vec<usize>,
    /// Fundamental weights omega_i in alpha-coordinates (rows).
    omega: Vec<Vec<Rat>>,
    /// All roots in alpha-coordinates.
    roots: Vec<Vec<i64>>,
}

fn norms(ty: LieType) -> Vec<Rat> {
    let l = ty.rank;
    let long = rat(2);
    let short = Rat::one();
    match ty.family {
        Family::A | Family::D | Family::E => vec![long; l],
        Family::B => {
            let mut v = vec![long; l];
            v[l - 1] = short;
            v
        }
        Family::C => {
            let mut v = vec![short; l];
            v[0] = long;
            v
        }
        Family::F => vec![long, long, short, short],
        Family::G => vec![long, Rat::new(2, 3)],
    }
}

/// Edges of the Dynkin diagram, 1-based node pairs.
fn edges(ty: LieType) -> Vec<(usize, usize)> {
    let l = ty.rank;
    let mut e: Vec<(usize, usize)> = Vec::new();
    match (ty.family, l) {
        (Family::D, _) => {
            e.extend((1..l - 1).map(|i| (i, i + 1)));
            e.push((l - 2, l));
        }
        (Family::E, 6) => {
            e.extend((1..5).map(|i| (i, i + 1)));
            e.push((3, 6));
        }
        (Family::E, 7) => {
            e.extend((1..6).map(|i| (i, i + 1)));
            e.push((3, 7));
        }
        (Family::E, 8) => {
            e.extend((1..7).map(|i| (i, i + 1)));
            e.push((5, 8));
        }
        _ => e.extend((1..l).map(|i| (i, i + 1))),
    }
    e
}

fn marks_table(ty: LieType) -> Vec<i64> {
    let l = ty.rank;
    match (ty.family, l) {
        (Family::A, _) => vec![1; l],
        (Family::B, _) | (Family::C, _) => {
            let mut v = vec![2; l];
            v[0] = 1;
            v
        }
        (Family::D, _) => {
            let mut v = vec![2; l];
            v[0] = 1;
            v[l - 2] = 1;
            v[l - 1] = 1;
            v
        }
        (Family::E, 6) => vec![1, 2, 3, 2, 1, 2],
        (Family::E, 7) => vec![2, 3, 4, 3, 2, 1, 2],
        (Family::E, 8) => vec![2, 3, 4, 5, 6, 4, 2, 3],
        (Family::F, _) => vec![2, 3, 4, 2],
        (Family::G, _) => vec![2, 3],
        _ => unreachable!("validated LieType"),
    }
}

fn allowed_j_table(ty: LieType) -> Vec<usize> {
    let l = ty.rank;
    match (ty.family, l) {
        (Family::A, _) | (Family::C, _) => (1..=l).collect(),
        (Family::B, _) => vec![1, l],
        (Family::D, _) => vec![1, l - 1, l],
        (Family::E, 6) => vec![1, 6],
        (Family::E, 7) => vec![1],
        (Family::E, 8) => vec![],
        (Family::F, _) => vec![4],
        (Family::G, _) => vec![2],
        _ => unreachable!("validated LieType"),
    }
}

/// Known Coxeter numbers, checked against 1 + sum of marks.
pub fn coxeter_number(ty: LieType) -> i64 {
    let l = ty.rank as i64;
    match (ty.family, ty.rank) {
        (Family::A, _) => l + 1,
        (Family::B, _) | (Family::C, _) => 2 * l,
        (Family::D, _) => 2 * l - 2,
        (Family::E, 6) => 12,
        (Family::E, 7) => 18,
        (Family::E, 8) => 30,
        (Family::F, _) => 12,
        (Family::G, _) => 6,
        _ => unreachable!(),
    }
}

/// Index [P:Q] of the root lattice inside the weight lattice, equal to the
/// Cartan-matrix determinant.
pub fn weight_lattice_index(ty: LieType) -> i64 {
    let l = ty.rank as i64;
    match (ty.family, ty.rank) {
        (Family::A, _) => l + 1,
        (Family::B, _) | (Family::C, _) => 2,
        (Family::D, _) => 4,
        (Family::E, 6) => 3,
        (Family::E, 7) => 2,
        (Family::E, 8) => 1,
        (Family::F, _) | (Family::G, _) => 1,
        _ => unreachable!(),
    }
}

pub fn rat_to_q(r: Rat) -> Q {
    linalg::qr(*r.numer(), *r.denom())
}

pub fn rows_to_mat(rows: &[Vec<Rat>]) -> Mat {
    Mat::from_fn(rows.len(), |i, j| rat_to_q(rows[i][j]))
}

impl RootSystem {
    /// Build the full record for a valid Lie type. Deterministic and pure.
    pub fn build(lie_type: LieType) -> Self {
        let l = lie_type.rank;
        let norms = norms(lie_type);
        let mut pairing = vec![vec![Rat::zero(); l]; l];
        for i in 0..l {
            pairing[i][i] = norms[i];
        }
        for (a, b) in edges(lie_type) {
            let (i, r) = (a - 1, b - 1);
            let v = if norms[i] == rat(2) || norms[r] == rat(2) {
                -Rat::one()
            } else {
                -Rat::new(1, 2)
            };
            pairing[i][r] = v;
            pairing[r][i] = v;
        }
        let nu: Vec<i64> = norms
            .iter()
            .map(|n| {
                let v = rat(2) / n;
                assert!(v.is_integer(), "nu_i must be 1, 2 or 3");
                v.to_integer()
            })
            .collect();
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|r| {
                        let v = rat(2) * pairing[i][r] / norms[i];
                        assert!(v.is_integer(), "Cartan entries are integers");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let coroot_pairing: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|r| {
                        let v = rat(nu[i] * nu[r]) * pairing[i][r];
                        assert!(v.is_integer(), "coroot pairings are integers");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        // omega_i = sum_s c_{is} alpha_s with sum_s c_{is} <alpha_s, alpha_r^vee> = delta_{ir};
        // <alpha_s, alpha_r^vee> = cartan[r][s], so C = B^{-1} with B[s][r] = cartan[r][s].
        let b = Mat::from_fn(l, |s, r| linalg::qi(cartan[r][s]));
        let binv = b.inverse().expect("Cartan matrix is invertible");
        let omega: Vec<Vec<Rat>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|s| {
                        let q = binv.at(i, s);
                        Rat::new(
                            i64::try_from(q.numer()).unwrap(),
                            i64::try_from(q.denom()).unwrap(),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut rs = RootSystem {
            lie_type,
            pairing,
            coroot_pairing,
            cartan,
            marks: marks_table(lie_type),
            nu,
            allowed_j: allowed_j_table(lie_type),
            omega,
            roots: Vec::new(),
        };
        rs.roots = rs.generate_roots();
        rs
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    /// <alpha_i, alpha_r> with 1-based color indices.
    pub fn pairing(&self, i: usize, r: usize) -> Rat {
        self.pairing[i - 1][r - 1]
    }

    /// <alpha_i^vee, alpha_r^vee>, 1-based.
    pub fn coroot_pairing(&self, i: usize, r: usize) -> i64 {
        self.coroot_pairing[i - 1][r - 1]
    }

    /// Cartan entry a_{ir} = 2<alpha_i,alpha_r>/<alpha_i,alpha_i> = <alpha_r, alpha_i^vee>.
    pub fn cartan(&self, i: usize, r: usize) -> i64 {
        self.cartan[i - 1][r - 1]
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn allowed_j(&self) -> &[usize] {
        &self.allowed_j
    }

    /// nu_i = k_{alpha_i} / k; 1, 2 or 3.
    pub fn nu(&self, i: usize) -> i64 {
        self.nu[i - 1]
    }

    /// k_{alpha_i} = 2k / <alpha_i, alpha_i>, the level of the sl_2(alpha_i) subalgebra.
    pub fn k_alpha(&self, i: usize, k: i64) -> i64 {
        self.nu(i) * k
    }

    /// The neighbor i' feeding the interaction terms of color i (i >= 2).
    pub fn i_prime(&self, i: usize) -> Option<usize> {
        if i < 2 {
            return None;
        }
        let l = self.rank();
        Some(match (self.lie_type.family, i == l) {
            (Family::D, true) => l - 2,
            (Family::E, true) => {
                if l == 8 {
                    5
                } else {
                    3
                }
            }
            _ => i - 1,
        })
    }

    /// mu_i = k_{alpha_i} / k_{alpha_{i'}}; a positive integer, absent for i = 1.
    pub fn mu(&self, i: usize) -> Option<i64> {
        let ip = self.i_prime(i)?;
        let m = self.nu(i) / self.nu(ip);
        debug_assert_eq!(self.nu(i) % self.nu(ip), 0);
        Some(m)
    }

    /// (nu_i, mu_i, i') as one record.
    pub fn level_constants(&self, i: usize) -> (i64, Option<i64>, Option<usize>) {
        (self.nu(i), self.mu(i), self.i_prime(i))
    }

    /// Fundamental weight omega_i in alpha-coordinates.
    pub fn omega(&self, i: usize) -> &[Rat] {
        &self.omega[i - 1]
    }

    /// Weyl vector rho (sum of fundamental weights) in alpha-coordinates.
    pub fn rho(&self) -> Vec<Rat> {
        let l = self.rank();
        (0..l)
            .map(|s| (0..l).map(|i| self.omega[i][s]).sum())
            .collect()
    }

    /// Dual Coxeter number 1 + sum a_i / nu_i.
    pub fn dual_coxeter(&self) -> i64 {
        1 + self
            .marks
            .iter()
            .zip(&self.nu)
            .map(|(a, n)| {
                debug_assert_eq!(a % n, 0);
                a / n
            })
            .sum::<i64>()
    }

    /// <beta, gamma> for vectors in alpha-coordinates.
    pub fn form(&self, beta: &[Rat], gamma: &[Rat]) -> Rat {
        let l = self.rank();
        let mut acc = Rat::zero();
        for i in 0..l {
            if beta[i].is_zero() {
                continue;
            }
            for r in 0..l {
                acc += beta[i] * gamma[r] * self.pairing[i][r];
            }
        }
        acc
    }

    pub fn form_i64(&self, beta: &[i64], gamma: &[i64]) -> Rat {
        let b: Vec<Rat> = beta.iter().map(|&x| rat(x)).collect();
        let g: Vec<Rat> = gamma.iter().map(|&x| rat(x)).collect();
        self.form(&b, &g)
    }

    /// <beta, alpha_i^vee> for beta in alpha-coordinates; always an integer.
    pub fn pair_coroot(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter()
            .enumerate()
            .map(|(s, &b)| b * self.cartan[i - 1][s])
            .sum()
    }

    fn generate_roots(&self) -> Vec<Vec<i64>> {
        let l = self.rank();
        let mut set: std::collections::BTreeSet<Vec<i64>> = (0..l)
            .map(|i| {
                let mut v = vec![0i64; l];
                v[i] = 1;
                v
            })
            .collect();
        loop {
            let mut new: Vec<Vec<i64>> = Vec::new();
            for beta in &set {
                for i in 1..=l {
                    let c = self.pair_coroot(beta, i);
                    let mut refl = beta.clone();
                    refl[i - 1] -= c;
                    if !set.contains(&refl) {
                        new.push(refl);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            set.extend(new);
        }
        set.into_iter().collect()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().sum::<i64>() > 0)
    }
}

/// Rectangular highest weight k_0 Lambda_0 + k_j Lambda_j of level k = k_0 + k_j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    pub k0: i64,
    pub kj: i64,
    pub j: usize,
}

impl HighestWeight {
    pub fn new(rs: &RootSystem, k0: i64, kj: i64, j: usize) -> Result<Self> {
        if k0 < 0 || kj < 0 || k0 + kj == 0 {
            return Err(Error::InvalidWeight(format!(
                "need k0, kj >= 0 with k0 + kj > 0, got k0={k0}, kj={kj}"
            )));
        }
        if kj > 0 {
            if !rs.allowed_j().contains(&j) {
                return Err(Error::InvalidWeight(format!(
                    "node j={j} does not admit a rectangular weight for {} (allowed: {:?})",
                    rs.lie_type,
                    rs.allowed_j()
                )));
            }
            Ok(HighestWeight { k0, kj, j })
        } else {
            // Convention: with kj = 0 the node is the smallest allowed index.
            let j = rs.allowed_j().first().copied().unwrap_or(1);
            Ok(HighestWeight { k0, kj: 0, j })
        }
    }

    pub fn level(&self) -> i64 {
        self.k0 + self.kj
    }

    /// Finite part of Lambda (= k_j omega_j) in alpha-coordinates.
    pub fn lambda_bar(&self, rs: &RootSystem) -> Vec<Rat> {
        rs.omega(self.j).iter().map(|c| rat(self.kj) * c).collect()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.k0, self.kj, self.j)
    }
}

/// The j_t window threshold T for the configured sign; the window is
/// T+1 <= t <= k_{alpha_j}.
pub fn window_threshold(rs: &RootSystem, w: &HighestWeight, sign: JtSign) -> i64 {
    let nu_j = rs.nu(w.j);
    match sign {
        JtSign::Plus => nu_j * w.k0 + (nu_j - 1) * w.kj,
        JtSign::Minus => nu_j * w.k0 - (nu_j - 1) * w.kj,
    }
}

/// j_t: returns j when t lies in the window, else 0. Errors for t outside
/// 1..=k_{alpha_j}.
pub fn j_window(rs: &RootSystem, w: &HighestWeight, t: i64, sign: JtSign) -> Result<usize> {
    let cap = rs.k_alpha(w.j, w.level());
    if t < 1 || t > cap {
        return Err(Error::Input(format!(
            "j_window charge value t={t} outside 1..={cap}"
        )));
    }
    let thr = window_threshold(rs, w, sign);
    Ok(if t > thr { w.j } else { 0 })
}

/// Count of window hits sum_{t=1}^{n} delta_{i, j_t}; safe for any color i.
pub fn window_count(rs: &RootSystem, w: &HighestWeight, sign: JtSign, i: usize, n: i64) -> i64 {
    if i != w.j {
        return 0;
    }
    let cap = rs.k_alpha(w.j, w.level());
    let thr = window_threshold(rs, w, sign);
    (n.min(cap) - thr).max(0)
}

/// A root system together with a highest weight and the window-sign switch.
/// Bundles the inputs every character and enumeration routine needs.
#[derive(Clone, Copy, Debug)]
pub struct Instance<'a> {
    pub rs: &'a RootSystem,
    pub weight: HighestWeight,
    pub jt_sign: JtSign,
}

impl<'a> Instance<'a> {
    pub fn new(rs: &'a RootSystem, weight: HighestWeight, jt_sign: JtSign) -> Self {
        Instance {
            rs,
            weight,
            jt_sign,
        }
    }

    pub fn level(&self) -> i64 {
        self.weight.level()
    }

    pub fn k_alpha(&self, i: usize) -> i64 {
        self.rs.k_alpha(i, self.level())
    }

    pub fn window_count(&self, i: usize, n: i64) -> i64 {
        window_count(self.rs, &self.weight, self.jt_sign, i, n)
    }

    pub fn window_threshold(&self) -> i64 {
        window_threshold(self.rs, &self.weight, self.jt_sign)
    }
}
