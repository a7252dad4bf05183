//! Exact truncated formal series graded by a rational q-exponent (energy) and
//! an integer weight vector in y_1..y_l.
//!
//! Coefficients are arbitrary-precision integers; there is no floating point
//! anywhere in this module. Truncation bounds energies from above only --
//! negative energies are permitted (I-factors contribute q to negative powers
//! before cancellation).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub type Energy = Rational64;

/// Parse "15" or "31/2" as an exact rational.
pub fn parse_energy(s: &str) -> Result<Energy> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<i64> {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Input(format!("not a rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == 0 {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(Energy::new(parse_int(n)?, d))
        }
        None => Ok(Energy::from_integer(parse_int(s)?)),
    }
}

pub fn energy_to_string(e: Energy) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Mul,
}

/// Truncated series: map from (energy, weight vector) to a nonzero integer
/// coefficient, all energies <= truncation, all energy denominators dividing
/// `denom_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    truncation: Energy,
    dim: usize,
    denom_bound: i64,
    terms: BTreeMap<(Energy, Vec<i32>), BigInt>,
}

impl GradedSeries {
    pub fn zero(dim: usize, truncation: Energy) -> Self {
        GradedSeries {
            truncation,
            dim,
            denom_bound: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, truncation: Energy) -> Self {
        Self::monomial(Energy::zero(), vec![0; dim], truncation)
    }

    /// Single-term series; empty (not an error) when energy > truncation.
    pub fn monomial(energy: Energy, weight: Vec<i32>, truncation: Energy) -> Self {
        let dim = weight.len();
        let mut s = GradedSeries {
            truncation,
            dim,
            denom_bound: *energy.denom(),
            terms: BTreeMap::new(),
        };
        if energy <= truncation {
            s.terms.insert((energy, weight), BigInt::one());
        }
        s
    }

    pub fn truncation(&self) -> Energy {
        self.truncation
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denom_bound(&self) -> i64 {
        self.denom_bound
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Energy, &[i32], &BigInt)> {
        self.terms.iter().map(|((e, w), c)| (*e, w.as_slice(), c))
    }

    /// Add `c * q^e y^w` in place, dropping terms beyond the truncation and
    /// pruning cancellations.
    pub fn add_term(&mut self, energy: Energy, weight: Vec<i32>, coeff: &BigInt) {
        debug_assert_eq!(weight.len(), self.dim);
        if coeff.is_zero() || energy > self.truncation {
            return;
        }
        self.denom_bound = self.denom_bound.lcm(energy.denom());
        let entry = self.terms.entry((energy, weight)).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            // Remove to keep the no-zero-coefficients invariant.
            let key = self
                .terms
                .iter()
                .find(|(_, c)| c.is_zero())
                .map(|(k, _)| k.clone())
                .expect("just inserted");
            self.terms.remove(&key);
        }
    }

    /// Stored coefficient or 0; energies beyond the truncation are a query
    /// error rather than a silent 0.
    pub fn coefficient(&self, energy: Energy, weight: &[i32]) -> Result<BigInt> {
        if energy > self.truncation {
            return Err(Error::BeyondTruncation {
                energy: energy_to_string(energy),
                truncation: energy_to_string(self.truncation),
            });
        }
        Ok(self
            .terms
            .get(&(energy, weight.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero))
    }

    /// Exact sum or product with equal-truncation and equal-dimension contract.
    pub fn combine(a: &GradedSeries, b: &GradedSeries, op: CombineOp) -> Result<GradedSeries> {
        if a.truncation != b.truncation {
            return Err(Error::SeriesMismatch(format!(
                "truncations differ: {} vs {}",
                energy_to_string(a.truncation),
                energy_to_string(b.truncation)
            )));
        }
        if a.dim != b.dim {
            return Err(Error::SeriesMismatch(format!(
                "weight dimensions differ: {} vs {}",
                a.dim, b.dim
            )));
        }
        Ok(match op {
            CombineOp::Add => a.plus(b),
            CombineOp::Mul => a.times(b),
        })
    }

    pub fn plus(&self, other: &GradedSeries) -> GradedSeries {
        let mut out = self.clone();
        out.denom_bound = out.denom_bound.lcm(&other.denom_bound);
        for (e, w, c) in other.iter() {
            out.add_term(e, w.to_vec(), c);
        }
        out
    }

    pub fn times(&self, other: &GradedSeries) -> GradedSeries {
        let mut out = GradedSeries::zero(self.dim, self.truncation);
        out.denom_bound = self.denom_bound.lcm(&other.denom_bound);
        for (e1, w1, c1) in self.iter() {
            let room = self.truncation - e1;
            for (e2, w2, c2) in other.iter() {
                if e2 > room {
                    break; // terms are sorted by energy
                }
                let w: Vec<i32> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                out.add_term(e1 + e2, w, &(c1 * c2));
            }
        }
        out
    }

    /// Multiply by the monomial q^e y^w, dropping anything pushed past the
    /// truncation.
    pub fn shift(&self, energy: Energy, weight: &[i32]) -> GradedSeries {
        debug_assert_eq!(weight.len(), self.dim);
        let mut out = GradedSeries::zero(self.dim, self.truncation);
        out.denom_bound = self.denom_bound.lcm(energy.denom());
        for (e, w, c) in self.iter() {
            let ne = e + energy;
            if ne > self.truncation {
                break;
            }
            let nw: Vec<i32> = w.iter().zip(weight).map(|(a, b)| a + b).collect();
            out.add_term(ne, nw, c);
        }
        out
    }

    /// Same series with a lower truncation.
    pub fn truncated(&self, truncation: Energy) -> GradedSeries {
        let mut out = GradedSeries::zero(self.dim, truncation);
        out.denom_bound = self.denom_bound;
        for (e, w, c) in self.iter() {
            if e > truncation {
                break;
            }
            out.add_term(e, w.to_vec(), c);
        }
        out
    }

    /// Collapse the weight grading (set all y_i = 1).
    pub fn specialize_weights(&self) -> GradedSeries {
        let mut out = GradedSeries::zero(0, self.truncation);
        out.denom_bound = self.denom_bound;
        for (e, _, c) in self.iter() {
            out.add_term(e, vec![], c);
        }
        out
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// First (energy, weight) where the two series disagree, up to the smaller
    /// truncation. None means equal on the common domain.
    pub fn first_discrepancy(&self, other: &GradedSeries) -> Option<Discrepancy> {
        let cap = self.truncation.min(other.truncation);
        let zero = BigInt::zero();
        let mut keys: Vec<&(Energy, Vec<i32>)> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|(e, _)| *e <= cap)
            .collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            let a = self.terms.get(key).unwrap_or(&zero);
            let b = other.terms.get(key).unwrap_or(&zero);
            if a != b {
                return Some(Discrepancy {
                    energy: key.0,
                    weight: key.1.clone(),
                    left: a.clone(),
                    right: b.clone(),
                });
            }
        }
        None
    }

    pub fn agrees_with(&self, other: &GradedSeries) -> bool {
        self.first_discrepancy(other).is_none()
    }
}

/// A coordinate where two series differ, for verification reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub energy: Energy,
    pub weight: Vec<i32>,
    pub left: BigInt,
    pub right: BigInt,
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "q^{} y^{:?}: {} vs {}",
            energy_to_string(self.energy),
            self.weight,
            self.left,
            self.right
        )
    }
}

/// Binomial coefficient with exact integers.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Truncated expansion of (1 - q^m)^s for any integer s.
fn one_minus_qm_pow(m: i64, s: i64, dim: usize, truncation: Energy) -> GradedSeries {
    let mut out = GradedSeries::zero(dim, truncation);
    let w0 = vec![0; dim];
    if s >= 0 {
        for j in 0..=s {
            let e = Energy::from_integer(m * j);
            if e > truncation {
                break;
            }
            let c = if j % 2 == 0 {
                binomial(s, j)
            } else {
                -binomial(s, j)
            };
            out.add_term(e, w0.clone(), &c);
        }
    } else {
        let t = -s;
        let mut j = 0i64;
        loop {
            let e = Energy::from_integer(m * j);
            if e > truncation {
                break;
            }
            out.add_term(e, w0.clone(), &binomial(t - 1 + j, j));
            j += 1;
        }
    }
    out
}

/// Truncated 1/(q;q)_r = prod_{i=1}^r (1 - q^i)^{-1}; weight-neutral.
pub fn pochhammer_inv(r: i64, dim: usize, truncation: Energy) -> GradedSeries {
    let mut out = GradedSeries::one(dim, truncation);
    for i in 1..=r {
        out = out.times(&one_minus_qm_pow(i, -1, dim, truncation));
    }
    out
}

/// Truncated (q;q)_r = prod_{i=1}^r (1 - q^i).
pub fn pochhammer(r: i64, dim: usize, truncation: Energy) -> GradedSeries {
    let mut out = GradedSeries::one(dim, truncation);
    for i in 1..=r {
        out = out.times(&one_minus_qm_pow(i, 1, dim, truncation));
    }
    out
}

/// Truncated prod_{m>=1} (1 - q^m)^{e*l}; weight-neutral. Negative e*l is the
/// Fock factor, positive strips it.
pub fn euler_power(e: i64, l: usize, dim: usize, truncation: Energy) -> GradedSeries {
    let s = e * l as i64;
    let mut out = GradedSeries::one(dim, truncation);
    if s == 0 {
        return out;
    }
    let mut m = 1i64;
    while Energy::from_integer(m) <= truncation {
        out = out.times(&one_minus_qm_pow(m, s, dim, truncation));
        m += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// JSON form: { "D": int, "N": "rational", "terms": [[num, weight, "coeff"]] }
// sorted by energy then lexicographic weight -- bit-exact across platforms.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    #[serde(rename = "D")]
    d: i64,
    #[serde(rename = "N")]
    n: String,
    terms: Vec<(i64, Vec<i32>, String)>,
}

impl GradedSeries {
    pub fn to_json(&self) -> String {
        let d = self.denom_bound;
        let terms: Vec<(i64, Vec<i32>, String)> = self
            .iter()
            .map(|(e, w, c)| {
                let scaled = e * Energy::from_integer(d);
                debug_assert!(scaled.is_integer());
                (scaled.to_integer(), w.to_vec(), c.to_string())
            })
            .collect();
        serde_json::to_string(&SeriesJson {
            d,
            n: energy_to_string(self.truncation),
            terms,
        })
        .expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<GradedSeries> {
        let raw: SeriesJson = serde_json::from_str(s)?;
        let truncation = parse_energy(&raw.n)?;
        if raw.d <= 0 {
            return Err(Error::Input("denominator bound must be positive".into()));
        }
        let dim = raw.terms.first().map(|(_, w, _)| w.len()).unwrap_or(0);
        let mut out = GradedSeries::zero(dim, truncation);
        out.denom_bound = raw.d;
        for (num, w, coeff) in raw.terms {
            let c: BigInt = coeff
                .parse()
                .map_err(|_| Error::Input(format!("bad coefficient {coeff:?}")))?;
            if w.len() != dim {
                return Err(Error::Input("ragged weight vectors".into()));
            }
            out.add_term(Energy::new(num, raw.d), w, &c);
        }
        Ok(out)
    }

    /// Aligned text table: energy | weight | coefficient.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String, String)> = self
            .iter()
            .map(|(e, w, c)| {
                let ws = format!(
                    "({})",
                    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                );
                (energy_to_string(e), ws, c.to_string())
            })
            .collect();
        if rows.is_empty() {
            rows.push(("-".into(), "-".into(), "0".into()));
        }
        let e_w = rows.iter().map(|r| r.0.len()).max().unwrap().max(6);
        let w_w = rows.iter().map(|r| r.1.len()).max().unwrap().max(6);
        let c_w = rows.iter().map(|r| r.2.len()).max().unwrap().max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{:>e_w$}  {:<w_w$}  {:>c_w$}", "energy", "weight", "coeff");
        for (e, w, c) in rows {
            let _ = writeln!(out, "{e:>e_w$}  {w:<w_w$}  {c:>c_w$}");
        }
        out
    }

    /// LaTeX q-series snippet.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, w, c) in self.iter() {
            let mut term = String::new();
            let abs = c.abs();
            let ys: String = w
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("y_{{{}}}", i + 1)
                    } else {
                        format!("y_{{{}}}^{{{x}}}", i + 1)
                    }
                })
                .collect();
            let qs = if e.is_zero() {
                String::new()
            } else if e.is_integer() && *e.numer() == 1 {
                "q".to_string()
            } else {
                format!("q^{{{}}}", energy_to_string(e))
            };
            if !abs.is_one() || (qs.is_empty() && ys.is_empty()) {
                let _ = write!(term, "{abs}");
            }
            term.push_str(&qs);
            term.push_str(&ys);
            if c.is_negative() {
                parts.push(format!("- {term}"));
            } else if parts.is_empty() {
                parts.push(term);
            } else {
                parts.push(format!("+ {term}"));
            }
        }
        parts.join(" ")
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_series() -> impl Strategy<Value = GradedSeries> {
        let term = (0..6i64, 1..=2i64, proptest::array::uniform2(-2..3i32), -4..5i64);
        proptest::collection::vec(term, 0..6).prop_map(|terms| {
            let mut s = GradedSeries::zero(2, Energy::from_integer(8));
            for (num, den, w, c) in terms {
                s.add_term(Energy::new(num, den), w.to_vec(), &BigInt::from(c));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn mul_commutative(a in arb_series(), b in arb_series()) {
            prop_assert_eq!(a.times(&b), b.times(&a));
        }

        #[test]
        fn mul_associative(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        }

        #[test]
        fn add_then_distribute(a in arb_series(), b in arb_series(), c in arb_series()) {
            let lhs = a.plus(&b).times(&c);
            let rhs = a.times(&c).plus(&b.times(&c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
