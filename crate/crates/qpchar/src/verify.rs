//! The identity suite: every closed-form character is checked against an
//! independent route (brute-force enumeration, the alternative
//! parameterization, or the bosonic oracle), exactly, up to a truncation.

use crate::characters;
use crate::error::Result;
use crate::oracle::{self, Oracle};
use crate::quasiparticles;
use crate::root_system::Instance;
use crate::series::{energy_to_string, Energy, GradedSeries};
use num_bigint::BigInt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    /// Fermionic sum vs brute-force enumeration (unprimed and primed).
    Principal,
    /// R-form vs P-form.
    Forms,
    /// Module reconstruction against Freudenthal.
    Module,
    /// Vacuum characters against the bosonic oracle.
    Vacuum,
    /// Parafermionic three-way equality (with the anchor gate).
    Parafermion,
}

impl std::str::FromStr for Suite {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "all" => Suite::All,
            "principal" => Suite::Principal,
            "forms" => Suite::Forms,
            "module" => Suite::Module,
            "vacuum" => Suite::Vacuum,
            "parafermion" | "parafermionic" => Suite::Parafermion,
            other => {
                return Err(crate::error::Error::Input(format!(
                    "unknown suite {other:?} (expected all|principal|forms|module|vacuum|parafermion)"
                )))
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// First discrepancy coordinates on failure, term counts on success.
    pub detail: String,
    pub millis: u128,
}

impl CheckReport {
    pub fn line(&self) -> String {
        format!(
            "{} {} ({} ms){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.millis,
            if self.detail.is_empty() {
                String::new()
            } else {
                format!(" — {}", self.detail)
            }
        )
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub instance: String,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn compare(name: &str, started: Instant, lhs: &GradedSeries, rhs: &GradedSeries) -> CheckReport {
    match lhs.first_discrepancy(rhs) {
        None => CheckReport {
            name: name.into(),
            passed: true,
            detail: format!("{} = {} terms", lhs.term_count(), rhs.term_count()),
            millis: started.elapsed().as_millis(),
        },
        Some(d) => CheckReport {
            name: name.into(),
            passed: false,
            detail: format!("first discrepancy at {d}"),
            millis: started.elapsed().as_millis(),
        },
    }
}

/// Generating series of an enumerated monomial family.
pub fn enumeration_series(inst: &Instance, n_bound: i64, primed: bool) -> GradedSeries {
    let monos = quasiparticles::enumerate(inst, n_bound, primed);
    let mut s = GradedSeries::zero(inst.rs.rank(), Energy::from_integer(n_bound));
    for b in &monos {
        let (wt, en) = b.weight_and_energy();
        s.add_term(
            Energy::from_integer(en),
            wt.iter().map(|&x| x as i32).collect(),
            &BigInt::from(1),
        );
    }
    s
}

pub fn check_principal_vs_enumeration(inst: &Instance, n: i64, primed: bool) -> CheckReport {
    let t = Instant::now();
    let tag = if primed { "primed" } else { "unprimed" };
    let formula = characters::principal_char_r(inst, Energy::from_integer(n), primed);
    let brute = enumeration_series(inst, n, primed);
    compare(
        &format!("principal_R_vs_enumeration_{tag}"),
        t,
        &formula,
        &brute,
    )
}

pub fn check_r_vs_p(inst: &Instance, n: Energy, primed: bool) -> CheckReport {
    let t = Instant::now();
    let tag = if primed { "primed" } else { "unprimed" };
    let r = characters::principal_char_r(inst, n, primed);
    let p = characters::principal_char_p(inst, n, primed);
    compare(&format!("principal_R_vs_P_{tag}"), t, &r, &p)
}

pub fn check_module(inst: &Instance, oracle: &Oracle, n: i64) -> Result<CheckReport> {
    let t = Instant::now();
    let trunc = Energy::from_integer(n);
    let fermionic = characters::module_char(inst, trunc);
    let table = oracle.multiplicities(inst.rs, &inst.weight, n)?;
    let bosonic = oracle::module_char_bosonic(&table, trunc);
    Ok(compare("module_fermionic_vs_freudenthal", t, &fermionic, &bosonic))
}

pub fn check_vacuum(inst: &Instance, oracle: &Oracle, n: i64) -> Result<CheckReport> {
    let t = Instant::now();
    let trunc = Energy::from_integer(n);
    let fermionic = characters::vacuum_char(inst, trunc);
    let table = oracle.multiplicities(inst.rs, &inst.weight, n)?;
    let bosonic = oracle::vacuum_char_bosonic(&table, trunc)?;
    Ok(compare("vacuum_fermionic_vs_bosonic", t, &fermionic, &bosonic))
}

pub fn check_parafermionic(inst: &Instance, oracle: &Oracle, n: Energy) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let t = Instant::now();
    match oracle::anchor_check(oracle) {
        Ok(()) => out.push(CheckReport {
            name: "parafermionic_anchor".into(),
            passed: true,
            detail: "coset shift anchored at A1 k=2 depth-1 energy 1/2".into(),
            millis: t.elapsed().as_millis(),
        }),
        Err(e) => {
            out.push(CheckReport {
                name: "parafermionic_anchor".into(),
                passed: false,
                detail: e.to_string(),
                millis: t.elapsed().as_millis(),
            });
            return out; // the oracle refuses to run without the anchor
        }
    }

    let t = Instant::now();
    let fermionic = characters::parafermionic_char(inst, n);
    let brute = {
        let mut s = GradedSeries::zero(inst.rs.rank(), n);
        for (ce, _) in quasiparticles::parafermionic_brute_force(inst, n) {
            s.add_term(ce, vec![0; inst.rs.rank()], &BigInt::from(1));
        }
        s
    };
    out.push(compare(
        "parafermionic_fermionic_vs_bruteforce",
        t,
        &fermionic,
        &brute,
    ));

    let t = Instant::now();
    match oracle::parafermionic_char_bosonic(oracle, inst, n) {
        Ok(bosonic) => out.push(compare(
            "parafermionic_fermionic_vs_bosonic",
            t,
            &fermionic,
            &bosonic,
        )),
        Err(e) => out.push(CheckReport {
            name: "parafermionic_fermionic_vs_bosonic".into(),
            passed: false,
            detail: e.to_string(),
            millis: t.elapsed().as_millis(),
        }),
    }
    out
}

/// Run the selected identity checks for one instance at one truncation.
pub fn verify_suite(inst: &Instance, oracle: &Oracle, n: Energy, suite: Suite) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let n_floor = n.floor().to_integer();
    if matches!(suite, Suite::All | Suite::Principal) {
        checks.push(check_principal_vs_enumeration(inst, n_floor, false));
        checks.push(check_principal_vs_enumeration(inst, n_floor, true));
    }
    if matches!(suite, Suite::All | Suite::Forms) {
        checks.push(check_r_vs_p(inst, n, false));
        checks.push(check_r_vs_p(inst, n, true));
    }
    if matches!(suite, Suite::All | Suite::Module) {
        checks.push(check_module(inst, oracle, n_floor)?);
    }
    if matches!(suite, Suite::All | Suite::Vacuum) {
        checks.push(check_vacuum(inst, oracle, n_floor)?);
    }
    if matches!(suite, Suite::All | Suite::Parafermion) {
        checks.extend(check_parafermionic(inst, oracle, n));
    }
    Ok(SuiteReport {
        instance: format!(
            "{} weight {} (jt-sign {:?}, N = {})",
            inst.rs.lie_type,
            inst.weight,
            inst.jt_sign,
            energy_to_string(n)
        ),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{HighestWeight, JtSign, RootSystem};

    #[test]
    fn suite_passes_on_a1_level1() {
        let rs = RootSystem::build("A1".parse().unwrap());
        let w = HighestWeight::new(&rs, 1, 0, 1).unwrap();
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let oracle = Oracle::in_memory();
        let report = verify_suite(&inst, &oracle, Energy::from_integer(6), Suite::All).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{}", c.line());
        }
    }

    #[test]
    fn suite_lines_format() {
        let rs = RootSystem::build("A1".parse().unwrap());
        let w = HighestWeight::new(&rs, 2, 0, 1).unwrap();
        let inst = Instance::new(&rs, w, JtSign::Plus);
        let oracle = Oracle::in_memory();
        let report =
            verify_suite(&inst, &oracle, Energy::from_integer(4), Suite::Principal).unwrap();
        assert_eq!(report.checks.len(), 2);
        assert!(report.checks[0].line().starts_with("PASS principal_R_vs_enumeration_unprimed"));
    }
}
