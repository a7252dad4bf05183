//! Scratch probe over the desk-scale instance list (not part of the test
//! suite; `cargo run -p qpchar --example probe`).

use qpchar::oracle::Oracle;
use qpchar::root_system::{HighestWeight, Instance, JtSign, RootSystem};
use qpchar::series::Energy;
use qpchar::verify::{verify_suite, Suite};

fn main() {
    let cases: Vec<(&str, i64, i64, usize, i64)> = vec![
        ("A1", 1, 0, 1, 8),
        ("A1", 1, 1, 1, 8),
        ("A1", 2, 0, 1, 8),
        ("A1", 1, 1, 1, 8),
        ("A1", 3, 0, 1, 8),
        ("A1", 1, 2, 1, 8),
        ("A2", 1, 0, 1, 8),
        ("A2", 2, 0, 1, 6),
        ("B2", 1, 0, 1, 6),
        ("B2", 0, 1, 1, 6),
        ("B2", 0, 1, 2, 6),
        ("B2", 2, 0, 1, 6),
        ("B2", 1, 1, 1, 6),
        ("B2", 1, 1, 2, 6),
        ("C2", 2, 0, 1, 6),
        ("D4", 1, 0, 1, 6),
        ("G2", 1, 0, 2, 6),
        ("G2", 0, 1, 2, 5),
        ("F4", 1, 0, 4, 5),
    ];
    let oracle = Oracle::in_memory();
    let mut failures = 0;
    for (ty, k0, kj, j, n) in cases {
        let rs = RootSystem::build(ty.parse().unwrap());
        let w = HighestWeight::new(&rs, k0, kj, j).unwrap();
        for sign in [JtSign::Plus, JtSign::Minus] {
            let inst = Instance::new(&rs, w, sign);
            let t0 = std::time::Instant::now();
            let report =
                verify_suite(&inst, &oracle, Energy::from_integer(n), Suite::All).unwrap();
            println!(
                "== {} [{:?}] ({} ms total)",
                report.instance,
                sign,
                t0.elapsed().as_millis()
            );
            for c in &report.checks {
                println!("   {}", c.line());
                if !c.passed {
                    failures += 1;
                }
            }
        }
    }
    println!("total FAIL lines: {failures}");
}
