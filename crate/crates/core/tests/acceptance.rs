//! Acceptance suite: one line per criterion, nonzero exit if any fails.

#![allow(clippy::type_complexity)]

use std::process::ExitCode;
use std::sync::Arc;

use reltube::alpha::{self, su2_level_k};
use reltube::commutant::{self, CommutantConfig};
use reltube::fusion_data::{self, all_subcategories, catalog, Label, Subcategory};
use reltube::half_braiding::{self, verify};
use reltube::oracle::{solve_bfe_direct, OracleConfig};
use reltube::report::{self, RunConfig};
use reltube::tube::build_tube;

type Outcome = Result<String, String>;

fn sub(name: &str, members: &[usize]) -> Subcategory {
    let cat = Arc::new(catalog::load(name).unwrap());
    fusion_data::subcategory(cat, members.iter().map(|&i| Label(i))).unwrap()
}

/// The named pairs: (description, category, members).
fn pairs() -> Vec<(&'static str, &'static str, Vec<usize>)> {
    vec![
        ("Tube(Vec, Ising)", "ising", vec![0]),
        ("Tube(Vec, Fibonacci)", "fibonacci", vec![0]),
        ("Tube(Vec(Z/2), Vec(Z/2))", "vec_z2", vec![0, 1]),
        ("Tube({1,psi}, Ising)", "ising", vec![0, 2]),
        ("Tube(Ising, Ising)", "ising", vec![0, 1, 2]),
        ("Tube(Fibonacci, Fibonacci)", "fibonacci", vec![0, 1]),
    ]
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_1() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for name in catalog::NAMES {
        let cat = Arc::new(catalog::load(name).unwrap());
        let dim_d: f64 = cat.qdim.iter().map(|d| d * d).sum();
        for s in all_subcategories(&cat) {
            let a = build_tube(&s).map_err(|e| format!("{name}: {e}"))?;
            let phi = a.phi(&a.unit()).unwrap();
            worst = worst.max((phi.re - dim_d).abs()).max(phi.im.abs());
            count += 1;
        }
    }
    ensure(worst < 1e-9, format!("phi(1) = dim D on {count} pairs, max residual {worst:.2e} (< 1e-9)"))
}

fn criterion_2() -> Outcome {
    let cfg = CommutantConfig::default();
    let mut worst_units: f64 = 0.0;
    let mut worst_sum: f64 = 0.0;
    for (_, name, members) in pairs() {
        let a = build_tube(&sub(name, &members)).unwrap();
        let c = commutant::decompose(&a, &cfg).map_err(|e| format!("{name}: {e}"))?;
        let mut total = a.zero();
        for b in &c.blocks {
            worst_units = worst_units.max(commutant::matrix_unit_residual(&a, b));
            total = total.add(&b.z).unwrap();
        }
        worst_sum = worst_sum.max(total.sub(&a.unit()).unwrap().norm_max());
    }
    ensure(
        worst_units < 1e-8 && worst_sum < 1e-8,
        format!("matrix units {worst_units:.2e}, sum of central projections {worst_sum:.2e} (< 1e-8)"),
    )
}

fn criterion_3() -> Outcome {
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let fib = 1.0 + golden * golden;
    let ising = 1.0 + 2.0 + 1.0;
    // dim C · dim D from the quantum dimensions, written out independently
    let expected = [ising, fib, 4.0, 2.0 * ising, ising * ising, fib * fib];
    let cfg = CommutantConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for ((label, name, members), want) in pairs().into_iter().zip(expected) {
        let a = build_tube(&sub(name, &members)).unwrap();
        let c = commutant::decompose(&a, &cfg).map_err(|e| format!("{name}: {e}"))?;
        let got: f64 = c.blocks.iter().map(|b| b.d_sigma * b.d_sigma).sum();
        ok &= (got - want).abs() < 1e-6;
        lines.push(format!("{label} {got:.6}/{want:.6}"));
    }
    ok &= (fib * fib - 13.090170).abs() < 1e-6;
    ensure(ok, format!("sum d^2 = dim C dim D (1e-6): {}", lines.join(", ")))
}

fn criterion_4() -> Outcome {
    let cfg = CommutantConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for name in catalog::NAMES {
        let cat = Arc::new(catalog::load(name).unwrap());
        let s = fusion_data::trivial_subcategory(cat.clone());
        let a = build_tube(&s).unwrap();
        let c = commutant::decompose(&a, &cfg).map_err(|e| format!("{name}: {e}"))?;
        let table =
            commutant::fusion_table(&a.calc, &c.half_braidings, cfg.rank_tol).map_err(|e| format!("{name}: {e}"))?;
        let r = cat.rank();
        // each block carries exactly one simple object of D
        let label_of: Vec<Option<usize>> = c
            .blocks
            .iter()
            .map(|b| {
                let nz: Vec<usize> = (0..r).filter(|&l| b.object_multiplicities[l] > 0).collect();
                (nz.len() == 1 && b.object_multiplicities[nz[0]] == 1).then(|| nz[0])
            })
            .collect();
        let mut good = c.blocks.len() == r && label_of.iter().all(Option::is_some);
        if good {
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        let (li, lj, lk) = (label_of[i].unwrap(), label_of[j].unwrap(), label_of[k].unwrap());
                        good &= table.n[i][j][k] == cat.mult(Label(li), Label(lj), Label(lk));
                    }
                }
            }
        }
        ok &= good;
        lines.push(format!("{name} {}", if good { "ok" } else { "mismatch" }));
    }
    ensure(ok, format!("Vec subcategory recovers D (block count and exact fusion rules): {}", lines.join(", ")))
}

fn criterion_5() -> Outcome {
    let cfg = CommutantConfig::default();
    let ocfg = OracleConfig::default();
    let cases: [(&str, &str, &[usize], Option<Vec<usize>>, usize); 3] = [
        ("Vec(Z/2)", "vec_z2", &[0, 1], None, 4),
        ("{1,psi} in Ising", "ising", &[0, 2], None, 6),
        ("Fibonacci center, sigma = tau", "fibonacci", &[0, 1], Some(vec![0, 1]), 2),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (label, name, members, only, expected) in cases {
        let s = sub(name, members);
        let a = build_tube(&s).unwrap();
        let c = commutant::decompose(&a, &cfg).map_err(|e| format!("{name}: {e}"))?;
        for h in &c.half_braidings {
            let v = verify(&a.calc, h, 1e-7);
            ok &= v.pass;
            worst = worst.max(v.bfe_residual);
        }
        let mut vectors: Vec<Vec<usize>> = c.blocks.iter().map(|b| b.object_multiplicities.clone()).collect();
        vectors.sort();
        vectors.dedup();
        if let Some(o) = &only {
            vectors.retain(|v| v == o);
        }
        let (mut tube_count, mut oracle_count) = (0, 0);
        for n in vectors {
            tube_count += c.blocks.iter().filter(|b| b.object_multiplicities == n).count();
            let res = solve_bfe_direct(&a.calc, s.members(), &n, &ocfg).map_err(|e| format!("{name}: {e}"))?;
            for h in &res.solutions {
                let v = verify(&a.calc, h, 1e-7);
                ok &= v.pass;
                worst = worst.max(v.bfe_residual);
            }
            oracle_count += res.solutions.len();
        }
        ok &= tube_count == expected && oracle_count == expected;
        lines.push(format!("{label} tube {tube_count} oracle {oracle_count} expected {expected}"));
    }
    ensure(ok, format!("{}; max BFE residual {worst:.2e} (< 1e-7)", lines.join(", ")))
}

fn criterion_6() -> Outcome {
    let cfg = CommutantConfig::default();
    let mut worst_conj: f64 = 0.0;
    let mut worst_tensor: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    for (_, name, members) in pairs() {
        let a = build_tube(&sub(name, &members)).unwrap();
        let c = commutant::decompose(&a, &cfg).map_err(|e| format!("{name}: {e}"))?;
        for h in &c.half_braidings {
            let cj = half_braiding::conjugate(&a.calc, h);
            worst_conj = worst_conj.max(half_braiding::bfe_residual(&a.calc, &cj));
            for h2 in &c.half_braidings {
                let t = half_braiding::tensor(&a.calc, h, h2).map_err(|e| e.to_string())?;
                worst_tensor = worst_tensor.max(half_braiding::bfe_residual(&a.calc, &t));
            }
        }
        // associativity failure is a hard error
        let t =
            commutant::fusion_table(&a.calc, &c.half_braidings, cfg.rank_tol).map_err(|e| format!("{name}: {e}"))?;
        if !(t.unit_law && t.duality && t.associative) {
            return Err(format!("{name}: fusion table violates unit law or duality"));
        }
        worst_gap = worst_gap.max(t.rounding_gap);
    }
    ensure(
        worst_conj < 1e-7 && worst_tensor < 1e-7 && worst_gap < 0.4,
        format!("conjugate BFE residual {worst_conj:.2e}, tensor BFE residual {worst_tensor:.2e} (< 1e-7), fusion tables associative, max rounding gap {worst_gap:.2e} (< 0.4)"),
    )
}

fn criterion_7() -> Outcome {
    let md = su2_level_k(10).unwrap();
    let ext = report::load_extension("e6").unwrap();
    let r = alpha::alpha_check(&md, &ext).map_err(|e| e.to_string())?;
    let k = ext.counts;
    let counts_ok = md.rank() == 11 && (k.d0, k.dplus, k.dminus, k.dfull) == (3, 6, 6, 12);
    let zs = r.extension.zs_residual;
    let zt = r.extension.zt_residual;
    let ids = &r.relative_commutants.identities;
    let (r49, r413) = (ids[0].residual, ids[2].residual);
    ensure(
        counts_ok && zs < 1e-9 && zt < 1e-9 && r49 < 1e-6 && r413 < 1e-6 && r.pass,
        format!(
            "rank {}, counts {}/{}/{}/{}, ZS-SZ {zs:.2e} ZT-TZ {zt:.2e} (< 1e-9), commutant identities {r49:.2e} {r413:.2e} (< 1e-6)",
            md.rank(),
            k.d0,
            k.dplus,
            k.dminus,
            k.dfull
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for (_, name, members) in pairs() {
        let mut cfg = RunConfig::new(name).with_sub(&members);
        cfg.commutant.seed = 7;
        cfg.oracle = Some(OracleConfig { seed: 7, ..Default::default() });
        let a = report::to_json(&report::run_commutant(&cfg).map_err(|e| e.to_string())?);
        let b = report::to_json(&report::run_commutant(&cfg).map_err(|e| e.to_string())?);
        if a != b {
            return Err(format!("{name} {members:?}: reports differ"));
        }
        n += 1;
    }
    let md = su2_level_k(10).unwrap();
    let ext = report::load_extension("e6").unwrap();
    let a = report::to_json(&report::run_alpha(&md, &ext).unwrap());
    let b = report::to_json(&report::run_alpha(&md, &ext).unwrap());
    ensure(a == b, format!("{} report pairs byte-identical", n + 1))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("phi of unit", criterion_1),
        ("matrix units", criterion_2),
        ("dimension sum", criterion_3),
        ("Vec recovers D", criterion_4),
        ("oracle agreement", criterion_5),
        ("conjugation and tensor closure", criterion_6),
        ("E6 example", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("acceptance {} [{title}]: PASS: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("acceptance {} [{title}]: FAIL: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
