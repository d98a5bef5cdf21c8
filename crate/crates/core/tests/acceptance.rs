//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use szv::finite::z_trunc_mod;
use szv::index::indices_up_to_weight;
use szv::mt::{mt_trunc, MtIndex};
use szv::numeric::check_indep_bullet_numeric;
use szv::registry::{SuiteBounds, VerificationSuite};
use szv::suites::{DsrSuite, FiniteSuite, MtSuite, PartialFractionSuite, TaylorSuite, TreeSuite};
use szv::trees::{random_tree, tree_value};
use szv::truncated::{hat_series_f64, sh_series, star_series, z_trunc};
use szv::{Bullet, Index, TruncationParams};

type Outcome = Result<String, String>;

/// Criteria that fail as stated, with the reason. They still print FAIL; the run only errors if
/// another criterion fails or one of these starts passing.
const KNOWN_RED: &[(&str, &str)] = &[(
    "7",
    "the truncated constant is 2 H_{M-1}^(2), whose gap to 2 zeta(2) is 2 sum_{n >= M} 1/n^2 > 2/M = 2e-4 at M = 10^4",
)];

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

/// Runs a suite and requires every instance to hold within the time budget.
fn suite(s: &dyn VerificationSuite, bounds: SuiteBounds, budget: Duration, min_instances: usize) -> Outcome {
    let start = Instant::now();
    let report = s.run(&bounds).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if let Some(bad) = report.instances.iter().find(|i| !i.verdict.holds()) {
        return Err(format!("{} of {} instances fail, first: {} {}", report.failed, report.instances.len(), bad.key, bad.verdict));
    }
    if report.instances.len() < min_instances {
        return Err(format!("only {} instances, need {min_instances}", report.instances.len()));
    }
    if elapsed > budget {
        return Err(format!("{} instances hold but took {elapsed:.1?}, over {budget:?}", report.passed));
    }
    Ok(format!("{} instances exact in {elapsed:.1?}", report.passed))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let m = 10_000;
    let params = TruncationParams::new(m, 2).map_err(|e| e.to_string())?;
    let two = hat_series_f64(&Index::new(vec![2]).unwrap(), Bullet::Star, params);
    let one = hat_series_f64(&Index::new(vec![1]).unwrap(), Bullet::Star, params);
    let d2 = (two.coeff(0) - PI * PI / 3.0).abs();
    let d1 = (one.coeff(1) + PI * PI / 6.0).abs();
    let elapsed = start.elapsed();
    let msg = format!("|const (2) - 2 zeta(2)| = {d2:.4e}, |t-coeff (1) + zeta(2)| = {d1:.4e} at M = {m}, {elapsed:.1?}");
    if d2 < 2e-4 && d1 < 2e-4 && elapsed < minutes(1) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Frozen from the symbolic difference of the two limits; every coefficient not listed is 0.
const BULLET_CANDIDATES: &[(&str, usize, &str)] = &[("1,1", 0, "-1/6"), ("1,1,1", 1, "17/62")];

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for k in indices_up_to_weight(3) {
        for order in 1..=2 {
            let report = check_indep_bullet_numeric(&k, order, 1e-4).map_err(|e| e.to_string())?;
            for row in &report.rows {
                let expected = BULLET_CANDIDATES
                    .iter()
                    .find(|(idx, n, _)| *idx == k.to_string() && *n == row.coefficient_index)
                    .map_or("0", |c| c.2);
                if row.candidate != expected || !row.ok {
                    return Err(format!(
                        "({k}) t^{}: diff/pi^2 = {:.8} recovers {} at distance {:.2e}, expected {expected}",
                        row.coefficient_index, row.over_pi2, row.candidate, row.distance
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} coefficients within 1e-4 of their frozen rationals"))
}

fn criterion_9() -> Outcome {
    let mut count = 0usize;
    let mut check = |ok: bool, what: String| -> Result<(), String> {
        count += 1;
        if ok {
            Ok(())
        } else {
            Err(what)
        }
    };
    for k in indices_up_to_weight(4) {
        for m in 1..=8 {
            let params = TruncationParams::new(m, 4).unwrap();
            check(star_series(&k, params).coeffs() == common::star_oracle(k.entries(), m, 4).as_slice(), format!("star ({k}) M={m}"))?;
            check(sh_series(&k, params).coeffs() == common::sh_oracle(k.entries(), m, 4).as_slice(), format!("sh ({k}) M={m}"))?;
            check(z_trunc(&k, m).unwrap() == common::z_oracle(k.entries(), m), format!("Z_M ({k}) M={m}"))?;
        }
    }
    for idx in MtIndex::all_up_to(5, 3) {
        for m in [2, 4, 7] {
            check(mt_trunc(&idx, m) == common::mt_oracle(idx.heads(), idx.tail(), m), format!("MT ({idx}) M={m}"))?;
        }
    }
    for k in indices_up_to_weight(5) {
        for p in [5, 7, 11, 13] {
            for n in 1..=3 {
                let fast = z_trunc_mod(&k, p, n).unwrap().residue;
                check(fast == common::z_mod_oracle(k.entries(), p, n), format!("Z_p ({k}) p={p} n={n}"))?;
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for i in 0..100 {
        let (x, k) = random_tree(&mut rng, 6, 3);
        let json = serde_json::to_value(x.to_json(&k)).unwrap();
        let name = |v: &serde_json::Value| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
        let raw = common::RawTree {
            vertices: json["vertices"].as_array().unwrap().iter().map(name).collect(),
            edges: json["edges"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| (name(&e["u"]), name(&e["v"]), e["k"].as_u64().unwrap() as u32))
                .collect(),
            root: name(&json["root"]),
            black: json["black"].as_array().unwrap().iter().map(name).collect(),
        };
        for m in [2, 4] {
            let fast = tree_value(&x, &k, TruncationParams::new(m, 3).unwrap()).unwrap();
            check(fast.coeffs() == common::tree_oracle(&raw, m, 3).as_slice(), format!("tree #{i} M={m}: {x}"))?;
        }
    }
    Ok(format!("{count} evaluator/oracle pairs identical"))
}

fn main() -> ExitCode {
    let base = SuiteBounds::default;
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 double shuffle relations, wt <= 6, M in {2,5,13}, mod t^4", Box::new(move || {
            suite(&DsrSuite, SuiteBounds { wt_max: 6, m_list: vec![2, 5, 13], order: 4, ..base() }, minutes(5), 1)
        })),
        ("2 coefficient words lie in H^0 and give the t^n coefficients, wt <= 6, n < 4", Box::new(move || {
            suite(&TaylorSuite, SuiteBounds { wt_max: 6, m_list: vec![2, 5, 13], order: 4, ..base() }, minutes(2), 1)
        })),
        ("3 paired chains equal Z_M of the shuffle product, wt <= 5, M <= 15", Box::new(move || {
            suite(&PartialFractionSuite, SuiteBounds { wt_max: 5, m_list: (1..=15).collect(), order: 1, ..base() }, minutes(1), 1)
        })),
        ("4 tree rewrites, root change, harvest and word values, M in {2,4,7}, N = 3", Box::new(move || {
            let b = SuiteBounds { m_list: vec![2, 4, 7], order: 3, tree_count: 200, max_vertices: 7, max_label: 3, wt_max: 4, ..base() };
            suite(&TreeSuite, b, minutes(10), 600)
        })),
        ("5 Mordell-Tornheim identities, wt <= 5, r <= 3, M in {2,4,7}, N = 3", Box::new(move || {
            suite(&MtSuite, SuiteBounds { wt_max: 5, depth_max: 3, m_list: vec![2, 4, 7], order: 3, ..base() }, minutes(3), 1)
        })),
        ("6 congruences mod p^n, p in {5,7,11,13}, n <= 3, wt <= 5", Box::new(move || {
            suite(&FiniteSuite, SuiteBounds { wt_max: 5, primes: vec![5, 7, 11, 13], n_max: 3, ..base() }, minutes(2), 1)
        })),
        ("7 limits at M = 10^4 within 2e-4", Box::new(criterion_7)),
        ("8 star minus shuffle over pi^2 near frozen rationals, wt <= 3, N <= 2", Box::new(criterion_8)),
        ("9 fast evaluators equal brute-force enumeration", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    let mut known_red = 0;
    let mut unexpected = 0;
    for (name, run) in &criteria {
        let known = KNOWN_RED.iter().find(|(id, _)| name.split(' ').next() == Some(*id));
        match (run(), known) {
            (Ok(msg), None) => println!("PASS criterion {name}: {msg}"),
            (Ok(msg), Some(_)) => {
                unexpected += 1;
                println!("PASS criterion {name}: {msg} (listed as known red; update KNOWN_RED)");
            }
            (Err(msg), known) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
                match known {
                    Some((_, why)) => {
                        known_red += 1;
                        println!("     known red: {why}");
                    }
                    None => unexpected += 1,
                }
            }
        }
    }
    println!("{} of {} criteria pass, {known_red} known red", criteria.len() - failed, criteria.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
