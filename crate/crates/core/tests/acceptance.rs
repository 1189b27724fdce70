//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::FRAC_PI_4;
use std::panic;
use std::time::{Duration, Instant};

use dmdgp::bp::SearchMode;
use dmdgp::data::{published_distribution, PUBLISHED_MARKED};
use dmdgp::grover::MarkedSet;
use dmdgp::instance::generate_detailed;
use dmdgp::{
    branch_and_prune, example_topology, expand_symmetry, extract_internal, generate_from_topology, grover_distribution,
    iteration_count, penalty, realize, sample, selectivity, success_probability, symmetry_set, total_variation,
    BitString, BpOptions, IterationMode, Oracle, OracleParams, Statevector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))?;
    Ok(elapsed)
}

fn closed_form_reproduction() -> Outcome {
    let one = grover_distribution(8, &[2], 1).map_err(|e| e.to_string())?;
    let two = grover_distribution(8, &[2], 2).map_err(|e| e.to_string())?;
    ensure((one.get(2) - 25.0 / 32.0).abs() < 1e-9, || format!("one iteration gave {}", one.get(2)))?;
    ensure((two.get(2) - 121.0 / 128.0).abs() < 1e-9, || format!("two iterations gave {}", two.get(2)))?;
    let published =
        [(&one, "simulator_std_1call", "simulator_impr_1call"), (&two, "simulator_std_2call", "simulator_impr_2call")];
    let mut shown = Vec::new();
    for (dist, std_col, impr_col) in published {
        let freq = sample(dist, 8196, 2024).frequencies().get(PUBLISHED_MARKED);
        for col in [std_col, impr_col] {
            let reference = published_distribution(col).ok_or(format!("missing column {col}"))?.get(PUBLISHED_MARKED);
            ensure((freq - reference).abs() <= 0.02, || format!("sampled {freq} vs {col} = {reference}"))?;
            shown.push(format!("{freq:.3}~{reference}"));
        }
    }
    Ok(format!("25/32 and 121/128 exact; 8196 shots {}", shown.join(", ")))
}

fn iteration_formula() -> Outcome {
    let plan = iteration_count(8, 1, IterationMode::Nearest).map_err(|e| e.to_string())?;
    let expected = (1.0 / 8f64.sqrt()).acos() / (6.0f64 / 8.0).acos();
    ensure((plan.k_raw - expected).abs() < 1e-9, || format!("k_raw {} vs {expected}", plan.k_raw))?;
    let large = iteration_count(1024, 1, IterationMode::Nearest).map_err(|e| e.to_string())?;
    let ratio = large.k_raw / 1024f64.sqrt();
    ensure((ratio - FRAC_PI_4).abs() <= 0.06, || format!("k_raw/sqrt(N) = {ratio}"))?;
    Ok(format!("k_raw(8) = {:.6}, k_raw(1024)/32 = {ratio:.4}", plan.k_raw))
}

fn oracle_correctness() -> Outcome {
    let start = Instant::now();
    let mut instances = 0;
    let mut candidates = 0u64;
    for n in 4..=12 {
        for seed in 0..12u64 {
            let p = [0.0, 0.3, 0.6, 1.0][seed as usize % 4];
            let g = generate_detailed(n, 1000 * n as u64 + seed, p);
            let inst = &g.instance;
            let tag = format!("n={n} seed={seed}");
            let internal = extract_internal(inst).map_err(|e| format!("{tag}: {e}"))?;
            let params = OracleParams::with_defaults(n);
            let threshold = 1.0 - params.epsilon;
            let rows = Oracle::new(inst, &internal, params).scan().map_err(|e| e.to_string())?;
            for r in &rows {
                ensure((0.0..=1.0).contains(&r.normalized), || {
                    format!("{tag} k={}: g/p1 = {}", r.index, r.normalized)
                })?;
                let ok =
                    if r.penalty < params.delta { r.value < threshold } else { (threshold..=1.0).contains(&r.value) };
                ensure(ok, || format!("{tag} k={}: g = {}, value = {}", r.index, r.penalty, r.value))?;
                ensure(r.marked == (r.penalty < params.delta), || format!("{tag} k={}: f disagrees with g", r.index))?;
            }
            let marked: Vec<u64> = rows.iter().filter(|r| r.marked).map(|r| r.index).collect();
            let bp = branch_and_prune(inst, &internal, BpOptions::default()).map_err(|e| format!("{tag}: {e}"))?;
            ensure(marked == bp.indices(), || format!("{tag}: oracle {marked:?} vs BP {:?}", bp.indices()))?;
            let s = symmetry_set(inst);
            ensure(marked.len() as u64 == s.solution_count(), || {
                format!("{tag}: |marked| = {} but S = {:?}", marked.len(), s.vertices)
            })?;
            let mask = (1u64 << (n - 3)) - 1;
            ensure(marked.iter().all(|k| marked.binary_search(&(k ^ mask)).is_ok()), || {
                format!("{tag}: marked set not closed under complement")
            })?;
            instances += 1;
            candidates += rows.len() as u64;
        }
    }
    ensure(instances >= 100, || format!("only {instances} instances"))?;
    let elapsed = within_budget(start, Duration::from_secs(60))?;
    Ok(format!("{instances} instances, {candidates} candidates scanned in {:.2?}", elapsed))
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let (inst, _) =
        generate_from_topology(&example_topology(), &"0101".parse().unwrap(), 1).map_err(|e| e.to_string())?;
    let internal = extract_internal(&inst).map_err(|e| e.to_string())?;
    let s = symmetry_set(&inst);
    ensure(s.vertices == [4, 7], || format!("S = {:?}", s.vertices))?;
    let expected: Vec<BitString> = ["0100", "0101", "1010", "1011"].iter().map(|b| b.parse().unwrap()).collect();
    let all = branch_and_prune(&inst, &internal, BpOptions::default()).map_err(|e| e.to_string())?;
    ensure(all.bit_strings() == expected, || format!("BP gave {:?}", all.bit_strings()))?;
    let first = branch_and_prune(&inst, &internal, BpOptions { mode: SearchMode::First, ..BpOptions::default() })
        .map_err(|e| e.to_string())?;
    ensure(expected.contains(&first.entries[0].bits), || "first-solution mode left the set".into())?;
    let expanded: Vec<BitString> = expand_symmetry(&"0101".parse().unwrap(), &s).into_iter().collect();
    ensure(expanded == expected, || format!("expansion gave {expanded:?}"))?;
    within_budget(start, Duration::from_secs(1))?;
    Ok("S = {4, 7}; solutions 0100 0101 1010 1011; expansion of 0101 matches".into())
}

fn published_metrics() -> Outcome {
    let santiago = published_distribution("santiago_std_1call").ok_or("missing santiago column")?;
    let simulator = published_distribution("simulator_std_1call").ok_or("missing simulator column")?;
    let fidelity = 1.0 - total_variation(&santiago, &simulator).map_err(|e| e.to_string())?;
    let sel = selectivity(&santiago, &[PUBLISHED_MARKED]).map_err(|e| e.to_string())?;
    ensure((fidelity - 0.856).abs() <= 0.001, || format!("fidelity {fidelity}"))?;
    ensure((sel - 9.2).abs() <= 0.1, || format!("selectivity {sel}"))?;
    Ok(format!("fidelity {fidelity:.4}, selectivity {sel:.3}"))
}

fn geometry_round_trip() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut worst_param = 0.0f64;
    let mut worst_penalty = 0.0f64;
    for n in 4..=14 {
        for seed in 0..20u64 {
            let g = generate_detailed(n, 7 * seed + n as u64, 0.5);
            let tag = format!("n={n} seed={seed}");
            let got = extract_internal(&g.instance).map_err(|e| format!("{tag}: {e}"))?;
            for i in 2..=n {
                worst_param = worst_param.max((got.bond(i) - g.internal.bond(i)).abs());
            }
            for i in 3..=n {
                worst_param = worst_param.max((got.angle(i) - g.internal.angle(i)).abs());
            }
            for i in 4..=n {
                worst_param = worst_param.max((got.torsion_cosine(i) - g.torsions[i - 4].cos()).abs());
            }
            ensure(worst_param < 1e-9, || format!("{tag}: parameter error {worst_param:e}"))?;
            let truth = &g.ground_truth.bits;
            let p = penalty(&realize(&got, truth).map_err(|e| e.to_string())?, &g.instance);
            worst_penalty = worst_penalty.max(p);
            ensure(p < 1e-10, || format!("{tag}: ground-truth penalty {p:e}"))?;
            // Every candidate up to 64 of them, evenly spaced ones beyond.
            let size = g.instance.candidate_count();
            let stride = (size / 64).max(1) as usize;
            for k in (0..size).step_by(stride) {
                let b = BitString::from_index(k, n - 3);
                let a = penalty(&realize(&got, &b).unwrap(), &g.instance);
                let c = penalty(&realize(&got, &b.complement()).unwrap(), &g.instance);
                ensure((a - c).abs() < 1e-9, || format!("{tag}: {b} gives {a}, complement {c}"))?;
            }
            count += 1;
        }
    }
    within_budget(start, Duration::from_secs(10))?;
    Ok(format!(
        "{count} instances; max parameter error {worst_param:.1e}, max ground-truth penalty {worst_penalty:.1e}"
    ))
}

fn statevector_health() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checks = 0usize;
    let mut worst_norm = 0.0f64;
    let mut worst_prob = 0.0f64;
    for bits in 1..=14 {
        let size = 1usize << bits;
        let mut ms = vec![1, size - 1, size / 2];
        ms.extend((0..3).map(|_| rng.random_range(1..size)));
        ms.sort_unstable();
        ms.dedup();
        let k_max = (3.0 * (size as f64).sqrt()).floor() as usize;
        for m in ms {
            let mut picks: Vec<usize> = rand::seq::index::sample(&mut rng, size, m).into_vec();
            picks.sort_unstable();
            let marked = MarkedSet::new(size, picks.iter().copied()).map_err(|e| e.to_string())?;
            let mut state = Statevector::uniform(size).map_err(|e| e.to_string())?;
            for k in 0..=k_max {
                if k > 0 {
                    state.grover_iteration(&marked);
                }
                let norm_err = (state.norm_sqr() - 1.0).abs();
                worst_norm = worst_norm.max(norm_err);
                ensure(norm_err <= 1e-12, || format!("N={size} M={m} k={k}: norm error {norm_err:e}"))?;
                let p = state.distribution().mass(&picks);
                let expected = success_probability(size, m, k);
                let err = (p - expected).abs();
                worst_prob = worst_prob.max(err);
                ensure(err <= 1e-9, || format!("N={size} M={m} k={k}: {p} vs {expected}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (N, M, k) checks; max norm error {worst_norm:.1e}, max probability error {worst_prob:.1e}"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("Grover closed-form reproduction", closed_form_reproduction),
        ("iteration formula", iteration_formula),
        ("oracle correctness", oracle_correctness),
        ("worked example", worked_example),
        ("metrics on published data", published_metrics),
        ("geometry round trip", geometry_round_trip),
        ("statevector health", statevector_health),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] criterion {} ({name}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
