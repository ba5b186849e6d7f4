//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simulembed_cli::{run, Mode, RunConfig};
use simulembed_core::bookembed::{embed_all, extract_spinal_paths, SpinalPath};
use simulembed_core::engine::EmbedOptions;
use simulembed_core::experiment::{default_grid, run_grid};
use simulembed_core::generate::random_compatible_set;
use simulembed_core::graph::ColoredGraphSet;
use simulembed_core::io::{graph_set_json, to_json, EmbeddingDocument};
use simulembed_core::layout::{build_tuples, layout_case1, layout_chains, layout_split};
use simulembed_core::rational::rat;
use simulembed_core::seqpart::{greedy_partition, lemma_main_extract, longest_monotonic_run, tuple_partition, TupleSequence};
use simulembed_core::uphill::{draw_path_case1, draw_path_chains, Orientation, UphillDrawing};
use simulembed_core::verify::{check_partition, check_uphill};
use simulembed_core::Point;

const SEED: u64 = 20_241;

// Pinned tolerances.
const C1_CASES: usize = 100_000;
const C1_SECONDS: f64 = 60.0;
const C2_CASES: usize = 10_000;
const C3_CASES: usize = 10_000;
const C4_CASES: usize = 1_000;
const C4_CONSTANT: f64 = 4.0;
const C5_SAMPLES: usize = 10_000;
const C6_CASES: usize = 500;
const C6_SECONDS: f64 = 300.0;
const C7_K: f64 = 8.0;
const C7_K_PRIME: f64 = 4.0;
const C9_CASES: usize = 100;
const C9_K: f64 = 4.0;
const C10_C: f64 = 3.0;
const C11_CASES: usize = 100;

struct Line {
    passed: bool,
    text: String,
}

fn line(passed: bool, text: String) -> Line {
    Line { passed, text }
}

fn ceil_sqrt(n: usize) -> usize {
    let mut s = 0;
    while s * s < n {
        s += 1;
    }
    s
}

fn is_monotone(values: &[i64]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1]) || values.windows(2).all(|w| w[0] >= w[1])
}

fn run_values(seq: &[i64], indices: &[usize]) -> Option<Vec<i64>> {
    if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= seq.len()) {
        return None;
    }
    Some(indices.iter().map(|&i| seq[i]).collect())
}

// Enumerates every monotone subsequence starting at `i`.
fn extend(seq: &[i64], i: usize, up: bool) -> usize {
    let mut best = 1;
    for j in i + 1..seq.len() {
        if (up && seq[j] >= seq[i]) || (!up && seq[j] <= seq[i]) {
            best = best.max(1 + extend(seq, j, up));
        }
    }
    best
}

fn exhaustive_longest(seq: &[i64]) -> usize {
    (0..seq.len())
        .flat_map(|i| [extend(seq, i, true), extend(seq, i, false)])
        .max()
        .unwrap_or(0)
}

fn c1_longest_run_bound() -> Line {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut ok = 0;
    for _ in 0..C1_CASES {
        let n = rng.gen_range(1..=10_000usize);
        let range = rng.gen_range(1..=n as i64);
        let seq: Vec<i64> = (0..n).map(|_| rng.gen_range(0..range)).collect();
        let run = longest_monotonic_run(&seq).unwrap();
        let valid = run_values(&seq, &run.indices).is_some_and(|v| is_monotone(&v));
        if valid && run.len() >= ceil_sqrt(n) {
            ok += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    line(
        ok == C1_CASES && secs < C1_SECONDS,
        format!("01 longest run >= ceil(sqrt n): {ok}/{C1_CASES} cases, {secs:.1} s (limit {C1_SECONDS} s)"),
    )
}

fn c2_oracle_equivalence() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut ok = 0;
    for _ in 0..C2_CASES {
        let n = rng.gen_range(1..=15usize);
        let range = rng.gen_range(1..=8i64);
        let seq: Vec<i64> = (0..n).map(|_| rng.gen_range(0..range)).collect();
        if longest_monotonic_run(&seq).unwrap().len() == exhaustive_longest(&seq) {
            ok += 1;
        }
    }
    line(ok == C2_CASES, format!("02 longest run equals exhaustive search (n <= 15): {ok}/{C2_CASES} cases"))
}

fn c3_greedy_bound() -> Line {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let deltas = [1.0 / 3.0, 0.5, 2.0 / 3.0];
    let mut ok = 0;
    let mut worst = [0.0f64; 3];
    let mut fails = [0usize; 3];
    let mut first_fail = [usize::MAX; 3];
    for case in 0..C3_CASES {
        let delta: f64 = deltas[case % 3];
        let lo = 2f64.powf(1.0 / delta).ceil() as usize;
        // log-uniform n in [lo, 10^4]
        let n = (rng.gen_range((lo as f64).ln()..=(10_000f64).ln()).exp().round() as usize).clamp(lo, 10_000);
        let range = rng.gen_range(1..=n as i64);
        let seq: Vec<i64> = (0..n).map(|_| rng.gen_range(0..range)).collect();
        let part = greedy_partition(&seq, delta).unwrap();
        let bound = (2.0 * (1.0 - delta) + 1.0) * (n as f64).powf(1.0 - delta) / (1.0 - delta);
        let tuples = TupleSequence::from_dimensions(&[seq]).unwrap();
        let d = case % 3;
        worst[d] = worst[d].max(part.len() as f64 / bound);
        if check_partition(&tuples, &part).is_empty() && part.len() as f64 <= bound {
            ok += 1;
        } else {
            fails[d] += 1;
            first_fail[d] = first_fail[d].min(n);
        }
    }
    let detail: Vec<String> = ["1/3", "1/2", "2/3"]
        .iter()
        .enumerate()
        .map(|(d, name)| {
            let from = if fails[d] > 0 { format!(", smallest failing n {}", first_fail[d]) } else { String::new() };
            format!("d={name}: {} fail, worst runs/bound {:.3}{from}", fails[d], worst[d])
        })
        .collect();
    line(
        ok == C3_CASES,
        format!(
            "03 greedy runs <= (2(1-d)+1) n^(1-d)/(1-d), d in 1/3,1/2,2/3: {ok}/{C3_CASES} cases [{}], {:.1} s",
            detail.join("; "),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn c4_tuple_partition() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut ok = 0;
    let mut worst: BTreeMap<usize, f64> = BTreeMap::new();
    for _ in 0..C4_CASES {
        let k = rng.gen_range(1..=4usize);
        let n = rng.gen_range(1..=512usize);
        let range = rng.gen_range(1..=n as i64);
        let dims: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..range)).collect()).collect();
        let seq = TupleSequence::from_dimensions(&dims).unwrap();
        let part = tuple_partition(&seq, 0.5).unwrap();
        let e = 0.5f64.powi(k as i32);
        let implied = part.len() as f64 / ((n as f64).powf(1.0 - e) / (1.0 - e));
        let w = worst.entry(k).or_insert(0.0);
        *w = w.max(implied);
        if check_partition(&seq, &part).is_empty() && implied <= C4_CONSTANT {
            ok += 1;
        }
    }
    let table: Vec<String> = worst.iter().map(|(k, c)| format!("k={k}: C={c:.3}")).collect();
    line(
        ok == C4_CASES,
        format!("04 tuple partitions valid, implied C <= {C4_CONSTANT}: {ok}/{C4_CASES} cases [{}]", table.join(", ")),
    )
}

fn c5_few_values() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let (mut ok, mut total) = (0usize, 0usize);
    let mut constructive_short = 0usize;
    for r in 1..=4usize {
        let c = r * r;
        let mut k = 1;
        while k * c + 1 <= 25 {
            let n = k * c + 1;
            let bound = ceil_sqrt(n).max((r + n.div_ceil(c)).saturating_sub(2));
            let exhaustive = (c as f64).powi(n as i32) <= C5_SAMPLES as f64;
            let mut cases: Vec<Vec<i64>> = Vec::new();
            if exhaustive {
                for code in 0..c.pow(n as u32) {
                    let seq: Vec<i64> = (0..n).map(|i| ((code / c.pow(i as u32)) % c) as i64).collect();
                    cases.push(seq);
                }
            } else {
                for _ in 0..C5_SAMPLES {
                    let mut seq: Vec<i64> = (0..c as i64).collect();
                    seq.extend((c..n).map(|_| rng.gen_range(0..c as i64)));
                    seq.shuffle(&mut rng);
                    cases.push(seq);
                }
            }
            for seq in cases {
                let mut distinct = seq.clone();
                distinct.sort_unstable();
                distinct.dedup();
                if distinct.len() != c {
                    continue;
                }
                total += 1;
                let out = lemma_main_extract(&seq).unwrap();
                let valid = run_values(&seq, &out.run.indices).is_some_and(|v| is_monotone(&v));
                let oracle = exhaustive_longest(&seq);
                if out.constructive.as_ref().is_some_and(|r| r.len() < bound) {
                    constructive_short += 1;
                }
                if valid && out.run.len() >= bound && out.run.len() <= oracle && oracle >= bound {
                    ok += 1;
                }
            }
            k += 1;
        }
    }
    line(
        ok == total,
        format!(
            "05 few-values extraction >= max(ceil sqrt n, ceil(sqrt c + n/c - 2)), c in 1,4,9,16, n = kc+1 <= 25: {ok}/{total} cases, oracle agrees; construction alone short in {constructive_short}"
        ),
    )
}

fn config(mode: Mode, input: &Path, out: &Path) -> RunConfig {
    RunConfig {
        mode,
        input: Some(input.to_path_buf()),
        out: out.to_path_buf(),
        b: None,
        delta: 0.5,
        seed: 1,
        no_split: false,
        svg: false,
    }
}

fn random_set(rng: &mut ChaCha8Rng, max_k: usize, max_n: usize) -> ColoredGraphSet {
    let k = rng.gen_range(1..=max_k);
    let n = rng.gen_range(3..=max_n);
    let c = rng.gen_range(1..=n);
    let keep = rng.gen_range(0.5..=1.0);
    random_compatible_set(n, k, c as u32, keep, rng)
}

// Returns (expanded max bends, uphill max bends) per case.
fn c6_end_to_end(ratios: &mut Vec<(usize, usize)>) -> Line {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.json");
    let out = dir.path().join("out");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut ok = 0;
    let mut failures = Vec::new();
    for case in 0..C6_CASES {
        let set = random_set(&mut rng, 4, 200);
        fs::write(&input, graph_set_json(&set)).unwrap();
        let outcome = run(&config(Mode::Embed, &input, &out));
        let passed = outcome.is_ok_and(|o| o.passed) && {
            // the verified embedding is exactly what was written
            let text = fs::read_to_string(out.join("embedding.json")).unwrap();
            let doc = EmbeddingDocument::parse(&text).unwrap();
            let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
            let checks = report["checks"].as_array().unwrap();
            let stats = &report["stats"];
            ratios.push((stats["max_bends"].as_u64().unwrap() as usize, stats["uphill_max_bends"].as_u64().unwrap() as usize));
            let named = ["planarity", "uphill", "color consistency"].iter().all(|name| {
                checks
                    .iter()
                    .any(|c| c["name"].as_str().unwrap().starts_with(name))
            });
            let all = checks.iter().all(|c| c["passed"] == true);
            to_json(&doc) == text && doc.drawings.len() == set.graphs.len() && named && all
        };
        if passed {
            ok += 1;
        } else {
            failures.push(case);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    line(
        ok == C6_CASES && secs < C6_SECONDS,
        format!(
            "06 end-to-end planarity, uphill and color checks (k <= 4, n <= 200): {ok}/{C6_CASES} cases, {secs:.1} s (limit {C6_SECONDS} s){}",
            if failures.is_empty() { String::new() } else { format!(", failing {failures:?}") }
        ),
    )
}

fn c7_budget() -> Line {
    let rows = run_grid(1, &default_grid(), EmbedOptions::default()).unwrap();
    let mut k = 0.0f64;
    let mut k_prime = 0.0f64;
    let mut cells = Vec::new();
    for r in &rows {
        if r.cell.c == r.cell.n {
            k = k.max(r.max_bends as f64 / (r.cell.n as f64).sqrt());
        } else {
            k_prime = k_prime.max(r.max_bends as f64 / r.cell.c as f64);
        }
        cells.push(format!("n={} c={}: {}", r.cell.n, r.cell.c, r.max_bends));
    }
    line(
        k <= C7_K && k_prime <= C7_K_PRIME,
        format!(
            "07 k=2 bends <= K sqrt n (c=n) and <= K' c (c=4): K={k:.3} (limit {C7_K}), K'={k_prime:.3} (limit {C7_K_PRIME}) [{}]",
            cells.join(", ")
        ),
    )
}

fn c8_axis_arity() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let four = random_compatible_set(1024, 4, 1024, 0.9, &mut rng);
    let two = ColoredGraphSet::new(four.palette, four.graphs[..2].to_vec()).unwrap();
    let mut details = Vec::new();
    let mut passed = true;
    for set in [&two, &four] {
        let k = set.graphs.len();
        let paths = extract_spinal_paths(set, &embed_all(set).unwrap()).unwrap();
        let layout = layout_split(&build_tuples(&paths).unwrap()).unwrap();
        let split = layout.axis_split.as_ref().unwrap();
        let half = k.div_ceil(2);
        passed &= split.x_arity == half && split.x_paths.len() == half && split.y_arity == k - half;
        details.push(format!(
            "k={k}: x-axis arity {} over {} paths, y-axis arity {}, blocks {}",
            split.x_arity,
            split.x_paths.len(),
            split.y_arity,
            layout.worst_block_count()
        ));
    }
    line(passed, format!("08 x-axis partition uses ceil(k/2) paths (n=1024): {}", details.join("; ")))
}

fn paths_of(set: &ColoredGraphSet) -> Vec<SpinalPath> {
    extract_spinal_paths(set, &embed_all(set).unwrap()).unwrap()
}

fn uphill_ok(d: &UphillDrawing) -> bool {
    let edges: Vec<Vec<Point>> = d.edges.iter().map(|e| e.points.clone()).collect();
    check_uphill(&d.vertices, &edges, d.orientation == Orientation::Right)
        .unwrap()
        .is_empty()
}

fn c9_chains() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut ok = 0;
    let mut k_worst = 0.0f64;
    for _ in 0..C9_CASES {
        let set = random_set(&mut rng, 3, 60);
        let paths = paths_of(&set);
        let colors: std::collections::BTreeSet<_> = paths.iter().flat_map(|p| p.colors.iter().copied()).collect();
        let c = colors.len();
        let n = paths[0].items.len();
        let mut passed = true;
        for b in [1, 2, c] {
            let layout = layout_chains(&paths, b).unwrap();
            let expected: usize = layout
                .groups
                .iter()
                .map(|g| g.len() * paths[0].colors.iter().filter(|x| g.contains(x)).count())
                .sum();
            passed &= layout.len() == expected && expected <= n * c.div_ceil(b);
            for p in &paths {
                let d = draw_path_chains(p, &layout).unwrap();
                k_worst = k_worst.max(d.max_bends() as f64 / b as f64);
                passed &= d.max_bends() as f64 <= C9_K * b as f64 && uphill_ok(&d);
            }
        }
        if passed {
            ok += 1;
        }
    }
    line(
        ok == C9_CASES,
        format!(
            "09 chains: points = sum N_j|C_j| <= N ceil(c/b), bends <= K'' b for b in 1,2,c: {ok}/{C9_CASES} cases, K''={k_worst:.3} (limit {C9_K})"
        ),
    )
}

fn c10_propagation(ratios: &[(usize, usize)]) -> Line {
    let worst = ratios
        .iter()
        .map(|&(e, u)| e as f64 / u.max(1) as f64)
        .fold(0.0f64, f64::max);
    let flat = ratios.iter().filter(|&&(_, u)| u == 0).count();
    let over = ratios.iter().filter(|&&(e, u)| e as f64 > C10_C * u.max(1) as f64).count();
    let bent = ratios
        .iter()
        .filter(|&&(_, u)| u > 0)
        .map(|&(e, u)| e as f64 / u as f64)
        .fold(0.0f64, f64::max);
    let offset = ratios.iter().map(|&(e, u)| e as i64 - 2 * u as i64).max().unwrap_or(0);
    line(
        !ratios.is_empty() && worst <= C10_C,
        format!(
            "10 expanded bends <= C'' x max(uphill bends, 1): C''={worst:.3} (limit {C10_C}) over {} cases, {over} above limit, {flat} with straight uphill drawings; among bent ones e/u <= {bent:.3}; e <= 2u + {offset}",
            ratios.len()
        ),
    )
}

fn c11_shift_replay() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    let mut ok = 0;
    for _ in 0..C11_CASES {
        let set = random_set(&mut rng, 3, 60);
        let paths = paths_of(&set);
        let layout = layout_case1(&paths).unwrap();
        let shifts: Vec<_> = (0..layout.blocks.len())
            .map(|_| rat(rng.gen_range(-40..=40), rng.gen_range(1..=7)))
            .collect();
        let shifted = layout.shift_block_ordinates(&shifts).unwrap();
        let passed = paths.iter().all(|p| {
            let before = draw_path_case1(p, &layout).unwrap();
            let after = draw_path_case1(p, &shifted).unwrap();
            uphill_ok(&after) && before.bends == after.bends
        });
        if passed {
            ok += 1;
        }
    }
    line(ok == C11_CASES, format!("11 shifted block ordinates keep uphill drawings and bend counts: {ok}/{C11_CASES} cases"))
}

fn suite_artifacts(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 12);
    for i in 0..6 {
        let set = random_set(&mut rng, 4, 80);
        let input = root.join(format!("set_{i}.json"));
        fs::write(&input, graph_set_json(&set)).unwrap();
        run(&config(Mode::Embed, &input, &root.join(format!("embed_{i}")))).unwrap();
        let mut chains = config(Mode::Chains, &input, &root.join(format!("chains_{i}")));
        chains.b = Some(2);
        run(&chains).unwrap();
        let seq: Vec<i64> = (0..300).map(|_| rng.gen_range(0..50)).collect();
        let seq_path = root.join(format!("seq_{i}.json"));
        fs::write(&seq_path, serde_json::to_string(&seq).unwrap()).unwrap();
        run(&config(Mode::Partition, &seq_path, &root.join(format!("partition_{i}")))).unwrap();
    }
    let mut scale = config(Mode::Scale, Path::new(""), &root.join("scale"));
    scale.input = None;
    run(&scale).unwrap();
    let mut files = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_path_buf();
                files.insert(rel, fs::read(&path).unwrap());
            }
        }
    }
    files
}

fn c12_determinism() -> Line {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let fa = suite_artifacts(a.path());
    let fb = suite_artifacts(b.path());
    let differing: Vec<_> = fa.iter().filter(|(k, v)| fb.get(*k) != Some(v)).map(|(k, _)| k.display().to_string()).collect();
    let json_csv = fa
        .keys()
        .filter(|k| matches!(k.extension().and_then(|e| e.to_str()), Some("json" | "csv")))
        .count();
    line(
        differing.is_empty() && fa.len() == fb.len() && json_csv > 0,
        format!(
            "12 two seeded runs give byte-identical artifacts: {} files ({json_csv} JSON/CSV), {} differ",
            fa.len(),
            differing.len()
        ),
    )
}

fn main() -> ExitCode {
    // ACCEPTANCE_ONLY=3,6 runs a subset; criterion 10 reads the data of 6.
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let wanted = |i: usize| only.as_ref().is_none_or(|o| o.contains(&i) || (i == 6 && o.contains(&10)));
    let mut ratios = Vec::new();
    let (mut passed, mut failed) = (0, 0);
    for i in 1..=12 {
        if !wanted(i) {
            continue;
        }
        let l = match i {
            1 => c1_longest_run_bound(),
            2 => c2_oracle_equivalence(),
            3 => c3_greedy_bound(),
            4 => c4_tuple_partition(),
            5 => c5_few_values(),
            6 => c6_end_to_end(&mut ratios),
            7 => c7_budget(),
            8 => c8_axis_arity(),
            9 => c9_chains(),
            10 => c10_propagation(&ratios),
            11 => c11_shift_replay(),
            _ => c12_determinism(),
        };
        println!("{} {}", if l.passed { "PASS" } else { "FAIL" }, l.text);
        if l.passed {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    println!("acceptance: {passed} passed, {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
