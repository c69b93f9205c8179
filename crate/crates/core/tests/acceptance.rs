//! End-to-end acceptance checks, one line per criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use udg_clique::bench::loglog_slope;
use udg_clique::cobipartite::{
    complement_bipartite, max_clique_cobipartite, max_matching, CobipartiteInstance,
};
use udg_clique::convex_randomized::{
    max_clique_convex_traced, threshold, Branch, RandomizedConfig,
};
use udg_clique::convex_sweep::{max_clique_given_point_traced, SweepStats};
use udg_clique::general::{decide_clique, max_clique_general};
use udg_clique::grid::{CellKey, GridIndex, MAX_NEIGHBORS};
use udg_clique::instances::{gen_bounded_k, gen_convex, gen_uniform, min_unit_gap, UNIT_MARGIN};
use udg_clique::lens::max_clique_lens_baseline;
use udg_clique::oracle::{brute_force_max_clique, max_clique_containing};
use udg_clique::{dist_le_one, is_clique, Point, PointSet};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn report(id: usize, name: &str, o: &Outcome) {
    let status = if o.pass { "PASS" } else { "FAIL" };
    // Written to the raw handle so the line shows even when output is captured.
    let _ = writeln!(
        std::io::stderr().lock(),
        "acceptance {id}: {status} {name}: {}",
        o.detail
    );
}

fn uniform_instances() -> Vec<PointSet> {
    let sides = [1.0, 2.0, 5.0];
    (0..200)
        .map(|i| {
            let n = 5 + (i * 7) % 36;
            gen_uniform(n, sides[i % 3], 1000 + i as u64).unwrap()
        })
        .collect()
}

fn convex_instances() -> Vec<PointSet> {
    let radii = [0.5, 0.6, 0.75, 0.9, 1.2, 2.0];
    (0..100)
        .map(|i| {
            let n = 5 + (i * 11) % 36;
            gen_convex(n, radii[i % radii.len()], 2000 + i as u64).unwrap()
        })
        .collect()
}

fn general_vs_oracle(instances: &[PointSet]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    for ps in instances {
        let exact = brute_force_max_clique(ps).unwrap().size();
        let ok = match max_clique_general(ps) {
            Ok((c, _)) => c.size() == exact && is_clique(ps, &c.indices).unwrap(),
            Err(_) => false,
        };
        mismatches += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < Duration::from_secs(120),
        format!(
            "{mismatches} mismatches over {} instances in {elapsed:.2?}",
            instances.len()
        ),
    )
}

fn lens_vs_oracle(instances: &[PointSet]) -> Outcome {
    let mismatches = instances
        .iter()
        .filter(|ps| {
            let exact = brute_force_max_clique(ps).unwrap().size();
            !matches!(max_clique_lens_baseline(ps), Ok(c) if c.size() == exact && is_clique(ps, &c.indices).unwrap())
        })
        .count();
    outcome(
        mismatches == 0,
        format!("{mismatches} mismatches over {} instances", instances.len()),
    )
}

/// Checks both the anchor guarantee and the sweep instrumentation for every
/// anchor of every instance.
fn convex_sweeps(instances: &[PointSet]) -> (Outcome, Outcome) {
    let mut guarantee_violations = 0;
    let mut anchors_checked = 0;
    let mut invariant_violations = 0;
    let mut worst_ratio: f64 = 0.0;
    let mut sweeps = 0;
    for (idx, ps) in instances.iter().enumerate() {
        let best = brute_force_max_clique(ps).unwrap();
        for p in 0..ps.len() {
            anchors_checked += 1;
            let Ok(r) = max_clique_given_point_traced(ps, p, idx as u64) else {
                guarantee_violations += 1;
                invariant_violations += 1;
                continue;
            };
            let size = r.clique.size();
            let through_p = max_clique_containing(ps, p).unwrap().size();
            let in_best = best.indices.binary_search(&p).is_ok();
            if size < through_p
                || (in_best && size != best.size())
                || !is_clique(ps, &r.clique.indices).unwrap()
            {
                guarantee_violations += 1;
            }
            for stats in [&r.upper, &r.lower] {
                sweeps += 1;
                worst_ratio = worst_ratio.max(stats.total_updates as f64 / stats.n as f64);
                if !invariants_hold(stats) {
                    invariant_violations += 1;
                }
            }
        }
    }
    (
        outcome(
            guarantee_violations == 0,
            format!("{guarantee_violations} violations over {anchors_checked} anchors"),
        ),
        outcome(
            invariant_violations == 0,
            format!(
                "{invariant_violations} violating sweeps of {sweeps}; max updates/n = {worst_ratio:.2}"
            ),
        ),
    )
}

fn invariants_hold(s: &SweepStats) -> bool {
    s.max_su_insertions() <= 1
        && s.max_su_deletions() <= 1
        && s.containment_failures == 0
        && s.clique_failures == 0
        && s.total_updates <= 6 * s.n
}

fn grid_properties() -> Outcome {
    let mut violations = 0;
    let mut checked_pairs = 0usize;
    for i in 0..50u64 {
        let n = 20 + (i as usize * 97) % 481;
        let ps = match i % 3 {
            0 => gen_uniform(n, [1.0, 3.0, 8.0][(i / 3 % 3) as usize], 3000 + i).unwrap(),
            1 => gen_uniform(n, 20.0, 3000 + i).unwrap(),
            _ => gen_bounded_k(n, 6, 2.5, 3000 + i).unwrap(),
        };
        let g = GridIndex::build(&ps);

        // Every id in exactly one bucket, the one of its key.
        let mut seen = vec![0u32; n];
        for (key, bucket) in g.cells() {
            for &id in bucket {
                seen[id] += 1;
                violations += usize::from(CellKey::of(ps.get(id)) != key);
            }
        }
        violations += seen.iter().filter(|&&c| c != 1).count();

        // Neighbors of q lie in P_C for C = key(q).
        let mut neighborhoods = std::collections::HashMap::new();
        for (key, _) in g.cells() {
            neighborhoods.insert(key, g.union_neighborhood(key).unwrap());
        }
        for q in 0..n {
            let pc = &neighborhoods[&CellKey::of(ps.get(q))];
            for r in 0..n {
                if dist_le_one(ps.get(q), ps.get(r)) {
                    checked_pairs += 1;
                    violations += usize::from(pc.binary_search(&r).is_err());
                }
            }
        }

        // Each cell is a neighbor of at most 25 cells.
        let mut reverse = std::collections::HashMap::<CellKey, usize>::new();
        for (key, _) in g.cells() {
            for nb in g.neighbors(key) {
                *reverse.entry(nb).or_default() += 1;
            }
        }
        violations += reverse.values().filter(|&&c| c > MAX_NEIGHBORS).count();
        let total: usize = neighborhoods.values().map(Vec::len).sum();
        violations += usize::from(total > MAX_NEIGHBORS * n);
    }
    outcome(
        violations == 0,
        format!("{violations} violations over 50 instances, {checked_pairs} adjacent pairs"),
    )
}

fn decision_monotonicity(instances: &[PointSet]) -> Outcome {
    let mut violations = 0;
    let mut probes = 0;
    for ps in instances {
        let g = GridIndex::build(ps);
        let (_, trace) = max_clique_general(ps).unwrap();
        for probe in &trace.probes {
            probes += 1;
            if probe.found && probe.k > 1 && !decide_clique(ps, &g, probe.k - 1).unwrap().found() {
                violations += 1;
            }
            // No success may sit above a failure.
            if trace
                .probes
                .iter()
                .any(|o| !o.found && probe.found && o.k <= probe.k)
            {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!("{violations} violations over {probes} probes"),
    )
}

fn scaling() -> Outcome {
    let sizes = [1_000usize, 4_000, 16_000, 64_000];
    let mut medians = Vec::new();
    let mut wrong = 0;
    for &n in &sizes {
        let mut times: Vec<f64> = (0..5u64)
            .map(|seed| {
                let ps = gen_bounded_k(n, 8, 3.0, 4000 + seed).unwrap();
                let start = Instant::now();
                let (c, _) = max_clique_general(&ps).unwrap();
                let t = start.elapsed().as_secs_f64();
                wrong += usize::from(c.size() != 8);
                t
            })
            .collect();
        times.sort_by(f64::total_cmp);
        medians.push((n as f64, times[2]));
    }
    let slope = loglog_slope(&medians);
    let largest = medians.last().unwrap().1;
    let pretty: Vec<String> = medians
        .iter()
        .map(|(n, t)| format!("{n}:{:.1}ms", t * 1e3))
        .collect();
    outcome(
        slope <= 1.2 && largest < 30.0 && wrong == 0,
        format!(
            "slope {slope:.3}, medians [{}], {wrong} wrong sizes",
            pretty.join(", ")
        ),
    )
}

fn randomized_convex() -> Outcome {
    let mut matches = 0;
    let mut invalid = 0;
    let mut forced = 0;
    for i in 0..100u64 {
        let n = 10 + (i as usize * 13) % 51;
        let radius = 0.45 + 0.05 * (i % 10) as f64;
        let ps = gen_convex(n, radius, 5000 + i).unwrap();
        let exact = brute_force_max_clique(&ps).unwrap().size();
        let mut cfg = RandomizedConfig {
            c: 3.0,
            seed: 6000 + i,
            threshold_override: None,
        };
        if exact < threshold(n) {
            cfg.threshold_override = Some(exact);
            forced += 1;
        }
        match max_clique_convex_traced(&ps, &cfg) {
            Ok(r) => {
                let valid = is_clique(&ps, &r.clique.indices).unwrap()
                    && matches!(r.branch, Branch::Sampled { .. });
                invalid += usize::from(!valid);
                matches += usize::from(valid && r.clique.size() == exact);
            }
            Err(_) => invalid += 1,
        }
    }
    outcome(
        matches >= 95 && invalid == 0,
        format!("{matches}/100 match the oracle, {invalid} invalid, {forced} forced via override"),
    )
}

fn disk_sample(rng: &mut ChaCha8Rng, center: Point, count: usize) -> Vec<Point> {
    (0..count)
        .map(|_| loop {
            let (x, y) = (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            if x * x + y * y <= 0.25 {
                break Point::new(center.x + x, center.y + y);
            }
        })
        .collect()
}

fn koenig_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7000);
    let mut violations = 0;
    let mut done = 0;
    while done < 500 {
        let (a, b) = (rng.gen_range(1..=15), rng.gen_range(1..=15));
        let offset = Point::new(rng.gen_range(0.0..1.6), rng.gen_range(-0.8..0.8));
        let mut pts = disk_sample(&mut rng, Point::new(0.0, 0.0), a);
        pts.extend(disk_sample(&mut rng, offset, b));
        let ps = PointSet::new(pts);
        if min_unit_gap(&ps).is_some_and(|g| g < UNIT_MARGIN) || ps.validate().is_err() {
            continue;
        }
        done += 1;
        let side_a: Vec<usize> = (0..a).collect();
        let side_b: Vec<usize> = (a..a + b).collect();
        let inst = CobipartiteInstance::new(&ps, &side_a, &side_b);
        let matching = max_matching(&complement_bipartite(&inst)).size;
        let ok = match max_clique_cobipartite(&inst) {
            Ok(c) => {
                c.size() == a + b - matching
                    && c.size() == brute_force_max_clique(&ps).unwrap().size()
                    && is_clique(&ps, &c.indices).unwrap()
            }
            Err(_) => false,
        };
        violations += usize::from(!ok);
    }
    outcome(
        violations == 0,
        format!("{violations} violations over {done} instances"),
    )
}

#[test]
fn acceptance_criteria() {
    let uniform = uniform_instances();
    let convex = convex_instances();
    let mut results = Vec::new();

    let mut record = |id: usize, name: &str, o: Outcome| {
        report(id, name, &o);
        results.push((id, o.pass));
    };
    record(
        1,
        "general solver matches oracle",
        general_vs_oracle(&uniform),
    );
    record(2, "lens baseline matches oracle", lens_vs_oracle(&uniform));
    let (guarantee, invariants) = convex_sweeps(&convex);
    record(3, "anchored sweep guarantee", guarantee);
    record(4, "sweep update and clique invariants", invariants);
    record(5, "grid properties", grid_properties());
    record(6, "decision monotonicity", decision_monotonicity(&uniform));
    record(7, "bounded-clique scaling", scaling());
    record(8, "randomized convex solver", randomized_convex());
    record(9, "cobipartite identity", koenig_identity());

    let failed: Vec<usize> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
