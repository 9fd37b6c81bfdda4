//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.
//!
//! Criteria 8 and 9 need the Brazil air-traffic network (131 nodes). Point
//! `EPSBE_BRAZIL_EDGELIST` at the edge list, or place it at
//! `data/brazil-airports.edgelist` in the workspace root. Without it those
//! criteria report BLOCKED; set `EPSBE_REQUIRE_DATASETS=1` to turn BLOCKED
//! into a failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use epsbe_core::eval::{eigenvector_centrality, pca_2d, repeated_regression, RegressionConfig};
use epsbe_core::io::read_edge_list_file;
use epsbe_core::oracle::{coarsest_equitable_partition_naive, validate_eps_be_naive};
use epsbe_core::{
    accumulate_weights, build_embedding, check_eps_be, fixtures, iterative_refine, refine,
    split_block, EpsSchedule, Graph, Partition,
};

enum Outcome {
    Pass(String),
    Fail(String),
    Blocked(String),
}

type Check = fn() -> Outcome;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn outcome(result: Result<String, String>) -> Outcome {
    match result {
        Ok(detail) => Outcome::Pass(detail),
        Err(detail) => Outcome::Fail(detail),
    }
}

fn labelled(g: &Graph, blocks: &[&[&str]]) -> Partition {
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|l| g.node_id(l).unwrap()).collect())
        .collect();
    Partition::from_blocks(g.num_nodes(), blocks).unwrap()
}

fn single(g: &Graph) -> Partition {
    Partition::single_block(g.num_nodes())
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn running_example_exactness() -> Outcome {
    outcome((|| {
        let g = fixtures::running_example();
        let start = Instant::now();
        let p0 = refine(&g, &single(&g), 0).map_err(|e| e.to_string())?;
        let p1 = refine(&g, &single(&g), 1).map_err(|e| e.to_string())?;
        let p3 = refine(&g, &single(&g), 3).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();

        let left = labelled(&g, &[&["1"], &["2"], &["3", "4"], &["5", "6", "7"], &["8", "9", "10", "11"]]);
        let right = labelled(&g, &[&["1"], &["2", "3", "4"], &["5", "6", "7", "8", "9", "10", "11"]]);
        ensure(p0 == left, || format!("eps 0 gave {:?}", p0.blocks()))?;
        ensure(p1 == right, || format!("eps 1 gave {:?}", p1.blocks()))?;
        ensure(p3.num_blocks() == 1, || format!("eps 3 gave {} blocks", p3.num_blocks()))?;

        let rows_left: [(&[&str], [u32; 5]); 5] = [
            (&["1"], [0, 1, 2, 0, 0]),
            (&["2"], [1, 0, 0, 3, 0]),
            (&["3", "4"], [1, 0, 0, 0, 2]),
            (&["5", "6", "7"], [0, 1, 0, 0, 0]),
            (&["8", "9", "10", "11"], [0, 0, 1, 0, 0]),
        ];
        let e0 = build_embedding(&g, &p0).unwrap();
        for (nodes, row) in rows_left {
            for l in nodes {
                let got = e0.row(g.node_id(l).unwrap());
                ensure(got == row, || format!("eps 0 row of node {l}: {got:?}"))?;
            }
        }
        let rows_right: [(&[&str], [u32; 3]); 4] = [
            (&["1"], [0, 3, 0]),
            (&["2"], [1, 0, 3]),
            (&["3", "4"], [1, 0, 2]),
            (&["5", "6", "7", "8", "9", "10", "11"], [0, 1, 0]),
        ];
        let e1 = build_embedding(&g, &p1).unwrap();
        for (nodes, row) in rows_right {
            for l in nodes {
                let got = e1.row(g.node_id(l).unwrap());
                ensure(got == row, || format!("eps 1 row of node {l}: {got:?}"))?;
            }
        }
        Ok(format!("5 / 3 / 1 blocks, rows bit-exact, {:.3} ms", ms(elapsed)))
    })())
}

fn splitting_trace() -> Outcome {
    outcome((|| {
        let g = fixtures::running_example();
        let ids = |ls: &[&str]| ls.iter().map(|l| g.node_id(l).unwrap()).collect::<Vec<_>>();
        let all: Vec<usize> = (0..g.num_nodes()).collect();

        let w = accumulate_weights(&g, &all);
        let expect_a = [("5", 1), ("11", 1), ("1", 3), ("3", 3), ("4", 3), ("2", 4)];
        for (l, x) in expect_a {
            ensure(w.weight(g.node_id(l).unwrap()) == x, || format!("panel A weight of {l}"))?;
        }
        let groups = split_block(&all, &w, 1);
        ensure(
            groups == vec![ids(&["5", "6", "7", "8", "9", "10", "11"]), ids(&["1", "3", "4", "2"])],
            || format!("panel A split {groups:?}"),
        )?;

        let w = accumulate_weights(&g, &ids(&["5", "6", "7", "8", "9", "10", "11"]));
        for (l, x) in [("1", 0), ("3", 2), ("4", 2), ("2", 3)] {
            ensure(w.weight(g.node_id(l).unwrap()) == x, || format!("panel B weight of {l}"))?;
        }
        let groups = split_block(&ids(&["1", "2", "3", "4"]), &w, 1);
        ensure(groups == vec![ids(&["1"]), ids(&["3", "4", "2"])], || {
            format!("panel B split {groups:?}")
        })?;
        Ok("panel A {5..11}|{1,3,4,2}, panel B {1}|{3,4,2}".into())
    })())
}

fn iterative_divergence() -> Outcome {
    outcome((|| {
        let g = fixtures::two_cliques();
        let panel_a = refine(&g, &single(&g), 0).unwrap();
        ensure(panel_a == fixtures::two_cliques_exact_partition(), || {
            format!("eps 0 gave {:?}", panel_a.blocks())
        })?;
        let schedule = EpsSchedule::new(0, 1, 1).unwrap();
        let panel_b = iterative_refine(&g, &single(&g), &schedule).unwrap();
        ensure(panel_b == fixtures::two_cliques_iterative_partition(), || {
            format!("iterative gave {:?}", panel_b.blocks())
        })?;
        let panel_c = refine(&g, &single(&g), 1).unwrap();
        ensure(panel_c == fixtures::two_cliques_one_shot_partition(), || {
            format!("one-shot gave {:?}", panel_c.blocks())
        })?;
        let together = ["5", "6", "8", "9"]
            .iter()
            .map(|l| panel_c.block_of(g.node_id(l).unwrap()))
            .collect::<Vec<_>>();
        ensure(together.windows(2).all(|w| w[0] == w[1]), || "one-shot splits {5,6,8,9}".into())?;
        ensure(panel_b != panel_c, || "iterative and one-shot agree".into())?;
        Ok(format!(
            "iterative {} blocks with {{8,9,10}} together, one-shot {} blocks with {{5,6,8,9}} together",
            panel_b.num_blocks(),
            panel_c.num_blocks()
        ))
    })())
}

fn barbell_roles(k: usize, path_len: usize) -> Partition {
    let second = k + path_len;
    let n = 2 * k + path_len;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    blocks.push((0..k - 1).chain(second + 1..n).collect());
    blocks.push(vec![k - 1, second]);
    for i in 0..path_len.div_ceil(2) {
        let (a, b) = (k + i, k + path_len - 1 - i);
        blocks.push(if a == b { vec![a] } else { vec![a, b] });
    }
    Partition::from_blocks(n, blocks).unwrap()
}

fn barbell() -> Outcome {
    outcome((|| {
        for k in [5, 6, 7] {
            for path_len in [4, 5, 6] {
                let g = fixtures::barbell(k, path_len);
                let p = refine(&g, &single(&g), 0).unwrap();
                let expected = barbell_roles(k, path_len);
                ensure(p == expected, || format!("k={k} L={path_len}: {:?}", p.blocks()))?;
                let e = build_embedding(&g, &p).unwrap();
                let pca = pca_2d(&e).map_err(|e| e.to_string())?;
                for i in 0..g.num_nodes() {
                    for j in 0..g.num_nodes() {
                        let same_role = p.block_of(i) == p.block_of(j);
                        let same_point = pca.coords[i] == pca.coords[j];
                        ensure(same_role == same_point, || {
                            format!("k={k} L={path_len}: nodes {i},{j} role {same_role} point {same_point}")
                        })?;
                    }
                }
            }
        }
        Ok("9 barbells: roles exact, one PCA point per role".into())
    })())
}

fn random_suite() -> Vec<(String, Graph)> {
    let mut graphs = Vec::new();
    for &p in &[0.1, 0.3, 0.5] {
        for seed in 0..40u64 {
            let n = 5 + (seed as usize * 7) % 46;
            graphs.push((format!("gnp n={n} p={p} seed={seed}"), fixtures::gnp(n, p, seed)));
        }
    }
    graphs
}

fn fixture_suite() -> Vec<(String, Graph)> {
    let mut graphs = vec![
        ("running example".to_owned(), fixtures::running_example()),
        ("two cliques".to_owned(), fixtures::two_cliques()),
        ("star".to_owned(), fixtures::star(6)),
        ("cycle".to_owned(), fixtures::cycle(9)),
        ("path".to_owned(), fixtures::path(8)),
        ("complete".to_owned(), fixtures::complete(6)),
    ];
    for k in [5, 6, 7] {
        for l in [4, 5, 6] {
            graphs.push((format!("barbell {k}/{l}"), fixtures::barbell(k, l)));
        }
    }
    graphs
}

fn oracle_equivalence() -> Outcome {
    outcome((|| {
        let start = Instant::now();
        let suite: Vec<_> = random_suite().into_iter().chain(fixture_suite()).collect();
        let mut mismatches = Vec::new();
        for (name, g) in &suite {
            let init = single(g);
            if refine(g, &init, 0).unwrap() != coarsest_equitable_partition_naive(g, &init) {
                mismatches.push(name.clone());
            }
        }
        let elapsed = start.elapsed();
        ensure(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
        ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
        Ok(format!("{} graphs, 0 mismatches, {:.2} s", suite.len(), elapsed.as_secs_f64()))
    })())
}

fn tolerance_validity() -> Outcome {
    outcome((|| {
        let suite: Vec<_> = random_suite().into_iter().chain(fixture_suite()).collect();
        let mut checked = 0;
        for (name, g) in &suite {
            for eps in [1, 2, 3] {
                let one_shot = refine(g, &single(g), eps).unwrap();
                let schedule = EpsSchedule::new(0, 1, eps).unwrap();
                let iterated = iterative_refine(g, &single(g), &schedule).unwrap();
                for (kind, p) in [("refine", &one_shot), ("iterative", &iterated)] {
                    let report = check_eps_be(g, p, eps).unwrap();
                    ensure(report.is_empty(), || format!("{name} {kind} eps={eps}: {report:?}"))?;
                    ensure(validate_eps_be_naive(g, p, eps), || {
                        format!("{name} {kind} eps={eps}: naive validator rejects")
                    })?;
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} partitions, 0 violations under both checkers"))
    })())
}

fn centrality_preservation() -> Outcome {
    outcome((|| {
        let mut graphs = vec![fixtures::running_example(), fixtures::two_cliques()];
        for k in [5, 6, 7] {
            for l in [4, 5, 6] {
                graphs.push(fixtures::barbell(k, l));
            }
        }
        for seed in 0..20u64 {
            let n = 20 + (seed as usize * 37) % 181;
            graphs.push(fixtures::connected_gnp(n, 2.0 / n as f64, seed));
        }
        let mut worst: f64 = 0.0;
        let mut nontrivial = 0;
        for g in &graphs {
            let out = eigenvector_centrality(g, 1e-13, 1_000_000).unwrap();
            ensure(out.is_reliable(), || "power iteration did not converge".into())?;
            let x = &out.centrality.values;
            let p = refine(g, &single(g), 0).unwrap();
            for block in p.blocks() {
                if block.len() > 1 {
                    nontrivial += 1;
                }
                for &v in block {
                    worst = worst.max((x[v] - x[block[0]]).abs());
                }
            }
        }
        ensure(worst <= 1e-8, || format!("max within-block spread {worst:e}"))?;
        Ok(format!(
            "{} graphs, {nontrivial} multi-node blocks, max spread {worst:.1e}",
            graphs.len()
        ))
    })())
}

fn brazil_path() -> Option<PathBuf> {
    if let Ok(p) = std::env::var("EPSBE_BRAZIL_EDGELIST") {
        return Some(PathBuf::from(p));
    }
    let default = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/brazil-airports.edgelist");
    default.exists().then_some(default)
}

fn brazil_embedding() -> Result<(Graph, Partition, Duration), Outcome> {
    let Some(path) = brazil_path() else {
        return Err(Outcome::Blocked(
            "Brazil airport edge list not found (set EPSBE_BRAZIL_EDGELIST)".into(),
        ));
    };
    let g = read_edge_list_file(&path).map_err(|e| Outcome::Fail(format!("{}: {e}", path.display())))?;
    let schedule = EpsSchedule::new(0, 1, 3).unwrap();
    let start = Instant::now();
    let p = iterative_refine(&g, &single(&g), &schedule).map_err(|e| Outcome::Fail(e.to_string()))?;
    Ok((g, p, start.elapsed()))
}

fn brazil_dimension() -> Outcome {
    let (g, p, elapsed) = match brazil_embedding() {
        Ok(x) => x,
        Err(o) => return o,
    };
    outcome((|| {
        let d = p.num_blocks();
        let lo = 38.0 * 0.9;
        let hi = 38.0 * 1.1;
        ensure((lo..=hi).contains(&(d as f64)), || format!("d = {d}, outside [{lo}, {hi}]"))?;
        ensure(p.reduction_ratio() >= 0.70, || format!("reduction {:.3}", p.reduction_ratio()))?;
        ensure(elapsed < Duration::from_secs(5), || format!("reduce took {elapsed:?}"))?;
        Ok(format!(
            "n = {}, d = {d}, reduction {:.1}%, {:.2} ms",
            g.num_nodes(),
            100.0 * p.reduction_ratio(),
            ms(elapsed)
        ))
    })())
}

fn brazil_regression() -> Outcome {
    let (g, p, _) = match brazil_embedding() {
        Ok(x) => x,
        Err(o) => return o,
    };
    outcome((|| {
        let e = build_embedding(&g, &p).unwrap();
        let target = eigenvector_centrality(&g, 1e-13, 1_000_000).unwrap();
        ensure(target.is_reliable(), || "eigenvector centrality unreliable".into())?;
        let runs = repeated_regression(&e, &target.centrality.values, &RegressionConfig::default(), 50)
            .map_err(|e| e.to_string())?;
        let mean = runs.iter().map(|r| r.nmse).sum::<f64>() / runs.len() as f64;
        let reported = 8.47e-5;
        ensure((reported / 10.0..=reported * 10.0).contains(&mean), || {
            format!("mean nmse {mean:.3e}, reported {reported:.2e}")
        })?;
        Ok(format!("mean nmse over 50 splits {mean:.3e} (reported {reported:.2e})"))
    })())
}

fn brandes_vs_enumeration() -> Outcome {
    outcome((|| {
        let mut worst: f64 = 0.0;
        for seed in 0..200u64 {
            let n = 1 + (seed as usize % 12);
            let p = [0.15, 0.3, 0.5, 0.8][seed as usize % 4];
            let g = fixtures::gnp(n, p, 10_000 + seed);
            let fast = epsbe_core::eval::betweenness_raw(&g);
            let slow = common::betweenness_by_enumeration(&g);
            for v in 0..n {
                worst = worst.max((fast[v] - slow[v]).abs());
            }
        }
        ensure(worst < 1e-9, || format!("max deviation {worst:e}"))?;
        Ok(format!("200 graphs with n <= 12, max deviation {worst:.1e}"))
    })())
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("AC1 running example exactness", running_example_exactness),
        ("AC2 splitting trace", splitting_trace),
        ("AC3 iterative vs one-shot divergence", iterative_divergence),
        ("AC4 barbell roles and PCA", barbell),
        ("AC5 oracle equivalence at eps 0", oracle_equivalence),
        ("AC6 tolerance validity eps 1..3", tolerance_validity),
        ("AC7 eigenvector centrality preservation", centrality_preservation),
        ("AC8 Brazil dimension, reduction, time", brazil_dimension),
        ("AC9 Brazil regression order of magnitude", brazil_regression),
        ("AC10 Brandes vs path enumeration", brandes_vs_enumeration),
    ];
    let require_data = std::env::var("EPSBE_REQUIRE_DATASETS").is_ok_and(|v| v == "1");

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Outcome::Fail(format!("panicked: {msg}"))
            });
        match result {
            Outcome::Pass(detail) => println!("[PASS]    {name}: {detail}"),
            Outcome::Fail(detail) => {
                failed += 1;
                println!("[FAIL]    {name}: {detail}");
            }
            Outcome::Blocked(detail) => {
                if require_data {
                    failed += 1;
                }
                println!("[BLOCKED] {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
