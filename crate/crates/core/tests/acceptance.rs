//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use rbminor::constructions::{
    bipartite_tk_min_order, build_gh, random_coloring, random_graph, random_minimized_model,
    topological_lb_construction, Seed,
};
use rbminor::cycles::{for_each_cycle, MAX_CYCLE_VERTICES};
use rbminor::extract::connector::{connect_pair, Connection};
use rbminor::extract::pipeline::bipartite_minor_pipeline;
use rbminor::extract::topological::{rb_topological_clique, vertex_budget};
use rbminor::graph::{is_bipartite, Color, ColoredGraph, Edge, Graph, Side};
use rbminor::minor::{build_auxiliary, lift_odd_circuit, project_odd_cycle, MinorModel};
use rbminor::oracles::{
    hadwiger_oracle, max_bipartite_hadwiger, max_bipartite_hadwiger_gh, tcl_oracle, HADWIGER_LIMIT,
};
use rbminor::rb::{rb_certify, rb_extract_half, RbBipartition, ROddCertificate};
use std::ops::ControlFlow;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

/// 1000 coloured graphs: `n` cycles through 3..=12 and `p` through
/// {0.3, 0.5, 0.8}. Odd trials colour uniformly at random; even trials
/// colour by a random planted bipartition, and every fourth of those has
/// one edge flipped.
fn corpus() -> Vec<ColoredGraph> {
    let ps = [0.3, 0.5, 0.8];
    (0..1000u64)
        .map(|i| {
            let seed = Seed(0xC0FFEE).derive(i);
            let n = 3 + (i as usize / 3) % 10;
            let g = random_graph(n, ps[i as usize % 3], seed);
            if i % 2 == 1 {
                let red = seed.rng(1).gen_range(0.1..0.9);
                return random_coloring(&g, red, seed);
            }
            let mut rng = seed.rng(2);
            let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let flip = (i % 8 == 0 && g.edge_count() > 0).then(|| rng.gen_range(0..g.edge_count()));
            let edges: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| {
                    let across = side[u] != side[v];
                    let red = across != (flip == Some(k));
                    (u, v, if red { Color::Red } else { Color::Blue })
                })
                .collect();
            ColoredGraph::new(n, edges).unwrap()
        })
        .collect()
}

fn has_r_odd_cycle(cg: &ColoredGraph) -> bool {
    for_each_cycle(cg.graph(), MAX_CYCLE_VERTICES, |c| {
        let k = c.len();
        let reds = (0..k).filter(|&i| cg.color(c[i], c[(i + 1) % k]) == Some(Color::Red)).count();
        if reds % 2 == 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .unwrap()
    .is_some()
}

fn certify_corpus(corpus: &[ColoredGraph]) -> Outcome {
    let start = Instant::now();
    let mut balanced = 0;
    for (i, cg) in corpus.iter().enumerate() {
        let brute = !has_r_odd_cycle(cg);
        match rb_certify(cg) {
            Ok(p) => {
                ensure(brute, || format!("graph {i}: partition returned but an R-odd cycle exists"))?;
                ensure(p.is_valid_for(cg), || format!("graph {i}: invalid partition"))?;
                balanced += 1;
            }
            Err(c) => {
                ensure(!brute, || format!("graph {i}: certificate returned but no R-odd cycle exists"))?;
                ensure(c.is_valid_for(cg), || format!("graph {i}: invalid R-odd walk"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{} graphs, {balanced} RB-bipartite, all agree with cycle enumeration, {:?}",
        corpus.len(),
        start.elapsed()
    ))
}

fn extract_half_corpus(corpus: &[ColoredGraph]) -> Outcome {
    for (i, cg) in corpus.iter().enumerate() {
        let order: Vec<_> = (0..cg.vertex_count()).collect();
        let half = rb_extract_half(cg, &order).map_err(|e| e.to_string())?;
        let e = cg.edge_count();
        let kept = half.subgraph.edge_count();
        ensure(2 * kept >= e, || format!("graph {i}: kept {kept} of {e}"))?;
        ensure(rb_certify(&half.subgraph).is_ok(), || format!("graph {i}: subgraph not RB-bipartite"))?;
        ensure(half.partition.is_valid_for(&half.subgraph), || format!("graph {i}: partition invalid"))?;
        ensure(
            half.subgraph.colored_edges().all(|(u, v, c)| cg.color(u, v) == Some(c)),
            || format!("graph {i}: subgraph is not a subgraph"),
        )?;
        let side = |v| half.partition.side(v).unwrap();
        let d: i64 = cg
            .colored_edges()
            .filter(|&(u, v, _)| side(u) != side(v))
            .map(|(_, _, c)| if c.is_red() { 1 } else { -1 })
            .sum();
        ensure(d == half.balance, || format!("graph {i}: reported balance {} but d = {d}", half.balance))?;
        let (er, eb) = (cg.red_count() as i64, cg.blue_count() as i64);
        ensure(2 * d >= er - eb, || format!("graph {i}: 2d = {} < e_R - e_B = {}", 2 * d, er - eb))?;
    }
    Ok(format!("{} graphs, every subgraph certified with at least half the edges", corpus.len()))
}

fn lift_correspondence() -> Outcome {
    let (mut bip, mut odd) = (0, 0);
    let mut trial = 0u64;
    let mut done = 0;
    while done < 500 {
        let seed = Seed(0x5EED).derive(trial);
        trial += 1;
        let mut rng = seed.rng(1);
        let k = rng.gen_range(2..=5);
        let model = random_minimized_model(k, 3, seed);
        if model.host().vertex_count() > 8 {
            continue;
        }
        done += 1;
        let aux = build_auxiliary(&model).map_err(|e| e.to_string())?;
        let pairs: Vec<Edge> = aux.colored.graph().edges().to_vec();
        for _ in 0..4 {
            let sub: Vec<Edge> = pairs.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            let restricted = aux.restrict(&sub).map_err(|e| e.to_string())?;
            let lifted = rbminor::minor::lift_subgraph(&model, &aux, &sub).map_err(|e| e.to_string())?;
            match (rb_certify(&restricted), is_bipartite(&lifted)) {
                (Ok(_), Ok(_)) => bip += 1,
                (Err(cert), Err(cycle)) => {
                    odd += 1;
                    let walk = lift_odd_circuit(&aux, &cert.walk).map_err(|e| e.to_string())?;
                    ensure(walk.len() % 2 == 1, || format!("trial {trial}: lifted circuit has even length"))?;
                    ensure(
                        (0..walk.len()).all(|i| lifted.has_edge(walk[i], walk[(i + 1) % walk.len()])),
                        || format!("trial {trial}: lifted circuit leaves the lift"),
                    )?;
                    let proj = project_odd_cycle(&model, &aux, &sub, &cycle.cycle).map_err(|e| e.to_string())?;
                    let reds = ROddCertificate::count_red(&restricted, &proj);
                    ensure(reds.is_some_and(|r| r % 2 == 1), || format!("trial {trial}: projection not R-odd"))?;
                }
                (a, b) => {
                    return Err(format!(
                        "trial {trial}: auxiliary RB-bipartite = {}, lift bipartite = {}",
                        a.is_ok(),
                        b.is_ok()
                    ))
                }
            }
        }
    }
    Ok(format!("{done} models, {bip} bipartite and {odd} odd subsets, all agree"))
}

fn gh_construction() -> Outcome {
    for s in 0..200u64 {
        let seed = Seed(0x6E).derive(s);
        let mut rng = seed.rng(1);
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.0..1.0);
        let h = random_graph(n, p, seed);
        let gh = build_gh(&h);
        let value = hadwiger_oracle(&gh.graph).map_err(|e| e.to_string())?;
        ensure(value == n, || format!("seed {s}: h(G(H)) = {value} for |V(H)| = {n}"))?;
    }
    let k4 = build_gh(&Graph::complete(4));
    let bip = max_bipartite_hadwiger(&k4.graph).map_err(|e| e.to_string())?.value;
    ensure(bip == 3, || format!("largest bipartite h of G(K_4) is {bip}"))?;
    Ok("200 seeds exact; G(K_4) has bipartite Hadwiger number 3 < 4".into())
}

fn counting_bound() -> Outcome {
    use rbminor::bound::{bce_log_failure_bound_precise, bce_probability_bound};
    let start = Instant::now();
    let ns = [1u64 << 16, 1 << 20, 1 << 24];
    let mut values = Vec::new();
    for &n in &ns {
        let fast = bce_probability_bound(n).map_err(|e| e.to_string())?.log_failure_bound;
        let precise = bce_log_failure_bound_precise(n).map_err(|e| e.to_string())?;
        let rel = ((fast - precise) / precise).abs();
        ensure(rel < 1e-9, || format!("n = {n}: relative error {rel:e}"))?;
        values.push(fast);
    }
    ensure(values[0] < 0.0, || format!("ln bound at 2^16 is {}", values[0]))?;
    ensure(values.windows(2).all(|w| w[1] < w[0]), || format!("not decreasing: {values:?}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    let shown: Vec<String> = values.iter().map(|v| format!("{v:.4e}")).collect();
    Ok(format!("ln bounds [{}], {:?}", shown.join(", "), start.elapsed()))
}

fn pipeline_validity() -> Outcome {
    let mut count = 0;
    let mut oracle_checked = 0;
    let mut total_m = 0;
    for s in 0..50u64 {
        let seed = Seed(0x919E).derive(s);
        let n = 4 + (s as usize % 7);
        let h = random_graph(n, seed.rng(1).gen_range(0.2..0.8), seed);
        let gh = build_gh(&h);
        let report = bipartite_minor_pipeline(&gh.graph, &gh.model(), 0.25).map_err(|e| format!("G(H) {s}: {e}"))?;
        let checks = report.checks(&gh.graph);
        ensure(checks.all(), || format!("G(H) {s}: {checks:?}"))?;
        let (best, _) = max_bipartite_hadwiger_gh(&h).map_err(|e| e.to_string())?;
        ensure(report.m_achieved <= best, || format!("G(H) {s}: m = {} > {best}", report.m_achieved))?;
        oracle_checked += 1;
        total_m += report.m_achieved;
        count += 1;
    }
    for s in 0..50usize {
        let n = 4 + s % 9;
        let g = Graph::complete(n);
        let model = MinorModel::singletons(g.clone()).map_err(|e| e.to_string())?;
        let report = bipartite_minor_pipeline(&g, &model, 0.25).map_err(|e| format!("K_{n}: {e}"))?;
        let checks = report.checks(&g);
        ensure(checks.all(), || format!("K_{n}: {checks:?}"))?;
        if n <= HADWIGER_LIMIT {
            let best = max_bipartite_hadwiger(&g).map_err(|e| e.to_string())?.value;
            ensure(report.m_achieved <= best, || format!("K_{n}: m = {} > {best}", report.m_achieved))?;
            oracle_checked += 1;
        }
        total_m += report.m_achieved;
        count += 1;
    }
    Ok(format!(
        "{count} hosts valid, {oracle_checked} within the oracle, mean m = {:.2}",
        total_m as f64 / count as f64
    ))
}

/// Complete joins on `n` vertices with the pair `(0, 1)` Blue and the
/// remaining pairs coloured by successive bits.
fn joins_from_bits(n: usize, bits: u64) -> ColoredGraph {
    let mut k = 0;
    ColoredGraph::from_graph(Graph::complete(n), |u, v| {
        if (u, v) == (0, 1) {
            return Color::Blue;
        }
        let c = if bits >> k & 1 == 1 { Color::Red } else { Color::Blue };
        k += 1;
        c
    })
}

fn check_connection(joins: &ColoredGraph, partition: &RbBipartition, pool: &[usize]) -> Result<bool, String> {
    match connect_pair(partition, 0, 1, pool, joins).map_err(|e| e.to_string())? {
        Connection::Path { path, sides } => {
            ensure(path.len() <= 4 && path.len() >= 3, || format!("path {path:?}"))?;
            ensure(path[0] == 0 && path[path.len() - 1] == 1, || format!("path {path:?} has wrong ends"))?;
            let inner = &path[1..path.len() - 1];
            ensure(inner.iter().all(|v| pool.contains(v)), || format!("path {path:?} leaves the pool"))?;
            ensure(sides.len() == inner.len(), || "side count".into())?;
            let reds = path.windows(2).filter(|w| joins.color(w[0], w[1]) == Some(Color::Red)).count();
            ensure((reds % 2 == 1) == partition.needs_r_odd(0, 1), || format!("path {path:?} has wrong parity"))?;
            let mut p = partition.clone();
            for (&v, &s) in inner.iter().zip(&sides) {
                p.set(v, s);
            }
            ensure(
                path.windows(2).all(|w| p.allows(w[0], w[1], joins.color(w[0], w[1]).unwrap())),
                || format!("path {path:?} breaks the partition"),
            )?;
            Ok(false)
        }
        Connection::Clique { vertices, partition: local } => {
            ensure(vertices == pool, || "clique is not the pool".into())?;
            for (i, &a) in pool.iter().enumerate() {
                for &b in &pool[i + 1..] {
                    let c = joins.color(a, b).unwrap();
                    ensure(local.allows(a, b, c), || format!("clique pair ({a}, {b}) breaks the partition"))?;
                }
            }
            Ok(true)
        }
    }
}

fn connector_totality() -> Outcome {
    let mut cliques = 0;
    let mut runs = 0;
    for sides in [[Side::X, Side::X], [Side::X, Side::Y]] {
        let partition = RbBipartition::total(sides.to_vec());
        let pool = [2, 3, 4, 5];
        for bits in 0..1u64 << 14 {
            cliques += check_connection(&joins_from_bits(6, bits), &partition, &pool)? as usize;
            runs += 1;
        }
        let pool = [2, 3, 4, 5, 6];
        let mut rng = Seed(0x7E).rng(sides[1] as u64);
        for _ in 0..4096 {
            let bits = rng.gen_range(0..1u64 << 20);
            cliques += check_connection(&joins_from_bits(7, bits), &partition, &pool)? as usize;
            runs += 1;
        }
    }
    Ok(format!("{runs} colourings, {cliques} clique witnesses, every other outcome a valid path"))
}

fn topological_builder() -> Outcome {
    let start = Instant::now();
    let mut max_used = [0usize; 3];
    for (k, t) in [3usize, 4, 5].into_iter().enumerate() {
        let n = (t + 3) * (t + 2) / 2;
        for s in 0..200u64 {
            let seed = Seed(0x7C).derive((t as u64) << 16 | s);
            let red = seed.rng(1).gen_range(0.0..=1.0);
            let cg = random_coloring(&Graph::complete(n), red, seed);
            let model = rb_topological_clique(&cg, t).map_err(|e| format!("t = {t}, run {s}: {e}"))?;
            model.validate(&cg, t).map_err(|e| format!("t = {t}, run {s}: {e}"))?;
            let used = model.vertices().len();
            ensure(used <= vertex_budget(t), || format!("t = {t}, run {s}: {used} vertices"))?;
            max_used[k] = max_used[k].max(used);
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("600 runs valid, most vertices used {max_used:?}, {:?}", start.elapsed()))
}

fn tk_table() -> Outcome {
    for t in (2..=12u64).step_by(2) {
        let got = bipartite_tk_min_order(t).map_err(|e| e.to_string())?.min_order;
        ensure(got == t * t / 4 + t / 2, || format!("t = {t}: {got}"))?;
    }
    let tcl = |g: &Graph| tcl_oracle(g).map_err(|e| e.to_string());
    ensure(tcl(&Graph::complete_bipartite(2, 2))? == 3, || "tcl(K_2,2)".into())?;
    ensure(tcl(&Graph::complete_bipartite(3, 3))? == 4, || "tcl(K_3,3)".into())?;
    for n in 1..=6 {
        ensure(tcl(&Graph::complete(n))? == n, || format!("tcl(K_{n})"))?;
    }
    for t in [3, 4] {
        let lb = topological_lb_construction(t).map_err(|e| e.to_string())?;
        ensure(lb.holds(), || format!("t = {t}: {lb:?}"))?;
    }
    Ok("table exact for even t <= 12; tcl facts hold; no bipartite TK_3 in K_3, no TK_4 in K_4".into())
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("rbminor-acceptance-{}-{name}", std::process::id()))
}

fn cli_payload(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rbminor"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let line = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let line = line.trim_end();
    let at = line.find("\"payload\":").ok_or_else(|| format!("{args:?}: no payload in {line}"))?;
    let payload = &line[at + 10..line.len() - 1];
    ensure(!line.starts_with("{\"status\":\"error\""), || format!("{args:?}: {payload}"))?;
    Ok(payload.to_string())
}

fn cli_text(args: &[&str]) -> Result<String, String> {
    let payload: serde_json::Value = serde_json::from_str(&cli_payload(args)?).map_err(|e| e.to_string())?;
    Ok(payload["text"].as_str().unwrap_or_default().to_string())
}

fn cli_determinism() -> Outcome {
    let colored = temp_path("k15.txt");
    let plain = temp_path("h7.txt");
    let complete = temp_path("k10.txt");
    std::fs::write(&colored, cli_text(&["random", "--n", "15", "--p", "1", "--seed", "11", "--red", "0.5"])?)
        .map_err(|e| e.to_string())?;
    std::fs::write(&plain, cli_text(&["random", "--n", "7", "--p", "0.5", "--seed", "5"])?).map_err(|e| e.to_string())?;
    std::fs::write(&complete, cli_text(&["random", "--n", "10", "--p", "1", "--seed", "0"])?)
        .map_err(|e| e.to_string())?;
    let (c, p, k) = (
        colored.to_str().unwrap(),
        plain.to_str().unwrap(),
        complete.to_str().unwrap(),
    );
    let invocations: Vec<Vec<&str>> = vec![
        vec!["random", "--n", "12", "--p", "0.5", "--seed", "42", "--red", "0.3"],
        vec!["certify", c],
        vec!["extract-half", c],
        vec!["tk-build", c, "--t", "3"],
        vec!["tk-bound", "--t", "8"],
        vec!["gh", p],
        vec!["oracle", "hadwiger", p],
        vec!["oracle", "tcl", p],
        vec!["pipeline", k, "--epsilon", "0.25"],
        vec!["bound", "--n", "65536"],
        vec!["experiment", "--n", "6", "--trials", "10", "--seed", "42"],
    ];
    for args in &invocations {
        let first = cli_payload(args)?;
        for _ in 0..2 {
            let again = cli_payload(args)?;
            ensure(again == first, || format!("{args:?}: payload changed between runs"))?;
        }
    }
    for f in [&colored, &plain, &complete] {
        let _ = std::fs::remove_file(f);
    }
    Ok(format!("{} invocations byte-identical over 3 runs", invocations.len()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("certification agrees with cycle enumeration", Box::new(|| certify_corpus(&corpus))),
        ("half extraction bound", Box::new(|| extract_half_corpus(&corpus))),
        ("lift and projection correspondence", Box::new(lift_correspondence)),
        ("subdivided clique construction", Box::new(gh_construction)),
        ("counting bound", Box::new(counting_bound)),
        ("pipeline validity", Box::new(pipeline_validity)),
        ("connector totality", Box::new(connector_totality)),
        ("topological clique builder", Box::new(topological_builder)),
        ("bipartite TK_t order", Box::new(tk_table)),
        ("CLI determinism", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
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
