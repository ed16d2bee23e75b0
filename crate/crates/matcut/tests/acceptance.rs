//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//! Every threshold below is fixed here and nowhere else.

use matcut::cyclehit::{ifvs_solve_with_stats, ioct_solve_with_stats};
use matcut::ffmatrix::{random_matrix, FFMatrix, FieldPrime, DEFAULT_PRIME};
use matcut::graph::{is_cut, is_minimal_cut, min_edge_cut, min_vertex_cut, CutSet, MultiDiGraph};
use matcut::label::{Label, LabelSet};
use matcut::matroid::{binom, for_each_subset, LinearMatroid, Matroid, OracleMatroid};
use matcut::mwc::{enumerate_guesses, find_strong_separator, imwcut_with, is_compatible, MwcOptions};
use matcut::oracle::{
    all_placements, brute_family, brute_min_solution, check_matroid_axioms, gen_gpq, is_feasible, query_count_probe,
    random_instance, ExhaustiveCuts, Instance, ProblemKind, SizeParams,
};
use matcut::repfam::{convolve, rep_bound, rep_family, verify_rep, SetFamily};
use matcut::stcut::{
    count_valid_colorings, dvc_run, phase1, solve_min_budget, Augmenter, BipartitionAugmenter, DirectedInstance,
    DvcOptions, DvcStats, GivcOptions, ReachClosedAugmenter,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const GIVC_INSTANCES: usize = 200;
const GIVC_MAX_N: usize = 9;
const GIVC_MAX_M: usize = 16;
const GIVC_MAX_RANK: usize = 4;
const GIVC_TIME_LIMIT: Duration = Duration::from_secs(600);
const AUGMENT_DIGRAPHS: usize = 100;
const AUGMENT_MAX_N: usize = 7;
const AUGMENT_MAX_CUT: usize = 3;
const COLORING_MAX_CRITICAL: usize = 12;
const COLORING_INSTANCES: usize = 200;
const MWC_INSTANCES: usize = 200;
const MWC_MAX_N: usize = 9;
const MWC_MAX_RANK: usize = 4;
const FVS_INSTANCES: usize = 200;
const FVS_MAX_N: usize = 10;
const FVS_MAX_K: usize = 3;
const FVS_KERNEL_CONSTANT: usize = 20;
const OCT_INSTANCES: usize = 200;
const OCT_MAX_N: usize = 9;
const OCT_MAX_K: usize = 3;
const GPQ_AXIOM_MAX_PQ: usize = 8;
const PROBE_MIN_WORST: usize = 8;
const REP_MAX_GROUND: usize = 10;
const SEED_ATTEMPTS: u64 = 20_000;

struct Verdict {
    pass: bool,
    detail: String,
}

fn timed(name: &str, f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let start = Instant::now();
    let out = f();
    eprintln!("  finished {name} in {:.1}s", start.elapsed().as_secs_f64());
    (out, start.elapsed())
}

impl Verdict {
    fn new(failures: &[String], detail: String) -> Self {
        let detail = match failures.first() {
            Some(f) => format!("{detail}; {} failure(s), first: {f}", failures.len()),
            None => detail,
        };
        Verdict { pass: failures.is_empty(), detail }
    }
}

/// Sizes seen during the oracle runs, reused by the size-bound criterion.
#[derive(Default)]
struct Sizes {
    givc: Vec<(usize, usize)>,
    mwc: Vec<(usize, usize, usize)>,
    dvc: Vec<DvcStats>,
}

fn cap_edges(mut inst: Instance, m: usize) -> Instance {
    inst.edges.truncate(m);
    inst
}

fn brute_min_k(kind: ProblemKind, inst: &Instance) -> Option<(usize, SetFamily)> {
    (0..=inst.matroid.rank()).find_map(|k| {
        let f = brute_family(kind, &Instance { k, q: None, ..inst.clone() }).ok()?;
        (!f.is_empty()).then_some((k, f))
    })
}

fn givc_oracle(sizes: &mut Sizes) -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut seed = 0;
    while checked < GIVC_INSTANCES && seed < SEED_ATTEMPTS {
        seed += 1;
        let params = SizeParams {
            n: 6 + (seed as usize % (GIVC_MAX_N - 5)),
            density: 30 + (seed % 4) as u32 * 5,
            rank: 2 + (seed as usize % (GIVC_MAX_RANK - 1)),
            ..Default::default()
        };
        let inst = cap_edges(random_instance(ProblemKind::StCut, seed, params), GIVC_MAX_M);
        let Some((k, full)) = brute_min_k(ProblemKind::StCut, &inst) else { continue };
        if k == 0 {
            continue;
        }
        checked += 1;
        let r = inst.matroid.rank();
        let st = match inst.stcut() {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        match solve_min_budget(&st, &GivcOptions::default()) {
            Ok(Some((got, out))) => {
                sizes.givc.push((out.len(), r));
                let ok = got == k
                    && out.iter().all(|x| full.contains(x))
                    && verify_rep(&inst.matroid, &out, &full, r - k).unwrap_or(false);
                if !ok {
                    failures.push(format!("seed {seed}: k {got} vs {k}"));
                }
                let (_, report) = matcut::stcut::givc_solve_with(&st.with_budget(k, r - k), &GivcOptions::default())
                    .expect("second run");
                sizes.dvc.extend(report.dvc);
            }
            Ok(None) => failures.push(format!("seed {seed}: no budget found, expected {k}")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if checked < GIVC_INSTANCES {
        failures.push(format!("only {checked} instances generated"));
    }
    if elapsed > GIVC_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    Verdict::new(&failures, format!("{checked} instances in {:.1}s", elapsed.as_secs_f64()))
}

fn size_bounds(sizes: &Sizes) -> Verdict {
    let mut failures = Vec::new();
    for &(len, r) in &sizes.givc {
        if len as u128 > 1u128 << r {
            failures.push(format!("givc family {len} > 2^{r}"));
        }
    }
    for &(len, k, q) in &sizes.mwc {
        if len as u128 > binom(k + q, k) {
            failures.push(format!("mwc family {len} > C({},{k})", k + q));
        }
    }
    Verdict::new(&failures, format!("{} givc and {} imwcut families", sizes.givc.len(), sizes.mwc.len()))
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize, density: u32) -> MultiDiGraph {
    let mut g = MultiDiGraph::new();
    let names: Vec<Label> = ["s".to_string(), "t".to_string()]
        .into_iter()
        .chain((0..n - 2).map(|i| format!("v{i}")))
        .map(Label::new)
        .collect();
    for v in &names {
        g.add_vertex(v.clone());
    }
    for a in &names {
        for b in &names {
            if a != b && !(a.as_str() == "s" && b.as_str() == "t") && rng.gen_range(0..100) < density {
                g.add_arc(a.clone(), b.clone(), 1);
            }
        }
    }
    g
}

fn augmenter_completeness() -> Verdict {
    let (s, t) = (Label::new("s"), Label::new("t"));
    let mut failures = Vec::new();
    let mut cuts = 0;
    let augmenters: [(&str, &dyn Augmenter); 2] = [
        ("complete", &BipartitionAugmenter { cap: 64 }),
        ("reach-closed", &ReachClosedAugmenter { cap: 64 }),
    ];
    for seed in 0..AUGMENT_DIGRAPHS as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 4 + (seed as usize % (AUGMENT_MAX_N - 3));
        let g = random_digraph(&mut rng, n, 25 + (seed % 3) as u32 * 10);
        let arcs: Vec<(Label, Label)> = g.arcs().map(|(u, v, _)| (u.clone(), v.clone())).collect();
        let k = AUGMENT_MAX_CUT;
        let families: Vec<_> = augmenters.iter().map(|(_, a)| a.family(&g, &s, &t, k).expect("augment")).collect();
        for size in 0..=k {
            for_each_subset(arcs.len(), size, |ix| {
                let c: std::collections::BTreeSet<(Label, Label)> = ix.iter().map(|&i| arcs[i].clone()).collect();
                if !is_minimal_cut(&g, &s, &t, &CutSet::Arcs(c.clone())) {
                    return;
                }
                cuts += 1;
                for ((name, _), fam) in augmenters.iter().zip(&families) {
                    let hit = fam.iter().any(|a| {
                        let mut with = g.clone();
                        let mut without = MultiDiGraph::new();
                        for v in g.vertices() {
                            without.add_vertex(v.clone());
                        }
                        for (u, v, m) in g.arcs() {
                            if !c.contains(&(u.clone(), v.clone())) {
                                without.add_arc(u.clone(), v.clone(), m);
                            }
                        }
                        for (u, v, m) in &a.0 {
                            with.add_arc(u.clone(), v.clone(), *m);
                            without.add_arc(u.clone(), v.clone(), *m);
                        }
                        min_edge_cut(&with, &s, &t).ok() == Some(size)
                            && !without.connects(&s, &t, &LabelSet::new())
                    });
                    if !hit {
                        failures.push(format!("seed {seed} {name}: cut {c:?} missed"));
                    }
                }
            });
        }
    }
    Verdict::new(&failures, format!("{AUGMENT_DIGRAPHS} digraphs, {cuts} minimal cuts, 2 augmenters"))
}

fn count_min_cuts(g: &MultiDiGraph, s: &Label, t: &Label, k: usize) -> usize {
    let inner: Vec<Label> = g.vertices().filter(|v| *v != s && *v != t).cloned().collect();
    let mut count = 0;
    for_each_subset(inner.len(), k, |ix| {
        let z: LabelSet = ix.iter().map(|&i| inner[i].clone()).collect();
        if is_cut(g, s, t, &CutSet::Vertices(z)) {
            count += 1;
        }
    });
    count
}

fn decomposition(sizes: &Sizes) -> Verdict {
    let mut failures = Vec::new();
    let bad_givc = sizes.dvc.iter().filter(|d| !d.decomposition_ok).count();
    if bad_givc > 0 {
        failures.push(format!("{bad_givc} givc DP runs failed the decomposition checks"));
    }
    let (mut runs, mut compared) = (sizes.dvc.len(), 0);
    for seed in 0..COLORING_INSTANCES as u64 {
        let g = if seed % 2 == 0 {
            let params = SizeParams { n: 6 + (seed as usize % 5), density: 40, rank: 10, ..Default::default() };
            let inst = random_instance(ProblemKind::StCut, seed, params);
            phase1(&inst.stcut().expect("st instance"))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_digraph(&mut rng, 5 + (seed as usize % 5), 35);
            let labels: Vec<Label> = g.vertices().filter(|v| !matches!(v.as_str(), "s" | "t")).cloned().collect();
            let p = FieldPrime::new(DEFAULT_PRIME).expect("prime");
            DirectedInstance {
                matroid: LinearMatroid::free(p, labels),
                s: "s".into(),
                t: "t".into(),
                special: matcut::label::set(["s", "t"]),
                graph: g,
                k: 0,
                q: 0,
            }
        };
        let (s, t) = (g.s.clone(), g.t.clone());
        let Ok(cut) = min_vertex_cut(&g.graph, &s, &t) else { continue };
        if cut.value == 0 || cut.value > g.matroid.rank() {
            continue;
        }
        let inst = DirectedInstance { k: cut.value, q: g.matroid.rank() - cut.value, ..g };
        match dvc_run(&inst, &DvcOptions::default()) {
            Ok(run) => {
                runs += 1;
                if !run.stats.decomposition_ok {
                    failures.push(format!("seed {seed}: decomposition check failed"));
                }
                if run.stats.critical <= COLORING_MAX_CRITICAL {
                    compared += 1;
                    let valid = count_valid_colorings(&inst.graph, &s, &t).expect("count");
                    let cuts = count_min_cuts(&inst.graph, &s, &t, cut.value);
                    if valid != cuts {
                        failures.push(format!("seed {seed}: {valid} colourings vs {cuts} cuts"));
                    }
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    Verdict::new(&failures, format!("{runs} DP runs, {compared} colouring counts compared"))
}

fn mwc_oracle(sizes: &mut Sizes) -> Verdict {
    let mut failures = Vec::new();
    let (mut checked, mut separators, mut solutions) = (0, 0, 0);
    let mut seed = 0;
    while checked < MWC_INSTANCES && seed < SEED_ATTEMPTS {
        seed += 1;
        let params = SizeParams {
            n: 7 + (seed as usize % (MWC_MAX_N - 6)),
            density: 30 + (seed % 3) as u32 * 10,
            rank: 2 + (seed as usize % (MWC_MAX_RANK - 1)),
            terminals: 3 + (seed as usize % 2),
            ..Default::default()
        };
        let inst = random_instance(ProblemKind::MultiwayCut, seed, params);
        let Some((k, full)) = brute_min_k(ProblemKind::MultiwayCut, &inst) else { continue };
        if k == 0 {
            continue;
        }
        checked += 1;
        let r = inst.matroid.rank();
        let mi = inst.mwc().expect("terminals").with_budget(k, r - k);
        match imwcut_with(&mi, &MwcOptions::default()) {
            Ok((out, _)) => {
                sizes.mwc.push((out.len(), k, r - k));
                let ok = out.iter().all(|x| full.contains(x)) && verify_rep(&inst.matroid, &out, &full, r - k).unwrap_or(false);
                if !ok {
                    failures.push(format!("seed {seed} k {k}: not representative"));
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
        let g = &mi.graph;
        if !g.is_connected() {
            continue;
        }
        let strong = match find_strong_separator(g, &mi.terminals, k) {
            Ok(Some(s)) => s,
            Ok(None) => continue,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        separators += 1;
        let guesses = enumerate_guesses(g, &mi.terminals, &strong, k).expect("guesses");
        for o in full.iter() {
            solutions += 1;
            let hit = !o.is_disjoint(&strong.separator)
                || [&strong.c_s, &strong.c_t].iter().any(|c| (1..k).contains(&o.intersection(c).count()));
            if !hit {
                failures.push(format!("seed {seed}: solution {o:?} misses the separator"));
            }
            if o.is_disjoint(&strong.separator) && !guesses.iter().any(|gs| is_compatible(g, gs, o)) {
                failures.push(format!("seed {seed}: no guess compatible with {o:?}"));
            }
        }
    }
    if checked < MWC_INSTANCES {
        failures.push(format!("only {checked} instances generated"));
    }
    Verdict::new(
        &failures,
        format!("{checked} instances, {separators} strong separators checked against {solutions} solutions"),
    )
}

fn fvs_oracle() -> Verdict {
    let mut failures = Vec::new();
    let (mut feasible, mut worst_ratio) = (0, 0.0f64);
    let mut check_kernel = |seed: u64, k: usize, size: usize, failures: &mut Vec<String>| {
        let bound = FVS_KERNEL_CONSTANT * k.pow(3);
        worst_ratio = worst_ratio.max(size as f64 / bound as f64);
        if size > bound {
            failures.push(format!("seed {seed}: kernel {size} > {bound}"));
        }
    };
    for seed in 0..FVS_INSTANCES as u64 {
        let k = 1 + (seed as usize % FVS_MAX_K);
        let params = SizeParams {
            n: 6 + (seed as usize % (FVS_MAX_N - 5)),
            density: 25 + (seed % 4) as u32 * 10,
            rank: k + (seed as usize % 3),
            k,
            ..Default::default()
        };
        let inst = random_instance(ProblemKind::Fvs, seed, params);
        let k = inst.k.min(inst.matroid.rank());
        let inst = Instance { k, ..inst };
        let expect = brute_min_solution(ProblemKind::Fvs, &inst).expect("brute");
        let m = OracleMatroid::from_linear(&inst.matroid);
        match ifvs_solve_with_stats(&inst.undirected(), &m, k) {
            Ok((got, stats)) => {
                if got.is_some() != expect.is_some() {
                    failures.push(format!("seed {seed}: feasibility {} vs {}", got.is_some(), expect.is_some()));
                }
                if let Some(z) = &got {
                    feasible += 1;
                    let valid = z.len() <= k
                        && is_feasible(ProblemKind::Fvs, &inst, z).unwrap_or(false)
                        && inst.matroid.is_independent(z).unwrap_or(false);
                    if !valid {
                        failures.push(format!("seed {seed}: invalid solution {z:?}"));
                    }
                }
                if k > 0 {
                    check_kernel(seed, k, stats.kernel_size, &mut failures);
                }
                if !stats.node_bound_ok {
                    failures.push(format!("seed {seed}: disjoint search exceeded 9^t(n+m)"));
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    // Larger graphs for the kernel bound only.
    for seed in 1000..1100u64 {
        let k = 1 + (seed as usize % FVS_MAX_K);
        let params = SizeParams { n: 30 + (seed as usize % 30), density: 6, rank: k + 2, k, ..Default::default() };
        let inst = random_instance(ProblemKind::Fvs, seed, params);
        let m = OracleMatroid::from_linear(&inst.matroid);
        match matcut::cyclehit::fvs_kernelize(&inst.undirected(), &m, k) {
            Ok(kernel) if !kernel.infeasible => check_kernel(seed, k, kernel.size(), &mut failures),
            Ok(_) => {}
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    Verdict::new(
        &failures,
        format!("{FVS_INSTANCES} instances ({feasible} feasible), worst kernel/20k^3 = {worst_ratio:.2}"),
    )
}

fn oct_oracle() -> Verdict {
    let mut failures = Vec::new();
    let mut feasible = 0;
    for seed in 0..OCT_INSTANCES as u64 {
        let k = 1 + (seed as usize % OCT_MAX_K);
        let params = SizeParams {
            n: 5 + (seed as usize % (OCT_MAX_N - 4)),
            density: 30 + (seed % 4) as u32 * 10,
            rank: k + (seed as usize % 2),
            k,
            ..Default::default()
        };
        let inst = random_instance(ProblemKind::Oct, seed, params);
        let inst = Instance { k: inst.k.min(inst.matroid.rank()), ..inst };
        let expect = brute_min_solution(ProblemKind::Oct, &inst).expect("brute");
        match ioct_solve_with_stats(&inst.undirected(), &inst.matroid, inst.k, &GivcOptions::default()) {
            Ok((got, _)) => {
                if got.is_some() != expect.is_some() {
                    failures.push(format!("seed {seed}: feasibility {} vs {}", got.is_some(), expect.is_some()));
                }
                if let Some(z) = &got {
                    feasible += 1;
                    let valid = z.len() <= inst.k
                        && is_feasible(ProblemKind::Oct, &inst, z).unwrap_or(false)
                        && inst.matroid.is_independent(z).unwrap_or(false);
                    if !valid {
                        failures.push(format!("seed {seed}: invalid solution {z:?}"));
                    }
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    Verdict::new(&failures, format!("{OCT_INSTANCES} instances ({feasible} feasible)"))
}

fn lower_bound() -> Verdict {
    let mut failures = Vec::new();
    let lb = gen_gpq(2, 3, &[1, 1]);
    let n = lb.graph.num_vertices();
    let cut = min_vertex_cut(&lb.graph.to_directed(), &lb.s, &lb.t).map(|c| c.value).unwrap_or(0);
    if n != 14 || cut != 4 {
        failures.push(format!("G(2,3): {n} vertices, min cut {cut}"));
    }
    let mut checked = 0;
    for p in 1..=GPQ_AXIOM_MAX_PQ {
        for q in 1..=GPQ_AXIOM_MAX_PQ / p {
            for hidden in all_placements(p, q) {
                let lb = gen_gpq(p, q, &hidden);
                checked += 1;
                if !check_matroid_axioms(&lb.matroid, 2 * p + 1).unwrap_or(false) {
                    failures.push(format!("M_W axioms fail at p={p} q={q} W={hidden:?}"));
                }
            }
        }
    }
    let report = query_count_probe(&ExhaustiveCuts, 2, 3);
    if report.placements != 9 || report.worst_queries < PROBE_MIN_WORST || !report.wrong.is_empty() {
        failures.push(format!("probe: {report:?}"));
    }
    Verdict::new(
        &failures,
        format!("14 vertices, cut {cut}, {checked} oracle matroids, worst probe {} queries", report.worst_queries),
    )
}

fn matroid_for(seed: u64, n: usize, r: usize) -> LinearMatroid {
    let big = FieldPrime::new(DEFAULT_PRIME).expect("prime");
    let small = random_matrix(r, n, FieldPrime::new(3).expect("prime"), seed);
    let data = (0..r).flat_map(|i| small.row(i).to_vec()).collect();
    let labels = (0..n).map(|i| Label::new(format!("e{i}"))).collect();
    LinearMatroid::new(FFMatrix::new(big, r, n, data).expect("matrix"), labels).expect("labels")
}

fn independent_sets(m: &LinearMatroid, p: usize) -> Vec<LabelSet> {
    let g = m.ground();
    let mut out = Vec::new();
    for_each_subset(g.len(), p, |ix| {
        let x: LabelSet = ix.iter().map(|&i| g[i].clone()).collect();
        if m.is_independent(&x).unwrap_or(false) {
            out.push(x);
        }
    });
    out
}

fn sample(rng: &mut ChaCha8Rng, sets: &[LabelSet], p: usize, percent: u32) -> SetFamily {
    SetFamily::new(p, sets.iter().filter(|_| rng.gen_range(0..100) < percent).cloned()).expect("sizes")
}

fn rep_suite() -> Verdict {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 3..=REP_MAX_GROUND {
        for r in 2..=4.min(n) {
            for seed in 0..4u64 {
                let m = matroid_for(seed * 31 + n as u64, n, r);
                let r = m.rank();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for p in 1..=r {
                    let q = r - p;
                    let all = independent_sets(&m, p);
                    for percent in [0, 30, 100] {
                        cases += 1;
                        let f = sample(&mut rng, &all, p, percent);
                        let tag = format!("n={n} r={r} p={p} seed={seed} {percent}%");
                        let Ok(rep) = rep_family(&m, &f, q, seed) else {
                            failures.push(format!("{tag}: rep_family failed"));
                            continue;
                        };
                        if rep.len() as u128 > rep_bound(p, q) || !rep.iter().all(|x| f.contains(x)) {
                            failures.push(format!("{tag}: size {} or not a subfamily", rep.len()));
                        }
                        if !verify_rep(&m, &rep, &f, q).unwrap_or(false) {
                            failures.push(format!("{tag}: not representative"));
                        }
                        if rep.is_empty() != f.is_empty() {
                            failures.push(format!("{tag}: emptiness differs"));
                        }
                        let again = rep_family(&m, &rep, q, seed + 1).expect("rep");
                        if !verify_rep(&m, &again, &f, q).unwrap_or(false) {
                            failures.push(format!("{tag}: transitivity"));
                        }
                        for p2 in 1..=r - p {
                            let q2 = r - p - p2;
                            let g = sample(&mut rng, &independent_sets(&m, p2), p2, 50);
                            let rf = rep_family(&m, &f, p2 + q2, seed);
                            let rg = rep_family(&m, &g, p + q2, seed);
                            let (Ok(rf), Ok(rg)) = (rf, rg) else {
                                failures.push(format!("{tag}: convolution reps failed"));
                                continue;
                            };
                            let lhs = convolve(&rf, &rg, &m).expect("convolve");
                            let rhs = convolve(&f, &g, &m).expect("convolve");
                            if !verify_rep(&m, &lhs, &rhs, q2).unwrap_or(false) {
                                failures.push(format!("{tag} p2={p2}: convolution"));
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::new(&failures, format!("{cases} families on grounds up to {REP_MAX_GROUND}"))
}

fn main() {
    let mut sizes = Sizes::default();
    let (c1, c5, rest) = std::thread::scope(|scope| {
        let h3 = scope.spawn(|| timed("augmenter_completeness", augmenter_completeness));
        let h6 = scope.spawn(|| timed("fvs_oracle", fvs_oracle));
        let h7 = scope.spawn(|| timed("oct_oracle", oct_oracle));
        let h8 = scope.spawn(|| timed("lower_bound", lower_bound));
        let h9 = scope.spawn(|| timed("rep_suite", rep_suite));
        let mut mwc_sizes = Sizes::default();
        let h5 = scope.spawn(|| {
            let v = timed("mwc_oracle", || mwc_oracle(&mut mwc_sizes));
            (v, mwc_sizes)
        });
        let c1 = timed("givc_oracle", || givc_oracle(&mut sizes));
        let (c5, ms) = h5.join().expect("mwc thread");
        sizes.mwc = ms.mwc;
        let rest = [h3, h6, h7, h8, h9].map(|h| h.join().expect("criterion thread"));
        (c1, c5, rest)
    });
    let [c3, c6, c7, c8, c9] = rest;
    let c2 = timed("size_bounds", || size_bounds(&sizes));
    let c4 = timed("decomposition", || decomposition(&sizes));
    let names = [
        "givc oracle equivalence",
        "family size bounds",
        "augmenter completeness",
        "decomposition and colouring count",
        "imwcut oracle equivalence and strong separator",
        "fvs kernel, feasibility and node bound",
        "oct feasibility",
        "lower-bound family",
        "representative-family properties",
    ];
    let verdicts = [c1, c2, c3, c4, c5, c6, c7, c8, c9];
    let mut failed = 0;
    for (i, (name, (v, took))) in names.iter().zip(&verdicts).enumerate() {
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({}; {:.1}s)", i + 1, v.detail, took.as_secs_f64());
        failed += usize::from(!v.pass);
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
