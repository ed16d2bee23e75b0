//! Independent feedback vertex set (kernel plus branching over a subdivided
//! kernel graph) and independent odd cycle transversal (iterative compression
//! into (s,t)-cut instances).

use crate::graph::{min_vertex_cut, GraphError, MultiGraph};
use crate::label::{Label, LabelSet};
use crate::matroid::{matroid_intersection, LinearMatroid, Matroid, MatroidError, OracleMatroid, PartitionMatroid};
use crate::stcut::{givc_solve_with, GivcOptions, StCutError, StCutInstance};
use std::collections::{BTreeMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleHitError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    StCut(#[from] StCutError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T> = std::result::Result<T, CycleHitError>;

/// Greedy maximal independent subset of a path, in path order.
pub fn path_representatives(path: &[Label], m: &dyn Matroid) -> Result<Vec<Label>> {
    let mut reps: Vec<Label> = Vec::new();
    let mut cur = LabelSet::new();
    for v in path.iter().filter(|v| m.contains(v)) {
        cur.insert(v.clone());
        if m.is_independent(&cur)? {
            reps.push(v.clone());
        } else {
            cur.remove(v);
        }
    }
    Ok(reps)
}

/// A maximal degree-2 path of the kernel; `ends` is None for a whole cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialEdge {
    pub ends: Option<(Label, Label)>,
    pub path: Vec<Label>,
}

#[derive(Debug, Clone)]
pub struct FvsKernel {
    pub graph: MultiGraph,
    pub branch_vertices: LabelSet,
    pub special_edges: Vec<SpecialEdge>,
    /// Vertices every solution of size ≤ k contains.
    pub forced: LabelSet,
    /// Budget left after the forced vertices.
    pub budget: usize,
    /// Input matroid contracted by `forced`.
    pub matroid: OracleMatroid,
    pub infeasible: bool,
}

impl FvsKernel {
    pub fn size(&self) -> usize {
        self.graph.num_vertices() + self.graph.num_edges()
    }
}

fn shortest_path(g: &MultiGraph, a: &Label, b: &Label, removed: &LabelSet, skip_direct: bool) -> Option<Vec<Label>> {
    let mut prev: BTreeMap<Label, Label> = BTreeMap::new();
    let mut queue = VecDeque::from([a.clone()]);
    prev.insert(a.clone(), a.clone());
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(&u) {
            if removed.contains(w) || prev.contains_key(w) || (skip_direct && u == *a && w == b) {
                continue;
            }
            prev.insert(w.clone(), u.clone());
            if w == b {
                let mut path = vec![b.clone()];
                while path.last() != Some(a) {
                    path.push(prev[path.last().unwrap()].clone());
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w.clone());
        }
    }
    None
}

/// Vertex set of a shortest cycle avoiding `removed`.
fn shortest_cycle(g: &MultiGraph, removed: &LabelSet) -> Option<Vec<Label>> {
    let live = |v: &Label| !removed.contains(v);
    if let Some(v) = g.vertices().find(|v| live(v) && g.has_loop(v)) {
        return Some(vec![v.clone()]);
    }
    if let Some((u, v, _)) = g.edges().find(|(u, v, c)| *c > 1 && u != v && live(u) && live(v)) {
        return Some(vec![u.clone(), v.clone()]);
    }
    g.edges()
        .filter(|(u, v, _)| u != v && live(u) && live(v))
        .filter_map(|(u, v, _)| shortest_path(g, u, v, removed, true))
        .min_by_key(Vec::len)
}

/// Greedy packing of vertex-disjoint cycles; a lower bound on any FVS.
pub fn greedy_cycle_packing(g: &MultiGraph) -> usize {
    let mut removed = LabelSet::new();
    let mut count = 0;
    while let Some(c) = shortest_cycle(g, &removed) {
        removed.extend(c);
        count += 1;
    }
    count
}

/// Greedy count of cycles through v that share only v.
pub fn greedy_flower(g: &MultiGraph, v: &Label) -> usize {
    if g.has_loop(v) {
        return usize::MAX;
    }
    let mut removed = LabelSet::from([v.clone()]);
    let mut petals = 0;
    for u in g.neighbors(v) {
        if g.multiplicity(v, u) > 1 {
            removed.insert(u.clone());
            petals += 1;
        }
    }
    loop {
        let ports: Vec<Label> = g.neighbors(v).filter(|u| !removed.contains(*u)).cloned().collect();
        let mut best: Option<Vec<Label>> = None;
        for (i, a) in ports.iter().enumerate() {
            for b in &ports[i + 1..] {
                if let Some(p) = shortest_path(g, a, b, &removed, false) {
                    if best.as_ref().is_none_or(|q| p.len() < q.len()) {
                        best = Some(p);
                    }
                }
            }
        }
        match best {
            Some(p) => {
                removed.extend(p);
                petals += 1;
            }
            None => return petals,
        }
    }
}

/// Components of the degree-2 vertices, each in path order.
fn degree_two_runs(g: &MultiGraph) -> Vec<(Vec<Label>, bool)> {
    let deg2: LabelSet = g.vertices().filter(|v| g.degree(v) == 2 && !g.has_loop(v)).cloned().collect();
    let inner = g.induced(&deg2);
    let mut out = Vec::new();
    for comp in inner.components(&LabelSet::new()) {
        let start = comp.iter().find(|v| inner.degree(v) < 2).cloned();
        let cycle = start.is_none();
        let start = start.unwrap_or_else(|| comp.first().unwrap().clone());
        let mut order = vec![start.clone()];
        let mut seen = LabelSet::from([start]);
        loop {
            let last = order.last().unwrap();
            match inner.neighbors(last).find(|w| !seen.contains(*w)).cloned() {
                Some(w) => {
                    seen.insert(w.clone());
                    order.push(w);
                }
                None => break,
            }
        }
        out.push((order, cycle));
    }
    out
}

/// Outside neighbours at the two ends of a degree-2 run.
fn run_ends(g: &MultiGraph, run: &[Label]) -> (Label, Label) {
    let inside: LabelSet = run.iter().cloned().collect();
    let outside = |v: &Label| -> Vec<Label> {
        g.neighbors(v)
            .filter(|w| !inside.contains(*w))
            .flat_map(|w| std::iter::repeat_n(w.clone(), g.multiplicity(v, w)))
            .collect()
    };
    let first = outside(&run[0]);
    if run.len() == 1 {
        return (first[0].clone(), first[1].clone());
    }
    (first[0].clone(), outside(run.last().unwrap())[0].clone())
}

pub fn fvs_kernelize(g: &MultiGraph, m: &OracleMatroid, k: usize) -> Result<FvsKernel> {
    let mut g = g.clone();
    let mut m = m.clone();
    let mut k = k;
    let mut forced = LabelSet::new();
    let mut infeasible = false;
    'outer: loop {
        // degree 0 and 1
        loop {
            let low: LabelSet = g.vertices().filter(|v| g.degree(v) <= 1).cloned().collect();
            if low.is_empty() {
                break;
            }
            g = g.remove_vertices(&low);
        }
        if g.num_vertices() == 0 {
            break;
        }
        if greedy_cycle_packing(&g) > k {
            infeasible = true;
            break;
        }
        // loops and large flowers force a vertex
        let must = g.vertices().find(|v| greedy_flower(&g, v) > k).cloned();
        if let Some(v) = must {
            let single = LabelSet::from([v.clone()]);
            if k == 0 || !m.contains(&v) || !m.is_independent(&single)? {
                infeasible = true;
                break;
            }
            m = m.contract(&single)?;
            k -= 1;
            forced.insert(v);
            g = g.remove_vertices(&single);
            continue;
        }
        // trim degree-2 runs to representatives
        for (run, cycle) in degree_two_runs(&g) {
            let reps = path_representatives(&run, &m)?;
            if reps.len() == run.len() {
                continue;
            }
            let drop: LabelSet = run.iter().filter(|v| !reps.contains(v)).cloned().collect();
            if cycle {
                if reps.is_empty() {
                    infeasible = true;
                    break 'outer;
                }
                g = g.remove_vertices(&run.iter().cloned().collect());
                for w in reps.windows(2) {
                    g.add_edge(w[0].clone(), w[1].clone(), 1);
                }
                g.add_edge(reps.last().unwrap().clone(), reps[0].clone(), 1);
            } else {
                let (a, b) = run_ends(&g, &run);
                g = g.remove_vertices(&run.iter().cloned().collect());
                let chain: Vec<Label> = std::iter::once(a).chain(reps).chain(std::iter::once(b)).collect();
                for w in chain.windows(2) {
                    g.add_edge(w[0].clone(), w[1].clone(), 1);
                }
            }
            let _ = drop;
            continue 'outer;
        }
        break;
    }
    if infeasible {
        return Ok(FvsKernel {
            graph: MultiGraph::new(),
            branch_vertices: LabelSet::new(),
            special_edges: Vec::new(),
            forced,
            budget: k,
            matroid: m,
            infeasible,
        });
    }
    let branch_vertices: LabelSet = g.vertices().filter(|v| g.degree(v) >= 3).cloned().collect();
    let special_edges = degree_two_runs(&g)
        .into_iter()
        .map(|(run, cycle)| SpecialEdge { ends: (!cycle).then(|| run_ends(&g, &run)), path: run })
        .collect();
    Ok(FvsKernel { graph: g, branch_vertices, special_edges, forced, budget: k, matroid: m, infeasible })
}

/// Kernel graph with every special edge subdivided by one edge-vertex whose
/// deletion stands for picking one vertex of its path.
#[derive(Debug, Clone)]
pub struct SubdividedGraph {
    pub graph: MultiGraph,
    pub paths: BTreeMap<Label, Vec<Label>>,
}

impl SubdividedGraph {
    pub fn from_kernel(kernel: &FvsKernel) -> SubdividedGraph {
        let taken: LabelSet = kernel.graph.vertex_set();
        let mut prefix = String::from("~e");
        while taken.iter().any(|v| v.as_str().starts_with(&prefix)) {
            prefix.push('~');
        }
        let mut g = kernel.graph.induced(&kernel.branch_vertices);
        let mut paths = BTreeMap::new();
        for (i, e) in kernel.special_edges.iter().enumerate() {
            let x = Label::new(format!("{prefix}{i}"));
            match &e.ends {
                Some((a, b)) => {
                    g.add_edge(a.clone(), x.clone(), 1);
                    g.add_edge(x.clone(), b.clone(), 1);
                }
                None => g.add_edge(x.clone(), x.clone(), 1),
            }
            paths.insert(x, e.path.clone());
        }
        SubdividedGraph { graph: g, paths }
    }

    pub fn is_edge_vertex(&self, v: &Label) -> bool {
        self.paths.contains_key(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FvsSolution {
    /// Deleted branch vertices.
    pub vertices: LabelSet,
    /// Deleted edge-vertices.
    pub edges: LabelSet,
    /// One path vertex per deleted edge-vertex.
    pub picks: LabelSet,
}

#[derive(Debug, Clone, Default)]
pub struct FvsStats {
    pub kernel_size: usize,
    pub compress_steps: usize,
    pub disjoint_calls: usize,
    pub disjoint_nodes: usize,
    pub max_nodes_per_call: usize,
    /// Every disjoint search stayed within 9^t·(n+m) nodes.
    pub node_bound_ok: bool,
}

/// Picks one vertex per path, independent in `m`, if possible.
fn path_picks(m: &OracleMatroid, sub: &SubdividedGraph, edges: &LabelSet) -> Result<Option<LabelSet>> {
    if edges.is_empty() {
        return Ok(Some(LabelSet::new()));
    }
    let blocks: Vec<LabelSet> = edges.iter().map(|e| sub.paths[e].iter().cloned().collect()).collect();
    let pm = PartitionMatroid::new(blocks)?;
    let common = matroid_intersection(m, &pm)?;
    Ok((common.len() == edges.len()).then_some(common))
}

struct Disjoint<'a> {
    sub: &'a SubdividedGraph,
    nodes: usize,
}

/// Find deletions inside W (at most t of them) that leave H acyclic, with the
/// branch vertices independent in `m` and the edge-vertices realisable by picks.
pub fn disjoint_fvs(
    sub: &SubdividedGraph,
    h: &MultiGraph,
    m: &OracleMatroid,
    w: &LabelSet,
    n: &LabelSet,
    edges: &LabelSet,
    t: usize,
) -> Result<(Option<FvsSolution>, usize)> {
    let mut d = Disjoint { sub, nodes: 0 };
    let r = d.run(h.clone(), m.clone(), w.clone(), n.clone(), edges.clone(), t)?;
    Ok((r, d.nodes))
}

impl Disjoint<'_> {
    fn take(&mut self, h: &MultiGraph, m: &OracleMatroid, w: &LabelSet, n: &LabelSet, edges: &LabelSet, t: usize, v: &Label) -> Result<Option<FvsSolution>> {
        let one = LabelSet::from([v.clone()]);
        let (h2, w2) = (h.remove_vertices(&one), w.iter().filter(|x| *x != v).cloned().collect());
        if self.sub.is_edge_vertex(v) {
            let mut e2 = edges.clone();
            e2.insert(v.clone());
            if path_picks(m, self.sub, &e2)?.is_none() {
                return Ok(None);
            }
            let r = self.run(h2, m.clone(), w2, n.clone(), e2, t - 1)?;
            Ok(r.map(|mut s| {
                s.edges.insert(v.clone());
                s
            }))
        } else {
            if !m.contains(v) || !m.is_independent(&one)? {
                return Ok(None);
            }
            let r = self.run(h2, m.contract(&one)?, w2, n.clone(), edges.clone(), t - 1)?;
            Ok(r.map(|mut s| {
                s.vertices.insert(v.clone());
                s
            }))
        }
    }

    fn run(&mut self, mut h: MultiGraph, m: OracleMatroid, mut w: LabelSet, mut n: LabelSet, edges: LabelSet, t: usize) -> Result<Option<FvsSolution>> {
        self.nodes += 1;
        loop {
            let low: LabelSet = h.vertices().filter(|v| h.degree(v) <= 1).cloned().collect();
            if low.is_empty() {
                break;
            }
            h = h.remove_vertices(&low);
            w.retain(|v| !low.contains(v));
            n.retain(|v| !low.contains(v));
        }
        if h.is_forest() {
            return Ok(path_picks(&m, self.sub, &edges)?.map(|picks| FvsSolution { picks, ..Default::default() }));
        }
        if t == 0 {
            return Ok(None);
        }
        let hn = h.induced(&n);
        let comps = hn.components(&LabelSet::new());
        let comp_of = |x: &Label| comps.iter().position(|c| c.contains(x));
        // a W vertex closing a cycle with one N-tree must go
        let closing = w.iter().find(|v| {
            if h.has_loop(v) {
                return true;
            }
            let mut count = vec![0usize; comps.len()];
            h.neighbors(v).filter_map(|u| comp_of(u).map(|c| (c, h.multiplicity(v, u)))).any(|(c, mult)| {
                count[c] += mult;
                count[c] >= 2
            })
        });
        if let Some(v) = closing.cloned() {
            return self.take(&h, &m, &w, &n, &edges, t, &v);
        }
        let hw = h.induced(&w);
        let Some(x) = w.iter().find(|v| hw.degree(v) <= 1).cloned() else {
            return Ok(None);
        };
        if let Some(s) = self.take(&h, &m, &w, &n, &edges, t, &x)? {
            return Ok(Some(s));
        }
        w.remove(&x);
        n.insert(x);
        self.run(h, m, w, n, edges, t)
    }
}

fn nine_pow(t: usize) -> u128 {
    9u128.saturating_pow(t as u32)
}

/// Independent FVS of size ≤ k in the oracle model, or None.
pub fn ifvs_solve(g: &MultiGraph, m: &OracleMatroid, k: usize) -> Result<Option<LabelSet>> {
    Ok(ifvs_solve_with_stats(g, m, k)?.0)
}

pub fn ifvs_solve_with_stats(g: &MultiGraph, m: &OracleMatroid, k: usize) -> Result<(Option<LabelSet>, FvsStats)> {
    let kernel = fvs_kernelize(g, m, k)?;
    let mut stats = FvsStats { kernel_size: kernel.size(), node_bound_ok: true, ..Default::default() };
    if kernel.infeasible {
        return Ok((None, stats));
    }
    let sub = SubdividedGraph::from_kernel(&kernel);
    let budget = kernel.budget;
    let base = &kernel.matroid;
    let order: Vec<Label> = sub.graph.vertex_set().into_iter().collect();
    let mut x = LabelSet::new();
    let mut sol = LabelSet::new();
    for v in order {
        x.insert(v.clone());
        let mut s2 = sol.clone();
        s2.insert(v);
        let hx = sub.graph.induced(&x);
        stats.compress_steps += 1;
        match compress_fvs(&sub, &hx, base, &s2, budget, &mut stats)? {
            Some(next) => sol = next,
            None => return Ok((None, stats)),
        }
    }
    let real: LabelSet = sol.iter().filter(|v| !sub.is_edge_vertex(v)).cloned().collect();
    let edges: LabelSet = sol.iter().filter(|v| sub.is_edge_vertex(v)).cloned().collect();
    let mr = base.contract(&real)?;
    let picks = path_picks(&mr, &sub, &edges)?
        .ok_or(MatroidError::NotIndependent)?;
    let mut out = kernel.forced.clone();
    out.extend(real);
    out.extend(picks);
    Ok((Some(out), stats))
}

/// Given an FVS `s` of `hx` with |s| ≤ k + 1, find a solution of size ≤ k.
fn compress_fvs(sub: &SubdividedGraph, hx: &MultiGraph, m: &OracleMatroid, s: &LabelSet, k: usize, stats: &mut FvsStats) -> Result<Option<LabelSet>> {
    let items: Vec<Label> = s.iter().cloned().collect();
    let mut masks: Vec<u32> = (0..1u32 << items.len()).collect();
    // larger guesses first: they leave the smallest disjoint searches
    masks.sort_by_key(|b| std::cmp::Reverse(b.count_ones()));
    for mask in masks {
        let y: LabelSet = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i].clone()).collect();
        if y.len() > k {
            continue;
        }
        let yr: LabelSet = y.iter().filter(|v| !sub.is_edge_vertex(v)).cloned().collect();
        let ye: LabelSet = y.iter().filter(|v| sub.is_edge_vertex(v)).cloned().collect();
        if !yr.iter().all(|v| m.contains(v)) || !m.is_independent(&yr)? {
            continue;
        }
        let my = m.contract(&yr)?;
        if path_picks(&my, sub, &ye)?.is_none() {
            continue;
        }
        let h = hx.remove_vertices(&y);
        let n: LabelSet = s.difference(&y).cloned().collect();
        if !h.induced(&n).is_forest() {
            continue;
        }
        let w: LabelSet = h.vertices().filter(|v| !n.contains(*v)).cloned().collect();
        let t = k - y.len();
        let (found, nodes) = disjoint_fvs(sub, &h, &my, &w, &n, &ye, t)?;
        stats.disjoint_calls += 1;
        stats.disjoint_nodes += nodes;
        stats.max_nodes_per_call = stats.max_nodes_per_call.max(nodes);
        let size = (h.num_vertices() + h.num_edges()).max(1) as u128;
        if nodes as u128 > nine_pow(t) * size {
            stats.node_bound_ok = false;
        }
        if let Some(f) = found {
            let mut out = y;
            out.extend(f.vertices);
            out.extend(f.edges);
            return Ok(Some(out));
        }
    }
    Ok(None)
}

fn fresh(base: &str, g: &MultiGraph) -> Label {
    let mut name = base.to_string();
    while g.contains(&Label::new(&name)) {
        name.push('\'');
    }
    Label::new(name)
}

#[derive(Debug, Clone, Default)]
pub struct OctStats {
    pub compress_steps: usize,
    pub cut_instances: usize,
}

/// Independent OCT of size ≤ k, or None.
pub fn ioct_solve(g: &MultiGraph, m: &LinearMatroid, k: usize, opts: &GivcOptions) -> Result<Option<LabelSet>> {
    Ok(ioct_solve_with_stats(g, m, k, opts)?.0)
}

pub fn ioct_solve_with_stats(g: &MultiGraph, m: &LinearMatroid, k: usize, opts: &GivcOptions) -> Result<(Option<LabelSet>, OctStats)> {
    let mut stats = OctStats::default();
    let loops: LabelSet = g.vertices().filter(|v| g.has_loop(v)).cloned().collect();
    if loops.len() > k || !loops.iter().all(|v| m.contains(v)) || !m.is_independent(&loops)? {
        return Ok((None, stats));
    }
    let m = m.contract(&loops)?;
    let g = g.remove_vertices(&loops);
    let k = k - loops.len();
    let mut x = LabelSet::new();
    let mut sol = LabelSet::new();
    for v in g.vertex_set() {
        x.insert(v.clone());
        let mut s2 = sol.clone();
        s2.insert(v);
        if s2.len() <= k && s2.iter().all(|u| m.contains(u)) && m.is_independent(&s2)? {
            sol = s2;
            continue;
        }
        stats.compress_steps += 1;
        match compress_oct(&g.induced(&x), &m, &s2, k, opts, &mut stats)? {
            Some(next) => sol = next,
            None => return Ok((None, stats)),
        }
    }
    let mut out = loops;
    out.extend(sol);
    Ok((Some(out), stats))
}

fn compress_oct(gx: &MultiGraph, m: &LinearMatroid, s: &LabelSet, k: usize, opts: &GivcOptions, stats: &mut OctStats) -> Result<Option<LabelSet>> {
    let items: Vec<Label> = s.iter().cloned().collect();
    for mask in 0..1u32 << items.len() {
        let y: LabelSet = (0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i].clone()).collect();
        if y.len() > k || !y.iter().all(|v| m.contains(v)) || !m.is_independent(&y)? {
            continue;
        }
        let my = m.contract(&y)?;
        let h = gx.remove_vertices(&y);
        let n: Vec<Label> = s.difference(&y).cloned().collect();
        if let Some(o) = disjoint_oct(&h, &my, &n, k - y.len(), opts, stats)? {
            let mut out = y;
            out.extend(o);
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// OCT of `h` avoiding `n`, of size ≤ budget, independent in `m`; one cut
/// instance per proper 2-colouring of `n`.
fn disjoint_oct(h: &MultiGraph, m: &LinearMatroid, n: &[Label], budget: usize, opts: &GivcOptions, stats: &mut OctStats) -> Result<Option<LabelSet>> {
    let nset: LabelSet = n.iter().cloned().collect();
    let b = h.remove_vertices(&nset);
    let Some(base) = b.two_coloring() else {
        return Ok(None);
    };
    let hn = h.induced(&nset);
    for mask in 0..1u32 << n.len() {
        let side = |v: &Label| -> u8 { (mask >> n.iter().position(|x| x == v).unwrap() & 1) as u8 };
        if hn.edges().any(|(u, v, _)| side(u) == side(v)) {
            continue;
        }
        let (mut keep, mut flip) = (LabelSet::new(), LabelSet::new());
        for x in n {
            for u in h.neighbors(x).filter(|u| !nset.contains(*u)) {
                if 1 - side(x) == base[u] {
                    keep.insert(u.clone());
                } else {
                    flip.insert(u.clone());
                }
            }
        }
        let mut aux = b.clone();
        let s = fresh("s*", &aux);
        let t = fresh("t*", &aux);
        aux.add_vertex(s.clone());
        aux.add_vertex(t.clone());
        for u in &keep {
            aux.add_edge(s.clone(), u.clone(), 1);
        }
        for u in &flip {
            aux.add_edge(t.clone(), u.clone(), 1);
        }
        if !aux.to_directed().connects(&s, &t, &LabelSet::new()) {
            return Ok(Some(LabelSet::new()));
        }
        stats.cut_instances += 1;
        let inst = StCutInstance { graph: aux, matroid: m.clone(), special: LabelSet::from([s.clone(), t.clone()]), s, t, k: 0, q: 0 };
        let lower = min_vertex_cut(&inst.graph.to_directed(), &inst.s, &inst.t)?.value;
        for kk in lower..=budget.min(m.rank()) {
            let (f, _) = givc_solve_with(&inst.with_budget(kk, m.rank() - kk), opts)?;
            if let Some(o) = f.into_sets().into_iter().next() {
                return Ok(Some(o));
            }
        }
    }
    Ok(None)
}
