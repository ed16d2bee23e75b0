//! Directed and undirected multigraphs, unit-capacity flows and cut predicates.

use crate::label::{Label, LabelSet};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Label),
    #[error("source and sink coincide")]
    SameEndpoints,
    #[error("arc from source to sink: no finite vertex cut")]
    NoFiniteCut,
}

type Adj = BTreeMap<Label, BTreeMap<Label, usize>>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiDiGraph {
    out: Adj,
    inc: Adj,
}

impl MultiDiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<Label>) -> Label {
        let v = v.into();
        self.out.entry(v.clone()).or_default();
        self.inc.entry(v.clone()).or_default();
        v
    }

    /// Adds `mult` parallel copies of (u, v).
    pub fn add_arc(&mut self, u: impl Into<Label>, v: impl Into<Label>, mult: usize) {
        let u = self.add_vertex(u);
        let v = self.add_vertex(v);
        if mult == 0 {
            return;
        }
        *self.out.get_mut(&u).unwrap().entry(v.clone()).or_insert(0) += mult;
        *self.inc.get_mut(&v).unwrap().entry(u).or_insert(0) += mult;
    }

    pub fn contains(&self, v: &Label) -> bool {
        self.out.contains_key(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Label> {
        self.out.keys()
    }

    pub fn vertex_set(&self) -> LabelSet {
        self.out.keys().cloned().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    /// Total arc count including multiplicities.
    pub fn num_arcs(&self) -> usize {
        self.out.values().flat_map(|m| m.values()).sum()
    }

    /// (tail, head, multiplicity) in sorted order.
    pub fn arcs(&self) -> impl Iterator<Item = (&Label, &Label, usize)> {
        self.out.iter().flat_map(|(u, m)| m.iter().map(move |(v, &c)| (u, v, c)))
    }

    pub fn multiplicity(&self, u: &Label, v: &Label) -> usize {
        self.out.get(u).and_then(|m| m.get(v)).copied().unwrap_or(0)
    }

    pub fn out_neighbors(&self, u: &Label) -> impl Iterator<Item = &Label> {
        self.out.get(u).into_iter().flat_map(|m| m.keys())
    }

    pub fn in_neighbors(&self, u: &Label) -> impl Iterator<Item = &Label> {
        self.inc.get(u).into_iter().flat_map(|m| m.keys())
    }

    pub fn remove_vertices(&self, x: &LabelSet) -> MultiDiGraph {
        let keep: LabelSet = self.vertices().filter(|v| !x.contains(*v)).cloned().collect();
        self.induced(&keep)
    }

    pub fn induced(&self, keep: &LabelSet) -> MultiDiGraph {
        let mut g = MultiDiGraph::new();
        for v in keep {
            if self.contains(v) {
                g.add_vertex(v.clone());
            }
        }
        for (u, v, c) in self.arcs() {
            if keep.contains(u) && keep.contains(v) {
                g.add_arc(u.clone(), v.clone(), c);
            }
        }
        g
    }

    fn check(&self, v: &Label) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v.clone()))
        }
    }

    /// Vertices reachable from `from` avoiding `removed`.
    pub fn reachable(&self, from: &Label, removed: &LabelSet) -> LabelSet {
        let mut seen = LabelSet::new();
        if removed.contains(from) || !self.contains(from) {
            return seen;
        }
        let mut queue = VecDeque::from([from.clone()]);
        seen.insert(from.clone());
        while let Some(u) = queue.pop_front() {
            for w in self.out_neighbors(&u) {
                if !removed.contains(w) && seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
        }
        seen
    }

    /// Vertices that reach `to` avoiding `removed`.
    pub fn reaching(&self, to: &Label, removed: &LabelSet) -> LabelSet {
        let mut seen = LabelSet::new();
        if removed.contains(to) || !self.contains(to) {
            return seen;
        }
        let mut queue = VecDeque::from([to.clone()]);
        seen.insert(to.clone());
        while let Some(u) = queue.pop_front() {
            for w in self.in_neighbors(&u) {
                if !removed.contains(w) && seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
        }
        seen
    }

    /// Is there an s→t path in G − z?
    pub fn connects(&self, s: &Label, t: &Label, z: &LabelSet) -> bool {
        self.reachable(s, z).contains(t)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiGraph {
    adj: Adj,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<Label>) -> Label {
        let v = v.into();
        self.adj.entry(v.clone()).or_default();
        v
    }

    pub fn add_edge(&mut self, u: impl Into<Label>, v: impl Into<Label>, mult: usize) {
        let u = self.add_vertex(u);
        let v = self.add_vertex(v);
        if mult == 0 {
            return;
        }
        *self.adj.get_mut(&u).unwrap().entry(v.clone()).or_insert(0) += mult;
        if u != v {
            *self.adj.get_mut(&v).unwrap().entry(u).or_insert(0) += mult;
        }
    }

    /// Removes every copy of edge uv.
    pub fn remove_edge(&mut self, u: &Label, v: &Label) {
        if let Some(m) = self.adj.get_mut(u) {
            m.remove(v);
        }
        if let Some(m) = self.adj.get_mut(v) {
            m.remove(u);
        }
    }

    pub fn contains(&self, v: &Label) -> bool {
        self.adj.contains_key(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Label> {
        self.adj.keys()
    }

    pub fn vertex_set(&self) -> LabelSet {
        self.adj.keys().cloned().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges().map(|(_, _, c)| c).sum()
    }

    /// Each edge once as (u, v, mult) with u ≤ v.
    pub fn edges(&self) -> impl Iterator<Item = (&Label, &Label, usize)> {
        self.adj
            .iter()
            .flat_map(|(u, m)| m.iter().filter(move |(v, _)| u <= *v).map(move |(v, &c)| (u, v, c)))
    }

    pub fn multiplicity(&self, u: &Label, v: &Label) -> usize {
        self.adj.get(u).and_then(|m| m.get(v)).copied().unwrap_or(0)
    }

    /// Distinct neighbours other than `v` itself.
    pub fn neighbors(&self, v: &Label) -> impl Iterator<Item = &Label> {
        let v2 = v.clone();
        self.adj.get(v).into_iter().flat_map(|m| m.keys()).filter(move |w| **w != v2)
    }

    /// Degree counting multiplicity; a loop counts twice.
    pub fn degree(&self, v: &Label) -> usize {
        self.adj
            .get(v)
            .map(|m| m.iter().map(|(w, &c)| if w == v { 2 * c } else { c }).sum())
            .unwrap_or(0)
    }

    pub fn has_loop(&self, v: &Label) -> bool {
        self.multiplicity(v, v) > 0
    }

    pub fn induced(&self, keep: &LabelSet) -> MultiGraph {
        let mut g = MultiGraph::new();
        for v in keep {
            if self.contains(v) {
                g.add_vertex(v.clone());
            }
        }
        for (u, v, c) in self.edges() {
            if keep.contains(u) && keep.contains(v) {
                g.add_edge(u.clone(), v.clone(), c);
            }
        }
        g
    }

    pub fn remove_vertices(&self, x: &LabelSet) -> MultiGraph {
        let keep: LabelSet = self.vertices().filter(|v| !x.contains(*v)).cloned().collect();
        self.induced(&keep)
    }

    /// Component containing `v` in G − removed.
    pub fn component_of(&self, v: &Label, removed: &LabelSet) -> LabelSet {
        let mut seen = LabelSet::new();
        if removed.contains(v) || !self.contains(v) {
            return seen;
        }
        let mut queue = VecDeque::from([v.clone()]);
        seen.insert(v.clone());
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(&u) {
                if !removed.contains(w) && seen.insert(w.clone()) {
                    queue.push_back(w.clone());
                }
            }
        }
        seen
    }

    /// Components of G − removed, ordered by smallest label.
    pub fn components(&self, removed: &LabelSet) -> Vec<LabelSet> {
        let mut seen = LabelSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if removed.contains(v) || seen.contains(v) {
                continue;
            }
            let c = self.component_of(v, removed);
            seen.extend(c.iter().cloned());
            out.push(c);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components(&LabelSet::new()).len() <= 1
    }

    /// Open neighbourhood of a set.
    pub fn neighborhood(&self, x: &LabelSet) -> LabelSet {
        x.iter().flat_map(|v| self.neighbors(v)).filter(|w| !x.contains(*w)).cloned().collect()
    }

    /// Both orientations of every edge.
    pub fn to_directed(&self) -> MultiDiGraph {
        let mut d = MultiDiGraph::new();
        for v in self.vertices() {
            d.add_vertex(v.clone());
        }
        for (u, v, c) in self.edges() {
            d.add_arc(u.clone(), v.clone(), c);
            if u != v {
                d.add_arc(v.clone(), u.clone(), c);
            }
        }
        d
    }

    /// Is the graph a forest (no loops, no parallel edges, no cycles)?
    pub fn is_forest(&self) -> bool {
        if self.edges().any(|(u, v, c)| u == v || c > 1) {
            return false;
        }
        let comps = self.components(&LabelSet::new()).len();
        self.num_edges() + comps == self.num_vertices()
    }

    /// Proper 2-colouring if one exists (component roots get colour 0).
    pub fn two_coloring(&self) -> Option<BTreeMap<Label, u8>> {
        let mut col: BTreeMap<Label, u8> = BTreeMap::new();
        for v in self.vertices() {
            if col.contains_key(v) {
                continue;
            }
            col.insert(v.clone(), 0);
            let mut queue = VecDeque::from([v.clone()]);
            while let Some(u) = queue.pop_front() {
                let cu = col[&u];
                if self.has_loop(&u) {
                    return None;
                }
                for w in self.neighbors(&u) {
                    match col.get(w) {
                        Some(&cw) if cw == cu => return None,
                        Some(_) => {}
                        None => {
                            col.insert(w.clone(), 1 - cu);
                            queue.push_back(w.clone());
                        }
                    }
                }
            }
        }
        Some(col)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }
}

/// Delete X and add `new` adjacent to N(X); edges at `new` are simple.
pub fn identify(g: &MultiGraph, x: &LabelSet, new: impl Into<Label>) -> MultiGraph {
    let new = new.into();
    let nb = g.neighborhood(x);
    let mut h = g.remove_vertices(x);
    h.add_vertex(new.clone());
    for w in nb {
        if w != new {
            h.add_edge(new.clone(), w, 1);
        }
    }
    h
}

/// Every component of G − S holds at most one terminal.
pub fn multiway_cut_check(g: &MultiGraph, t: &LabelSet, s: &LabelSet) -> bool {
    g.components(s).iter().all(|c| c.intersection(t).count() <= 1)
}

const INF: u64 = u64::MAX / 4;

/// Small max-flow network with paired reverse edges.
struct Network {
    head: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, u: usize, v: usize, c: u64) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }

    /// Edmonds–Karp; stops once the flow exceeds `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let mut flow = 0;
        loop {
            if flow > limit {
                return flow;
            }
            let mut prev = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            prev[s] = usize::MAX - 1;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.adj[u] {
                    let v = self.head[e];
                    if self.cap[e] > 0 && prev[v] == usize::MAX {
                        prev[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return flow;
            }
            let mut bottleneck = INF;
            let mut v = t;
            while v != s {
                let e = prev[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.head[e ^ 1];
            }
            flow = flow.saturating_add(bottleneck);
        }
    }

    fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.head[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

struct SplitNetwork<'g> {
    labels: Vec<&'g Label>,
    idx: HashMap<&'g Label, usize>,
    net: Network,
    arc_edges: Vec<usize>,
}

/// Vertex i becomes 2i → 2i+1; its split edge has id 2i.
fn split_network<'g>(
    g: &'g MultiDiGraph,
    s: &Label,
    t: &Label,
    uncuttable: &LabelSet,
    deleted: &LabelSet,
) -> Result<SplitNetwork<'g>, GraphError> {
    g.check(s)?;
    g.check(t)?;
    if s == t {
        return Err(GraphError::SameEndpoints);
    }
    if g.multiplicity(s, t) > 0 {
        return Err(GraphError::NoFiniteCut);
    }
    let labels: Vec<&Label> = g.vertices().collect();
    let idx: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let n = labels.len();
    let mut net = Network::new(2 * n);
    for (i, v) in labels.iter().enumerate() {
        let c = if deleted.contains(*v) {
            0
        } else if *v == s || *v == t || uncuttable.contains(*v) {
            INF
        } else {
            1
        };
        net.add(2 * i, 2 * i + 1, c);
    }
    let mut arc_edges = Vec::new();
    for (u, v, _) in g.arcs() {
        if u == v {
            continue;
        }
        arc_edges.push(net.head.len());
        net.add(2 * idx[u] + 1, 2 * idx[v], INF);
    }
    Ok(SplitNetwork { labels, idx, net, arc_edges })
}

/// Minimum vertex cut value of `g - v` for each candidate v (capped at n+1).
pub fn cut_values_without(g: &MultiDiGraph, s: &Label, t: &Label, candidates: &[Label]) -> Result<Vec<usize>, GraphError> {
    let SplitNetwork { idx, mut net, labels, .. } = split_network(g, s, t, &LabelSet::new(), &LabelSet::new())?;
    let base = net.cap.clone();
    let n = labels.len() as u64;
    let (si, ti) = (idx[s], idx[t]);
    candidates
        .iter()
        .map(|v| {
            let i = *idx.get(v).ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            net.cap.copy_from_slice(&base);
            net.cap[2 * i] = 0;
            Ok(net.max_flow(2 * si + 1, 2 * ti, n).min(n + 1) as usize)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCut {
    pub value: usize,
    /// Internally vertex-disjoint s→t paths, endpoints included.
    pub paths: Vec<Vec<Label>>,
    /// One minimum cut (the one closest to s).
    pub cut: LabelSet,
}

/// Minimum vertex (s,t)-cut with Menger witnesses.
pub fn min_vertex_cut(g: &MultiDiGraph, s: &Label, t: &Label) -> Result<VertexCut, GraphError> {
    min_vertex_cut_with(g, s, t, &LabelSet::new())
}

/// As [`min_vertex_cut`], but vertices in `uncuttable` cannot be deleted.
pub fn min_vertex_cut_with(g: &MultiDiGraph, s: &Label, t: &Label, uncuttable: &LabelSet) -> Result<VertexCut, GraphError> {
    min_vertex_cut_in(g, s, t, uncuttable, &LabelSet::new())
}

/// As [`min_vertex_cut_with`] on `g - deleted`, without rebuilding the graph.
pub fn min_vertex_cut_in(
    g: &MultiDiGraph,
    s: &Label,
    t: &Label,
    uncuttable: &LabelSet,
    deleted: &LabelSet,
) -> Result<VertexCut, GraphError> {
    let SplitNetwork { labels, idx, mut net, arc_edges } = split_network(g, s, t, uncuttable, deleted)?;
    let n = labels.len();
    let (si, ti) = (idx[s], idx[t]);
    let value = net.max_flow(2 * si + 1, 2 * ti, n as u64);
    if value >= INF || value > n as u64 {
        return Err(GraphError::NoFiniteCut);
    }
    // decompose: follow arcs carrying flow
    let mut used: HashMap<usize, u64> = HashMap::new();
    for &e in &arc_edges {
        let f = net.cap[e ^ 1];
        if f > 0 {
            used.insert(e, f);
        }
    }
    let mut paths = Vec::new();
    for _ in 0..value {
        let mut path = vec![s.clone()];
        let mut cur = si;
        while cur != ti {
            let out = 2 * cur + 1;
            let e = net.adj[out]
                .iter()
                .copied()
                .filter(|e| e % 2 == 0 && used.get(e).copied().unwrap_or(0) > 0)
                .min_by_key(|&e| net.head[e])
                .expect("flow conservation");
            *used.get_mut(&e).unwrap() -= 1;
            cur = net.head[e] / 2;
            path.push(labels[cur].clone());
        }
        paths.push(path);
    }
    let reach = net.residual_reach(2 * si + 1);
    let cut = (0..n)
        .filter(|&i| reach[2 * i] && !reach[2 * i + 1])
        .map(|i| labels[i].clone())
        .collect();
    Ok(VertexCut { value: value as usize, paths, cut })
}

/// Minimum arc (s,t)-cut counting multiplicities.
pub fn min_edge_cut(g: &MultiDiGraph, s: &Label, t: &Label) -> Result<usize, GraphError> {
    g.check(s)?;
    g.check(t)?;
    if s == t {
        return Err(GraphError::SameEndpoints);
    }
    let labels: Vec<&Label> = g.vertices().collect();
    let idx: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let mut net = Network::new(labels.len());
    for (u, v, c) in g.arcs() {
        if u != v {
            net.add(idx[u], idx[v], c as u64);
        }
    }
    Ok(net.max_flow(idx[s], idx[t], u64::MAX) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutSet {
    Vertices(LabelSet),
    /// Each listed arc removes all of its parallel copies.
    Arcs(BTreeSet<(Label, Label)>),
}

pub fn is_cut(g: &MultiDiGraph, s: &Label, t: &Label, z: &CutSet) -> bool {
    match z {
        CutSet::Vertices(x) => !x.contains(s) && !x.contains(t) && !g.connects(s, t, x),
        CutSet::Arcs(a) => {
            let mut h = MultiDiGraph::new();
            for v in g.vertices() {
                h.add_vertex(v.clone());
            }
            for (u, v, c) in g.arcs() {
                if !a.contains(&(u.clone(), v.clone())) {
                    h.add_arc(u.clone(), v.clone(), c);
                }
            }
            !h.connects(s, t, &LabelSet::new())
        }
    }
}

/// A cut none of whose proper subsets is a cut.
pub fn is_minimal_cut(g: &MultiDiGraph, s: &Label, t: &Label, z: &CutSet) -> bool {
    if !is_cut(g, s, t, z) {
        return false;
    }
    match z {
        CutSet::Vertices(x) => x.iter().all(|v| {
            let mut y = x.clone();
            y.remove(v);
            !is_cut(g, s, t, &CutSet::Vertices(y))
        }),
        CutSet::Arcs(a) => a.iter().all(|e| {
            let mut b = a.clone();
            b.remove(e);
            !is_cut(g, s, t, &CutSet::Arcs(b))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::set;
    use proptest::prelude::*;

    fn l(s: &str) -> Label {
        Label::new(s)
    }

    fn digraph(arcs: &[(&str, &str)]) -> MultiDiGraph {
        let mut g = MultiDiGraph::new();
        for (u, v) in arcs {
            g.add_arc(*u, *v, 1);
        }
        g
    }

    fn diamond() -> MultiDiGraph {
        digraph(&[("s", "a"), ("a", "t"), ("s", "b"), ("b", "t")])
    }

    #[test]
    fn vertex_cut_examples() {
        let p = digraph(&[("s", "a"), ("a", "t")]);
        let c = min_vertex_cut(&p, &l("s"), &l("t")).unwrap();
        assert_eq!(c.value, 1);
        assert_eq!(c.paths, vec![vec![l("s"), l("a"), l("t")]]);
        let d = min_vertex_cut(&diamond(), &l("s"), &l("t")).unwrap();
        assert_eq!(d.value, 2);
        assert_eq!(d.paths.len(), 2);
        let st = digraph(&[("s", "t")]);
        assert_eq!(min_vertex_cut(&st, &l("s"), &l("t")), Err(GraphError::NoFiniteCut));
    }

    #[test]
    fn edge_cut_examples() {
        let mut g = MultiDiGraph::new();
        g.add_arc("s", "t", 1);
        assert_eq!(min_edge_cut(&g, &l("s"), &l("t")).unwrap(), 1);
        g.add_arc("s", "t", 3);
        assert_eq!(min_edge_cut(&g, &l("s"), &l("t")).unwrap(), 4);
        let two = digraph(&[("s", "a"), ("a", "t"), ("s", "b"), ("b", "t")]);
        assert_eq!(min_edge_cut(&two, &l("s"), &l("t")).unwrap(), 2);
    }

    #[test]
    fn minimal_cut_examples() {
        let p = digraph(&[("s", "a"), ("a", "t")]);
        assert!(is_minimal_cut(&p, &l("s"), &l("t"), &CutSet::Vertices(set(["a"]))));
        let mut d = diamond();
        assert!(!is_minimal_cut(&d, &l("s"), &l("t"), &CutSet::Vertices(set(["a"]))));
        d.add_vertex("c");
        assert!(!is_minimal_cut(&d, &l("s"), &l("t"), &CutSet::Vertices(set(["a", "b", "c"]))));
        assert!(is_minimal_cut(&d, &l("s"), &l("t"), &CutSet::Vertices(set(["a", "b"]))));
        let arcs: BTreeSet<(Label, Label)> = [(l("s"), l("a")), (l("s"), l("b"))].into_iter().collect();
        assert!(is_minimal_cut(&d, &l("s"), &l("t"), &CutSet::Arcs(arcs)));
    }

    #[test]
    fn identify_examples() {
        let mut tri = MultiGraph::new();
        tri.add_edge("a", "b", 1);
        tri.add_edge("b", "c", 1);
        tri.add_edge("a", "c", 1);
        let h = identify(&tri, &set(["a", "b"]), "v");
        assert_eq!(h.vertex_set(), set(["c", "v"]));
        assert_eq!(h.num_edges(), 1);
        let r = identify(&tri, &set(["a"]), "x");
        assert_eq!(r.num_edges(), 3);
        assert!(r.contains(&l("x")) && !r.contains(&l("a")));
        let all = identify(&tri, &tri.vertex_set(), "z");
        assert_eq!(all.num_vertices(), 1);
        assert_eq!(all.num_edges(), 0);
    }

    #[test]
    fn multiway_examples() {
        let mut star = MultiGraph::new();
        for t in ["x", "y", "z"] {
            star.add_edge("c", t, 1);
        }
        let t = set(["x", "y", "z"]);
        assert!(multiway_cut_check(&star, &t, &set(["c"])));
        assert!(!multiway_cut_check(&star, &t, &LabelSet::new()));
        let mut g = MultiGraph::new();
        g.add_edge("t1", "m1", 1);
        g.add_edge("m1", "t2", 1);
        g.add_edge("t3", "m2", 1);
        g.add_edge("m2", "t4", 1);
        assert!(multiway_cut_check(&g, &set(["t1", "t2", "t3", "t4"]), &set(["m1", "m2"])));
    }

    #[test]
    fn bipartite_and_forest() {
        let mut c4 = MultiGraph::new();
        for (u, v) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")] {
            c4.add_edge(u, v, 1);
        }
        assert!(c4.is_bipartite());
        assert!(!c4.is_forest());
        c4.add_edge("a", "c", 1);
        assert!(!c4.is_bipartite());
        let mut path = MultiGraph::new();
        path.add_edge("a", "b", 1);
        assert!(path.is_forest());
        path.add_edge("a", "b", 1);
        assert!(!path.is_forest());
    }

    fn random_digraph(seed: u64, n: usize) -> MultiDiGraph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = MultiDiGraph::new();
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        for v in &names {
            g.add_vertex(v.as_str());
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && !(u == 0 && v == n - 1) && rng.gen_bool(0.3) {
                    g.add_arc(names[u].as_str(), names[v].as_str(), 1);
                }
            }
        }
        g
    }

    fn brute_min_vertex_cut(g: &MultiDiGraph, s: &Label, t: &Label) -> usize {
        let inner: Vec<Label> = g.vertices().filter(|v| *v != s && *v != t).cloned().collect();
        (0u32..1 << inner.len())
            .filter_map(|m| {
                let x: LabelSet = (0..inner.len()).filter(|i| m >> i & 1 == 1).map(|i| inner[i].clone()).collect();
                (!g.connects(s, t, &x)).then_some(x.len())
            })
            .min()
            .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn vertex_cut_matches_brute_force(seed in 0u64..1_000_000, n in 2usize..9) {
            let g = random_digraph(seed, n);
            let s = l("v0");
            let t = Label::new(format!("v{}", n - 1));
            let c = min_vertex_cut(&g, &s, &t).unwrap();
            prop_assert_eq!(c.value, brute_min_vertex_cut(&g, &s, &t));
            prop_assert_eq!(c.cut.len(), c.value);
            prop_assert!(!g.connects(&s, &t, &c.cut));
            let mut inner_seen = LabelSet::new();
            for p in &c.paths {
                prop_assert_eq!(p.first(), Some(&s));
                prop_assert_eq!(p.last(), Some(&t));
                for w in p.windows(2) {
                    prop_assert!(g.multiplicity(&w[0], &w[1]) > 0);
                }
                for v in &p[1..p.len() - 1] {
                    prop_assert!(inner_seen.insert(v.clone()));
                }
            }
        }

        #[test]
        fn doubling_preserves_edge_cut(seed in 0u64..1_000_000, n in 2usize..7) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = MultiGraph::new();
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            for v in &names { g.add_vertex(v.as_str()); }
            let mut edges = Vec::new();
            for u in 0..n { for v in u + 1..n { if rng.gen_bool(0.4) {
                g.add_edge(names[u].as_str(), names[v].as_str(), 1);
                edges.push((u, v));
            } } }
            let s = l("v0");
            let t = Label::new(format!("v{}", n - 1));
            let d = g.to_directed();
            // brute-force undirected edge cut
            let best = (0u32..1 << edges.len()).filter_map(|m| {
                let mut h = MultiGraph::new();
                for v in &names { h.add_vertex(v.as_str()); }
                for (i, (u, v)) in edges.iter().enumerate() {
                    if m >> i & 1 == 0 { h.add_edge(names[*u].as_str(), names[*v].as_str(), 1); }
                }
                (!h.component_of(&s, &LabelSet::new()).contains(&t)).then_some(m.count_ones() as usize)
            }).min().unwrap();
            prop_assert_eq!(min_edge_cut(&d, &s, &t).unwrap(), best);
        }

        #[test]
        fn identify_preserves_outside_reachability(seed in 0u64..1_000_000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = MultiGraph::new();
            for i in 0..7 { g.add_vertex(format!("v{i}")); }
            for u in 0..7 { for v in u + 1..7 { if rng.gen_bool(0.3) {
                g.add_edge(format!("v{u}"), format!("v{v}"), 1);
            } } }
            let x = set(["v0", "v1"]);
            let h = identify(&g, &x, "X");
            for a in 2..7 { for b in 2..7 {
                let (la, lb) = (Label::new(format!("v{a}")), Label::new(format!("v{b}")));
                if g.component_of(&la, &x).contains(&lb) {
                    prop_assert!(h.component_of(&la, &LabelSet::new()).contains(&lb));
                }
            } }
        }
    }
}
