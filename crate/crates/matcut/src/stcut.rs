//! Independent vertex (s,t)-cut: reduction phases, flow augmentation and the
//! colouring DP over critical vertices.

use crate::graph::{cut_values_without, min_vertex_cut, GraphError, MultiDiGraph, MultiGraph};
use crate::label::{Label, LabelSet};
use crate::matroid::{binom, LinearMatroid, Matroid, MatroidError};
use crate::repfam::{rep_family, RepError, SetFamily};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

pub const DEFAULT_AUGMENT_CAP: usize = 20;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StCutError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("augmenter input has {n} vertices, cap is {cap}")]
    InstanceTooLarge { n: usize, cap: usize },
    #[error("budget {k} is not the minimum cut value {min}")]
    NotMinimumBudget { k: usize, min: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, StCutError>;

/// Undirected vertex-cut instance. `special` is Q and must contain s and t.
#[derive(Debug, Clone)]
pub struct StCutInstance {
    pub graph: MultiGraph,
    pub matroid: LinearMatroid,
    pub s: Label,
    pub t: Label,
    pub special: LabelSet,
    pub k: usize,
    pub q: usize,
}

/// Directed vertex-cut instance.
#[derive(Debug, Clone)]
pub struct DirectedInstance {
    pub graph: MultiDiGraph,
    pub matroid: LinearMatroid,
    pub s: Label,
    pub t: Label,
    pub special: LabelSet,
    pub k: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedArc {
    pub name: Label,
    pub tail: Label,
    pub head: Label,
}

/// Directed arc-cut instance; solutions are sets of arc names.
#[derive(Debug, Clone)]
pub struct ArcInstance {
    pub vertices: LabelSet,
    pub arcs: Vec<NamedArc>,
    pub matroid: LinearMatroid,
    pub s: Label,
    pub t: Label,
    /// Arc names that may not be cut (v-edges of Q).
    pub special: LabelSet,
    /// Arc names that are v-edges, i.e. stand for a vertex of the same name.
    pub v_edges: LabelSet,
    pub k: usize,
    pub q: usize,
}

impl ArcInstance {
    pub fn digraph(&self) -> MultiDiGraph {
        let mut g = MultiDiGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone());
        }
        for a in &self.arcs {
            g.add_arc(a.tail.clone(), a.head.clone(), 1);
        }
        g
    }
}

fn check_common(
    vertices: &LabelSet,
    m: &LinearMatroid,
    s: &Label,
    t: &Label,
    special: &LabelSet,
    k: usize,
    q: usize,
) -> Result<()> {
    for x in [s, t] {
        if !vertices.contains(x) {
            return Err(StCutError::Invalid(format!("{x} is not a vertex")));
        }
        if !special.contains(x) {
            return Err(StCutError::Invalid(format!("{x} must be special")));
        }
    }
    if s == t {
        return Err(StCutError::Invalid("s = t".into()));
    }
    for v in vertices {
        let inq = special.contains(v);
        if inq && m.contains(v) {
            return Err(StCutError::Invalid(format!("special vertex {v} is in the matroid ground set")));
        }
        if !inq && !m.contains(v) {
            return Err(StCutError::Invalid(format!("vertex {v} has no matroid column")));
        }
    }
    if k + q > m.rank() {
        return Err(StCutError::Invalid(format!("k + q = {} exceeds rank {}", k + q, m.rank())));
    }
    Ok(())
}

impl StCutInstance {
    pub fn validate(&self) -> Result<()> {
        check_common(&self.graph.vertex_set(), &self.matroid, &self.s, &self.t, &self.special, self.k, self.q)
    }

    pub fn with_budget(&self, k: usize, q: usize) -> StCutInstance {
        StCutInstance { k, q, ..self.clone() }
    }
}

impl DirectedInstance {
    pub fn validate(&self) -> Result<()> {
        check_common(&self.graph.vertex_set(), &self.matroid, &self.s, &self.t, &self.special, self.k, self.q)
    }
}

/// Phase I: both orientations of every edge.
pub fn phase1(inst: &StCutInstance) -> DirectedInstance {
    DirectedInstance {
        graph: inst.graph.to_directed(),
        matroid: inst.matroid.clone(),
        s: inst.s.clone(),
        t: inst.t.clone(),
        special: inst.special.clone(),
        k: inst.k,
        q: inst.q,
    }
}

pub fn in_name(v: &Label) -> Label {
    Label::new(format!("{v}.in"))
}

pub fn out_name(v: &Label) -> Label {
    Label::new(format!("{v}.out"))
}

fn arc_name(prefix: &str, u: &Label, v: &Label, j: usize, mult: usize) -> Label {
    if mult == 1 {
        Label::new(format!("{prefix}{u}>{v}"))
    } else {
        Label::new(format!("{prefix}{u}>{v}#{j}"))
    }
}

/// Phase II: vertex v becomes the v-edge (v.in, v.out) named v; arc (u,v) becomes the
/// e-edge (u.out, v.in) with a zero column. Source is s.out, sink is t.in.
pub fn phase2(inst: &DirectedInstance) -> Result<ArcInstance> {
    let g = &inst.graph;
    let mut vertices = LabelSet::new();
    let mut arcs = Vec::new();
    let mut v_edges = LabelSet::new();
    for v in g.vertices() {
        vertices.insert(in_name(v));
        vertices.insert(out_name(v));
        arcs.push(NamedArc { name: v.clone(), tail: in_name(v), head: out_name(v) });
        v_edges.insert(v.clone());
    }
    let mut e_edges = Vec::new();
    for (u, v, c) in g.arcs() {
        for j in 0..c {
            let name = arc_name("", u, v, j, c);
            arcs.push(NamedArc { name: name.clone(), tail: out_name(u), head: in_name(v) });
            e_edges.push(name);
        }
    }
    let special: LabelSet = inst.special.clone();
    let spec = arcs
        .iter()
        .filter(|a| !special.contains(&a.name))
        .map(|a| (a.name.clone(), v_edges.contains(&a.name).then_some(&a.name)));
    let matroid = inst.matroid.derive(spec)?;
    Ok(ArcInstance {
        vertices,
        arcs,
        matroid,
        s: out_name(&inst.s),
        t: in_name(&inst.t),
        special,
        v_edges,
        k: inst.k,
        q: inst.q,
    })
}

/// Map arc solutions back to vertex solutions (v-edge name = vertex name).
pub fn pull_back_phase2(inst2: &ArcInstance, fam: &SetFamily) -> Result<SetFamily> {
    let mut out = SetFamily::empty(fam.member_size());
    for s in fam {
        if let Some(e) = s.iter().find(|e| !inst2.v_edges.contains(*e)) {
            return Err(StCutError::InternalInvariantViolation(format!("solution uses e-edge {e}")));
        }
        out.push(s.clone())?;
    }
    Ok(out)
}

/// A multiset of arcs (tail, head, multiplicity) added by an augmentation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArcMultiset(pub Vec<(Label, Label, usize)>);

impl ArcMultiset {
    pub fn total(&self) -> usize {
        self.0.iter().map(|a| a.2).sum()
    }
}

/// A(R): k+1 arcs s→x for x ∈ R∖{s}, k+1 arcs y→t for y ∉ R, y ≠ t.
pub fn bipartition_arcs(vertices: &LabelSet, r: &LabelSet, s: &Label, t: &Label, k: usize) -> ArcMultiset {
    let mut a = Vec::new();
    for v in vertices {
        if v == s || v == t {
            continue;
        }
        if r.contains(v) {
            a.push((s.clone(), v.clone(), k + 1));
        } else {
            a.push((v.clone(), t.clone(), k + 1));
        }
    }
    ArcMultiset(a)
}

/// Produces augmenting arc sets such that every minimal arc cut of size ≤ k is
/// a minimum cut of G + A for some member A.
pub trait Augmenter {
    fn family(&self, g: &MultiDiGraph, s: &Label, t: &Label, k: usize) -> Result<Vec<ArcMultiset>>;
}

/// All 2^(n-2) bipartitions.
#[derive(Debug, Clone, Copy)]
pub struct BipartitionAugmenter {
    pub cap: usize,
}

impl Default for BipartitionAugmenter {
    fn default() -> Self {
        BipartitionAugmenter { cap: DEFAULT_AUGMENT_CAP }
    }
}

impl Augmenter for BipartitionAugmenter {
    fn family(&self, g: &MultiDiGraph, s: &Label, t: &Label, k: usize) -> Result<Vec<ArcMultiset>> {
        augment_family(g, s, t, k, self.cap)
    }
}

/// Complete bipartition family: one branch per R with s ∈ R, t ∉ R.
pub fn augment_family(g: &MultiDiGraph, s: &Label, t: &Label, k: usize, cap: usize) -> Result<Vec<ArcMultiset>> {
    let n = g.num_vertices();
    if n > cap {
        return Err(StCutError::InstanceTooLarge { n, cap });
    }
    let verts = g.vertex_set();
    let free: Vec<&Label> = verts.iter().filter(|v| *v != s && *v != t).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u64..1 << free.len() {
        let mut r = LabelSet::from([s.clone()]);
        r.extend((0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i].clone()));
        out.push(bipartition_arcs(&verts, &r, s, t, k));
    }
    Ok(out)
}

/// Only the bipartitions that can carry a cut: R is reachable from s inside
/// G[R] and at most k arcs leave R. Every other branch of the complete family
/// has no cut of size ≤ k whose source side is R, so nothing is lost.
#[derive(Debug, Clone, Copy)]
pub struct ReachClosedAugmenter {
    pub cap: usize,
}

impl Default for ReachClosedAugmenter {
    fn default() -> Self {
        ReachClosedAugmenter { cap: DEFAULT_AUGMENT_CAP }
    }
}

impl Augmenter for ReachClosedAugmenter {
    fn family(&self, g: &MultiDiGraph, s: &Label, t: &Label, k: usize) -> Result<Vec<ArcMultiset>> {
        let n = g.num_vertices();
        if n > self.cap {
            return Err(StCutError::InstanceTooLarge { n, cap: self.cap });
        }
        let verts = g.vertex_set();
        Ok(source_sides(g, s, t, k).iter().map(|r| bipartition_arcs(&verts, r, s, t, k)).collect())
    }
}

/// Source sides R (reach-closed from s) with at most k arcs leaving R.
pub fn source_sides(g: &MultiDiGraph, s: &Label, t: &Label, k: usize) -> Vec<LabelSet> {
    struct Ctx<'a> {
        g: &'a MultiDiGraph,
        k: usize,
        out: Vec<LabelSet>,
    }
    fn weight_into(g: &MultiDiGraph, from: &LabelSet, v: &Label) -> usize {
        from.iter().map(|u| g.multiplicity(u, v)).sum()
    }
    fn rec(c: &mut Ctx, r: &mut LabelSet, x: &mut LabelSet, b: usize) {
        if b > c.k {
            return;
        }
        let next = r
            .iter()
            .flat_map(|u| c.g.out_neighbors(u))
            .filter(|v| !r.contains(*v) && !x.contains(*v))
            .min()
            .cloned();
        let Some(v) = next else {
            c.out.push(r.clone());
            return;
        };
        // include v
        let add = x.iter().map(|w| c.g.multiplicity(&v, w)).sum::<usize>();
        r.insert(v.clone());
        rec(c, r, x, b + add);
        r.remove(&v);
        // exclude v
        let add = weight_into(c.g, r, &v);
        x.insert(v.clone());
        rec(c, r, x, b + add);
        x.remove(&v);
    }
    let mut ctx = Ctx { g, k, out: Vec::new() };
    let mut r = LabelSet::from([s.clone()]);
    let mut x = LabelSet::from([t.clone()]);
    let b0 = g.multiplicity(s, t);
    rec(&mut ctx, &mut r, &mut x, b0);
    ctx.out
}

/// Phase III: G2 + A, added arcs get zero columns.
pub fn phase3(inst2: &ArcInstance, a: &ArcMultiset) -> Result<ArcInstance> {
    let mut out = inst2.clone();
    let mut new_labels = Vec::new();
    for (u, v, c) in &a.0 {
        for j in 0..*c {
            let name = arc_name("+", u, v, j, *c);
            out.arcs.push(NamedArc { name: name.clone(), tail: u.clone(), head: v.clone() });
            new_labels.push(name);
        }
    }
    out.matroid = inst2.matroid.zero_pad(&new_labels)?;
    Ok(out)
}

pub fn copy_name(v: &Label, i: usize) -> Label {
    Label::new(format!("{v}~{i}"))
}

/// Phase IV: each vertex other than s,t gets k+1 copies with zero columns, each
/// arc becomes an e-vertex of the same name wired from all tail copies to all head copies.
pub fn phase4(inst3: &ArcInstance, k: usize) -> Result<DirectedInstance> {
    let copies = |v: &Label| -> Vec<Label> {
        if *v == inst3.s || *v == inst3.t {
            vec![v.clone()]
        } else {
            (0..=k).map(|i| copy_name(v, i)).collect()
        }
    };
    let mut g = MultiDiGraph::new();
    let mut copy_labels = Vec::new();
    for v in &inst3.vertices {
        for c in copies(v) {
            if c != inst3.s && c != inst3.t {
                copy_labels.push(c.clone());
            }
            g.add_vertex(c);
        }
    }
    for a in &inst3.arcs {
        g.add_vertex(a.name.clone());
        for c in copies(&a.tail) {
            g.add_arc(c, a.name.clone(), 1);
        }
        for c in copies(&a.head) {
            g.add_arc(a.name.clone(), c, 1);
        }
    }
    let mut special = inst3.special.clone();
    special.insert(inst3.s.clone());
    special.insert(inst3.t.clone());
    let matroid = inst3.matroid.zero_pad(&copy_labels)?;
    Ok(DirectedInstance { graph: g, matroid, s: inst3.s.clone(), t: inst3.t.clone(), special, k, q: inst3.q })
}

/// Map e-vertex solutions back to arc solutions (same names).
pub fn pull_back_phase4(inst3: &ArcInstance, fam: &SetFamily) -> Result<SetFamily> {
    let names: LabelSet = inst3.arcs.iter().map(|a| a.name.clone()).collect();
    let mut out = SetFamily::empty(fam.member_size());
    for s in fam {
        if let Some(e) = s.iter().find(|e| !names.contains(*e)) {
            return Err(StCutError::InternalInvariantViolation(format!("solution uses copy vertex {e}")));
        }
        out.push(s.clone())?;
    }
    Ok(out)
}

/// Vertices v ∉ {s,t} whose deletion lowers the minimum cut to k−1.
pub fn critical_vertices(g: &MultiDiGraph, s: &Label, t: &Label, k: usize) -> Result<LabelSet> {
    let c = min_vertex_cut(g, s, t)?;
    if c.value != k {
        return Err(StCutError::NotMinimumBudget { k, min: c.value });
    }
    critical_from_paths(g, s, t, k, &c.paths)
}

fn critical_from_paths(g: &MultiDiGraph, s: &Label, t: &Label, k: usize, paths: &[Vec<Label>]) -> Result<LabelSet> {
    let mut out = LabelSet::new();
    if k == 0 {
        return Ok(out);
    }
    // a critical vertex lies on every maximum path packing, in particular on this one
    let candidates: Vec<Label> = paths.iter().flat_map(|p| p[1..p.len() - 1].iter().cloned()).collect();
    let values = cut_values_without(g, s, t, &candidates)?;
    out.extend(candidates.into_iter().zip(values).filter(|(_, c)| c + 1 == k).map(|(v, _)| v));
    Ok(out)
}

/// Is there a u→v path whose internal vertices are all non-critical?
pub fn connected_to(g: &MultiDiGraph, critical: &LabelSet, u: &Label, v: &Label) -> bool {
    let mut seen = LabelSet::new();
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(x) = queue.pop_front() {
        for w in g.out_neighbors(&x) {
            if w == v {
                return true;
            }
            if !critical.contains(w) && seen.insert(w.clone()) {
                queue.push_back(w.clone());
            }
        }
    }
    false
}

/// Per-path indices (a_1, …, a_k), 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixVector(pub Vec<usize>);

/// Critical vertices laid out along a fixed packing of k disjoint paths.
#[derive(Debug, Clone)]
pub struct CriticalLayout {
    pub s: Label,
    pub t: Label,
    pub k: usize,
    pub critical: LabelSet,
    /// layers[i][j-1] = v_{i,j}
    pub layers: Vec<Vec<Label>>,
    /// position of each critical vertex: (path, 1-based index)
    pub pos: BTreeMap<Label, (usize, usize)>,
    /// conn[x] = critical vertices (or s,t) that x is connected to
    pub conn: BTreeMap<Label, LabelSet>,
    /// non-critical vertices reachable from x through non-critical vertices
    pub reach_free: BTreeMap<Label, LabelSet>,
}

impl CriticalLayout {
    pub fn build(g: &MultiDiGraph, s: &Label, t: &Label, k: usize, paths: &[Vec<Label>]) -> Result<Self> {
        if paths.len() != k {
            return Err(StCutError::InternalInvariantViolation(format!("{} witness paths for k = {k}", paths.len())));
        }
        let critical = critical_from_paths(g, s, t, k, paths)?;
        let mut layers = Vec::with_capacity(k);
        let mut pos = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            let l: Vec<Label> = p.iter().filter(|v| critical.contains(*v)).cloned().collect();
            for (j, v) in l.iter().enumerate() {
                pos.insert(v.clone(), (i, j + 1));
            }
            if l.is_empty() {
                return Err(StCutError::InternalInvariantViolation(format!("path {i} has no critical vertex")));
            }
            layers.push(l);
        }
        if pos.len() != critical.len() {
            return Err(StCutError::InternalInvariantViolation("critical vertex off the witness paths".into()));
        }
        let mut conn = BTreeMap::new();
        let mut reach_free = BTreeMap::new();
        let terminals: Vec<Label> = critical.iter().cloned().chain([s.clone(), t.clone()]).collect();
        for x in &terminals {
            let mut hit = LabelSet::new();
            let mut free = LabelSet::new();
            let mut queue = VecDeque::from([x.clone()]);
            while let Some(u) = queue.pop_front() {
                for w in g.out_neighbors(&u) {
                    if critical.contains(w) || w == s || w == t {
                        hit.insert(w.clone());
                    } else if free.insert(w.clone()) {
                        queue.push_back(w.clone());
                    }
                }
            }
            conn.insert(x.clone(), hit);
            reach_free.insert(x.clone(), free);
        }
        Ok(CriticalLayout { s: s.clone(), t: t.clone(), k, critical, layers, pos, conn, reach_free })
    }

    pub fn z(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// v_{i,j} with v_{i,0} = s and v_{i,z_i+1} = t.
    pub fn vertex(&self, i: usize, j: usize) -> &Label {
        if j == 0 {
            &self.s
        } else if j > self.layers[i].len() {
            &self.t
        } else {
            &self.layers[i][j - 1]
        }
    }

    pub fn connected(&self, x: &Label, y: &Label) -> bool {
        self.conn.get(x).is_some_and(|c| c.contains(y))
    }

    fn in_prefix(&self, v: &Label, a: &PrefixVector) -> bool {
        if *v == self.s {
            return true;
        }
        if *v == self.t {
            return false;
        }
        let (i, j) = self.pos[v];
        j <= a.0[i]
    }

    /// Vertex set of the prefix subgraph G[a].
    pub fn prefix_subgraph(&self, g: &MultiDiGraph, a: &PrefixVector) -> LabelSet {
        let mut out: LabelSet = self.pos.keys().filter(|v| self.in_prefix(v, a)).cloned().collect();
        out.insert(self.s.clone());
        for u in g.vertices() {
            if self.critical.contains(u) || *u == self.s || *u == self.t {
                continue;
            }
            // every critical vertex connected to u must be inside
            let ok = self
                .reach_free
                .iter()
                .filter(|(_, free)| free.contains(u))
                .all(|(x, _)| self.in_prefix(x, a));
            if ok {
                out.insert(u.clone());
            }
        }
        out
    }

    /// Last two layers of G[a]: v_{i,j} with a_i − 1 ≤ j ≤ a_i (s included when a_i = 1).
    pub fn last_two_layers(&self, a: &PrefixVector) -> LabelSet {
        let mut out = LabelSet::new();
        for (i, &ai) in a.0.iter().enumerate() {
            out.insert(self.vertex(i, ai - 1).clone());
            out.insert(self.vertex(i, ai).clone());
        }
        out
    }

    fn connected_outside(&self, x: &Label, a: &PrefixVector) -> bool {
        self.conn[x].iter().any(|y| *y != self.s && !self.in_prefix(y, a))
    }

    /// (a) the sequence runs from (1,…,1) to z, (b) each step advances one path
    /// by one, (c) below the last two layers no critical vertex of a prefix is
    /// connected to anything outside it.
    pub fn check_sequence(&self, seq: &[PrefixVector]) -> std::result::Result<(), String> {
        let z = self.z();
        if seq.first().map(|a| a.0.iter().all(|&x| x == 1)) != Some(true) {
            return Err("(a): sequence does not start at (1,…,1)".into());
        }
        if seq.last().map(|a| a.0 == z) != Some(true) {
            return Err("(a): sequence does not end at (z_1,…,z_k)".into());
        }
        for w in seq.windows(2) {
            let diff: Vec<i64> = w[1].0.iter().zip(&w[0].0).map(|(x, y)| *x as i64 - *y as i64).collect();
            if diff.iter().filter(|&&d| d == 1).count() != 1 || diff.iter().any(|&d| d != 0 && d != 1) {
                return Err(format!("(b): step {:?} -> {:?}", w[0].0, w[1].0));
            }
        }
        for a in seq {
            let last2 = self.last_two_layers(a);
            for (v, &(i, j)) in &self.pos {
                if j <= a.0[i] && !last2.contains(v) && self.connected_outside(v, a) {
                    return Err(format!("(c): {v} at {:?} is connected outside", a.0));
                }
            }
        }
        Ok(())
    }
}

/// Sequence a¹ … aᵖ built greedily: advance the first path whose
/// second-to-last-layer vertex has no connection out of the prefix.
pub fn decomposition_sequence(
    g: &MultiDiGraph,
    s: &Label,
    t: &Label,
    k: usize,
    witness_paths: &[Vec<Label>],
) -> Result<Vec<PrefixVector>> {
    let layout = CriticalLayout::build(g, s, t, k, witness_paths)?;
    sequence_for(&layout)
}

fn sequence_for(layout: &CriticalLayout) -> Result<Vec<PrefixVector>> {
    let z = layout.z();
    let mut a = PrefixVector(vec![1; layout.k]);
    let mut seq = vec![a.clone()];
    while a.0 != z {
        let pick = (0..layout.k).find(|&i| {
            a.0[i] < z[i] && {
                let v = layout.vertex(i, a.0[i] - 1);
                !layout.connected_outside(v, &a)
            }
        });
        let Some(i) = pick else {
            return Err(StCutError::InternalInvariantViolation(format!("no decomposition step from {:?}", a.0)));
        };
        a.0[i] += 1;
        seq.push(a.clone());
    }
    Ok(seq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Silver,
    Tan,
    Black,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DvcStats {
    pub critical: usize,
    pub sequence_len: usize,
    pub decomposition_ok: bool,
    pub max_state_width: usize,
    pub max_entry: usize,
    pub entries: usize,
}

#[derive(Debug, Clone)]
pub struct DvcOptions {
    /// Trim table entries with representative families.
    pub trim: bool,
    pub seed: u64,
}

impl Default for DvcOptions {
    fn default() -> Self {
        DvcOptions { trim: true, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone)]
pub struct DvcRun {
    pub family: SetFamily,
    pub stats: DvcStats,
    pub sequence: Vec<PrefixVector>,
}

/// Representative family of independent minimum vertex (s,t)-cuts.
pub fn dvc_rep_family(inst: &DirectedInstance) -> Result<SetFamily> {
    Ok(dvc_run(inst, &DvcOptions::default())?.family)
}

/// The colouring DP. Critical vertices are added one at a time in the order the
/// decomposition sequence dictates. A table key is the colouring of every processed
/// vertex that still matters: the last processed vertex of each path and every
/// processed vertex with a connection to or from an unprocessed critical vertex.
pub fn dvc_run(inst: &DirectedInstance, opts: &DvcOptions) -> Result<DvcRun> {
    let g = &inst.graph;
    let (s, t) = (&inst.s, &inst.t);
    let cut = match min_vertex_cut(g, s, t) {
        Ok(c) => c,
        Err(GraphError::NoFiniteCut) => {
            return Ok(DvcRun { family: SetFamily::empty(inst.k), stats: DvcStats::default(), sequence: vec![] })
        }
        Err(e) => return Err(e.into()),
    };
    if cut.value != inst.k {
        return Err(StCutError::NotMinimumBudget { k: inst.k, min: cut.value });
    }
    let k = inst.k;
    let m = &inst.matroid;
    let r = m.rank();
    if k == 0 {
        return Ok(DvcRun { family: SetFamily::unit(), stats: DvcStats { decomposition_ok: true, ..Default::default() }, sequence: vec![] });
    }
    if k > r {
        return Ok(DvcRun { family: SetFamily::empty(k), stats: DvcStats::default(), sequence: vec![] });
    }
    let layout = CriticalLayout::build(g, s, t, k, &cut.paths)?;
    let seq = sequence_for(&layout)?;
    layout.check_sequence(&seq).map_err(StCutError::InternalInvariantViolation)?;
    let mut stats = DvcStats {
        critical: layout.critical.len(),
        sequence_len: seq.len(),
        decomposition_ok: true,
        ..Default::default()
    };

    // insertion order
    let mut order: Vec<Label> = (0..k).map(|i| layout.vertex(i, 1).clone()).collect();
    for w in seq.windows(2) {
        let i = (0..k).find(|&i| w[1].0[i] != w[0].0[i]).unwrap();
        order.push(layout.vertex(i, w[1].0[i]).clone());
    }
    let step_of: HashMap<&Label, usize> = order.iter().enumerate().map(|(h, v)| (v, h)).collect();
    // live[h] = key vertices after step h
    let mut live: Vec<Vec<Label>> = Vec::with_capacity(order.len());
    let mut last_on_path: Vec<Option<Label>> = vec![None; k];
    for (h, v) in order.iter().enumerate() {
        last_on_path[layout.pos[v].0] = Some(v.clone());
        let mut l: BTreeSet<Label> = last_on_path.iter().flatten().cloned().collect();
        for x in &order[..=h] {
            let later = |y: &Label| step_of.get(y).is_some_and(|&hy| hy > h);
            let touches = layout.conn[x].iter().any(later)
                || order[h + 1..].iter().any(|y| layout.connected(y, x));
            if touches {
                l.insert(x.clone());
            }
        }
        live.push(l.into_iter().collect());
    }

    type Key = (Vec<Color>, usize);
    let mut table: BTreeMap<Key, Vec<LabelSet>> = BTreeMap::new();
    table.insert((vec![], 0), vec![LabelSet::new()]);
    let mut prev_live: Vec<Label> = vec![];
    for (h, v) in order.iter().enumerate() {
        let (pi, _) = layout.pos[v];
        let prev_last = order[..h].iter().rev().find(|x| layout.pos[*x].0 == pi);
        let can_black = !inst.special.contains(v) && m.contains(v);
        let mut next: BTreeMap<Key, Vec<LabelSet>> = BTreeMap::new();
        for ((state, i), fam) in &table {
            let color_of = |x: &Label| -> Color {
                let p = prev_live.binary_search(x).expect("key vertex");
                state[p]
            };
            let last_color = prev_last.map_or(Color::Silver, &color_of);
            let options: &[Color] = if last_color == Color::Silver {
                if can_black {
                    &[Color::Silver, Color::Black]
                } else {
                    &[Color::Silver]
                }
            } else {
                &[Color::Tan]
            };
            for &cv in options {
                if cv == Color::Tan && layout.connected(s, v) {
                    continue;
                }
                if cv == Color::Silver && layout.connected(v, t) {
                    continue;
                }
                let clash = prev_live.iter().zip(state).any(|(x, &cx)| {
                    (cx == Color::Silver && cv == Color::Tan && layout.connected(x, v))
                        || (cv == Color::Silver && cx == Color::Tan && layout.connected(v, x))
                });
                if clash {
                    continue;
                }
                let new_state: Vec<Color> = live[h]
                    .iter()
                    .map(|y| if y == v { cv } else { color_of(y) })
                    .collect();
                let ni = i + usize::from(cv == Color::Black);
                let entry = next.entry((new_state, ni)).or_default();
                for b in fam {
                    if cv == Color::Black {
                        let mut nb = b.clone();
                        nb.insert(v.clone());
                        if m.is_independent(&nb)? {
                            entry.push(nb);
                        }
                    } else {
                        entry.push(b.clone());
                    }
                }
            }
        }
        next.retain(|_, f| !f.is_empty());
        for ((_, i), fam) in next.iter_mut() {
            fam.sort();
            fam.dedup();
            if opts.trim && fam.len() > 1 {
                let f = SetFamily::new(*i, fam.drain(..))?;
                *fam = rep_family(m, &f, r - *i, opts.seed ^ (h as u64) << 8)?.into_sets();
                debug_assert!(fam.len() as u128 <= binom(r, *i));
            }
            stats.max_entry = stats.max_entry.max(fam.len());
        }
        stats.entries += next.len();
        stats.max_state_width = stats.max_state_width.max(live[h].len());
        table = next;
        prev_live = live[h].clone();
    }
    // every path must carry its black vertex
    let lasts: Vec<Label> = (0..k).map(|i| layout.layers[i].last().unwrap().clone()).collect();
    let mut union = SetFamily::empty(k);
    for ((state, i), fam) in &table {
        if *i != k {
            continue;
        }
        let done = lasts.iter().all(|x| {
            let p = prev_live.binary_search(x).expect("last vertex is a key");
            state[p] != Color::Silver
        });
        if done {
            for b in fam {
                union.push(b.clone())?;
            }
        }
    }
    let union = union.sorted();
    let family = if opts.trim { rep_family(m, &union, r - k, opts.seed)? } else { union };
    Ok(DvcRun { family, stats, sequence: seq })
}

/// Counts valid colourings (t tan) straight from the definition by trying every
/// choice of one black critical vertex per path.
pub fn count_valid_colorings(g: &MultiDiGraph, s: &Label, t: &Label) -> Result<usize> {
    let cut = min_vertex_cut(g, s, t)?;
    let k = cut.value;
    if k == 0 {
        return Ok(1);
    }
    let layout = CriticalLayout::build(g, s, t, k, &cut.paths)?;
    let z = layout.z();
    let mut count = 0;
    let mut b = vec![1usize; k];
    loop {
        if coloring_is_valid(g, &layout, &b) {
            count += 1;
        }
        let mut i = 0;
        while i < k && b[i] == z[i] {
            b[i] = 1;
            i += 1;
        }
        if i == k {
            break;
        }
        b[i] += 1;
    }
    Ok(count)
}

fn coloring_is_valid(g: &MultiDiGraph, layout: &CriticalLayout, b: &[usize]) -> bool {
    let mut col: BTreeMap<Label, Color> = BTreeMap::new();
    col.insert(layout.s.clone(), Color::Silver);
    col.insert(layout.t.clone(), Color::Tan);
    for (v, &(i, j)) in &layout.pos {
        let c = match j.cmp(&b[i]) {
            std::cmp::Ordering::Less => Color::Silver,
            std::cmp::Ordering::Equal => Color::Black,
            std::cmp::Ordering::Greater => Color::Tan,
        };
        col.insert(v.clone(), c);
    }
    // no silver critical connected to a tan critical
    for (x, cx) in &col {
        if *cx != Color::Silver {
            continue;
        }
        if layout.conn[x].iter().any(|y| col[y] == Color::Tan) {
            return false;
        }
    }
    // non-critical colours must be well defined
    for u in g.vertices() {
        if col.contains_key(u) {
            continue;
        }
        let from_silver = col
            .iter()
            .any(|(x, c)| *c == Color::Silver && layout.reach_free[x].contains(u));
        let to_tan = col
            .iter()
            .any(|(y, c)| *c == Color::Tan && reaches_through_free(g, layout, u, y));
        if from_silver && to_tan {
            return false;
        }
    }
    true
}

fn reaches_through_free(g: &MultiDiGraph, layout: &CriticalLayout, u: &Label, y: &Label) -> bool {
    let blocked: LabelSet = layout
        .critical
        .iter()
        .chain([&layout.s, &layout.t])
        .filter(|x| *x != y)
        .cloned()
        .collect();
    g.reachable(u, &blocked).contains(y)
}

#[derive(Debug, Clone)]
pub struct GivcOptions {
    pub cap: usize,
    pub seed: u64,
    /// Use the complete 2^(n-2) bipartition family instead of the pruned one.
    pub complete_augmenter: bool,
}

impl Default for GivcOptions {
    fn default() -> Self {
        GivcOptions { cap: DEFAULT_AUGMENT_CAP, seed: DEFAULT_SEED, complete_augmenter: false }
    }
}

#[derive(Debug, Clone, Default)]
pub struct GivcReport {
    pub branches: usize,
    pub dp_runs: usize,
    pub dvc: Vec<DvcStats>,
}

/// Minimum cut of G2 + A(R) when it is at most k: exactly the arcs leaving R.
/// R is read back from A as s plus the heads of the arcs out of s.
fn branch_cut_value(a2: &ArcInstance, a: &ArcMultiset) -> Option<usize> {
    let mut r = LabelSet::from([a2.s.clone()]);
    r.extend(a.0.iter().filter(|(u, _, _)| *u == a2.s).map(|(_, v, _)| v.clone()));
    let leaving = a2.arcs.iter().filter(|x| r.contains(&x.tail) && !r.contains(&x.head)).count();
    (leaving <= a2.k).then_some(leaving)
}

/// Representative family of independent (s,t)-cuts of size k, assuming none smaller exists.
pub fn givc_solve(inst: &StCutInstance) -> Result<SetFamily> {
    Ok(givc_solve_with(inst, &GivcOptions::default())?.0)
}

pub fn givc_solve_with(inst: &StCutInstance, opts: &GivcOptions) -> Result<(SetFamily, GivcReport)> {
    inst.validate()?;
    let mut report = GivcReport::default();
    let k = inst.k;
    if inst.graph.multiplicity(&inst.s, &inst.t) > 0 {
        return Ok((SetFamily::empty(k), report));
    }
    if k == 0 {
        let sep = !inst.graph.component_of(&inst.s, &LabelSet::new()).contains(&inst.t);
        let f = if sep { SetFamily::unit() } else { SetFamily::empty(0) };
        return Ok((f, report));
    }
    let r = inst.matroid.rank();
    let d1 = phase1(inst);
    let a2 = phase2(&d1)?;
    let g2 = a2.digraph();
    let branches = if opts.complete_augmenter {
        BipartitionAugmenter { cap: opts.cap }.family(&g2, &a2.s, &a2.t, k)?
    } else {
        ReachClosedAugmenter { cap: opts.cap }.family(&g2, &a2.s, &a2.t, k)?
    };
    report.branches = branches.len();
    let mut union = SetFamily::empty(k);
    for a in &branches {
        if branch_cut_value(&a2, a) != Some(k) {
            continue;
        }
        let a3 = phase3(&a2, a)?;
        let d4 = phase4(&a3, k)?;
        let run = dvc_run(&d4, &DvcOptions { trim: true, seed: opts.seed })?;
        report.dp_runs += 1;
        report.dvc.push(run.stats);
        let f3 = pull_back_phase4(&a3, &run.family)?;
        let f1 = pull_back_phase2(&a2, &f3)?;
        union.extend(&f1)?;
    }
    let union = union.sorted();
    let out = rep_family(&inst.matroid, &union, r - k, opts.seed)?;
    Ok((out, report))
}

/// Smallest k with a nonempty family, and that family.
pub fn solve_min_budget(inst: &StCutInstance, opts: &GivcOptions) -> Result<Option<(usize, SetFamily)>> {
    if inst.graph.multiplicity(&inst.s, &inst.t) > 0 {
        return Ok(None);
    }
    let lower = min_vertex_cut(&inst.graph.to_directed(), &inst.s, &inst.t)?.value;
    for k in lower..=inst.matroid.rank() {
        let i = inst.with_budget(k, inst.matroid.rank() - k);
        let (f, _) = givc_solve_with(&i, opts)?;
        if !f.is_empty() {
            return Ok(Some((k, f)));
        }
    }
    Ok(None)
}
