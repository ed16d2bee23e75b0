//! Brute-force reference solvers, matroid axiom checks, random instances and
//! the oracle lower-bound family.

use crate::ffmatrix::{random_matrix, FieldPrime};
use crate::graph::{multiway_cut_check, MultiDiGraph, MultiGraph};
use crate::label::{Label, LabelSet};
use crate::matroid::{for_each_subset, LinearMatroid, Matroid, MatroidError, OracleMatroid};
use crate::mwc::MwcInstance;
use crate::repfam::{RepError, SetFamily};
use crate::stcut::StCutInstance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

pub const BRUTE_MAX_VERTICES: usize = 14;
pub const BRUTE_MAX_K: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance too large for brute force: {n} vertices, k = {k}")]
    TooLarge { n: usize, k: usize },
    #[error("instance lacks {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    StCut,
    MultiwayCut,
    Fvs,
    Oct,
}

/// A graph with a linear matroid on its non-special vertices, plus whichever
/// of s/t, terminals and budget the problem needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub directed: bool,
    pub vertices: LabelSet,
    pub edges: Vec<(Label, Label, usize)>,
    pub st: Option<(Label, Label)>,
    pub terminals: LabelSet,
    pub special: LabelSet,
    pub matroid: LinearMatroid,
    pub k: usize,
    pub q: Option<usize>,
}

impl Instance {
    pub fn undirected(&self) -> MultiGraph {
        let mut g = MultiGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone());
        }
        for (u, v, c) in &self.edges {
            g.add_edge(u.clone(), v.clone(), *c);
        }
        g
    }

    /// Arcs as given when directed, both orientations otherwise.
    pub fn digraph(&self) -> MultiDiGraph {
        if !self.directed {
            return self.undirected().to_directed();
        }
        let mut g = MultiDiGraph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone());
        }
        for (u, v, c) in &self.edges {
            g.add_arc(u.clone(), v.clone(), *c);
        }
        g
    }

    /// Budget q, defaulting to rank − k.
    pub fn q_or_default(&self) -> usize {
        self.q.unwrap_or_else(|| self.matroid.rank().saturating_sub(self.k))
    }

    pub fn stcut(&self) -> Result<StCutInstance, OracleError> {
        let (s, t) = self.st.clone().ok_or(OracleError::Missing("an st line"))?;
        Ok(StCutInstance {
            graph: self.undirected(),
            matroid: self.matroid.clone(),
            s,
            t,
            special: self.special.clone(),
            k: self.k,
            q: self.q_or_default(),
        })
    }

    pub fn mwc(&self) -> Result<MwcInstance, OracleError> {
        if self.terminals.is_empty() {
            return Err(OracleError::Missing("a terminals line"));
        }
        Ok(MwcInstance {
            graph: self.undirected(),
            matroid: self.matroid.clone(),
            terminals: self.terminals.clone(),
            special: self.special.clone(),
            k: self.k,
            q: self.q_or_default(),
        })
    }

    /// Vertices that may be deleted.
    pub fn ground(&self) -> Vec<Label> {
        self.vertices.iter().filter(|v| !self.special.contains(*v)).cloned().collect()
    }
}

/// Does deleting `z` solve the instance (ignoring independence and size)?
pub fn is_feasible(kind: ProblemKind, inst: &Instance, z: &LabelSet) -> Result<bool, OracleError> {
    Ok(match kind {
        ProblemKind::StCut => {
            let (s, t) = inst.st.as_ref().ok_or(OracleError::Missing("an st line"))?;
            !z.contains(s) && !z.contains(t) && !inst.digraph().connects(s, t, z)
        }
        ProblemKind::MultiwayCut => z.is_disjoint(&inst.terminals) && multiway_cut_check(&inst.undirected(), &inst.terminals, z),
        ProblemKind::Fvs => inst.undirected().remove_vertices(z).is_forest(),
        ProblemKind::Oct => inst.undirected().remove_vertices(z).is_bipartite(),
    })
}

fn needs_minimality(kind: ProblemKind) -> bool {
    matches!(kind, ProblemKind::StCut | ProblemKind::MultiwayCut)
}

fn check_size(inst: &Instance) -> Result<(), OracleError> {
    if inst.vertices.len() > BRUTE_MAX_VERTICES || inst.k > BRUTE_MAX_K {
        return Err(OracleError::TooLarge { n: inst.vertices.len(), k: inst.k });
    }
    Ok(())
}

/// Every independent feasible set of size exactly k, minimal for the cut problems.
pub fn brute_family(kind: ProblemKind, inst: &Instance) -> Result<SetFamily, OracleError> {
    check_size(inst)?;
    let ground = inst.ground();
    let mut out = SetFamily::empty(inst.k);
    let mut err = None;
    for_each_subset(ground.len(), inst.k, |ix| {
        if err.is_some() {
            return;
        }
        let z: LabelSet = ix.iter().map(|&i| ground[i].clone()).collect();
        let ok = (|| -> Result<bool, OracleError> {
            if !is_feasible(kind, inst, &z)? || !inst.matroid.is_independent(&z)? {
                return Ok(false);
            }
            if needs_minimality(kind) {
                for v in &z {
                    let mut smaller = z.clone();
                    smaller.remove(v);
                    if is_feasible(kind, inst, &smaller)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })();
        match ok {
            Ok(true) => {
                if let Err(e) = out.push(z) {
                    err = Some(e.into());
                }
            }
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Smallest independent feasible set of size ≤ k.
pub fn brute_min_solution(kind: ProblemKind, inst: &Instance) -> Result<Option<LabelSet>, OracleError> {
    check_size(inst)?;
    let ground = inst.ground();
    for size in 0..=inst.k.min(ground.len()) {
        let mut found = None;
        let mut err = None;
        for_each_subset(ground.len(), size, |ix| {
            if found.is_some() || err.is_some() {
                return;
            }
            let z: LabelSet = ix.iter().map(|&i| ground[i].clone()).collect();
            match is_feasible(kind, inst, &z).and_then(|f| Ok(f && inst.matroid.is_independent(&z)?)) {
                Ok(true) => found = Some(z),
                Ok(false) => {}
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Exhaustive independence-axiom check over sets of size ≤ `max_size`.
pub fn check_matroid_axioms(m: &dyn Matroid, max_size: usize) -> Result<bool, MatroidError> {
    let ground = m.ground();
    if !m.is_independent(&LabelSet::new())? {
        return Ok(false);
    }
    if ground.len() <= BITMASK_AXIOM_LIMIT {
        check_axioms_bitmask(m, &ground, max_size)
    } else {
        check_axioms_pool(m, &ground, max_size)
    }
}

fn check_axioms_pool(m: &dyn Matroid, ground: &[Label], max_size: usize) -> Result<bool, MatroidError> {
    for size in 1..=max_size.min(ground.len()) {
        let mut ok = true;
        let mut err = None;
        for_each_subset(ground.len(), size, |ix| {
            if !ok || err.is_some() {
                return;
            }
            let x: LabelSet = ix.iter().map(|&i| ground[i].clone()).collect();
            let r = (|| -> Result<bool, MatroidError> {
                if !m.is_independent(&x)? {
                    return Ok(true);
                }
                // hereditary
                for e in &x {
                    let mut y = x.clone();
                    y.remove(e);
                    if !m.is_independent(&y)? {
                        return Ok(false);
                    }
                }
                if size >= max_size {
                    return Ok(true);
                }
                // augmentation: no independent (size+1)-set inside X ∪ D(X),
                // D(X) being the elements that cannot extend X
                let mut pool: Vec<Label> = x.iter().cloned().collect();
                for e in ground.iter().filter(|e| !x.contains(*e)) {
                    let mut y = x.clone();
                    y.insert(e.clone());
                    if !m.is_independent(&y)? {
                        pool.push(e.clone());
                    }
                }
                let mut bad = false;
                let mut inner_err = None;
                for_each_subset(pool.len(), size + 1, |jx| {
                    if bad || inner_err.is_some() {
                        return;
                    }
                    let y: LabelSet = jx.iter().map(|&j| pool[j].clone()).collect();
                    match m.is_independent(&y) {
                        Ok(true) => bad = true,
                        Ok(false) => {}
                        Err(e) => inner_err = Some(e),
                    }
                });
                if let Some(e) = inner_err {
                    return Err(e);
                }
                Ok(!bad)
            })();
            match r {
                Ok(v) => ok &= v,
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeParams {
    pub n: usize,
    /// Edge probability in percent.
    pub density: u32,
    pub rank: usize,
    pub terminals: usize,
    pub k: usize,
    pub prime: u64,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams { n: 8, density: 35, rank: 3, terminals: 3, k: 1, prime: 1_000_000_007 }
    }
}

/// Seeded random instance: G(n, density), Q and T chosen per kind, and a
/// full-row-rank matrix over the remaining vertices.
pub fn random_instance(kind: ProblemKind, seed: u64, params: SizeParams) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<Label> = (0..params.n).map(|i| Label::new(format!("v{i}"))).collect();
    let (st, terminals, special): (Option<(Label, Label)>, LabelSet, LabelSet) = match kind {
        ProblemKind::StCut if params.n >= 2 => {
            let (s, t) = (names[0].clone(), names[1].clone());
            (Some((s.clone(), t.clone())), LabelSet::new(), LabelSet::from([s, t]))
        }
        ProblemKind::MultiwayCut => {
            let t: LabelSet = names.iter().take(params.terminals).cloned().collect();
            (None, t.clone(), t)
        }
        _ => (None, LabelSet::new(), LabelSet::new()),
    };
    let mut edges = Vec::new();
    for a in 0..params.n {
        for b in a + 1..params.n {
            let both_special = special.contains(&names[a]) && special.contains(&names[b]);
            if !both_special && rng.gen_range(0..100) < params.density {
                edges.push((names[a].clone(), names[b].clone(), 1));
            }
        }
    }
    let ground: Vec<Label> = names.iter().filter(|v| !special.contains(*v)).cloned().collect();
    let p = FieldPrime::new(params.prime).expect("prime modulus");
    let rank = params.rank.min(ground.len());
    let mut mseed = rng.gen::<u64>();
    let matroid = loop {
        let m = LinearMatroid::new(random_matrix(rank, ground.len(), p, mseed), ground.clone()).expect("matching labels");
        if m.rank() == rank {
            break m;
        }
        mseed = mseed.wrapping_add(1);
    };
    Instance {
        directed: false,
        vertices: names.into_iter().collect(),
        edges,
        st,
        terminals,
        special,
        matroid,
        k: params.k,
        q: None,
    }
}

const BITMASK_AXIOM_LIMIT: usize = 20;

/// Same check with one oracle call per subset: augmentation fails at X exactly
/// when X ∪ D(X) holds an independent set larger than X.
fn check_axioms_bitmask(m: &dyn Matroid, ground: &[Label], max_size: usize) -> Result<bool, MatroidError> {
    let n = ground.len();
    let top = (max_size + 1).min(n);
    let full = 1usize << n;
    let to_set = |mask: usize| -> LabelSet { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ground[i].clone()).collect() };
    let mut ind = vec![false; full];
    // rank[A] = largest independent subset of A of size ≤ top
    let mut rank = vec![0u8; full];
    for mask in 0..full {
        let size = mask.count_ones() as usize;
        if size <= top {
            ind[mask] = m.is_independent(&to_set(mask))?;
        }
        rank[mask] = if ind[mask] {
            size as u8
        } else {
            (0..n).filter(|i| mask >> i & 1 == 1).map(|i| rank[mask & !(1 << i)]).max().unwrap_or(0)
        };
    }
    for x in 0..full {
        let size = x.count_ones() as usize;
        if size > max_size || !ind[x] {
            continue;
        }
        if (0..n).any(|i| x >> i & 1 == 1 && !ind[x & !(1 << i)]) {
            return Ok(false);
        }
        if size >= max_size {
            continue;
        }
        let pool = (0..n).filter(|i| x >> i & 1 == 0 && !ind[x | 1 << i]).fold(x, |acc, i| acc | 1 << i);
        if rank[pool] as usize > size {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lower-bound graph with a hidden independent cut W and its oracle.
#[derive(Debug, Clone)]
pub struct LowerBoundInstance {
    pub p: usize,
    pub q: usize,
    pub graph: MultiGraph,
    pub s: Label,
    pub t: Label,
    pub hidden: LabelSet,
    pub matroid: OracleMatroid,
    counter: Arc<AtomicUsize>,
}

impl LowerBoundInstance {
    pub fn queries(&self) -> usize {
        self.counter.load(Ordering::SeqCst)
    }

    pub fn a(&self, i: usize, j: usize) -> Label {
        Label::new(format!("a{i}_{j}"))
    }

    pub fn b(&self, i: usize, j: usize) -> Label {
        Label::new(format!("b{i}_{j}"))
    }

    /// The cut ∪ᵢ {a^i_{jᵢ}, b^i_{jᵢ}}, indices 1-based.
    pub fn cut(&self, js: &[usize]) -> LabelSet {
        js.iter().enumerate().flat_map(|(i, &j)| [self.a(i + 1, j), self.b(i + 1, j)]).collect()
    }

    /// Every index vector in lexicographic order.
    pub fn placements(&self) -> Vec<Vec<usize>> {
        all_placements(self.p, self.q)
    }
}

pub fn all_placements(p: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v| (1..=q).map(move |j| v.iter().copied().chain([j]).collect()))
            .collect();
    }
    out
}

/// Parts (i, is_a, j) of an a/b vertex name.
fn parse_ab(v: &Label) -> Option<(usize, bool, usize)> {
    let s = v.as_str();
    let is_a = s.starts_with('a');
    if !is_a && !s.starts_with('b') {
        return None;
    }
    let (i, j) = s[1..].split_once('_')?;
    Some((i.parse().ok()?, is_a, j.parse().ok()?))
}

/// Independence in M_W: below rank everything, above nothing, at rank only W
/// and the sets that are not of cut form.
fn mw_independent(p: usize, hidden: &LabelSet, x: &LabelSet) -> bool {
    let k = 2 * p;
    if x.len() != k {
        return x.len() < k;
    }
    if x == hidden {
        return true;
    }
    let mut a_idx: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
    let mut b_idx: Vec<Vec<usize>> = vec![Vec::new(); p + 1];
    for v in x {
        let Some((i, is_a, j)) = parse_ab(v) else { return false };
        if is_a {
            a_idx[i].push(j);
        } else {
            b_idx[i].push(j);
        }
    }
    (1..=p).any(|i| {
        a_idx[i].len() >= 2 || b_idx[i].len() >= 2 || a_idx[i].iter().any(|h| b_idx[i].iter().any(|j| j != h))
    })
}

pub fn gen_gpq(p: usize, q: usize, hidden: &[usize]) -> LowerBoundInstance {
    assert!(p >= 1 && q >= 1 && hidden.len() == p && hidden.iter().all(|j| (1..=q).contains(j)));
    let a = |i: usize, j: usize| Label::new(format!("a{i}_{j}"));
    let b = |i: usize, j: usize| Label::new(format!("b{i}_{j}"));
    let (s, t) = (Label::new("s"), Label::new("t"));
    let mut g = MultiGraph::new();
    g.add_vertex(s.clone());
    g.add_vertex(t.clone());
    for i in 1..=p {
        for j in 1..=q {
            g.add_vertex(a(i, j));
            g.add_vertex(b(i, j));
        }
        g.add_edge(s.clone(), a(i, 1), 1);
        g.add_edge(s.clone(), b(i, 1), 1);
        g.add_edge(t.clone(), a(i, q), 1);
        g.add_edge(t.clone(), b(i, q), 1);
        for j in 1..q {
            for x in [a(i, j), b(i, j)] {
                g.add_edge(x.clone(), a(i, j + 1), 1);
                g.add_edge(x, b(i, j + 1), 1);
            }
        }
    }
    let hidden_set: LabelSet = hidden.iter().enumerate().flat_map(|(i, &j)| [a(i + 1, j), b(i + 1, j)]).collect();
    let counter = Arc::new(AtomicUsize::new(0));
    let ground: Vec<Label> = g.vertices().filter(|v| **v != s && **v != t).cloned().collect();
    let (c2, h2) = (counter.clone(), hidden_set.clone());
    let matroid = OracleMatroid::new(ground, 2 * p, move |x| {
        c2.fetch_add(1, Ordering::SeqCst);
        mw_independent(p, &h2, x)
    });
    LowerBoundInstance { p, q, graph: g, s, t, hidden: hidden_set, matroid, counter }
}

/// A way of finding the independent minimum cut through the oracle.
pub trait ProbeStrategy {
    fn solve(&self, inst: &LowerBoundInstance) -> Option<LabelSet>;
}

/// Query every cut-form set in order until one is independent.
pub struct ExhaustiveCuts;

/// As `ExhaustiveCuts`, but answer the last candidate without asking.
pub struct SkipLast;

/// Answers after asking all but the last two candidates; must guess.
pub struct SkipTwo;

fn query_prefix(inst: &LowerBoundInstance, skip: usize) -> Option<LabelSet> {
    let cands = inst.placements();
    let asked = cands.len().saturating_sub(skip);
    for js in &cands[..asked] {
        let x = inst.cut(js);
        if inst.matroid.is_independent(&x).unwrap_or(false) {
            return Some(x);
        }
    }
    cands.get(asked).map(|js| inst.cut(js))
}

impl ProbeStrategy for ExhaustiveCuts {
    fn solve(&self, inst: &LowerBoundInstance) -> Option<LabelSet> {
        query_prefix(inst, 0)
    }
}

impl ProbeStrategy for SkipLast {
    fn solve(&self, inst: &LowerBoundInstance) -> Option<LabelSet> {
        query_prefix(inst, 1)
    }
}

impl ProbeStrategy for SkipTwo {
    fn solve(&self, inst: &LowerBoundInstance) -> Option<LabelSet> {
        query_prefix(inst, 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub placements: usize,
    pub worst_queries: usize,
    /// Hidden placements the strategy answered wrongly.
    pub wrong: Vec<Vec<usize>>,
}

/// Run a strategy against every hidden placement.
pub fn query_count_probe(strategy: &dyn ProbeStrategy, p: usize, q: usize) -> ProbeReport {
    let placements = all_placements(p, q);
    let mut worst = 0;
    let mut wrong = Vec::new();
    for js in &placements {
        let inst = gen_gpq(p, q, js);
        let answer = strategy.solve(&inst);
        worst = worst.max(inst.queries());
        if answer.as_ref() != Some(&inst.hidden) {
            wrong.push(js.clone());
        }
    }
    ProbeReport { placements: placements.len(), worst_queries: worst, wrong }
}
