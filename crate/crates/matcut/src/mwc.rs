//! Independent vertex multiway cut: configurations, strong separators and the
//! recursive branching solver.

use crate::graph::{identify, multiway_cut_check, MultiGraph};
use crate::label::{Label, LabelSet};
use crate::matroid::{LinearMatroid, Matroid, MatroidError};
use crate::repfam::{convolve, rep_family, RepError, SetFamily};
use crate::stcut::{givc_solve_with, GivcOptions, StCutError, StCutInstance};
use std::collections::{BTreeSet, HashMap};

pub const PARTITION_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MwcError {
    #[error("separator is not a minimal multiway cut")]
    NotMinimalSeparator,
    #[error("{0} elements exceed the partition cap")]
    TooLarge(usize),
    #[error(transparent)]
    StCut(#[from] StCutError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

type Result<T> = std::result::Result<T, MwcError>;

#[derive(Debug, Clone)]
pub struct MwcInstance {
    pub graph: MultiGraph,
    pub matroid: LinearMatroid,
    pub terminals: LabelSet,
    pub special: LabelSet,
    pub k: usize,
    pub q: usize,
}

impl MwcInstance {
    pub fn validate(&self) -> Result<()> {
        let m = &self.matroid;
        if !self.terminals.is_subset(&self.special) {
            return Err(MwcError::Invalid("terminals must be special".into()));
        }
        for v in self.graph.vertices() {
            match (self.special.contains(v), m.contains(v)) {
                (true, true) => return Err(MwcError::Invalid(format!("special vertex {v} has a matroid column"))),
                (false, false) => return Err(MwcError::Invalid(format!("vertex {v} has no matroid column"))),
                _ => {}
            }
        }
        if let Some(t) = self.terminals.iter().find(|t| !self.graph.contains(t)) {
            return Err(MwcError::Invalid(format!("terminal {t} is not a vertex")));
        }
        if self.k + self.q > m.rank() {
            return Err(MwcError::Invalid(format!("k + q = {} exceeds rank {}", self.k + self.q, m.rank())));
        }
        Ok(())
    }

    pub fn with_budget(&self, k: usize, q: usize) -> MwcInstance {
        MwcInstance { k, q, ..self.clone() }
    }
}

/// S avoids T and separates every pair of terminals.
pub fn is_multiway_cut(g: &MultiGraph, t: &LabelSet, s: &LabelSet) -> bool {
    s.is_disjoint(t) && multiway_cut_check(g, t, s)
}

pub fn is_minimal_multiway_cut(g: &MultiGraph, t: &LabelSet, s: &LabelSet) -> bool {
    is_multiway_cut(g, t, s)
        && s.iter().all(|v| {
            let mut smaller = s.clone();
            smaller.remove(v);
            !multiway_cut_check(g, t, &smaller)
        })
}

fn shrink_to_minimal(g: &MultiGraph, t: &LabelSet, s: &LabelSet) -> LabelSet {
    let mut s = s.clone();
    for v in s.clone() {
        s.remove(&v);
        if !multiway_cut_check(g, t, &s) {
            s.insert(v);
        }
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Good,
    /// Index of the large component in `components`.
    Bad { large: usize },
}

#[derive(Debug, Clone)]
pub struct Configuration {
    pub separator: LabelSet,
    /// Components of G − S.
    pub components: Vec<LabelSet>,
    pub terminal_components: BTreeSet<usize>,
    /// Components of G[S].
    pub separator_components: Vec<LabelSet>,
    /// For each component of G[S], the adjacent components of G − S.
    pub adjacency: Vec<BTreeSet<usize>>,
    pub classification: Classification,
}

impl Configuration {
    pub fn component_of(&self, v: &Label) -> Option<usize> {
        self.components.iter().position(|c| c.contains(v))
    }
}

pub fn classify_configuration(g: &MultiGraph, t: &LabelSet, s: &LabelSet) -> Result<Configuration> {
    if !is_minimal_multiway_cut(g, t, s) {
        return Err(MwcError::NotMinimalSeparator);
    }
    let components = g.components(s);
    let terminal_components: BTreeSet<usize> =
        (0..components.len()).filter(|&i| !components[i].is_disjoint(t)).collect();
    let separator_components = g.induced(s).components(&LabelSet::new());
    let adjacency: Vec<BTreeSet<usize>> = separator_components
        .iter()
        .map(|sc| {
            let nb = g.neighborhood(sc);
            (0..components.len()).filter(|&i| !components[i].is_disjoint(&nb)).collect()
        })
        .collect();
    let two_each = adjacency
        .iter()
        .all(|a| a.intersection(&terminal_components).count() == 2);
    let large: Vec<usize> = (0..components.len()).filter(|i| adjacency.iter().all(|a| a.contains(i))).collect();
    let pick = large
        .iter()
        .find(|i| terminal_components.contains(i))
        .or(large.first())
        .copied();
    let classification = match pick {
        Some(l) if two_each => Classification::Bad { large: l },
        _ => Classification::Good,
    };
    Ok(Configuration { separator: s.clone(), components, terminal_components, separator_components, adjacency, classification })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Type1,
    Type2,
}

pub fn scenario_type(g: &MultiGraph, t: &LabelSet, s: &LabelSet, k: usize) -> Result<Scenario> {
    let conf = classify_configuration(g, t, s)?;
    scenario_of(g, t, &conf, k)
}

fn scenario_of(g: &MultiGraph, t: &LabelSet, conf: &Configuration, k: usize) -> Result<Scenario> {
    match conf.classification {
        Classification::Good => Ok(Scenario::Type1),
        Classification::Bad { large } => {
            let found = large_component_instance(g, t, &conf.components[large])
                .and_then(|li| cut_among(&li.graph, &li.terminals, &li.candidates, k));
            Ok(if found.is_some() { Scenario::Type2 } else { Scenario::Type1 })
        }
    }
}

/// The large component with every component of G − C_L identified to one
/// vertex. Terminals are the merged vertices holding a terminal plus the
/// terminals inside C_L; only C_L vertices may be cut.
struct LargeInstance {
    graph: MultiGraph,
    terminals: LabelSet,
    candidates: Vec<Label>,
}

fn large_component_instance(g: &MultiGraph, t: &LabelSet, cl: &LabelSet) -> Option<LargeInstance> {
    let mut h = g.clone();
    let mut terminals: LabelSet = cl.intersection(t).cloned().collect();
    for group in g.components(cl) {
        let inside = group.intersection(t).count();
        if inside >= 2 {
            return None;
        }
        let name = merged_name(&group);
        h = identify(&h, &group, name.clone());
        if inside == 1 {
            terminals.insert(name);
        }
    }
    let candidates = cl.iter().filter(|v| !t.contains(*v)).cloned().collect();
    Some(LargeInstance { graph: h, terminals, candidates })
}

fn merged_name(part: &LabelSet) -> Label {
    Label::new(format!("[{}]", part.iter().map(Label::as_str).collect::<Vec<_>>().join("|")))
}

/// Smallest multiway cut of size ≤ k drawn from `candidates`.
fn cut_among(g: &MultiGraph, t: &LabelSet, candidates: &[Label], k: usize) -> Option<LabelSet> {
    for size in 0..=k.min(candidates.len()) {
        let mut found = None;
        crate::matroid::for_each_subset(candidates.len(), size, |ix| {
            if found.is_none() {
                let s: LabelSet = ix.iter().map(|&i| candidates[i].clone()).collect();
                if multiway_cut_check(g, t, &s) {
                    found = Some(s);
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A minimal multiway cut of size ≤ k avoiding T, by exhaustive search.
pub fn find_minimal_multiway_cut(g: &MultiGraph, t: &LabelSet, k: usize) -> Option<LabelSet> {
    let candidates: Vec<Label> = g.vertices().filter(|v| !t.contains(*v)).cloned().collect();
    cut_among(g, t, &candidates, k).map(|s| shrink_to_minimal(g, t, &s))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongSeparator {
    pub separator: LabelSet,
    pub c_s: LabelSet,
    pub c_t: LabelSet,
}

pub fn find_strong_separator(g: &MultiGraph, t: &LabelSet, k: usize) -> Result<Option<StrongSeparator>> {
    let Some(mut s) = find_minimal_multiway_cut(g, t, k) else {
        return Ok(None);
    };
    for _ in 0..=g.num_vertices() {
        let conf = classify_configuration(g, t, &s)?;
        let Classification::Bad { large } = conf.classification else {
            return strong_pair(g, t, &conf).map(Some);
        };
        if scenario_of(g, t, &conf, k)? == Scenario::Type1 {
            return strong_pair(g, t, &conf).map(Some);
        }
        // re-separate inside the large component
        let li = large_component_instance(g, t, &conf.components[large])
            .ok_or_else(|| MwcError::InternalInvariantViolation("type 2 without a large-component instance".into()))?;
        let s1 = cut_among(&li.graph, &li.terminals, &li.candidates, k)
            .ok_or_else(|| MwcError::InternalInvariantViolation("type 2 without a cut in the large component".into()))?;
        if !multiway_cut_check(g, t, &s1) {
            return Err(MwcError::InternalInvariantViolation("large-component cut does not separate T".into()));
        }
        s = shrink_to_minimal(g, t, &s1);
    }
    Err(MwcError::InternalInvariantViolation("strong separator search did not terminate".into()))
}

/// Two terminal components adjacent to the first separator vertex.
fn strong_pair(g: &MultiGraph, t: &LabelSet, conf: &Configuration) -> Result<StrongSeparator> {
    let v = conf.separator.first().ok_or(MwcError::NotMinimalSeparator)?;
    let nb: LabelSet = g.neighbors(v).cloned().collect();
    let adj: Vec<usize> = conf
        .terminal_components
        .iter()
        .copied()
        .filter(|&i| !conf.components[i].is_disjoint(&nb))
        .collect();
    if adj.len() < 2 {
        return Err(MwcError::InternalInvariantViolation(format!("{v} touches fewer than two terminal components")));
    }
    let _ = t;
    Ok(StrongSeparator {
        separator: conf.separator.clone(),
        c_s: conf.components[adj[0]].clone(),
        c_t: conf.components[adj[1]].clone(),
    })
}

/// All set partitions in restricted-growth order.
pub fn enumerate_partitions(x: &LabelSet) -> Result<Vec<Vec<LabelSet>>> {
    if x.len() > PARTITION_CAP {
        return Err(MwcError::TooLarge(x.len()));
    }
    let items: Vec<&Label> = x.iter().collect();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; items.len()];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, items: &[&Label], out: &mut Vec<Vec<LabelSet>>) {
        if i == items.len() {
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            let mut p = vec![LabelSet::new(); blocks];
            for (j, &b) in rgs.iter().enumerate() {
                p[b].insert(items[j].clone());
            }
            out.push(p);
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, items, out);
        }
    }
    if items.is_empty() {
        return Ok(vec![vec![]]);
    }
    rec(0, 0, &mut rgs, &items, &mut out);
    Ok(out)
}

/// One branch of the component guess: cut k1 vertices inside `component`, with
/// `partition` describing which of Reach(t) ∪ {t} stay connected there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guess {
    pub component: LabelSet,
    pub terminal: Label,
    pub reach: LabelSet,
    pub partition: Vec<LabelSet>,
    pub k1: usize,
}

/// Separator vertices reachable from t inside G[C ∪ S].
pub fn reach_set(g: &MultiGraph, sep: &LabelSet, component: &LabelSet, t: &Label) -> LabelSet {
    let keep: LabelSet = component.union(sep).cloned().collect();
    g.induced(&keep)
        .component_of(t, &LabelSet::new())
        .intersection(sep)
        .cloned()
        .collect()
}

/// Guesses for C_t first, then C_s; partitions in canonical order; k1 ascending.
pub fn enumerate_guesses(g: &MultiGraph, t: &LabelSet, strong: &StrongSeparator, k: usize) -> Result<Vec<Guess>> {
    let mut out = Vec::new();
    for comp in [&strong.c_t, &strong.c_s] {
        let terminal = comp
            .intersection(t)
            .next()
            .cloned()
            .ok_or_else(|| MwcError::InternalInvariantViolation("component without a terminal".into()))?;
        let reach = reach_set(g, &strong.separator, comp, &terminal);
        let mut x = reach.clone();
        x.insert(terminal.clone());
        for partition in enumerate_partitions(&x)? {
            for k1 in 1..k {
                out.push(Guess { component: comp.clone(), terminal: terminal.clone(), reach: reach.clone(), partition: partition.clone(), k1 });
            }
        }
    }
    Ok(out)
}

/// |O ∩ C| = k1 and parts stay disconnected in G[C ∪ Reach(t)] − O.
pub fn is_compatible(g: &MultiGraph, guess: &Guess, o: &LabelSet) -> bool {
    if o.intersection(&guess.component).count() != guess.k1 {
        return false;
    }
    let keep: LabelSet = guess.component.union(&guess.reach).filter(|v| !o.contains(*v)).cloned().collect();
    let h = g.induced(&keep);
    guess.partition.iter().enumerate().all(|(i, p)| {
        p.iter().filter(|u| h.contains(u)).all(|u| {
            let c = h.component_of(u, &LabelSet::new());
            guess.partition.iter().enumerate().all(|(j, p2)| i == j || c.is_disjoint(p2))
        })
    })
}

struct SubInstance {
    graph: MultiGraph,
    terminals: LabelSet,
    special: LabelSet,
}

fn identify_parts(g: &MultiGraph, parts: &[LabelSet]) -> (MultiGraph, Vec<Label>) {
    let mut h = g.clone();
    let mut names = Vec::new();
    for p in parts {
        let name = merged_name(p);
        h = identify(&h, p, name.clone());
        names.push(name);
    }
    (h, names)
}

/// Instance 1: the component side with each part identified; parts are terminals.
fn side_instance(g: &MultiGraph, special: &LabelSet, guess: &Guess) -> SubInstance {
    let keep: LabelSet = guess.component.union(&guess.reach).cloned().collect();
    let (h, names) = identify_parts(&g.induced(&keep), &guess.partition);
    let terminals: LabelSet = names.into_iter().collect();
    let special = special.iter().filter(|v| h.contains(v)).cloned().chain(terminals.iter().cloned()).collect();
    SubInstance { graph: h, terminals, special }
}

/// Instance 2: the rest of the graph with the parts identified.
fn rest_instance(g: &MultiGraph, t: &LabelSet, special: &LabelSet, guess: &Guess) -> SubInstance {
    let pt = guess.partition.iter().position(|p| p.contains(&guess.terminal)).expect("t is partitioned");
    let alone = guess.partition[pt].len() == 1;
    let parts: Vec<LabelSet> = guess
        .partition
        .iter()
        .enumerate()
        .filter(|(i, _)| !(alone && *i == pt))
        .map(|(_, p)| p.clone())
        .collect();
    let (h, names) = identify_parts(g, &parts);
    let mut drop: LabelSet = guess.component.clone();
    drop.remove(&guess.terminal);
    if alone {
        drop.insert(guess.terminal.clone());
    }
    let h = h.remove_vertices(&drop);
    let mut terminals: LabelSet = t.iter().filter(|x| **x != guess.terminal).cloned().collect();
    if !alone {
        terminals.insert(merged_name(&guess.partition[pt]));
    }
    let special = special
        .iter()
        .filter(|v| h.contains(v))
        .cloned()
        .chain(names)
        .chain(terminals.iter().cloned())
        .collect();
    SubInstance { graph: h, terminals, special }
}

#[derive(Debug, Clone, Default)]
pub struct MwcStats {
    pub calls: usize,
    pub memo_hits: usize,
    pub max_depth: usize,
    /// Recursive calls whose budget did not drop; must stay 0.
    pub budget_violations: usize,
    pub step2_subproblems: usize,
    pub strong_separators: usize,
    pub case_a_branches: usize,
    pub case_b_guesses: usize,
}

#[derive(Debug, Clone)]
pub struct MwcOptions {
    pub seed: u64,
    pub stcut: GivcOptions,
}

impl Default for MwcOptions {
    fn default() -> Self {
        MwcOptions { seed: crate::stcut::DEFAULT_SEED, stcut: GivcOptions::default() }
    }
}

/// q-representative family of independent multiway cuts of size k, assuming
/// no smaller independent multiway cut exists.
pub fn imwcut(inst: &MwcInstance) -> Result<SetFamily> {
    Ok(imwcut_with(inst, &MwcOptions::default())?.0)
}

pub fn imwcut_with(inst: &MwcInstance, opts: &MwcOptions) -> Result<(SetFamily, MwcStats)> {
    inst.validate()?;
    let mut solver = Solver { m: &inst.matroid, opts, stats: MwcStats::default(), memo: HashMap::new() };
    let mut f = solver.solve(inst.graph.clone(), inst.terminals.clone(), inst.special.clone(), inst.k, inst.q, 0)?;
    // Above the smallest budget the branches can return supersets of smaller cuts.
    f.retain(|x| is_minimal_multiway_cut(&inst.graph, &inst.terminals, x));
    Ok((f, solver.stats))
}

/// Smallest k with a nonempty family, and that family.
pub fn solve_mwc_min_budget(inst: &MwcInstance, opts: &MwcOptions) -> Result<Option<(usize, SetFamily)>> {
    let r = inst.matroid.rank();
    for k in 0..=r {
        let (f, _) = imwcut_with(&inst.with_budget(k, r - k), opts)?;
        if !f.is_empty() {
            return Ok(Some((k, f)));
        }
    }
    Ok(None)
}

struct Solver<'a> {
    m: &'a LinearMatroid,
    opts: &'a MwcOptions,
    stats: MwcStats,
    memo: HashMap<String, SetFamily>,
}

fn memo_key(g: &MultiGraph, t: &LabelSet, special: &LabelSet, k: usize, q: usize) -> String {
    use std::fmt::Write;
    let mut key = format!("{k}/{q};");
    for v in g.vertices() {
        let _ = write!(key, "{v},");
    }
    key.push(';');
    for (u, v, c) in g.edges() {
        let _ = write!(key, "{u}-{v}x{c},");
    }
    key.push(';');
    for v in t {
        let _ = write!(key, "{v},");
    }
    key.push(';');
    for v in special.iter().filter(|v| g.contains(v)) {
        let _ = write!(key, "{v},");
    }
    key
}

impl Solver<'_> {
    fn call(&mut self, g: MultiGraph, t: LabelSet, special: LabelSet, k: usize, q: usize, parent_k: usize, depth: usize) -> Result<SetFamily> {
        if k >= parent_k {
            self.stats.budget_violations += 1;
        }
        self.solve(g, t, special, k, q, depth + 1)
    }

    fn solve(&mut self, g: MultiGraph, t: LabelSet, special: LabelSet, k: usize, q: usize, depth: usize) -> Result<SetFamily> {
        let key = memo_key(&g, &t, &special, k, q);
        if let Some(f) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(f.clone());
        }
        self.stats.calls += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let f = self.solve_fresh(g, t, special, k, q, depth)?;
        self.memo.insert(key, f.clone());
        Ok(f)
    }

    fn solve_fresh(&mut self, mut g: MultiGraph, mut t: LabelSet, special: LabelSet, k: usize, q: usize, depth: usize) -> Result<SetFamily> {
        let m = self.m;
        // Rules 0.a and 0.b, exhaustively
        loop {
            let mut changed = false;
            for c in g.components(&LabelSet::new()) {
                let inside: Vec<Label> = c.intersection(&t).cloned().collect();
                if inside.len() <= 1 {
                    g = g.remove_vertices(&c);
                    for x in inside {
                        t.remove(&x);
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        // first rule 0.c: adjacent terminals
        if t.iter().any(|a| g.neighbors(a).any(|b| t.contains(b))) {
            return Ok(SetFamily::empty(k));
        }
        // second rule 0.c: too many components
        let comps = g.components(&LabelSet::new());
        if comps.len() > k {
            return Ok(SetFamily::empty(k));
        }
        if t.is_empty() {
            return Ok(if k == 0 { SetFamily::unit() } else { SetFamily::empty(k) });
        }
        if k == 0 {
            return Ok(SetFamily::empty(0));
        }
        // Step 1
        if k == 1 {
            let mut f = SetFamily::empty(1);
            for v in g.vertices().filter(|v| !special.contains(*v)) {
                let s = LabelSet::from([v.clone()]);
                if multiway_cut_check(&g, &t, &s) && m.is_independent(&s)? {
                    f.push(s)?;
                }
            }
            return Ok(rep_family(m, &f, q, self.opts.seed)?);
        }
        if t.len() == 2 {
            let mut it = t.iter();
            let (s, tt) = (it.next().unwrap().clone(), it.next().unwrap().clone());
            let inst = StCutInstance { graph: g, matroid: m.clone(), s, t: tt, special, k, q };
            let (f, _) = givc_solve_with(&inst, &self.opts.stcut)?;
            return Ok(rep_family(m, &f, q, self.opts.seed)?);
        }
        // Step 2
        if comps.len() > 1 {
            return self.disconnected(&g, &t, &special, &comps, k, q, depth);
        }
        // Step 3
        let Some(strong) = find_strong_separator(&g, &t, k)? else {
            return Ok(SetFamily::empty(k));
        };
        self.stats.strong_separators += 1;
        // Step 4, case A
        let mut union = SetFamily::empty(k);
        for v in strong.separator.iter().filter(|v| !special.contains(*v)) {
            self.stats.case_a_branches += 1;
            let sub = self.call(g.remove_vertices(&LabelSet::from([v.clone()])), t.clone(), special.clone(), k - 1, q + 1, k, depth)?;
            let with_v = convolve(&sub, &SetFamily::new(1, [LabelSet::from([v.clone()])])?, m)?;
            union.extend(&with_v)?;
        }
        // Step 4, case B
        for guess in enumerate_guesses(&g, &t, &strong, k)? {
            self.stats.case_b_guesses += 1;
            let (k1, k2) = (guess.k1, k - guess.k1);
            let j1 = side_instance(&g, &special, &guess);
            let f1 = self.call(j1.graph, j1.terminals, j1.special, k1, q + k2, k, depth)?;
            if f1.is_empty() {
                continue;
            }
            let j2 = rest_instance(&g, &t, &special, &guess);
            let f2 = self.call(j2.graph, j2.terminals, j2.special, k2, q + k1, k, depth)?;
            let mut both = convolve(&f1, &f2, m)?;
            both.retain(|x| multiway_cut_check(&g, &t, x));
            union.extend(&both)?;
        }
        // Step 5
        let union = union.sorted();
        Ok(rep_family(m, &union, q, self.opts.seed)?)
    }

    #[allow(clippy::too_many_arguments)]
    fn disconnected(
        &mut self,
        g: &MultiGraph,
        t: &LabelSet,
        special: &LabelSet,
        comps: &[LabelSet],
        k: usize,
        q: usize,
        depth: usize,
    ) -> Result<SetFamily> {
        let m = self.m;
        let l = comps.len();
        // every composition k = k_1 + … + k_l with k_i ≥ 1
        let mut cache: HashMap<(usize, usize), SetFamily> = HashMap::new();
        let mut union = SetFamily::empty(k);
        let mut parts = vec![1usize; l];
        let mut compositions = Vec::new();
        compositions_of(k, l, &mut parts, 0, &mut compositions);
        for comp in compositions {
            let mut acc = SetFamily::unit();
            for (i, &ki) in comp.iter().enumerate() {
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((i, ki)) {
                    self.stats.step2_subproblems += 1;
                    let gi = g.induced(&comps[i]);
                    let ti: LabelSet = t.intersection(&comps[i]).cloned().collect();
                    let qi: LabelSet = special.intersection(&comps[i]).cloned().collect();
                    let f = self.call(gi, ti, qi, ki, q + k - ki, k, depth)?;
                    e.insert(f);
                }
                acc = convolve(&acc, &cache[&(i, ki)], m)?;
                if acc.is_empty() {
                    break;
                }
            }
            union.extend(&acc)?;
        }
        let union = union.sorted();
        Ok(rep_family(m, &union, q, self.opts.seed)?)
    }
}

fn compositions_of(k: usize, l: usize, parts: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
    let used: usize = parts[..i].iter().sum();
    if i + 1 == l {
        if k > used {
            parts[i] = k - used;
            out.push(parts.clone());
        }
        return;
    }
    let remaining_min = l - i - 1;
    for ki in 1..=k.saturating_sub(used + remaining_min) {
        parts[i] = ki;
        compositions_of(k, l, parts, i + 1, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmatrix::FieldPrime;
    use crate::label::set;

    fn l(s: &str) -> Label {
        Label::new(s)
    }

    fn graph(edges: &[(&str, &str)]) -> MultiGraph {
        let mut g = MultiGraph::new();
        for (u, v) in edges {
            g.add_edge(*u, *v, 1);
        }
        g
    }

    fn star3() -> MultiGraph {
        graph(&[("c", "t1"), ("c", "t2"), ("c", "t3")])
    }

    #[test]
    fn partitions_bell() {
        assert_eq!(enumerate_partitions(&set(["a"])).unwrap().len(), 1);
        assert_eq!(enumerate_partitions(&set(["a", "b", "c"])).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(&set(["a", "b", "c", "d"])).unwrap().len(), 15);
        let nine: LabelSet = (0..9).map(|i| Label::new(format!("x{i}"))).collect();
        assert!(matches!(enumerate_partitions(&nine), Err(MwcError::TooLarge(9))));
    }

    #[test]
    fn compositions() {
        let mut out = Vec::new();
        compositions_of(4, 2, &mut vec![1; 2], 0, &mut out);
        assert_eq!(out, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn minimal_cut_examples() {
        let t = set(["t1", "t2", "t3"]);
        assert_eq!(find_minimal_multiway_cut(&star3(), &t, 1), Some(set(["c"])));
        let adj = graph(&[("t1", "t2"), ("t2", "t3")]);
        for k in 0..4 {
            assert_eq!(find_minimal_multiway_cut(&adj, &t, k), None);
        }
    }

    #[test]
    fn classify_examples() {
        let t = set(["t1", "t2", "t3"]);
        let c = classify_configuration(&star3(), &t, &set(["c"])).unwrap();
        assert_eq!(c.classification, Classification::Good);
        // t3's side touches both separator vertices
        let g = graph(&[("t1", "a"), ("t2", "b"), ("t3", "c"), ("a", "x"), ("b", "x"), ("c", "x")]);
        let c = classify_configuration(&g, &t, &set(["a", "b"])).unwrap();
        assert!(matches!(c.classification, Classification::Bad { .. }));
        assert!(matches!(classify_configuration(&g, &t, &set(["a", "b", "c"])), Err(MwcError::NotMinimalSeparator)));
    }

    #[test]
    fn bad_configuration() {
        // t3 sits inside the large component; a and b each touch it and one other terminal
        let g = graph(&[("t1", "a"), ("a", "x"), ("x", "t3"), ("t2", "b"), ("b", "y"), ("y", "t3")]);
        let t = set(["t1", "t2", "t3"]);
        let s = set(["a", "b"]);
        let c = classify_configuration(&g, &t, &s).unwrap();
        assert!(matches!(c.classification, Classification::Bad { .. }));
        // {x, y} inside the large component is a 2-cut
        assert_eq!(scenario_type(&g, &t, &s, 2).unwrap(), Scenario::Type2);
        assert_eq!(scenario_type(&g, &t, &s, 1).unwrap(), Scenario::Type1);
        let strong = find_strong_separator(&g, &t, 2).unwrap().unwrap();
        let conf = classify_configuration(&g, &t, &strong.separator).unwrap();
        assert!(conf.classification == Classification::Good || scenario_of(&g, &t, &conf, 2).unwrap() == Scenario::Type1);
    }

    #[test]
    fn imwcut_examples() {
        let fp = FieldPrime::new(1_000_000_007).unwrap();
        let inst = MwcInstance {
            graph: star3(),
            matroid: LinearMatroid::free(fp, ["c"]),
            terminals: set(["t1", "t2", "t3"]),
            special: set(["t1", "t2", "t3"]),
            k: 1,
            q: 0,
        };
        assert_eq!(imwcut(&inst).unwrap().sets(), &[set(["c"])]);
        let adj = MwcInstance {
            graph: graph(&[("t1", "t2"), ("t2", "c"), ("c", "t3")]),
            ..inst.clone()
        };
        assert!(imwcut(&adj).unwrap().is_empty());
        let _ = l("x");
    }

    fn random_mwc(seed: u64, n: usize, terminals: usize, density: u32, rank: usize, prime: u64) -> MwcInstance {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let names: Vec<String> = (0..n).map(|i| if i < terminals { format!("t{i}") } else { format!("v{i}") }).collect();
        let mut g = MultiGraph::new();
        for v in &names {
            g.add_vertex(v.as_str());
        }
        for a in 0..n {
            for b in a + 1..n {
                if b >= terminals && rng.gen_range(0..100) < density {
                    g.add_edge(names[a].as_str(), names[b].as_str(), 1);
                }
            }
        }
        let t: LabelSet = names[..terminals].iter().map(Label::new).collect();
        let labels: Vec<Label> = names[terminals..].iter().map(Label::new).collect();
        let p = FieldPrime::new(prime).unwrap();
        let m = LinearMatroid::new(crate::ffmatrix::random_matrix(rank, labels.len(), p, seed), labels).unwrap();
        MwcInstance { graph: g, matroid: m, special: t.clone(), terminals: t, k: 0, q: 0 }
    }

    fn brute(inst: &MwcInstance) -> (Option<usize>, SetFamily) {
        let ground: Vec<Label> = inst.graph.vertices().filter(|v| !inst.special.contains(*v)).cloned().collect();
        let mut smallest = None;
        let mut found = SetFamily::empty(inst.k);
        for size in 0..=inst.k {
            crate::matroid::for_each_subset(ground.len(), size, |ix| {
                let x: LabelSet = ix.iter().map(|&j| ground[j].clone()).collect();
                if multiway_cut_check(&inst.graph, &inst.terminals, &x) && inst.matroid.is_independent(&x).unwrap() {
                    smallest.get_or_insert(size);
                    if size == inst.k {
                        found.push(x).unwrap();
                    }
                }
            });
        }
        (smallest, found)
    }

    #[test]
    fn imwcut_matches_brute_force() {
        let mut checked = 0;
        for seed in 0..60u64 {
            let n = 7 + (seed % 3) as usize;
            let base = random_mwc(seed, n, 3 + (seed % 2) as usize, 40, 4, if seed % 2 == 0 { 3 } else { 1_000_003 });
            let r = base.matroid.rank();
            for k in 1..=r {
                let inst = base.with_budget(k, r - k);
                let (smallest, full) = brute(&inst);
                if smallest != Some(k) {
                    continue;
                }
                let (out, stats) = imwcut_with(&inst, &MwcOptions::default()).unwrap();
                assert!(out.iter().all(|x| full.contains(x)), "seed {seed} k {k}");
                assert!(out.iter().all(|x| is_minimal_multiway_cut(&inst.graph, &inst.terminals, x)));
                assert!(crate::repfam::verify_rep(&inst.matroid, &out, &full, r - k).unwrap(), "seed {seed} k {k}");
                assert!(out.len() as u128 <= crate::matroid::binom(r, k));
                assert_eq!(stats.budget_violations, 0);
                checked += 1;
            }
        }
        assert!(checked >= 20, "only {checked} instances met the precondition");
    }

    #[test]
    fn strong_separator_property() {
        let mut checked = 0;
        for seed in 100..160u64 {
            let inst = random_mwc(seed, 8, 3 + (seed % 2) as usize, 45, 4, 1_000_003);
            let (g, t) = (&inst.graph, &inst.terminals);
            if !g.is_connected() {
                continue;
            }
            for k in 2..=4 {
                let Some(strong) = find_strong_separator(g, t, k).unwrap() else { continue };
                let guesses = enumerate_guesses(g, t, &strong, k).unwrap();
                let (_, all) = brute(&inst.with_budget(k, 0));
                for o in all.iter() {
                    let hit = !o.is_disjoint(&strong.separator)
                        || [&strong.c_s, &strong.c_t].iter().any(|c| (1..k).contains(&o.intersection(c).count()));
                    assert!(hit, "seed {seed} k {k} O {o:?} S {strong:?}");
                    if o.is_disjoint(&strong.separator) {
                        assert!(guesses.iter().any(|gs| is_compatible(g, gs, o)), "seed {seed}: no compatible guess");
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}
