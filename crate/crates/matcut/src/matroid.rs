//! Linear, oracle and partition matroids over labelled ground sets.

use crate::ffmatrix::{random_matrix, FFMatrix, FieldError, FieldPrime};
use crate::label::{Label, LabelSet};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("unknown ground element {0}")]
    UnknownElement(Label),
    #[error("set is not independent")]
    NotIndependent,
    #[error("truncation to {k} exceeds rank {rank}")]
    RankExceeded { k: usize, rank: usize },
    #[error("duplicate label {0}")]
    DuplicateLabel(Label),
    #[error("partition blocks overlap at {0}")]
    OverlappingBlocks(Label),
    #[error("truncation failed verification after retries")]
    TruncationFailed,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Independence oracle access shared by linear and oracle matroids.
pub trait Matroid {
    fn ground(&self) -> Vec<Label>;
    fn contains(&self, e: &Label) -> bool;
    fn is_independent(&self, s: &LabelSet) -> Result<bool, MatroidError>;
    /// Upper bound on the size of an independent set.
    fn rank_bound(&self) -> usize;
}

/// Column matroid of a matrix over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct LinearMatroid {
    matrix: FFMatrix,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    rank: usize,
}

impl fmt::Debug for LinearMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearMatroid")
            .field("rows", &self.matrix.rows())
            .field("labels", &self.labels)
            .field("rank", &self.rank)
            .finish()
    }
}

impl LinearMatroid {
    pub fn new(matrix: FFMatrix, labels: Vec<Label>) -> Result<Self, MatroidError> {
        if labels.len() != matrix.cols() {
            return Err(FieldError::DimensionMismatch(format!(
                "{} labels for {} columns",
                labels.len(),
                matrix.cols()
            ))
            .into());
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        let rank = matrix.rank();
        Ok(LinearMatroid { matrix, labels, index, rank })
    }

    /// Free matroid: identity columns.
    pub fn free<I, S>(p: FieldPrime, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Label>,
    {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let m = FFMatrix::identity(p, labels.len());
        LinearMatroid::new(m, labels).expect("identity matroid is well formed")
    }

    pub fn matrix(&self) -> &FFMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn modulus(&self) -> FieldPrime {
        self.matrix.modulus()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn column_index(&self, e: &Label) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn column(&self, e: &Label) -> Option<Vec<u64>> {
        self.column_index(e).map(|i| self.matrix.column(i))
    }

    pub fn indices(&self, s: &LabelSet) -> Result<Vec<usize>, MatroidError> {
        s.iter()
            .map(|e| self.column_index(e).ok_or_else(|| MatroidError::UnknownElement(e.clone())))
            .collect()
    }

    pub fn is_independent_idx(&self, cols: &[usize]) -> bool {
        cols.len() <= self.rank && self.matrix.columns_independent(cols)
    }

    /// Contraction M/S: S-columns become unit vectors, then their rows and columns go.
    pub fn contract(&self, s: &LabelSet) -> Result<LinearMatroid, MatroidError> {
        let cols = self.indices(s)?;
        if !self.is_independent_idx(&cols) {
            return Err(MatroidError::NotIndependent);
        }
        if cols.is_empty() {
            return Ok(self.clone());
        }
        let mut m = self.matrix.clone();
        let pivots = m.rref_in_place_on(&cols);
        debug_assert_eq!(pivots.len(), cols.len());
        let keep_rows: Vec<usize> = (pivots.len()..m.rows()).collect();
        let keep_cols: Vec<usize> = (0..m.cols()).filter(|c| !cols.contains(c)).collect();
        let reduced = m.select_rows(&keep_rows).select_columns(&keep_cols);
        let labels = keep_cols.iter().map(|&c| self.labels[c].clone()).collect();
        LinearMatroid::new(reduced, labels)
    }

    /// Random truncation to rank k, retried on failed verification.
    pub fn truncate(&self, k: usize, seed: u64) -> Result<LinearMatroid, MatroidError> {
        if k > self.rank {
            return Err(MatroidError::RankExceeded { k, rank: self.rank });
        }
        if k == self.rank && self.matrix.rows() == k {
            return Ok(self.clone());
        }
        for attempt in 0..5u64 {
            let r = random_matrix(k, self.matrix.rows(), self.modulus(), seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)));
            let t = LinearMatroid::new(r.mul(&self.matrix)?, self.labels.clone())?;
            if verify_truncation(self, &t, k) {
                return Ok(t);
            }
        }
        Err(MatroidError::TruncationFailed)
    }

    /// New columns, all zero.
    pub fn zero_pad(&self, new_labels: &[Label]) -> Result<LinearMatroid, MatroidError> {
        let mut seen: BTreeSet<&Label> = BTreeSet::new();
        for l in new_labels {
            if self.index.contains_key(l) || !seen.insert(l) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        let zeros = FFMatrix::zeros(self.modulus(), self.matrix.rows(), new_labels.len());
        let matrix = self.matrix.hconcat(&zeros)?;
        let mut labels = self.labels.clone();
        labels.extend(new_labels.iter().cloned());
        let mut index = self.index.clone();
        for (i, l) in new_labels.iter().enumerate() {
            index.insert(l.clone(), self.labels.len() + i);
        }
        Ok(LinearMatroid { matrix, labels, index, rank: self.rank })
    }

    /// Build a matroid over new labels: each takes the column of a source label,
    /// or a zero column when the source is `None` or not in the ground set.
    pub fn derive<'a, I>(&self, spec: I) -> Result<LinearMatroid, MatroidError>
    where
        I: IntoIterator<Item = (Label, Option<&'a Label>)>,
    {
        let rows = self.matrix.rows();
        let mut labels = Vec::new();
        let mut cols: Vec<Option<usize>> = Vec::new();
        for (l, src) in spec {
            labels.push(l);
            cols.push(src.and_then(|s| self.column_index(s)));
        }
        let mut m = FFMatrix::zeros(self.modulus(), rows, labels.len());
        for (j, c) in cols.iter().enumerate() {
            if let Some(c) = c {
                for r in 0..rows {
                    m.set(r, j, self.matrix.get(r, *c));
                }
            }
        }
        LinearMatroid::new(m, labels)
    }

    /// Restriction to the given labels (in the given order).
    pub fn restrict(&self, keep: &[Label]) -> Result<LinearMatroid, MatroidError> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|e| self.column_index(e).ok_or_else(|| MatroidError::UnknownElement(e.clone())))
            .collect::<Result<_, _>>()?;
        LinearMatroid::new(self.matrix.select_columns(&idx), keep.to_vec())
    }
}

impl Matroid for LinearMatroid {
    fn ground(&self) -> Vec<Label> {
        self.labels.clone()
    }

    fn contains(&self, e: &Label) -> bool {
        self.index.contains_key(e)
    }

    fn is_independent(&self, s: &LabelSet) -> Result<bool, MatroidError> {
        let cols = self.indices(s)?;
        Ok(self.is_independent_idx(&cols))
    }

    fn rank_bound(&self) -> usize {
        self.rank
    }
}

/// Checks that `t` has rank k and, on small grounds, that its k-subsets
/// agree with `orig`.
pub fn verify_truncation(orig: &LinearMatroid, t: &LinearMatroid, k: usize) -> bool {
    if t.rank() != k {
        return false;
    }
    let n = orig.len();
    if binom(n, k) > 4096 {
        return true;
    }
    let mut ok = true;
    for_each_subset(n, k, |c| {
        if ok && orig.is_independent_idx(c) != t.is_independent_idx(c) {
            ok = false;
        }
    });
    ok
}

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Visit every k-subset of 0..n in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

type Query = dyn Fn(&LabelSet) -> bool + Send + Sync;

/// Matroid known only through an independence predicate.
#[derive(Clone)]
pub struct OracleMatroid {
    ground: Vec<Label>,
    members: BTreeSet<Label>,
    query: Arc<Query>,
    rank_bound: usize,
}

impl fmt::Debug for OracleMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleMatroid")
            .field("ground", &self.ground)
            .field("rank_bound", &self.rank_bound)
            .finish()
    }
}

impl OracleMatroid {
    pub fn new<F>(ground: Vec<Label>, rank_bound: usize, query: F) -> Self
    where
        F: Fn(&LabelSet) -> bool + Send + Sync + 'static,
    {
        let members = ground.iter().cloned().collect();
        OracleMatroid { ground, members, query: Arc::new(query), rank_bound }
    }

    /// Wrap a linear matroid behind the oracle interface.
    pub fn from_linear(m: &LinearMatroid) -> Self {
        let inner = m.clone();
        OracleMatroid::new(m.ground(), m.rank(), move |s| inner.is_independent(s).unwrap_or(false))
    }

    /// M/Y through the oracle: T is independent iff T ∪ Y is.
    pub fn contract(&self, y: &LabelSet) -> Result<OracleMatroid, MatroidError> {
        if !self.is_independent(y)? {
            return Err(MatroidError::NotIndependent);
        }
        let inner = self.clone();
        let y2 = y.clone();
        let ground: Vec<Label> = self.ground.iter().filter(|e| !y.contains(*e)).cloned().collect();
        Ok(OracleMatroid::new(ground, self.rank_bound.saturating_sub(y.len()), move |s| {
            let mut u = s.clone();
            u.extend(y2.iter().cloned());
            (inner.query)(&u)
        }))
    }
}

impl Matroid for OracleMatroid {
    fn ground(&self) -> Vec<Label> {
        self.ground.clone()
    }

    fn contains(&self, e: &Label) -> bool {
        self.members.contains(e)
    }

    fn is_independent(&self, s: &LabelSet) -> Result<bool, MatroidError> {
        if let Some(e) = s.iter().find(|e| !self.members.contains(*e)) {
            return Err(MatroidError::UnknownElement(e.clone()));
        }
        if s.is_empty() {
            return Ok(true);
        }
        Ok((self.query)(s))
    }

    fn rank_bound(&self) -> usize {
        self.rank_bound
    }
}

/// Independent sets meet every block at most once; elements outside all blocks are loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    blocks: Vec<LabelSet>,
    block_of: HashMap<Label, usize>,
}

impl PartitionMatroid {
    pub fn new(blocks: Vec<LabelSet>) -> Result<Self, MatroidError> {
        let mut block_of = HashMap::new();
        for (i, b) in blocks.iter().enumerate() {
            for e in b {
                if block_of.insert(e.clone(), i).is_some() {
                    return Err(MatroidError::OverlappingBlocks(e.clone()));
                }
            }
        }
        Ok(PartitionMatroid { blocks, block_of })
    }

    pub fn blocks(&self) -> &[LabelSet] {
        &self.blocks
    }

    pub fn block_of(&self, e: &Label) -> Option<usize> {
        self.block_of.get(e).copied()
    }
}

impl Matroid for PartitionMatroid {
    fn ground(&self) -> Vec<Label> {
        let mut g: Vec<Label> = self.block_of.keys().cloned().collect();
        g.sort();
        g
    }

    fn contains(&self, e: &Label) -> bool {
        self.block_of.contains_key(e)
    }

    fn is_independent(&self, s: &LabelSet) -> Result<bool, MatroidError> {
        let mut used = BTreeSet::new();
        for e in s {
            let b = self.block_of(e).ok_or_else(|| MatroidError::UnknownElement(e.clone()))?;
            if !used.insert(b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn rank_bound(&self) -> usize {
        self.blocks.iter().filter(|b| !b.is_empty()).count()
    }
}

/// Maximum common independent set of `m1` and a partition matroid, by shortest
/// augmenting paths in the exchange graph. Elements missing from `m1` are ignored.
pub fn matroid_intersection(m1: &dyn Matroid, m2: &PartitionMatroid) -> Result<LabelSet, MatroidError> {
    let ground: Vec<Label> = m2.ground().into_iter().filter(|e| m1.contains(e)).collect();
    let mut cur: LabelSet = LabelSet::new();
    loop {
        let inside: Vec<Label> = ground.iter().filter(|e| cur.contains(*e)).cloned().collect();
        let outside: Vec<Label> = ground.iter().filter(|e| !cur.contains(*e)).cloned().collect();
        let with = |extra: &Label, drop: Option<&Label>| {
            let mut s = cur.clone();
            if let Some(d) = drop {
                s.remove(d);
            }
            s.insert(extra.clone());
            s
        };
        let mut sources = Vec::new();
        let mut sinks = BTreeSet::new();
        for y in &outside {
            let s = with(y, None);
            if m1.is_independent(&s)? {
                sources.push(y.clone());
            }
            if m2.is_independent(&s)? {
                sinks.insert(y.clone());
            }
        }
        // arcs x -> y when cur - x + y ∈ I1, y -> x when cur - x + y ∈ I2
        let mut adj: HashMap<Label, Vec<Label>> = HashMap::new();
        for x in &inside {
            for y in &outside {
                let s = with(y, Some(x));
                if m1.is_independent(&s)? {
                    adj.entry(x.clone()).or_default().push(y.clone());
                }
                if m2.is_independent(&s)? {
                    adj.entry(y.clone()).or_default().push(x.clone());
                }
            }
        }
        let mut prev: HashMap<Label, Option<Label>> = HashMap::new();
        let mut queue = VecDeque::new();
        for y in sources {
            prev.insert(y.clone(), None);
            queue.push_back(y);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if sinks.contains(&v) {
                end = Some(v);
                break;
            }
            for w in adj.get(&v).into_iter().flatten() {
                if !prev.contains_key(w) {
                    prev.insert(w.clone(), Some(v.clone()));
                    queue.push_back(w.clone());
                }
            }
        }
        let Some(mut v) = end else {
            return Ok(cur);
        };
        loop {
            if !cur.remove(&v) {
                cur.insert(v.clone());
            }
            match prev.get(&v).cloned().flatten() {
                Some(u) => v = u,
                None => break,
            }
        }
    }
}

/// Exhaustive matroid axiom check; intended for grounds of at most ~12 elements.
pub fn check_axioms(m: &dyn Matroid) -> Result<bool, MatroidError> {
    let ground = m.ground();
    let n = ground.len();
    assert!(n <= 16, "axiom check is exponential");
    let sets: Vec<LabelSet> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ground[i].clone()).collect())
        .collect();
    let mut indep = vec![false; sets.len()];
    for (mask, s) in sets.iter().enumerate() {
        indep[mask] = m.is_independent(s)?;
    }
    if !indep[0] {
        return Ok(false);
    }
    for mask in 0..sets.len() {
        if !indep[mask] {
            continue;
        }
        // downward closure: removing one element suffices inductively
        for i in 0..n {
            if mask >> i & 1 == 1 && !indep[mask & !(1 << i)] {
                return Ok(false);
            }
        }
    }
    for a in 0..sets.len() {
        if !indep[a] {
            continue;
        }
        for b in 0..sets.len() {
            if !indep[b] || (b as u32).count_ones() <= (a as u32).count_ones() {
                continue;
            }
            let can = (0..n).any(|i| b >> i & 1 == 1 && a >> i & 1 == 0 && indep[a | 1 << i]);
            if !can {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
