//! Representative families of independent sets.

use crate::ffmatrix::FFMatrix;
use crate::label::{Label, LabelSet};
use crate::matroid::{binom, for_each_subset, LinearMatroid, Matroid, MatroidError};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("family member {0:?} is dependent")]
    NotIndependent(Vec<Label>),
    #[error("member of size {got} in a {expected}-family")]
    WrongMemberSize { expected: usize, got: usize },
    #[error("p + q = {sum} exceeds rank {rank}")]
    RankExceeded { sum: usize, rank: usize },
    #[error("ground set of {0} elements is too large for exhaustive verification")]
    TooLargeForOracle(usize),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// A family of sets, all of one size, deduplicated, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SetFamily {
    member_size: usize,
    sets: Vec<LabelSet>,
}

impl SetFamily {
    pub fn empty(member_size: usize) -> Self {
        SetFamily { member_size, sets: Vec::new() }
    }

    /// The 0-family {∅}.
    pub fn unit() -> Self {
        SetFamily { member_size: 0, sets: vec![LabelSet::new()] }
    }

    pub fn new(member_size: usize, sets: impl IntoIterator<Item = LabelSet>) -> Result<Self, RepError> {
        let mut f = SetFamily::empty(member_size);
        for s in sets {
            f.push(s)?;
        }
        Ok(f)
    }

    /// Adds a member unless already present.
    pub fn push(&mut self, s: LabelSet) -> Result<bool, RepError> {
        if s.len() != self.member_size {
            return Err(RepError::WrongMemberSize { expected: self.member_size, got: s.len() });
        }
        if self.sets.contains(&s) {
            return Ok(false);
        }
        self.sets.push(s);
        Ok(true)
    }

    pub fn extend(&mut self, other: &SetFamily) -> Result<(), RepError> {
        for s in &other.sets {
            self.push(s.clone())?;
        }
        Ok(())
    }

    pub fn member_size(&self) -> usize {
        self.member_size
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[LabelSet] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = &LabelSet> {
        self.sets.iter()
    }

    pub fn contains(&self, s: &LabelSet) -> bool {
        self.sets.contains(s)
    }

    pub fn retain(&mut self, f: impl FnMut(&LabelSet) -> bool) {
        self.sets.retain(f);
    }

    /// Members in lexicographic order.
    pub fn sorted(mut self) -> Self {
        self.sets.sort();
        self
    }

    pub fn into_sets(self) -> Vec<LabelSet> {
        self.sets
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a LabelSet;
    type IntoIter = std::slice::Iter<'a, LabelSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// A fits B: disjoint with independent union.
pub fn fits(m: &dyn Matroid, a: &LabelSet, b: &LabelSet) -> Result<bool, MatroidError> {
    if !a.is_disjoint(b) {
        return Ok(false);
    }
    let u: LabelSet = a.union(b).cloned().collect();
    m.is_independent(&u)
}

/// q-representative subfamily via exterior coordinates of the rank-(p+q) truncation.
pub fn rep_family(m: &LinearMatroid, f: &SetFamily, q: usize, seed: u64) -> Result<SetFamily, RepError> {
    let p = f.member_size();
    if f.is_empty() {
        return Ok(SetFamily::empty(p));
    }
    for a in f {
        if !m.is_independent(a)? {
            return Err(RepError::NotIndependent(a.iter().cloned().collect()));
        }
    }
    if p == 0 || f.len() == 1 {
        return Ok(f.clone());
    }
    if p + q > m.rank() {
        return Err(RepError::RankExceeded { sum: p + q, rank: m.rank() });
    }
    let dim = p + q;
    // only the columns used by members matter
    let used: Vec<Label> = {
        let mut u: LabelSet = LabelSet::new();
        for a in f {
            u.extend(a.iter().cloned());
        }
        u.into_iter().collect()
    };
    let sub = m.restrict(&used)?;
    let t = if m.matrix().rows() == dim && m.rank() == dim {
        sub
    } else {
        m.truncate(dim, seed)?.restrict(&used)?
    };
    let fp = t.modulus();
    let row_sets: Vec<Vec<usize>> = {
        let mut v = Vec::new();
        for_each_subset(dim, p, |c| v.push(c.to_vec()));
        v
    };
    let width = row_sets.len();
    // incremental echelon basis of kept vectors
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut out = SetFamily::empty(p);
    for a in f {
        let cols = t.indices(a)?;
        let block: FFMatrix = t.matrix().select_columns(&cols);
        let mut v: Vec<u64> = row_sets
            .iter()
            .map(|rows| block.select_rows(rows).det())
            .collect::<Result<_, _>>()
            .map_err(MatroidError::from)?;
        for (piv, b) in &basis {
            let c = v[*piv];
            if c != 0 {
                for j in 0..width {
                    v[j] = fp.sub(v[j], fp.mul(c, b[j]));
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = fp.inv(v[piv]).map_err(MatroidError::from)?;
            for x in v.iter_mut() {
                *x = fp.mul(*x, inv);
            }
            basis.push((piv, v));
            out.push(a.clone())?;
            if basis.len() == width {
                break;
            }
        }
    }
    Ok(out)
}

/// P • Q: unions of fitting pairs.
pub fn convolve(p: &SetFamily, q: &SetFamily, m: &dyn Matroid) -> Result<SetFamily, RepError> {
    let mut out = SetFamily::empty(p.member_size() + q.member_size());
    let mut seen: HashSet<LabelSet> = HashSet::new();
    for a in p {
        for b in q {
            if fits(m, a, b)? {
                let u: LabelSet = a.union(b).cloned().collect();
                if seen.insert(u.clone()) {
                    out.sets.push(u);
                }
            }
        }
    }
    Ok(out)
}

pub const VERIFY_GROUND_LIMIT: usize = 24;

/// Exhaustive check that `sub` q-represents `full`.
pub fn verify_rep(m: &dyn Matroid, sub: &SetFamily, full: &SetFamily, q: usize) -> Result<bool, RepError> {
    let ground = m.ground();
    if ground.len() > VERIFY_GROUND_LIMIT {
        return Err(RepError::TooLargeForOracle(ground.len()));
    }
    if full.is_empty() {
        return Ok(true);
    }
    if sub.is_empty() {
        // any fitter at all for full?
        return Ok(!any_fitter_exists(m, full, q, &ground)?);
    }
    let mut result = Ok(true);
    for_each_subset(ground.len(), q, |c| {
        if !matches!(result, Ok(true)) {
            return;
        }
        let b: LabelSet = c.iter().map(|&i| ground[i].clone()).collect();
        let check = || -> Result<bool, RepError> {
            for a in full {
                if fits(m, a, &b)? {
                    for a2 in sub {
                        if fits(m, a2, &b)? {
                            return Ok(true);
                        }
                    }
                    return Ok(false);
                }
            }
            Ok(true)
        };
        result = check();
    });
    result
}

fn any_fitter_exists(m: &dyn Matroid, full: &SetFamily, q: usize, ground: &[Label]) -> Result<bool, RepError> {
    let mut found = Ok(false);
    for_each_subset(ground.len(), q, |c| {
        if !matches!(found, Ok(false)) {
            return;
        }
        let b: LabelSet = c.iter().map(|&i| ground[i].clone()).collect();
        found = (|| {
            for a in full {
                if fits(m, a, &b)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })();
    });
    found
}

/// Size bound C(p+q, p) of a q-representative p-family.
pub fn rep_bound(p: usize, q: usize) -> u128 {
    binom(p + q, p)
}
