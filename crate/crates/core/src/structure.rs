//! The radical, idempotent orders, minimal idempotents, and the three
//! conditions on a set `M` of minimal idempotents (commutation, separation,
//! interpolation) together with a deterministic search for a valid `M`.

use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::green::GreenData;
use crate::semigroup::{Quotient, Semigroup};

/// Default cap on the number of candidate sets examined by [`Analysis::find_m`].
pub const DEFAULT_M_BUDGET: usize = 100_000;

/// The radical as the union of subminimal `D`-classes, cross-checked against
/// the definition: `x` is in the radical iff its principal ideal is
/// nilpotent. Ideals holding a nonzero idempotent are not nilpotent; the
/// remaining maximal ones are confirmed by iterating set powers.
pub fn radical(s: &Semigroup, g: &GreenData) -> Result<ElementSet> {
    let zero = s.require_zero()?;
    let mut r = ElementSet::empty(s.order());
    for c in g.subminimal_d_classes(s)? {
        for &x in &g.d_members[c] {
            r.insert(x);
        }
    }

    let d = g.d_count();
    let mut has_idempotent = vec![false; d];
    for c in 0..d {
        has_idempotent[c] = g.d_members[c].iter().any(|&x| x != zero && s.is_idempotent(x))
            || g.below[c]
                .iter()
                .any(|b| g.d_members[b].iter().any(|&x| x != zero && s.is_idempotent(x)));
    }
    // classes whose ideal has no nonzero idempotent and is not contained in
    // another such ideal
    let candidates: Vec<usize> = (0..d).filter(|&c| !has_idempotent[c]).collect();
    let mut nilpotent = vec![false; d];
    for &c in &candidates {
        if candidates.iter().any(|&u| u != c && g.below[u].contains(c)) {
            continue;
        }
        let ideal = g.ideal_of_class(c);
        if s.power_class(&ideal, zero).is_some() {
            nilpotent[c] = true;
            for b in g.below[c].iter() {
                nilpotent[b] = true;
            }
        }
    }
    for c in 0..d {
        let in_r = r.contains(g.d_members[c][0]);
        if in_r != nilpotent[c] {
            return Err(Error::Internal(format!(
                "radical mismatch on class {c}: subminimal = {in_r}, nilpotent ideal = {}",
                nilpotent[c]
            )));
        }
    }
    Ok(r)
}

/// Nilpotency class of the radical; absence is an internal error.
pub fn radical_class(s: &Semigroup, r: &ElementSet) -> Result<usize> {
    s.nilpotency_class(r)?
        .ok_or_else(|| Error::Internal("radical is not nilpotent".into()))
}

fn require_idempotent(s: &Semigroup, e: usize) -> Result<()> {
    if s.is_idempotent(e) {
        Ok(())
    } else {
        Err(Error::NotIdempotent(e))
    }
}

/// `f ⪯ e`, i.e. `ef = fe = f`.
pub fn natural_order(s: &Semigroup, e: usize, f: usize) -> Result<bool> {
    require_idempotent(s, e)?;
    require_idempotent(s, f)?;
    Ok(s.mul(e, f) == f && s.mul(f, e) == f)
}

/// `ef = fe = 0`.
pub fn orthogonal(s: &Semigroup, e: usize, f: usize) -> Result<bool> {
    let zero = s.require_zero()?;
    require_idempotent(s, e)?;
    require_idempotent(s, f)?;
    Ok(s.mul(e, f) == zero && s.mul(f, e) == zero)
}

/// Nonzero idempotents with no nonzero idempotent strictly below them.
pub fn primitive_idempotents(s: &Semigroup) -> Result<ElementSet> {
    let zero = s.require_zero()?;
    let idem: Vec<usize> = s.idempotents().into_iter().filter(|&e| e != zero).collect();
    Ok(ElementSet::from_indices(
        s.order(),
        idem.iter().copied().filter(|&e| {
            !idem
                .iter()
                .any(|&f| f != e && s.mul(e, f) == f && s.mul(f, e) == f)
        }),
    ))
}

/// A failed condition, with the elements that exhibit the failure (indices
/// of the working semigroup).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `ef ≠ fe`.
    NotCommuting { e: usize, f: usize },
    /// `x ≠ 0` with `exf = 0` for all `e, f` in `M`.
    Unseparated { x: usize },
    /// `exgyf ∉ {0, exyf}`.
    InterpolationEscapes { x: usize, y: usize, e: usize, f: usize, g: usize },
    /// `exyf ≠ 0` while every `exgyf` is 0.
    InterpolationMissing { x: usize, y: usize, e: usize, f: usize },
}

impl Witness {
    pub fn describe(&self, s: &Semigroup) -> String {
        let l = |i: usize| s.label(i);
        match *self {
            Witness::NotCommuting { e, f } => format!("{} and {} do not commute", l(e), l(f)),
            Witness::Unseparated { x } => format!("exf = 0 for every e, f in M, with x = {}", l(x)),
            Witness::InterpolationEscapes { x, y, e, f, g } => format!(
                "exgyf not in {{0, exyf}} for e = {}, x = {}, g = {}, y = {}, f = {}",
                l(e),
                l(x),
                l(g),
                l(y),
                l(f)
            ),
            Witness::InterpolationMissing { x, y, e, f } => format!(
                "exyf != 0 but exgyf = 0 for all g, with e = {}, x = {}, y = {}, f = {}",
                l(e),
                l(x),
                l(y),
                l(f)
            ),
        }
    }
}

/// Verdicts for the three conditions; `None` means the condition holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub commute: Option<Witness>,
    pub separation: Option<Witness>,
    pub interpolation: Option<Witness>,
}

impl Conditions {
    pub fn passed(&self) -> bool {
        self.commute.is_none() && self.separation.is_none() && self.interpolation.is_none()
    }
}

/// A set `M` of minimal idempotents of the working semigroup, split by
/// `D`-class, with its condition verdicts.
#[derive(Debug, Clone)]
pub struct MinimalIdempotentSet {
    pub parent: Arc<Semigroup>,
    /// All members: the classes concatenated.
    pub members: Vec<usize>,
    /// `M_1, ..., M_k`, ordered by `D`-class id, each increasing.
    pub classes: Vec<Vec<usize>>,
    pub conditions: Conditions,
}

/// `(exf)` over `e, f` in `M`, row-major in member order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinMatrix {
    pub size: usize,
    pub entries: Vec<usize>,
}

impl BinMatrix {
    pub fn get(&self, e: usize, f: usize) -> usize {
        self.entries[e * self.size + f]
    }
}

impl MinimalIdempotentSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `max |M_i|`.
    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn require_verified(&self) -> Result<()> {
        if self.conditions.passed() {
            Ok(())
        } else {
            Err(Error::ConditionsNotVerified)
        }
    }

    /// `ψ(x) = (exf)_{e,f}`.
    pub fn bin_matrix(&self, x: usize) -> Result<BinMatrix> {
        self.require_verified()?;
        let s = &self.parent;
        let entries = self
            .members
            .iter()
            .flat_map(|&e| self.members.iter().map(move |&f| s.mul(s.mul(e, x), f)))
            .collect();
        Ok(BinMatrix {
            size: self.members.len(),
            entries,
        })
    }

    /// Product in the matrix monoid: a stable row `e_x` of `a` times a
    /// stable column `_y f` of `b` is the first nonzero `exgyf` over `g` in
    /// `M`, or 0; entries whose row or column is unstable are 0.
    pub fn bin_product(&self, a: &BinMatrix, b: &BinMatrix) -> Result<BinMatrix> {
        self.require_verified()?;
        let s = &self.parent;
        let zero = s.require_zero()?;
        let m = self.members.len();
        if a.size != m || b.size != m {
            return Err(Error::ShapeMismatch("matrix size differs from |M|".into()));
        }
        let row_witness = |ei: usize| {
            let e = self.members[ei];
            (0..s.order()).find(|&x| {
                let ex = s.mul(e, x);
                (0..m).all(|fi| s.mul(ex, self.members[fi]) == a.get(ei, fi))
            })
        };
        let col_witness = |fi: usize| {
            let f = self.members[fi];
            (0..s.order()).find(|&y| {
                (0..m).all(|ei| s.mul(s.mul(self.members[ei], y), f) == b.get(ei, fi))
            })
        };
        let rows: Vec<Option<usize>> = (0..m).map(row_witness).collect();
        let cols: Vec<Option<usize>> = (0..m).map(col_witness).collect();
        let mut entries = vec![zero; m * m];
        for ei in 0..m {
            for fi in 0..m {
                let (Some(x), Some(y)) = (rows[ei], cols[fi]) else {
                    continue;
                };
                let (e, f) = (self.members[ei], self.members[fi]);
                entries[ei * m + fi] = self
                    .members
                    .iter()
                    .map(|&g| s.mul(s.mul(s.mul(e, x), g), s.mul(s.mul(g, y), f)))
                    .find(|&v| v != zero)
                    .unwrap_or(zero);
            }
        }
        Ok(BinMatrix { size: m, entries })
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&e| self.parent.label(e)).collect())
            .collect()
    }
}

/// Outcome of the search for a valid `M`.
#[derive(Debug, Clone)]
pub enum MSearch {
    Found(MinimalIdempotentSet),
    /// Every candidate was examined and none passed.
    Exhausted { tried: usize },
}

impl MSearch {
    pub fn found(self) -> Option<MinimalIdempotentSet> {
        match self {
            MSearch::Found(m) => Some(m),
            MSearch::Exhausted { .. } => None,
        }
    }
}

/// Everything derived from a semigroup with zero that the classification
/// needs: Green's data, the radical, and the working quotient `S/R(S)` with
/// its minimal idempotents.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub semigroup: Arc<Semigroup>,
    pub zero: usize,
    pub green: GreenData,
    pub radical: ElementSet,
    pub radical_class: usize,
    pub quotient: Quotient,
    pub working: Arc<Semigroup>,
    pub working_zero: usize,
    pub working_green: GreenData,
    /// Minimal `D`-classes of the working semigroup.
    pub minimal_classes: Vec<usize>,
    /// Idempotents of each minimal class (working indices).
    pub minimal_idempotents: Vec<Vec<usize>>,
}

impl Analysis {
    pub fn new(s: Arc<Semigroup>) -> Result<Analysis> {
        let zero = s.require_zero()?;
        let green = GreenData::compute(&s)?;
        let radical = radical(&s, &green)?;
        let radical_class = radical_class(&s, &radical)?;
        let quotient = s.rees_quotient(&radical)?;
        let working = Arc::new(quotient.semigroup.clone());
        let working_zero = quotient.zero();
        let working_green = if radical.len() == 1 {
            green.clone()
        } else {
            GreenData::compute(&working)?
        };
        let sub = working_green.subminimal_d_classes(&working)?;
        if sub != vec![working_green.d_class[working_zero]] {
            return Err(Error::Internal("quotient by the radical has a nonzero radical".into()));
        }
        let minimal_classes = working_green.minimal_d_classes(&working)?;
        let minimal_idempotents = minimal_classes
            .iter()
            .map(|&c| {
                working_green.d_members[c]
                    .iter()
                    .copied()
                    .filter(|&x| working.is_idempotent(x))
                    .collect()
            })
            .collect();
        Ok(Analysis {
            semigroup: s,
            zero,
            green,
            radical,
            radical_class,
            quotient,
            working,
            working_zero,
            working_green,
            minimal_classes,
            minimal_idempotents,
        })
    }

    /// Minimal idempotents as elements of the original semigroup.
    pub fn minimal_idempotents_of_s(&self) -> ElementSet {
        ElementSet::from_indices(
            self.semigroup.order(),
            self.minimal_idempotents
                .iter()
                .flatten()
                .map(|&e| self.quotient.back[e].expect("nonzero idempotent")),
        )
    }

    fn partition(&self, candidates: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); self.minimal_classes.len()];
        for &e in candidates {
            let pos = self
                .minimal_idempotents
                .iter()
                .position(|c| c.contains(&e))
                .ok_or(Error::NotMinimalIdempotent(e))?;
            classes[pos].push(e);
        }
        for c in &mut classes {
            c.sort_unstable();
            c.dedup();
        }
        classes.retain(|c| !c.is_empty());
        Ok(classes)
    }

    /// Evaluates all three conditions for the given minimal idempotents.
    pub fn check_conditions(&self, candidates: &[usize], exec: Exec) -> Result<MinimalIdempotentSet> {
        let classes = self.partition(candidates)?;
        let members: Vec<usize> = classes.concat();
        let conditions = Conditions {
            commute: self.commute_witness(&members),
            separation: self.separation_witness(&members, exec),
            interpolation: self.interpolation_witness(&members, exec),
        };
        Ok(MinimalIdempotentSet {
            parent: self.working.clone(),
            members,
            classes,
            conditions,
        })
    }

    fn commute_witness(&self, m: &[usize]) -> Option<Witness> {
        let s = &self.working;
        m.iter().enumerate().find_map(|(i, &e)| {
            m[i + 1..]
                .iter()
                .find(|&&f| s.mul(e, f) != s.mul(f, e))
                .map(|&f| Witness::NotCommuting { e, f })
        })
    }

    fn separation_witness(&self, m: &[usize], exec: Exec) -> Option<Witness> {
        let s = &self.working;
        let zero = self.working_zero;
        exec.find_first(s.order(), |x| {
            let separated = x == zero
                || m.iter().any(|&e| {
                    let ex = s.mul(e, x);
                    m.iter().any(|&f| s.mul(ex, f) != zero)
                });
            (!separated).then_some(Witness::Unseparated { x })
        })
    }

    /// Literal scan over all `(x, y, e, f)`; `exgyf` is formed as
    /// `(exg)(gyf)` from precomputed tables.
    fn interpolation_witness(&self, m: &[usize], exec: Exec) -> Option<Witness> {
        let s = &self.working;
        let n = s.order();
        let k = m.len();
        let zero = self.working_zero;
        // gyf[(g * n + y) * k + f]
        let mut gyf = vec![0u32; k * n * k];
        for (gi, &g) in m.iter().enumerate() {
            for y in 0..n {
                let gy = s.mul(g, y);
                for (fi, &f) in m.iter().enumerate() {
                    gyf[(gi * n + y) * k + fi] = s.mul(gy, f) as u32;
                }
            }
        }
        exec.find_first(n, |x| {
            for &e in m {
                let ex = s.mul(e, x);
                if ex == zero {
                    continue;
                }
                let exg: Vec<usize> = m.iter().map(|&g| s.mul(ex, g)).collect();
                for y in 0..n {
                    let exy = s.mul(ex, y);
                    for (fi, &f) in m.iter().enumerate() {
                        let target = s.mul(exy, f);
                        let mut hit = false;
                        for (gi, &u) in exg.iter().enumerate() {
                            if u == zero {
                                continue;
                            }
                            let w = s.mul(u, gyf[(gi * n + y) * k + fi] as usize);
                            if w == zero {
                                continue;
                            }
                            if w != target {
                                return Some(Witness::InterpolationEscapes { x, y, e, f, g: m[gi] });
                            }
                            hit = true;
                        }
                        if target != zero && !hit {
                            return Some(Witness::InterpolationMissing { x, y, e, f });
                        }
                    }
                }
            }
            None
        })
    }

    /// Maximal sets of pairwise orthogonal idempotents within each minimal
    /// class, largest first, ties broken lexicographically.
    pub fn orthogonal_cliques(&self) -> Vec<Vec<Vec<usize>>> {
        let s = &self.working;
        let zero = self.working_zero;
        self.minimal_idempotents
            .iter()
            .map(|idem| {
                let adj = |a: usize, b: usize| s.mul(a, b) == zero && s.mul(b, a) == zero;
                let mut cliques = Vec::new();
                bron_kerbosch(&mut Vec::new(), idem.clone(), Vec::new(), &adj, &mut cliques);
                for c in &mut cliques {
                    c.sort_unstable();
                }
                cliques.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
                cliques
            })
            .collect()
    }

    /// Runs `visit` on candidate sets (one clique per minimal class) in
    /// deterministic order until it returns `true`; errors when the budget
    /// runs out first.
    fn for_each_candidate(
        &self,
        budget: usize,
        mut visit: impl FnMut(Vec<usize>) -> Result<bool>,
    ) -> Result<usize> {
        let per_class = self.orthogonal_cliques();
        let mut idx = vec![0usize; per_class.len()];
        let mut tried = 0;
        loop {
            if tried == budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            let cand: Vec<usize> = idx
                .iter()
                .zip(&per_class)
                .flat_map(|(&i, cl)| cl[i].iter().copied())
                .collect();
            tried += 1;
            if visit(cand)? {
                return Ok(tried);
            }
            // odometer, last class fastest
            let mut pos = per_class.len();
            loop {
                if pos == 0 {
                    return Ok(tried);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < per_class[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    fn passes(&self, cand: &[usize], exec: Exec) -> bool {
        self.separation_witness(cand, exec).is_none() && self.interpolation_witness(cand, exec).is_none()
    }

    /// First candidate passing all three conditions. With no minimal classes
    /// (the working semigroup is `{0}`) the empty set is returned, which
    /// satisfies the conditions vacuously.
    pub fn find_m(&self, budget: usize, exec: Exec) -> Result<MSearch> {
        let mut hit = None;
        let tried = self.for_each_candidate(budget, |cand| {
            if self.passes(&cand, exec) {
                hit = Some(cand);
                return Ok(true);
            }
            Ok(false)
        })?;
        match hit {
            Some(cand) => Ok(MSearch::Found(self.check_conditions(&cand, exec)?)),
            None => Ok(MSearch::Exhausted { tried }),
        }
    }

    /// Every candidate passing all three conditions.
    pub fn find_all_m(&self, budget: usize, exec: Exec) -> Result<Vec<MinimalIdempotentSet>> {
        let mut found = Vec::new();
        self.for_each_candidate(budget, |cand| {
            if self.passes(&cand, exec) {
                found.push(cand);
            }
            Ok(false)
        })?;
        found
            .iter()
            .map(|c| self.check_conditions(c, exec))
            .collect()
    }

    pub fn report(&self, search: Option<&Result<MSearch>>) -> AnalysisReport {
        let s = &self.semigroup;
        let w = &self.working;
        let m = search.map(|r| match r {
            Ok(MSearch::Found(m)) => MReport {
                status: "found".into(),
                classes: m.labels(),
                commute: m.conditions.commute.as_ref().map(|x| x.describe(w)),
                separation: m.conditions.separation.as_ref().map(|x| x.describe(w)),
                interpolation: m.conditions.interpolation.as_ref().map(|x| x.describe(w)),
                tried: None,
            },
            Ok(MSearch::Exhausted { tried }) => MReport {
                status: "none".into(),
                tried: Some(*tried),
                ..MReport::default()
            },
            Err(e) => MReport {
                status: format!("error: {e}"),
                ..MReport::default()
            },
        });
        AnalysisReport {
            order: s.order(),
            zero: self.zero,
            zero_label: s.label(self.zero),
            identity: s.identity(),
            d_classes: self.green.d_count(),
            radical_size: self.radical.len(),
            radical_class: self.radical_class,
            working_order: w.order(),
            minimal_d_classes: self.minimal_classes.len(),
            minimal_idempotents: self.minimal_idempotents.iter().map(Vec::len).sum(),
            minimal_idempotent_labels: self
                .minimal_idempotents
                .iter()
                .map(|c| c.iter().map(|&e| w.label(e)).collect())
                .collect(),
            m,
        }
    }
}

fn bron_kerbosch(
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    adj: &impl Fn(usize, usize) -> bool,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| v != u && adj(u, v)).count())
        .expect("nonempty");
    let mut p = p;
    let mut x = x;
    let branch: Vec<usize> = p.iter().copied().filter(|&v| v == pivot || !adj(pivot, v)).collect();
    for v in branch {
        if v == pivot && !p.contains(&v) {
            continue;
        }
        r.push(v);
        let np = p.iter().copied().filter(|&u| u != v && adj(u, v)).collect();
        let nx = x.iter().copied().filter(|&u| u != v && adj(u, v)).collect();
        bron_kerbosch(r, np, nx, adj, out);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// Machine-readable analysis summary.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub zero: usize,
    pub zero_label: String,
    pub identity: Option<usize>,
    pub d_classes: usize,
    pub radical_size: usize,
    pub radical_class: usize,
    pub working_order: usize,
    pub minimal_d_classes: usize,
    pub minimal_idempotents: usize,
    pub minimal_idempotent_labels: Vec<Vec<String>>,
    pub m: Option<MReport>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct MReport {
    pub status: String,
    pub classes: Vec<Vec<String>>,
    pub commute: Option<String>,
    pub separation: Option<String>,
    pub interpolation: Option<String>,
    pub tried: Option<usize>,
}
