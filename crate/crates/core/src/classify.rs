//! The correspondence between nilpotent subsemigroups `T` of the working
//! semigroup and strict partial orders `ρ` on a verified set `M`:
//! `ρ_T = {(e, f) : exf ≠ 0 for some x ∈ T}` and
//! `Mon(ρ) = {x : exf ≠ 0 ⇒ (e, f) ∈ ρ}`.
//!
//! Maximal nilpotent subsemigroups are `Mon` of collections of linear orders
//! on the `D`-class blocks of `M`; those of class `m` are `Mon` of ordered
//! partitions into `m` blocks. Results are lifted back to the original
//! semigroup by re-adjoining the radical.

use itertools::Itertools;
use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::oracle::{self, OracleBudget};
use crate::structure::{Analysis, MinimalIdempotentSet};

/// A strict partial order on the member positions `0..k` of an `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrictOrder {
    k: usize,
    pairs: ElementSet,
}

impl StrictOrder {
    pub fn empty(k: usize) -> Self {
        StrictOrder {
            k,
            pairs: ElementSet::empty(k * k),
        }
    }

    /// Pairs given as `(lower, upper)` positions. No order axioms are
    /// checked; see [`StrictOrder::violation`].
    pub fn from_pairs(k: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut o = StrictOrder::empty(k);
        for (a, b) in pairs {
            o.insert(a, b);
        }
        o
    }

    /// Earlier positions in `chain` are below later ones.
    pub fn chain(k: usize, chain: &[usize]) -> Self {
        let mut o = StrictOrder::empty(k);
        for (i, &a) in chain.iter().enumerate() {
            for &b in &chain[i + 1..] {
                o.insert(a, b);
            }
        }
        o
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(a * self.k + b)
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.pairs.insert(a * self.k + b);
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|p| (p / self.k, p % self.k)).collect()
    }

    pub fn as_set(&self) -> &ElementSet {
        &self.pairs
    }

    pub fn is_subset(&self, other: &StrictOrder) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn union(&self, other: &StrictOrder) -> StrictOrder {
        StrictOrder {
            k: self.k,
            pairs: self.pairs.union(&other.pairs),
        }
    }

    pub fn transitive_closure(&self) -> StrictOrder {
        let k = self.k;
        let mut out = self.clone();
        for mid in 0..k {
            for a in 0..k {
                if !out.contains(a, mid) {
                    continue;
                }
                for b in 0..k {
                    if out.contains(mid, b) {
                        out.insert(a, b);
                    }
                }
            }
        }
        out
    }

    /// First failure of irreflexivity or transitivity (antisymmetry follows
    /// from the two).
    pub fn violation(&self) -> Option<String> {
        let k = self.k;
        if let Some(a) = (0..k).find(|&a| self.contains(a, a)) {
            return Some(format!("({a}, {a}) present"));
        }
        for (a, b) in self.pairs() {
            for c in 0..k {
                if self.contains(b, c) && !self.contains(a, c) {
                    return Some(format!("({a}, {b}) and ({b}, {c}) present but ({a}, {c}) missing"));
                }
            }
        }
        None
    }

    /// Number of elements in a longest chain `e_1 < e_2 < ... < e_p`.
    pub fn longest_chain(&self) -> usize {
        if self.k == 0 {
            return 0;
        }
        // longest[a]: longest chain ending at a; relax k times (orders are acyclic)
        let mut longest = vec![1usize; self.k];
        for _ in 0..self.k {
            for (a, b) in self.pairs() {
                longest[b] = longest[b].max(longest[a] + 1);
            }
        }
        longest.into_iter().max().unwrap_or(0)
    }
}

/// For each `D`-class block of `M`, an ordered list of disjoint nonempty
/// blocks of member positions covering it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrderedPartition {
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl OrderedPartition {
    /// `a < b` iff `a`'s block comes before `b`'s in the same class.
    pub fn order(&self, k: usize) -> StrictOrder {
        let mut o = StrictOrder::empty(k);
        for blocks in &self.classes {
            for (i, lo) in blocks.iter().enumerate() {
                for hi in &blocks[i + 1..] {
                    for &a in lo {
                        for &b in hi {
                            o.insert(a, b);
                        }
                    }
                }
            }
        }
        o
    }

    /// Number of maximal nilpotent subsemigroups containing `Mon` of this
    /// partition: one linear order per block, `∏ |block|!`.
    pub fn containment_count(&self) -> u128 {
        self.classes
            .iter()
            .flatten()
            .map(|b| factorial(b.len()))
            .product()
    }

    pub fn is_linear(&self) -> bool {
        self.classes.iter().flatten().all(|b| b.len() == 1)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Surjections from an `n`-set onto an `m`-set by inclusion-exclusion:
/// `Σ_{j<m} (-1)^j C(m, j) (m - j)^n`.
pub fn surjections(n: usize, m: usize) -> u128 {
    let mut total: i128 = 0;
    for j in 0..m {
        let term = (binomial(m, j) * ((m - j) as u128).pow(n as u32)) as i128;
        total += if j % 2 == 0 { term } else { -term };
    }
    total as u128
}

/// All ordered partitions of `items` into exactly `m` nonempty blocks:
/// restricted growth strings in lexicographic order, then block
/// permutations in lexicographic order.
pub fn ordered_partitions(items: &[usize], m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if m == 0 || m > items.len() {
        return out;
    }
    let mut rgs = vec![0usize; items.len()];
    fn grow(
        i: usize,
        used: usize,
        m: usize,
        rgs: &mut Vec<usize>,
        items: &[usize],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let n = rgs.len();
        // not enough positions left to open the missing blocks
        if m - used > n - i {
            return;
        }
        if i == n {
            let mut blocks = vec![Vec::new(); m];
            for (pos, &b) in rgs.iter().enumerate() {
                blocks[b].push(items[pos]);
            }
            for perm in (0..m).permutations(m) {
                out.push(perm.iter().map(|&b| blocks[b].clone()).collect());
            }
            return;
        }
        for b in 0..=used.min(m - 1) {
            rgs[i] = b;
            grow(i + 1, used.max(b + 1), m, rgs, items, out);
        }
    }
    grow(0, 0, m, &mut rgs, items, &mut out);
    out
}

/// One maximal element of the nilpotent subsemigroups (of bounded class).
#[derive(Debug, Clone)]
pub struct Maximal {
    /// The parametrizing partition (singleton blocks for linear orders).
    pub partition: OrderedPartition,
    pub order: StrictOrder,
    /// `Mon(ρ)` in the working semigroup.
    pub working: ElementSet,
    pub working_class: usize,
    /// Pull-back to the original semigroup, radical included.
    pub elements: ElementSet,
}

/// `ρ_T` / `Mon(ρ)` machinery for one verified `M`.
#[derive(Debug, Clone)]
pub struct Classifier<'a> {
    pub analysis: &'a Analysis,
    pub m: MinimalIdempotentSet,
    /// Member positions of each `D`-class block of `M`.
    pub blocks: Vec<Vec<usize>>,
    /// `support[x] = {(e, f) : exf ≠ 0}` as positions `e * k + f`.
    support: Vec<ElementSet>,
}

impl<'a> Classifier<'a> {
    pub fn new(analysis: &'a Analysis, m: MinimalIdempotentSet, exec: Exec) -> Result<Self> {
        if !m.conditions.passed() {
            return Err(Error::ConditionsNotVerified);
        }
        let s = &analysis.working;
        let zero = analysis.working_zero;
        let k = m.len();
        let members = &m.members;
        let support = exec.map(s.order(), |x| {
            let mut sup = ElementSet::empty(k * k);
            for (ei, &e) in members.iter().enumerate() {
                let ex = s.mul(e, x);
                for (fi, &f) in members.iter().enumerate() {
                    if s.mul(ex, f) != zero {
                        sup.insert(ei * k + fi);
                    }
                }
            }
            sup
        });
        let mut blocks = Vec::new();
        let mut pos = 0;
        for c in &m.classes {
            blocks.push((pos..pos + c.len()).collect());
            pos += c.len();
        }
        Ok(Classifier {
            analysis,
            m,
            blocks,
            support,
        })
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }

    /// `ρ_T` for a nilpotent subsemigroup `T` of the working semigroup.
    pub fn rho_of(&self, t: &ElementSet) -> Result<StrictOrder> {
        self.analysis
            .working
            .nilpotency_class(t)?
            .ok_or(Error::NotNilpotent)?;
        let rho = self.rho_unchecked(t);
        if let Some(v) = rho.violation() {
            return Err(Error::Internal(format!("ρ_T is not a strict order: {v}")));
        }
        Ok(rho)
    }

    fn rho_unchecked(&self, t: &ElementSet) -> StrictOrder {
        let k = self.k();
        let mut pairs = ElementSet::empty(k * k);
        for x in t.iter() {
            pairs.union_with(&self.support[x]);
        }
        StrictOrder { k, pairs }
    }

    /// `Mon(ρ)` in the working semigroup.
    pub fn mon_of(&self, rho: &StrictOrder) -> ElementSet {
        ElementSet::from_indices(
            self.support.len(),
            (0..self.support.len()).filter(|&x| self.support[x].is_subset(rho.as_set())),
        )
    }

    /// The closure laws of the correspondence for one `T` and one `ρ`:
    /// `T ⊆ Mon(ρ_T)`, `ρ_{Mon(ρ)} ⊆ ρ`, `Mon(ρ_{Mon(ρ)}) = Mon(ρ)` and
    /// `ρ_{Mon(ρ_T)} = ρ_T`.
    pub fn galois_verify(&self, t: &ElementSet, rho: &StrictOrder) -> Result<()> {
        let w = &self.analysis.working;
        let rho_t = self.rho_of(t)?;
        let mon_rho_t = self.mon_of(&rho_t);
        if !t.is_subset(&mon_rho_t) {
            return Err(Error::Violation(format!("T ⊄ Mon(ρ_T) for T = {t:?}")));
        }
        if self.rho_unchecked(&mon_rho_t) != rho_t {
            return Err(Error::Violation(format!("ρ_Mon(ρ_T) ≠ ρ_T for T = {t:?}")));
        }
        let mon = self.mon_of(rho);
        if w.nilpotency_class(&mon)?.is_none() {
            return Err(Error::Violation(format!("Mon(ρ) is not nilpotent for ρ = {:?}", rho.pairs())));
        }
        let rho_mon = self.rho_unchecked(&mon);
        if !rho_mon.is_subset(rho) {
            return Err(Error::Violation(format!("ρ_Mon(ρ) ⊄ ρ for ρ = {:?}", rho.pairs())));
        }
        if self.mon_of(&rho_mon) != mon {
            return Err(Error::Violation(format!(
                "Mon(ρ_Mon(ρ)) ≠ Mon(ρ) for ρ = {:?}",
                rho.pairs()
            )));
        }
        Ok(())
    }

    /// Both maps preserve inclusion: `T_1 ⊆ T_2 ⇒ ρ_{T_1} ⊆ ρ_{T_2}` and
    /// `ρ_1 ⊆ ρ_2 ⇒ Mon(ρ_1) ⊆ Mon(ρ_2)`.
    pub fn monotonicity_check(
        &self,
        t: (&ElementSet, &ElementSet),
        rho: (&StrictOrder, &StrictOrder),
    ) -> Result<()> {
        if t.0.is_subset(t.1) && !self.rho_unchecked(t.0).is_subset(&self.rho_unchecked(t.1)) {
            return Err(Error::Violation("ρ_T is not monotone".into()));
        }
        if rho.0.is_subset(rho.1) && !self.mon_of(rho.0).is_subset(&self.mon_of(rho.1)) {
            return Err(Error::Violation("Mon is not monotone".into()));
        }
        Ok(())
    }

    /// `∏ |M_i|!`.
    pub fn count_maximal(&self) -> u128 {
        self.blocks.iter().map(|b| factorial(b.len())).product()
    }

    /// `max |M_i|`.
    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn check_m(&self, m: usize) -> Result<()> {
        let max = self.max_block();
        if m == 0 || m > max.max(1) {
            return Err(Error::MOutOfRange { m, max: max.max(1) });
        }
        Ok(())
    }

    /// Number of maximal nilpotent subsemigroups of class at most `m`:
    /// surjection counts for blocks of size at least `m`, factorials below.
    pub fn count_class_m(&self, m: usize) -> Result<u128> {
        self.check_m(m)?;
        Ok(self
            .blocks
            .iter()
            .map(|b| {
                if b.len() >= m {
                    surjections(b.len(), m)
                } else {
                    factorial(b.len())
                }
            })
            .product())
    }

    /// Collections of linear orders, one permutation per block, in
    /// lexicographic order.
    pub fn linear_partitions(&self) -> Vec<OrderedPartition> {
        if self.blocks.is_empty() {
            return vec![OrderedPartition { classes: vec![] }];
        }
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .copied()
                    .permutations(b.len())
                    .map(|p| p.into_iter().map(|x| vec![x]).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            })
            .multi_cartesian_product()
            .map(|classes| OrderedPartition { classes })
            .collect()
    }

    /// Ordered partitions into `m` blocks (linear orders for smaller
    /// classes).
    pub fn class_m_partitions(&self, m: usize) -> Result<Vec<OrderedPartition>> {
        self.check_m(m)?;
        if self.blocks.is_empty() {
            return Ok(vec![OrderedPartition { classes: vec![] }]);
        }
        Ok(self
            .blocks
            .iter()
            .map(|b| {
                if b.len() >= m {
                    ordered_partitions(b, m)
                } else {
                    b.iter()
                        .copied()
                        .permutations(b.len())
                        .map(|p| p.into_iter().map(|x| vec![x]).collect())
                        .collect()
                }
            })
            .multi_cartesian_product()
            .map(|classes| OrderedPartition { classes })
            .collect())
    }

    fn realize(&self, partitions: Vec<OrderedPartition>, exec: Exec) -> Result<Vec<Maximal>> {
        let k = self.k();
        let w = &self.analysis.working;
        exec.map_slice(&partitions, |p| {
            let order = p.order(k);
            let working = self.mon_of(&order);
            let working_class = w
                .nilpotency_class(&working)?
                .ok_or_else(|| Error::Internal("Mon(ρ) is not nilpotent".into()))?;
            let elements = self.lift(&working)?;
            Ok(Maximal {
                partition: p.clone(),
                order,
                working,
                working_class,
                elements,
            })
        })
        .into_iter()
        .collect()
    }

    /// Pull-back `φ⁻¹(T \ {0}) ∪ R` with a closure check in the original
    /// semigroup. Products touching the radical stay in it, so only pairs
    /// outside the radical are tested.
    pub fn lift(&self, working: &ElementSet) -> Result<ElementSet> {
        let a = self.analysis;
        let lifted = a.quotient.pull_back(working);
        let outside: Vec<usize> = lifted.iter().filter(|&x| !a.radical.contains(x)).collect();
        for &x in &outside {
            for &y in &outside {
                let p = a.semigroup.mul(x, y);
                if !lifted.contains(p) {
                    return Err(Error::Internal(format!("lifted set not closed: {x}*{y} = {p}")));
                }
            }
        }
        Ok(lifted)
    }

    /// All maximal nilpotent subsemigroups, one per collection of linear
    /// orders; they are checked to be pairwise distinct.
    pub fn enumerate_maximal(&self, exec: Exec) -> Result<Vec<Maximal>> {
        let out = self.realize(self.linear_partitions(), exec)?;
        require_distinct(&out)?;
        if out.len() as u128 != self.count_maximal() {
            return Err(Error::Internal(format!(
                "enumerated {} maxima, product of factorials is {}",
                out.len(),
                self.count_maximal()
            )));
        }
        Ok(out)
    }

    /// Maximal nilpotent subsemigroups of class at most `m`.
    pub fn enumerate_class_m(&self, m: usize, exec: Exec) -> Result<Vec<Maximal>> {
        let out = self.realize(self.class_m_partitions(m)?, exec)?;
        require_distinct(&out)?;
        Ok(out)
    }

    /// Intersection of all maxima, which must equal the radical.
    pub fn intersection_of_maxima(&self, exec: Exec) -> Result<ElementSet> {
        let maxima = self.enumerate_maximal(exec)?;
        let meet = intersection(maxima.iter().map(|m| &m.elements), self.analysis.semigroup.order());
        if meet != self.analysis.radical {
            return Err(Error::Internal(format!(
                "intersection of maxima has {} elements, radical has {}",
                meet.len(),
                self.analysis.radical.len()
            )));
        }
        Ok(meet)
    }

    /// Label form of a partition: per class, the blocks as label lists.
    pub fn partition_labels(&self, p: &OrderedPartition) -> Vec<Vec<Vec<String>>> {
        let w = &self.analysis.working;
        p.classes
            .iter()
            .map(|blocks| {
                blocks
                    .iter()
                    .map(|b| b.iter().map(|&i| w.label(self.m.members[i])).collect())
                    .collect()
            })
            .collect()
    }
}

fn require_distinct(out: &[Maximal]) -> Result<()> {
    let mut sets: Vec<&ElementSet> = out.iter().map(|m| &m.working).collect();
    sets.sort();
    if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Internal(format!("two parameters give the same subsemigroup {:?}", w[0])));
    }
    Ok(())
}

/// Intersection of a family of sets over `0..universe` (the full set when
/// the family is empty).
pub fn intersection<'s>(sets: impl IntoIterator<Item = &'s ElementSet>, universe: usize) -> ElementSet {
    let mut meet = ElementSet::full(universe);
    for s in sets {
        meet.intersect_with(s);
    }
    meet
}

/// How the maxima were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Through a verified `M`.
    Classified,
    /// By exhaustive search, because no valid `M` was found.
    Oracle,
}

/// Maxima in the original semigroup, with the route that produced them.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub mode: Mode,
    /// Per maximum: the label form of its partition (absent in oracle mode).
    pub partitions: Vec<Option<Vec<Vec<Vec<String>>>>>,
    pub maxima: Vec<ElementSet>,
    /// Nilpotency class in the working semigroup (classified mode) or in
    /// the original semigroup (oracle mode).
    pub classes: Vec<usize>,
}

/// Search limits shared by the classification entry points.
#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    pub m_search: usize,
    pub oracle: OracleBudget,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            m_search: crate::structure::DEFAULT_M_BUDGET,
            oracle: OracleBudget::default(),
        }
    }
}

/// Maximal nilpotent subsemigroups of the analysed semigroup, optionally of
/// class at most `class_bound`. Without a valid `M` this fails with
/// [`Error::NoValidM`] unless `use_oracle` is set, in which case the
/// exhaustive search runs and the result is flagged [`Mode::Oracle`].
pub fn maximal_nilpotent(
    analysis: &Analysis,
    class_bound: Option<usize>,
    use_oracle: bool,
    budgets: Budgets,
    exec: Exec,
) -> Result<Enumeration> {
    let found = analysis.find_m(budgets.m_search, exec)?.found();
    match found {
        Some(m) => {
            let c = Classifier::new(analysis, m, exec)?;
            let maxima = match class_bound {
                Some(b) => c.enumerate_class_m(b, exec)?,
                None => c.enumerate_maximal(exec)?,
            };
            Ok(Enumeration {
                mode: Mode::Classified,
                partitions: maxima.iter().map(|m| Some(c.partition_labels(&m.partition))).collect(),
                classes: maxima.iter().map(|m| m.working_class).collect(),
                maxima: maxima.into_iter().map(|m| m.elements).collect(),
            })
        }
        None if use_oracle => {
            let s = &analysis.semigroup;
            let maxima = match class_bound {
                Some(b) => oracle::brute_class_m_maximal(s, analysis.zero, b, budgets.oracle)?,
                None => oracle::brute_maximal_nilpotent(s, analysis.zero, budgets.oracle)?,
            };
            let classes = maxima
                .iter()
                .map(|t| oracle::class_relative(s, t, analysis.zero).ok_or(Error::NotNilpotent))
                .collect::<Result<Vec<_>>>()?;
            Ok(Enumeration {
                mode: Mode::Oracle,
                partitions: vec![None; maxima.len()],
                maxima,
                classes,
            })
        }
        None => Err(Error::NoValidM),
    }
}

/// Outcome of comparing the maxima induced by every valid `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MComparison {
    pub valid_sets: usize,
    pub agree: bool,
}

/// Enumerates the maxima for every valid `M` the search produces and reports
/// whether the resulting families coincide.
pub fn compare_valid_m(analysis: &Analysis, budget: usize, exec: Exec) -> Result<MComparison> {
    let all = analysis.find_all_m(budget, exec)?;
    let mut families = Vec::new();
    for m in all {
        let c = Classifier::new(analysis, m, exec)?;
        let mut fam: Vec<ElementSet> = c.enumerate_maximal(exec)?.into_iter().map(|m| m.elements).collect();
        fam.sort();
        families.push(fam);
    }
    Ok(MComparison {
        valid_sets: families.len(),
        agree: families.windows(2).all(|w| w[0] == w[1]),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::families::{build_b, build_d, build_is, build_pt};
    use crate::semigroup::Semigroup;
    use crate::structure::DEFAULT_M_BUDGET;

    fn analysis(s: Semigroup) -> Analysis {
        Analysis::new(Arc::new(s)).unwrap()
    }

    fn classifier(a: &Analysis) -> Classifier<'_> {
        let m = a.find_m(DEFAULT_M_BUDGET, Exec::Sequential).unwrap().found().unwrap();
        Classifier::new(a, m, Exec::Sequential).unwrap()
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 2), 6);
        assert_eq!(surjections(4, 2), 14);
        assert_eq!(surjections(4, 3), 36);
        assert_eq!(surjections(3, 3), 6);
        assert_eq!(surjections(5, 1), 1);
    }

    #[test]
    fn ordered_partition_enumeration_matches_surjections() {
        for n in 1..=5 {
            let items: Vec<usize> = (0..n).collect();
            for m in 1..=n {
                let ps = ordered_partitions(&items, m);
                assert_eq!(ps.len() as u128, surjections(n, m), "n={n} m={m}");
                let mut sorted = ps.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), ps.len());
            }
        }
    }

    #[test]
    fn strict_order_axioms() {
        let o = StrictOrder::chain(3, &[2, 0, 1]);
        assert!(o.violation().is_none());
        assert_eq!(o.longest_chain(), 3);
        let bad = StrictOrder::from_pairs(3, [(0, 1), (1, 2)]);
        assert!(bad.violation().is_some());
        assert!(bad.transitive_closure().violation().is_none());
        assert!(StrictOrder::from_pairs(2, [(1, 1)]).violation().is_some());
    }

    #[test]
    fn rho_of_single_arrow_in_is2() {
        let s = build_is(2, 5, Exec::Sequential).unwrap().semigroup;
        let zero = s.zero().unwrap();
        let arrow = s.find_label("2-").unwrap();
        let a = analysis(s);
        let c = classifier(&a);
        let e1 = c.m.members.iter().position(|&e| a.working.label(e) == "1-").unwrap();
        let e2 = c.m.members.iter().position(|&e| a.working.label(e) == "-2").unwrap();
        let t = ElementSet::from_indices(a.working.order(), [zero, arrow]);
        assert_eq!(c.rho_of(&t).unwrap().pairs(), vec![(e1, e2)]);
        let trivial = ElementSet::from_indices(a.working.order(), [zero]);
        assert!(c.rho_of(&trivial).unwrap().is_empty());
        assert_eq!(c.mon_of(&StrictOrder::empty(2)), trivial);
    }

    #[test]
    fn rho_of_rejects_non_nilpotent_sets() {
        let s = build_is(2, 5, Exec::Sequential).unwrap().semigroup;
        let e = s.find_label("1-").unwrap();
        let a = analysis(s);
        let c = classifier(&a);
        let t = ElementSet::from_indices(a.working.order(), [a.working_zero, e]);
        assert_eq!(c.rho_of(&t), Err(Error::NotNilpotent));
    }

    #[test]
    fn is3_has_six_maxima_and_class_two_count_six() {
        let a = analysis(build_is(3, 5, Exec::Sequential).unwrap().semigroup);
        let c = classifier(&a);
        let max = c.enumerate_maximal(Exec::Parallel).unwrap();
        assert_eq!(max.len(), 6);
        assert!(max.iter().all(|m| m.working_class == 3));
        assert_eq!(c.count_class_m(2).unwrap(), 6);
        let two = c.enumerate_class_m(2, Exec::Sequential).unwrap();
        assert_eq!(two.len(), 6);
        assert!(two.iter().all(|m| m.working_class == 2));
        let one = c.enumerate_class_m(1, Exec::Sequential).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].working.len(), 1);
        assert!(matches!(c.count_class_m(4), Err(Error::MOutOfRange { m: 4, max: 3 })));
    }

    #[test]
    fn containment_count_for_a_two_block_partition() {
        let a = analysis(build_is(3, 5, Exec::Sequential).unwrap().semigroup);
        let c = classifier(&a);
        let p = OrderedPartition {
            classes: vec![vec![vec![0], vec![1, 2]]],
        };
        assert_eq!(p.containment_count(), 2);
        let t = c.mon_of(&p.order(3));
        let containing = c
            .enumerate_maximal(Exec::Sequential)
            .unwrap()
            .iter()
            .filter(|m| t.is_subset(&m.working))
            .count();
        assert_eq!(containing, 2);
    }

    #[test]
    fn b_and_pt_natural_order_sizes() {
        let b = analysis(build_b(3, 3, Exec::Sequential).unwrap().semigroup);
        let c = classifier(&b);
        for m in c.enumerate_maximal(Exec::Sequential).unwrap() {
            assert_eq!(m.working.len(), 8);
        }
        let p = analysis(build_pt(3, 4, Exec::Sequential).unwrap().semigroup);
        let c = classifier(&p);
        let max = c.enumerate_maximal(Exec::Sequential).unwrap();
        assert_eq!(max.len(), 6);
        assert!(max.iter().all(|m| m.working.len() == 6));
    }

    #[test]
    fn d3_unique_maximum_is_the_radical() {
        let a = analysis(build_d(3, 6, Exec::Sequential).unwrap().semigroup);
        let c = classifier(&a);
        assert_eq!(c.count_maximal(), 1);
        assert_eq!(c.intersection_of_maxima(Exec::Sequential).unwrap(), a.radical);
    }

    #[test]
    fn galois_laws_on_b2_full_order() {
        let a = analysis(build_b(2, 3, Exec::Sequential).unwrap().semigroup);
        let c = classifier(&a);
        let rho = StrictOrder::chain(2, &[0, 1]);
        let mon = c.mon_of(&rho);
        c.galois_verify(&mon, &rho).unwrap();
        assert_eq!(c.mon_of(&c.rho_of(&mon).unwrap()), mon);
    }

    #[test]
    fn no_valid_m_without_oracle_is_an_error() {
        let a = analysis(crate::families::build_mat2f2(Exec::Sequential).unwrap().semigroup);
        let r = maximal_nilpotent(&a, None, false, Budgets::default(), Exec::Sequential);
        assert!(matches!(r, Err(Error::NoValidM)));
        let e = maximal_nilpotent(&a, None, true, Budgets::default(), Exec::Sequential).unwrap();
        assert_eq!(e.mode, Mode::Oracle);
        assert_eq!(e.maxima.len(), 3);
    }

    #[test]
    fn is3_valid_m_families_agree() {
        let a = analysis(build_is(3, 5, Exec::Sequential).unwrap().semigroup);
        let cmp = compare_valid_m(&a, DEFAULT_M_BUDGET, Exec::Sequential).unwrap();
        assert!(cmp.valid_sets >= 1);
        assert!(cmp.agree);
    }
}
