//! Brute-force ground truth built only on the multiplication table:
//! exhaustive search for maximal nilpotent subsemigroups, the radical from
//! its definition, and the subset-growth radical test for factor powers.

use std::collections::HashSet;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::families::BinRelation;
use crate::semigroup::Semigroup;

/// Limits on the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Maximum number of nilpotent elements to search over.
    pub universe: usize,
    /// Maximum number of distinct nilpotent subsemigroups visited.
    pub states: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            universe: 32,
            states: 2_000_000,
        }
    }
}

/// Nilpotency class of a closed set `t ∋ zero` with respect to `zero`, by
/// iterated set powers.
pub fn class_relative(s: &Semigroup, t: &ElementSet, zero: usize) -> Option<usize> {
    if !t.contains(zero) {
        return None;
    }
    let items: Vec<usize> = t.iter().collect();
    let mut power = t.clone();
    for k in 1..=s.order() + 1 {
        if power.is_singleton(zero) {
            return Some(k);
        }
        let mut next = ElementSet::empty(s.order());
        for x in power.iter() {
            for &y in &items {
                next.insert(s.mul(x, y));
            }
        }
        if next == power {
            return None;
        }
        power = next;
    }
    None
}

/// Elements with some power equal to `zero`.
pub fn nilpotent_universe(s: &Semigroup, zero: usize) -> Vec<usize> {
    (0..s.order())
        .filter(|&x| {
            let mut p = x;
            for _ in 0..=s.order() {
                if p == zero {
                    return true;
                }
                p = s.mul(p, x);
            }
            false
        })
        .collect()
}

fn smallest_closed(s: &Semigroup, t: &ElementSet, x: usize) -> ElementSet {
    let mut out = t.clone();
    let mut queue = vec![x];
    out.insert(x);
    while let Some(a) = queue.pop() {
        let current: Vec<usize> = out.iter().collect();
        for b in current {
            for p in [s.mul(a, b), s.mul(b, a)] {
                if out.insert(p) {
                    queue.push(p);
                }
            }
        }
    }
    out
}

/// Inclusion-maximal nilpotent subsemigroups containing `zero`.
pub fn brute_maximal_nilpotent(s: &Semigroup, zero: usize, budget: OracleBudget) -> Result<Vec<ElementSet>> {
    search(s, zero, None, budget)
}

/// Inclusion-maximal nilpotent subsemigroups of class at most `m`.
pub fn brute_class_m_maximal(s: &Semigroup, zero: usize, m: usize, budget: OracleBudget) -> Result<Vec<ElementSet>> {
    search(s, zero, Some(m), budget)
}

/// Depth-first growth from `{zero}`: a state is extended by any nilpotent
/// element whose closure with it stays nilpotent (within the class bound);
/// states with no extension are maximal. Visited states are memoized, and
/// a state whose extensions jointly stay nilpotent jumps straight to their
/// join.
fn search(s: &Semigroup, zero: usize, bound: Option<usize>, budget: OracleBudget) -> Result<Vec<ElementSet>> {
    let universe = nilpotent_universe(s, zero);
    if universe.len() > budget.universe {
        return Err(Error::BudgetExceeded(format!(
            "{} nilpotent elements, universe budget is {}",
            universe.len(),
            budget.universe
        )));
    }
    let allowed = ElementSet::from_indices(s.order(), universe.iter().copied());
    let start = ElementSet::from_indices(s.order(), [zero]);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut maxima = Vec::new();
    let mut stack = vec![start.clone()];
    seen.insert(start);
    let admissible = |t: &ElementSet| {
        t.is_subset(&allowed)
            && class_relative(s, t, zero).is_some_and(|class| bound.is_none_or(|b| class <= b))
    };
    while let Some(t) = stack.pop() {
        let extensions: Vec<(usize, ElementSet)> = universe
            .iter()
            .filter(|&&x| !t.contains(x))
            .map(|&x| (x, smallest_closed(s, &t, x)))
            .filter(|(_, next)| admissible(next))
            .collect();
        if extensions.is_empty() {
            maxima.push(t);
            continue;
        }
        // Every maximum above `t` lies inside the subsemigroup generated by
        // all compatible extensions; when that is admissible it is the only
        // maximum above `t`.
        let compatible: Vec<usize> = extensions.iter().map(|(x, _)| *x).collect();
        let joint = s.closure_extend(&t, &compatible);
        let successors = if admissible(&joint) {
            vec![joint]
        } else {
            extensions.into_iter().map(|(_, next)| next).collect()
        };
        for next in successors {
            if seen.insert(next.clone()) {
                if seen.len() > budget.states {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {} nilpotent subsemigroups visited",
                        budget.states
                    )));
                }
                stack.push(next);
            }
        }
    }
    maxima.sort();
    Ok(maxima)
}

/// `{x : S¹xS¹ is nilpotent}`, one principal ideal per element.
pub fn brute_radical(s: &Semigroup) -> Result<ElementSet> {
    let zero = s.require_zero()?;
    Ok(ElementSet::from_indices(
        s.order(),
        (0..s.order()).filter(|&x| class_relative(s, &s.principal_ideal(x), zero).is_some()),
    ))
}

/// Radical membership in a factor power of a symmetric group: every
/// nonempty proper subset `X` of points grows strictly under `α`.
pub fn fp_radical_predicate(alpha: &BinRelation) -> bool {
    let n = alpha.n() as u32;
    let full = (1u32 << n) - 1;
    (1..full).all(|x| alpha.image_of_set(x as u64).count_ones() > x.count_ones())
}
