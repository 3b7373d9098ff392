//! Exhaustive structural probes. Each returns `Ok(())` or a
//! [`Error::Violation`] naming the offending elements.

use crate::bitset::ElementSet;
use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::green::{dclass_product_check, GreenData};
use crate::oracle;
use crate::semigroup::Semigroup;
use crate::structure::{primitive_idempotents, Analysis};

fn violation(msg: String) -> Error {
    Error::Violation(msg)
}

/// Two elements are `D`-related iff they generate the same principal ideal.
pub fn d_equals_j(s: &Semigroup, g: &GreenData) -> Result<()> {
    let ideals: Vec<ElementSet> = (0..s.order()).map(|x| s.principal_ideal(x)).collect();
    for a in 0..s.order() {
        for b in a + 1..s.order() {
            if (g.d_class[a] == g.d_class[b]) != (ideals[a] == ideals[b]) {
                return Err(violation(format!("D and J disagree on ({a}, {b})")));
            }
        }
    }
    Ok(())
}

/// Products inside each minimal class are zero or land in `R_a ∩ L_b`.
pub fn minimal_class_products(s: &Semigroup, g: &GreenData) -> Result<()> {
    for c in g.minimal_d_classes(s)? {
        dclass_product_check(s, g, c)?;
    }
    Ok(())
}

/// The principal ideal of a member of a minimal class is the class plus zero.
pub fn minimal_class_ideals(s: &Semigroup, g: &GreenData) -> Result<()> {
    let zero = s.require_zero()?;
    for c in g.minimal_d_classes(s)? {
        let mut expected = g.d_set(c);
        expected.insert(zero);
        for &a in &g.d_members[c] {
            if s.principal_ideal(a) != expected {
                return Err(violation(format!("principal ideal of {a} is not its class plus zero")));
            }
        }
    }
    Ok(())
}

/// The class-order radical equals the radical from its definition.
pub fn radical_matches_definition(a: &Analysis) -> Result<()> {
    let brute = oracle::brute_radical(&a.semigroup)?;
    if brute != a.radical {
        return Err(violation(format!(
            "definition gives {} radical elements, class order gives {}",
            brute.len(),
            a.radical.len()
        )));
    }
    Ok(())
}

/// The radical is nilpotent.
pub fn radical_is_nilpotent(a: &Analysis) -> Result<()> {
    match a.semigroup.nilpotency_class(&a.radical)? {
        Some(k) if k == a.radical_class => Ok(()),
        other => Err(violation(format!("radical class {other:?}, recorded {}", a.radical_class))),
    }
}

fn minimal_pairs(a: &Analysis) -> Vec<(usize, usize, usize, usize)> {
    // (e, class of e, f, class of f) over working indices
    let mut out = Vec::new();
    for (ci, es) in a.minimal_idempotents.iter().enumerate() {
        for (cj, fs) in a.minimal_idempotents.iter().enumerate() {
            for &e in es {
                for &f in fs {
                    out.push((e, ci, f, cj));
                }
            }
        }
    }
    out
}

/// `exf = 0` for minimal idempotents in different classes and every `x`
/// in `S¹` (the identity case is `ef`).
pub fn cross_class_products_vanish(a: &Analysis) -> Result<()> {
    let s = &a.working;
    let zero = a.working_zero;
    for (e, ci, f, cj) in minimal_pairs(a) {
        if ci == cj {
            continue;
        }
        if s.mul(e, f) != zero {
            return Err(violation(format!("ef != 0 for e = {e}, f = {f} in different classes")));
        }
        if let Some(x) = (0..s.order()).find(|&x| s.mul(s.mul(e, x), f) != zero) {
            return Err(violation(format!("exf != 0 for e = {e}, x = {x}, f = {f}")));
        }
    }
    Ok(())
}

/// A nonzero `exf` with `e`, `f` minimal lies in the common class of `e`
/// and `f`.
pub fn sandwich_stays_in_class(a: &Analysis) -> Result<()> {
    let s = &a.working;
    let d = &a.working_green.d_class;
    let zero = a.working_zero;
    for (e, _, f, _) in minimal_pairs(a) {
        for x in 0..s.order() {
            let p = s.mul(s.mul(e, x), f);
            if p != zero && (d[e] != d[f] || d[p] != d[e]) {
                return Err(violation(format!("exf = {p} escapes the class, e = {e}, x = {x}, f = {f}")));
            }
        }
    }
    Ok(())
}

/// Nonzero idempotents below a minimal idempotent share its class.
pub fn idempotents_below_minimal(a: &Analysis) -> Result<()> {
    let s = &a.working;
    let d = &a.working_green.d_class;
    let zero = a.working_zero;
    let idem: Vec<usize> = s.idempotents();
    for &e in a.minimal_idempotents.iter().flatten() {
        for &f in &idem {
            if f != zero && s.mul(e, f) == f && s.mul(f, e) == f && d[f] != d[e] {
                return Err(violation(format!("{f} below minimal {e} in another class")));
            }
        }
    }
    Ok(())
}

/// Distinct minimal idempotents are orthogonal iff they commute.
pub fn orthogonal_iff_commute(a: &Analysis) -> Result<()> {
    let s = &a.working;
    let zero = a.working_zero;
    for (e, _, f, _) in minimal_pairs(a) {
        if e == f {
            continue;
        }
        let commute = s.mul(e, f) == s.mul(f, e);
        let orth = s.mul(e, f) == zero && s.mul(f, e) == zero;
        if commute != orth {
            return Err(violation(format!("e = {e}, f = {f}: commute {commute}, orthogonal {orth}")));
        }
    }
    Ok(())
}

/// Every minimal idempotent is primitive in the original semigroup.
pub fn minimal_are_primitive(a: &Analysis) -> Result<()> {
    let prim = primitive_idempotents(&a.semigroup)?;
    let min = a.minimal_idempotents_of_s();
    match min.iter().find(|&e| !prim.contains(e)) {
        Some(e) => Err(violation(format!("minimal idempotent {e} is not primitive"))),
        None => Ok(()),
    }
}

/// Primitive idempotents that are not minimal (empty on regular
/// semigroups; reported, not asserted, otherwise).
pub fn primitive_not_minimal(a: &Analysis) -> Result<Vec<usize>> {
    let prim = primitive_idempotents(&a.semigroup)?;
    let min = a.minimal_idempotents_of_s();
    Ok(prim.iter().filter(|&e| !min.contains(e)).collect())
}

pub fn is_regular(g: &GreenData) -> bool {
    g.regular.iter().all(|&r| r)
}

/// On a regular semigroup, minimal and primitive idempotents coincide.
pub fn regular_minimal_equals_primitive(a: &Analysis) -> Result<()> {
    if !is_regular(&a.green) {
        return Ok(());
    }
    let extra = primitive_not_minimal(a)?;
    if !extra.is_empty() {
        return Err(violation(format!("primitive but not minimal: {extra:?}")));
    }
    minimal_are_primitive(a)
}

/// Every `x` outside the radical has `exf ≠ 0` for idempotents `e`, `f`;
/// in the working semigroup both can be taken from one minimal class.
pub fn outside_radical_is_separated(a: &Analysis) -> Result<()> {
    let s = &a.semigroup;
    let zero = a.zero;
    let idem: Vec<usize> = s.idempotents();
    for x in 0..s.order() {
        if a.radical.contains(x) {
            continue;
        }
        let found = idem
            .iter()
            .any(|&e| idem.iter().any(|&f| s.mul(s.mul(e, x), f) != zero));
        if !found {
            return Err(violation(format!("no idempotents separate {x}")));
        }
    }
    let w = &a.working;
    let wz = a.working_zero;
    for x in 0..w.order() {
        if x == wz {
            continue;
        }
        let found = a.minimal_idempotents.iter().any(|class| {
            class
                .iter()
                .any(|&e| class.iter().any(|&f| w.mul(w.mul(e, x), f) != wz))
        });
        if !found {
            return Err(violation(format!("no minimal class separates working element {x}")));
        }
    }
    Ok(())
}

/// For a nilpotent subsemigroup `t`, `R ∪ T` is closed with class at most
/// `class(T) · class(R)`.
pub fn radical_join(a: &Analysis, t: &ElementSet) -> Result<()> {
    let s = &a.semigroup;
    let m = s.nilpotency_class(t)?.ok_or(Error::NotNilpotent)?;
    let join = a.radical.union(t);
    if let Some((x, y, p)) = s.closure_violation(&join) {
        return Err(violation(format!("R ∪ T not closed: {x}*{y} = {p}")));
    }
    let class = s
        .nilpotency_class(&join)?
        .ok_or_else(|| violation("R ∪ T is not nilpotent".into()))?;
    if class > m * a.radical_class {
        return Err(violation(format!("class of R ∪ T is {class} > {m} * {}", a.radical_class)));
    }
    Ok(())
}

/// Adding any element to a maximum of the working semigroup produces a
/// nonzero idempotent in the generated subsemigroup.
pub fn maximality(a: &Analysis, working_t: &ElementSet) -> Result<()> {
    let w = &a.working;
    for x in 0..w.order() {
        if working_t.contains(x) {
            continue;
        }
        let grown = w.closure_extend(working_t, &[x]);
        if !grown.iter().any(|y| y != a.working_zero && w.is_idempotent(y)) {
            return Err(violation(format!("T ∪ {{{x}}} generates a nilpotent subsemigroup")));
        }
    }
    Ok(())
}

/// Outcome of one probe.
#[derive(Debug, Clone)]
pub struct Probe {
    pub name: &'static str,
    pub outcome: Result<()>,
}

/// Runs every probe. The definition-based radical costs one principal ideal
/// per element and can be skipped on large inputs.
pub fn structural_probes(a: &Analysis, definitional_radical: bool, exec: Exec) -> Vec<Probe> {
    let s = &a.semigroup;
    let g = &a.green;
    let mut out = vec![
        Probe {
            name: "d_equals_j",
            outcome: d_equals_j(s, g),
        },
        Probe {
            name: "minimal_class_products",
            outcome: minimal_class_products(s, g),
        },
        Probe {
            name: "minimal_class_ideals",
            outcome: minimal_class_ideals(s, g),
        },
    ];
    if definitional_radical {
        out.push(Probe {
            name: "radical_matches_definition",
            outcome: radical_matches_definition(a),
        });
    }
    out.extend([
        Probe {
            name: "radical_is_nilpotent",
            outcome: radical_is_nilpotent(a),
        },
        Probe {
            name: "cross_class_products_vanish",
            outcome: cross_class_products_vanish(a),
        },
        Probe {
            name: "sandwich_stays_in_class",
            outcome: sandwich_stays_in_class(a),
        },
        Probe {
            name: "idempotents_below_minimal",
            outcome: idempotents_below_minimal(a),
        },
        Probe {
            name: "orthogonal_iff_commute",
            outcome: orthogonal_iff_commute(a),
        },
        Probe {
            name: "minimal_are_primitive",
            outcome: minimal_are_primitive(a),
        },
        Probe {
            name: "regular_minimal_equals_primitive",
            outcome: regular_minimal_equals_primitive(a),
        },
        Probe {
            name: "outside_radical_is_separated",
            outcome: outside_radical_is_separated(a),
        },
    ]);
    let intersection = match a.find_m(crate::structure::DEFAULT_M_BUDGET, exec) {
        Ok(search) => match search.found() {
            Some(m) => Classifier::new(a, m, exec).and_then(|c| {
                let maxima = c.enumerate_maximal(exec)?;
                for mx in &maxima {
                    maximality(a, &mx.working)?;
                }
                c.intersection_of_maxima(exec).map(|_| ())
            }),
            None => Ok(()),
        },
        Err(e) => Err(e),
    };
    out.push(Probe {
        name: "radical_is_intersection_of_maxima",
        outcome: intersection,
    });
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::families::{build_d, build_is, build_mat2f2, build_radical_gap};

    fn all_pass(s: Semigroup) {
        let a = Analysis::new(Arc::new(s)).unwrap();
        for p in structural_probes(&a, true, Exec::Sequential) {
            assert!(p.outcome.is_ok(), "{}: {:?}", p.name, p.outcome);
        }
    }

    #[test]
    fn probes_pass_on_small_fixtures() {
        all_pass(build_is(3, 5, Exec::Sequential).unwrap().semigroup);
        all_pass(build_d(3, 6, Exec::Sequential).unwrap().semigroup);
        all_pass(build_mat2f2(Exec::Sequential).unwrap().semigroup);
        all_pass(build_radical_gap(Exec::Sequential).unwrap().semigroup);
    }

    #[test]
    fn radical_join_with_a_nilpotent_subsemigroup() {
        let built = build_d(4, 6, Exec::Sequential).unwrap();
        let a = Analysis::new(Arc::new(built.semigroup.clone())).unwrap();
        let zero = a.zero;
        let t = ElementSet::from_indices(a.semigroup.order(), [zero]);
        radical_join(&a, &t).unwrap();
        radical_join(&a, &a.radical.clone()).unwrap();
    }
}
