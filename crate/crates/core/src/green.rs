//! Green's relations via strongly connected components of the one-sided
//! and two-sided Cayley graphs.
//!
//! `a → sa` edges give `S¹a`-reachability, so SCCs are `L`-classes; `a → as`
//! gives `R`; both edge kinds together give `J`. `D` is computed separately
//! as the join of `L` and `R`, and the two partitions must agree.

use std::fmt::Write as _;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Green's partitions (class ids are numbered by smallest member) and the
/// order on `D`-classes.
#[derive(Debug, Clone)]
pub struct GreenData {
    pub l_class: Vec<usize>,
    pub r_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub d_class: Vec<usize>,
    pub l_count: usize,
    pub r_count: usize,
    pub h_count: usize,
    /// Members of each `D`-class, increasing.
    pub d_members: Vec<Vec<usize>>,
    /// `below[c]`: the `D`-classes strictly below `c`.
    pub below: Vec<ElementSet>,
    /// Whether each `D`-class contains an idempotent.
    pub regular: Vec<bool>,
}

/// Iterative Tarjan over an implicit graph where node `v` has `degree`
/// successors `succ(v, 0..degree)`. Components are numbered in completion
/// order, so every edge goes to a component with an id no larger than its
/// source's.
fn scc(n: usize, degree: usize, succ: impl Fn(usize, usize) -> usize) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut k)) = call.last_mut() {
            if *k < degree {
                let w = succ(v, *k);
                *k += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    (comp, ncomp)
}

/// Renumbers a partition so class ids follow smallest members.
fn canonical(ids: &[usize]) -> (Vec<usize>, usize, Vec<usize>) {
    let mut map = vec![usize::MAX; ids.iter().max().map_or(0, |m| m + 1)];
    let mut next = 0;
    let mut out = Vec::with_capacity(ids.len());
    for &c in ids {
        if map[c] == usize::MAX {
            map[c] = next;
            next += 1;
        }
        out.push(map[c]);
    }
    (out, next, map)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl GreenData {
    pub fn compute(s: &Semigroup) -> Result<GreenData> {
        let n = s.order();
        let (l_raw, _) = scc(n, n, |a, k| s.mul(k, a));
        let (r_raw, _) = scc(n, n, |a, k| s.mul(a, k));
        let (j_raw, j_count) = scc(n, 2 * n, |a, k| if k < n { s.mul(k, a) } else { s.mul(a, k - n) });

        let (l_class, l_count, _) = canonical(&l_raw);
        let (r_class, r_count, _) = canonical(&r_raw);
        let hk: Vec<usize> = (0..n).map(|x| l_class[x] * r_count + r_class[x]).collect();
        let (h_class, h_count, _) = canonical(&hk);

        // D as the join of L and R
        let mut parent: Vec<usize> = (0..n).collect();
        let mut first_in_l = vec![usize::MAX; l_count];
        let mut first_in_r = vec![usize::MAX; r_count];
        for x in 0..n {
            for rep in [&mut first_in_l[l_class[x]], &mut first_in_r[r_class[x]]] {
                if *rep == usize::MAX {
                    *rep = x;
                } else {
                    let (a, b) = (find(&mut parent, *rep), find(&mut parent, x));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        let (d_class, d_count, _) = canonical(&roots);
        let (j_class, _, j_map) = canonical(&j_raw);
        if let Some(x) = (0..n).find(|&x| {
            (0..n).any(|y| (d_class[x] == d_class[y]) != (j_class[x] == j_class[y]))
        }) {
            return Err(Error::Internal(format!(
                "D and J partitions differ at element {x}"
            )));
        }
        debug_assert_eq!(d_count, j_count);

        // reachability between classes, in Tarjan completion order
        let mut succ_classes = vec![ElementSet::empty(j_count); j_count];
        for x in 0..n {
            let cx = j_raw[x];
            for y in (0..n).map(|k| s.mul(k, x)).chain(s.row(x).iter().map(|&v| v as usize)) {
                if j_raw[y] != cx {
                    succ_classes[cx].insert(j_raw[y]);
                }
            }
        }
        let mut reach_raw: Vec<ElementSet> = Vec::with_capacity(j_count);
        for c in 0..j_count {
            let mut r = ElementSet::empty(j_count);
            for d in succ_classes[c].iter() {
                r.insert(d);
                r.union_with(&reach_raw[d]);
            }
            reach_raw.push(r);
        }
        let mut below = vec![ElementSet::empty(d_count); d_count];
        for raw in 0..j_count {
            let c = j_map[raw];
            below[c] = ElementSet::from_indices(d_count, reach_raw[raw].iter().map(|d| j_map[d]));
        }

        let mut d_members = vec![Vec::new(); d_count];
        let mut regular = vec![false; d_count];
        for x in 0..n {
            d_members[d_class[x]].push(x);
            if s.is_idempotent(x) {
                regular[d_class[x]] = true;
            }
        }
        Ok(GreenData {
            l_class,
            r_class,
            h_class,
            d_class,
            l_count,
            r_count,
            h_count,
            d_members,
            below,
            regular,
        })
    }

    pub fn d_count(&self) -> usize {
        self.d_members.len()
    }

    /// `D_a ≤ D_b` in the ideal order.
    pub fn d_leq(&self, a: usize, b: usize) -> bool {
        a == b || self.below[b].contains(a)
    }

    /// Element set of one `D`-class.
    pub fn d_set(&self, c: usize) -> ElementSet {
        ElementSet::from_indices(self.d_class.len(), self.d_members[c].iter().copied())
    }

    /// The principal ideal of any member of class `c`, as the union of the
    /// classes at or below it.
    pub fn ideal_of_class(&self, c: usize) -> ElementSet {
        let mut out = self.d_set(c);
        for d in self.below[c].iter() {
            for &x in &self.d_members[d] {
                out.insert(x);
            }
        }
        out
    }

    /// Nonzero classes with nothing but the zero class below them.
    pub fn minimal_d_classes(&self, s: &Semigroup) -> Result<Vec<usize>> {
        let z = self.d_class[s.require_zero()?];
        Ok((0..self.d_count())
            .filter(|&c| c != z && self.below[c].iter().all(|d| d == z))
            .collect())
    }

    /// Classes (the zero class included) all of whose classes at or below
    /// are the zero class or contain no idempotent.
    pub fn subminimal_d_classes(&self, s: &Semigroup) -> Result<Vec<usize>> {
        let z = self.d_class[s.require_zero()?];
        let ok = |d: usize| d == z || !self.regular[d];
        Ok((0..self.d_count())
            .filter(|&c| ok(c) && self.below[c].iter().all(ok))
            .collect())
    }

    /// Covering pairs `(lower, upper)` of the class order.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for upper in 0..self.d_count() {
            for lower in self.below[upper].iter() {
                let skips = self.below[upper]
                    .iter()
                    .any(|mid| mid != lower && self.below[mid].contains(lower));
                if !skips {
                    edges.push((lower, upper));
                }
            }
        }
        edges
    }
}

/// For a minimal class `c`: every product `ab` of members is zero or lies in
/// `R_a ∩ L_b`, and `D ∪ {0}` is closed.
pub fn dclass_product_check(s: &Semigroup, g: &GreenData, c: usize) -> Result<()> {
    let zero = s.require_zero()?;
    if !g.minimal_d_classes(s)?.contains(&c) {
        return Err(Error::Violation(format!("class {c} is not minimal")));
    }
    for &a in &g.d_members[c] {
        for &b in &g.d_members[c] {
            let p = s.mul(a, b);
            if p != zero && (g.r_class[p] != g.r_class[a] || g.l_class[p] != g.l_class[b]) {
                return Err(Error::Violation(format!(
                    "product of {} and {} leaves R_a ∩ L_b",
                    s.label(a),
                    s.label(b)
                )));
            }
        }
    }
    Ok(())
}

fn html_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Graphviz egg-box diagram: one cluster per `D`-class holding a table whose
/// rows are `R`-classes and columns `L`-classes; idempotent cells are shaded
/// and starred. Edges join covering classes, upper to lower.
pub fn eggbox_dot(s: &Semigroup, g: &GreenData) -> String {
    let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
    for (c, members) in g.d_members.iter().enumerate() {
        let mut rows: Vec<usize> = members.iter().map(|&x| g.r_class[x]).collect();
        let mut cols: Vec<usize> = members.iter().map(|&x| g.l_class[x]).collect();
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        let _ = writeln!(out, "  subgraph cluster_d{c} {{");
        let _ = writeln!(out, "    label=\"D{c}\";");
        let _ = write!(out, "    d{c} [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">");
        for &r in &rows {
            out.push_str("<tr>");
            for &l in &cols {
                let cell: Vec<usize> = members
                    .iter()
                    .copied()
                    .filter(|&x| g.r_class[x] == r && g.l_class[x] == l)
                    .collect();
                let idem = cell.iter().any(|&x| s.is_idempotent(x));
                let text: Vec<String> = cell
                    .iter()
                    .map(|&x| {
                        let mark = if s.is_idempotent(x) { "*" } else { "" };
                        format!("{mark}{}", html_escape(&s.label(x)))
                    })
                    .collect();
                if idem {
                    let _ = write!(out, "<td bgcolor=\"lightgrey\">{}</td>", text.join(" "));
                } else {
                    let _ = write!(out, "<td>{}</td>", text.join(" "));
                }
            }
            out.push_str("</tr>");
        }
        out.push_str("</table>>];\n  }\n");
    }
    for (lower, upper) in g.cover_edges() {
        let _ = writeln!(out, "  d{upper} -> d{lower};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::families::{build_b, build_d, build_is};

    fn group_with_zero() -> Semigroup {
        // {0} ∪ Z/2 with the group {1, 2}
        Semigroup::validate(&[vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn group_with_zero_has_two_classes() {
        let s = group_with_zero();
        let g = GreenData::compute(&s).unwrap();
        assert_eq!(g.d_count(), 2);
        assert_eq!(g.h_count, 2);
        assert_eq!(g.minimal_d_classes(&s).unwrap(), vec![g.d_class[1]]);
    }

    #[test]
    fn is3_classes_are_ranks_in_a_chain() {
        let b = build_is(3, 5, Exec::Sequential).unwrap();
        let s = &b.semigroup;
        let g = GreenData::compute(s).unwrap();
        assert_eq!(g.d_count(), 4);
        for x in 0..s.order() {
            for y in 0..s.order() {
                let same_rank = b.elements[x].rank() == b.elements[y].rank();
                assert_eq!(g.d_class[x] == g.d_class[y], same_rank);
                let leq = b.elements[x].rank() <= b.elements[y].rank();
                assert_eq!(g.d_leq(g.d_class[x], g.d_class[y]), leq);
            }
        }
        let mins = g.minimal_d_classes(s).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(g.d_members[mins[0]].len(), 9);
        assert!(g.subminimal_d_classes(s).unwrap() == vec![g.d_class[s.zero().unwrap()]]);
        dclass_product_check(s, &g, mins[0]).unwrap();
    }

    #[test]
    fn b2_minimal_class_is_the_full_relation() {
        let s = build_b(2, 3, Exec::Sequential).unwrap().semigroup;
        let g = GreenData::compute(&s).unwrap();
        let mins = g.minimal_d_classes(&s).unwrap();
        assert_eq!(mins.len(), 1);
        let theta = s.find_label("11/11").unwrap();
        assert_eq!(g.d_class[theta], mins[0]);
        assert_eq!(g.d_members[mins[0]].len(), 9);
        dclass_product_check(&s, &g, mins[0]).unwrap();
    }

    #[test]
    fn null_semigroup_minimal_class() {
        let s = Semigroup::validate(&[vec![0, 0], vec![0, 0]]).unwrap();
        let g = GreenData::compute(&s).unwrap();
        assert_eq!(g.minimal_d_classes(&s).unwrap(), vec![g.d_class[1]]);
        // irregular minimal class is subminimal
        assert!(g.subminimal_d_classes(&s).unwrap().contains(&g.d_class[1]));
    }

    #[test]
    fn principal_ideals_are_unions_of_lower_classes() {
        for s in [
            build_is(3, 5, Exec::Sequential).unwrap().semigroup,
            build_d(3, 6, Exec::Sequential).unwrap().semigroup,
            group_with_zero(),
        ] {
            let g = GreenData::compute(&s).unwrap();
            for a in 0..s.order() {
                assert_eq!(s.principal_ideal(a), g.ideal_of_class(g.d_class[a]));
            }
        }
    }

    #[test]
    fn d3_subminimal_classes_are_nilpotent_maps() {
        let b = build_d(3, 6, Exec::Sequential).unwrap();
        let s = &b.semigroup;
        let g = GreenData::compute(s).unwrap();
        let sub: Vec<usize> = g
            .subminimal_d_classes(s)
            .unwrap()
            .into_iter()
            .flat_map(|c| g.d_members[c].clone())
            .collect();
        let nilpotent: Vec<usize> = (0..s.order()).filter(|&x| s.element_nilpotency(x).is_some()).collect();
        let mut sub = sub;
        sub.sort();
        assert_eq!(sub, nilpotent);
        assert_eq!(sub.len(), 2);
    }

    #[test]
    fn dot_export_is_deterministic() {
        let s = build_is(2, 5, Exec::Sequential).unwrap().semigroup;
        let g = GreenData::compute(&s).unwrap();
        let dot = eggbox_dot(&s, &g);
        assert_eq!(dot.matches("subgraph cluster_").count(), 3);
        assert_eq!(dot, eggbox_dot(&s, &GreenData::compute(&s).unwrap()));
        let t = Semigroup::validate(&[vec![0]]).unwrap();
        let gt = GreenData::compute(&t).unwrap();
        assert_eq!(eggbox_dot(&t, &gt).matches("subgraph cluster_").count(), 1);
    }
}
