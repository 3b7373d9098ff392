//! The finite-semigroup kernel: a validated multiplication table over dense
//! element indices, plus the set-level operations everything else builds on.

use std::sync::Arc;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::exec::Exec;

/// An immutable finite semigroup given by its Cayley table.
///
/// `table[a * order + b]` is the product `ab`. Transformation families use the
/// right action convention, so `ab` means "apply `a`, then `b`".
#[derive(Clone, PartialEq, Eq)]
pub struct Semigroup {
    order: usize,
    table: Vec<u32>,
    zero: Option<usize>,
    identity: Option<usize>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Semigroup")
            .field("order", &self.order)
            .field("zero", &self.zero)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl Semigroup {
    /// Validates a square table given as rows and detects zero and identity.
    pub fn validate(rows: &[Vec<usize>]) -> Result<Semigroup> {
        let n = rows.len();
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: r + 2,
                    message: format!("row {r} has {} entries, expected {n}", row.len()),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::IndexOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        order: n,
                    });
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table, Exec::default())
    }

    /// Builds the table from a product function and validates it.
    pub fn from_fn<F>(order: usize, exec: Exec, f: F) -> Result<Semigroup>
    where
        F: Fn(usize, usize) -> usize + Sync + Send,
    {
        let rows: Vec<Vec<u32>> = exec.map(order, |a| (0..order).map(|b| f(a, b) as u32).collect());
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.into_iter().enumerate() {
            for (b, v) in row.into_iter().enumerate() {
                if v as usize >= order {
                    return Err(Error::IndexOutOfRange {
                        row: a,
                        col: b,
                        value: v as usize,
                        order,
                    });
                }
                table.push(v);
            }
        }
        Self::from_flat(order, table, exec)
    }

    /// Validates a flat row-major table. Entries must already be `< order`.
    pub fn from_flat(order: usize, table: Vec<u32>, exec: Exec) -> Result<Semigroup> {
        if order == 0 {
            return Err(Error::Parse {
                line: 1,
                message: "a semigroup needs at least one element".into(),
            });
        }
        if table.len() != order * order {
            return Err(Error::ShapeMismatch(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= order) {
            return Err(Error::IndexOutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos] as usize,
                order,
            });
        }
        let mut s = Semigroup {
            order,
            table,
            zero: None,
            identity: None,
            labels: None,
        };
        s.check_associative(exec)?;
        s.zero = s.detect_zero();
        s.identity = s.detect_identity();
        Ok(s)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn require_zero(&self) -> Result<usize> {
        self.zero.ok_or(Error::NoZero)
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of an element, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Element whose label (or decimal index, when unlabeled) equals `label`.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&i: &usize| i < self.order),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    /// Product of a word of elements, left to right.
    pub fn mul_all(&self, word: &[usize]) -> usize {
        let (&first, rest) = word.split_first().expect("nonempty word");
        rest.iter().fold(first, |acc, &x| self.mul(acc, x))
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// Rows of the table as plain index vectors (for serialization).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.row(a).iter().map(|&v| v as usize).collect())
            .collect()
    }

    fn detect_zero(&self) -> Option<usize> {
        (0..self.order).find(|&z| {
            self.mul(z, z) == z && (0..self.order).all(|a| self.mul(z, a) == z && self.mul(a, z) == z)
        })
    }

    fn detect_identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| {
            self.mul(e, e) == e && (0..self.order).all(|a| self.mul(e, a) == a && self.mul(a, e) == a)
        })
    }

    /// A generating set chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order;
        let mut inside = ElementSet::empty(n);
        let mut processed: Vec<usize> = Vec::new();
        let mut gens = Vec::new();
        let mut queue = Vec::new();
        for c in 0..n {
            if inside.contains(c) {
                continue;
            }
            gens.push(c);
            inside.insert(c);
            queue.push(c);
            while let Some(x) = queue.pop() {
                processed.push(x);
                for i in 0..processed.len() {
                    let y = processed[i];
                    for p in [self.mul(x, y), self.mul(y, x)] {
                        if inside.insert(p) {
                            queue.push(p);
                        }
                    }
                }
            }
        }
        gens
    }

    /// Light's associativity test: with a generating set `A` of the magma,
    /// the table is associative iff `(xa)y = x(ay)` for all `x, y` and
    /// `a` in `A`. Exact, and `O(n^2 |A|)` instead of `O(n^3)`.
    fn check_associative(&self, exec: Exec) -> Result<()> {
        let n = self.order;
        for g in self.generating_set() {
            let gy = self.row(g);
            let witness = exec.find_first(n, |x| {
                let xg = self.row(self.mul(x, g));
                let row_x = self.row(x);
                (0..n)
                    .find(|&y| xg[y] != row_x[gy[y] as usize])
                    .map(|y| (x, y))
            });
            if let Some((x, y)) = witness {
                return Err(Error::NonAssociative { a: x, b: g, c: y });
            }
        }
        Ok(())
    }

    /// `S^1`: `self` if an identity exists, otherwise a copy with a fresh
    /// identity appended as the last element.
    pub fn adjoin_identity(&self) -> Semigroup {
        if self.identity.is_some() {
            return self.clone();
        }
        let n = self.order;
        let m = n + 1;
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let v = if a == n {
                    b
                } else if b == n {
                    a
                } else {
                    self.mul(a, b)
                };
                table.push(v as u32);
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.push("1".to_string());
            l
        });
        Semigroup {
            order: m,
            table,
            zero: self.zero,
            identity: Some(n),
            labels,
        }
    }

    /// Smallest subsemigroup containing `generators` (worklist saturation).
    pub fn closure(&self, generators: &ElementSet) -> ElementSet {
        let mut inside = ElementSet::empty(self.order);
        let mut processed = Vec::new();
        let mut queue: Vec<usize> = generators.iter().collect();
        for &g in &queue {
            inside.insert(g);
        }
        while let Some(x) = queue.pop() {
            processed.push(x);
            for i in 0..processed.len() {
                let y = processed[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if inside.insert(p) {
                        queue.push(p);
                    }
                }
            }
        }
        inside
    }

    /// Extends an already closed set by extra generators.
    pub fn closure_extend(&self, closed: &ElementSet, extra: &[usize]) -> ElementSet {
        let mut inside = closed.clone();
        let mut processed: Vec<usize> = closed.iter().collect();
        let mut queue: Vec<usize> = extra.iter().copied().filter(|&x| !closed.contains(x)).collect();
        for &g in &queue {
            inside.insert(g);
        }
        while let Some(x) = queue.pop() {
            processed.push(x);
            for i in 0..processed.len() {
                let y = processed[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if inside.insert(p) {
                        queue.push(p);
                    }
                }
            }
        }
        inside
    }

    /// `{ab : a in A, b in B}`.
    pub fn set_product(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let bl: Vec<usize> = b.iter().collect();
        self.product_lists(a.iter(), &bl)
    }

    fn product_lists(&self, a: impl Iterator<Item = usize>, b: &[usize]) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for x in a {
            let row = self.row(x);
            for &y in b {
                out.insert(row[y] as usize);
            }
        }
        out
    }

    /// First product escaping `set`, if any.
    pub fn closure_violation(&self, set: &ElementSet) -> Option<(usize, usize, usize)> {
        let items: Vec<usize> = set.iter().collect();
        for &a in &items {
            let row = self.row(a);
            for &b in &items {
                let p = row[b] as usize;
                if !set.contains(p) {
                    return Some((a, b, p));
                }
            }
        }
        None
    }

    pub fn is_closed(&self, set: &ElementSet) -> bool {
        self.closure_violation(set).is_none()
    }

    /// Smallest `k` with `T^k = {0}`, or `None` when the powers of `T`
    /// stabilise above `{0}`.
    pub fn nilpotency_class(&self, t: &ElementSet) -> Result<Option<usize>> {
        let zero = self.require_zero()?;
        if let Some((a, b, product)) = self.closure_violation(t) {
            return Err(Error::NotClosed { a, b, product });
        }
        if !t.contains(zero) {
            return Ok(None);
        }
        let class = self.power_class(t, zero);
        let has_nonzero_idempotent = t.iter().any(|x| x != zero && self.is_idempotent(x));
        if class.is_some() == has_nonzero_idempotent {
            return Err(Error::Internal(format!(
                "set powers report class {class:?} but nonzero idempotent present = {has_nonzero_idempotent}"
            )));
        }
        Ok(class)
    }

    /// Set-power iteration without the closure precondition check.
    pub(crate) fn power_class(&self, t: &ElementSet, zero: usize) -> Option<usize> {
        let tl: Vec<usize> = t.iter().collect();
        let mut power = t.clone();
        let mut k = 1;
        loop {
            if power.is_singleton(zero) {
                return Some(k);
            }
            let next = self.product_lists(power.iter(), &tl);
            if next == power || k > self.order {
                return None;
            }
            power = next;
            k += 1;
        }
    }

    /// Least `k` with `x^k = 0`, if `x` is nilpotent.
    pub fn element_nilpotency(&self, x: usize) -> Option<usize> {
        let zero = self.zero?;
        let mut p = x;
        for k in 1..=self.order {
            if p == zero {
                return Some(k);
            }
            p = self.mul(p, x);
        }
        None
    }

    /// `S^1 a`.
    pub fn left_ideal(&self, a: usize) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        out.insert(a);
        for s in 0..self.order {
            out.insert(self.mul(s, a));
        }
        out
    }

    /// `a S^1`.
    pub fn right_ideal(&self, a: usize) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        out.insert(a);
        for &v in self.row(a) {
            out.insert(v as usize);
        }
        out
    }

    /// The two-sided ideal `S^1 a S^1`.
    pub fn principal_ideal(&self, a: usize) -> ElementSet {
        let left = self.left_ideal(a);
        let mut out = left.clone();
        for y in left.iter() {
            for &v in self.row(y) {
                out.insert(v as usize);
            }
        }
        out
    }

    /// First product `si` or `is` leaving `set`, if any.
    pub fn ideal_violation(&self, set: &ElementSet) -> Option<usize> {
        for i in set.iter() {
            for s in 0..self.order {
                for p in [self.mul(s, i), self.mul(i, s)] {
                    if !set.contains(p) {
                        return Some(p);
                    }
                }
            }
        }
        None
    }

    /// Rees quotient `S/I`, collapsing the ideal `I` to a single zero.
    pub fn rees_quotient(&self, ideal: &ElementSet) -> Result<Quotient> {
        if ideal.is_empty() {
            return Err(Error::NotAnIdeal { product: usize::MAX });
        }
        if let Some(product) = self.ideal_violation(ideal) {
            return Err(Error::NotAnIdeal { product });
        }
        let zero_pos = ideal.first().expect("nonempty ideal");
        let mut forward = vec![0usize; self.order];
        let mut back = Vec::new();
        for x in 0..self.order {
            if ideal.contains(x) {
                if x == zero_pos {
                    back.push(None);
                }
                continue;
            }
            forward[x] = back.len();
            back.push(Some(x));
        }
        let q_zero = back.iter().position(|b| b.is_none()).expect("zero slot");
        for x in ideal.iter() {
            forward[x] = q_zero;
        }
        let m = back.len();
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let v = match (back[a], back[b]) {
                    (Some(x), Some(y)) => forward[self.mul(x, y)],
                    _ => q_zero,
                };
                table.push(v as u32);
            }
        }
        let mut quotient = Semigroup::from_flat(m, table, Exec::default())?;
        if let Some(labels) = &self.labels {
            let zl = match self.zero {
                Some(z) if ideal.contains(z) => labels[z].clone(),
                _ => "0".to_string(),
            };
            let ql = back
                .iter()
                .map(|b| b.map_or_else(|| zl.clone(), |x| labels[x].clone()))
                .collect();
            quotient = quotient.with_labels(ql);
        }
        Ok(Quotient {
            semigroup: quotient,
            forward,
            back,
            ideal: ideal.clone(),
        })
    }

    /// Restriction to a closed subset, re-indexed in increasing order.
    /// Returns the subsemigroup and the embedding of its indices.
    pub fn subsemigroup(&self, set: &ElementSet) -> Result<(Semigroup, Vec<usize>)> {
        if let Some((a, b, product)) = self.closure_violation(set) {
            return Err(Error::NotClosed { a, b, product });
        }
        let embed: Vec<usize> = set.iter().collect();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i;
        }
        let m = embed.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &embed {
            for &y in &embed {
                table.push(pos[self.mul(x, y)] as u32);
            }
        }
        let mut sub = Semigroup::from_flat(m, table, Exec::default())?;
        if let Some(labels) = &self.labels {
            sub = sub.with_labels(embed.iter().map(|&x| labels[x].clone()).collect());
        }
        Ok((sub, embed))
    }

    /// The variant `(S, *_a)` with `x *_a y = x a y`.
    pub fn variant(&self, a: usize) -> Result<Semigroup> {
        let n = self.order;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let xa = self.mul(x, a);
            table.extend_from_slice(self.row(xa));
        }
        let s = Semigroup::from_flat(n, table, Exec::default())?;
        Ok(match &self.labels {
            Some(l) => s.with_labels(l.clone()),
            None => s,
        })
    }
}

/// Result of a Rees quotient `S/I`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub semigroup: Semigroup,
    /// `S` index to quotient index (the ideal maps to the quotient zero).
    pub forward: Vec<usize>,
    /// Quotient index to `S` index; `None` for the collapsed zero.
    pub back: Vec<Option<usize>>,
    pub ideal: ElementSet,
}

impl Quotient {
    pub fn zero(&self) -> usize {
        self.back.iter().position(|b| b.is_none()).expect("quotient zero")
    }

    /// Preimage `phi^{-1}(T \ {0}) ∪ I` of a quotient subset.
    pub fn pull_back(&self, t: &ElementSet) -> ElementSet {
        let mut out = self.ideal.clone();
        for q in t.iter() {
            if let Some(x) = self.back[q] {
                out.insert(x);
            }
        }
        out
    }

    /// Image of an `S` subset in the quotient.
    pub fn push_forward(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.semigroup.order(), set.iter().map(|x| self.forward[x]))
    }
}

/// A closed subset containing zero, with its verified nilpotency class.
#[derive(Debug, Clone)]
pub struct NilpotentSubsemigroup {
    pub parent: Arc<Semigroup>,
    pub elements: ElementSet,
    pub nilpotency_class: usize,
}

impl NilpotentSubsemigroup {
    pub fn new(parent: Arc<Semigroup>, elements: ElementSet) -> Result<Self> {
        let class = parent.nilpotency_class(&elements)?.ok_or(Error::NotNilpotent)?;
        Ok(NilpotentSubsemigroup {
            parent,
            elements,
            nilpotency_class: class,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|x| self.parent.label(x)).collect()
    }
}
