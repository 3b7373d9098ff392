//! Binary relations on `{1..n}` as bit matrices, and the families built
//! from them. Relation elements are listed by increasing bit value, with
//! pair `(i, j)` stored at bit `i * n + j`; the empty relation is always
//! index 0 of `B_n`.

use std::fmt;

use super::Built;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::semigroup::Semigroup;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinRelation {
    n: u8,
    bits: u64,
}

impl BinRelation {
    pub fn new(n: usize, bits: u64) -> Self {
        assert!(n <= 8);
        BinRelation { n: n as u8, bits }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Self::new(n, 0);
        for (i, j) in pairs {
            r.bits |= 1 << (i * n + j);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        Self::from_pairs(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))))
    }

    pub fn diagonal_point(n: usize, i: usize) -> Self {
        Self::from_pairs(n, [(i, i)])
    }

    /// Graph `{(i, π(i))}` of a permutation.
    pub fn graph(perm: &[usize]) -> Self {
        Self::from_pairs(perm.len(), perm.iter().copied().enumerate())
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits & (1 << (i * self.n() + j)) != 0
    }

    pub fn row(&self, i: usize) -> u64 {
        let n = self.n();
        (self.bits >> (i * n)) & ((1 << n) - 1)
    }

    pub fn is_subset(&self, other: &BinRelation) -> bool {
        self.bits & !other.bits == 0
    }

    /// Relational composition: `(i, k)` whenever `(i, j)` in `self` and
    /// `(j, k)` in `other`.
    pub fn then(&self, other: &BinRelation) -> BinRelation {
        let n = self.n();
        let mut bits = 0;
        for i in 0..n {
            let mut row = 0;
            let mut r = self.row(i);
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                r &= r - 1;
                row |= other.row(j);
            }
            bits |= row << (i * n);
        }
        BinRelation { n: self.n, bits }
    }

    /// `X^α`: everything related to some point of `x` (a point bitmask).
    pub fn image_of_set(&self, x: u64) -> u64 {
        (0..self.n())
            .filter(|i| x & (1 << i) != 0)
            .fold(0, |acc, i| acc | self.row(i))
    }

    pub fn parse(label: &str) -> Option<BinRelation> {
        let rows: Vec<&str> = label.split('/').collect();
        let n = rows.len();
        if n > 8 {
            return None;
        }
        let mut r = BinRelation::new(n, 0);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return None;
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '1' => r.bits |= 1 << (i * n + j),
                    '0' => {}
                    _ => return None,
                }
            }
        }
        Some(r)
    }
}

/// Rows of the 0/1 matrix separated by `/`, e.g. `10/01`.
impl fmt::Display for BinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.n() {
                f.write_str(if self.contains(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinRelation({self})")
    }
}

fn check_bound(family: &str, n: usize, lo: usize, bound: usize) -> Result<()> {
    if n < lo || n > bound {
        return Err(Error::BoundExceeded {
            family: family.into(),
            n,
            bound,
        });
    }
    Ok(())
}

fn build_from_relations(rels: Vec<BinRelation>, exec: Exec) -> Result<Built<BinRelation>> {
    let n = rels.first().map_or(0, BinRelation::n);
    let mut index = vec![u32::MAX; 1 << (n * n)];
    for (i, r) in rels.iter().enumerate() {
        index[r.bits as usize] = i as u32;
    }
    let rows: Vec<Result<Vec<u32>>> = exec.map(rels.len(), |a| {
        rels.iter()
            .map(|b| {
                let p = rels[a].then(b);
                match index[p.bits as usize] {
                    u32::MAX => Err(Error::Internal(format!("{}·{b} = {p} escapes", rels[a]))),
                    i => Ok(i),
                }
            })
            .collect()
    });
    let mut table = Vec::with_capacity(rels.len() * rels.len());
    for row in rows {
        table.extend(row?);
    }
    let semigroup = Semigroup::from_flat(rels.len(), table, exec)?
        .with_labels(rels.iter().map(|r| r.to_string()).collect());
    Ok(Built {
        semigroup,
        elements: rels,
    })
}

/// All binary relations on `n` points.
pub fn build_b(n: usize, bound: usize, exec: Exec) -> Result<Built<BinRelation>> {
    check_bound("b", n, 1, bound)?;
    let rels = (0..1u64 << (n * n)).map(|b| BinRelation::new(n, b)).collect();
    build_from_relations(rels, exec)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Relations that are unions of permutation graphs: a relation qualifies
/// when it is nonempty and equals the union of the graphs it contains.
pub fn build_fp(n: usize, bound: usize, exec: Exec) -> Result<Built<BinRelation>> {
    check_bound("fp", n, 2, bound)?;
    let graphs: Vec<BinRelation> = permutations(n).iter().map(|p| BinRelation::graph(p)).collect();
    let keep = |bits: usize| {
        let r = BinRelation::new(n, bits as u64);
        let covered = graphs
            .iter()
            .filter(|g| g.is_subset(&r))
            .fold(0, |acc, g| acc | g.bits);
        bits != 0 && covered == r.bits
    };
    let rels: Vec<BinRelation> = exec
        .map(1 << (n * n), |b| keep(b).then(|| BinRelation::new(n, b as u64)))
        .into_iter()
        .flatten()
        .collect();
    build_from_relations(rels, exec)
}

/// A 2×2 matrix over the two-element field, entry `(i, j)` at bit `2i + j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2F2(pub u8);

impl Mat2F2 {
    pub fn entry(self, i: usize, j: usize) -> u8 {
        (self.0 >> (2 * i + j)) & 1
    }

    pub fn mul(self, other: Mat2F2) -> Mat2F2 {
        let mut bits = 0;
        for i in 0..2 {
            for j in 0..2 {
                let v = (0..2).fold(0, |acc, k| acc ^ (self.entry(i, k) & other.entry(k, j)));
                bits |= v << (2 * i + j);
            }
        }
        Mat2F2(bits)
    }

    /// The matrix unit with a single 1 at `(i, i)`.
    pub fn unit(i: usize) -> Mat2F2 {
        Mat2F2(1 << (3 * i))
    }
}

impl fmt::Display for Mat2F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}/{}{}",
            self.entry(0, 0),
            self.entry(0, 1),
            self.entry(1, 0),
            self.entry(1, 1)
        )
    }
}

impl fmt::Debug for Mat2F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2F2({self})")
    }
}

/// The multiplicative semigroup of all 2×2 matrices over the field with two
/// elements, indexed by bit value.
pub fn build_mat2f2(exec: Exec) -> Result<Built<Mat2F2>> {
    let elements: Vec<Mat2F2> = (0..16).map(Mat2F2).collect();
    let semigroup = Semigroup::from_fn(16, exec, |a, b| elements[a].mul(elements[b]).0 as usize)?
        .with_labels(elements.iter().map(|m| m.to_string()).collect());
    Ok(Built { semigroup, elements })
}
