//! Partial and full transformations of `{1..n}` and the families built from
//! them.
//!
//! Elements of every family are listed in lexicographic order of their image
//! tuples `(1α, ..., nα)`, with "undefined" sorting after every point. So the
//! empty map is the last element of `IS_n` and `PT_n`, while the constant map
//! to 1 is the first element of `T_n` and `D_n`.

use std::fmt;

use super::Built;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::semigroup::Semigroup;

/// A partial map on `{0..n-1}` (printed 1-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    images: Vec<Option<u8>>,
}

impl PartialMap {
    pub fn new(images: Vec<Option<u8>>) -> Self {
        let n = images.len();
        assert!(images.iter().flatten().all(|&v| (v as usize) < n));
        PartialMap { images }
    }

    /// Full map from 0-based images.
    pub fn full(images: &[usize]) -> Self {
        Self::new(images.iter().map(|&v| Some(v as u8)).collect())
    }

    pub fn empty(n: usize) -> Self {
        PartialMap {
            images: vec![None; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        PartialMap {
            images: (0..n as u8).map(Some).collect(),
        }
    }

    pub fn constant(n: usize, k: usize) -> Self {
        PartialMap {
            images: vec![Some(k as u8); n],
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.images[x].map(usize::from)
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.images[x].is_some()).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.images.iter().flatten().map(|&v| v as usize).collect();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = 0u64;
        for &v in self.images.iter().flatten() {
            if seen & (1 << v) != 0 {
                return false;
            }
            seen |= 1 << v;
        }
        true
    }

    /// Defined images increase along the domain.
    pub fn is_order_preserving(&self) -> bool {
        let defined: Vec<u8> = self.images.iter().flatten().copied().collect();
        defined.windows(2).all(|w| w[0] < w[1])
    }

    /// Total with `xα ≤ x` everywhere.
    pub fn is_order_decreasing(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, v)| matches!(v, Some(v) if (*v as usize) <= x))
    }

    /// Right action: apply `self`, then `other`.
    pub fn then(&self, other: &PartialMap) -> PartialMap {
        PartialMap {
            images: self
                .images
                .iter()
                .map(|v| v.and_then(|y| other.images[y as usize]))
                .collect(),
        }
    }

    /// Inverse of an injective partial map.
    pub fn inverse(&self) -> Option<PartialMap> {
        if !self.is_injective() {
            return None;
        }
        let mut images = vec![None; self.n()];
        for (x, v) in self.images.iter().enumerate() {
            if let Some(y) = v {
                images[*y as usize] = Some(x as u8);
            }
        }
        Some(PartialMap { images })
    }

    /// Mixed-radix key: digit `v` for image `v`, digit `n` for undefined.
    fn key(&self) -> usize {
        let n = self.n();
        self.images
            .iter()
            .fold(0, |acc, v| acc * (n + 1) + v.map_or(n, usize::from))
    }

    fn from_key(n: usize, mut key: usize) -> PartialMap {
        let mut images = vec![None; n];
        for slot in images.iter_mut().rev() {
            let d = key % (n + 1);
            key /= n + 1;
            *slot = (d < n).then_some(d as u8);
        }
        PartialMap { images }
    }

    pub fn parse(label: &str) -> Option<PartialMap> {
        let n = label.chars().count();
        let images = label
            .chars()
            .map(|c| match c {
                '-' => Some(None),
                c => c
                    .to_digit(10)
                    .filter(|&d| d >= 1 && (d as usize) <= n)
                    .map(|d| Some(d as u8 - 1)),
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PartialMap { images })
    }
}

/// One character per point: the 1-based image, or `-` when undefined.
impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.images {
            match v {
                Some(v) => write!(f, "{}", v + 1)?,
                None => f.write_str("-")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMap({self})")
    }
}

/// Every partial map on `n` points satisfying `keep`, in element order.
pub fn enumerate_maps(n: usize, keep: impl Fn(&PartialMap) -> bool) -> Vec<PartialMap> {
    let total = (n + 1).pow(n as u32);
    (0..total)
        .map(|k| PartialMap::from_key(n, k))
        .filter(|m| keep(m))
        .collect()
}

/// Multiplication table of a composition-closed list of maps.
pub fn build_from_maps(family: &str, maps: Vec<PartialMap>, exec: Exec) -> Result<Built<PartialMap>> {
    let n = maps.first().map_or(0, PartialMap::n);
    let mut index = vec![u32::MAX; (n + 1).pow(n as u32)];
    for (i, m) in maps.iter().enumerate() {
        index[m.key()] = i as u32;
    }
    let rows: Vec<Result<Vec<u32>>> = exec.map(maps.len(), |a| {
        maps.iter()
            .map(|b| {
                let p = maps[a].then(b);
                match index[p.key()] {
                    u32::MAX => Err(Error::Internal(format!(
                        "{family}: {}·{b} = {p} is not a member",
                        maps[a]
                    ))),
                    i => Ok(i),
                }
            })
            .collect()
    });
    let mut table = Vec::with_capacity(maps.len() * maps.len());
    for row in rows {
        table.extend(row?);
    }
    let semigroup = Semigroup::from_flat(maps.len(), table, exec)?
        .with_labels(maps.iter().map(|m| m.to_string()).collect());
    Ok(Built {
        semigroup,
        elements: maps,
    })
}

fn check_bound(family: &str, n: usize, bound: usize) -> Result<()> {
    if n == 0 || n > bound {
        return Err(Error::BoundExceeded {
            family: family.into(),
            n,
            bound,
        });
    }
    Ok(())
}

/// Symmetric inverse semigroup: all partial injections.
pub fn build_is(n: usize, bound: usize, exec: Exec) -> Result<Built<PartialMap>> {
    check_bound("is", n, bound)?;
    build_from_maps("is", enumerate_maps(n, PartialMap::is_injective), exec)
}

/// Partial injections that preserve the natural order.
pub fn build_io(n: usize, bound: usize, exec: Exec) -> Result<Built<PartialMap>> {
    check_bound("io", n, bound)?;
    build_from_maps("io", enumerate_maps(n, PartialMap::is_order_preserving), exec)
}

/// All partial transformations.
pub fn build_pt(n: usize, bound: usize, exec: Exec) -> Result<Built<PartialMap>> {
    check_bound("pt", n, bound)?;
    build_from_maps("pt", enumerate_maps(n, |_| true), exec)
}

/// All full transformations (no zero for `n > 1`).
pub fn build_t(n: usize, bound: usize, exec: Exec) -> Result<Built<PartialMap>> {
    check_bound("t", n, bound)?;
    build_from_maps("t", enumerate_maps(n, PartialMap::is_total), exec)
}

/// Order-decreasing full transformations; the zero is the constant map to 1.
pub fn build_d(n: usize, bound: usize, exec: Exec) -> Result<Built<PartialMap>> {
    check_bound("d", n, bound)?;
    build_from_maps("d", enumerate_maps(n, PartialMap::is_order_decreasing), exec)
}

/// Nine partial maps of `{1,2,3,4}`: the empty map, the four maps with
/// domain `{1,3}` sending both points to `k`, and the four constants.
/// The semigroup is regular with zero radical, yet has a single maximal
/// nilpotent subsemigroup of size 3 that is strictly larger than the radical.
pub fn build_radical_gap(exec: Exec) -> Result<Built<PartialMap>> {
    let mut maps = vec![PartialMap::empty(4)];
    for k in 0..4u8 {
        maps.push(PartialMap::new(vec![Some(k), None, Some(k), None]));
        maps.push(PartialMap::constant(4, k as usize));
    }
    maps.sort_by_key(PartialMap::key);
    build_from_maps("radical-gap", maps, exec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn fact(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn symmetric_inverse_orders_match_size_formula() {
        for n in 1..=4 {
            let expected: usize = (0..=n).map(|k| binom(n, k).pow(2) * fact(k)).sum();
            let s = build_is(n, 5, Exec::Sequential).unwrap().semigroup;
            assert_eq!(s.order(), expected, "n = {n}");
        }
        assert_eq!(build_is(2, 5, Exec::Sequential).unwrap().semigroup.order(), 7);
        assert_eq!(build_is(3, 5, Exec::Sequential).unwrap().semigroup.order(), 34);
    }

    #[test]
    fn zero_and_identity_are_where_the_ordering_puts_them() {
        let b = build_is(3, 5, Exec::Sequential).unwrap();
        let s = &b.semigroup;
        assert_eq!(s.label(s.zero().unwrap()), "---");
        assert_eq!(s.zero(), Some(s.order() - 1));
        assert_eq!(s.label(s.identity().unwrap()), "123");
        let d = build_d(3, 6, Exec::Sequential).unwrap().semigroup;
        assert_eq!(d.zero(), Some(0));
        assert_eq!(d.label(0), "111");
    }

    #[test]
    fn order_preserving_injections_by_direct_count() {
        // brute count over all partial maps, independent of the predicate
        // combination used by the constructor
        for n in 1..=4 {
            let mut count = 0;
            for k in 0..(n + 1usize).pow(n as u32) {
                let m = PartialMap::from_key(n, k);
                let dom = m.domain();
                let ok = dom.iter().all(|&x| {
                    dom.iter()
                        .all(|&y| x >= y || m.apply(x).unwrap() < m.apply(y).unwrap())
                });
                count += ok as usize;
            }
            let s = build_io(n, 6, Exec::Sequential).unwrap().semigroup;
            assert_eq!(s.order(), count);
            let formula: usize = (0..=n).map(|k| binom(n, k).pow(2)).sum();
            assert_eq!(count, formula);
        }
        assert_eq!(build_io(2, 6, Exec::Sequential).unwrap().semigroup.order(), 6);
    }

    #[test]
    fn other_family_orders() {
        assert_eq!(build_pt(2, 4, Exec::Sequential).unwrap().semigroup.order(), 9);
        assert_eq!(build_pt(3, 4, Exec::Sequential).unwrap().semigroup.order(), 64);
        assert_eq!(build_d(3, 6, Exec::Sequential).unwrap().semigroup.order(), 6);
        assert_eq!(build_d(4, 6, Exec::Sequential).unwrap().semigroup.order(), 24);
        let t = build_t(3, 4, Exec::Sequential).unwrap().semigroup;
        assert_eq!(t.order(), 27);
        assert_eq!(t.zero(), None);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            build_is(6, 5, Exec::Sequential),
            Err(Error::BoundExceeded { n: 6, bound: 5, .. })
        ));
        assert!(build_pt(0, 4, Exec::Sequential).is_err());
    }

    #[test]
    fn io_embeds_in_is() {
        let is = build_is(3, 5, Exec::Sequential).unwrap();
        let io = build_io(3, 5, Exec::Sequential).unwrap();
        for (a, x) in io.elements.iter().enumerate() {
            for (b, y) in io.elements.iter().enumerate() {
                let p = &io.elements[io.semigroup.mul(a, b)];
                let ia = is.index_of(x).unwrap();
                let ib = is.index_of(y).unwrap();
                assert_eq!(&is.elements[is.semigroup.mul(ia, ib)], p);
            }
        }
    }

    #[test]
    fn closure_of_single_nilpotent_map_in_is2() {
        let b = build_is(2, 5, Exec::Sequential).unwrap();
        let s = &b.semigroup;
        let alpha = s.find_label("2-").unwrap();
        let c = s.closure(&crate::bitset::ElementSet::from_indices(s.order(), [alpha]));
        assert_eq!(c.to_vec(), {
            let mut v = vec![alpha, s.zero().unwrap()];
            v.sort();
            v
        });
    }

    #[test]
    fn radical_gap_fixture_is_closed() {
        let b = build_radical_gap(Exec::Sequential).unwrap();
        assert_eq!(b.semigroup.order(), 9);
        assert_eq!(b.semigroup.label(b.semigroup.zero().unwrap()), "----");
    }

    #[test]
    fn labels_round_trip() {
        for m in enumerate_maps(3, |_| true) {
            assert_eq!(PartialMap::parse(&m.to_string()), Some(m));
        }
        assert_eq!(PartialMap::parse("14"), None);
    }
}
