//! Rees matrix semigroups `M⁰(G; I, Λ; P)` and their (0,1) sandwich matrices.
//!
//! Element numbering of [`ReesMatrixSemigroup::to_semigroup`]: index 0 is the
//! zero, and `(g, i, j)` sits at `1 + (i * |Λ| + j) * |G| + g` (all 0-based).
//! The sandwich matrix is stored `|Λ| × |I|`, so `p(j, i)` is the entry used
//! when `(_, _, j)` is multiplied by `(_, i, _)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::cayley;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::semigroup::{NilpotentSubsemigroup, Semigroup};

/// A (0,1)-matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BoolMatrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    /// From 0/1 rows; panics on ragged input.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v != 0);
            }
        }
        m
    }

    /// `E_k`.
    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, true);
        }
        m
    }

    /// `UT_k`: ones on and above the diagonal.
    pub fn upper_triangular(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    /// Every row has a 1.
    pub fn is_row_regular(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).any(|c| self.get(r, c)))
    }

    /// Every column has a 1.
    pub fn is_column_regular(&self) -> bool {
        (0..self.cols).all(|c| (0..self.rows).any(|r| self.get(r, c)))
    }

    pub fn is_regular(&self) -> bool {
        self.is_row_regular() && self.is_column_regular()
    }

    pub fn zero_count(&self) -> usize {
        self.bits.iter().filter(|&&b| !b).count()
    }

    /// Boolean product over `({0,1}, or, and)`.
    pub fn bool_product(&self, other: &BoolMatrix) -> Result<BoolMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BoolMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out.set(i, j, (0..self.cols).any(|k| self.get(i, k) && other.get(k, j)));
            }
        }
        Ok(out)
    }

    /// The submatrix on the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(a, b, self.get(r, c));
            }
        }
        m
    }

    /// `[[tl, tr], [bl, br]]` assembled from blocks with matching shapes.
    pub fn blocks(tl: &BoolMatrix, tr: &BoolMatrix, bl: &BoolMatrix, br: &BoolMatrix) -> BoolMatrix {
        assert_eq!(tl.rows, tr.rows);
        assert_eq!(bl.rows, br.rows);
        assert_eq!(tl.cols, bl.cols);
        assert_eq!(tr.cols, br.cols);
        let mut m = BoolMatrix::zeros(tl.rows + bl.rows, tl.cols + tr.cols);
        for (block, r0, c0) in [(tl, 0, 0), (tr, 0, tl.cols), (bl, tl.rows, 0), (br, tl.rows, tl.cols)] {
            for r in 0..block.rows {
                for c in 0..block.cols {
                    m.set(r0 + r, c0 + c, block.get(r, c));
                }
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u8).collect())
            .collect()
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<&str> = (0..self.cols)
                .map(|c| if self.get(r, c) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix{:?}", self.to_rows())
    }
}

impl Serialize for BoolMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// `M⁰(G; I, Λ; P)` with `P` a `|Λ| × |I|` matrix over `G ∪ {0}`.
#[derive(Debug, Clone)]
pub struct ReesMatrixSemigroup {
    group: Semigroup,
    inverse: Vec<usize>,
    i_size: usize,
    lambda_size: usize,
    p: Vec<Option<usize>>,
}

impl ReesMatrixSemigroup {
    /// `p[j][i]` is `None` for a zero entry or `Some(g)` for a group element.
    pub fn new(group: Semigroup, i_size: usize, lambda_size: usize, p: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let e = group
            .identity()
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let n = group.order();
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| group.mul(g, h) == e && group.mul(h, g) == e)
                    .ok_or_else(|| Error::NotAGroup(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        if i_size == 0 || lambda_size == 0 {
            return Err(Error::ShapeMismatch("index sets must be nonempty".into()));
        }
        if p.len() != lambda_size || p.iter().any(|row| row.len() != i_size) {
            return Err(Error::ShapeMismatch(format!(
                "sandwich matrix must be {lambda_size} x {i_size}"
            )));
        }
        if let Some(&g) = p.iter().flatten().flatten().find(|&&g| g >= n) {
            return Err(Error::ShapeMismatch(format!("entry {g} outside the group")));
        }
        let r = ReesMatrixSemigroup {
            group,
            inverse,
            i_size,
            lambda_size,
            p: p.concat(),
        };
        let pt = r.reduce_sandwich();
        if let Some(j) = (0..lambda_size).find(|&j| (0..i_size).all(|i| !pt.get(j, i))) {
            return Err(Error::IrregularSandwich(format!("row {} is zero", j + 1)));
        }
        if let Some(i) = (0..i_size).find(|&i| (0..lambda_size).all(|j| !pt.get(j, i))) {
            return Err(Error::IrregularSandwich(format!("column {} is zero", i + 1)));
        }
        Ok(r)
    }

    /// Over the trivial group, from a (0,1)-matrix.
    pub fn from_bool(p: &BoolMatrix) -> Result<Self> {
        let trivial = Semigroup::validate(&[vec![0]])?;
        let rows = (0..p.rows())
            .map(|j| (0..p.cols()).map(|i| p.get(j, i).then_some(0)).collect())
            .collect();
        Self::new(trivial, p.cols(), p.rows(), rows)
    }

    /// Parses the text format: a `rees` line, `|I| |Λ|`, a `.cay` block for
    /// the group, then `|Λ|` rows of `|I|` entries, each `0` or a 1-based
    /// group element index.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let bad = |line: usize, message: String| Error::Parse { line, message };
        let mut it = lines.iter().copied();
        match it.next() {
            Some((_, "rees")) => {}
            Some((ln, l)) => return Err(bad(ln, format!("expected `rees`, found `{l}`"))),
            None => return Err(bad(1, "empty input".into())),
        }
        let (ln, sizes) = it.next().ok_or_else(|| bad(2, "missing index set sizes".into()))?;
        let sizes: Vec<usize> = sizes
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(ln, format!("bad sizes `{sizes}`")))?;
        let [i_size, lambda_size] = sizes[..] else {
            return Err(bad(ln, "expected `|I| |Λ|`".into()));
        };
        let (ln, order) = it.next().ok_or_else(|| bad(ln + 1, "missing group table".into()))?;
        let n: usize = order
            .parse()
            .map_err(|_| bad(ln, format!("expected group order, found `{order}`")))?;
        let mut group_text = format!("{n}\n");
        for _ in 0..n {
            let (_, row) = it.next().ok_or_else(|| bad(ln, "truncated group table".into()))?;
            group_text.push_str(row);
            group_text.push('\n');
        }
        let rest: Vec<(usize, &str)> = it.collect();
        let label_count = rest.iter().take_while(|(_, l)| l.starts_with("label")).count();
        for (_, l) in &rest[..label_count] {
            group_text.push_str(l);
            group_text.push('\n');
        }
        let group = cayley::parse(&group_text)?;
        let matrix = &rest[label_count..];
        if matrix.len() != lambda_size {
            return Err(bad(
                matrix.last().map_or(ln, |l| l.0),
                format!("expected {lambda_size} sandwich rows, found {}", matrix.len()),
            ));
        }
        let p = matrix
            .iter()
            .map(|&(ln, row)| {
                let entries: Vec<Option<usize>> = row
                    .split_whitespace()
                    .map(|tok| match tok.parse::<usize>() {
                        Ok(0) => Ok(None),
                        Ok(g) if g <= n => Ok(Some(g - 1)),
                        _ => Err(bad(ln, format!("bad sandwich entry `{tok}`"))),
                    })
                    .collect::<Result<_>>()?;
                if entries.len() != i_size {
                    return Err(bad(ln, format!("expected {i_size} entries")));
                }
                Ok(entries)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, i_size, lambda_size, p)
    }

    pub fn group(&self) -> &Semigroup {
        &self.group
    }

    pub fn i_size(&self) -> usize {
        self.i_size
    }

    pub fn lambda_size(&self) -> usize {
        self.lambda_size
    }

    pub fn order(&self) -> usize {
        1 + self.group.order() * self.i_size * self.lambda_size
    }

    pub fn p(&self, j: usize, i: usize) -> Option<usize> {
        self.p[j * self.i_size + i]
    }

    pub fn element(&self, g: usize, i: usize, j: usize) -> usize {
        1 + (i * self.lambda_size + j) * self.group.order() + g
    }

    /// `(g, i, j)` of a nonzero element index.
    pub fn decode(&self, x: usize) -> Option<(usize, usize, usize)> {
        if x == 0 {
            return None;
        }
        let y = x - 1;
        let n = self.group.order();
        let g = y % n;
        let ij = y / n;
        Some((g, ij / self.lambda_size, ij % self.lambda_size))
    }

    /// The product rule on element indices.
    pub fn product(&self, x: usize, y: usize) -> usize {
        let (Some((g, i, j)), Some((h, k, l))) = (self.decode(x), self.decode(y)) else {
            return 0;
        };
        match self.p(j, k) {
            None => 0,
            Some(p) => self.element(self.group.mul(self.group.mul(g, p), h), i, l),
        }
    }

    /// The unique idempotent in the H-class `(i, j)`, when that class is a group.
    pub fn idempotent_at(&self, i: usize, j: usize) -> Option<usize> {
        self.p(j, i).map(|p| self.element(self.inverse[p], i, j))
    }

    pub fn to_semigroup(&self, exec: Exec) -> Result<Semigroup> {
        let s = Semigroup::from_fn(self.order(), exec, |x, y| self.product(x, y))?;
        let labels = (0..self.order())
            .map(|x| match self.decode(x) {
                None => "0".to_string(),
                Some((g, i, j)) => {
                    let gl = match self.group.labels() {
                        Some(l) => l[g].clone(),
                        None => (g + 1).to_string(),
                    };
                    format!("({gl},{},{}')", i + 1, j + 1)
                }
            })
            .collect();
        Ok(s.with_labels(labels))
    }

    /// `P̃`: 1 exactly where `P` is nonzero.
    pub fn reduce_sandwich(&self) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(self.lambda_size, self.i_size);
        for j in 0..self.lambda_size {
            for i in 0..self.i_size {
                m.set(j, i, self.p(j, i).is_some());
            }
        }
        m
    }

    /// The quotient by `H` (over the trivial group) and the projection of
    /// element indices onto it.
    pub fn h_quotient(&self) -> Result<(ReesMatrixSemigroup, Vec<usize>)> {
        let q = Self::from_bool(&self.reduce_sandwich())?;
        let proj = (0..self.order())
            .map(|x| match self.decode(x) {
                None => 0,
                Some((_, i, j)) => q.element(0, i, j),
            })
            .collect();
        Ok((q, proj))
    }

    /// Exhaustively confirms that the projection onto the `H`-quotient is a
    /// homomorphism, i.e. that `H` is a congruence.
    pub fn check_h_congruence(&self) -> Result<()> {
        let (q, proj) = self.h_quotient()?;
        for x in 0..self.order() {
            for y in 0..self.order() {
                if proj[self.product(x, y)] != q.product(proj[x], proj[y]) {
                    return Err(Error::Violation(format!(
                        "H is not compatible with the product of {x} and {y}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The nilpotent subsemigroup attached to a normal-form witness: zero
    /// together with every `H`-class `(u, v)` whose entry in `P*` is 0.
    /// The size is checked against `1 + f·|G|`.
    pub fn maximal_t(&self, s: Arc<Semigroup>, nf: &NormalForm) -> Result<NilpotentSubsemigroup> {
        if nf.row_perm.len() != self.lambda_size || nf.col_perm.len() != self.i_size {
            return Err(Error::NotInNormalForm("witness shape does not match".into()));
        }
        let star = pstar(nf)?;
        let mut t = ElementSet::empty(self.order());
        t.insert(0);
        for (v, &j) in nf.row_perm.iter().enumerate() {
            for (u, &i) in nf.col_perm.iter().enumerate() {
                if !star.get(v, u) {
                    for g in 0..self.group.order() {
                        t.insert(self.element(g, i, j));
                    }
                }
            }
        }
        let expected = 1 + star.zero_count() * self.group.order();
        if t.len() != expected {
            return Err(Error::Internal(format!("|T| = {} but 1 + f|G| = {expected}", t.len())));
        }
        NilpotentSubsemigroup::new(s, t)
    }

    /// Diagonal idempotents of a witness, in diagonal order.
    pub fn diagonal_idempotents(&self, nf: &NormalForm) -> Vec<usize> {
        (0..nf.k)
            .map(|t| {
                self.idempotent_at(nf.col_perm[t], nf.row_perm[t])
                    .expect("diagonal entries are nonzero")
            })
            .collect()
    }
}

/// A witness that a permutation of rows and columns brings `P̃` to the block
/// shape `[E_k | B ; A | A∘B]` with `A` row-regular and `B` column-regular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub k: usize,
    /// Original row (Λ) indices in their new order.
    pub row_perm: Vec<usize>,
    /// Original column (I) indices in their new order.
    pub col_perm: Vec<usize>,
    pub a: BoolMatrix,
    pub b: BoolMatrix,
    pub c: BoolMatrix,
}

impl NormalForm {
    pub fn permuted(&self, p: &BoolMatrix) -> BoolMatrix {
        p.select(&self.row_perm, &self.col_perm)
    }
}

/// Searches every `k` from `min(|Λ|, |I|)` down to 1 for a normal-form
/// witness and returns the first witness found for each feasible `k`.
pub fn normal_form_search(p: &BoolMatrix) -> Result<Vec<NormalForm>> {
    if !p.is_regular() {
        return Err(Error::IrregularMatrix(format!("{p:?}")));
    }
    let kmax = p.rows().min(p.cols());
    let mut found = Vec::new();
    for k in (1..=kmax).rev() {
        let mut chosen = Vec::new();
        if let Some(nf) = search_k(p, k, 0, &mut chosen, &mut vec![false; p.cols()]) {
            found.push(nf);
        }
    }
    Ok(found)
}

fn search_k(
    p: &BoolMatrix,
    k: usize,
    row: usize,
    chosen: &mut Vec<(usize, usize)>,
    used: &mut Vec<bool>,
) -> Option<NormalForm> {
    if chosen.len() == k {
        return check_witness(p, chosen);
    }
    if p.rows() - row < k - chosen.len() {
        return None;
    }
    for c in 0..p.cols() {
        if used[c] || !p.get(row, c) {
            continue;
        }
        if chosen.iter().any(|&(r2, c2)| p.get(row, c2) || p.get(r2, c)) {
            continue;
        }
        used[c] = true;
        chosen.push((row, c));
        let hit = search_k(p, k, row + 1, chosen, used);
        chosen.pop();
        used[c] = false;
        if hit.is_some() {
            return hit;
        }
    }
    search_k(p, k, row + 1, chosen, used)
}

fn check_witness(p: &BoolMatrix, diag: &[(usize, usize)]) -> Option<NormalForm> {
    let diag_rows: Vec<usize> = diag.iter().map(|d| d.0).collect();
    let diag_cols: Vec<usize> = diag.iter().map(|d| d.1).collect();
    let rest_rows: Vec<usize> = (0..p.rows()).filter(|r| !diag_rows.contains(r)).collect();
    let rest_cols: Vec<usize> = (0..p.cols()).filter(|c| !diag_cols.contains(c)).collect();
    let a = p.select(&rest_rows, &diag_cols);
    let b = p.select(&diag_rows, &rest_cols);
    let c = p.select(&rest_rows, &rest_cols);
    if !a.is_row_regular() || !b.is_column_regular() {
        return None;
    }
    if a.bool_product(&b).ok()? != c {
        return None;
    }
    Some(NormalForm {
        k: diag.len(),
        row_perm: diag_rows.into_iter().chain(rest_rows).collect(),
        col_perm: diag_cols.into_iter().chain(rest_cols).collect(),
        a,
        b,
        c,
    })
}

/// `P* = [UT_k | B* ; A* | A*∘B*]`, where each row of `A*` is filled with
/// ones from its leftmost 1 rightwards and each column of `B*` from its
/// lowest 1 upwards. Cross-checked against `(UT_k ; A*) ∘ (UT_k | B*)`.
pub fn pstar(nf: &NormalForm) -> Result<BoolMatrix> {
    let k = nf.k;
    if nf.a.cols() != k || nf.b.rows() != k || !nf.a.is_row_regular() || !nf.b.is_column_regular() {
        return Err(Error::NotInNormalForm("blocks have the wrong shape or are not regular".into()));
    }
    if nf.a.bool_product(&nf.b)? != nf.c {
        return Err(Error::NotInNormalForm("C differs from A∘B".into()));
    }
    let mut a_star = BoolMatrix::zeros(nf.a.rows(), k);
    for r in 0..nf.a.rows() {
        let first = (0..k).find(|&c| nf.a.get(r, c)).expect("row-regular");
        for c in first..k {
            a_star.set(r, c, true);
        }
    }
    let mut b_star = BoolMatrix::zeros(k, nf.b.cols());
    for c in 0..nf.b.cols() {
        let last = (0..k).rev().find(|&r| nf.b.get(r, c)).expect("column-regular");
        for r in 0..=last {
            b_star.set(r, c, true);
        }
    }
    let ut = BoolMatrix::upper_triangular(k);
    let c_star = a_star.bool_product(&b_star)?;
    let star = BoolMatrix::blocks(&ut, &b_star, &a_star, &c_star);
    let left = BoolMatrix::blocks(&ut, &BoolMatrix::zeros(k, 0), &a_star, &BoolMatrix::zeros(a_star.rows(), 0));
    let top = BoolMatrix::blocks(&ut, &b_star, &BoolMatrix::zeros(0, k), &BoolMatrix::zeros(0, b_star.cols()));
    if left.bool_product(&top)? != star {
        return Err(Error::Internal("P* does not factor through UT_k".into()));
    }
    Ok(star)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> BoolMatrix {
        BoolMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn z2() -> Semigroup {
        Semigroup::validate(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn boolean_product_cases() {
        let a = m(&[&[1, 0], &[1, 1]]);
        assert_eq!(a.bool_product(&BoolMatrix::identity(2)).unwrap(), a);
        assert_eq!(m(&[&[1, 0]]).bool_product(&m(&[&[0], &[1]])).unwrap(), m(&[&[0]]));
        assert_eq!(m(&[&[1, 1]]).bool_product(&m(&[&[1], &[0]])).unwrap(), m(&[&[1]]));
        assert!(matches!(a.bool_product(&m(&[&[1]])), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn brandt_semigroup_has_five_elements() {
        let r = ReesMatrixSemigroup::from_bool(&BoolMatrix::identity(2)).unwrap();
        let s = r.to_semigroup(Exec::Sequential).unwrap();
        assert_eq!(s.order(), 5);
        assert_eq!(s.zero(), Some(0));
        // (1,1,2')(1,1,2') = 0 since p(2',1) = 0
        let x = r.element(0, 0, 1);
        assert_eq!(s.mul(x, x), 0);
        let e = r.element(0, 0, 0);
        assert!(s.is_idempotent(e));
        assert_eq!(s.label(x), "(1,1,2')");
    }

    #[test]
    fn construction_errors() {
        let not_group = Semigroup::validate(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(matches!(
            ReesMatrixSemigroup::new(not_group, 1, 1, vec![vec![Some(0)]]),
            Err(Error::NotAGroup(_))
        ));
        assert!(matches!(
            ReesMatrixSemigroup::from_bool(&m(&[&[1, 0], &[1, 0]])),
            Err(Error::IrregularSandwich(_))
        ));
    }

    #[test]
    fn reduced_sandwich_of_group_matrix() {
        let r = ReesMatrixSemigroup::new(z2(), 2, 2, vec![vec![Some(1), None], vec![None, Some(0)]]).unwrap();
        assert_eq!(r.reduce_sandwich(), BoolMatrix::identity(2));
        r.check_h_congruence().unwrap();
        let (q, _) = r.h_quotient().unwrap();
        assert_eq!(q.order(), 5);
        assert_eq!(r.to_semigroup(Exec::Sequential).unwrap().order(), 9);
    }

    #[test]
    fn idempotent_iff_reduced_entry_is_one() {
        let r = ReesMatrixSemigroup::new(
            z2(),
            3,
            3,
            vec![
                vec![Some(1), None, None],
                vec![None, Some(0), Some(1)],
                vec![Some(0), None, None],
            ],
        )
        .unwrap();
        let s = r.to_semigroup(Exec::Sequential).unwrap();
        let pt = r.reduce_sandwich();
        for x in 1..s.order() {
            let (_, i, j) = r.decode(x).unwrap();
            if s.is_idempotent(x) {
                assert!(pt.get(j, i));
                assert_eq!(r.idempotent_at(i, j), Some(x));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r.idempotent_at(i, j).is_some(), pt.get(j, i));
            }
        }
    }

    #[test]
    fn identity_matrix_is_already_in_normal_form() {
        let nfs = normal_form_search(&BoolMatrix::identity(2)).unwrap();
        assert_eq!(nfs[0].k, 2);
        assert_eq!(nfs[0].a.rows(), 0);
        assert_eq!(nfs[0].b.cols(), 0);
        let star = pstar(&nfs[0]).unwrap();
        assert_eq!(star, BoolMatrix::upper_triangular(2));
        assert_eq!(star.zero_count(), 1);
    }

    #[test]
    fn three_by_three_example() {
        let p = m(&[&[1, 0, 0], &[0, 1, 1], &[1, 0, 0]]);
        let nfs = normal_form_search(&p).unwrap();
        assert_eq!(nfs[0].k, 2);
        assert_eq!(nfs[0].a, m(&[&[1, 0]]));
        assert_eq!(nfs[0].b, m(&[&[0], &[1]]));
        assert_eq!(nfs[0].c, m(&[&[0]]));
        let star = pstar(&nfs[0]).unwrap();
        assert_eq!(star, m(&[&[1, 1, 1], &[0, 1, 1], &[1, 1, 1]]));
    }

    #[test]
    fn single_zero_admits_no_large_witness() {
        let p = m(&[&[1, 1, 1], &[1, 0, 1], &[1, 1, 1]]);
        let nfs = normal_form_search(&p).unwrap();
        assert!(nfs.iter().all(|nf| nf.k < 2));
    }

    #[test]
    fn brandt_maximal_t() {
        let r = ReesMatrixSemigroup::from_bool(&BoolMatrix::identity(2)).unwrap();
        let s = Arc::new(r.to_semigroup(Exec::Sequential).unwrap());
        let nf = &normal_form_search(&r.reduce_sandwich()).unwrap()[0];
        let t = r.maximal_t(s.clone(), nf).unwrap();
        assert_eq!(t.elements.to_vec(), vec![0, r.element(0, 0, 1)]);
        assert_eq!(t.nilpotency_class, 2);
        let rz = ReesMatrixSemigroup::new(z2(), 2, 2, vec![vec![Some(0), None], vec![None, Some(0)]]).unwrap();
        let sz = Arc::new(rz.to_semigroup(Exec::Sequential).unwrap());
        assert_eq!(rz.maximal_t(sz, nf).unwrap().len(), 3);
    }

    #[test]
    fn parses_text_format() {
        let text = "rees\n2 2\n2\n0 1\n1 0\nlabel 0 e\nlabel 1 g\n1 0\n0 2\n";
        let r = ReesMatrixSemigroup::parse(text).unwrap();
        assert_eq!(r.p(0, 0), Some(0));
        assert_eq!(r.p(1, 1), Some(1));
        assert_eq!(r.p(0, 1), None);
        let s = r.to_semigroup(Exec::Sequential).unwrap();
        assert_eq!(s.label(r.element(1, 0, 1)), "(g,1,2')");
        assert!(ReesMatrixSemigroup::parse("rees\n2 2\n1\n0\n1 0\n").is_err());
    }
}
