//! Deterministic constructors for the concrete semigroup families, and the
//! `family:parameter` specifier language used by the command line.

pub mod relation;
pub mod transform;

use std::path::Path;

use crate::bitset::ElementSet;
use crate::cayley;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rees::ReesMatrixSemigroup;
use crate::semigroup::Semigroup;

pub use relation::{build_b, build_fp, build_mat2f2, BinRelation, Mat2F2};
pub use transform::{build_d, build_io, build_is, build_pt, build_radical_gap, build_t, PartialMap};

/// A constructed semigroup together with the concrete object behind each
/// element index.
#[derive(Debug, Clone)]
pub struct Built<E> {
    pub semigroup: Semigroup,
    pub elements: Vec<E>,
}

impl<E: PartialEq> Built<E> {
    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }
}

/// Largest accepted size parameter per family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub is: usize,
    pub io: usize,
    pub pt: usize,
    pub t: usize,
    pub d: usize,
    pub b: usize,
    pub fp: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            is: 5,
            io: 6,
            pt: 4,
            t: 4,
            d: 6,
            b: 3,
            fp: 4,
        }
    }
}

/// The sandwich variant `x * y = x a y` on the same carrier.
pub fn build_variant(s: &Semigroup, a: usize) -> Result<Semigroup> {
    s.variant(a)
}

/// `{x : xe = ex = e}` re-indexed as a semigroup whose zero is `e`.
/// Returns the subsemigroup and its embedding into `s`.
pub fn relative_zero_subsemigroup(s: &Semigroup, e: usize) -> Result<(Semigroup, Vec<usize>)> {
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let set = ElementSet::from_indices(
        s.order(),
        (0..s.order()).filter(|&x| s.mul(x, e) == e && s.mul(e, x) == e),
    );
    let (sub, embed) = s.subsemigroup(&set)?;
    let pos = embed.iter().position(|&x| x == e).expect("e is a member");
    if sub.zero() != Some(pos) {
        return Err(Error::Internal(format!(
            "element {e} is not the zero of its own stabiliser"
        )));
    }
    Ok((sub, embed))
}

/// A parsed family specifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Is(usize),
    Io(usize),
    Pt(usize),
    T(usize),
    D(usize),
    B(usize),
    Fp(usize),
    Rees(String),
    Variant(Box<FamilySpec>, String),
    RadicalGap,
    Mat2F2,
    Table(String),
}

impl FamilySpec {
    pub fn parse(spec: &str) -> Result<FamilySpec> {
        let unknown = || Error::UnknownFamily(spec.to_string());
        let (head, rest) = spec.split_once(':').ok_or_else(unknown)?;
        let size = || rest.parse::<usize>().map_err(|_| unknown());
        Ok(match head {
            "is" => FamilySpec::Is(size()?),
            "io" => FamilySpec::Io(size()?),
            "pt" => FamilySpec::Pt(size()?),
            "t" => FamilySpec::T(size()?),
            "d" => FamilySpec::D(size()?),
            "b" => FamilySpec::B(size()?),
            "fp" => FamilySpec::Fp(size()?),
            "rees" if !rest.is_empty() => FamilySpec::Rees(rest.to_string()),
            "table" if !rest.is_empty() => FamilySpec::Table(rest.to_string()),
            "fixture" => match rest {
                "remark38" => FamilySpec::RadicalGap,
                "mat2f2" => FamilySpec::Mat2F2,
                _ => return Err(unknown()),
            },
            "variant" => {
                let (inner, label) = rest.rsplit_once(':').ok_or_else(unknown)?;
                FamilySpec::Variant(Box::new(FamilySpec::parse(inner)?), label.to_string())
            }
            _ => return Err(unknown()),
        })
    }

    pub fn build(&self, bounds: &Bounds, exec: Exec) -> Result<Semigroup> {
        Ok(match self {
            FamilySpec::Is(n) => build_is(*n, bounds.is, exec)?.semigroup,
            FamilySpec::Io(n) => build_io(*n, bounds.io, exec)?.semigroup,
            FamilySpec::Pt(n) => build_pt(*n, bounds.pt, exec)?.semigroup,
            FamilySpec::T(n) => build_t(*n, bounds.t, exec)?.semigroup,
            FamilySpec::D(n) => build_d(*n, bounds.d, exec)?.semigroup,
            FamilySpec::B(n) => build_b(*n, bounds.b, exec)?.semigroup,
            FamilySpec::Fp(n) => build_fp(*n, bounds.fp, exec)?.semigroup,
            FamilySpec::RadicalGap => build_radical_gap(exec)?.semigroup,
            FamilySpec::Mat2F2 => build_mat2f2(exec)?.semigroup,
            FamilySpec::Rees(path) => ReesMatrixSemigroup::parse(&read(path)?)?.to_semigroup(exec)?,
            FamilySpec::Table(path) => cayley::parse(&read(path)?)?,
            FamilySpec::Variant(inner, label) => {
                let s = inner.build(bounds, exec)?;
                let a = s
                    .find_label(label)
                    .ok_or_else(|| Error::UnknownFamily(format!("no element labelled `{label}`")))?;
                build_variant(&s, a)?
            }
        })
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Error::Io(format!("{path}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specifiers() {
        assert_eq!(FamilySpec::parse("is:3").unwrap(), FamilySpec::Is(3));
        assert_eq!(
            FamilySpec::parse("variant:is:3:12-").unwrap(),
            FamilySpec::Variant(Box::new(FamilySpec::Is(3)), "12-".into())
        );
        assert_eq!(FamilySpec::parse("fixture:remark38").unwrap(), FamilySpec::RadicalGap);
        assert!(matches!(FamilySpec::parse("zz:3"), Err(Error::UnknownFamily(_))));
        assert!(matches!(FamilySpec::parse("is:x"), Err(Error::UnknownFamily(_))));
        assert!(matches!(FamilySpec::parse("fixture:nope"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn variant_by_identity_is_the_original() {
        let s = FamilySpec::parse("is:3").unwrap().build(&Bounds::default(), Exec::Sequential).unwrap();
        let v = FamilySpec::parse("variant:is:3:123")
            .unwrap()
            .build(&Bounds::default(), Exec::Sequential)
            .unwrap();
        assert_eq!(v.rows(), s.rows());
    }

    #[test]
    fn variant_idempotents_have_domain_inside_the_sandwich() {
        let b = build_is(3, 5, Exec::Sequential).unwrap();
        let s = &b.semigroup;
        let eps = s.find_label("12-").unwrap();
        let v = build_variant(s, eps).unwrap();
        for (i, m) in b.elements.iter().enumerate() {
            let expected = s.is_idempotent(i) && m.domain().iter().all(|&x| x < 2);
            assert_eq!(v.is_idempotent(i), expected, "{m}");
        }
    }

    #[test]
    fn relative_zero_of_the_zero_is_everything() {
        let s = build_is(2, 5, Exec::Sequential).unwrap().semigroup;
        let (sub, embed) = relative_zero_subsemigroup(&s, s.zero().unwrap()).unwrap();
        assert_eq!(sub.order(), s.order());
        assert_eq!(embed, (0..s.order()).collect::<Vec<_>>());
    }

    #[test]
    fn relative_zero_in_full_transformations() {
        let b = build_t(3, 4, Exec::Sequential).unwrap();
        let s = &b.semigroup;
        let c1 = s.find_label("111").unwrap();
        let (sub, _) = relative_zero_subsemigroup(s, c1).unwrap();
        assert_eq!(sub.order(), 9);
        assert_eq!(sub.label(sub.zero().unwrap()), "111");
        // membership equals the block criterion: the image point is fixed
        // and each block maps into itself
        for e in s.idempotents() {
            let em = &b.elements[e];
            let (_, embed) = relative_zero_subsemigroup(s, e).unwrap();
            for (x, m) in b.elements.iter().enumerate() {
                let ok = em.image().iter().all(|&a| m.apply(a) == Some(a))
                    && (0..3).all(|p| em.apply(m.apply(p).unwrap()) == em.apply(p));
                assert_eq!(embed.contains(&x), ok, "e = {em}, x = {m}");
            }
        }
        assert!(matches!(
            relative_zero_subsemigroup(s, s.find_label("211").unwrap()),
            Err(Error::NotIdempotent(_))
        ));
    }
}
