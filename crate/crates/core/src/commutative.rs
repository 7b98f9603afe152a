//! Free graded-commutative algebras on finitely many graded generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("image of generator `{generator}` has degree {found:?}, expected {expected}")]
    DegreeMismatch {
        generator: String,
        expected: u32,
        found: Option<u32>,
    },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("expected {expected} generator images, got {found}")]
    WrongImageCount { expected: usize, found: usize },
}

/// A named generator of positive degree. Its index is its position in the
/// generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Product of generators, stored as (generator index, exponent) pairs sorted
/// by index with no zero exponents.
///
/// Ordering is lexicographic on the dense exponent vector with larger
/// exponents of earlier generators first, so `x^3 < x*y < y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Self(vec![(index, 1)])
    }

    /// Builds a monomial from arbitrary (index, exponent) pairs.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (i, e) in pairs {
            *map.entry(i).or_default() += e;
        }
        Self(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0
            .binary_search_by_key(&index, |(i, _)| *i)
            .map_or(0, |k| self.0[k].1)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree(&self, gens: &[Generator]) -> u32 {
        self.0.iter().map(|(i, e)| e * gens[*i].degree).sum()
    }

    /// If this monomial is a single generator to the first power, its index.
    pub fn as_generator(&self) -> Option<usize> {
        match self.0.as_slice() {
            [(i, 1)] => Some(*i),
            _ => None,
        }
    }

    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.0.iter().all(|(i, _)| allowed(*i))
    }

    /// Renames generator indices through `map`; the map must be order preserving.
    pub fn reindexed(&self, map: impl Fn(usize) -> usize) -> Self {
        Self(self.0.iter().map(|(i, e)| (map(*i), *e)).collect())
    }

    pub fn display<'a>(&'a self, gens: &'a [Generator]) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, gens }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().max(b.len()) {
            match (a.get(k), b.get(k)) {
                (Some(&(ia, ea)), Some(&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Equal => match eb.cmp(&ea) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    o => return o,
                },
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (None, None) => unreachable!(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    gens: &'a [Generator],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_unit() {
            return write!(f, "1");
        }
        for (k, (i, e)) in self.m.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.gens[*i].name)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sign and product of two monomials, or `None` when an odd generator
/// would appear twice.
pub fn multiply_monomials(gens: &[Generator], a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
    let mut negative = false;
    let mut out = Vec::with_capacity(a.0.len() + b.0.len());
    let mut odd_in_a_after = a.0.iter().filter(|(i, _)| gens[*i].is_odd()).count();
    let (mut i, mut j) = (0, 0);
    while i < a.0.len() || j < b.0.len() {
        let ord = match (a.0.get(i), b.0.get(j)) {
            (Some((ia, _)), Some((ib, _))) => ia.cmp(ib),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                if gens[a.0[i].0].is_odd() {
                    odd_in_a_after -= 1;
                }
                out.push(a.0[i]);
                i += 1;
            }
            Ordering::Greater => {
                // an odd factor of b moves past every odd factor of a with larger index
                if gens[b.0[j].0].is_odd() && odd_in_a_after % 2 == 1 {
                    negative = !negative;
                }
                out.push(b.0[j]);
                j += 1;
            }
            Ordering::Equal => {
                let g = a.0[i].0;
                if gens[g].is_odd() {
                    return None;
                }
                out.push((g, a.0[i].1 + b.0[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    Some((negative, Monomial(out)))
}

/// Finite rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element(BTreeMap<Monomial, Rational>);

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::unit(), Rational::one())
    }

    pub fn monomial(m: Monomial, coeff: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, coeff);
        e
    }

    pub fn generator(index: usize) -> Self {
        Self::monomial(Monomial::generator(index), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Element, scale: &Rational) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_assign_scaled(self, scale);
        out
    }

    pub fn sum(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    /// The common degree of all terms; `Ok(None)` for the zero element.
    pub fn degree(&self, gens: &[Generator]) -> Result<Option<u32>, AlgebraError> {
        let mut degrees = self.0.keys().map(|m| m.degree(gens));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(AlgebraError::NotHomogeneous)
        }
    }

    /// Coefficients of single-generator terms.
    pub fn linear_part(&self) -> BTreeMap<usize, Rational> {
        self.0
            .iter()
            .filter_map(|(m, c)| m.as_generator().map(|g| (g, c.clone())))
            .collect()
    }

    pub fn is_decomposable(&self) -> bool {
        self.0.keys().all(|m| m.word_length() >= 2)
    }

    pub fn display<'a>(&'a self, gens: &'a [Generator]) -> impl fmt::Display + 'a {
        ElementDisplay { e: self, gens }
    }
}

struct ElementDisplay<'a> {
    e: &'a Element,
    gens: &'a [Generator],
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.e.0.iter().enumerate() {
            let (neg, abs) = (c.is_negative(), c.abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(self.gens))?;
            } else {
                write!(f, "{abs}*{}", m.display(self.gens))?;
            }
        }
        Ok(())
    }
}

/// Graded-commutative product with the Koszul sign rule.
pub fn multiply(gens: &[Generator], a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (ma, ca) in &a.0 {
        for (mb, cb) in &b.0 {
            if let Some((neg, m)) = multiply_monomials(gens, ma, mb) {
                let c = ca * cb;
                out.add_term(m, if neg { -c } else { c });
            }
        }
    }
    out
}

/// All monomials of the given degree, restricted to generators accepted by
/// `allowed`, in canonical order.
pub fn basis_where(gens: &[Generator], degree: u32, allowed: impl Fn(usize) -> bool) -> Vec<Monomial> {
    fn go(
        gens: &[Generator],
        allowed: &dyn Fn(usize) -> bool,
        idx: usize,
        remaining: u32,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
            return;
        }
        if idx == gens.len() {
            return;
        }
        let g = &gens[idx];
        let max_exp = if !allowed(idx) || g.degree == 0 {
            0
        } else if g.is_odd() {
            (remaining / g.degree).min(1)
        } else {
            remaining / g.degree
        };
        for e in (0..=max_exp).rev() {
            if e > 0 {
                current.push((idx, e));
            }
            go(gens, allowed, idx + 1, remaining - e * g.degree, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(gens, &allowed, 0, degree, &mut Vec::new(), &mut out);
    out
}

/// All monomials of exactly `degree`, in canonical order.
pub fn basis(gens: &[Generator], degree: u32) -> Vec<Monomial> {
    basis_where(gens, degree, |_| true)
}

/// Extends generator images to the unique degree +1 derivation and applies it.
/// `images[i]` is the image of generator `i`.
pub fn derivation_extend(gens: &[Generator], images: &[Element], e: &Element) -> Result<Element, AlgebraError> {
    check_images(gens, images)?;
    Ok(apply_derivation(gens, images, e))
}

pub(crate) fn check_images(gens: &[Generator], images: &[Element]) -> Result<(), AlgebraError> {
    if images.len() != gens.len() {
        return Err(AlgebraError::WrongImageCount {
            expected: gens.len(),
            found: images.len(),
        });
    }
    for (g, img) in gens.iter().zip(images) {
        let found = img.degree(gens).map_err(|_| AlgebraError::DegreeMismatch {
            generator: g.name.clone(),
            expected: g.degree + 1,
            found: None,
        })?;
        if found.is_some_and(|d| d != g.degree + 1) {
            return Err(AlgebraError::DegreeMismatch {
                generator: g.name.clone(),
                expected: g.degree + 1,
                found,
            });
        }
    }
    Ok(())
}

/// Derivation applied to a single monomial, with images assumed well formed.
pub(crate) fn derive_monomial(gens: &[Generator], images: &[Element], m: &Monomial) -> Element {
    let mut out = Element::zero();
    let factors = m.factors();
    for (k, &(g, e)) in factors.iter().enumerate() {
        if images[g].is_zero() {
            continue;
        }
        let prefix = Monomial(factors[..k].to_vec());
        let suffix = Monomial(factors[k + 1..].to_vec());
        // D(x^e) = e x^(e-1) Dx for even x; odd generators have e = 1
        let mut rest = Vec::new();
        if e > 1 {
            rest.push((g, e - 1));
        }
        let power = Element::monomial(Monomial(rest), int(e as i64));
        let sign = if prefix.degree(gens) % 2 == 1 { -Rational::one() } else { Rational::one() };
        let left = Element::monomial(prefix, sign);
        let term = multiply(gens, &left, &multiply(gens, &power, &images[g]));
        let term = multiply(gens, &term, &Element::monomial(suffix, Rational::one()));
        out.add_assign_scaled(&term, &Rational::one());
    }
    out
}

pub(crate) fn apply_derivation(gens: &[Generator], images: &[Element], e: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        out.add_assign_scaled(&derive_monomial(gens, images, m), c);
    }
    out
}
