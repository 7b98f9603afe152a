//! The free graded Lie algebra 𝕃(W), realized inside the tensor algebra T(W).
//!
//! Lie elements are stored as rational combinations of tensor words. The
//! bracket is the graded commutator `[a,b] = a⊗b - (-1)^{|a||b|} b⊗a`, and
//! degree-wise bases are extracted from left-normed brackets by exact rank.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use crate::commutative::Generator as LieGenerator;
use crate::linalg::{independent_subset, solve_in_span, QVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("image of generator `{generator}` has degree {found:?}, expected {expected}")]
    DegreeMismatch {
        generator: String,
        expected: i64,
        found: Option<u32>,
    },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("expected {expected} generator images, got {found}")]
    WrongImageCount { expected: usize, found: usize },
    #[error("element is not in the Lie subalgebra")]
    NotLie,
}

/// An associative word in the generators, by generator index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TensorWord(pub Vec<usize>);

impl TensorWord {
    pub fn letter(index: usize) -> Self {
        Self(vec![index])
    }

    pub fn degree(&self, gens: &[LieGenerator]) -> u32 {
        self.0.iter().map(|&i| gens[i].degree).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &TensorWord) -> TensorWord {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        TensorWord(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement(BTreeMap<TensorWord, Rational>);

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(index: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(TensorWord::letter(index), Rational::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Rational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, w: &TensorWord) -> Rational {
        self.0.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: TensorWord, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.0.entry(w) {
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

    pub fn add_assign_scaled(&mut self, other: &LieElement, scale: &Rational) {
        for (w, c) in &other.0 {
            self.add_term(w.clone(), c * scale);
        }
    }

    pub fn scaled(&self, scale: &Rational) -> LieElement {
        let mut out = LieElement::zero();
        out.add_assign_scaled(self, scale);
        out
    }

    pub fn sum(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn degree(&self, gens: &[LieGenerator]) -> Result<Option<u32>, LieError> {
        let mut degrees = self.0.keys().map(|w| w.degree(gens));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(LieError::NotHomogeneous)
        }
    }

    /// Coefficients of single-letter words.
    pub fn linear_part(&self) -> BTreeMap<usize, Rational> {
        self.0
            .iter()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w.0[0], c.clone()))
            .collect()
    }

    pub fn is_decomposable(&self) -> bool {
        self.0.keys().all(|w| w.len() >= 2)
    }

    pub fn uses_only(&self, allowed: impl Fn(usize) -> bool) -> bool {
        self.0.keys().all(|w| w.0.iter().all(|&i| allowed(i)))
    }

    pub fn reindexed(&self, map: impl Fn(usize) -> usize) -> LieElement {
        let mut out = LieElement::zero();
        for (w, c) in &self.0 {
            out.add_term(TensorWord(w.0.iter().map(|&i| map(i)).collect()), c.clone());
        }
        out
    }
}

fn sign(negative: bool) -> Rational {
    if negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Graded bracket, extended bilinearly over the homogeneous words of each argument.
pub fn bracket(gens: &[LieGenerator], a: &LieElement, b: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (u, cu) in &a.0 {
        let du = u.degree(gens);
        for (v, cv) in &b.0 {
            let dv = v.degree(gens);
            let c = cu * cv;
            out.add_term(u.concat(v), c.clone());
            out.add_term(v.concat(u), -(c * sign(du * dv % 2 == 1)));
        }
    }
    out
}

/// Left-normed bracket `[[..[g1,g2],g3]..,gk]` of a generator sequence.
pub fn left_normed(gens: &[LieGenerator], sequence: &[usize]) -> LieElement {
    let mut it = sequence.iter();
    let Some(&first) = it.next() else {
        return LieElement::zero();
    };
    it.fold(LieElement::generator(first), |acc, &g| {
        bracket(gens, &acc, &LieElement::generator(g))
    })
}

/// A basis vector of 𝕃(W) in one degree, remembered as the left-normed
/// bracket of `sequence`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBasisElement {
    pub sequence: Vec<usize>,
    pub element: LieElement,
}

/// Basis of the degree-`degree` part of the Lie subalgebra generated by the
/// generators accepted by `allowed`.
pub fn lie_basis_where(gens: &[LieGenerator], degree: u32, allowed: impl Fn(usize) -> bool) -> Vec<LieBasisElement> {
    let mut candidates: Vec<LieBasisElement> = Vec::new();
    let usable: Vec<usize> = (0..gens.len())
        .filter(|&i| allowed(i) && gens[i].degree > 0)
        .collect();
    fn go(
        gens: &[LieGenerator],
        usable: &[usize],
        remaining: u32,
        sequence: &mut Vec<usize>,
        prefix: &LieElement,
        out: &mut Vec<LieBasisElement>,
    ) {
        if remaining == 0 {
            out.push(LieBasisElement {
                sequence: sequence.clone(),
                element: prefix.clone(),
            });
            return;
        }
        for &g in usable {
            if gens[g].degree > remaining {
                continue;
            }
            let next = if sequence.is_empty() {
                LieElement::generator(g)
            } else {
                bracket(gens, prefix, &LieElement::generator(g))
            };
            // every extension of a vanishing left-normed bracket vanishes
            if next.is_zero() {
                continue;
            }
            sequence.push(g);
            go(gens, usable, remaining - gens[g].degree, sequence, &next, out);
            sequence.pop();
        }
    }
    if degree == 0 {
        return Vec::new();
    }
    go(gens, &usable, degree, &mut Vec::new(), &LieElement::zero(), &mut candidates);
    let index = WordIndex::spanning(candidates.iter().map(|c| &c.element));
    let vectors: Vec<QVector> = candidates
        .iter()
        .map(|c| index.vector(&c.element).expect("word indexed"))
        .collect();
    independent_subset(&vectors)
        .into_iter()
        .map(|i| candidates[i].clone())
        .collect()
}

pub fn lie_basis(gens: &[LieGenerator], degree: u32) -> Vec<LieBasisElement> {
    lie_basis_where(gens, degree, |_| true)
}

/// Sorted set of words with positions, used to turn elements into vectors.
#[derive(Clone, Debug, Default)]
pub struct WordIndex {
    words: Vec<TensorWord>,
    position: HashMap<TensorWord, usize>,
}

impl WordIndex {
    pub fn spanning<'a>(elements: impl IntoIterator<Item = &'a LieElement>) -> Self {
        let mut words: Vec<TensorWord> = elements
            .into_iter()
            .flat_map(|e| e.0.keys().cloned())
            .collect();
        words.sort();
        words.dedup();
        let position = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Self { words, position }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `None` if `e` has a word outside the index.
    pub fn vector(&self, e: &LieElement) -> Option<QVector> {
        let mut v = vec![Rational::zero(); self.words.len()];
        for (w, c) in &e.0 {
            v[*self.position.get(w)?] = c.clone();
        }
        Some(v)
    }

    pub fn element(&self, v: &[Rational]) -> LieElement {
        let mut e = LieElement::zero();
        for (w, c) in self.words.iter().zip(v) {
            e.add_term(w.clone(), c.clone());
        }
        e
    }
}

/// Extends generator images to the degree -1 derivation of T(W) and applies it.
/// The restriction to 𝕃(W) is the Lie derivation with the same images.
pub fn lie_derivation_extend(
    gens: &[LieGenerator],
    images: &[LieElement],
    e: &LieElement,
) -> Result<LieElement, LieError> {
    check_images(gens, images)?;
    Ok(apply_lie_derivation(gens, images, e))
}

pub(crate) fn check_images(gens: &[LieGenerator], images: &[LieElement]) -> Result<(), LieError> {
    if images.len() != gens.len() {
        return Err(LieError::WrongImageCount {
            expected: gens.len(),
            found: images.len(),
        });
    }
    for (g, img) in gens.iter().zip(images) {
        let expected = g.degree as i64 - 1;
        let found = img.degree(gens).map_err(|_| LieError::DegreeMismatch {
            generator: g.name.clone(),
            expected,
            found: None,
        })?;
        let bad = match found {
            None => false,
            // the empty word is not a Lie element
            Some(d) => d as i64 != expected || img.0.keys().any(TensorWord::is_empty),
        };
        if bad {
            return Err(LieError::DegreeMismatch {
                generator: g.name.clone(),
                expected,
                found,
            });
        }
    }
    Ok(())
}

pub(crate) fn apply_lie_derivation(gens: &[LieGenerator], images: &[LieElement], e: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (w, c) in &e.0 {
        let mut prefix_degree = 0u32;
        for (k, &g) in w.0.iter().enumerate() {
            if !images[g].is_zero() {
                let s = if prefix_degree % 2 == 1 { -c.clone() } else { c.clone() };
                let (before, after) = (&w.0[..k], &w.0[k + 1..]);
                for (u, cu) in &images[g].0 {
                    let mut word = Vec::with_capacity(w.0.len() + u.0.len());
                    word.extend_from_slice(before);
                    word.extend_from_slice(&u.0);
                    word.extend_from_slice(after);
                    out.add_term(TensorWord(word), &s * cu);
                }
            }
            prefix_degree += gens[g].degree;
        }
    }
    out
}

/// Writes a homogeneous Lie element as a combination of left-normed basis
/// brackets of its degree.
pub fn to_brackets(gens: &[LieGenerator], e: &LieElement) -> Result<Vec<(Rational, Vec<usize>)>, LieError> {
    let Some(degree) = e.degree(gens)? else {
        return Ok(Vec::new());
    };
    let basis = lie_basis(gens, degree);
    let index = WordIndex::spanning(basis.iter().map(|b| &b.element));
    let target = index.vector(e).ok_or(LieError::NotLie)?;
    let columns: Vec<QVector> = basis
        .iter()
        .map(|b| index.vector(&b.element).expect("word indexed"))
        .collect();
    let coords = solve_in_span(&columns, &target).ok_or(LieError::NotLie)?;
    Ok(coords
        .into_iter()
        .zip(basis)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, b)| (c, b.sequence))
        .collect())
}

pub fn format_bracket(gens: &[LieGenerator], sequence: &[usize]) -> String {
    let mut it = sequence.iter();
    let Some(&first) = it.next() else {
        return String::new();
    };
    it.fold(gens[first].name.clone(), |acc, &g| format!("[{acc},{}]", gens[g].name))
}

/// Bracket-expression rendering, e.g. `1/2*[w1,w1] - [w1,w3]`.
pub fn format_lie_element(gens: &[LieGenerator], e: &LieElement) -> Result<String, LieError> {
    let terms = to_brackets(gens, e)?;
    if terms.is_empty() {
        return Ok("0".into());
    }
    let mut s = String::new();
    for (k, (c, seq)) in terms.iter().enumerate() {
        let (neg, abs) = (c.is_negative(), c.abs());
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if !abs.is_one() {
            s.push_str(&format!("{abs}*"));
        }
        s.push_str(&format_bracket(gens, seq));
    }
    Ok(s)
}

/// Plain tensor rendering, for diagnostics.
pub struct TensorDisplay<'a>(pub &'a [LieGenerator], pub &'a LieElement);

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.1 .0.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<&str> = w.0.iter().map(|&i| self.0[i].name.as_str()).collect();
            write!(f, "({c})*{}", word.join("⊗"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int, span_dim};
    use proptest::prelude::*;

    fn gens(ds: &[u32]) -> Vec<LieGenerator> {
        ds.iter()
            .enumerate()
            .map(|(i, &d)| LieGenerator::new(format!("w{i}"), d))
            .collect()
    }

    fn g(i: usize) -> LieElement {
        LieElement::generator(i)
    }

    fn dim(ds: &[u32], d: u32) -> usize {
        lie_basis(&gens(ds), d).len()
    }

    #[test]
    fn self_brackets() {
        let odd = gens(&[1]);
        let b = bracket(&odd, &g(0), &g(0));
        let mut expected = LieElement::zero();
        expected.add_term(TensorWord(vec![0, 0]), int(2));
        assert_eq!(b, expected);
        assert!(bracket(&gens(&[2]), &g(0), &g(0)).is_zero());
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!((1..=3).map(|d| dim(&[1], d)).collect::<Vec<_>>(), vec![1, 1, 0]);
        assert_eq!(dim(&[2], 2), 1);
        assert_eq!(dim(&[2], 4), 0);
        assert_eq!(dim(&[1, 1], 2), 3);
    }

    #[test]
    fn derivation_examples() {
        // w1:1, w3:3 with dw3 = 1/2 [w1,w1]
        let gs = gens(&[1, 3]);
        let images = vec![LieElement::zero(), bracket(&gs, &g(0), &g(0)).scaled(&frac(1, 2))];
        let d = |e: &LieElement| lie_derivation_extend(&gs, &images, e).unwrap();
        assert!(d(&images[1]).is_zero());
        assert!(d(&bracket(&gs, &g(0), &g(1))).is_zero());
        let zero_images = vec![LieElement::zero(); 2];
        assert!(lie_derivation_extend(&gs, &zero_images, &bracket(&gs, &g(0), &g(1)))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn derivation_rejects_wrong_degree() {
        let gs = gens(&[1, 3]);
        let images = vec![LieElement::zero(), g(0)];
        assert!(matches!(
            lie_derivation_extend(&gs, &images, &g(1)),
            Err(LieError::DegreeMismatch { expected: 2, found: Some(1), .. })
        ));
    }

    #[test]
    fn bracket_rendering() {
        let gs = vec![LieGenerator::new("w1", 1), LieGenerator::new("w3", 3)];
        let e = bracket(&gs, &g(0), &g(0)).scaled(&frac(1, 2));
        assert_eq!(format_lie_element(&gs, &e).unwrap(), "1/2*[w1,w1]");
        let e = bracket(&gs, &g(1), &g(0));
        assert_eq!(format_lie_element(&gs, &e).unwrap(), "[w1,w3]");
    }

    /// Every full bracketing of every generator sequence of the given degree.
    fn all_bracketings(gs: &[LieGenerator], degree: u32) -> Vec<LieElement> {
        fn trees(gs: &[LieGenerator], seq: &[usize]) -> Vec<LieElement> {
            if seq.len() == 1 {
                return vec![LieElement::generator(seq[0])];
            }
            let mut out = Vec::new();
            for split in 1..seq.len() {
                for l in trees(gs, &seq[..split]) {
                    for r in trees(gs, &seq[split..]) {
                        out.push(bracket(gs, &l, &r));
                    }
                }
            }
            out
        }
        fn seqs(gs: &[LieGenerator], rem: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for (i, g) in gs.iter().enumerate() {
                if g.degree <= rem {
                    cur.push(i);
                    seqs(gs, rem - g.degree, cur, out);
                    cur.pop();
                }
            }
        }
        let mut all = Vec::new();
        seqs(gs, degree, &mut Vec::new(), &mut all);
        all.iter().flat_map(|s| trees(gs, s)).collect()
    }

    fn brute_force_dim(gs: &[LieGenerator], degree: u32) -> usize {
        let elems = all_bracketings(gs, degree);
        let index = WordIndex::spanning(elems.iter());
        let vecs: Vec<QVector> = elems.iter().map(|e| index.vector(e).unwrap()).collect();
        span_dim(&vecs)
    }

    #[test]
    fn left_normed_span_equals_all_bracketings() {
        for ds in [vec![1], vec![2], vec![1, 1], vec![1, 2], vec![2, 3], vec![1, 3, 5], vec![1, 1, 2]] {
            let gs = gens(&ds);
            for d in 1..=6 {
                assert_eq!(lie_basis(&gs, d).len(), brute_force_dim(&gs, d), "{ds:?} degree {d}");
            }
        }
    }

    fn homogeneous_element(ds: Vec<u32>) -> impl Strategy<Value = LieElement> {
        (1u32..=8, proptest::collection::vec((-3i64..=3, 1i64..=2, 0usize..100), 1..=3)).prop_map(move |(d, cs)| {
            let gs = gens(&ds);
            let b = lie_basis(&gs, d);
            let mut e = LieElement::zero();
            if !b.is_empty() {
                for (n, den, k) in cs {
                    e.add_assign_scaled(&b[k % b.len()].element, &frac(n, den));
                }
            }
            e
        })
    }

    fn degree_list() -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(1u32..=4, 1..=3)
    }

    fn deg(gs: &[LieGenerator], e: &LieElement) -> u32 {
        e.degree(gs).unwrap().unwrap_or(0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn graded_antisymmetry_and_jacobi(
            (ds, a, b, c) in degree_list().prop_flat_map(|ds| (
                Just(ds.clone()),
                homogeneous_element(ds.clone()),
                homogeneous_element(ds.clone()),
                homogeneous_element(ds),
            ))
        ) {
            let gs = gens(&ds);
            let (da, db) = (deg(&gs, &a), deg(&gs, &b));
            let s = sign(da * db % 2 == 1);
            prop_assert!(bracket(&gs, &a, &b).sum(&bracket(&gs, &b, &a).scaled(&s)).is_zero());
            let lhs = bracket(&gs, &a, &bracket(&gs, &b, &c));
            let rhs = bracket(&gs, &bracket(&gs, &a, &b), &c)
                .sum(&bracket(&gs, &b, &bracket(&gs, &a, &c)).scaled(&s));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn basis_dimension_independent_of_generator_order(ds in degree_list(), d in 1u32..=6) {
            let mut rev = ds.clone();
            rev.reverse();
            prop_assert_eq!(dim(&ds, d), dim(&rev, d));
        }

        #[test]
        fn brackets_of_basis_elements_stay_in_span(ds in degree_list(), d1 in 1u32..=4, d2 in 1u32..=4, i in 0usize..50, j in 0usize..50) {
            let gs = gens(&ds);
            let (b1, b2) = (lie_basis(&gs, d1), lie_basis(&gs, d2));
            prop_assume!(!b1.is_empty() && !b2.is_empty());
            let e = bracket(&gs, &b1[i % b1.len()].element, &b2[j % b2.len()].element);
            prop_assert!(e.is_zero() || to_brackets(&gs, &e).is_ok());
        }
    }
}
