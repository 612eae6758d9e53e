//! The exterior algebra `Λ(Σ)` on the free module generated by a finite,
//! totally ordered alphabet.
//!
//! An element is a sparse map from basis blades (strictly increasing letter
//! tuples) to nonzero coefficients of the active [`CoefficientRing`]. Blades
//! are ordered by degree first and lexicographically within a degree, which
//! is also the order in which elements are rendered.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;
use crate::ring::CoefficientRing;

/// Index of a letter in its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u32);

/// A word of `Σ*`, stored letter by letter.
pub type Word = Vec<Letter>;

/// A finite ordered alphabet. The declared order is the basis order of `Λ(Σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
    index: BTreeMap<String, u32>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet { letters: Vec::new(), index: BTreeMap::new() };
        for l in letters {
            let l = l.into();
            if out.index.contains_key(&l) {
                return Err(AlgebraError::DuplicateLetter(l));
            }
            out.index.insert(l.clone(), out.letters.len() as u32);
            out.letters.push(l);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, name: &str) -> Result<Letter, AlgebraError> {
        self.index.get(name).map(|&i| Letter(i)).ok_or_else(|| AlgebraError::UnknownLetter(name.into()))
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.letters[l.0 as usize]
    }

    /// Tokenizes a word given as a sequence of letter names.
    pub fn word<I, S>(&self, names: I) -> Result<Word, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names.into_iter().map(|n| self.letter(n.as_ref())).collect()
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        let mut s = String::new();
        for (k, l) in w.iter().enumerate() {
            if k > 0 {
                s.push(';');
            }
            s.push_str(self.name(*l));
        }
        s
    }
}

/// A basis element `s_1 ∧ … ∧ s_k` with `s_1 < … < s_k`; the empty blade is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Blade(Vec<u32>);

impl Blade {
    pub fn unit() -> Self {
        Blade(Vec::new())
    }

    /// Sorts `letters`, returning the blade and the sign of the sorting
    /// permutation, or `None` on a repeated letter.
    pub fn from_letters(letters: &[u32]) -> Option<(Blade, bool)> {
        let mut v: Vec<u32> = letters.to_vec();
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Blade(v), odd))
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Product of two blades: `None` if they share a letter, otherwise the
    /// sorted blade and whether the merge needed an odd permutation.
    fn mul(&self, other: &Blade) -> Option<(Blade, bool)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    inversions += a.len() - i;
                    j += 1;
                }
                Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((Blade(out), inversions % 2 == 1))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// An element of `Λ(Σ)` over a coefficient ring.
#[derive(Clone, Debug)]
pub struct ExteriorElement {
    alphabet: Arc<Alphabet>,
    ring: CoefficientRing,
    terms: BTreeMap<Blade, BigInt>,
}

impl PartialEq for ExteriorElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && same_alphabet(&self.alphabet, &other.alphabet) && self.terms == other.terms
    }
}

impl Eq for ExteriorElement {}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a.letters == b.letters
}

impl ExteriorElement {
    pub fn zero(alphabet: &Arc<Alphabet>, ring: CoefficientRing) -> Self {
        ExteriorElement { alphabet: alphabet.clone(), ring, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>, ring: CoefficientRing) -> Self {
        Self::monomial(alphabet, ring, Blade::unit(), BigInt::one())
    }

    pub fn letter(alphabet: &Arc<Alphabet>, ring: CoefficientRing, l: Letter) -> Self {
        Self::monomial(alphabet, ring, Blade(alloc::vec![l.0]), BigInt::one())
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, ring: CoefficientRing, blade: Blade, coeff: BigInt) -> Self {
        let mut e = Self::zero(alphabet, ring);
        e.add_term(blade, coeff);
        e
    }

    /// Builds an element from `(letters, coefficient)` pairs; letter tuples
    /// need not be sorted (the permutation sign is applied).
    pub fn from_terms<I>(alphabet: &Arc<Alphabet>, ring: CoefficientRing, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<Letter>, BigInt)>,
    {
        let mut e = Self::zero(alphabet, ring);
        for (letters, c) in terms {
            let raw: Vec<u32> = letters.iter().map(|l| l.0).collect();
            if let Some((blade, odd)) = Blade::from_letters(&raw) {
                e.add_term(blade, if odd { -c } else { c });
            }
        }
        e
    }

    /// The same element written over an alphabet with the same letters,
    /// possibly in another order.
    pub fn relabel(&self, alphabet: &Arc<Alphabet>) -> Result<Self, AlgebraError> {
        if same_alphabet(&self.alphabet, alphabet) {
            return Ok(ExteriorElement { alphabet: alphabet.clone(), ..self.clone() });
        }
        let mut map = Vec::with_capacity(self.alphabet.len());
        for name in self.alphabet.letters() {
            map.push(alphabet.letter(name)?);
        }
        let terms = self.terms.iter().map(|(b, c)| (b.letters().iter().map(|&l| map[l as usize]).collect(), c.clone()));
        Ok(Self::from_terms(alphabet, self.ring, terms))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: &Blade) -> BigInt {
        self.terms.get(blade).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The degree if the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Blade::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, blade: Blade, coeff: BigInt) {
        let c = self.ring.normalize(coeff);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(existing) => {
                let sum = self.ring.add(existing, &c);
                if sum.is_zero() {
                    self.terms.remove(&blade);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(blade, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if !same_alphabet(&self.alphabet, &other.alphabet) {
            return Err(AlgebraError::AlphabetMismatch);
        }
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(&self.alphabet, self.ring);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c * k);
        }
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.alphabet, self.ring);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((blade, odd)) = ba.mul(bb) {
                    let c = ca * cb;
                    out.add_term(blade, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Projection onto `Λ^n(Σ)`.
    pub fn degree_component(&self, n: usize) -> Self {
        ExteriorElement {
            alphabet: self.alphabet.clone(),
            ring: self.ring,
            terms: self.terms.iter().filter(|(b, _)| b.degree() == n).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    /// Renders with the alphabet's letter names, e.g. `2·a + a∧b`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Image of a word under the monoid map `Σ* → Λ^1(Σ)`: the sum of its letters
/// counted with multiplicity.
pub fn word_to_vector(alphabet: &Arc<Alphabet>, ring: CoefficientRing, word: &[Letter]) -> ExteriorElement {
    let mut e = ExteriorElement::zero(alphabet, ring);
    for l in word {
        e.add_term(Blade(alloc::vec![l.0]), BigInt::one());
    }
    e
}

/// Same as [`word_to_vector`] for a word given by letter names.
pub fn word_names_to_vector<S: AsRef<str>>(
    alphabet: &Arc<Alphabet>,
    ring: CoefficientRing,
    names: &[S],
) -> Result<ExteriorElement, AlgebraError> {
    let w = alphabet.word(names.iter().map(|s| s.as_ref()))?;
    Ok(word_to_vector(alphabet, ring, &w))
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (blade, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if blade.degree() == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            for (j, l) in blade.0.iter().enumerate() {
                if j > 0 {
                    write!(f, "∧")?;
                }
                write!(f, "{}", self.alphabet.name(Letter(*l)))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn abc() -> Arc<Alphabet> {
        Arc::new(Alphabet::new(["a", "b", "c"]).unwrap())
    }

    fn l(al: &Arc<Alphabet>, r: CoefficientRing, s: &str) -> ExteriorElement {
        ExteriorElement::letter(al, r, al.letter(s).unwrap())
    }

    #[test]
    fn alternation_and_antisymmetry() {
        let al = abc();
        let z = CoefficientRing::Integers;
        let (a, b) = (l(&al, z, "a"), l(&al, z, "b"));
        assert!(a.wedge(&a).unwrap().is_zero());
        assert_eq!(b.wedge(&a).unwrap(), a.wedge(&b).unwrap().neg());
        assert_eq!(b.wedge(&a).unwrap().render(), "-a∧b");
    }

    #[test]
    fn bilinearity() {
        let al = abc();
        let z = CoefficientRing::Integers;
        let (a, b, c) = (l(&al, z, "a"), l(&al, z, "b"), l(&al, z, "c"));
        let lhs = a.add(&b).unwrap().wedge(&c).unwrap();
        let rhs = a.wedge(&c).unwrap().add(&b.wedge(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.render(), "a∧c + b∧c");
    }

    #[test]
    fn mod_two_keeps_alternation() {
        let al = abc();
        let f2 = CoefficientRing::PrimeField(2);
        let (a, b) = (l(&al, f2, "a"), l(&al, f2, "b"));
        assert!(a.wedge(&a).unwrap().is_zero());
        assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
    }

    #[test]
    fn words_to_vectors() {
        let al = abc();
        let z = CoefficientRing::Integers;
        assert_eq!(word_names_to_vector(&al, z, &["a", "b"]).unwrap().render(), "a + b");
        assert!(word_names_to_vector::<&str>(&al, z, &[]).unwrap().is_zero());
        assert_eq!(word_names_to_vector(&al, z, &["a", "a", "b"]).unwrap().render(), "2·a + b");
        assert_eq!(word_names_to_vector(&al, z, &["d"]), Err(AlgebraError::UnknownLetter("d".into())));
    }

    #[test]
    fn degree_components() {
        let al = abc();
        let z = CoefficientRing::Integers;
        let one = ExteriorElement::one(&al, z);
        let ab = l(&al, z, "a").wedge(&l(&al, z, "b")).unwrap();
        let u = one.add(&ab).unwrap();
        assert_eq!(u.render(), "1 + a∧b");
        assert_eq!(u.degree_component(2), ab);
        assert!(l(&al, z, "a").degree_component(0).is_zero());
        let a = l(&al, z, "a");
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        let al = abc();
        let other = Arc::new(Alphabet::new(["a", "b"]).unwrap());
        let z = CoefficientRing::Integers;
        let a = l(&al, z, "a");
        let b = l(&other, z, "b");
        assert_eq!(a.wedge(&b), Err(AlgebraError::AlphabetMismatch));
        assert!(Alphabet::new(["a", "a"]).is_err());
    }

    #[test]
    fn from_terms_applies_permutation_sign() {
        let al = abc();
        let z = CoefficientRing::Integers;
        let (a, b, c) = (Letter(0), Letter(1), Letter(2));
        let e = ExteriorElement::from_terms(&al, z, vec![(vec![c, a, b], BigInt::one())]);
        // (c, a, b) -> (a, b, c) is an even permutation
        assert_eq!(e.render(), "a∧b∧c");
        let e = ExteriorElement::from_terms(&al, z, vec![(vec![b, a], BigInt::one())]);
        assert_eq!(e.render(), "-a∧b");
    }
}
