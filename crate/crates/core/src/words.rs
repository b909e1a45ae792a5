//! Free-group word algebra over the presentation alphabet.
//!
//! Letters are signed generator symbols. Fiber and line families carry an
//! index that is reduced modulo the ambient `n` at construction, so `g_n` and
//! `g_0` are the same symbol. Base loops `gamma_k` keep their index as given.
//!
//! Every public operation that returns a [`Word`] returns it freely reduced.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("symbol {0} is outside the domain of the substitution")]
    OutsideDomain(GeneratorSymbol),
    #[error("ambient n mismatch: {0} vs {1}")]
    AmbientMismatch(u32, u32),
    #[error("cannot parse token `{0}`")]
    BadToken(String),
    #[error("ambient n must be positive")]
    ZeroAmbient,
    #[error("automorphism domain must be exactly the 2n fiber generators")]
    BadDomain,
}

/// Letter families of the presentation alphabet.
///
/// The `Inf*` families are the generators of the fundamental groups of the
/// neighbourhood of `V(y)`, before they are transported to the main basepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    FiberG,
    FiberGPrime,
    LineGPP,
    BaseGamma,
    InfG,
    InfGPrime,
    InfGamma,
}

impl Family {
    pub fn prefix(self) -> &'static str {
        match self {
            Family::FiberG => "g",
            Family::FiberGPrime => "gp",
            Family::LineGPP => "gpp",
            Family::BaseGamma => "gamma",
            Family::InfG => "ginf",
            Family::InfGPrime => "gpinf",
            Family::InfGamma => "gammainf",
        }
    }

    /// Whether indices of this family live in `Z/n`.
    pub fn is_modular(self) -> bool {
        !matches!(self, Family::BaseGamma | Family::InfGamma)
    }

    pub fn is_fiber(self) -> bool {
        matches!(self, Family::FiberG | Family::FiberGPrime)
    }

    // Longest prefixes first so that `gpp` is not read as `gp` + "p".
    const PARSE_ORDER: [Family; 7] = [
        Family::InfGamma,
        Family::BaseGamma,
        Family::InfGPrime,
        Family::LineGPP,
        Family::FiberGPrime,
        Family::InfG,
        Family::FiberG,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub family: Family,
    pub index: u32,
}

impl GeneratorSymbol {
    /// Builds a symbol, reducing the index modulo `n` for modular families.
    pub fn new(family: Family, index: i64, n: u32) -> Self {
        assert!(n > 0, "ambient n must be positive");
        let index = if family.is_modular() {
            index.rem_euclid(n as i64) as u32
        } else {
            assert!(index >= 0, "base loop index must be non-negative");
            index as u32
        };
        GeneratorSymbol { family, index }
    }

    pub fn g(n: u32, i: i64) -> Self {
        Self::new(Family::FiberG, i, n)
    }

    pub fn gp(n: u32, i: i64) -> Self {
        Self::new(Family::FiberGPrime, i, n)
    }

    pub fn gpp(n: u32, i: i64) -> Self {
        Self::new(Family::LineGPP, i, n)
    }

    pub fn gamma(n: u32, k: i64) -> Self {
        Self::new(Family::BaseGamma, k, n)
    }

    pub fn token(&self) -> String {
        format!("{}{}", self.family.prefix(), self.index)
    }

    pub fn parse(token: &str, n: u32) -> Result<Self, WordError> {
        for family in Family::PARSE_ORDER {
            if let Some(rest) = token.strip_prefix(family.prefix()) {
                if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                    continue;
                }
                let index: i64 = rest
                    .parse()
                    .map_err(|_| WordError::BadToken(token.to_string()))?;
                return Ok(Self::new(family, index, n));
            }
        }
        Err(WordError::BadToken(token.to_string()))
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub symbol: GeneratorSymbol,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(symbol: GeneratorSymbol) -> Self {
        Letter { symbol, sign: Sign::Pos }
    }

    pub fn neg(symbol: GeneratorSymbol) -> Self {
        Letter { symbol, sign: Sign::Neg }
    }

    pub fn inverse(self) -> Self {
        Letter { symbol: self.symbol, sign: self.sign.flip() }
    }

    fn cancels(self, other: Letter) -> bool {
        self.symbol == other.symbol && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "{}", self.symbol),
            Sign::Neg => write!(f, "{}^-1", self.symbol),
        }
    }
}

/// A word in the free group on the presentation alphabet.
///
/// Words built through the public API may be unreduced; operations return
/// reduced words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: u32,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(n: u32) -> Self {
        assert!(n > 0, "ambient n must be positive");
        Word { n, letters: Vec::new() }
    }

    pub fn from_letters(n: u32, letters: Vec<Letter>) -> Self {
        assert!(n > 0, "ambient n must be positive");
        debug_assert!(letters
            .iter()
            .all(|l| !l.symbol.family.is_modular() || l.symbol.index < n));
        Word { n, letters }
    }

    pub fn letter(n: u32, letter: Letter) -> Self {
        Word::from_letters(n, vec![letter])
    }

    pub fn gen(symbol: GeneratorSymbol, n: u32) -> Self {
        Word::letter(n, Letter::pos(symbol))
    }

    pub fn g(n: u32, i: i64) -> Self {
        Word::gen(GeneratorSymbol::g(n, i), n)
    }

    pub fn gp(n: u32, i: i64) -> Self {
        Word::gen(GeneratorSymbol::gp(n, i), n)
    }

    pub fn gpp(n: u32, i: i64) -> Self {
        Word::gen(GeneratorSymbol::gpp(n, i), n)
    }

    pub fn gamma(n: u32, k: i64) -> Self {
        Word::gen(GeneratorSymbol::gamma(n, k), n)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.n, other.n, "ambient n mismatch");
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { n: self.n, letters }
    }

    /// Reduced product.
    pub fn mul(&self, other: &Word) -> Word {
        free_reduce(&self.concat(other))
    }

    /// Reduced product of a sequence of words.
    pub fn product<'a>(n: u32, words: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut acc = Word::empty(n);
        for w in words {
            acc.letters.extend_from_slice(&w.letters);
        }
        free_reduce(&acc)
    }

    pub fn inv(&self) -> Word {
        invert(self)
    }

    pub fn pow(&self, m: i64) -> Word {
        let base = if m < 0 { invert(self) } else { self.clone() };
        let mut acc = Word::empty(self.n);
        for _ in 0..m.unsigned_abs() {
            acc.letters.extend_from_slice(&base.letters);
        }
        free_reduce(&acc)
    }

    /// Symbols occurring in the word, in first-occurrence order.
    pub fn symbols(&self) -> Vec<GeneratorSymbol> {
        let mut out = Vec::new();
        for l in &self.letters {
            if !out.contains(&l.symbol) {
                out.push(l.symbol);
            }
        }
        out
    }

    pub fn tokens(&self) -> Vec<String> {
        self.letters.iter().map(|l| l.to_string()).collect()
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S], n: u32) -> Result<Word, WordError> {
        if n == 0 {
            return Err(WordError::ZeroAmbient);
        }
        let mut letters = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let tok = tok.as_ref();
            if tok == "1" {
                continue;
            }
            let (body, sign) = match tok.strip_suffix("^-1") {
                Some(body) => (body, Sign::Neg),
                None => (tok, Sign::Pos),
            };
            let symbol = GeneratorSymbol::parse(body, n)?;
            letters.push(Letter { symbol, sign });
        }
        Ok(Word { n, letters })
    }

    /// Parses a whitespace-separated token string; `1` is the empty word.
    pub fn parse(s: &str, n: u32) -> Result<Word, WordError> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        Word::from_tokens(&tokens, n)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word { n: w.n, letters: stack }
}

pub fn invert(w: &Word) -> Word {
    let letters = w.letters.iter().rev().map(|l| l.inverse()).collect();
    free_reduce(&Word { n: w.n, letters })
}

/// `by^-1 · w · by`, reduced.
pub fn conjugate(w: &Word, by: &Word) -> Word {
    Word::product(w.n, [&invert(by), w, by])
}

/// Commutator `[a, b] = a b a^-1 b^-1`, reduced.
pub fn commutator(a: &Word, b: &Word) -> Word {
    Word::product(a.n, [a, b, &invert(a), &invert(b)])
}

/// Splits a word as `prefix · core · prefix^-1` with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let w = free_reduce(w);
    let letters = &w.letters;
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo].cancels(letters[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    let prefix = Word { n: w.n, letters: letters[..lo].to_vec() };
    let core = Word { n: w.n, letters: letters[lo..hi].to_vec() };
    (prefix, core)
}

/// Decides conjugacy in the free group.
///
/// Returns `Some(c)` with `c^-1 · u · c = v` freely when `u` and `v` are
/// conjugate. Among the witnesses produced by cyclic-rotation matching the
/// shortest one is returned, ties broken by letter order.
pub fn is_conjugate_free(u: &Word, v: &Word) -> Option<Word> {
    assert_eq!(u.n, v.n, "ambient n mismatch");
    let n = u.n;
    let (a, cu) = cyclic_reduce(u);
    let (b, cv) = cyclic_reduce(v);
    if cu.len() != cv.len() {
        return None;
    }
    let len = cu.len();
    let b_inv = invert(&b);
    if len == 0 {
        return Some(Word::product(n, [&a, &b_inv]));
    }
    let mut best: Option<Word> = None;
    for r in 0..len {
        // cu = p q with |p| = r; rotation q p must equal cv.
        let matches = (0..len).all(|t| cu.letters[(r + t) % len] == cv.letters[t]);
        if !matches {
            continue;
        }
        let p = Word { n, letters: cu.letters[..r].to_vec() };
        let q = Word { n, letters: cu.letters[r..].to_vec() };
        // q p = p^-1 (p q) p = q (p q) q^-1
        for mid in [p, invert(&q)] {
            let c = Word::product(n, [&a, &mid, &b_inv]);
            best = Some(match best {
                None => c,
                Some(cur) => pick_witness(cur, c),
            });
        }
    }
    best
}

fn pick_witness(a: Word, b: Word) -> Word {
    if (b.len(), &b.letters) < (a.len(), &a.letters) {
        b
    } else {
        a
    }
}

/// Signed letter counts per generator; zero entries are omitted.
pub fn exponent_vector(w: &Word) -> BTreeMap<GeneratorSymbol, i64> {
    let mut out: BTreeMap<GeneratorSymbol, i64> = BTreeMap::new();
    for l in &w.letters {
        *out.entry(l.symbol).or_insert(0) += l.sign.value();
    }
    out.retain(|_, v| *v != 0);
    out
}

/// A homomorphism of free groups given by generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    n: u32,
    images: BTreeMap<GeneratorSymbol, Word>,
}

impl Substitution {
    pub fn new(n: u32, images: BTreeMap<GeneratorSymbol, Word>) -> Self {
        Substitution { n, images }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn images(&self) -> &BTreeMap<GeneratorSymbol, Word> {
        &self.images
    }

    pub fn image(&self, s: &GeneratorSymbol) -> Option<&Word> {
        self.images.get(s)
    }

    /// Applies the substitution; symbols outside the domain are an error.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        if w.n != self.n {
            return Err(WordError::AmbientMismatch(self.n, w.n));
        }
        let mut out = Vec::new();
        for l in &w.letters {
            let img = self
                .images
                .get(&l.symbol)
                .ok_or(WordError::OutsideDomain(l.symbol))?;
            match l.sign {
                Sign::Pos => out.extend_from_slice(&img.letters),
                Sign::Neg => out.extend(img.letters.iter().rev().map(|x| x.inverse())),
            }
        }
        Ok(free_reduce(&Word { n: self.n, letters: out }))
    }

    /// Applies the substitution, leaving symbols outside the domain untouched.
    pub fn apply_partial(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for l in &w.letters {
            match self.images.get(&l.symbol) {
                Some(img) => match l.sign {
                    Sign::Pos => out.extend_from_slice(&img.letters),
                    Sign::Neg => out.extend(img.letters.iter().rev().map(|x| x.inverse())),
                },
                None => out.push(*l),
            }
        }
        free_reduce(&Word { n: w.n, letters: out })
    }

    /// `self ∘ other`: first `other`, then `self` on the result.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution, WordError> {
        let mut images = BTreeMap::new();
        for (s, w) in &other.images {
            images.insert(*s, self.apply(w)?);
        }
        Ok(Substitution { n: self.n, images })
    }
}

/// All `2n` fiber generators `g_0..g_{n-1}, g'_0..g'_{n-1}`.
pub fn fiber_generators(n: u32) -> Vec<GeneratorSymbol> {
    let mut out: Vec<GeneratorSymbol> = (0..n as i64).map(|i| GeneratorSymbol::g(n, i)).collect();
    out.extend((0..n as i64).map(|i| GeneratorSymbol::gp(n, i)));
    out
}

/// An endomorphism of the fiber free group `F_{2n}`, typically a monodromy action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAutomorphism(Substitution);

impl FreeAutomorphism {
    pub fn new(n: u32, images: BTreeMap<GeneratorSymbol, Word>) -> Result<Self, WordError> {
        if n == 0 {
            return Err(WordError::ZeroAmbient);
        }
        let domain: Vec<_> = images.keys().copied().collect();
        let mut expected = fiber_generators(n);
        expected.sort();
        if domain != expected {
            return Err(WordError::BadDomain);
        }
        for w in images.values() {
            if w.n != n {
                return Err(WordError::AmbientMismatch(n, w.n));
            }
            if let Some(l) = w.letters.iter().find(|l| !l.symbol.family.is_fiber()) {
                return Err(WordError::OutsideDomain(l.symbol));
            }
        }
        let images = images.into_iter().map(|(k, v)| (k, free_reduce(&v))).collect();
        Ok(FreeAutomorphism(Substitution { n, images }))
    }

    pub fn identity(n: u32) -> Self {
        let images = fiber_generators(n)
            .into_iter()
            .map(|s| (s, Word::gen(s, n)))
            .collect();
        FreeAutomorphism(Substitution { n, images })
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn image(&self, s: &GeneratorSymbol) -> &Word {
        &self.0.images[s]
    }

    pub fn images(&self) -> &BTreeMap<GeneratorSymbol, Word> {
        &self.0.images
    }

    pub fn as_substitution(&self) -> &Substitution {
        &self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeAutomorphism) -> FreeAutomorphism {
        FreeAutomorphism(self.0.compose(&other.0).expect("fiber words stay in the fiber domain"))
    }
}

pub fn apply_endomorphism(f: &FreeAutomorphism, w: &Word) -> Result<Word, WordError> {
    f.0.apply(w)
}

/// If `w = u · core · u^-1` freely with `core` equal to `core_word`, returns `u`.
///
/// This is the syntactic certificate used for "the image is a conjugate of
/// this generator": strip matching outer letters until the middle is reached.
pub fn strip_conjugate(w: &Word, core_word: &Word) -> Option<Word> {
    let w = free_reduce(w);
    let core = free_reduce(core_word);
    if w.len() < core.len() || (w.len() - core.len()) % 2 != 0 {
        return None;
    }
    let k = (w.len() - core.len()) / 2;
    let l = &w.letters;
    if l[k..k + core.len()] != core.letters[..] {
        return None;
    }
    for t in 0..k {
        if l[t].inverse() != l[l.len() - 1 - t] {
            return None;
        }
    }
    Some(Word { n: w.n, letters: l[..k].to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: u32) -> Word {
        Word::parse(s, n).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(free_reduce(&w("g0 g0^-1 g1", 3)), w("g1", 3));
        assert_eq!(free_reduce(&Word::empty(3)), Word::empty(3));
        assert_eq!(free_reduce(&w("g1 g0 g0^-1 g1^-1 gp2", 3)), w("gp2", 3));
    }

    #[test]
    fn modular_indices() {
        assert_eq!(GeneratorSymbol::g(4, 4), GeneratorSymbol::g(4, 0));
        assert_eq!(GeneratorSymbol::gp(4, -1), GeneratorSymbol::gp(4, 3));
        assert_eq!(GeneratorSymbol::gamma(4, 4).index, 4);
        assert_ne!(GeneratorSymbol::gamma(4, 4), GeneratorSymbol::gamma(4, 0));
        assert_eq!(w("g5", 3), w("g2", 3));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&w("g0 g1", 3)), w("g1^-1 g0^-1", 3));
        assert_eq!(invert(&Word::empty(2)), Word::empty(2));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&w("gp0", 2), &w("g0", 2)), w("g0^-1 gp0 g0", 2));
        // frak g = g1 g0 for n = 2
        let frak = w("g1 g0", 2);
        assert_eq!(conjugate(&w("gp1", 2), &frak), w("g0^-1 g1^-1 gp1 g1 g0", 2));
        assert_eq!(conjugate(&w("g0 g0^-1 gp1", 2), &Word::empty(2)), w("gp1", 2));
    }

    #[test]
    fn conjugacy_examples() {
        let c = is_conjugate_free(&w("g0 g1", 3), &w("g1 g0", 3)).unwrap();
        assert_eq!(c, w("g0", 3));
        assert!(is_conjugate_free(&w("g0", 3), &w("g1", 3)).is_none());

        // a b c b^-1 a b c^-1 b^-1 a^-1 with a = g2, b = g1, c = g1'
        let u = w("g2 g1 gp1 g1^-1 g2 g1 gp1^-1 g1^-1 g2^-1", 3);
        let c = is_conjugate_free(&u, &w("g2", 3)).unwrap();
        assert_eq!(c, w("g2 g1 gp1 g1^-1", 3));
        assert_eq!(conjugate(&u, &c), w("g2", 3));
    }

    #[test]
    fn conjugacy_of_powers_and_empty() {
        assert!(is_conjugate_free(&Word::empty(2), &Word::empty(2)).is_some());
        assert!(is_conjugate_free(&w("g0 g0", 2), &w("g0", 2)).is_none());
        let u = w("g1 g0 g0 g1^-1", 2);
        let c = is_conjugate_free(&u, &w("g0 g0", 2)).unwrap();
        assert_eq!(conjugate(&u, &c), w("g0 g0", 2));
    }

    #[test]
    fn exponent_examples() {
        let ev = exponent_vector(&w("g2 g1 g0", 3));
        assert_eq!(ev.len(), 3);
        assert!(ev.values().all(|&v| v == 1));
        let comm = commutator(&w("g0", 2), &w("gp0", 2));
        assert!(exponent_vector(&comm).is_empty());
    }

    #[test]
    fn tokens_roundtrip() {
        let word = w("g0 gp1^-1 gpp2 gamma3 ginf1 gpinf0^-1 gammainf0", 3);
        assert_eq!(word.len(), 7);
        assert_eq!(Word::parse(&word.to_string(), 3).unwrap(), word);
        assert_eq!(Word::empty(3).to_string(), "1");
        assert_eq!(Word::parse("1", 3).unwrap(), Word::empty(3));
        assert!(Word::parse("h1", 3).is_err());
        assert!(Word::parse("g", 3).is_err());
    }

    #[test]
    fn endomorphism_domain() {
        let id = FreeAutomorphism::identity(2);
        assert_eq!(apply_endomorphism(&id, &w("g0 g0^-1 gp1", 2)).unwrap(), w("gp1", 2));
        let err = apply_endomorphism(&id, &w("gpp0", 2)).unwrap_err();
        assert!(matches!(err, WordError::OutsideDomain(_)));
        let mut images = BTreeMap::new();
        images.insert(GeneratorSymbol::g(2, 0), w("g0", 2));
        assert_eq!(FreeAutomorphism::new(2, images), Err(WordError::BadDomain));
    }

    #[test]
    fn strip_conjugate_certificate() {
        let u = w("g2 g1 gp1 g1^-1 g2 g1 gp1^-1 g1^-1 g2^-1", 3);
        assert_eq!(strip_conjugate(&u, &w("g2", 3)), Some(w("g2 g1 gp1 g1^-1", 3)));
        assert_eq!(strip_conjugate(&u, &w("g1", 3)), None);
    }
}
