//! Words and finitely presented groups of the Fermat arrangement complement.
//!
//! Everything here is generated from closed formulas in `n`; nothing is read
//! off numerically. The monodromy module checks these formulas independently.
//!
//! Conventions:
//! - an equation `L = R` is stored as the relator `L · R^-1`, freely reduced;
//! - `[a, b] = a b a^-1 b^-1`;
//! - the `γ_0` action is written `x ↦ c^-1 x c`, the `γ_k` actions (k ≥ 1)
//!   as `x ↦ u x u^-1`, matching how each is usually displayed.

mod consistency;
pub mod expansions;
mod export;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{
    commutator, conjugate, exponent_vector, fiber_generators, free_reduce, strip_conjugate, Family,
    FreeAutomorphism, GeneratorSymbol, Letter, Substitution, Word, WordError,
};

pub use consistency::{
    check_expansions, def_g_discrepancy, gamma0_certificate, remark_table, DiscrepancyRow,
    ExpansionCheck, ExpansionMismatch, Gamma0Certificate, RemarkRow,
};
pub use export::{from_json, to_gap, to_json, to_txt, ExportFormat, PresentationJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("n must be at least 1")]
    InvalidN,
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: i64 },
    #[error("relator uses {0}, which is not a generator of the presentation")]
    UnlistedSymbol(GeneratorSymbol),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("malformed presentation file: {0}")]
    Format(String),
}

fn check_n(n: u32) -> Result<(), PresentationError> {
    if n == 0 {
        Err(PresentationError::InvalidN)
    } else {
        Ok(())
    }
}

/// The groups appearing in the computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PresentationName {
    U0,
    U0MinusY,
    CP2MinusCx,
    UInfty,
    UInftyMinusX,
    Main,
    GroupG,
    /// `G` with the primed product in the order used by the main relators.
    GroupGPropOrder,
    QuotientFn,
    /// Presentations assembled from numerically computed actions.
    Numeric,
    Custom,
}

impl PresentationName {
    pub const ALL: [PresentationName; 11] = [
        PresentationName::U0,
        PresentationName::U0MinusY,
        PresentationName::CP2MinusCx,
        PresentationName::UInfty,
        PresentationName::UInftyMinusX,
        PresentationName::Main,
        PresentationName::GroupG,
        PresentationName::GroupGPropOrder,
        PresentationName::QuotientFn,
        PresentationName::Numeric,
        PresentationName::Custom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresentationName::U0 => "u0",
            PresentationName::U0MinusY => "u0-minus-y",
            PresentationName::CP2MinusCx => "cp2-minus-x",
            PresentationName::UInfty => "u-infty",
            PresentationName::UInftyMinusX => "u-infty-minus-x",
            PresentationName::Main => "main",
            PresentationName::GroupG => "G",
            PresentationName::GroupGPropOrder => "G-prop-order",
            PresentationName::QuotientFn => "quotient-fn",
            PresentationName::Numeric => "numeric",
            PresentationName::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

impl fmt::Display for PresentationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite presentation. Relators are freely reduced, nonempty and distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub n: u32,
    pub name: PresentationName,
    pub generators: Vec<GeneratorSymbol>,
    pub relators: Vec<Word>,
    /// Number of relators generated before reduction and deduplication.
    pub raw_relator_count: usize,
}

impl Presentation {
    /// Reduces, drops trivial relators, deduplicates (keeping first
    /// occurrences) and checks that relators only use listed generators.
    pub fn new(
        n: u32,
        name: PresentationName,
        generators: Vec<GeneratorSymbol>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        check_n(n)?;
        let raw_relator_count = relators.len();
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::new();
        for r in relators {
            if r.n() != n {
                return Err(WordError::AmbientMismatch(n, r.n()).into());
            }
            let r = free_reduce(&r);
            if r.is_empty() {
                continue;
            }
            for s in r.symbols() {
                if !generators.contains(&s) {
                    return Err(PresentationError::UnlistedSymbol(s));
                }
            }
            if seen.insert(r.clone()) {
                kept.push(r);
            }
        }
        Ok(Presentation { n, name, generators, relators: kept, raw_relator_count })
    }

    pub fn generator_index(&self, s: &GeneratorSymbol) -> Option<usize> {
        self.generators.iter().position(|g| g == s)
    }

    /// Integer exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let ev = exponent_vector(r);
                self.generators.iter().map(|g| ev.get(g).copied().unwrap_or(0)).collect()
            })
            .collect()
    }
}

pub(crate) fn fiber_and_line_generators(n: u32) -> Vec<GeneratorSymbol> {
    let mut gens = fiber_generators(n);
    gens.extend((0..n as i64).map(|i| GeneratorSymbol::gpp(n, i)));
    gens
}

/// Descending run `g_from g_{from-1} ... g_{from-len+1}` (indices mod n).
fn descending(n: u32, from: i64, len: i64) -> Word {
    let letters = (0..len).map(|t| Letter::pos(GeneratorSymbol::g(n, from - t))).collect();
    Word::from_letters(n, letters)
}

/// Product of primed generators with the given indices, in order.
fn primed_product(n: u32, indices: impl IntoIterator<Item = i64>) -> Word {
    let letters = indices.into_iter().map(|i| Letter::pos(GeneratorSymbol::gp(n, i))).collect();
    Word::from_letters(n, letters)
}

fn relation(lhs: &Word, rhs: &Word) -> Word {
    lhs.mul(&rhs.inv())
}

/// `𝔤 = g_{n-1} ... g_1 g_0`.
pub fn cyclic_product(n: u32) -> Result<Word, PresentationError> {
    check_n(n)?;
    Ok(descending(n, n as i64 - 1, n as i64))
}

/// Relators `(g_j ... g_0 g_{n-1} ... g_{j+1}) · (g_0 g_{n-1} ... g_1)^-1`, `j = 1..n-1`.
pub fn cyclic_relators(n: u32) -> Result<Vec<Word>, PresentationError> {
    check_n(n)?;
    let base = descending(n, 0, n as i64);
    Ok((1..n as i64).map(|j| relation(&descending(n, j, n as i64), &base)).collect())
}

/// `g_{n-1} ... g_1 · g_i · g_1^-1 ... g_{n-1}^-1`, for `1 ≤ i ≤ n-1`.
pub fn g0_action_u01(n: u32, i: i64) -> Result<Word, PresentationError> {
    check_n(n)?;
    if i < 1 || i >= n as i64 {
        return Err(PresentationError::OutOfRange { what: "i", value: i });
    }
    let run = descending(n, n as i64 - 1, n as i64 - 1);
    Ok(conjugate(&Word::g(n, i), &run.inv()))
}

/// Monodromy action of one base loop on the fiber group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    pub n: u32,
    pub k: u32,
    pub action: FreeAutomorphism,
}

impl ActionTable {
    pub fn image(&self, s: &GeneratorSymbol) -> &Word {
        self.action.image(s)
    }

    /// For every fiber generator `x`, the word `u` with `image(x) = u x u^-1`
    /// literally after reduction. `None` entries are certification failures.
    pub fn conjugators(&self) -> BTreeMap<GeneratorSymbol, Option<Word>> {
        self.action
            .images()
            .iter()
            .map(|(s, w)| (*s, strip_conjugate(w, &Word::gen(*s, self.n))))
            .collect()
    }

    pub fn is_conjugate_shaped(&self) -> bool {
        self.conjugators().values().all(Option::is_some)
    }
}

/// `γ_0`: `g_i ↦ g_i`, `g'_i ↦ 𝔤^-1 g_{n-i}^-1 g'_i g_{n-i} 𝔤`.
pub fn gamma0_action(n: u32) -> Result<ActionTable, PresentationError> {
    let frak = cyclic_product(n)?;
    let mut images = BTreeMap::new();
    for i in 0..n as i64 {
        images.insert(GeneratorSymbol::g(n, i), Word::g(n, i));
        let c = Word::g(n, n as i64 - i).mul(&frak);
        images.insert(GeneratorSymbol::gp(n, i), conjugate(&Word::gp(n, i), &c));
    }
    Ok(ActionTable { n, k: 0, action: FreeAutomorphism::new(n, images)? })
}

fn check_k(n: u32, k: u32, min: u32) -> Result<(), PresentationError> {
    check_n(n)?;
    if k < min || k > n {
        return Err(PresentationError::OutOfRange { what: "k", value: k as i64 });
    }
    Ok(())
}

/// The k-conjugate `𝒢^k_{n-s}` for `2 ≤ k ≤ n`; `s` is taken mod n.
///
/// With `D = g_{n-s} g_{n-s-1} ... g_{n-s-(k-1)}` and `D̂` the same run
/// without its first letter, the word is `D g'_{s+k-1} D^-1 · D̂ g'_{s+k-1}^-1 D^-1`.
pub fn k_conjugate(n: u32, k: u32, s: i64) -> Result<Word, PresentationError> {
    check_k(n, k, 2)?;
    let (ni, ki) = (n as i64, k as i64);
    let d = descending(n, ni - s, ki);
    let d_hat = descending(n, ni - s - 1, ki - 1);
    let p = Word::gp(n, s + ki - 1);
    let d_inv = d.inv();
    Ok(Word::product(n, [&d, &p, &d_inv, &d_hat, &p.inv(), &d_inv]))
}

/// The half k-conjugate `𝒣^k_{n-i+(k-1)} = g_{n-i+(k-1)} ... g_{n-i}`.
pub fn half_conjugate(n: u32, k: u32, i: i64) -> Result<Word, PresentationError> {
    check_k(n, k, 1)?;
    Ok(descending(n, n as i64 - i + k as i64 - 1, k as i64))
}

/// `C = 𝒢^k_{n-i} 𝒢^k_{n-i+1} ... 𝒢^k_{n-i+(k-2)} 𝒣^k_{n-i+(k-1)}`, so that `γ_k · g'_i = C g'_i C^-1`.
pub fn gammak_prime_conjugator(n: u32, k: u32, i: i64) -> Result<Word, PresentationError> {
    check_k(n, k, 1)?;
    let mut parts = Vec::new();
    for m in 0..k as i64 - 1 {
        parts.push(k_conjugate(n, k, i - m)?);
    }
    parts.push(half_conjugate(n, k, i)?);
    Ok(Word::product(n, parts.iter()))
}

/// `γ_k · g_{n-i}`, built as displayed:
/// `D g'_{i+k-1} D̂^-1 g_{n-i} D̂ g'_{i+k-1}^-1 D^-1` with `D`, `D̂` as in [`k_conjugate`] at `s = i`.
pub fn gammak_image_g(n: u32, k: u32, i: i64) -> Result<Word, PresentationError> {
    check_k(n, k, 1)?;
    let (ni, ki) = (n as i64, k as i64);
    let d = descending(n, ni - i, ki);
    let d_hat = descending(n, ni - i - 1, ki - 1);
    let p = Word::gp(n, i + ki - 1);
    Ok(Word::product(
        n,
        [&d, &p, &d_hat.inv(), &Word::g(n, ni - i), &d_hat, &p.inv(), &d.inv()],
    ))
}

pub fn gammak_image_gp(n: u32, k: u32, i: i64) -> Result<Word, PresentationError> {
    let c = gammak_prime_conjugator(n, k, i)?;
    Ok(conjugate(&Word::gp(n, i), &c.inv()))
}

/// Action of `γ_k`, `1 ≤ k ≤ n`; the same as conjugation by `g''_{n-k+1}`.
pub fn gammak_action(n: u32, k: u32) -> Result<ActionTable, PresentationError> {
    check_k(n, k, 1)?;
    let mut images = BTreeMap::new();
    for i in 0..n as i64 {
        images.insert(GeneratorSymbol::g(n, n as i64 - i), gammak_image_g(n, k, i)?);
        images.insert(GeneratorSymbol::gp(n, i), gammak_image_gp(n, k, i)?);
    }
    Ok(ActionTable { n, k, action: FreeAutomorphism::new(n, images)? })
}

/// Action of `γ_k` for any `0 ≤ k ≤ n`.
pub fn action_table(n: u32, k: u32) -> Result<ActionTable, PresentationError> {
    if k == 0 {
        gamma0_action(n)
    } else {
        gammak_action(n, k)
    }
}

/// The line generator that `γ_k` is identified with: `g''_{n-k+1}`.
pub fn line_generator_for(n: u32, k: u32) -> GeneratorSymbol {
    GeneratorSymbol::gpp(n, n as i64 - k as i64 + 1)
}

/// Relators `t^-1 x t · (action(x))^-1` for every fiber generator `x`.
pub(crate) fn conjugation_relators(t: &Word, table: &ActionTable) -> Vec<Word> {
    let n = table.n;
    let mut out = Vec::new();
    // g_{n-i} then g'_i, following i.
    for i in 0..n as i64 {
        for s in [GeneratorSymbol::g(n, n as i64 - i), GeneratorSymbol::gp(n, i)] {
            let lhs = conjugate(&Word::gen(s, n), t);
            out.push(relation(&lhs, table.image(&s)));
        }
    }
    out
}

fn gammak_families(n: u32) -> Result<Vec<Word>, PresentationError> {
    let mut out = Vec::new();
    for k in 1..=n {
        let t = Word::gen(line_generator_for(n, k), n);
        out.extend(conjugation_relators(&t, &gammak_action(n, k)?));
    }
    Ok(out)
}

pub fn u0_presentation(n: u32) -> Result<Presentation, PresentationError> {
    Presentation::new(n, PresentationName::U0, fiber_generators(n), cyclic_relators(n)?)
}

pub fn u0_minus_y_presentation(n: u32) -> Result<Presentation, PresentationError> {
    check_n(n)?;
    let mut gens = vec![GeneratorSymbol::gamma(n, 0)];
    gens.extend(fiber_generators(n));
    let table = gamma0_action(n)?;
    let mut rels = Vec::new();
    for s in fiber_generators(n) {
        let lhs = conjugate(&Word::gen(s, n), &Word::gamma(n, 0));
        rels.push(relation(&lhs, table.image(&s)));
    }
    Presentation::new(n, PresentationName::U0MinusY, gens, rels)
}

/// `π_1(CP² − (C ∪ V(x)))`: `γ_0` replaced by `𝔤`.
pub fn cp2_minus_cx_presentation(n: u32) -> Result<Presentation, PresentationError> {
    let frak = cyclic_product(n)?;
    let ni = n as i64;
    let mut rels = Vec::new();
    for i in 0..ni {
        rels.push(commutator(&frak, &Word::g(n, i)));
    }
    for i in 0..ni {
        rels.push(commutator(&Word::gp(n, i), &Word::g(n, ni - i)));
    }
    rels.extend(gammak_families(n)?);
    Presentation::new(n, PresentationName::CP2MinusCx, fiber_and_line_generators(n), rels)
}

fn inf_generators(n: u32) -> Vec<GeneratorSymbol> {
    let mut gens: Vec<_> = (0..n as i64).map(|i| GeneratorSymbol::new(Family::InfG, i, n)).collect();
    gens.extend((0..n as i64).map(|i| GeneratorSymbol::new(Family::InfGPrime, i, n)));
    gens
}

fn ginf(n: u32, i: i64) -> Word {
    Word::gen(GeneratorSymbol::new(Family::InfG, i, n), n)
}

fn gpinf(n: u32, i: i64) -> Word {
    Word::gen(GeneratorSymbol::new(Family::InfGPrime, i, n), n)
}

fn gammainf(n: u32) -> Word {
    Word::gen(GeneratorSymbol::new(Family::InfGamma, 0, n), n)
}

/// The symmetry `[x:y:z] ↦ [y:x:z]` on loops: `g_i ↦ g'_{∞,n-i}`,
/// `g'_j ↦ g_{∞,n-j}`, `γ_0 ↦ γ_∞`.
pub fn phi_substitution(n: u32) -> Result<Substitution, PresentationError> {
    check_n(n)?;
    let ni = n as i64;
    let mut images = BTreeMap::new();
    for i in 0..ni {
        images.insert(GeneratorSymbol::g(n, i), gpinf(n, ni - i));
        images.insert(GeneratorSymbol::gp(n, i), ginf(n, ni - i));
    }
    images.insert(GeneratorSymbol::gamma(n, 0), gammainf(n));
    Ok(Substitution::new(n, images))
}

/// Inverse of [`phi_substitution`].
pub fn phi_inverse_substitution(n: u32) -> Result<Substitution, PresentationError> {
    check_n(n)?;
    let ni = n as i64;
    let mut images = BTreeMap::new();
    for i in 0..ni {
        images.insert(GeneratorSymbol::new(Family::InfGPrime, i, n), Word::g(n, ni - i));
        images.insert(GeneratorSymbol::new(Family::InfG, i, n), Word::gp(n, ni - i));
    }
    images.insert(GeneratorSymbol::new(Family::InfGamma, 0, n), Word::gamma(n, 0));
    Ok(Substitution::new(n, images))
}

/// `(U_∞, U_∞ − V(x))`, written in the `∞` alphabet.
pub fn uinfty_presentations(n: u32) -> Result<(Presentation, Presentation), PresentationError> {
    check_n(n)?;
    let ni = n as i64;
    let base = primed_inf_run(n, 0, ni);
    let rels: Vec<Word> = (1..ni).map(|j| relation(&primed_inf_run(n, j, ni), &base)).collect();
    let u_inf = Presentation::new(n, PresentationName::UInfty, inf_generators(n), rels)?;

    let frak_inf = base;
    let t = gammainf(n);
    let mut rels = Vec::new();
    for i in 0..ni {
        let x = gpinf(n, i);
        rels.push(relation(&conjugate(&x, &t), &x));
    }
    for i in 0..ni {
        let x = ginf(n, i);
        let c = gpinf(n, ni - i).mul(&frak_inf);
        rels.push(relation(&conjugate(&x, &t), &conjugate(&x, &c)));
    }
    let mut gens = vec![GeneratorSymbol::new(Family::InfGamma, 0, n)];
    gens.extend(inf_generators(n));
    let u_inf_x = Presentation::new(n, PresentationName::UInftyMinusX, gens, rels)?;
    Ok((u_inf, u_inf_x))
}

/// `g'_{∞,j} ... g'_{∞,n-1} g'_{∞,0} ... g'_{∞,j-1}`: `len` letters ascending from `j`.
fn primed_inf_run(n: u32, j: i64, len: i64) -> Word {
    Word::product(n, (0..len).map(|t| gpinf(n, j + t)).collect::<Vec<_>>().iter())
}

/// Basepoint change along `α`: `g_{∞,i} ↦ g'_{n-i}^-1 g_i g'_{n-i}`, `g'_{∞,i} ↦ g'_i`.
pub fn translate_infinity(n: u32) -> Result<Substitution, PresentationError> {
    check_n(n)?;
    let ni = n as i64;
    let mut images = BTreeMap::new();
    for i in 0..ni {
        images.insert(
            GeneratorSymbol::new(Family::InfG, i, n),
            conjugate(&Word::g(n, i), &Word::gp(n, ni - i)),
        );
        images.insert(GeneratorSymbol::new(Family::InfGPrime, i, n), Word::gp(n, i));
    }
    Ok(Substitution::new(n, images))
}

/// Relators `g'_j ... g'_{n-1} g'_0 ... g'_{j-1} · (g'_0 ... g'_{n-1})^-1`, `j = 1..n-1`.
pub fn translated_infinity_relators(n: u32) -> Result<Vec<Word>, PresentationError> {
    check_n(n)?;
    let ni = n as i64;
    let base = primed_product(n, 0..ni);
    Ok((1..ni).map(|j| relation(&primed_product(n, j..j + ni), &base)).collect())
}

/// The relators of the main presentation that do not involve the `g''` loops:
/// `[g_{n-i}, g'_i]`, `[g_i, 𝔤]` and `[g'_i, g'_0 ... g'_{n-1}]`.
pub fn fiber_relators(n: u32) -> Result<Vec<Word>, PresentationError> {
    let frak = cyclic_product(n)?;
    let ni = n as i64;
    let prime_prod = primed_product(n, 0..ni);
    let mut rels = Vec::new();
    for i in 0..ni {
        rels.push(commutator(&Word::g(n, ni - i), &Word::gp(n, i)));
    }
    for i in 0..ni {
        rels.push(commutator(&Word::g(n, i), &frak));
    }
    for i in 0..ni {
        rels.push(commutator(&Word::gp(n, i), &prime_prod));
    }
    Ok(rels)
}

pub fn main_presentation(n: u32) -> Result<Presentation, PresentationError> {
    let mut rels = fiber_relators(n)?;
    rels.extend(gammak_families(n)?);
    Presentation::new(n, PresentationName::Main, fiber_and_line_generators(n), rels)
}

fn group_g_with(n: u32, name: PresentationName, prime_prod: Word) -> Result<Presentation, PresentationError> {
    let ni = n as i64;
    let rotated = descending(n, 0, ni);
    let mut rels = vec![commutator(&Word::g(n, 0), &Word::gp(n, 0))];
    for i in 0..ni {
        rels.push(commutator(&Word::g(n, i), &rotated));
    }
    for i in 0..ni {
        rels.push(commutator(&Word::g(n, ni - i), &Word::gp(n, i)));
    }
    for i in 0..ni {
        rels.push(commutator(&Word::gp(n, i), &prime_prod));
    }
    Presentation::new(n, name, fiber_generators(n), rels)
}

/// `G` as defined: the primed product is `g'_0 g'_{n-1} ... g'_1`.
pub fn group_g_presentation(n: u32) -> Result<Presentation, PresentationError> {
    check_n(n)?;
    let ni = n as i64;
    let prod = primed_product(n, std::iter::once(0).chain((1..ni).rev()));
    group_g_with(n, PresentationName::GroupG, prod)
}

/// `G` with the primed product `g'_0 g'_1 ... g'_{n-1}` of the main relators.
pub fn group_g_prop_order_presentation(n: u32) -> Result<Presentation, PresentationError> {
    check_n(n)?;
    group_g_with(n, PresentationName::GroupGPropOrder, primed_product(n, 0..n as i64))
}

/// Main relators with every `g`, `g'` letter deleted, over the `g''` alphabet.
pub fn quotient_fn_presentation(n: u32) -> Result<Presentation, PresentationError> {
    let main = main_presentation(n)?;
    let rels = main.relators.iter().map(delete_fiber_letters).collect();
    let gens = (0..n as i64).map(|i| GeneratorSymbol::gpp(n, i)).collect();
    Presentation::new(n, PresentationName::QuotientFn, gens, rels)
}

fn delete_fiber_letters(w: &Word) -> Word {
    let letters = w.letters().iter().copied().filter(|l| !l.symbol.family.is_fiber()).collect();
    free_reduce(&Word::from_letters(w.n(), letters))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemidirectReport {
    pub n: u32,
    /// Main relators whose `g''` shadow is not the empty word.
    pub nontrivial_shadows: Vec<String>,
    /// `G` relators that mention a letter outside `{g, g'}`.
    pub g_relators_outside: Vec<String>,
    pub main_relator_count: usize,
    pub g_relator_count: usize,
    pub passed: bool,
}

/// Mechanical check of the split extension `1 → G → π_1 → F_n → 1` on relators.
pub fn semidirect_check(n: u32) -> Result<SemidirectReport, PresentationError> {
    let main = main_presentation(n)?;
    let g = group_g_presentation(n)?;
    let nontrivial_shadows: Vec<String> = main
        .relators
        .iter()
        .filter(|r| !delete_fiber_letters(r).is_empty())
        .map(|r| r.to_string())
        .collect();
    let g_relators_outside: Vec<String> = g
        .relators
        .iter()
        .filter(|r| r.letters().iter().any(|l| !l.symbol.family.is_fiber()))
        .map(|r| r.to_string())
        .collect();
    let passed = nontrivial_shadows.is_empty() && g_relators_outside.is_empty();
    Ok(SemidirectReport {
        n,
        nontrivial_shadows,
        g_relators_outside,
        main_relator_count: main.relators.len(),
        g_relator_count: g.relators.len(),
        passed,
    })
}

/// Builds any named presentation that is defined purely by `n`.
pub fn build(name: PresentationName, n: u32) -> Result<Presentation, PresentationError> {
    match name {
        PresentationName::U0 => u0_presentation(n),
        PresentationName::U0MinusY => u0_minus_y_presentation(n),
        PresentationName::CP2MinusCx => cp2_minus_cx_presentation(n),
        PresentationName::UInfty => Ok(uinfty_presentations(n)?.0),
        PresentationName::UInftyMinusX => Ok(uinfty_presentations(n)?.1),
        PresentationName::Main => main_presentation(n),
        PresentationName::GroupG => group_g_presentation(n),
        PresentationName::GroupGPropOrder => group_g_prop_order_presentation(n),
        PresentationName::QuotientFn => quotient_fn_presentation(n),
        PresentationName::Numeric | PresentationName::Custom => {
            Err(PresentationError::Format(format!("{name} is not generated from n alone")))
        }
    }
}
