//! Runtime cross-checks between the general formulas and their hand-expanded
//! special cases, plus the tables of known notational discrepancies.

use serde::Serialize;

use super::expansions::{self, evaluate};
use super::{
    cyclic_product, cyclic_relators, descending, gammak_image_g, gammak_image_gp,
    line_generator_for, primed_product, PresentationError,
};
use crate::words::{commutator, conjugate, free_reduce, is_conjugate_free, strip_conjugate, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionMismatch {
    pub k: u32,
    pub i: i64,
    /// `"g"` for the image of `g_{n-i}`, `"gp"` for the image of `g'_i`.
    pub target: &'static str,
    pub formula: String,
    pub expanded: String,
    /// First letter position where the two reduced words differ.
    pub first_difference: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionCheck {
    pub n: u32,
    pub checked: usize,
    pub mismatches: Vec<ExpansionMismatch>,
}

impl ExpansionCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn first_difference(a: &Word, b: &Word) -> usize {
    a.letters()
        .iter()
        .zip(b.letters())
        .position(|(x, y)| x != y)
        .unwrap_or(a.len().min(b.len()))
}

/// Compares the general `γ_k` formula with the expanded `k = 1, 2, 3` words
/// (those with `k ≤ n`), letter for letter after free reduction.
pub fn check_expansions(n: u32) -> Result<ExpansionCheck, PresentationError> {
    let table: [(u32, &str, &str); 3] = [
        (1, expansions::GAMMA1_ON_G, expansions::GAMMA1_ON_GP),
        (2, expansions::GAMMA2_ON_G, expansions::GAMMA2_ON_GP),
        (3, expansions::GAMMA3_ON_G, expansions::GAMMA3_ON_GP),
    ];
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (k, on_g, on_gp) in table {
        if k > n {
            continue;
        }
        for i in 0..n as i64 {
            let pairs = [
                ("g", gammak_image_g(n, k, i)?, evaluate(on_g, n, i)?),
                ("gp", gammak_image_gp(n, k, i)?, evaluate(on_gp, n, i)?),
            ];
            for (target, formula, expanded) in pairs {
                checked += 1;
                if formula != expanded {
                    mismatches.push(ExpansionMismatch {
                        k,
                        i,
                        target,
                        first_difference: first_difference(&formula, &expanded),
                        formula: formula.to_string(),
                        expanded: expanded.to_string(),
                    });
                }
            }
        }
    }
    Ok(ExpansionCheck { n, checked, mismatches })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gamma0Certificate {
    pub i: i64,
    /// The unsimplified and simplified images agree in the free group.
    pub free_equal: bool,
    /// Their quotient is a conjugate of a product of cyclic relators,
    /// checked by exhibiting the product.
    pub equal_mod_cyclic: bool,
}

/// Relates the unsimplified `γ_0 · g'_i` (conjugator
/// `g_{n-i} g_{n-i-1} ... g_0 g_{n-1} ... g_{n-i+1} g_{n-i}`) to the
/// simplified one (conjugator `g_{n-i} 𝔤`).
pub fn gamma0_certificate(n: u32) -> Result<Vec<Gamma0Certificate>, PresentationError> {
    let frak = cyclic_product(n)?;
    let cyc = cyclic_relators(n)?;
    let ni = n as i64;
    // Relator for the rotation starting at index j, j = 0..n-1 (j = 0 is trivial).
    let rot_rel = |j: i64| -> Word {
        if j == 0 {
            Word::empty(n)
        } else {
            cyc[(j - 1) as usize].clone()
        }
    };
    let mut out = Vec::new();
    for i in 0..ni {
        let raw = expansions::gamma0_unsimplified(n, i);
        let simple = conjugate(&Word::gp(n, i), &Word::g(n, ni - i).mul(&frak));
        let free_equal = raw == simple;
        // c_raw = g_{n-i} · R_{n-i-1}, c_simple = g_{n-i} · R_{n-1}, where R_j is
        // the rotation starting at j; R_j R_{n-1}^-1 = r_j r_{n-1}^-1.
        let c_raw = descending(n, ni - i, ni + 1);
        let c_simple = Word::g(n, ni - i).mul(&frak);
        let quotient = c_raw.mul(&c_simple.inv());
        let j = (ni - i - 1).rem_euclid(ni);
        let witness = Word::product(
            n,
            [&Word::g(n, ni - i), &rot_rel(j), &rot_rel(ni - 1).inv(), &Word::g(n, ni - i).inv()],
        );
        out.push(Gamma0Certificate { i, free_equal, equal_mod_cyclic: quotient == witness });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkRow {
    pub k: u32,
    pub i: i64,
    /// The specialised commutator as listed for small `k`.
    pub listed: String,
    /// `[g_{n-i}, g''_{n-k+1} u]` where `γ_k · g_{n-i} = u g_{n-i} u^-1`;
    /// absent for `k = 0`, which the general formula does not cover.
    pub derived: Option<String>,
    /// The two relators have the same normal closure for a syntactic reason
    /// (equal up to conjugation and inversion in the free group).
    pub syntactically_equivalent: bool,
}

/// Diagnostic table for the small-`k` specialisations; nothing here is asserted.
pub fn remark_table(n: u32) -> Result<Vec<RemarkRow>, PresentationError> {
    super::check_n(n)?;
    let ni = n as i64;
    let mut rows = Vec::new();
    for k in 0..=3u32.min(n) {
        for i in 0..ni {
            let listed = match k {
                0 => commutator(&Word::g(n, ni - i), &Word::gpp(n, 1).mul(&Word::gp(n, i - 1))),
                1 => commutator(&Word::g(n, i), &Word::gpp(n, 0)),
                2 => commutator(
                    &Word::g(n, ni - i),
                    &Word::product(n, [&Word::gpp(n, ni - 1), &Word::g(n, ni - i), &Word::gp(n, i + 1)]),
                ),
                _ => commutator(
                    &Word::g(n, ni - i),
                    &Word::product(
                        n,
                        [
                            &Word::gpp(n, ni - 2),
                            &Word::g(n, ni - i),
                            &Word::g(n, ni - i - 1),
                            &Word::gp(n, i + 2),
                            &Word::g(n, ni - i - 1).inv(),
                        ],
                    ),
                ),
            };
            let derived = if k == 0 {
                None
            } else {
                let x = Word::g(n, ni - i);
                let image = gammak_image_g(n, k, i)?;
                let u = strip_conjugate(&image, &x).expect("γ_k images are conjugates");
                let t = Word::gen(line_generator_for(n, k), n);
                Some(commutator(&x, &t.mul(&u)))
            };
            let syntactically_equivalent = derived.as_ref().is_some_and(|d| {
                is_conjugate_free(&listed, d).is_some() || is_conjugate_free(&listed, &d.inv()).is_some()
            });
            rows.push(RemarkRow {
                k,
                i,
                listed: listed.to_string(),
                derived: derived.map(|d| d.to_string()),
                syntactically_equivalent,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscrepancyRow {
    pub family: &'static str,
    pub definition_of_g: String,
    pub main_relators: String,
    pub identical: bool,
}

/// Side-by-side comparison of the products used in the definition of `G`
/// and in the main relators.
pub fn def_g_discrepancy(n: u32) -> Result<Vec<DiscrepancyRow>, PresentationError> {
    super::check_n(n)?;
    let ni = n as i64;
    let g_def = descending(n, 0, ni);
    let g_main = cyclic_product(n)?;
    let p_def = primed_product(n, std::iter::once(0).chain((1..ni).rev()));
    let p_main = primed_product(n, 0..ni);
    let extra_def = commutator(&Word::g(n, 0), &Word::gp(n, 0));
    let extra_main = commutator(&Word::g(n, ni), &Word::gp(n, 0));
    let row = |family, a: Word, b: Word| DiscrepancyRow {
        family,
        identical: free_reduce(&a) == free_reduce(&b),
        definition_of_g: a.to_string(),
        main_relators: b.to_string(),
    };
    Ok(vec![
        row("unprimed cyclic product", g_def, g_main),
        row("primed cyclic product", p_def, p_main),
        row("[g_0, g'_0]", extra_def, extra_main),
    ])
}
