//! Hand-expanded action words for small `k`, kept in the TeX-like notation
//! they were derived in and parsed on demand.
//!
//! These are an independent transcription of the expanded `γ_1`, `γ_2`, `γ_3`
//! actions. [`super::check_expansions`] compares them letter for letter with
//! the general formula in [`super::gammak_action`], so any disagreement in how
//! the `⋯` runs of the general formula are read shows up as a mismatch.
//!
//! Grammar: a sequence of `g_{e}` / `g_e` factors, each optionally followed
//! by `'` (primed family) and `^{-1}` (inverse). Index expressions `e` are
//! sums of `n`, `i` and integer constants. `\cdot`, `\times` and whitespace
//! are ignored.

use crate::words::{GeneratorSymbol, Letter, Word, WordError};

pub const GAMMA1_ON_G: &str = r"g_{n-i}g_i'g_{n-i}g_i'^{-1}g_{n-i}^{-1}";

pub const GAMMA1_ON_GP: &str = r"g_{n-i}g_i'g_{n-i}^{-1}";

pub const GAMMA2_ON_G: &str = r"g_{n-i}g_{n-i-1}g_{i+1}'g_{n-i-1}^{-1}g_{n-i}g_{n-i-1}g_{i+1}'^{-1}g_{n-i-1}^{-1}g_{n-i}^{-1}";

pub const GAMMA2_ON_GP: &str = concat!(
    r"g_{n-i}g_{n-i-1}g_{i+1}'g_{n-i-1}^{-1}g_{n-i}^{-1}g_{n-i-1}g_{i+1}'^{-1}g_{n-i-1}^{-1}g_{n-i}^{-1}g_{n-i+1} ",
    r"g_{n-i}g_i'\cdot ",
    r"g_{n-i}^{-1}g_{n-i+1}^{-1}g_{n-i}g_{n-i-1}g_{i+1}'g_{n-i-1}^{-1}g_{n-i}g_{n-i-1}g_{i+1}'^{-1}g_{n-i-1}^{-1}g_{n-i}^{-1}",
);

pub const GAMMA3_ON_GP: &str = concat!(
    r"g_{n-i}g_{n-i-1}g_{n-i-2}g_{i+2}'g_{n-i-2}^{-1}g_{n-i-1}^{-1}g_{n-i}^{-1}g_{n-i-1}g_{n-i-2}g_{i+2}'^{-1}g_{n-i-2}^{-1}\cdot ",
    r"g_{n-i-1}^{-1}g_{n-i}^{-1} g_{n-i+1} g_{n-i}g_{n-i-1}g_{i+1}'g_{n-i-1}^{-1}g_{n-i}^{-1}g_{n-i+1}^{-1}g_{n-i}g_{n-i-1}g_{i+1}'^{-1}\cdot ",
    r"g_{n-i-1}^{-1}g_{n-i}^{-1}g_{n-i+1}^{-1}g_{n-i+2}g_{n-i+1}g_{n-i}g_i'g_{n-i}^{-1}g_{n-i+1}^{-1}g_{n-i+2}^{-1}g_{n-i+1}g_{n-i}\cdot ",
    r"g_{n-i-1}g_{i+1}'g_{n-i-1}^{-1}g_{n-i}^{-1}g_{n-i+1}g_{n-i}g_{n-i-1}g_{i+1}'^{-1}g_{n-i-1}^{-1}g_{n-i}^{-1}g_{n-i+1}^{-1}g_{n-i}\cdot ",
    r"g_{n-i-1}g_{n-i-2}g_{i+2}'g_{n-i-2}^{-1}g_{n-i-1}^{-1}g_{n-i}g_{n-i-1}g_{n-i-2}g_{i+2}'^{-1}g_{n-i-2}^{-1}g_{n-i-1}^{-1}g_{n-i}^{-1}",
);

pub const GAMMA3_ON_G: &str = concat!(
    r"g_{n-i}g_{n-i-1}g_{n-i-2}g_{i+2}'g_{n-i-2}^{-1}g_{n-i-1}^{-1}g_{n-i}g_{n-i-1}g_{n-i-2}g_{i+2}'^{-1}g_{n-i-2}^{-1}",
    r"g_{n-i-1}^{-1}g_{n-i}^{-1}",
);

/// `γ_0` acting on `g'_i` before the cyclic relations are used (valid for `1 ≤ i ≤ n-1`).
/// The two runs `g_{n-i+1} ... g_{n-1}` and `g_1 ... g_{n-i-1}` are written out
/// by [`gamma0_unsimplified`] since their length depends on `i`.
pub fn gamma0_unsimplified(n: u32, i: i64) -> Word {
    // g_{n-i} g_{n-i-1} ... g_1 g_0 g_{n-1} ... g_{n-i+1} g_{n-i}
    let n_i = n as i64;
    let mut conj = Vec::new();
    let mut idx = n_i - i;
    for _ in 0..n {
        conj.push(Letter::pos(GeneratorSymbol::g(n, idx)));
        idx -= 1;
    }
    conj.push(Letter::pos(GeneratorSymbol::g(n, n_i - i)));
    let c = Word::from_letters(n, conj);
    crate::words::conjugate(&Word::gp(n, i), &c)
}

/// Evaluates a template at `(n, i)`, returning the reduced word.
pub fn evaluate(template: &str, n: u32, i: i64) -> Result<Word, WordError> {
    let bytes: Vec<char> = template.chars().collect();
    let mut pos = 0;
    let mut letters = Vec::new();
    let bad = |at: usize| WordError::BadToken(format!("template error at {at}: {template}"));
    while pos < bytes.len() {
        let ch = bytes[pos];
        if ch.is_whitespace() {
            pos += 1;
            continue;
        }
        if ch == '\\' {
            let rest: String = bytes[pos..].iter().collect();
            if rest.starts_with("\\cdot") {
                pos += 5;
                continue;
            }
            if rest.starts_with("\\times") {
                pos += 6;
                continue;
            }
            return Err(bad(pos));
        }
        if ch != 'g' || bytes.get(pos + 1) != Some(&'_') {
            return Err(bad(pos));
        }
        pos += 2;
        let expr: String = if bytes.get(pos) == Some(&'{') {
            let close = bytes[pos..].iter().position(|&c| c == '}').ok_or_else(|| bad(pos))? + pos;
            let e = bytes[pos + 1..close].iter().collect();
            pos = close + 1;
            e
        } else {
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric()) {
                pos += 1;
            }
            bytes[start..pos].iter().collect()
        };
        let index = eval_index(&expr, n as i64, i).ok_or_else(|| bad(pos))?;
        let mut primed = false;
        if bytes.get(pos) == Some(&'\'') {
            primed = true;
            pos += 1;
        }
        let mut inverse = false;
        let tail: String = bytes[pos..].iter().take(5).collect();
        if tail == "^{-1}" {
            inverse = true;
            pos += 5;
        }
        let symbol = if primed { GeneratorSymbol::gp(n, index) } else { GeneratorSymbol::g(n, index) };
        letters.push(if inverse { Letter::neg(symbol) } else { Letter::pos(symbol) });
    }
    Ok(crate::words::free_reduce(&Word::from_letters(n, letters)))
}

fn eval_index(expr: &str, n: i64, i: i64) -> Option<i64> {
    let mut total = 0i64;
    let mut sign = 1i64;
    let mut term = String::new();
    let flush = |term: &mut String, sign: i64, total: &mut i64| -> Option<()> {
        if term.is_empty() {
            return Some(());
        }
        let v = match term.as_str() {
            "n" => n,
            "i" => i,
            t => t.parse::<i64>().ok()?,
        };
        *total += sign * v;
        term.clear();
        Some(())
    };
    for ch in expr.chars() {
        match ch {
            '+' | '-' => {
                flush(&mut term, sign, &mut total)?;
                sign = if ch == '+' { 1 } else { -1 };
            }
            c if c.is_whitespace() => {}
            c => term.push(c),
        }
    }
    flush(&mut term, sign, &mut total)?;
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_arithmetic() {
        assert_eq!(eval_index("n-i-1", 5, 2), Some(2));
        assert_eq!(eval_index("i+2", 5, 2), Some(4));
        assert_eq!(eval_index("n-i+1", 5, 0), Some(6));
        assert_eq!(eval_index("q", 5, 0), None);
    }

    #[test]
    fn template_lengths() {
        // Letter counts before any index coincidence can cause cancellation.
        let raw = |t: &str| evaluate(t, 11, 5).unwrap().len();
        assert_eq!(raw(GAMMA1_ON_G), 5);
        assert_eq!(raw(GAMMA1_ON_GP), 3);
        assert_eq!(raw(GAMMA2_ON_G), 9);
        assert_eq!(raw(GAMMA2_ON_GP), 23);
        assert_eq!(raw(GAMMA3_ON_G), 13);
        assert_eq!(raw(GAMMA3_ON_GP), 2 * 13 + 2 * 13 + 7);
    }

    #[test]
    fn template_parse_errors() {
        assert!(evaluate("h_{n}", 3, 0).is_err());
        assert!(evaluate("g_{n-q}", 3, 0).is_err());
    }
}
