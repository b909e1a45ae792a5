//! Invariants of finite presentations: abelianization, homomorphism counts
//! into small symmetric groups, and basic Tietze simplification.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::presentation::Presentation;
use crate::words::{cyclic_reduce, free_reduce, GeneratorSymbol, Letter, Sign, Substitution, Word};

/// Largest search space `|S_m|^generators` accepted by [`count_homomorphisms`].
pub const HOM_SEARCH_GUARD: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("search space {size:.3e} exceeds the guard {guard:.0e}")]
    TooLarge { size: f64, guard: f64 },
    #[error("symmetric group S_{0} is not supported (m must be 1..=5)")]
    UnsupportedTarget(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    /// Nonzero diagonal entries of `D`, positive and in divisibility order.
    pub diagonal: Vec<BigInt>,
}

fn identity(k: usize) -> Vec<Vec<BigInt>> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[dst] += f * row[src]` on every row, i.e. a column operation.
fn add_col(m: &mut [Vec<BigInt>], dst: usize, src: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * f;
        row[dst] += t;
    }
}

fn add_row(m: &mut [Vec<BigInt>], dst: usize, src: usize, f: &BigInt) {
    let src_row = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(src_row) {
        *x += y * f;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], r: usize) {
    for x in m[r].iter_mut() {
        *x = -std::mem::take(x);
    }
}

/// Smith normal form over the integers with exact arithmetic.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = a.len();
    let mut d: Vec<Vec<BigInt>> =
        a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for (i, row) in d.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < d[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let p = d[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = -d[i][t].div_floor(&p);
                    add_row(&mut d, i, t, &q);
                    add_row(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        d.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                        break;
                    }
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = -d[t][j].div_floor(&p);
                    add_col(&mut d, j, t, &q);
                    add_col(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                        break;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column cleared; enforce divisibility of the remaining block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[i][j] % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    add_row(&mut d, t, i, &one);
                    add_row(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| d[i][i].clone()).filter(|x| !x.is_zero()).collect();
    SmithForm { u, v, d, diagonal }
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = p.exponent_matrix();
    let cols = p.generators.len();
    let snf = smith_normal_form(&m, cols);
    let rank = snf.diagonal.len();
    let torsion = snf.diagonal.iter().filter(|x| !x.is_one()).cloned().collect();
    AbelianInvariants { free_rank: cols - rank, torsion }
}

/// A permutation of `0..m`, applied as a function; products compose left to right.
type Perm = Vec<u8>;

fn all_perms(m: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..m as u8).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// The symmetric group `S_m` as a multiplication table on element indices.
struct SymmetricGroup {
    order: usize,
    identity: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl SymmetricGroup {
    fn new(m: usize) -> Self {
        let perms = all_perms(m);
        let order = perms.len();
        let index: BTreeMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = vec![0; order * order];
        let mut inv = vec![0; order];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // x ↦ pb(pa(x))
                let c: Perm = pa.iter().map(|&x| pb[x as usize]).collect();
                mul[a * order + b] = index[&c];
            }
            let mut q = vec![0u8; m];
            for (x, &y) in pa.iter().enumerate() {
                q[y as usize] = x as u8;
            }
            inv[a] = index[&q];
        }
        let identity = index[&(0..m as u8).collect::<Perm>()];
        SymmetricGroup { order, identity, mul, inv }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomCount {
    /// Target `S_m`.
    pub m: usize,
    pub count: u64,
}

/// Relators as `(generator position, inverse?)` sequences, checked at the
/// depth where their last generator is assigned.
struct CompiledRelators {
    order: Vec<usize>,
    at_depth: Vec<Vec<Vec<(usize, bool)>>>,
}

fn compile(p: &Presentation) -> CompiledRelators {
    let k = p.generators.len();
    let mut touching = vec![0usize; k];
    let coded: Vec<Vec<(usize, bool)>> = p
        .relators
        .iter()
        .map(|r| {
            r.letters()
                .iter()
                .map(|l| (p.generator_index(&l.symbol).expect("relator symbols are generators"), l.sign == Sign::Neg))
                .collect()
        })
        .collect();
    for r in &coded {
        let set: HashSet<usize> = r.iter().map(|x| x.0).collect();
        for g in set {
            touching[g] += 1;
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&g| (std::cmp::Reverse(touching[g]), g));
    let mut depth_of = vec![0; k];
    for (d, &g) in order.iter().enumerate() {
        depth_of[g] = d;
    }
    let mut at_depth = vec![Vec::new(); k.max(1)];
    for r in coded {
        let d = r.iter().map(|x| depth_of[x.0]).max().unwrap_or(0);
        at_depth[d].push(r);
    }
    CompiledRelators { order, at_depth }
}

fn eval(grp: &SymmetricGroup, images: &[usize], r: &[(usize, bool)]) -> usize {
    let mut acc = grp.identity;
    for &(g, neg) in r {
        let x = if neg { grp.inv[images[g]] } else { images[g] };
        acc = grp.mul[acc * grp.order + x];
    }
    acc
}

fn dfs(grp: &SymmetricGroup, rel: &CompiledRelators, depth: usize, images: &mut Vec<usize>) -> u64 {
    if depth == rel.order.len() {
        return 1;
    }
    let g = rel.order[depth];
    let mut total = 0;
    for x in 0..grp.order {
        images[g] = x;
        if rel.at_depth[depth].iter().all(|r| eval(grp, images, r) == grp.identity) {
            total += dfs(grp, rel, depth + 1, images);
        }
    }
    total
}

/// Exact number of homomorphisms from the presented group into `S_m`.
pub fn count_homomorphisms(p: &Presentation, m: usize) -> Result<HomCount, InvariantError> {
    if !(1..=5).contains(&m) {
        return Err(InvariantError::UnsupportedTarget(m));
    }
    let grp = SymmetricGroup::new(m);
    let k = p.generators.len();
    let size = (grp.order as f64).powi(k as i32);
    if size > HOM_SEARCH_GUARD {
        return Err(InvariantError::TooLarge { size, guard: HOM_SEARCH_GUARD });
    }
    if k == 0 {
        return Ok(HomCount { m, count: 1 });
    }
    let rel = compile(p);
    let first = rel.order[0];
    let count = (0..grp.order)
        .into_par_iter()
        .map(|x| {
            let mut images = vec![grp.identity; k];
            images[first] = x;
            if rel.at_depth[0].iter().all(|r| eval(&grp, &images, r) == grp.identity) {
                dfs(&grp, &rel, 1, &mut images)
            } else {
                0
            }
        })
        .sum();
    Ok(HomCount { m, count })
}

/// Canonical representative of a relator up to cyclic rotation and inversion.
fn canonical_relator(w: &Word) -> Word {
    let (_, core) = cyclic_reduce(w);
    let mut best: Option<Vec<Letter>> = None;
    for cand in [core.clone(), core.inv()] {
        let l = cand.letters();
        for r in 0..l.len().max(1) {
            let rot: Vec<Letter> = l[r..].iter().chain(&l[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    Word::from_letters(w.n(), best.unwrap_or_default())
}

fn total_length(rels: &[Word]) -> usize {
    rels.iter().map(Word::len).sum()
}

/// Removes trivial and duplicate relators (up to rotation and inversion) and
/// eliminates generators that occur exactly once in some relator, as long as
/// the total relator length does not grow.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    let n = p.n;
    let mut gens = p.generators.clone();
    let mut rels = dedup_cyclic(&p.relators);
    loop {
        let mut best: Option<(usize, Vec<Word>, GeneratorSymbol)> = None;
        let mut candidates: Vec<usize> = (0..rels.len()).collect();
        candidates.sort_by_key(|&i| rels[i].len());
        'outer: for ri in candidates {
            let r = &rels[ri];
            for s in r.symbols() {
                let occurrences: Vec<usize> =
                    (0..r.len()).filter(|&t| r.letters()[t].symbol == s).collect();
                if occurrences.len() != 1 {
                    continue;
                }
                // r = a · s^e · b  ⇒  s^e = a^-1 b^-1.
                let t = occurrences[0];
                let a = Word::from_letters(n, r.letters()[..t].to_vec());
                let b = Word::from_letters(n, r.letters()[t + 1..].to_vec());
                let mut value = Word::product(n, [&a.inv(), &b.inv()]);
                if r.letters()[t].sign == Sign::Neg {
                    value = value.inv();
                }
                let sub = Substitution::new(n, BTreeMap::from([(s, value)]));
                let new_rels: Vec<Word> = rels
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != ri)
                    .map(|(_, w)| sub.apply_partial(w))
                    .collect();
                let new_rels = dedup_cyclic(&new_rels);
                if total_length(&new_rels) <= total_length(&rels) {
                    best = Some((ri, new_rels, s));
                    break 'outer;
                }
            }
        }
        match best {
            Some((_, new_rels, s)) => {
                rels = new_rels;
                gens.retain(|g| *g != s);
            }
            None => break,
        }
    }
    let out = Presentation::new(n, p.name, gens, rels).expect("eliminated generators no longer occur");
    assert_eq!(abelianization(p), abelianization(&out), "Tietze moves must preserve H_1");
    out
}

fn dedup_cyclic(rels: &[Word]) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in rels {
        let r = free_reduce(r);
        if r.is_empty() {
            continue;
        }
        if seen.insert(canonical_relator(&r)) {
            out.push(r);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub abelian: AbelianInvariants,
    /// `m → count`; targets whose search exceeded the guard are absent.
    pub hom_counts: BTreeMap<usize, u64>,
}

pub fn fingerprint(p: &Presentation, targets: &[usize]) -> Fingerprint {
    let hom_counts = targets
        .iter()
        .filter_map(|&m| count_homomorphisms(p, m).ok().map(|h| (m, h.count)))
        .collect();
    Fingerprint { abelian: abelianization(p), hom_counts }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FingerprintReport {
    pub left: Fingerprint,
    pub right: Fingerprint,
    /// `"consistent"` or `"distinguished"`.
    pub verdict: &'static str,
    pub differences: Vec<String>,
}

impl FingerprintReport {
    pub fn consistent(&self) -> bool {
        self.differences.is_empty()
    }
}

/// Compares abelianizations and homomorphism counts into `S_2`, `S_3`, and
/// `S_4` where both searches fit the guard.
pub fn fingerprint_compare(p1: &Presentation, p2: &Presentation) -> Result<FingerprintReport, InvariantError> {
    let mut left = Fingerprint { abelian: abelianization(p1), hom_counts: BTreeMap::new() };
    let mut right = Fingerprint { abelian: abelianization(p2), hom_counts: BTreeMap::new() };
    for m in [2, 3, 4] {
        match (count_homomorphisms(p1, m), count_homomorphisms(p2, m)) {
            (Ok(a), Ok(b)) => {
                left.hom_counts.insert(m, a.count);
                right.hom_counts.insert(m, b.count);
            }
            (Err(InvariantError::TooLarge { .. }), _) | (_, Err(InvariantError::TooLarge { .. })) if m == 4 => {}
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    let mut differences = Vec::new();
    if left.abelian != right.abelian {
        differences.push(format!(
            "abelianization: rank {} torsion {:?} vs rank {} torsion {:?}",
            left.abelian.free_rank, left.abelian.torsion, right.abelian.free_rank, right.abelian.torsion
        ));
    }
    for (m, a) in &left.hom_counts {
        let b = right.hom_counts[m];
        if *a != b {
            differences.push(format!("homomorphisms into S{m}: {a} vs {b}"));
        }
    }
    let verdict = if differences.is_empty() { "consistent" } else { "distinguished" };
    Ok(FingerprintReport { left, right, verdict, differences })
}

/// Torsion factors as machine integers, for display.
pub fn torsion_u64(a: &AbelianInvariants) -> Vec<u64> {
    a.torsion.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()
}
