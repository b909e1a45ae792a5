//! Numerical braid monodromy of the projection `[x:y:z] ↦ y/x`.
//!
//! Punctures of the fiber are followed along a base loop, the braid is read
//! off from changes in real-part order (after a small rotation of the fiber
//! coordinate), and the Artin action turns it into a fiber automorphism.
//!
//! Conventions. Fiber loops are based at a point far up the (rotated)
//! imaginary axis; the lasso `x_p` goes straight down to the `p`-th puncture
//! in real order and turns counterclockwise. A loop is read as a word by its
//! crossings with the downward vertical rays below the punctures: crossing
//! west to east gives `x_p`, east to west gives `x_p^-1`. Paths compose left
//! to right. A counterclockwise exchange of the punctures in positions `i`,
//! `i+1` is `σ_i`, acting by `x_i ↦ x_i x_{i+1} x_i^-1`, `x_{i+1} ↦ x_i`.
//!
//! The presentation is written with the section `z = 0`. A nearby constant
//! section (see [`section_point`]) is carried through the computation as an
//! extra stationary strand, which yields the correction between the two
//! basepoints. The point `0` itself is avoided: for even `n` it is always
//! aligned with the pair of punctures `±t`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{fiber_punctures_with, ArrangementError, LineFamily, LineTag, RootsOfUnity};
use crate::presentation::{
    action_table, conjugation_relators, fiber_and_line_generators, fiber_relators,
    line_generator_for, translate_infinity, ActionTable, Presentation, PresentationError,
    PresentationName,
};
use crate::words::{
    fiber_generators, free_reduce, is_conjugate_free, strip_conjugate, Family, FreeAutomorphism,
    GeneratorSymbol, Letter, Sign, Substitution, Word,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no such base loop: {0}")]
    InvalidLoop(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("tracking needs more than {max_steps} steps")]
    StepBudget { max_steps: usize },
    #[error("numerical certification failed: {0}")]
    Certification(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonodromyConfig {
    pub epsilon: f64,
    pub delta: f64,
    /// Upper bound on the number of samples along one loop.
    pub max_steps: usize,
    /// Samples per unit of loop parameter before any refinement.
    pub initial_steps: usize,
    /// Angle (radians) by which the fiber coordinate is turned before reading.
    pub rotation: f64,
}

impl Default for MonodromyConfig {
    fn default() -> Self {
        MonodromyConfig { epsilon: 0.1, delta: 0.02, max_steps: 1 << 20, initial_steps: 64, rotation: 0.003 }
    }
}

impl MonodromyConfig {
    pub fn validate(&self) -> Result<(), MonodromyError> {
        let bad = |m: &str| Err(MonodromyError::InvalidParameters(m.to_string()));
        if !(self.epsilon.is_finite() && self.delta.is_finite() && self.rotation.is_finite()) {
            return bad("parameters must be finite");
        }
        if !(self.epsilon > 0.0 && 2.0 * self.epsilon < 1.0 / 3.0) {
            return bad("need 0 < epsilon and 2 epsilon < 1/3");
        }
        if !(self.delta > 0.0 && self.delta < self.epsilon / 2.0) {
            return bad("need 0 < delta < epsilon / 2");
        }
        if self.initial_steps == 0 || self.max_steps < self.initial_steps {
            return bad("need 0 < initial_steps <= max_steps");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum LoopKind {
    Gamma0,
    /// `γ_k`, `1 <= k <= n`, turning around the branch value `ζ^{k-1}`.
    GammaK(u32),
    /// The path from `ε` to `1/ε` passing below `1`.
    Alpha,
}

impl LoopKind {
    /// Accepts `gamma0`, `gamma<k>` and `alpha`.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "alpha" {
            return Some(LoopKind::Alpha);
        }
        let k: u32 = s.strip_prefix("gamma")?.parse().ok()?;
        Some(if k == 0 { LoopKind::Gamma0 } else { LoopKind::GammaK(k) })
    }

    pub fn label(&self) -> String {
        match self {
            LoopKind::Gamma0 => "gamma0".into(),
            LoopKind::GammaK(k) => format!("gamma{k}"),
            LoopKind::Alpha => "alpha".into(),
        }
    }
}

/// A parametrized path in the base, `u ∈ [0, segments]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaseLoop {
    pub n: u32,
    pub kind: LoopKind,
    pub epsilon: f64,
    pub delta: f64,
    pub reversed: bool,
}

impl BaseLoop {
    pub fn new(n: u32, kind: LoopKind, cfg: &MonodromyConfig) -> Result<Self, MonodromyError> {
        if n == 0 {
            return Err(ArrangementError::InvalidN.into());
        }
        cfg.validate()?;
        if let LoopKind::GammaK(k) = kind {
            if k == 0 || k > n {
                return Err(MonodromyError::InvalidLoop(format!("gamma{k} with n = {n}")));
            }
        }
        Ok(BaseLoop { n, kind, epsilon: cfg.epsilon, delta: cfg.delta, reversed: false })
    }

    pub fn reversed(mut self) -> Self {
        self.reversed = !self.reversed;
        self
    }

    pub fn segments(&self) -> usize {
        match self.kind {
            LoopKind::Gamma0 => 1,
            LoopKind::GammaK(_) => 5,
            LoopKind::Alpha => 3,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.kind != LoopKind::Alpha
    }

    pub fn point(&self, u: f64) -> Complex64 {
        let u = if self.reversed { self.segments() as f64 - u } else { u };
        let (e, d) = (self.epsilon, self.delta);
        let i = Complex64::i();
        match self.kind {
            LoopKind::Gamma0 => e * (2.0 * PI * i * u).exp(),
            LoopKind::GammaK(k) => {
                let j = (k - 1) as f64;
                let n = self.n as f64;
                let root = Complex64::from_polar(1.0, 2.0 * PI * j / n);
                let radial = |s: f64| root * (2.0 * e + d - 1.0) + s * root * (1.0 - d - e);
                if u <= 1.0 {
                    e * (2.0 * PI * i * u * j / n).exp()
                } else if u <= 2.0 {
                    radial(u)
                } else if u <= 3.0 {
                    root * (1.0 - d * (2.0 * PI * i * (u - 2.0)).exp())
                } else if u <= 4.0 {
                    radial(5.0 - u)
                } else {
                    e * (2.0 * PI * i * (5.0 - u) * j / n).exp()
                }
            }
            LoopKind::Alpha => {
                if u <= 1.0 {
                    Complex64::new(e + (1.0 - d - e) * u, 0.0)
                } else if u <= 2.0 {
                    1.0 - d * (PI * i * (u - 1.0)).exp()
                } else {
                    Complex64::new(1.0 + d + (1.0 / e - 1.0 - d) * (u - 2.0), 0.0)
                }
            }
        }
    }
}

/// What a tracked strand is: a line of the arrangement or the section point `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Strand {
    Line(LineTag),
    Section,
}

/// The fiber symbol naming the lasso around a puncture of the given line.
pub fn symbol_for_tag(n: u32, tag: LineTag) -> Option<GeneratorSymbol> {
    match tag.family {
        LineFamily::Lx => Some(GeneratorSymbol::g(n, tag.index as i64)),
        LineFamily::Ly => Some(GeneratorSymbol::gp(n, tag.index as i64)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// Smallest distance between two strands over all samples.
    pub min_gap: f64,
    /// Largest ratio of a step's displacement to the gap at that step.
    pub max_step_ratio: f64,
    /// Largest ratio nearest / second-nearest distance used in matching.
    pub max_ambiguity: f64,
    pub steps_per_unit: usize,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PunctureTrajectory {
    pub base_loop: BaseLoop,
    /// Identity of each strand at the start.
    pub strands: Vec<Strand>,
    /// Identity of the puncture each strand ends on.
    pub end_strands: Vec<Strand>,
    pub params: Vec<f64>,
    /// `positions[sample][strand]`.
    pub positions: Vec<Vec<Complex64>>,
    pub residuals: Residuals,
}

impl PunctureTrajectory {
    /// Strand permutation: `perm[s]` is the strand whose start identity equals
    /// the end identity of `s`.
    pub fn permutation(&self) -> Vec<usize> {
        self.end_strands
            .iter()
            .map(|e| self.strands.iter().position(|s| s == e).expect("end on a start puncture"))
            .collect()
    }
}

/// The basepoint used in every fiber. It lies in the disc `|z| < ε`, which
/// no puncture enters along the base loops, so it is joined to `0` by a
/// segment that does not depend on the fiber.
pub fn section_point(epsilon: f64) -> Complex64 {
    Complex64::from_polar(0.31 * epsilon, 2.2)
}

fn configuration(roots: &RootsOfUnity, t: Complex64, section: Option<Complex64>) -> Result<Vec<(Complex64, Strand)>, ArrangementError> {
    let cfg = fiber_punctures_with(roots, t)?;
    let mut out: Vec<_> = cfg.punctures.iter().map(|p| (p.position, Strand::Line(p.tag))).collect();
    if let Some(c) = section {
        out.push((c, Strand::Section));
    }
    Ok(out)
}

fn min_gap(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            best = best.min((points[a] - points[b]).norm());
        }
    }
    best
}

enum TrackFailure {
    Refine,
    Fatal(MonodromyError),
}

fn track_once(base: &BaseLoop, with_section: bool, steps_per_unit: usize) -> Result<PunctureTrajectory, TrackFailure> {
    let roots = RootsOfUnity::new(base.n);
    let section = with_section.then(|| section_point(base.epsilon));
    let total = base.segments() * steps_per_unit;
    let params: Vec<f64> = (0..=total).map(|k| k as f64 / steps_per_unit as f64).collect();
    let start = configuration(&roots, base.point(0.0), section).map_err(|e| TrackFailure::Fatal(e.into()))?;
    let strands: Vec<Strand> = start.iter().map(|p| p.1).collect();
    let mut positions = vec![start.iter().map(|p| p.0).collect::<Vec<_>>()];
    let mut res = Residuals {
        min_gap: min_gap(&positions[0]),
        max_step_ratio: 0.0,
        max_ambiguity: 0.0,
        steps_per_unit,
        samples: params.len(),
    };
    let mut end_strands = strands.clone();
    for &u in &params[1..] {
        let cur = configuration(&roots, base.point(u), section).map_err(|e| TrackFailure::Fatal(e.into()))?;
        let pts: Vec<Complex64> = cur.iter().map(|p| p.0).collect();
        let prev = positions.last().expect("nonempty");
        let gap = min_gap(&pts).min(min_gap(prev));
        res.min_gap = res.min_gap.min(gap);
        let mut next = vec![Complex64::new(0.0, 0.0); prev.len()];
        let mut used = vec![false; pts.len()];
        for (s, p) in prev.iter().enumerate() {
            let mut d: Vec<(f64, usize)> = pts.iter().enumerate().map(|(q, z)| ((z - p).norm(), q)).collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0));
            let (d1, q) = d[0];
            if d.len() > 1 {
                let ratio = d1 / d[1].0;
                if ratio > 0.5 {
                    return Err(TrackFailure::Refine);
                }
                res.max_ambiguity = res.max_ambiguity.max(ratio);
            }
            if d1 >= gap / 3.0 || used[q] {
                return Err(TrackFailure::Refine);
            }
            res.max_step_ratio = res.max_step_ratio.max(d1 / gap);
            used[q] = true;
            next[s] = pts[q];
            end_strands[s] = cur[q].1;
        }
        positions.push(next);
    }
    Ok(PunctureTrajectory { base_loop: *base, strands, end_strands, params, positions, residuals: res })
}

fn track(base: &BaseLoop, cfg: &MonodromyConfig, with_section: bool, mut steps_per_unit: usize) -> Result<PunctureTrajectory, MonodromyError> {
    loop {
        if base.segments() * steps_per_unit > cfg.max_steps {
            return Err(MonodromyError::StepBudget { max_steps: cfg.max_steps });
        }
        match track_once(base, with_section, steps_per_unit) {
            Ok(t) => return Ok(t),
            Err(TrackFailure::Refine) => steps_per_unit *= 2,
            Err(TrackFailure::Fatal(e)) => return Err(e),
        }
    }
}

/// Follows the `2n` punctures along `base`, doubling the sampling density
/// until every matching step is certified.
pub fn track_punctures(base: &BaseLoop, cfg: &MonodromyConfig) -> Result<PunctureTrajectory, MonodromyError> {
    cfg.validate()?;
    track(base, cfg, false, cfg.initial_steps)
}

/// As [`track_punctures`], with [`section_point`] as an extra last strand.
pub fn track_with_section(base: &BaseLoop, cfg: &MonodromyConfig) -> Result<PunctureTrajectory, MonodromyError> {
    cfg.validate()?;
    track(base, cfg, true, cfg.initial_steps)
}

/// A braid word; letter `±i` is `σ_i^{±1}` (positions are 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Braid {
    pub strands: usize,
    pub letters: Vec<i32>,
    /// Strand index at each position, at the start and at the end.
    pub start_order: Vec<usize>,
    pub end_order: Vec<usize>,
}

impl Braid {
    /// Position permutation: the puncture at start position `p` ends at `perm[p]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            for p in at.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        at
    }
}

fn real_order(points: &[Complex64]) -> Result<Vec<usize>, MonodromyError> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].re.total_cmp(&points[b].re));
    for w in order.windows(2) {
        if points[w[0]].re == points[w[1]].re {
            return Err(MonodromyError::Certification("two strands share a real part".into()));
        }
    }
    Ok(order)
}

/// Reads the braid of a sampled motion of points.
///
/// Each change in real-part order between two consecutive samples is an
/// exchange of neighbouring positions; the strand passing below moves right
/// for a positive letter.
pub fn braid_from_positions(positions: &[Vec<Complex64>], rotation: f64) -> Result<Braid, MonodromyError> {
    let turn = Complex64::from_polar(1.0, rotation);
    let rotated: Vec<Vec<Complex64>> = positions.iter().map(|ps| ps.iter().map(|z| z * turn).collect()).collect();
    let first = rotated.first().ok_or_else(|| MonodromyError::Certification("empty trajectory".into()))?;
    let m = first.len();
    let start_order = real_order(first)?;
    let mut order = start_order.clone();
    let mut letters = Vec::new();
    for k in 1..rotated.len() {
        let (p, q) = (&rotated[k - 1], &rotated[k]);
        let mut events: Vec<(f64, usize, usize, f64)> = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let d0 = (p[a] - p[b]).re;
                let d1 = (q[a] - q[b]).re;
                if d1 == 0.0 {
                    return Err(MonodromyError::Certification("crossing lands on a sample".into()));
                }
                if d0.signum() != d1.signum() {
                    let s = d0 / (d0 - d1);
                    let im = (p[a] - p[b]).im * (1.0 - s) + (q[a] - q[b]).im * s;
                    events.push((s, a, b, im));
                }
            }
        }
        let mut busy = vec![false; m];
        for &(_, a, b, _) in &events {
            if std::mem::replace(&mut busy[a], true) | std::mem::replace(&mut busy[b], true) {
                return Err(MonodromyError::Certification("crossings too close to order".into()));
            }
        }
        for (_, a, b, im) in events {
            let pa = order.iter().position(|&s| s == a).expect("strand");
            let pb = order.iter().position(|&s| s == b).expect("strand");
            if pa.abs_diff(pb) != 1 {
                return Err(MonodromyError::Certification("simultaneous crossings".into()));
            }
            if im.abs() < 1e-12 {
                return Err(MonodromyError::Certification("strands collide".into()));
            }
            let left = pa.min(pb);
            // `im` compares a against b; the left strand passes below for σ_i.
            let left_below = if order[left] == a { im < 0.0 } else { im > 0.0 };
            letters.push(if left_below { left as i32 + 1 } else { -(left as i32 + 1) });
            order.swap(left, left + 1);
        }
    }
    let end_order = real_order(rotated.last().expect("nonempty"))?;
    if end_order != order {
        return Err(MonodromyError::Certification("final order disagrees with the crossings read".into()));
    }
    Ok(Braid { strands: m, letters, start_order, end_order })
}

pub fn extract_braid(traj: &PunctureTrajectory, rotation: f64) -> Result<Braid, MonodromyError> {
    braid_from_positions(&traj.positions, rotation)
}

/// Artin action on the free group of the positions, `x_p` written as `gamma_p`
/// (0-based) in a scratch alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinAction {
    pub strands: usize,
    pub images: Vec<Word>,
}

pub fn position_word(strands: usize, p: usize) -> Word {
    let amb = strands.max(1) as u32;
    Word::gen(GeneratorSymbol::new(Family::BaseGamma, p as i64, amb), amb)
}

fn apply_sigma(w: &Word, i: usize, positive: bool) -> Word {
    let n = w.n();
    let x = |p: usize| Letter::pos(GeneratorSymbol::new(Family::BaseGamma, p as i64, n));
    let mut out = Vec::with_capacity(w.len() + 2);
    for l in w.letters() {
        let p = l.symbol.index as usize;
        let image: Vec<Letter> = if p == i {
            if positive { vec![x(i), x(i + 1), x(i).inverse()] } else { vec![x(i + 1)] }
        } else if p == i + 1 {
            if positive { vec![x(i)] } else { vec![x(i + 1).inverse(), x(i), x(i + 1)] }
        } else {
            vec![Letter::pos(l.symbol)]
        };
        if l.sign == Sign::Pos {
            out.extend(image);
        } else {
            out.extend(image.into_iter().rev().map(Letter::inverse));
        }
    }
    free_reduce(&Word::from_letters(n, out))
}

/// Composes the letters left to right: the first letter acts first.
pub fn braid_to_automorphism(braid: &Braid) -> ArtinAction {
    let m = braid.strands;
    let mut images: Vec<Word> = (0..m).map(|p| position_word(m, p)).collect();
    for &l in &braid.letters {
        let i = l.unsigned_abs() as usize - 1;
        for w in images.iter_mut() {
            *w = apply_sigma(w, i, l > 0);
        }
    }
    ArtinAction { strands: m, images }
}

impl ArtinAction {
    /// Whether `x_1 ... x_m` is fixed, which holds for every braid.
    pub fn fixes_boundary(&self) -> bool {
        let boundary: Vec<Word> = (0..self.strands).map(|p| position_word(self.strands, p)).collect();
        let amb = self.strands.max(1) as u32;
        Word::product(amb, boundary.iter()) == Word::product(amb, self.images.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DictionaryEntry {
    /// 0-based position in rotated real-part order.
    pub position: usize,
    pub tag: LineTag,
    pub symbol: String,
}

/// Names the lasso at each position of a fiber: `L_{x,j}` gives `g_j` and
/// `L_{y,j}` gives `g'_j`.
pub fn strand_dictionary(n: u32, punctures: &[(Complex64, LineTag)], rotation: f64) -> Result<Vec<DictionaryEntry>, MonodromyError> {
    let turn = Complex64::from_polar(1.0, rotation);
    let pts: Vec<Complex64> = punctures.iter().map(|p| p.0 * turn).collect();
    let order = real_order(&pts)?;
    Ok(order
        .iter()
        .enumerate()
        .map(|(position, &s)| {
            let tag = punctures[s].1;
            let symbol = symbol_for_tag(n, tag).map(|g| g.token()).unwrap_or_default();
            DictionaryEntry { position, tag, symbol }
        })
        .collect())
}

/// Rewrites a position word through `names` (one word per position).
fn relabel(w: &Word, n: u32, names: &[Word]) -> Word {
    let mut out = Word::empty(n);
    for l in w.letters() {
        let img = &names[l.symbol.index as usize];
        out = out.concat(&if l.sign == Sign::Pos { img.clone() } else { img.inv() });
    }
    free_reduce(&out)
}

/// Monodromy of one base path on the fiber group, in the lasso bases named
/// by [`strand_dictionary`] at both ends, for the section `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericAction {
    pub n: u32,
    pub kind: LoopKind,
    pub braid: Braid,
    /// Images for the far basepoint, before the section correction.
    pub far_images: BTreeMap<GeneratorSymbol, Word>,
    /// The loop `c` with `image = c^-1 · far_image · c`.
    pub section_conjugator: Word,
    pub images: BTreeMap<GeneratorSymbol, Word>,
    pub artin_identity: bool,
    pub permutation_consistent: bool,
    pub residuals: Residuals,
}

impl NumericAction {
    pub fn apply(&self, w: &Word) -> Word {
        Substitution::new(self.n, self.images.clone()).apply_partial(w)
    }

    pub fn to_automorphism(&self) -> Result<FreeAutomorphism, MonodromyError> {
        FreeAutomorphism::new(self.n, self.images.clone())
            .map_err(|e| MonodromyError::Certification(e.to_string()))
    }
}

/// Tracks `kind` (the reverse of `α` for [`LoopKind::Alpha`], so that loops
/// over `1/ε` are carried back to `ε`) and computes the action.
pub fn numeric_action(n: u32, kind: LoopKind, cfg: &MonodromyConfig) -> Result<NumericAction, MonodromyError> {
    let mut base = BaseLoop::new(n, kind, cfg)?;
    if kind == LoopKind::Alpha {
        base = base.reversed();
    }
    let mut steps = cfg.initial_steps;
    let (traj, braid) = loop {
        let traj = track(&base, cfg, true, steps)?;
        match extract_braid(&traj, cfg.rotation) {
            Ok(b) => break (traj, b),
            Err(MonodromyError::Certification(_)) if base.segments() * steps * 2 <= cfg.max_steps => {
                steps = traj.residuals.steps_per_unit * 2;
            }
            Err(e) => return Err(e),
        }
    };
    let artin = braid_to_automorphism(&braid);
    let m = braid.strands;
    let section = m - 1;
    debug_assert_eq!(traj.strands[section], Strand::Section);

    let permutation_consistent = {
        let perm = braid.permutation();
        let strand_perm = traj.permutation();
        (0..m).all(|p| {
            let s = braid.start_order[p];
            braid.end_order[perm[p]] == s && (traj.strands[strand_perm[s]] == traj.end_strands[s])
        }) && (!base.is_closed() || traj.end_strands.iter().all(|e| traj.strands.contains(e)))
    };

    let name = |strand: Strand| match strand {
        Strand::Line(tag) => Word::gen(symbol_for_tag(n, tag).expect("fiber line"), n),
        Strand::Section => Word::empty(n),
    };
    // Positions at the end are named by the puncture they sit on.
    let end_names: Vec<Word> = braid.end_order.iter().map(|&s| name(traj.end_strands[s])).collect();
    let start_pos_section = braid.start_order.iter().position(|&s| s == section).expect("section strand");
    let end_pos_section = braid.end_order.iter().position(|&s| s == section).expect("section strand");
    let c_raw = strip_conjugate(&artin.images[start_pos_section], &position_word(m, end_pos_section))
        .ok_or_else(|| MonodromyError::Certification("section image is not a conjugate".into()))?;
    let c = relabel(&c_raw, n, &end_names);

    let mut far_images = BTreeMap::new();
    let mut images = BTreeMap::new();
    for (p, &s) in braid.start_order.iter().enumerate() {
        if let Strand::Line(tag) = traj.strands[s] {
            let sym = symbol_for_tag(n, tag).expect("fiber line");
            let far = relabel(&artin.images[p], n, &end_names);
            images.insert(sym, free_reduce(&c.inv().mul(&far).mul(&c)));
            far_images.insert(sym, far);
        }
    }
    Ok(NumericAction {
        n,
        kind,
        artin_identity: artin.fixes_boundary(),
        braid,
        far_images,
        section_conjugator: c,
        images,
        permutation_consistent,
        residuals: traj.residuals,
    })
}

/// Reads a closed path in a fiber as a word in the lasso basis of `punctures`.
pub fn read_loop(n: u32, path: &[Complex64], punctures: &[(Complex64, GeneratorSymbol)], rotation: f64) -> Result<Word, MonodromyError> {
    let turn = Complex64::from_polar(1.0, rotation);
    let pts: Vec<Complex64> = path.iter().map(|z| z * turn).collect();
    let punct: Vec<(Complex64, GeneratorSymbol)> = punctures.iter().map(|(z, s)| (z * turn, *s)).collect();
    let mut letters = Vec::new();
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut hits: Vec<(f64, Letter)> = Vec::new();
        for &(p, s) in &punct {
            if (a - p).norm() < 1e-9 {
                return Err(MonodromyError::Certification(format!("path meets the puncture of {s}")));
            }
            if (a.re >= p.re) != (b.re >= p.re) {
                let t = (p.re - a.re) / (b.re - a.re);
                let y = a.im + t * (b.im - a.im);
                if y < p.im {
                    let l = if b.re > a.re { Letter::pos(s) } else { Letter::neg(s) };
                    hits.push((t, l));
                }
            }
        }
        hits.sort_by(|x, y| x.0.total_cmp(&y.0));
        letters.extend(hits.into_iter().map(|h| h.1));
    }
    Ok(free_reduce(&Word::from_letters(n, letters)))
}

const PATH_SAMPLES: usize = 512;

fn sample_segments(segments: usize, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
    let total = segments * PATH_SAMPLES;
    (0..=total).map(|k| f(k as f64 / PATH_SAMPLES as f64)).collect()
}

/// The lasso `g_i` in the fiber over `ε`: straight out to `ε ζ^{-i}`, once
/// around it counterclockwise at radius `δ`, straight back.
pub fn lasso_g_path(n: u32, i: u32, cfg: &MonodromyConfig) -> Vec<Complex64> {
    let dir = RootsOfUnity::new(n).pow(-(i as i64));
    let (e, d) = (cfg.epsilon, cfg.delta);
    sample_segments(3, |u| {
        if u <= 1.0 {
            dir * u * (e - d)
        } else if u <= 2.0 {
            dir * (e - d * (2.0 * PI * Complex64::i() * (u - 1.0)).exp())
        } else {
            dir * (3.0 - u) * (e - d)
        }
    })
}

/// The loop `h'_j` in the fiber over `ε`, around `ζ^j`.
///
/// For `n >= 3` this is the path leaving along the bisector between `g_0` and
/// `g_1`, sweeping counterclockwise at about half radius to the direction of
/// `ζ^j`, and going straight out. For `n <= 2` that recipe meets a puncture;
/// the same route is taken on the circle of radius 1/2 instead.
pub fn h_prime_path(n: u32, j: u32, cfg: &MonodromyConfig) -> Vec<Complex64> {
    let roots = RootsOfUnity::new(n);
    let target = roots.pow(j as i64);
    let d = cfg.delta;
    let nf = n as f64;
    let jf = j as f64;
    let i = Complex64::i();
    let out_and_back = move |u: f64| -> Complex64 {
        // u in [2, 5]: radial out, circle, radial back.
        if u <= 3.0 {
            target * ((3.0 - u) / 2.0 + (u - 2.0) * (1.0 - d))
        } else if u <= 4.0 {
            target * (1.0 - d * (2.0 * PI * i * (u - 3.0)).exp())
        } else {
            target * ((u - 4.0) / 2.0 + (5.0 - u) * (1.0 - d))
        }
    };
    if n >= 3 {
        let back = roots.pow(-1);
        let mid = (1.0 + back) / 2.0;
        let sweep = move |s: f64| 0.5 * ((2.0 * PI * i * s * jf / nf).exp() + (1.0 - s) * back);
        sample_segments(7, |u| {
            if u <= 1.0 {
                u * mid
            } else if u <= 2.0 {
                sweep(u - 1.0)
            } else if u <= 5.0 {
                out_and_back(u)
            } else if u <= 6.0 {
                sweep(6.0 - u)
            } else {
                (7.0 - u) * mid
            }
        })
    } else {
        let a0 = -PI / nf;
        let a1 = 2.0 * PI * jf / nf;
        let arc = move |s: f64| 0.5 * Complex64::from_polar(1.0, a0 + s * (a1 - a0));
        sample_segments(7, |u| {
            if u <= 1.0 {
                u * arc(0.0)
            } else if u <= 2.0 {
                arc(u - 1.0)
            } else if u <= 5.0 {
                out_and_back(u)
            } else if u <= 6.0 {
                arc(6.0 - u)
            } else {
                (7.0 - u) * arc(0.0)
            }
        })
    }
}

fn fiber_lassos(n: u32, t: f64) -> Vec<(Complex64, GeneratorSymbol)> {
    let roots = RootsOfUnity::new(n);
    crate::arrangement::punctures_unchecked(&roots, Complex64::new(t, 0.0))
        .into_iter()
        .map(|p| (p.position, symbol_for_tag(n, p.tag).expect("fiber line")))
        .collect()
}

/// `g_0 g_{n-1} ... g_{n-j}` (the conjugator turning `h'_j` into `g'_j`).
fn prime_conjugator(n: u32, j: u32) -> Vec<i64> {
    std::iter::once(0).chain((1..=j as i64).map(|t| n as i64 - t)).collect()
}

/// Expresses the loops `g_i` and `g'_j = c_j^-1 h'_j c_j` of the fiber over
/// `ε`, with `c_j = g_0 g_{n-1} ... g_{n-j}`, in the lasso basis of
/// [`strand_dictionary`].
pub fn loop_basis(n: u32, cfg: &MonodromyConfig) -> Result<Substitution, MonodromyError> {
    let lassos = fiber_lassos(n, cfg.epsilon);
    loop_basis_in(n, cfg, &lassos, 1.0, |i| GeneratorSymbol::g(n, i), |j| GeneratorSymbol::gp(n, j))
}

/// The same loops pushed to the fiber over `1/ε` by `[x:y:z] ↦ [y:x:z]`
/// (fiber coordinate scaled by `1/ε`): `g'_{∞,n-i}` is the image of `g_i`
/// and `g_{∞,n-j}` the image of `g'_j`.
pub fn infinity_loop_basis(n: u32, cfg: &MonodromyConfig) -> Result<Substitution, MonodromyError> {
    let lassos = fiber_lassos(n, 1.0 / cfg.epsilon);
    let ni = n as i64;
    loop_basis_in(
        n,
        cfg,
        &lassos,
        1.0 / cfg.epsilon,
        |i| GeneratorSymbol::new(Family::InfGPrime, ni - i, n),
        |j| GeneratorSymbol::new(Family::InfG, ni - j, n),
    )
}

fn loop_basis_in(
    n: u32,
    cfg: &MonodromyConfig,
    lassos: &[(Complex64, GeneratorSymbol)],
    scale: f64,
    g_name: impl Fn(i64) -> GeneratorSymbol,
    gp_name: impl Fn(i64) -> GeneratorSymbol,
) -> Result<Substitution, MonodromyError> {
    // Loops are drawn from `0`, then moved to the section point.
    let c0 = section_point(cfg.epsilon);
    let leg: Vec<Complex64> = (0..=PATH_SAMPLES).map(|k| c0 * (1.0 - k as f64 / PATH_SAMPLES as f64)).collect();
    let scaled = |p: Vec<Complex64>| {
        let mut out = leg.clone();
        out.extend(p.into_iter().map(|z| z * scale));
        out.extend(leg.iter().rev());
        out
    };
    let mut g_words = Vec::new();
    for i in 0..n {
        g_words.push(read_loop(n, &scaled(lasso_g_path(n, i, cfg)), lassos, cfg.rotation)?);
    }
    let mut images = BTreeMap::new();
    for i in 0..n {
        images.insert(g_name(i as i64), g_words[i as usize].clone());
    }
    for j in 0..n {
        let h = read_loop(n, &scaled(h_prime_path(n, j, cfg)), lassos, cfg.rotation)?;
        let c = Word::product(n, prime_conjugator(n, j).iter().map(|&t| &g_words[t as usize]));
        images.insert(gp_name(j as i64), free_reduce(&c.inv().mul(&h).mul(&c)));
    }
    Ok(Substitution::new(n, images))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageComparison {
    pub generator: String,
    /// Numerical action applied to the loop, in the lasso basis.
    pub numeric: String,
    /// Formula image, rewritten in the lasso basis.
    pub formula: String,
    pub conjugate: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: u32,
    pub base_loop: String,
    /// Every numerical image is conjugate to the formula image.
    pub permutation_match: bool,
    /// Some single word conjugates all numerical images onto the formula images.
    pub exact_word_match: bool,
    /// That word; empty when the images agree verbatim.
    pub conjugator: Option<String>,
    pub braid: Vec<i32>,
    pub artin_identity: bool,
    pub permutation_consistent: bool,
    pub section_conjugator: String,
    pub dictionary: Vec<DictionaryEntry>,
    pub residuals: Residuals,
    pub comparisons: Vec<ImageComparison>,
}

impl VerificationReport {
    pub fn mismatches(&self) -> Vec<&ImageComparison> {
        self.comparisons.iter().filter(|c| !c.conjugate).collect()
    }
}

fn global_conjugator(pairs: &[(Word, Word)]) -> Option<Word> {
    let (u, v) = pairs.first()?;
    let c0 = is_conjugate_free(u, v)?;
    for k in [0i64, 1, -1, 2, -2, 3, -3] {
        let c = free_reduce(&u.pow(k).mul(&c0));
        if pairs.iter().all(|(a, b)| free_reduce(&c.inv().mul(a).mul(&c)) == *b) {
            return Some(c);
        }
    }
    None
}

fn build_report(
    n: u32,
    kind: LoopKind,
    cfg: &MonodromyConfig,
    action: &NumericAction,
    rows: Vec<(GeneratorSymbol, Word, Word)>,
) -> Result<VerificationReport, MonodromyError> {
    let comparisons: Vec<ImageComparison> = rows
        .iter()
        .map(|(s, num, form)| ImageComparison {
            generator: s.token(),
            numeric: num.to_string(),
            formula: form.to_string(),
            conjugate: is_conjugate_free(num, form).is_some(),
            equal: num == form,
        })
        .collect();
    let pairs: Vec<(Word, Word)> = rows.iter().map(|(_, a, b)| (a.clone(), b.clone())).collect();
    let permutation_match = comparisons.iter().all(|c| c.conjugate);
    let conjugator = if comparisons.iter().all(|c| c.equal) {
        Some(Word::empty(n))
    } else if permutation_match {
        global_conjugator(&pairs)
    } else {
        None
    };
    let t = if kind == LoopKind::Alpha { 1.0 / cfg.epsilon } else { cfg.epsilon };
    let tagged: Vec<(Complex64, LineTag)> = crate::arrangement::punctures_unchecked(&RootsOfUnity::new(n), Complex64::new(t, 0.0))
        .into_iter()
        .map(|p| (p.position, p.tag))
        .collect();
    Ok(VerificationReport {
        n,
        base_loop: kind.label(),
        permutation_match,
        exact_word_match: conjugator.is_some(),
        conjugator: conjugator.map(|c| c.to_string()),
        braid: action.braid.letters.clone(),
        artin_identity: action.artin_identity,
        permutation_consistent: action.permutation_consistent,
        section_conjugator: action.section_conjugator.to_string(),
        dictionary: strand_dictionary(n, &tagged, cfg.rotation)?,
        residuals: action.residuals,
        comparisons,
    })
}

/// Compares the numerical action of `γ_k` (`k = 0` for `γ_0`) with the
/// closed-form table, both written in the lasso basis.
pub fn verify_gamma(n: u32, k: u32, cfg: &MonodromyConfig) -> Result<VerificationReport, MonodromyError> {
    let kind = if k == 0 { LoopKind::Gamma0 } else { LoopKind::GammaK(k) };
    let action = numeric_action(n, kind, cfg)?;
    let table = action_table(n, k)?;
    let psi = loop_basis(n, cfg)?;
    let rows = fiber_generators(n)
        .into_iter()
        .map(|s| {
            let x = psi.image(&s).expect("basis loop").clone();
            let formula = psi.apply_partial(table.image(&s));
            (s, action.apply(&x), formula)
        })
        .collect();
    build_report(n, kind, cfg, &action, rows)
}

/// Compares carrying the loops over `1/ε` back along `α` with the
/// basepoint-change formula.
pub fn verify_alpha(n: u32, cfg: &MonodromyConfig) -> Result<VerificationReport, MonodromyError> {
    let action = numeric_action(n, LoopKind::Alpha, cfg)?;
    let translate = translate_infinity(n)?;
    let psi = loop_basis(n, cfg)?;
    let psi_inf = infinity_loop_basis(n, cfg)?;
    let mut rows = Vec::new();
    for family in [Family::InfG, Family::InfGPrime] {
        for i in 0..n as i64 {
            let s = GeneratorSymbol::new(family, i, n);
            let carried = action.apply(psi_inf.image(&s).expect("basis loop"));
            let formula = psi.apply_partial(translate.image(&s).expect("translated"));
            rows.push((s, carried, formula));
        }
    }
    build_report(n, LoopKind::Alpha, cfg, &action, rows)
}

/// The main presentation with every `γ_k` relation replaced by the numerical
/// action, and the remaining relators rewritten in the lasso basis.
pub fn numeric_presentation(n: u32, cfg: &MonodromyConfig) -> Result<Presentation, MonodromyError> {
    let psi = loop_basis(n, cfg)?;
    let mut rels: Vec<Word> = fiber_relators(n)?.iter().map(|r| psi.apply_partial(r)).collect();
    for k in 1..=n {
        let action = numeric_action(n, LoopKind::GammaK(k), cfg)?;
        let table = ActionTable { n, k, action: action.to_automorphism()? };
        let t = Word::gen(line_generator_for(n, k), n);
        rels.extend(conjugation_relators(&t, &table));
    }
    Ok(Presentation::new(n, PresentationName::Numeric, fiber_and_line_generators(n), rels)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> MonodromyConfig {
        MonodromyConfig::default()
    }

    fn x(m: usize, p: usize) -> Word {
        position_word(m, p)
    }

    fn braid(strands: usize, letters: Vec<i32>) -> Braid {
        let order: Vec<usize> = (0..strands).collect();
        Braid { strands, letters, start_order: order.clone(), end_order: order }
    }

    #[test]
    fn config_constraints() {
        assert!(cfg().validate().is_ok());
        let mut c = cfg();
        c.delta = 0.06;
        assert!(matches!(c.validate(), Err(MonodromyError::InvalidParameters(_))));
        c = cfg();
        c.epsilon = 0.2;
        assert!(c.validate().is_err());
        assert!(BaseLoop::new(2, LoopKind::GammaK(3), &cfg()).is_err());
        assert!(BaseLoop::new(2, LoopKind::GammaK(0), &cfg()).is_err());
    }

    #[test]
    fn loop_parse_labels() {
        for s in ["gamma0", "gamma3", "alpha"] {
            assert_eq!(LoopKind::parse(s).unwrap().label(), s);
        }
        assert_eq!(LoopKind::parse("beta"), None);
    }

    #[test]
    fn base_loop_endpoints() {
        let c = cfg();
        let g0 = BaseLoop::new(3, LoopKind::Gamma0, &c).unwrap();
        assert!((g0.point(0.0) - Complex64::new(0.1, 0.0)).norm() < 1e-15);
        let a = BaseLoop::new(3, LoopKind::Alpha, &c).unwrap();
        assert!((a.point(0.0) - Complex64::new(0.1, 0.0)).norm() < 1e-15);
        assert!((a.point(3.0) - Complex64::new(10.0, 0.0)).norm() < 1e-12);
        assert!(a.point(1.5).im < 0.0);
        let r = a.reversed();
        assert!((r.point(0.0) - Complex64::new(10.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gamma1_closest_approach_is_delta() {
        let c = cfg();
        let l = BaseLoop::new(2, LoopKind::GammaK(1), &c).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let closest = (0..=5000).map(|k| (l.point(k as f64 / 1000.0) - one).norm()).fold(f64::INFINITY, f64::min);
        assert!((closest - c.delta).abs() < 1e-9);
        assert!((l.point(5.0) - l.point(0.0)).norm() < 1e-12);
    }

    #[test]
    fn loops_keep_clear_of_branch_values() {
        let c = cfg();
        for n in 1..=4 {
            let roots = RootsOfUnity::new(n);
            let mut kinds = vec![LoopKind::Gamma0, LoopKind::Alpha];
            kinds.extend((1..=n).map(LoopKind::GammaK));
            for kind in kinds {
                let l = BaseLoop::new(n, kind, &c).unwrap();
                let steps = l.segments() * 2000;
                for s in 0..=steps {
                    let t = l.point(s as f64 / 2000.0);
                    let d = (0..n as i64).map(|k| (t - roots.pow(k)).norm()).fold(t.norm(), f64::min);
                    assert!(d >= c.delta / 2.0 - 1e-12, "{kind:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn tracking_invariants() {
        let c = cfg();
        let l = BaseLoop::new(2, LoopKind::Gamma0, &c).unwrap();
        let t = track_punctures(&l, &c).unwrap();
        assert!(t.positions.iter().all(|p| p.len() == 4));
        assert!(t.residuals.max_step_ratio < 1.0 / 3.0);
        // The L_y punctures sit at 1 and -1 throughout.
        for p in &t.positions {
            assert!((p[2] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            assert!((p[3] + Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        let l = BaseLoop::new(3, LoopKind::Gamma0, &c).unwrap();
        let t = track_punctures(&l, &c).unwrap();
        assert_eq!(t.end_strands, t.strands);
    }

    #[test]
    fn gamma_k_permutes_colliding_pairs() {
        let c = cfg();
        let l = BaseLoop::new(3, LoopKind::GammaK(2), &c).unwrap();
        let t = track_punctures(&l, &c).unwrap();
        let mut ends = t.end_strands.clone();
        ends.sort();
        let mut starts = t.strands.clone();
        starts.sort();
        assert_eq!(ends, starts);
    }

    #[test]
    fn constant_trajectory_gives_empty_braid() {
        let pts = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.5)];
        let b = braid_from_positions(&vec![pts; 10], 0.003).unwrap();
        assert!(b.letters.is_empty());
    }

    #[test]
    fn full_twist_is_sigma_squared() {
        let steps = 200;
        let positions: Vec<Vec<Complex64>> = (0..=steps)
            .map(|k| {
                let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / steps as f64);
                vec![-z, z]
            })
            .collect();
        let b = braid_from_positions(&positions, 0.003).unwrap();
        assert_eq!(b.letters, vec![1, 1]);
        let half: Vec<_> = positions[..=steps / 2].to_vec();
        assert_eq!(braid_from_positions(&half, 0.003).unwrap().letters, vec![1]);
    }

    #[test]
    fn gamma0_n1_braid_is_empty() {
        let c = cfg();
        let l = BaseLoop::new(1, LoopKind::Gamma0, &c).unwrap();
        let b = extract_braid(&track_punctures(&l, &c).unwrap(), c.rotation).unwrap();
        assert!(b.letters.is_empty());
    }

    #[test]
    fn artin_convention() {
        assert_eq!(braid_to_automorphism(&braid(3, vec![])).images, vec![x(3, 0), x(3, 1), x(3, 2)]);
        let a = braid_to_automorphism(&braid(2, vec![1]));
        assert_eq!(a.images[0], x(2, 0).mul(&x(2, 1)).mul(&x(2, 0).inv()));
        assert_eq!(a.images[1], x(2, 0));
        let a = braid_to_automorphism(&braid(2, vec![1, 1]));
        let p = x(2, 0).mul(&x(2, 1));
        assert_eq!(a.images[0], free_reduce(&p.mul(&x(2, 0)).mul(&p.inv())));
        assert_eq!(a.images[1], free_reduce(&p.mul(&x(2, 1)).mul(&p.inv())));
        let a = braid_to_automorphism(&braid(3, vec![1, -1, 2, -2]));
        assert_eq!(a.images, vec![x(3, 0), x(3, 1), x(3, 2)]);
    }

    #[test]
    fn artin_identity_on_mixed_braid() {
        let a = braid_to_automorphism(&braid(5, vec![1, -2, 3, 4, -1, 2, 2, -4, 3]));
        assert!(a.fixes_boundary());
    }

    #[test]
    fn dictionary_tags() {
        let c = cfg();
        let roots = RootsOfUnity::new(2);
        let tagged: Vec<_> = crate::arrangement::punctures_unchecked(&roots, Complex64::new(c.epsilon, 0.0))
            .into_iter()
            .map(|p| (p.position, p.tag))
            .collect();
        let d = strand_dictionary(2, &tagged, c.rotation).unwrap();
        let symbols: Vec<&str> = d.iter().map(|e| e.symbol.as_str()).collect();
        assert_eq!(symbols, ["gp1", "g1", "g0", "gp0"]);
        let roots = RootsOfUnity::new(1);
        let tagged: Vec<_> = crate::arrangement::punctures_unchecked(&roots, Complex64::new(c.epsilon, 0.0))
            .into_iter()
            .map(|p| (p.position, p.tag))
            .collect();
        let d = strand_dictionary(1, &tagged, c.rotation).unwrap();
        assert_eq!(d[0].symbol, "g0");
        assert_eq!(d[1].symbol, "gp0");
    }

    #[test]
    fn read_loop_basics() {
        let n = 1;
        let lassos = fiber_lassos(n, 0.1);
        let circle: Vec<Complex64> =
            (0..=400).map(|k| Complex64::new(0.1, 0.0) + 0.02 * Complex64::from_polar(1.0, -PI / 2.0 + 2.0 * PI * k as f64 / 400.0)).collect();
        assert_eq!(read_loop(n, &circle, &lassos, 0.003).unwrap(), Word::g(1, 0));
        let rev: Vec<Complex64> = circle.iter().rev().copied().collect();
        assert_eq!(read_loop(n, &rev, &lassos, 0.003).unwrap(), Word::g(1, 0).inv());
    }

    #[test]
    fn straight_lassos_read_as_conjugates() {
        let c = cfg();
        for n in 1..=5 {
            let psi = loop_basis(n, &c).unwrap();
            for s in fiber_generators(n) {
                let w = psi.image(&s).unwrap();
                assert!(is_conjugate_free(w, &Word::gen(s, n)).is_some(), "n={n} {s}: {w}");
            }
        }
    }

    #[test]
    fn h_prime_fallback_agrees_where_both_apply() {
        // For n >= 3 the half-radius arc is homotopic to the drawn path.
        let c = cfg();
        for n in 3..=6 {
            let lassos = fiber_lassos(n, c.epsilon);
            for j in 0..n {
                let drawn = read_loop(n, &h_prime_path(n, j, &c), &lassos, c.rotation).unwrap();
                let a0 = -PI / n as f64;
                let a1 = 2.0 * PI * j as f64 / n as f64;
                let target = RootsOfUnity::new(n).pow(j as i64);
                let arc = |s: f64| 0.5 * Complex64::from_polar(1.0, a0 + s * (a1 - a0));
                let d = c.delta;
                let alt = sample_segments(7, |u| {
                    if u <= 1.0 {
                        u * arc(0.0)
                    } else if u <= 2.0 {
                        arc(u - 1.0)
                    } else if u <= 3.0 {
                        target * ((3.0 - u) / 2.0 + (u - 2.0) * (1.0 - d))
                    } else if u <= 4.0 {
                        target * (1.0 - d * (2.0 * PI * Complex64::i() * (u - 3.0)).exp())
                    } else if u <= 5.0 {
                        target * ((u - 4.0) / 2.0 + (5.0 - u) * (1.0 - d))
                    } else if u <= 6.0 {
                        arc(6.0 - u)
                    } else {
                        (7.0 - u) * arc(0.0)
                    }
                });
                assert_eq!(drawn, read_loop(n, &alt, &lassos, c.rotation).unwrap(), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn verify_gamma0_n1() {
        let r = verify_gamma(1, 0, &cfg()).unwrap();
        assert!(r.permutation_match);
        assert!(r.artin_identity);
        assert_eq!(r.comparisons[0].generator, "g0");
        assert!(r.comparisons[0].equal);
    }

    #[test]
    fn gamma0_fixes_g_classes() {
        let c = cfg();
        for n in 1..=3 {
            let a = numeric_action(n, LoopKind::Gamma0, &c).unwrap();
            for i in 0..n as i64 {
                let g = Word::g(n, i);
                assert!(is_conjugate_free(&a.images[&GeneratorSymbol::g(n, i)], &g).is_some());
            }
        }
    }

    #[test]
    fn doubling_keeps_the_action() {
        let c = cfg();
        let mut fine = c;
        fine.initial_steps = 4 * c.initial_steps;
        for (n, kind) in [(2, LoopKind::GammaK(2)), (3, LoopKind::Gamma0), (2, LoopKind::Alpha)] {
            let a = numeric_action(n, kind, &c).unwrap();
            let b = numeric_action(n, kind, &fine).unwrap();
            assert_eq!(a.images, b.images);
        }
    }

    #[test]
    fn verify_gamma1_n2_exact() {
        let r = verify_gamma(2, 1, &cfg()).unwrap();
        assert!(r.permutation_match && r.exact_word_match);
        assert_eq!(r.conjugator.as_deref(), Some("1"));
    }

    #[test]
    fn verify_alpha_n1() {
        let r = verify_alpha(1, &cfg()).unwrap();
        assert!(r.permutation_match);
        assert!(r.residuals.min_gap > 0.0);
    }
}
