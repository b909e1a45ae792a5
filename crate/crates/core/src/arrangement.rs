//! The Fermat arrangement `V((x^n - y^n)(y^n - z^n)(z^n - x^n))` in double precision.
//!
//! Lines are `L_{x,k} = V(y - ζ^k z)`, `L_{y,k} = V(z - ζ^k x)` and
//! `L_{z,k} = V(x - ζ^k y)`, plus the auxiliary coordinate lines `V(x)` and
//! `V(y)`. Fibers of the projection `[x:y:z] ↦ y/x` are parametrised by `z/x`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

pub const CLUSTER_TOL: f64 = 1e-8;
pub const ON_LINE_TOL: f64 = 1e-10;
pub const NORMALIZE_TOL: f64 = 1e-12;
pub const BRANCH_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArrangementError {
    #[error("n must be at least 1")]
    InvalidN,
    #[error("lines {0} and {1} coincide")]
    Degenerate(LineTag, LineTag),
    #[error("base value {0} is a branch point of the projection")]
    BranchPoint(Complex64),
    #[error("zero coefficient vector")]
    ZeroVector,
}

/// Primitive `n`-th roots of unity, computed once.
#[derive(Debug, Clone)]
pub struct RootsOfUnity {
    table: Vec<Complex64>,
}

impl RootsOfUnity {
    pub fn new(n: u32) -> Self {
        assert!(n > 0);
        let table = (0..n)
            .map(|k| {
                if k == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
                }
            })
            .collect();
        RootsOfUnity { table }
    }

    pub fn n(&self) -> u32 {
        self.table.len() as u32
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Complex64 {
        self.table[k.rem_euclid(self.table.len() as i64) as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LineFamily {
    Lx,
    Ly,
    Lz,
    Vx,
    Vy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LineTag {
    pub family: LineFamily,
    pub index: u32,
}

impl LineTag {
    pub fn new(family: LineFamily, index: u32) -> Self {
        LineTag { family, index }
    }
}

impl fmt::Display for LineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            LineFamily::Lx => write!(f, "Lx{}", self.index),
            LineFamily::Ly => write!(f, "Ly{}", self.index),
            LineFamily::Lz => write!(f, "Lz{}", self.index),
            LineFamily::Vx => write!(f, "Vx"),
            LineFamily::Vy => write!(f, "Vy"),
        }
    }
}

/// A projective line `ax + by + cz = 0`.
///
/// Coefficients are kept as constructed; [`ProjLine::normalized`] gives the
/// canonical triple with first nonzero entry equal to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjLine {
    pub coefficients: [Complex64; 3],
    pub tag: LineTag,
}

impl ProjLine {
    pub fn new(coefficients: [Complex64; 3], tag: LineTag) -> Result<Self, ArrangementError> {
        if coefficients.iter().all(|c| c.norm() <= NORMALIZE_TOL) {
            return Err(ArrangementError::ZeroVector);
        }
        Ok(ProjLine { coefficients, tag })
    }

    pub fn normalized(&self) -> [Complex64; 3] {
        let lead = self
            .coefficients
            .iter()
            .copied()
            .find(|c| c.norm() > NORMALIZE_TOL)
            .expect("nonzero line");
        self.coefficients.map(|c| c / lead)
    }

    pub fn same_line(&self, other: &ProjLine) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= CLUSTER_TOL)
    }

    /// Scale-free residual `|l·p| / (|l| |p|)`.
    pub fn residual(&self, p: &ProjPoint) -> f64 {
        let dot: Complex64 = self
            .coefficients
            .iter()
            .zip(p.coords.iter())
            .map(|(a, b)| a * b)
            .sum();
        dot.norm() / (norm3(&self.coefficients) * norm3(&p.coords))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.residual(p) <= ON_LINE_TOL
    }
}

fn norm3(v: &[Complex64; 3]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// A point of the projective plane, normalized by its last nonzero coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjPoint {
    pub coords: [Complex64; 3],
}

impl ProjPoint {
    pub fn new(coords: [Complex64; 3]) -> Result<Self, ArrangementError> {
        let last = coords
            .iter()
            .rev()
            .copied()
            .find(|c| c.norm() > NORMALIZE_TOL)
            .ok_or(ArrangementError::ZeroVector)?;
        Ok(ProjPoint { coords: coords.map(|c| c / last) })
    }

    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .all(|(a, b)| (a - b).norm() <= tol)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |z: Complex64| {
            let re = if z.re.abs() < 1e-12 { 0.0 } else { z.re };
            let im = if z.im.abs() < 1e-12 { 0.0 } else { z.im };
            if im == 0.0 {
                format!("{re:.6}")
            } else {
                format!("{re:.6}{im:+.6}i")
            }
        };
        write!(f, "[{}:{}:{}]", c(self.coords[0]), c(self.coords[1]), c(self.coords[2]))
    }
}

pub fn fermat_lines(n: u32) -> Result<Vec<ProjLine>, ArrangementError> {
    if n == 0 {
        return Err(ArrangementError::InvalidN);
    }
    let roots = RootsOfUnity::new(n);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut lines = Vec::with_capacity(3 * n as usize);
    for k in 0..n {
        let z = roots.pow(k as i64);
        lines.push(ProjLine::new([zero, one, -z], LineTag::new(LineFamily::Lx, k))?);
    }
    for k in 0..n {
        let z = roots.pow(k as i64);
        lines.push(ProjLine::new([-z, zero, one], LineTag::new(LineFamily::Ly, k))?);
    }
    for k in 0..n {
        let z = roots.pow(k as i64);
        lines.push(ProjLine::new([one, -z, zero], LineTag::new(LineFamily::Lz, k))?);
    }
    Ok(lines)
}

pub fn coordinate_line_x() -> ProjLine {
    ProjLine {
        coefficients: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        tag: LineTag::new(LineFamily::Vx, 0),
    }
}

pub fn coordinate_line_y() -> ProjLine {
    ProjLine {
        coefficients: [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        tag: LineTag::new(LineFamily::Vy, 0),
    }
}

pub fn intersect_lines(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, ArrangementError> {
    let [a1, b1, c1] = l1.coefficients;
    let [a2, b2, c2] = l2.coefficients;
    let cross = [b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2];
    let scale = norm3(&l1.coefficients) * norm3(&l2.coefficients);
    if norm3(&cross) <= NORMALIZE_TOL * scale {
        return Err(ArrangementError::Degenerate(l1.tag, l2.tag));
    }
    ProjPoint::new(cross)
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularPoint {
    pub location: ProjPoint,
    pub incident_lines: BTreeSet<LineTag>,
}

impl SingularPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident_lines.len()
    }
}

/// Clusters all pairwise intersections of the `3n` lines by location.
pub fn singular_points(n: u32) -> Result<Vec<SingularPoint>, ArrangementError> {
    let lines = fermat_lines(n)?;
    let mut points: Vec<SingularPoint> = Vec::new();
    for (a, l1) in lines.iter().enumerate() {
        for l2 in &lines[a + 1..] {
            let p = intersect_lines(l1, l2)?;
            match points.iter_mut().find(|s| s.location.approx_eq(&p, CLUSTER_TOL)) {
                Some(s) => {
                    s.incident_lines.insert(l1.tag);
                    s.incident_lines.insert(l2.tag);
                }
                None => points.push(SingularPoint {
                    location: p,
                    incident_lines: [l1.tag, l2.tag].into_iter().collect(),
                }),
            }
        }
    }
    for s in &points {
        for tag in &s.incident_lines {
            let line = lines.iter().find(|l| l.tag == *tag).expect("tag from this arrangement");
            debug_assert!(line.contains(&s.location), "{tag} misses {}", s.location);
        }
    }
    Ok(points)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Puncture {
    pub position: Complex64,
    pub tag: LineTag,
}

/// The `2n` points where a fiber of the projection meets the arrangement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberConfiguration {
    pub base: Complex64,
    pub punctures: Vec<Puncture>,
}

/// Returns true when `t` is `0` or an `n`-th root of unity up to [`BRANCH_TOL`].
pub fn is_branch_value(roots: &RootsOfUnity, t: Complex64) -> bool {
    t.norm() <= BRANCH_TOL || (0..roots.n()).any(|k| (t - roots.pow(k as i64)).norm() <= BRANCH_TOL)
}

/// Fiber punctures over `t`: `L_{x,j}` sits at `t ζ^{-j}`, `L_{y,j}` at `ζ^j`.
pub fn fiber_punctures(n: u32, t: Complex64) -> Result<FiberConfiguration, ArrangementError> {
    if n == 0 {
        return Err(ArrangementError::InvalidN);
    }
    let roots = RootsOfUnity::new(n);
    fiber_punctures_with(&roots, t)
}

pub fn fiber_punctures_with(
    roots: &RootsOfUnity,
    t: Complex64,
) -> Result<FiberConfiguration, ArrangementError> {
    if is_branch_value(roots, t) {
        return Err(ArrangementError::BranchPoint(t));
    }
    Ok(FiberConfiguration { base: t, punctures: punctures_unchecked(roots, t) })
}

pub(crate) fn punctures_unchecked(roots: &RootsOfUnity, t: Complex64) -> Vec<Puncture> {
    let n = roots.n();
    let mut punctures = Vec::with_capacity(2 * n as usize);
    for j in 0..n {
        punctures.push(Puncture {
            position: t * roots.pow(-(j as i64)),
            tag: LineTag::new(LineFamily::Lx, j),
        });
    }
    for j in 0..n {
        punctures.push(Puncture {
            position: roots.pow(j as i64),
            tag: LineTag::new(LineFamily::Ly, j),
        });
    }
    punctures
}
