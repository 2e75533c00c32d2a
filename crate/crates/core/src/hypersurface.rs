//! Secant hypersurfaces and multiplicity probes along lines.
//!
//! A hypersurface instance carries a homogeneous equation f together
//! with known points of the underlying variety X. The multiplicity of a
//! point z in the hypersurface is probed by restricting f to lines
//! through z: every line reports at least the true multiplicity and a
//! generic line reports it exactly, so the minimum over random trials is
//! the estimate. A double drop needs mult <= deg - 2 and two further
//! intersection points on one line.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::GaussianRational;
use crate::poly::{proportional, MultivariatePoly, PolyError};
use crate::roots::{gaussian_rational_roots, RootError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypersurfaceError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("equation is not homogeneous of degree {expect}")]
    WrongDegree { expect: usize },
    #[error("equation does not vanish at known point #{index}: value {value}")]
    PointNotOnHypersurface { index: usize, value: String },
    #[error("point is not on the hypersurface: f(z) = {0}")]
    ProbeBasePoint(String),
    #[error("need {expect} polynomials in {expect} variables, got {got}")]
    JacobianShape { expect: usize, got: usize },
    #[error("all {0} probe trials drew lines inside the hypersurface")]
    AllTrialsSkipped(usize),
    #[error("trials must be >= 1")]
    NoTrials,
    #[error("line lies inside the hypersurface")]
    LineInsideHypersurface,
}

/// A hypersurface (typically a secant variety sigma_r(X)) with sample
/// points of X for validation.
#[derive(Debug, Clone)]
pub struct HypersurfaceInstance {
    pub description: String,
    pub f: MultivariatePoly,
    pub degree: usize,
    pub known_points: Vec<Vec<GaussianRational>>,
}

impl HypersurfaceInstance {
    /// Validates homogeneity, the stated degree, and vanishing at every
    /// known point.
    pub fn new(
        description: impl Into<String>,
        f: MultivariatePoly,
        degree: usize,
        known_points: Vec<Vec<GaussianRational>>,
    ) -> Result<Self, HypersurfaceError> {
        if f.homogeneous_degree() != Some(degree) {
            return Err(HypersurfaceError::WrongDegree { expect: degree });
        }
        for (index, pt) in known_points.iter().enumerate() {
            let value = f.evaluate(pt)?;
            if !value.is_zero() {
                return Err(HypersurfaceError::PointNotOnHypersurface {
                    index,
                    value: value.to_string(),
                });
            }
        }
        Ok(Self {
            description: description.into(),
            f,
            degree,
            known_points,
        })
    }
}

/// det of the n x n matrix of partial derivatives of n polynomials in n
/// variables, expanded exactly.
pub fn jacobian_determinant(
    quadrics: &[MultivariatePoly],
) -> Result<MultivariatePoly, HypersurfaceError> {
    let n = quadrics.len();
    let nvars = quadrics
        .first()
        .map(MultivariatePoly::nvars)
        .unwrap_or(0);
    if n == 0 || n != nvars || quadrics.iter().any(|q| q.nvars() != nvars) {
        return Err(HypersurfaceError::JacobianShape { expect: nvars, got: n });
    }
    let jac: Vec<Vec<MultivariatePoly>> = quadrics
        .iter()
        .map(|q| (0..nvars).map(|v| q.derivative(v)).collect())
        .collect();
    Ok(poly_det(&jac))
}

/// Determinant of a square matrix of polynomials by Laplace expansion
/// along the first column (fine for the n <= 6 sizes used here).
fn poly_det(m: &[Vec<MultivariatePoly>]) -> MultivariatePoly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultivariatePoly::zero(nvars);
    for r in 0..n {
        if m[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultivariatePoly>> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let mut term = m[r][0].mul(&poly_det(&minor)).expect("same nvars");
        if r % 2 == 1 {
            term = term.scale(&GaussianRational::from_int(-1));
        }
        acc = acc.add(&term).expect("same nvars");
    }
    acc
}

/// The determinantal hypersurface sigma_{n-1} of rank-one n x n matrices:
/// det of the matrix of n^2 variables, with rank-one sample points.
pub fn determinantal_hypersurface(n: usize) -> Result<HypersurfaceInstance, HypersurfaceError> {
    assert!(n >= 2, "determinantal hypersurface needs n >= 2");
    let nvars = n * n;
    let vars: Vec<Vec<MultivariatePoly>> = (0..n)
        .map(|i| (0..n).map(|j| MultivariatePoly::var(nvars, i * n + j)).collect())
        .collect();
    let det = poly_det(&vars);
    // rank-one sample points: E_11 and the outer product (1..n)x(1,1,..)
    let mut e11 = vec![GaussianRational::zero(); nvars];
    e11[0] = GaussianRational::one();
    let mut outer = vec![GaussianRational::zero(); nvars];
    for i in 0..n {
        for j in 0..n {
            outer[i * n + j] = GaussianRational::from_int((i + 1) as i64);
        }
    }
    HypersurfaceInstance::new(
        format!("determinantal hypersurface of {n}x{n} matrices"),
        det,
        n,
        vec![e11, outer],
    )
}

/// The Hankel-determinant hypersurface sigma_delta of the degree-2*delta
/// rational normal curve: det of the (delta+1) x (delta+1) Hankel matrix
/// in 2*delta+1 variables. Sample points are moment vectors
/// (1, t, t^2, ...), where the Hankel matrix has rank one.
pub fn hankel_catalecticant_hypersurface(
    delta: usize,
) -> Result<HypersurfaceInstance, HypersurfaceError> {
    assert!(delta >= 1, "hankel hypersurface needs delta >= 1");
    let nvars = 2 * delta + 1;
    let m: Vec<Vec<MultivariatePoly>> = (0..=delta)
        .map(|i| (0..=delta).map(|j| MultivariatePoly::var(nvars, i + j)).collect())
        .collect();
    let det = poly_det(&m);
    let moment = |t: i64| -> Vec<GaussianRational> {
        let mut acc = GaussianRational::one();
        (0..nvars)
            .map(|_| {
                let v = acc.clone();
                acc *= &GaussianRational::from_int(t);
                v
            })
            .collect()
    };
    HypersurfaceInstance::new(
        format!("hankel catalecticant hypersurface, delta = {delta}"),
        det,
        delta + 1,
        vec![moment(1), moment(2), moment(-1)],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    DoubleDrop,
    NoDrop,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::DoubleDrop => write!(f, "DOUBLE_DROP"),
            Verdict::NoDrop => write!(f, "NO_DROP"),
        }
    }
}

/// Result of probing one explicit line.
#[derive(Debug, Clone)]
pub struct LineProbe {
    pub multiplicity: usize,
    pub extra_distinct_roots: usize,
    pub restriction_degree: usize,
}

/// Aggregate of randomized trials through one point.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub degree: usize,
    pub trials: usize,
    pub skipped_inside: usize,
    pub min_multiplicity: usize,
    pub max_extra_roots: usize,
    pub verdict: Verdict,
}

/// Restricts f to the line through z with the given direction and
/// reports the multiplicity at z plus the count of distinct roots other
/// than the base point.
pub fn probe_line(
    h: &HypersurfaceInstance,
    z: &[GaussianRational],
    direction: &[GaussianRational],
) -> Result<LineProbe, HypersurfaceError> {
    let g = h.f.restrict_to_line(z, direction)?;
    if g.is_zero() {
        return Err(HypersurfaceError::LineInsideHypersurface);
    }
    let multiplicity = g.multiplicity_at_zero().expect("nonzero");
    let distinct = g.distinct_root_count().expect("nonzero");
    let extra = distinct - usize::from(multiplicity >= 1);
    Ok(LineProbe {
        multiplicity,
        extra_distinct_roots: extra,
        restriction_degree: g.degree().unwrap_or(0),
    })
}

/// Randomized multiplicity probe: draws `trials` directions with small
/// integer coordinates from a seeded generator, restricts f to each line
/// and aggregates min multiplicity / max extra roots. Lines inside the
/// hypersurface are skipped and counted. DOUBLE_DROP requires
/// min mult <= deg - 2 and at least two further intersection points on
/// some line.
pub fn probe_multidrop(
    h: &HypersurfaceInstance,
    z: &[GaussianRational],
    trials: usize,
    seed: u64,
) -> Result<ProbeReport, HypersurfaceError> {
    if trials == 0 {
        return Err(HypersurfaceError::NoTrials);
    }
    if z.len() < 2 {
        return Err(HypersurfaceError::Poly(PolyError::DegenerateLine));
    }
    let fz = h.f.evaluate(z)?;
    if !fz.is_zero() {
        return Err(HypersurfaceError::ProbeBasePoint(fz.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_mult: Option<usize> = None;
    let mut max_extra = 0usize;
    let mut skipped = 0usize;
    for _ in 0..trials {
        let direction = draw_direction(&mut rng, z);
        match probe_line(h, z, &direction) {
            Ok(probe) => {
                min_mult = Some(min_mult.map_or(probe.multiplicity, |m| m.min(probe.multiplicity)));
                max_extra = max_extra.max(probe.extra_distinct_roots);
            }
            Err(HypersurfaceError::LineInsideHypersurface) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let min_multiplicity = min_mult.ok_or(HypersurfaceError::AllTrialsSkipped(trials))?;
    let verdict = if min_multiplicity + 2 <= h.degree && max_extra >= 2 {
        Verdict::DoubleDrop
    } else {
        Verdict::NoDrop
    };
    Ok(ProbeReport {
        degree: h.degree,
        trials,
        skipped_inside: skipped,
        min_multiplicity,
        max_extra_roots: max_extra,
        verdict,
    })
}

fn draw_direction(rng: &mut ChaCha8Rng, z: &[GaussianRational]) -> Vec<GaussianRational> {
    loop {
        let direction: Vec<GaussianRational> = (0..z.len())
            .map(|_| GaussianRational::from_int(rng.gen_range(-5..=5)))
            .collect();
        if !proportional(z, &direction) {
            return direction;
        }
    }
}

/// A constructed multidrop configuration: p with f(p) != 0 and
/// q0 = p - 2*step, q1 = p - step both on the hypersurface, with `step`
/// proportional to z.
#[derive(Debug, Clone)]
pub struct DropConstruction {
    pub p: Vec<GaussianRational>,
    pub q0: Vec<GaussianRational>,
    pub q1: Vec<GaussianRational>,
    pub step: Vec<GaussianRational>,
}

#[derive(Debug, Clone)]
pub enum DropOutcome {
    Drop(DropConstruction),
    NoDrop { reason: String },
}

/// Searches the line spanned by z and `direction` for a multidrop
/// configuration. The pencil is parametrized as direction + mu * z, so
/// intersection points with rational mu differ by multiples of z; two
/// such points anchor the arithmetic progression q_j, and the first
/// j >= 2 with f(q_j) != 0 yields p. Only Q(i)-rational intersection
/// points are searched; irrational intersections report NO_DROP.
pub fn construct_drop_point(
    h: &HypersurfaceInstance,
    z: &[GaussianRational],
    direction: &[GaussianRational],
) -> Result<DropOutcome, HypersurfaceError> {
    let fz = h.f.evaluate(z)?;
    if !fz.is_zero() {
        return Err(HypersurfaceError::ProbeBasePoint(fz.to_string()));
    }
    // base and direction swap roles: z sits at infinity of this chart
    let g = h.f.restrict_to_line(direction, z)?;
    if g.is_zero() {
        return Err(HypersurfaceError::LineInsideHypersurface);
    }
    let roots = gaussian_rational_roots(&g)?;
    if roots.len() < 2 {
        return Ok(DropOutcome::NoDrop {
            reason: format!(
                "line meets the hypersurface in {} rational point(s) besides z; need 2",
                roots.len()
            ),
        });
    }
    let mu0 = &roots[0];
    let mu1 = &roots[1];
    let diff = mu1 - mu0;
    let step: Vec<GaussianRational> = z.iter().map(|c| c * &diff).collect();
    let point_at = |j: i64| -> Vec<GaussianRational> {
        let mu = mu0 + &(&GaussianRational::from_int(j) * &diff);
        direction
            .iter()
            .zip(z)
            .map(|(d, zc)| d + &(zc * &mu))
            .collect()
    };
    for j in 2..=(h.degree as i64 + 2) {
        let p = point_at(j);
        if !h.f.evaluate(&p)?.is_zero() {
            let q0 = point_at(j - 2);
            let q1 = point_at(j - 1);
            return Ok(DropOutcome::Drop(DropConstruction { p, q0, q1, step }));
        }
    }
    Ok(DropOutcome::NoDrop {
        reason: "every shifted point lies on the hypersurface".into(),
    })
}
