//! Numerical invariants of twigs and cusps, the degree equations of a rational cuspidal
//! curve, and the arithmetic predicates used to bound its invariants.
//!
//! Predicates here check arithmetic only. Any geometric hypothesis behind an inequality is the
//! caller's obligation.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{rational_from_int, ratio, solve_rational, ArithError, Rational};
use crate::dualgraph::{Chain, ComponentId, DualGraph, GraphError, Twig};
use crate::hnpairs::{blowup_history, BlowupKind, CharPairSeq, MarkedResolution, PairError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("twig weight {weight} at position {position} is below 2")]
    WeightBelowTwo { position: usize, weight: i64 },
    #[error("twig has discriminant 0")]
    ZeroDiscriminant,
    #[error("a curve candidate needs at least one cusp")]
    NoCusps,
    #[error("degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("cusp {index}: rho must be positive")]
    NonPositiveRho { index: usize },
    #[error("gamma_t = {0} is below 4")]
    GammaTBelowFour(i64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn check_twig_weights(t: &Chain) -> Result<(), InvariantError> {
    match t.weights().iter().position(|&w| w < 2) {
        Some(position) => Err(InvariantError::WeightBelowTwo {
            position,
            weight: t.weights()[position],
        }),
        None => Ok(()),
    }
}

/// `d(T - tip) / d(T)` for a chain read tip first; the empty chain has inductance 0.
pub fn inductance(t: &Chain) -> Result<Rational, InvariantError> {
    check_twig_weights(t)?;
    if t.is_empty() {
        return Ok(Rational::zero());
    }
    let d = t.discriminant();
    if d.is_zero() {
        return Err(InvariantError::ZeroDiscriminant);
    }
    Ok(Rational::new(t.tail().discriminant(), d))
}

/// A divisor with rational coefficients on some components of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor {
    pub coefficients: BTreeMap<ComponentId, Rational>,
}

impl QDivisor {
    /// Self-intersection computed with the intersection numbers of `g`.
    pub fn square(&self, g: &DualGraph) -> Result<Rational, GraphError> {
        let mut total = Rational::zero();
        for (&a, x) in &self.coefficients {
            for (&b, y) in &self.coefficients {
                let q = if a == b {
                    g.self_int(a)?
                } else {
                    i64::from(g.edge_mult(a, b))
                };
                if q != 0 {
                    total += x * y * rational_from_int(q);
                }
            }
        }
        Ok(total)
    }
}

fn solve_on(g: &DualGraph, ids: &[ComponentId], rhs: Vec<Rational>) -> Result<QDivisor, InvariantError> {
    let keep: BTreeSet<ComponentId> = ids.iter().copied().collect();
    let sub = g.induced(&keep);
    let idx = sub.index_map();
    let mut ordered = vec![Rational::zero(); ids.len()];
    for (id, r) in ids.iter().zip(rhs) {
        ordered[idx[id]] = r;
    }
    let x = solve_rational(&sub.intersection_matrix(), &ordered)?;
    Ok(QDivisor {
        coefficients: ids.iter().map(|id| (*id, x[idx[id]].clone())).collect(),
    })
}

/// The bark of a twig of `g`: the divisor on the twig meeting each twig component `R` in
/// `beta(R) - 2`.
pub fn bark(g: &DualGraph, twig: &Twig) -> Result<QDivisor, InvariantError> {
    check_twig_weights(&twig.chain)?;
    let rhs = twig
        .ids
        .iter()
        .map(|&id| Ok(rational_from_int(i64::from(g.branching_number(id)?) - 2)))
        .collect::<Result<Vec<_>, GraphError>>()?;
    solve_on(g, &twig.ids, rhs)
}

/// Bark coefficients of a chain regarded as a twig attached at its last component, tip first.
pub fn bark_of_chain(t: &Chain) -> Result<Vec<Rational>, InvariantError> {
    check_twig_weights(t)?;
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let g = t.to_graph();
    let ids = g.ids();
    let mut rhs = vec![Rational::zero(); ids.len()];
    rhs[0] = -Rational::one();
    let d = solve_on(&g, &ids, rhs)?;
    Ok(d.coefficients.into_values().collect())
}

/// Sum of inductances over all maximal twigs.
pub fn total_inductance(g: &DualGraph) -> Result<Rational, InvariantError> {
    g.maximal_twigs()?
        .iter()
        .try_fold(Rational::zero(), |acc, t| Ok(acc + inductance(&t.chain)?))
}

/// Whether the maximal twigs lying in the first branch of a cusp's resolution contribute more
/// than 1/2 to the inductance of the boundary.
///
/// The boundary is modeled as the resolution plus one extra non-rational component glued to
/// the (-1)-curve, standing in for the proper transform of the curve and everything beyond it.
pub fn first_branch_contribution_exceeds_half(m: &MarkedResolution) -> Result<bool, InvariantError> {
    Ok(first_branch_contribution(m)? > ratio(1, 2))
}

pub fn first_branch_contribution(m: &MarkedResolution) -> Result<Rational, InvariantError> {
    let history = blowup_history(&m.graph)?;
    let mut first = BTreeSet::new();
    let mut seen_inner = false;
    for step in &history {
        match step.kind() {
            BlowupKind::Inner => seen_inner = true,
            BlowupKind::Outer if seen_inner => break,
            BlowupKind::Outer => {}
        }
        first.insert(step.created);
    }
    let mut d = m.graph.clone();
    let rest = d.add_component(-1, Some("E".to_owned()));
    d.add_edge(rest, m.minus_one, 1)?;
    // Positive genus keeps the stand-in from being read as a tip.
    d.set_genus_defect(rest, 1)?;
    let mut total = Rational::zero();
    for twig in d.maximal_twigs()? {
        if twig.ids.iter().all(|id| first.contains(id)) {
            total += inductance(&twig.chain)?;
        }
    }
    Ok(total)
}

/// Linear and quadratic invariants of a cusp together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspInvariants {
    pub m: BigInt,
    pub i: BigInt,
    pub mult: BigInt,
}

/// `M = c_1 + sum p_i - 1`, `I = sum c_i p_i`, and `p_1`.
pub fn cusp_invariants(s: &CharPairSeq) -> CuspInvariants {
    let pairs = s.pairs();
    let m = BigInt::from(pairs[0].0) + pairs.iter().map(|&(_, p)| BigInt::from(p)).sum::<BigInt>()
        - 1;
    let i = pairs
        .iter()
        .map(|&(c, p)| BigInt::from(c) * BigInt::from(p))
        .sum();
    CuspInvariants {
        m,
        i,
        mult: BigInt::from(pairs[0].1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateCusp {
    pub pairs: CharPairSeq,
    pub rho: u64,
}

/// A putative rational cuspidal curve: degree, `gamma = -E^2` on the chosen resolution, and for
/// each cusp its pairs and `rho`, the intersection of its exceptional graph with `E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCandidate")]
pub struct CurveCandidate {
    pub degree: i64,
    pub gamma: i64,
    pub cusps: Vec<CandidateCusp>,
}

#[derive(Deserialize)]
struct RawCandidate {
    degree: i64,
    gamma: i64,
    cusps: Vec<CandidateCusp>,
}

impl TryFrom<RawCandidate> for CurveCandidate {
    type Error = InvariantError;
    fn try_from(raw: RawCandidate) -> Result<Self, InvariantError> {
        CurveCandidate::new(raw.degree, raw.gamma, raw.cusps)
    }
}

impl CurveCandidate {
    pub fn new(degree: i64, gamma: i64, cusps: Vec<CandidateCusp>) -> Result<Self, InvariantError> {
        if degree < 1 {
            return Err(InvariantError::NonPositiveDegree(degree));
        }
        if cusps.is_empty() {
            return Err(InvariantError::NoCusps);
        }
        if let Some(index) = cusps.iter().position(|c| c.rho == 0) {
            return Err(InvariantError::NonPositiveRho { index });
        }
        Ok(CurveCandidate {
            degree,
            gamma,
            cusps,
        })
    }

    pub fn unicuspidal(degree: i64, gamma: i64, pairs: CharPairSeq, rho: u64) -> Result<Self, InvariantError> {
        CurveCandidate::new(degree, gamma, vec![CandidateCusp { pairs, rho }])
    }
}

/// Left side minus right side of each degree equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residuals {
    pub r1: BigInt,
    pub r2: BigInt,
    pub r3: BigInt,
}

impl Residuals {
    pub fn all_zero(&self) -> bool {
        self.r1.is_zero() && self.r2.is_zero() && self.r3.is_zero()
    }
}

/// Residuals of `gamma - 2 + 3d = sum rho M`, `gamma + d^2 = sum rho^2 I` and
/// `(d-1)(d-2) = sum rho (rho I - M)`, each computed on its own.
pub fn degree_equation_residuals(cand: &CurveCandidate) -> Residuals {
    let d = BigInt::from(cand.degree);
    let gamma = BigInt::from(cand.gamma);
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    let mut s3 = BigInt::zero();
    for cusp in &cand.cusps {
        let inv = cusp_invariants(&cusp.pairs);
        let rho = BigInt::from(cusp.rho);
        s1 += &rho * &inv.m;
        s2 += &rho * &rho * &inv.i;
        s3 += &rho * (&rho * &inv.i - &inv.m);
    }
    Residuals {
        r1: &gamma - 2 + 3 * &d - s1,
        r2: &gamma + &d * &d - s2,
        r3: (&d - 1) * (&d - 2) - s3,
    }
}

/// `(K+D)^2 + ind(D) <= 3 chi`, compared exactly.
pub fn bmy_holds(kd_sq: i64, ind: &Rational, chi: i64) -> bool {
    rational_from_int(kd_sq) + ind <= rational_from_int(3 * chi)
}

/// Numerical data attached to a run of the minimalization process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundProfile {
    pub p2: i64,
    pub zeta: i64,
    pub gamma0: i64,
    pub tau_star: i64,
    pub s: i64,
    pub c: i64,
    pub n: i64,
    pub n1: i64,
}

/// `(K_n.(K_n + D_n), E_n.K_n)` at the end of the process.
pub fn mmp_bookkeeping(b: &BoundProfile) -> (i64, i64) {
    (
        b.p2 - b.c - b.tau_star - b.n,
        2 * b.c - 2 + b.tau_star + b.n1,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundViolation {
    /// `gamma_0 + tau* <= 2 p2 + 2 zeta`
    GammaPlusTau,
    /// `|zeta| <= p2 - 2`
    ZetaRange,
    /// `gamma_0 >= 4`
    GammaAtLeastFour,
}

/// Violated constraints of a profile with no process steps; empty means feasible.
pub fn bound_profile_feasible(b: &BoundProfile) -> Vec<BoundViolation> {
    let mut out = Vec::new();
    if b.gamma0 + b.tau_star > 2 * b.p2 + 2 * b.zeta {
        out.push(BoundViolation::GammaPlusTau);
    }
    if b.zeta.abs() > b.p2 - 2 {
        out.push(BoundViolation::ZetaRange);
    }
    if b.gamma0 < 4 {
        out.push(BoundViolation::GammaAtLeastFour);
    }
    out
}

/// Picard rank of a smooth rational surface from `K^2`.
pub fn noether_rho(k_sq: i64) -> i64 {
    10 - k_sq
}

/// Number of boundary components after `i` steps of the process.
pub fn component_count_identity(rho: i64, i: i64) -> i64 {
    rho + i
}

/// Inputs to the constraints on a partial process `(X_t, E_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct XeInput {
    pub zeta: i64,
    pub gamma0: i64,
    pub gammat: i64,
    pub theta0: i64,
    pub theta1: i64,
    pub big_theta0: i64,
    pub big_theta1: i64,
    pub tau_star: i64,
    pub p2: i64,
    pub c: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XeViolation {
    /// `gamma_t = gamma_0 - theta_1`
    GammaT,
    /// `Theta_0 >= 2 theta_0`
    Theta0,
    /// `Theta_1 >= theta_1`
    Theta1,
    /// `p2 - zeta + (1 - 4/gamma_t) c >= (2/gamma_t)(Theta_1 + tau*) + Theta_0`
    Budget,
    /// `zeta + theta_0 >= 2 - 4/gamma_t`
    ZetaT,
}

pub fn xe_process_constraints(x: &XeInput) -> Result<Vec<XeViolation>, InvariantError> {
    if x.gammat < 4 {
        return Err(InvariantError::GammaTBelowFour(x.gammat));
    }
    let q = rational_from_int;
    let inv_g = ratio(1, x.gammat);
    let mut out = Vec::new();
    if x.gammat != x.gamma0 - x.theta1 {
        out.push(XeViolation::GammaT);
    }
    if x.big_theta0 < 2 * x.theta0 {
        out.push(XeViolation::Theta0);
    }
    if x.big_theta1 < x.theta1 {
        out.push(XeViolation::Theta1);
    }
    let lhs = q(x.p2 - x.zeta) + (q(1) - q(4) * &inv_g) * q(x.c);
    let rhs = q(2) * &inv_g * q(x.big_theta1 + x.tau_star) + q(x.big_theta0);
    if lhs < rhs {
        out.push(XeViolation::Budget);
    }
    let zeta_t = q(x.zeta + x.theta0);
    if zeta_t < q(2) - q(4) * &inv_g {
        out.push(XeViolation::ZetaT);
    }
    Ok(out)
}
