//! Characteristic pair sequences of cusps and the resolution graphs they determine.
//!
//! A sequence `((c_1,p_1),...,(c_h,p_h))` is resolved by a combinatorial germ simulation:
//! the germ's current point is tracked by the (at most two) components through it and the
//! remaining local indices against each. No power series are involved.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{fibonacci, solve_rational, ArithError, Rational};
use crate::dualgraph::{BlowupCenter, Chain, ComponentId, DualGraph, GraphError};

/// Largest `r` accepted by [`enumerate_chains`] unless a different cap is passed.
pub const DEFAULT_RANK_CAP: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("empty pair sequence")]
    Empty,
    #[error("pair {index}: p = 0 is only allowed in the smooth sequence ((1,0))")]
    ZeroSecond { index: usize },
    #[error("pair {index}: ({c},{p}) has c < p")]
    FirstBelowSecond { index: usize, c: u64, p: u64 },
    #[error("pair {index}: expected c = {expected} (gcd of the previous pair), found {found}")]
    GcdChain { index: usize, expected: u64, found: u64 },
    #[error("last pair leaves gcd {0}, expected 1")]
    FinalGcd(u64),
    #[error("the smooth germ ((1,0)) needs no resolution")]
    Smooth,
    #[error("graph has no (-1)-curve")]
    NoMinusOne,
    #[error("graph has several (-1)-curves: {0:?}")]
    SeveralMinusOne(Vec<ComponentId>),
    #[error("(-1)-curve {0} cannot be the last curve of a point blowup")]
    NotATower(ComponentId),
    #[error("K.Q = {0} is below -1, so the Fibonacci index is out of range")]
    FibonacciIndex(i64),
    #[error("rank {r} exceeds the enumeration cap {cap}")]
    RankTooLarge { r: u32, cap: u32 },
    #[error("multiplicities recovered from the graph are not a valid pair sequence")]
    Irregular,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A cusp's characteristic pairs. Serialized as `[[c,p],...]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u64)>", into = "Vec<(u64, u64)>")]
pub struct CharPairSeq {
    pairs: Vec<(u64, u64)>,
}

impl CharPairSeq {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self, PairError> {
        validate(&pairs)?;
        Ok(CharPairSeq { pairs })
    }

    pub fn smooth() -> Self {
        CharPairSeq {
            pairs: vec![(1, 0)],
        }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn is_smooth(&self) -> bool {
        self.pairs == [(1, 0)]
    }

    /// Multiplicity of the cusp, `p_1`.
    pub fn multiplicity(&self) -> u64 {
        self.pairs[0].1
    }

    /// Appends `n` copies of `pair`, revalidating.
    pub fn extended(&self, pair: (u64, u64), n: usize) -> Result<Self, PairError> {
        let mut pairs = self.pairs.clone();
        pairs.extend(std::iter::repeat(pair).take(n));
        CharPairSeq::new(pairs)
    }
}

impl TryFrom<Vec<(u64, u64)>> for CharPairSeq {
    type Error = PairError;
    fn try_from(pairs: Vec<(u64, u64)>) -> Result<Self, PairError> {
        CharPairSeq::new(pairs)
    }
}

impl From<CharPairSeq> for Vec<(u64, u64)> {
    fn from(s: CharPairSeq) -> Self {
        s.pairs
    }
}

impl fmt::Display for CharPairSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (c, p)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({c},{p})")?;
        }
        write!(f, ")")
    }
}

fn validate(pairs: &[(u64, u64)]) -> Result<(), PairError> {
    if pairs.is_empty() {
        return Err(PairError::Empty);
    }
    if pairs == [(1, 0)] {
        return Ok(());
    }
    let mut expected: Option<u64> = None;
    for (index, &(c, p)) in pairs.iter().enumerate() {
        if p == 0 {
            return Err(PairError::ZeroSecond { index });
        }
        if c < p {
            return Err(PairError::FirstBelowSecond { index, c, p });
        }
        if let Some(e) = expected {
            if c != e {
                return Err(PairError::GcdChain {
                    index,
                    expected: e,
                    found: c,
                });
            }
        }
        expected = Some(c.gcd(&p));
    }
    match expected {
        Some(1) => Ok(()),
        Some(g) => Err(PairError::FinalGcd(g)),
        None => unreachable!("nonempty"),
    }
}

/// Euclidean multiplicity chain of one pair: each remainder repeated quotient-many times.
pub fn mult_sequence(c: u64, p: u64) -> Result<Vec<u64>, PairError> {
    if (c, p) == (1, 0) {
        return Ok(Vec::new());
    }
    if p == 0 {
        return Err(PairError::ZeroSecond { index: 0 });
    }
    if c < p {
        return Err(PairError::FirstBelowSecond { index: 0, c, p });
    }
    let mut out = Vec::new();
    let (mut a, mut b) = (c, p);
    while b > 0 {
        let (q, r) = a.div_rem(&b);
        out.extend(std::iter::repeat(b).take(q as usize));
        (a, b) = (b, r);
    }
    Ok(out)
}

/// Per-pair multiplicity blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub blocks: Vec<Vec<u64>>,
}

impl MultiplicityProfile {
    pub fn flattened(&self) -> Vec<u64> {
        self.blocks.concat()
    }
}

pub fn multiplicity_profile(s: &CharPairSeq) -> MultiplicityProfile {
    if s.is_smooth() {
        return MultiplicityProfile { blocks: Vec::new() };
    }
    MultiplicityProfile {
        blocks: s
            .pairs()
            .iter()
            .map(|&(c, p)| mult_sequence(c, p).expect("validated pair"))
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlowupKind {
    Outer,
    Inner,
}

/// One blowup of a tower: the curve it created and the earlier curves through its center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistoryStep {
    pub created: ComponentId,
    pub through: Vec<ComponentId>,
}

impl HistoryStep {
    pub fn kind(&self) -> BlowupKind {
        if self.through.len() == 2 {
            BlowupKind::Inner
        } else {
            BlowupKind::Outer
        }
    }
}

/// A germ blowup recorded by the forward simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermBlowup {
    pub step: HistoryStep,
    /// Multiplicity of the germ's proper transform at the center.
    pub mult: u64,
    /// Index of the characteristic pair this blowup belongs to.
    pub pair: usize,
}

/// An exceptional graph with its unique (-1)-curve and that curve's multiplicity in the
/// total transform of the blown-up point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedResolution {
    pub graph: DualGraph,
    pub minus_one: ComponentId,
    pub mu: BigInt,
}

impl MarkedResolution {
    /// Marks a graph by reconstructing its blowup tower.
    pub fn from_graph(graph: DualGraph) -> Result<Self, PairError> {
        let history = blowup_history(&graph)?;
        let last = history.last().ok_or(PairError::NoMinusOne)?;
        let minus_one = last.created;
        let mu = propagate_coefficients(&history)
            .remove(&minus_one)
            .expect("created curve");
        Ok(MarkedResolution {
            graph,
            minus_one,
            mu,
        })
    }

    pub fn history(&self) -> Result<Vec<HistoryStep>, PairError> {
        blowup_history(&self.graph)
    }

    /// Reads the graph as a chain starting from the first exceptional curve's end.
    pub fn as_chain(&self) -> Option<Chain> {
        self.graph.as_chain()
    }
}

/// Multiplicity of each exceptional curve in the total transform of the point.
fn propagate_coefficients(history: &[HistoryStep]) -> BTreeMap<ComponentId, BigInt> {
    let mut coef: BTreeMap<ComponentId, BigInt> = BTreeMap::new();
    for step in history {
        let value = if step.through.is_empty() {
            BigInt::one()
        } else {
            step.through.iter().map(|id| &coef[id]).sum()
        };
        coef.insert(step.created, value);
    }
    coef
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branch {
    Virtual,
    Curve(ComponentId),
}

/// Runs the germ simulation and returns the graph together with every blowup it performed.
pub fn simulate_germ(s: &CharPairSeq) -> Result<(MarkedResolution, Vec<GermBlowup>), PairError> {
    if s.is_smooth() {
        return Err(PairError::Smooth);
    }
    let mut g = DualGraph::new();
    let mut coef: BTreeMap<ComponentId, BigInt> = BTreeMap::new();
    let mut steps = Vec::new();
    let mut last: Option<ComponentId> = None;
    for (pair, &(c, p)) in s.pairs().iter().enumerate() {
        let start = match last {
            None => Branch::Virtual,
            Some(id) => Branch::Curve(id),
        };
        let (mut a, mut b) = ((start, c), (Branch::Virtual, p));
        loop {
            let mult = a.1.min(b.1);
            let through: Vec<ComponentId> = [a.0, b.0]
                .into_iter()
                .filter_map(|br| match br {
                    Branch::Curve(id) => Some(id),
                    Branch::Virtual => None,
                })
                .collect();
            let created = match through.as_slice() {
                [] => g.add_component(-1, None),
                [x] => {
                    let (h, e) = g.blowup(BlowupCenter::Node(*x))?;
                    g = h;
                    e
                }
                [x, y] => {
                    let (h, e) = g.blowup(BlowupCenter::Edge(*x, *y))?;
                    g = h;
                    e
                }
                _ => unreachable!("at most two branches"),
            };
            let value = if through.is_empty() {
                BigInt::one()
            } else {
                through.iter().map(|id| &coef[id]).sum()
            };
            coef.insert(created, value);
            steps.push(GermBlowup {
                step: HistoryStep { created, through },
                mult,
                pair,
            });
            let e = Branch::Curve(created);
            if a.1 > b.1 {
                a = (a.0, a.1 - b.1);
                b = (e, b.1);
            } else if a.1 < b.1 {
                b = (b.0, b.1 - a.1);
                a = (e, a.1);
            } else {
                last = Some(created);
                break;
            }
        }
    }
    let minus_one = last.expect("nonempty sequence");
    let mu = coef.remove(&minus_one).expect("created curve");
    Ok((
        MarkedResolution {
            graph: g,
            minus_one,
            mu,
        },
        steps,
    ))
}

/// The exceptional graph of the minimal resolution encoded by `s`, with its (-1)-curve marked.
pub fn build_resolution_graph(s: &CharPairSeq) -> Result<MarkedResolution, PairError> {
    simulate_germ(s).map(|(m, _)| m)
}

/// Reconstructs the blowup tower of a graph by contracting its unique (-1)-curve repeatedly.
/// Steps are returned in blowup order.
pub fn blowup_history(g: &DualGraph) -> Result<Vec<HistoryStep>, PairError> {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while !cur.is_empty() {
        let ones: Vec<ComponentId> = cur
            .components()
            .filter(|c| c.is_minus_one())
            .map(|c| c.id)
            .collect();
        let u = match ones.as_slice() {
            [] => return Err(PairError::NoMinusOne),
            [u] => *u,
            _ => return Err(PairError::SeveralMinusOne(ones)),
        };
        let nbrs = cur.neighbors(u);
        if nbrs.len() > 2 || nbrs.iter().any(|&(_, m)| m != 1) {
            return Err(PairError::NotATower(u));
        }
        steps.push(HistoryStep {
            created: u,
            through: nbrs.iter().map(|&(id, _)| id).collect(),
        });
        cur = cur.blowdown(u)?;
    }
    steps.reverse();
    Ok(steps)
}

/// Block lengths of inner blowups, or the distinguished type `(0)` when empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChainType(pub Vec<u64>);

impl ChainType {
    pub fn zero() -> Self {
        ChainType(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for ChainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Type of a marked resolution. Trailing outer blowups (those leaving a (-1)-tip) are
/// contracted first; if nothing is left the type is `(0)`.
pub fn graph_type(m: &MarkedResolution) -> Result<ChainType, PairError> {
    graph_type_of(&m.graph)
}

/// [`graph_type`] for a bare graph; the empty graph has type `(0)`.
pub fn graph_type_of(g: &DualGraph) -> Result<ChainType, PairError> {
    let history = blowup_history(g)?;
    let kinds: Vec<BlowupKind> = history.iter().map(HistoryStep::kind).collect();
    let Some(last_inner) = kinds.iter().rposition(|&k| k == BlowupKind::Inner) else {
        return Ok(ChainType::zero());
    };
    let mut blocks = Vec::new();
    let mut run = 0u64;
    for &k in &kinds[..=last_inner] {
        match k {
            BlowupKind::Inner => run += 1,
            BlowupKind::Outer if run > 0 => {
                blocks.push(run);
                run = 0;
            }
            BlowupKind::Outer => {}
        }
    }
    blocks.push(run);
    Ok(ChainType(blocks))
}

/// Recovers a characteristic pair sequence whose resolution graph is `m.graph`.
///
/// Multiplicities come from the curvette of the (-1)-curve: its pullback coefficients `x`
/// solve `Q x = -e_U`, and the multiplicity at each center is `x` of the created curve minus
/// `x` of the curves through the center.
pub fn char_pairs_of(m: &MarkedResolution) -> Result<CharPairSeq, PairError> {
    let history = m.history()?;
    let kinds: Vec<BlowupKind> = history.iter().map(HistoryStep::kind).collect();
    if kinds.iter().all(|&k| k == BlowupKind::Outer) {
        return CharPairSeq::new(vec![(1, 1); history.len()]);
    }
    let idx = m.graph.index_map();
    let mut rhs = vec![Rational::zero(); m.graph.len()];
    rhs[idx[&m.minus_one]] = -Rational::one();
    let x = solve_rational(&m.graph.intersection_matrix(), &rhs)?;
    let coef = |id: &ComponentId| x[idx[id]].clone();
    let mut mults = Vec::with_capacity(history.len());
    for step in &history {
        let mu = step
            .through
            .iter()
            .fold(coef(&step.created), |acc, id| acc - coef(id));
        if !mu.is_integer() || !mu.is_positive() {
            return Err(PairError::Irregular);
        }
        mults.push(mu.to_integer().to_u64().ok_or(PairError::Irregular)?);
    }

    let mut blocks: Vec<Vec<u64>> = vec![Vec::new()];
    let mut seen_inner = false;
    for (&k, &mu) in kinds.iter().zip(&mults) {
        if k == BlowupKind::Outer && seen_inner {
            blocks.push(Vec::new());
        }
        seen_inner |= k == BlowupKind::Inner;
        blocks.last_mut().expect("nonempty").push(mu);
    }
    let mut pairs = Vec::with_capacity(blocks.len());
    for block in blocks {
        let p = block[0];
        let sq: u64 = block.iter().map(|v| v * v).sum();
        if sq % p != 0 {
            return Err(PairError::Irregular);
        }
        pairs.push((sq / p, p));
    }
    CharPairSeq::new(pairs).map_err(|_| PairError::Irregular)
}

/// Relabels a tower graph in blowup order and drops labels, so that isomorphic towers compare
/// equal.
pub fn canonical_form(g: &DualGraph) -> Result<DualGraph, PairError> {
    let order: Vec<ComponentId> = blowup_history(g)?.iter().map(|s| s.created).collect();
    let mut h = g.relabeled(&order)?;
    for id in h.ids() {
        h.set_label(id, None)?;
    }
    Ok(h)
}

/// `mu(U) <= F_{K.Q + 3}`.
pub fn fibonacci_bound_holds(m: &MarkedResolution) -> Result<bool, PairError> {
    let kq = m.graph.k_dot_all();
    if kq < -1 {
        return Err(PairError::FibonacciIndex(kq));
    }
    Ok(m.mu <= fibonacci(kq + 3)?)
}

/// Contractible chains of type `(r)` with `k` leading (-2)-curves, for every `k <= k_max`.
pub fn enumerate_chains(r: u32, k_max: u32) -> Result<Vec<Chain>, PairError> {
    enumerate_chains_with_cap(r, k_max, DEFAULT_RANK_CAP)
}

pub fn enumerate_chains_with_cap(r: u32, k_max: u32, cap: u32) -> Result<Vec<Chain>, PairError> {
    if r > cap {
        return Err(PairError::RankTooLarge { r, cap });
    }
    let mut found = BTreeSet::new();
    for k in 0..=k_max as usize {
        if r == 0 {
            let mut w = vec![2; k];
            w.push(1);
            found.insert(Chain::new(w));
            continue;
        }
        // Outer blowups give [(2)_{k+1},1]; the first inner blowup has a single choice.
        let mut w = vec![2; k + 1];
        w.push(1);
        let seed = Chain::new(w).to_graph();
        let u = ComponentId(k as u32 + 1);
        let nbr = seed.neighbors(u)[0].0;
        let mut frontier = vec![seed.blowup(BlowupCenter::Edge(u, nbr))?];
        for _ in 1..r {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (g, u) in &frontier {
                for (n, _) in g.neighbors(*u) {
                    next.push(g.blowup(BlowupCenter::Edge(*u, n))?);
                }
            }
            frontier = next;
        }
        for (g, _) in frontier {
            found.insert(g.as_chain().expect("inner blowups keep a chain"));
        }
    }
    Ok(found.into_iter().collect())
}

/// Changes of `-K.Gamma` and `Gamma^2` when a curve meeting the resolved germ with local
/// intersection `q_dot_gamma` is replaced by its proper transform.
pub fn lemma22_deltas(s: &CharPairSeq, q_dot_gamma: u64) -> (BigInt, BigInt) {
    let t = BigInt::from(q_dot_gamma);
    let (c1, _) = s.pairs()[0];
    let linear = BigInt::from(c1) + s.pairs().iter().map(|&(_, p)| BigInt::from(p)).sum::<BigInt>()
        - 1;
    let quadratic: BigInt = s
        .pairs()
        .iter()
        .map(|&(c, p)| BigInt::from(c) * BigInt::from(p))
        .sum();
    (&t * linear, &t * &t * quadratic)
}
