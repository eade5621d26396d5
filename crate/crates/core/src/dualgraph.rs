//! Weighted dual graphs of divisors on smooth rational surfaces.
//!
//! A [`DualGraph`] stores one node per irreducible component, weighted by its
//! self-intersection, and one undirected edge per pair of meeting components,
//! weighted by the local intersection number. Components are keyed by
//! [`ComponentId`] and iteration is always in increasing id order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{determinant, is_positive_definite, IntMatrix};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ComponentId(pub u32);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub id: ComponentId,
    pub self_int: i64,
    /// Arithmetic genus picked up by contracting curves that met this one with multiplicity > 1.
    pub genus_defect: u32,
    pub label: Option<String>,
}

impl Component {
    pub fn new(id: ComponentId, self_int: i64) -> Self {
        Component {
            id,
            self_int,
            genus_defect: 0,
            label: None,
        }
    }

    /// Smooth rational curve of self-intersection -1.
    pub fn is_minus_one(&self) -> bool {
        self.self_int == -1 && self.genus_defect == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
    #[error("duplicate component id {0}")]
    DuplicateComponent(ComponentId),
    #[error("edge from component {0} to itself")]
    SelfLoop(ComponentId),
    #[error("edge {0}-{1} has multiplicity 0")]
    ZeroMultiplicity(ComponentId, ComponentId),
    #[error("edge {0}-{1} is listed twice")]
    DuplicateEdge(ComponentId, ComponentId),
    #[error("component {id} cannot be contracted: self-intersection {self_int}, genus defect {genus_defect}")]
    NotContractible {
        id: ComponentId,
        self_int: i64,
        genus_defect: u32,
    },
    #[error("the graph is a rational chain, so its twigs are not well defined")]
    WholeGraphIsChain,
    #[error("component id space exhausted")]
    IdOverflow,
}

/// Ordered weights `[a_1, ..., a_n]` of a chain whose components have self-intersections `-a_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain {
    weights: Vec<i64>,
}

impl Chain {
    pub fn new(weights: Vec<i64>) -> Self {
        Chain { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn reversed(&self) -> Chain {
        Chain::new(self.weights.iter().rev().copied().collect())
    }

    /// The chain with its first component removed.
    pub fn tail(&self) -> Chain {
        Chain::new(self.weights.iter().skip(1).copied().collect())
    }

    /// Path graph with ids `0..n` in chain order and unit edges.
    pub fn to_graph(&self) -> DualGraph {
        let mut g = DualGraph::new();
        let mut prev = None;
        for &w in &self.weights {
            let id = g.add_component(-w, None);
            if let Some(p) = prev {
                g.add_edge(p, id, 1).expect("fresh ids");
            }
            prev = Some(id);
        }
        g
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.to_graph())
    }

    /// Discriminant through the three-term recursion `d(T) = a_1 d(T - T_1) - d(T - T_1 - T_2)`.
    pub fn discriminant_recursive(&self) -> BigInt {
        // d(empty) = 1 and the recursion extended one step back gives d_{-1} = 0.
        let (mut next, mut cur) = (BigInt::from(0), BigInt::from(1));
        for &a in self.weights.iter().rev() {
            let d = BigInt::from(a) * &cur - &next;
            next = std::mem::replace(&mut cur, d);
        }
        cur
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<i64>> for Chain {
    fn from(weights: Vec<i64>) -> Self {
        Chain::new(weights)
    }
}

/// Where a blowup is centered: a general point of a component (outer) or a node (inner).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlowupCenter {
    Node(ComponentId),
    Edge(ComponentId, ComponentId),
}

/// A maximal twig: component ids and weights, tip first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twig {
    pub ids: Vec<ComponentId>,
    pub chain: Chain,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualGraph {
    components: BTreeMap<ComponentId, Component>,
    edges: BTreeMap<(ComponentId, ComponentId), u32>,
}

fn edge_key(a: ComponentId, b: ComponentId) -> (ComponentId, ComponentId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl DualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from explicit components and edge records, rejecting malformed input.
    pub fn from_parts(
        components: impl IntoIterator<Item = Component>,
        edges: impl IntoIterator<Item = (ComponentId, ComponentId, u32)>,
    ) -> Result<Self, GraphError> {
        let mut g = DualGraph::new();
        for c in components {
            if g.components.contains_key(&c.id) {
                return Err(GraphError::DuplicateComponent(c.id));
            }
            g.components.insert(c.id, c);
        }
        for (a, b, mult) in edges {
            if g.edges.contains_key(&edge_key(a, b)) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.add_edge(a, b, mult)?;
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.components.values()
    }

    pub fn ids(&self) -> Vec<ComponentId> {
        self.components.keys().copied().collect()
    }

    pub fn contains(&self, id: ComponentId) -> bool {
        self.components.contains_key(&id)
    }

    pub fn component(&self, id: ComponentId) -> Result<&Component, GraphError> {
        self.components
            .get(&id)
            .ok_or(GraphError::UnknownComponent(id))
    }

    fn component_mut(&mut self, id: ComponentId) -> Result<&mut Component, GraphError> {
        self.components
            .get_mut(&id)
            .ok_or(GraphError::UnknownComponent(id))
    }

    pub fn self_int(&self, id: ComponentId) -> Result<i64, GraphError> {
        Ok(self.component(id)?.self_int)
    }

    /// Edge records `(a, b, mult)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (ComponentId, ComponentId, u32)> + '_ {
        self.edges.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn edge_mult(&self, a: ComponentId, b: ComponentId) -> u32 {
        self.edges.get(&edge_key(a, b)).copied().unwrap_or(0)
    }

    /// Neighbors of `id` with the multiplicity of each meeting, by increasing id.
    pub fn neighbors(&self, id: ComponentId) -> Vec<(ComponentId, u32)> {
        let mut out: Vec<(ComponentId, u32)> = self
            .edges
            .iter()
            .filter_map(|(&(a, b), &m)| {
                if a == id {
                    Some((b, m))
                } else if b == id {
                    Some((a, m))
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn next_id(&self) -> Result<ComponentId, GraphError> {
        match self.components.keys().next_back() {
            None => Ok(ComponentId(0)),
            Some(&ComponentId(n)) => n
                .checked_add(1)
                .map(ComponentId)
                .ok_or(GraphError::IdOverflow),
        }
    }

    /// Adds an isolated rational component with the next free id.
    pub fn add_component(&mut self, self_int: i64, label: Option<String>) -> ComponentId {
        let id = self.next_id().expect("fewer than u32::MAX components");
        self.components.insert(
            id,
            Component {
                id,
                self_int,
                genus_defect: 0,
                label,
            },
        );
        id
    }

    /// Adds `mult` to the intersection number of `a` and `b`.
    pub fn add_edge(&mut self, a: ComponentId, b: ComponentId, mult: u32) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if mult == 0 {
            return Err(GraphError::ZeroMultiplicity(a, b));
        }
        self.component(a)?;
        self.component(b)?;
        *self.edges.entry(edge_key(a, b)).or_insert(0) += mult;
        Ok(())
    }

    pub fn set_genus_defect(&mut self, id: ComponentId, genus_defect: u32) -> Result<(), GraphError> {
        self.component_mut(id)?.genus_defect = genus_defect;
        Ok(())
    }

    pub fn set_label(&mut self, id: ComponentId, label: Option<String>) -> Result<(), GraphError> {
        self.component_mut(id)?.label = label;
        Ok(())
    }

    /// Position of each id in the row order of [`intersection_matrix`](Self::intersection_matrix).
    pub fn index_map(&self) -> BTreeMap<ComponentId, usize> {
        self.components.keys().enumerate().map(|(i, &id)| (id, i)).collect()
    }

    /// Intersection matrix with rows in increasing id order.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let idx = self.index_map();
        let mut m = IntMatrix::zeros(self.len());
        for c in self.components.values() {
            let i = idx[&c.id];
            m.set(i, i, BigInt::from(c.self_int));
        }
        for (&(a, b), &mult) in &self.edges {
            let (i, j) = (idx[&a], idx[&b]);
            m.set(i, j, BigInt::from(mult));
            m.set(j, i, BigInt::from(mult));
        }
        m
    }

    /// The subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<ComponentId>) -> DualGraph {
        DualGraph {
            components: self
                .components
                .iter()
                .filter(|(id, _)| keep.contains(id))
                .map(|(&id, c)| (id, c.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|((a, b), _)| keep.contains(a) && keep.contains(b))
                .map(|(&k, &m)| (k, m))
                .collect(),
        }
    }

    /// Connected components as sets of ids, ordered by their smallest id.
    pub fn connected_components(&self) -> Vec<BTreeSet<ComponentId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.components.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut part = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !part.insert(v) {
                    continue;
                }
                for (w, _) in self.neighbors(v) {
                    if !part.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            seen.extend(part.iter().copied());
            out.push(part);
        }
        out
    }

    /// Reads the graph as a chain if it is one: connected, acyclic, no branching, rational
    /// components and unit edges. Reads from the end tip with the smaller id.
    pub fn as_chain(&self) -> Option<Chain> {
        let order = self.chain_order()?;
        Some(Chain::new(
            order.iter().map(|id| -self.components[id].self_int).collect(),
        ))
    }

    /// Component ids along the chain, starting from the end tip with the smaller id.
    pub fn chain_order(&self) -> Option<Vec<ComponentId>> {
        if self.is_empty() {
            return Some(Vec::new());
        }
        if self.components.values().any(|c| c.genus_defect > 0)
            || self.edges.values().any(|&m| m != 1)
            || self.edges.len() + 1 != self.len()
        {
            return None;
        }
        let degree = |id: ComponentId| self.neighbors(id).len();
        if self.components.keys().any(|&id| degree(id) > 2) {
            return None;
        }
        let start = *self.components.keys().find(|&&id| degree(id) <= 1)?;
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = self
                .neighbors(cur)
                .into_iter()
                .map(|(w, _)| w)
                .find(|&w| Some(w) != prev);
            match next {
                Some(w) => {
                    order.push(w);
                    prev = Some(cur);
                    cur = w;
                }
                None => break,
            }
        }
        (order.len() == self.len()).then_some(order)
    }

    /// Blows up a general point of a component (outer) or the intersection point of two
    /// meeting components (inner). Returns the new graph and the id of the new (-1)-curve.
    pub fn blowup(&self, center: BlowupCenter) -> Result<(DualGraph, ComponentId), GraphError> {
        let mut g = self.clone();
        let new_id = g.next_id()?;
        match center {
            BlowupCenter::Node(a) => {
                g.component_mut(a)?.self_int -= 1;
                g.components.insert(new_id, Component::new(new_id, -1));
                g.add_edge(a, new_id, 1)?;
            }
            BlowupCenter::Edge(a, b) => {
                g.component(a)?;
                g.component(b)?;
                let key = edge_key(a, b);
                let mult = g.edges.get(&key).copied().unwrap_or(0);
                if a == b || mult == 0 {
                    return Err(GraphError::ZeroMultiplicity(a, b));
                }
                if mult == 1 {
                    g.edges.remove(&key);
                } else {
                    g.edges.insert(key, mult - 1);
                }
                g.component_mut(a)?.self_int -= 1;
                g.component_mut(b)?.self_int -= 1;
                g.components.insert(new_id, Component::new(new_id, -1));
                g.add_edge(a, new_id, 1)?;
                g.add_edge(b, new_id, 1)?;
            }
        }
        Ok((g, new_id))
    }

    /// Contracts a smooth rational (-1)-curve.
    pub fn blowdown(&self, id: ComponentId) -> Result<DualGraph, GraphError> {
        let c = self.component(id)?;
        if !c.is_minus_one() {
            return Err(GraphError::NotContractible {
                id,
                self_int: c.self_int,
                genus_defect: c.genus_defect,
            });
        }
        let nbrs = self.neighbors(id);
        let mut g = self.clone();
        g.components.remove(&id);
        g.edges.retain(|&(a, b), _| a != id && b != id);
        for (i, &(u, mu)) in nbrs.iter().enumerate() {
            let cu = g.component_mut(u)?;
            cu.self_int += i64::from(mu) * i64::from(mu);
            cu.genus_defect += mu * (mu - 1) / 2;
            for &(v, mv) in &nbrs[i + 1..] {
                g.add_edge(u, v, mu * mv)?;
            }
        }
        Ok(g)
    }

    /// (-1)-curves whose contraction keeps every genus defect at zero.
    fn snc_contractible(&self) -> Vec<ComponentId> {
        self.components
            .values()
            .filter(|c| c.is_minus_one())
            .filter(|c| self.neighbors(c.id).iter().all(|&(_, m)| m == 1))
            .map(|c| c.id)
            .collect()
    }

    /// Contracts (-1)-curves greedily, lowest id first, and reports whether nothing remains.
    pub fn contracts_to_smooth_point(&self) -> bool {
        let mut g = self.clone();
        loop {
            if g.is_empty() {
                return true;
            }
            match g.snc_contractible().first() {
                Some(&id) => g = g.blowdown(id).expect("eligible curve"),
                None => return false,
            }
        }
    }

    /// True when `-Q` is positive definite; the empty graph counts as definite.
    pub fn is_negative_definite(&self) -> bool {
        is_positive_definite(&self.intersection_matrix().negated())
    }

    pub fn branching_number(&self, id: ComponentId) -> Result<u32, GraphError> {
        self.component(id)?;
        Ok(self.neighbors(id).iter().map(|&(_, m)| m).sum())
    }

    /// `K . C` summed over `subset`, for curves of arithmetic genus equal to their genus defect.
    pub fn k_dot(&self, subset: &[ComponentId]) -> Result<i64, GraphError> {
        subset.iter().try_fold(0i64, |acc, &id| {
            let c = self.component(id)?;
            Ok(acc - c.self_int - 2 + 2 * i64::from(c.genus_defect))
        })
    }

    /// `K . C` summed over every component.
    pub fn k_dot_all(&self) -> i64 {
        self.k_dot(&self.ids()).expect("own ids")
    }

    /// (-1)-curves meeting at most two other components, each transversally once.
    pub fn superfluous_minus_one(&self) -> Vec<ComponentId> {
        self.components
            .values()
            .filter(|c| c.is_minus_one())
            .filter(|c| {
                let n = self.neighbors(c.id);
                n.len() <= 2 && n.iter().all(|&(_, m)| m == 1)
            })
            .map(|c| c.id)
            .collect()
    }

    /// Maximal twigs, each read from its tip, ordered by tip id.
    ///
    /// A connected component that is itself a rational chain has no canonical tip, so any
    /// such component makes this an error.
    pub fn maximal_twigs(&self) -> Result<Vec<Twig>, GraphError> {
        for part in self.connected_components() {
            if self.induced(&part).chain_order().is_some() {
                return Err(GraphError::WholeGraphIsChain);
            }
        }
        let beta = |id: ComponentId| -> u32 { self.neighbors(id).iter().map(|&(_, m)| m).sum() };
        let rational = |id: ComponentId| self.components[&id].genus_defect == 0;
        let mut twigs = Vec::new();
        for &tip in self.components.keys() {
            if beta(tip) != 1 || !rational(tip) {
                continue;
            }
            let mut ids = vec![tip];
            let mut prev = tip;
            let mut cur = self.neighbors(tip)[0].0;
            loop {
                let nbrs = self.neighbors(cur);
                let inner = beta(cur) == 2 && nbrs.len() == 2 && rational(cur);
                if !inner {
                    break;
                }
                ids.push(cur);
                let next = nbrs.iter().map(|&(w, _)| w).find(|&w| w != prev).expect("two neighbors");
                prev = cur;
                cur = next;
            }
            let chain = Chain::new(ids.iter().map(|id| -self.components[id].self_int).collect());
            twigs.push(Twig { ids, chain });
        }
        Ok(twigs)
    }

    /// Relabels ids to `0..n` following `order`, which must list every component once.
    pub fn relabeled(&self, order: &[ComponentId]) -> Result<DualGraph, GraphError> {
        let map: BTreeMap<ComponentId, ComponentId> = order
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, ComponentId(i as u32)))
            .collect();
        for id in order {
            self.component(*id)?;
        }
        if let Some(&missing) = self.components.keys().find(|id| !map.contains_key(id)) {
            return Err(GraphError::UnknownComponent(missing));
        }
        let comps = order.iter().map(|id| {
            let mut c = self.components[id].clone();
            c.id = map[id];
            c
        });
        let edges = self.edges().map(|(a, b, m)| (map[&a], map[&b], m));
        DualGraph::from_parts(comps, edges)
    }
}

/// `det(-Q)`; the empty graph has discriminant 1.
pub fn discriminant(g: &DualGraph) -> BigInt {
    determinant(&g.intersection_matrix().negated())
}
