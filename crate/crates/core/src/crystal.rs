//! `B(pi)` by operator closure, characters and tensor decomposition.

use std::collections::HashSet;
use std::fmt::Write as _;

use indexmap::IndexSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::RootSystem;
use crate::error::{Error, Result};
use crate::multiset::WeightMultiset;
use crate::path::Path;
use crate::rootops::{lower, raise};
use crate::weight::Weight;

/// Default number of raising steps before `highest_path` gives up.
pub const DEFAULT_RAISE_CAP: usize = 1_000_000;

/// Bounds on crystal generation. A bound that rejects a candidate sets the
/// crystal's `truncated` flag.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_nodes: Option<usize>,
    pub max_depth: Option<usize>,
    /// Bound on `|#f - #e|` along the generating walk, i.e. on the height
    /// of `root(1) - node(1)` in the root lattice.
    pub weight_height_bound: Option<u64>,
}

impl Limits {
    pub fn none() -> Self {
        Limits::default()
    }

    pub fn nodes(max_nodes: usize) -> Self {
        Limits { max_nodes: Some(max_nodes), ..Limits::default() }
    }

    pub fn is_unbounded(&self) -> bool {
        self.max_nodes.is_none() && self.max_depth.is_none() && self.weight_height_bound.is_none()
    }
}

/// A generated crystal; `edges` holds `(source, i, target)` with
/// `f_i(source) = target`, sorted.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    root: Path,
    nodes: IndexSet<Path>,
    edges: Vec<(usize, usize, usize)>,
    truncated: bool,
    limits: Limits,
}

/// Character of a crystal, flagged when generation was cut short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub weights: WeightMultiset,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorDecomposition {
    pub components: WeightMultiset,
    pub truncated: bool,
}

impl TensorDecomposition {
    /// The components, or `Truncated` if the second factor's crystal was cut.
    pub fn complete(self) -> Result<WeightMultiset> {
        if self.truncated {
            Err(Error::Truncated)
        } else {
            Ok(self.components)
        }
    }
}

impl CrystalGraph {
    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &Path> {
        self.nodes.iter()
    }

    pub fn node(&self, id: usize) -> &Path {
        &self.nodes[id]
    }

    pub fn index_of(&self, path: &Path) -> Option<usize> {
        self.nodes.get_index_of(path)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Nodes on which no `e_alpha` is defined.
    pub fn highest_nodes(&self, rs: &RootSystem) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| (0..rs.rank()).all(|i| raise(rs, &self.nodes[k], i).is_none()))
            .collect()
    }

    /// Re-derives every edge from the operators.
    pub fn edges_consistent(&self, rs: &RootSystem) -> bool {
        self.edges.iter().all(|&(s, i, t)| lower(rs, &self.nodes[s], i).as_ref() == Some(&self.nodes[t]))
    }

    /// Endpoint multiset of all nodes.
    pub fn character(&self) -> Character {
        let weights = self
            .nodes
            .iter()
            .map(|p| (p.endpoint().to_weight().expect("model paths end on the lattice"), 1))
            .collect();
        Character { weights, truncated: self.truncated }
    }

    pub fn to_dot(&self, rs: &RootSystem) -> String {
        let mut out = String::from("digraph crystal {\n");
        if self.truncated {
            out.push_str("  // truncated by generation limits\n");
        }
        for (k, p) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{k} [label=\"{}\"];", p.endpoint());
        }
        for &(s, i, t) in &self.edges {
            let _ = writeln!(out, "  n{s} -> n{t} [label=\"{}\"];", i + rs.label_base());
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, rs: &RootSystem) -> String {
        #[derive(Serialize)]
        struct Node<'a> {
            id: usize,
            weight: crate::weight::RationalWeight,
            path: &'a Path,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            root: &'a Path,
            truncated: bool,
            limits: Limits,
            nodes: Vec<Node<'a>>,
            edges: Vec<(usize, usize, usize)>,
        }
        let doc = Doc {
            root: &self.root,
            truncated: self.truncated,
            limits: self.limits,
            nodes: self.nodes.iter().enumerate().map(|(id, p)| Node { id, weight: p.endpoint(), path: p }).collect(),
            edges: self.edges.iter().map(|&(s, i, t)| (s, i + rs.label_base(), t)).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("crystal serialization is infallible")
    }
}

/// Breadth-first closure of `{pi}` under every defined `f_i` and `e_i`.
///
/// Each BFS level is expanded in parallel; insertion is sequential in
/// (frontier order, index ascending, `f` before `e`), so the node order is
/// independent of scheduling.
pub fn generate_crystal(rs: &RootSystem, pi: &Path, limits: Limits) -> Result<CrystalGraph> {
    rs.check_rank(pi.rank())?;
    if !pi.is_integral(rs) {
        return Err(Error::NotIntegral);
    }
    if !rs.is_finite() && limits.is_unbounded() {
        return Err(Error::LimitsRequired);
    }
    let rank = rs.rank();
    let mut nodes: IndexSet<Path> = IndexSet::new();
    let mut heights: Vec<i64> = Vec::new();
    let mut edges: HashSet<(usize, usize, usize)> = HashSet::new();
    let mut truncated = false;
    nodes.insert(pi.clone());
    heights.push(0);
    let mut frontier = vec![0usize];
    let mut depth = 0usize;
    while !frontier.is_empty() {
        let expanded: Vec<Vec<(Option<Path>, Option<Path>)>> = frontier
            .par_iter()
            .with_min_len(16)
            .map(|&k| {
                let p = &nodes[k];
                (0..rank).map(|i| (lower(rs, p, i), raise(rs, p, i))).collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&k, results) in frontier.iter().zip(expanded) {
            for (i, (down, up)) in results.into_iter().enumerate() {
                for (candidate, step) in [(down, 1i64), (up, -1i64)] {
                    let Some(candidate) = candidate else { continue };
                    let target = match nodes.get_index_of(&candidate) {
                        Some(t) => Some(t),
                        None => {
                            let h = heights[k] + step;
                            let blocked = limits.max_depth.is_some_and(|d| depth + 1 > d)
                                || limits.max_nodes.is_some_and(|n| nodes.len() >= n)
                                || limits.weight_height_bound.is_some_and(|b| h.unsigned_abs() > b);
                            if blocked {
                                truncated = true;
                                None
                            } else {
                                let (t, _) = nodes.insert_full(candidate);
                                heights.push(h);
                                next.push(t);
                                Some(t)
                            }
                        }
                    };
                    if let Some(t) = target {
                        edges.insert(if step == 1 { (k, i, t) } else { (t, i, k) });
                    }
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Ok(CrystalGraph { root: pi.clone(), nodes, edges, truncated, limits })
}

/// Raises with the smallest applicable index until no `e_alpha` applies.
/// Returns the dominant path and the indices used, in application order.
pub fn highest_path(rs: &RootSystem, eta: &Path) -> Result<(Path, Vec<usize>)> {
    highest_path_capped(rs, eta, DEFAULT_RAISE_CAP)
}

pub fn highest_path_capped(rs: &RootSystem, eta: &Path, cap: usize) -> Result<(Path, Vec<usize>)> {
    rs.check_rank(eta.rank())?;
    if !eta.is_integral(rs) {
        return Err(Error::NotIntegral);
    }
    let mut cur = eta.clone();
    let mut word = Vec::new();
    'outer: loop {
        for i in 0..rs.rank() {
            if let Some(up) = raise(rs, &cur, i) {
                if word.len() >= cap {
                    return Err(Error::NonTerminating(cap));
                }
                cur = up;
                word.push(i);
                continue 'outer;
            }
        }
        return Ok((cur, word));
    }
}

pub fn is_dominant_path(pi: &Path) -> bool {
    pi.is_dominant()
}

/// Components of `V(pi(1)) (x) V(pi'(1))`: the `eta` in `B(pi')` with
/// `pi * eta` dominant, counted at `pi(1) + eta(1)`.
pub fn decompose_tensor(rs: &RootSystem, pi: &Path, pi2: &Path, limits: Limits) -> Result<TensorDecomposition> {
    for p in [pi, pi2] {
        if !p.is_dominant() {
            return Err(Error::NotDominant(p.endpoint().to_string()));
        }
    }
    let crystal = generate_crystal(rs, pi2, limits)?;
    let mu = pi.endpoint();
    let mut components = WeightMultiset::new();
    for eta in crystal.nodes() {
        let mut acc = mu.clone();
        let mut dominant = true;
        for s in eta.segments() {
            acc = &acc + s;
            if !acc.is_dominant() {
                dominant = false;
                break;
            }
        }
        if dominant {
            components.add(acc.to_weight().ok_or(Error::NotIntegral)?, 1);
        }
    }
    Ok(TensorDecomposition { components, truncated: crystal.is_truncated() })
}

/// `decompose_tensor` on straight paths.
pub fn decompose_weights(rs: &RootSystem, mu: &Weight, nu: &Weight, limits: Limits) -> Result<TensorDecomposition> {
    rs.check_rank(mu.rank())?;
    rs.check_rank(nu.rank())?;
    decompose_tensor(rs, &Path::straight_int(mu), &Path::straight_int(nu), limits)
}
