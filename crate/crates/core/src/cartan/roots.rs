use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weight::{RationalWeight, Weight};

use super::RootSystem;

/// A real root `beta = sum b_j alpha_j` together with its coroot
/// `beta^v = sum c_j alpha_j^v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealRoot {
    pub root_coords: Vec<i64>,
    pub coroot_coords: Vec<i64>,
    pub positive: bool,
}

impl RealRoot {
    pub fn simple(rank: usize, i: usize) -> RealRoot {
        let mut e = vec![0; rank];
        e[i] = 1;
        RealRoot { root_coords: e.clone(), coroot_coords: e, positive: true }
    }

    pub fn rank(&self) -> usize {
        self.root_coords.len()
    }

    pub fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }

    /// Index `i` if this root is `alpha_i`.
    pub fn simple_index(&self) -> Option<usize> {
        if self.height() != 1 || !self.positive {
            return None;
        }
        self.root_coords.iter().position(|&b| b == 1)
    }

    /// `<chi, beta^v>`, unchecked rank.
    pub fn pair(&self, chi: &RationalWeight) -> Rational {
        let mut acc = Rational::ZERO;
        for (c, x) in self.coroot_coords.iter().zip(chi.coords()) {
            if *c != 0 && !x.is_zero() {
                acc += &Rational::from(*c) * x;
            }
        }
        acc
    }

    pub fn pair_int(&self, chi: &Weight) -> i64 {
        self.coroot_coords.iter().zip(chi.coords()).map(|(c, x)| c * x).sum()
    }

    pub fn negate(&self) -> RealRoot {
        RealRoot {
            root_coords: self.root_coords.iter().map(|b| -b).collect(),
            coroot_coords: self.coroot_coords.iter().map(|c| -c).collect(),
            positive: !self.positive,
        }
    }

    fn sort_key(&self) -> (i64, &[i64]) {
        (self.height(), &self.root_coords)
    }
}

impl PartialOrd for RealRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Positive real roots, complete in finite type, otherwise bounded by a
/// height cutoff that is carried along so reports can state it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<RealRoot>,
    pub height_cutoff: Option<u32>,
}

impl RootSet {
    pub fn is_complete(&self) -> bool {
        self.height_cutoff.is_none()
    }
}

impl Deref for RootSet {
    type Target = [RealRoot];
    fn deref(&self) -> &[RealRoot] {
        &self.roots
    }
}

impl RootSystem {
    /// `s_i beta`, with the coroot transported by the same reflection.
    pub fn reflect_root(&self, beta: &RealRoot, i: usize) -> RealRoot {
        let n = self.rank();
        let p: i64 = (0..n).map(|j| beta.root_coords[j] * self.cartan[i][j]).sum();
        let q: i64 = (0..n).map(|j| beta.coroot_coords[j] * self.cartan[j][i]).sum();
        let mut b = beta.root_coords.clone();
        b[i] -= p;
        let mut c = beta.coroot_coords.clone();
        c[i] -= q;
        let positive = b.iter().any(|&x| x > 0);
        RealRoot { root_coords: b, coroot_coords: c, positive }
    }

    /// Fundamental-weight coordinates of the root.
    pub fn root_weight(&self, beta: &RealRoot) -> Weight {
        self.root_to_weight(&beta.root_coords)
    }

    /// The real root with root coordinates `b`, found by descending to a
    /// simple root and transporting its coroot back up.
    pub fn real_root(&self, b: &[i64]) -> Result<RealRoot> {
        self.check_rank(b.len())?;
        if b.iter().all(|&x| x <= 0) && b.iter().any(|&x| x < 0) {
            let neg: Vec<i64> = b.iter().map(|x| -x).collect();
            return Ok(self.real_root(&neg)?.negate());
        }
        if b.iter().any(|&x| x < 0) || b.iter().all(|&x| x == 0) {
            return Err(Error::NotARoot);
        }
        let n = self.rank();
        let mut cur = b.to_vec();
        let mut path = Vec::new();
        loop {
            let height: i64 = cur.iter().sum();
            if height == 1 {
                break;
            }
            let i = (0..n)
                .find(|&i| (0..n).map(|j| cur[j] * self.cartan[i][j]).sum::<i64>() > 0)
                .ok_or(Error::NotARoot)?;
            let p: i64 = (0..n).map(|j| cur[j] * self.cartan[i][j]).sum();
            cur[i] -= p;
            if cur.iter().any(|&x| x < 0) {
                return Err(Error::NotARoot);
            }
            path.push(i);
            if path.len() > 100_000 {
                return Err(Error::NotARoot);
            }
        }
        let k = cur.iter().position(|&x| x == 1).ok_or(Error::NotARoot)?;
        let mut root = RealRoot::simple(n, k);
        for &i in path.iter().rev() {
            root = self.reflect_root(&root, i);
        }
        debug_assert_eq!(root.root_coords, b);
        Ok(root)
    }

    /// Positive real roots by breadth-first orbit closure of the simple
    /// roots under height-increasing simple reflections.
    ///
    /// Finite type needs no cutoff; otherwise a cutoff is mandatory.
    pub fn positive_real_roots(&self, height_cutoff: Option<u32>) -> Result<RootSet> {
        if !self.finite && height_cutoff.is_none() {
            return Err(Error::CutoffRequired);
        }
        let n = self.rank();
        let limit = height_cutoff.map(i64::from);
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<RealRoot> = VecDeque::new();
        let mut out = Vec::new();
        if limit.is_none_or(|h| h >= 1) {
            for i in 0..n {
                let r = RealRoot::simple(n, i);
                seen.insert(r.root_coords.clone());
                queue.push_back(r);
            }
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let p: i64 = (0..n).map(|j| beta.root_coords[j] * self.cartan[i][j]).sum();
                if p >= 0 {
                    continue;
                }
                let next = self.reflect_root(&beta, i);
                if limit.is_some_and(|h| next.height() > h) || seen.contains(&next.root_coords) {
                    continue;
                }
                seen.insert(next.root_coords.clone());
                queue.push_back(next);
            }
            // orbit elements of simple roots are real; the norm check guards the form
            debug_assert!(self.root_form(&beta.root_coords, &beta.root_coords).is_positive());
            out.push(beta);
        }
        out.sort();
        Ok(RootSet { roots: out, height_cutoff: if self.finite { None } else { height_cutoff } })
    }
}
