use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::RationalWeight;

use super::{RealRoot, RootSystem, DEFAULT_ITERATION_CAP};

/// A Weyl group element stored as its canonical reduced word (0-based
/// indices, product read left to right, acting rightmost first).
///
/// Only [`RootSystem::reduce_word`] produces values, so equal words mean
/// equal elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement::default()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl RootSystem {
    /// Canonical reduced word: act on `rho`, then strip left descents
    /// greedily (smallest index first).
    pub fn reduce_word(&self, word: &[usize]) -> Result<WeylElement> {
        for &i in word {
            self.check_index(i)?;
        }
        let mut chi = self.rho().0;
        for &i in word.iter().rev() {
            self.reflect_simple_int(&mut chi, i);
        }
        let mut out = Vec::new();
        while let Some(i) = chi.iter().position(|&c| c < 0) {
            self.reflect_simple_int(&mut chi, i);
            out.push(i);
        }
        Ok(WeylElement { word: out })
    }

    pub fn weyl_apply(&self, w: &WeylElement, chi: &RationalWeight) -> RationalWeight {
        self.apply_word(w.word(), chi)
    }

    /// Applies `s_{i_1} ... s_{i_k}` to `chi`, rightmost first.
    pub fn apply_word(&self, word: &[usize], chi: &RationalWeight) -> RationalWeight {
        word.iter().rev().fold(chi.clone(), |acc, &i| self.reflect_simple(&acc, i))
    }

    pub fn weyl_apply_root(&self, w: &WeylElement, beta: &RealRoot) -> RealRoot {
        w.word().iter().rev().fold(beta.clone(), |acc, &i| self.reflect_root(&acc, i))
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let rev: Vec<usize> = w.word().iter().rev().copied().collect();
        self.reduce_word(&rev).expect("indices already validated")
    }

    /// `w1 w2`.
    pub fn compose(&self, w1: &WeylElement, w2: &WeylElement) -> WeylElement {
        let word: Vec<usize> = w1.word().iter().chain(w2.word()).copied().collect();
        self.reduce_word(&word).expect("indices already validated")
    }

    /// `{beta > 0 : w beta < 0}`, read off the reduced word
    /// `s_{i_1} ... s_{i_k}` as `s_{i_k} ... s_{i_{j+1}} alpha_{i_j}`.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<RealRoot> {
        let word = w.word();
        let mut out: Vec<RealRoot> = (0..word.len())
            .map(|j| {
                let simple = RealRoot::simple(self.rank(), word[j]);
                word[j + 1..].iter().fold(simple, |acc, &i| self.reflect_root(&acc, i))
            })
            .collect();
        out.sort();
        out
    }

    /// `(w chi, w)` with `w chi` dominant and `w` of minimal length.
    pub fn dominant_representative(&self, chi: &RationalWeight) -> Result<(RationalWeight, WeylElement)> {
        self.dominant_representative_capped(chi, DEFAULT_ITERATION_CAP)
    }

    pub fn dominant_representative_capped(
        &self,
        chi: &RationalWeight,
        cap: usize,
    ) -> Result<(RationalWeight, WeylElement)> {
        self.check_rank(chi.rank())?;
        let mut cur = chi.clone();
        let mut applied = Vec::new();
        while let Some(i) = cur.coords().iter().position(|c| c.is_negative()) {
            if applied.len() >= cap {
                return Err(Error::IterationCapExceeded(cap));
            }
            cur = self.reflect_simple(&cur, i);
            applied.push(i);
        }
        applied.reverse();
        let w = self.reduce_word(&applied)?;
        debug_assert_eq!(w.length(), applied.len());
        Ok((cur, w))
    }

    /// Longest element; finite type only.
    pub fn longest_element(&self) -> Result<WeylElement> {
        if !self.finite {
            return Err(Error::NotFiniteType);
        }
        let minus_rho = (-&self.rho()).to_rational();
        Ok(self.dominant_representative(&minus_rho)?.1)
    }

    /// All elements of a finite Weyl group, sorted by (length, word).
    pub fn weyl_elements(&self) -> Result<Vec<WeylElement>> {
        if !self.finite {
            return Err(Error::NotFiniteType);
        }
        let mut seen: HashSet<WeylElement> = HashSet::new();
        let mut queue = VecDeque::from([WeylElement::identity()]);
        seen.insert(WeylElement::identity());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let mut word = w.word().to_vec();
                word.push(i);
                let next = self.reduce_word(&word)?;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut all: Vec<WeylElement> = seen.into_iter().collect();
        all.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word().cmp(b.word())));
        Ok(all)
    }
}
