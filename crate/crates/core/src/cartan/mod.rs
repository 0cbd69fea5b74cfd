//! Generalized Cartan matrices and the root-system data derived from them.
//!
//! Convention: `cartan[i][j] = <alpha_j, alpha_i^v>`, so the
//! fundamental-weight coordinates of `alpha_j` are column `j`.

mod builtin;
mod roots;
mod weyl;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weight::{RationalWeight, Weight};

pub use roots::{RealRoot, RootSet};
pub use weyl::WeylElement;

/// Default bound on the reflections performed while searching for a
/// dominant representative.
pub const DEFAULT_ITERATION_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    name: Option<String>,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<Rational>,
    finite: bool,
    label_base: usize,
    simple_roots: Vec<RationalWeight>,
}

/// JSON input form: `{"name": "G2", "cartan": [[2,-3],[-1,2]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub cartan: Vec<Vec<i64>>,
}

impl RootSystem {
    /// Validates `matrix` as a symmetrizable generalized Cartan matrix.
    pub fn new(matrix: Vec<Vec<i64>>, name: Option<String>) -> Result<RootSystem> {
        let rank = matrix.len();
        if rank == 0 {
            return Err(Error::NotGcm("empty matrix".into()));
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != rank) {
            return Err(Error::NotGcm(format!("row of length {} in a rank {rank} matrix", row.len())));
        }
        for i in 0..rank {
            if matrix[i][i] != 2 {
                return Err(Error::NotGcm(format!("diagonal entry A[{i}][{i}] = {}", matrix[i][i])));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(Error::NotGcm(format!("positive off-diagonal entry A[{i}][{j}]")));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(Error::NotGcm(format!("asymmetric zero pattern at ({i}, {j})")));
                }
            }
        }
        let symmetrizer = symmetrize(&matrix)?;
        let finite = positive_definite(&matrix, &symmetrizer);
        let simple_roots = (0..rank)
            .map(|j| RationalWeight((0..rank).map(|i| Rational::from(matrix[i][j])).collect()))
            .collect();
        Ok(RootSystem { name, cartan: matrix, symmetrizer, finite, label_base: 1, simple_roots })
    }

    /// A built-in type: `A3`, `B2`, `G2`, `E8`, `A1~`, `C3^(1)`, ...
    pub fn builtin(name: &str) -> Result<RootSystem> {
        builtin::build(name)
    }

    pub fn from_spec(spec: RootSystemSpec) -> Result<RootSystem> {
        RootSystem::new(spec.cartan, spec.name)
    }

    pub fn from_json(text: &str) -> Result<RootSystem> {
        RootSystem::from_spec(serde_json::from_str(text)?)
    }

    pub fn spec(&self) -> RootSystemSpec {
        RootSystemSpec { name: self.name.clone(), cartan: self.cartan.clone() }
    }

    pub(crate) fn with_label_base(mut self, base: usize) -> Self {
        self.label_base = base;
        self
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[Rational] {
        &self.symmetrizer
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// Offset between internal 0-based indices and user-facing labels:
    /// 1 for finite and custom systems, 0 for affine built-ins (`alpha_0`).
    pub fn label_base(&self) -> usize {
        self.label_base
    }

    /// Fundamental-weight coordinates of `alpha_i`.
    pub fn simple_root(&self, i: usize) -> &RationalWeight {
        &self.simple_roots[i]
    }

    /// The weight `rho` with every coordinate 1.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn check_rank(&self, found: usize) -> Result<()> {
        if found == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch { expected: self.rank(), found })
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, rank: self.rank() })
        }
    }

    /// Fundamental-weight coordinates of `sum_j b_j alpha_j`.
    pub fn root_to_weight(&self, b: &[i64]) -> Weight {
        Weight(
            (0..self.rank())
                .map(|i| b.iter().enumerate().map(|(j, bj)| bj * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// Symmetrized form on root coordinates: `(alpha_i, alpha_j) = d_i A[i][j]`.
    pub fn root_form(&self, b: &[i64], c: &[i64]) -> Rational {
        let mut acc = Rational::ZERO;
        for i in 0..self.rank() {
            if b[i] == 0 {
                continue;
            }
            let row: i64 = (0..self.rank()).map(|j| self.cartan[i][j] * c[j]).sum();
            acc += &self.symmetrizer[i] * &Rational::from(b[i] * row);
        }
        acc
    }

    /// `<chi, beta^v>`.
    pub fn pairing(&self, chi: &RationalWeight, beta: &RealRoot) -> Result<Rational> {
        self.check_rank(chi.rank())?;
        self.check_rank(beta.rank())?;
        Ok(beta.pair(chi))
    }

    /// `chi - <chi, beta^v> beta`.
    pub fn reflect(&self, chi: &RationalWeight, beta: &RealRoot) -> Result<RationalWeight> {
        let p = self.pairing(chi, beta)?;
        let root = self.root_to_weight(&beta.root_coords).to_rational();
        Ok(chi.sub_scaled(&p, &root))
    }

    /// Simple reflection `s_i`.
    pub fn reflect_simple(&self, chi: &RationalWeight, i: usize) -> RationalWeight {
        let p = chi[i].clone();
        if p.is_zero() {
            return chi.clone();
        }
        chi.sub_scaled(&p, &self.simple_roots[i])
    }

    pub(crate) fn reflect_simple_int(&self, chi: &mut [i64], i: usize) {
        let p = chi[i];
        if p != 0 {
            for (k, c) in chi.iter_mut().enumerate() {
                *c -= p * self.cartan[k][i];
            }
        }
    }

    /// Root-lattice coordinates of a weight; finite type only (the Cartan
    /// matrix must be invertible).
    pub fn weight_to_root_coords(&self, chi: &RationalWeight) -> Result<Vec<Rational>> {
        if !self.finite {
            return Err(Error::NotFiniteType);
        }
        self.check_rank(chi.rank())?;
        let n = self.rank();
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = self.cartan[i].iter().map(|&a| Rational::from(a)).collect();
                row.push(chi[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero()).expect("finite-type Cartan matrix is invertible");
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        Ok(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }

    /// Invariant form `(chi, psi)` on weights; finite type only.
    pub fn weight_form(&self, chi: &RationalWeight, psi: &RationalWeight) -> Result<Rational> {
        let q = self.weight_to_root_coords(chi)?;
        Ok(q.iter().enumerate().map(|(k, qk)| qk * &(&self.symmetrizer[k] * &psi[k])).sum())
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        word.iter().map(|i| (i + self.label_base).to_string()).collect::<Vec<_>>().join(".")
    }

    /// Parses a dot-separated word of user-facing labels; `e` or empty is
    /// the identity.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "id" {
            return Ok(Vec::new());
        }
        t.split('.')
            .map(|s| {
                let label: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad word {text:?}")))?;
                let index = label
                    .checked_sub(self.label_base)
                    .ok_or(Error::IndexOutOfRange { index: label, rank: self.rank() })?;
                self.check_index(index)?;
                Ok(index)
            })
            .collect()
    }
}

/// Positive `d` with `d_i A[i][j] = d_j A[j][i]`, propagated along the
/// Dynkin graph from `d = 1` at the first node of each component.
fn symmetrize(a: &[Vec<i64>]) -> Result<Vec<Rational>> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::ONE);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                let dj = &di * &Rational::new(a[i][j], a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => return Err(Error::NotSymmetrizable),
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(Option::unwrap).collect();
    for i in 0..n {
        for j in 0..n {
            if &d[i] * &Rational::from(a[i][j]) != &d[j] * &Rational::from(a[j][i]) {
                return Err(Error::NotSymmetrizable);
            }
        }
    }
    Ok(d)
}

/// Positive-definiteness of the symmetrized matrix via exact symmetric
/// elimination: all pivots must be positive.
fn positive_definite(a: &[Vec<i64>], d: &[Rational]) -> bool {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| &d[i] * &Rational::from(a[i][j])).collect()).collect();
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let delta = &f * &m[k][j];
                m[i][j] = &m[i][j] - &delta;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rw;

    #[test]
    fn builds_rank_one_and_g2() {
        let a1 = RootSystem::new(vec![vec![2]], None).unwrap();
        assert!(a1.is_finite());
        let g2 = RootSystem::new(vec![vec![2, -1], vec![-3, 2]], Some("G2".into())).unwrap();
        assert!(g2.is_finite());
        assert_eq!(g2.rank(), 2);
    }

    #[test]
    fn affine_a1_is_not_finite() {
        let rs = RootSystem::new(vec![vec![2, -2], vec![-2, 2]], None).unwrap();
        assert!(!rs.is_finite());
    }

    #[test]
    fn hyperbolic_is_not_finite() {
        let rs = RootSystem::new(vec![vec![2, -3], vec![-3, 2]], None).unwrap();
        assert!(!rs.is_finite());
    }

    #[test]
    fn rejects_non_gcm() {
        assert!(matches!(RootSystem::new(vec![vec![1]], None), Err(Error::NotGcm(_))));
        assert!(matches!(RootSystem::new(vec![vec![2, 1], vec![-1, 2]], None), Err(Error::NotGcm(_))));
        assert!(matches!(RootSystem::new(vec![vec![2, 0], vec![-1, 2]], None), Err(Error::NotGcm(_))));
        assert!(matches!(RootSystem::new(vec![vec![2, -1]], None), Err(Error::NotGcm(_))));
    }

    #[test]
    fn rejects_non_symmetrizable() {
        // cycle with inconsistent ratios: d1/d0 = 2, d2/d1 = 1, d0/d2 = 1
        let m = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert!(matches!(RootSystem::new(m, None), Err(Error::NotSymmetrizable)));
    }

    #[test]
    fn symmetrizer_property_holds() {
        for name in ["A3", "B3", "C3", "D4", "E6", "E7", "E8", "F4", "G2", "A1~", "B3~", "G2~"] {
            let rs = RootSystem::builtin(name).unwrap();
            let a = rs.cartan();
            let d = rs.symmetrizer();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    assert_eq!(&d[i] * &Rational::from(a[i][j]), &d[j] * &Rational::from(a[j][i]), "{name}");
                }
            }
        }
    }

    #[test]
    fn pairing_and_reflection_in_a2() {
        let rs = RootSystem::builtin("A2").unwrap();
        let a1 = RealRoot::simple(2, 0);
        let chi = rw![1, 0];
        assert_eq!(rs.pairing(&chi, &a1).unwrap(), Rational::ONE);
        let theta = rs.real_root(&[1, 1]).unwrap();
        assert_eq!(theta.coroot_coords, vec![1, 1]);
        assert_eq!(rs.pairing(&chi, &theta).unwrap(), Rational::ONE);
        assert_eq!(rs.reflect(&chi, &a1).unwrap(), rw![-1, 1]);
        let fixed = rw![0, 5];
        assert_eq!(rs.reflect(&fixed, &a1).unwrap(), fixed);
        let twice = rs.reflect(&rs.reflect(&rw![3, -2], &theta).unwrap(), &theta).unwrap();
        assert_eq!(twice, rw![3, -2]);
        assert!(matches!(rs.pairing(&rw![1], &a1), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn g2_long_root_pairing_matches_orbit_transport() {
        let rs = RootSystem::builtin("G2").unwrap();
        // Oracle: walk W from a simple root until 3a1+a2 appears, carrying
        // the coroot along with the same reflections.
        let mut frontier = vec![(vec![1i64, 0], vec![1i64, 0]), (vec![0, 1], vec![0, 1])];
        let mut found = None;
        for _ in 0..12 {
            let mut next = Vec::new();
            for (b, c) in &frontier {
                if b == &vec![3, 1] {
                    found = Some(c.clone());
                }
                for i in 0..2 {
                    let p: i64 = (0..2).map(|j| b[j] * rs.cartan()[i][j]).sum();
                    let q: i64 = (0..2).map(|j| c[j] * rs.cartan()[j][i]).sum();
                    let mut b2 = b.clone();
                    b2[i] -= p;
                    let mut c2 = c.clone();
                    c2[i] -= q;
                    next.push((b2, c2));
                }
            }
            frontier = next;
            if found.is_some() {
                break;
            }
        }
        let c = found.expect("3a1+a2 lies in the orbit of the simple roots");
        let beta = rs.real_root(&[3, 1]).unwrap();
        assert_eq!(beta.coroot_coords, c);
        let chi = rw![0, 2];
        let expected: i64 = c.iter().zip([0i64, 2]).map(|(x, y)| x * y).sum();
        assert_eq!(rs.pairing(&chi, &beta).unwrap(), Rational::from(expected));
        assert_eq!(expected, 2);
    }

    #[test]
    fn root_coordinates_of_weights() {
        let rs = RootSystem::builtin("A2").unwrap();
        let q = rs.weight_to_root_coords(&rw![1, 0]).unwrap();
        assert_eq!(q, vec![Rational::new(2, 3), Rational::new(1, 3)]);
        assert_eq!(rs.weight_form(&rw![1, 0], &rw![1, 0]).unwrap(), Rational::new(2, 3));
    }

    #[test]
    fn json_spec_round_trip() {
        let rs = RootSystem::from_json(r#"{"name": "mine", "cartan": [[2,-1],[-1,2]]}"#).unwrap();
        assert_eq!(rs.name(), Some("mine"));
        assert!(rs.is_finite());
        let rs2 = RootSystem::from_json(r#"{"cartan": [[2]]}"#).unwrap();
        assert_eq!(rs2.name(), None);
    }

    #[test]
    fn word_labels() {
        let rs = RootSystem::builtin("A2").unwrap();
        assert_eq!(rs.parse_word("1.2.1").unwrap(), vec![0, 1, 0]);
        assert_eq!(rs.format_word(&[0, 1]), "1.2");
        assert!(rs.parse_word("3").is_err());
        assert!(rs.parse_word("0").is_err());
        let aff = RootSystem::builtin("A1~").unwrap();
        assert_eq!(aff.parse_word("0.1").unwrap(), vec![0, 1]);
    }
}
