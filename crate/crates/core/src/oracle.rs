//! Finite-type character theory used to cross-check the path model: the
//! Weyl dimension formula, Freudenthal multiplicities and Klimyk's rule.
//!
//! Nothing here touches paths or root operators.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::cartan::{RealRoot, RootSystem};
use crate::error::{Error, Result};
use crate::multiset::WeightMultiset;
use crate::rational::Rational;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub highest: Weight,
    pub mults: WeightMultiset,
    pub dim: u64,
}

#[derive(Serialize)]
struct TableDoc<'a> {
    highest: &'a Weight,
    dim: u64,
    weights: Vec<(&'a Weight, u64)>,
}

impl CharacterTable {
    pub fn to_json(&self) -> String {
        let doc = TableDoc { highest: &self.highest, dim: self.dim, weights: self.mults.iter().collect() };
        serde_json::to_string_pretty(&doc).expect("table serialization is infallible")
    }
}

/// Precomputed bilinear data for one finite-type system.
struct Forms<'a> {
    rs: &'a RootSystem,
    /// `(w_i, w_j)` on fundamental weights.
    gram: Vec<Vec<Rational>>,
    /// Column `j` holds the root coordinates of `w_j`.
    inv_cartan: Vec<Vec<Rational>>,
    positive: Vec<RealRoot>,
}

impl<'a> Forms<'a> {
    fn new(rs: &'a RootSystem) -> Result<Self> {
        if !rs.is_finite() {
            return Err(Error::NotFiniteType);
        }
        let n = rs.rank();
        let unit = |j: usize| {
            let mut e = Weight::zero(n);
            e.0[j] = 1;
            e.to_rational()
        };
        let inv_cartan: Vec<Vec<Rational>> =
            (0..n).map(|j| rs.weight_to_root_coords(&unit(j))).collect::<Result<_>>()?;
        let gram = (0..n)
            .map(|i| (0..n).map(|j| rs.weight_form(&unit(i), &unit(j))).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let positive = rs.positive_real_roots(None)?.roots;
        Ok(Forms { rs, gram, inv_cartan, positive })
    }

    fn form(&self, x: &[i64], y: &[i64]) -> Rational {
        let mut acc = Rational::ZERO;
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                acc += &self.gram[i][j] * &Rational::from(xi * yj);
            }
        }
        acc
    }

    /// `(chi, beta) = sum_k chi_k d_k b_k`.
    fn form_root(&self, chi: &[i64], beta: &RealRoot) -> Rational {
        let d = self.rs.symmetrizer();
        chi.iter()
            .zip(&beta.root_coords)
            .enumerate()
            .filter(|(_, (c, b))| **c != 0 && **b != 0)
            .map(|(k, (c, b))| &d[k] * &Rational::from(c * b))
            .sum()
    }

    /// Whether `hi - lo` is a non-negative integral combination of simple roots.
    fn dominates(&self, hi: &Weight, lo: &Weight) -> bool {
        let diff = hi - lo;
        (0..self.rs.rank()).all(|k| {
            let q: Rational = diff
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(j, c)| &self.inv_cartan[j][k] * &Rational::from(*c))
                .sum();
            q.is_integer() && !q.is_negative()
        })
    }

    /// Dominant conjugate and the number of reflections used.
    fn dominate(&self, chi: &Weight) -> (Weight, usize) {
        let mut cur = chi.0.clone();
        let mut steps = 0;
        while let Some(i) = cur.iter().position(|&c| c < 0) {
            self.rs.reflect_simple_int(&mut cur, i);
            steps += 1;
        }
        (Weight(cur), steps)
    }
}

fn require_dominant(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    rs.check_rank(lambda.rank())?;
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.to_string()))
    }
}

/// `prod_{beta > 0} (lambda + rho, beta) / (rho, beta)`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<u64> {
    let forms = Forms::new(rs)?;
    require_dominant(rs, lambda)?;
    Ok(weyl_dim_with(&forms, lambda))
}

fn weyl_dim_with(forms: &Forms<'_>, lambda: &Weight) -> u64 {
    let rho = forms.rs.rho();
    let shifted = lambda + &rho;
    let mut num = Rational::ONE;
    for beta in &forms.positive {
        num = &num * &(&forms.form_root(shifted.coords(), beta) / &forms.form_root(rho.coords(), beta));
    }
    let dim = num.to_i64().expect("Weyl dimension is an integer");
    u64::try_from(dim).expect("Weyl dimension is positive")
}

/// Weight multiplicities of `V(lambda)`.
///
/// Freudenthal's recursion runs over dominant weights in order of depth
/// below `lambda`; other weights take the multiplicity of their dominant
/// conjugate.
pub fn freudenthal_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<CharacterTable> {
    let forms = Forms::new(rs)?;
    require_dominant(rs, lambda)?;
    let n = rs.rank();
    let alphas: Vec<Weight> = (0..n).map(|i| rs.root_to_weight(&RealRoot::simple(n, i).root_coords)).collect();

    // weights of V(lambda) by depth; saturation makes the dominance filter exact
    let mut depth_of: HashMap<Weight, usize> = HashMap::from([(lambda.clone(), 0)]);
    let mut levels: Vec<Vec<Weight>> = vec![vec![lambda.clone()]];
    loop {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for mu in levels.last().unwrap() {
            for a in &alphas {
                let cand = mu - a;
                if depth_of.contains_key(&cand) || !seen.insert(cand.clone()) {
                    continue;
                }
                let (dom, _) = forms.dominate(&cand);
                if forms.dominates(lambda, &dom) {
                    next.push(cand);
                } else {
                    seen.remove(&cand);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        for mu in &next {
            depth_of.insert(mu.clone(), levels.len());
        }
        levels.push(next);
    }

    let rho = rs.rho();
    let lr = lambda + &rho;
    let top = forms.form(lr.coords(), lr.coords());
    let mut dominant_mult: HashMap<Weight, Rational> = HashMap::from([(lambda.clone(), Rational::ONE)]);
    for level in levels.iter().skip(1) {
        for mu in level.iter().filter(|m| m.is_dominant()) {
            let mut sum = Rational::ZERO;
            for beta in &forms.positive {
                let bw = rs.root_to_weight(&beta.root_coords);
                let mut shifted = mu + &bw;
                while depth_of.contains_key(&shifted) {
                    let (dom, _) = forms.dominate(&shifted);
                    let m = &dominant_mult[&dom];
                    sum += m * &forms.form_root(shifted.coords(), beta);
                    shifted = &shifted + &bw;
                }
            }
            let mr = mu + &rho;
            let denom = &top - &forms.form(mr.coords(), mr.coords());
            let mult = &(&Rational::from(2) * &sum) / &denom;
            debug_assert!(mult.is_integer());
            dominant_mult.insert(mu.clone(), mult);
        }
    }

    let mut mults = WeightMultiset::new();
    for mu in depth_of.keys() {
        let (dom, _) = forms.dominate(mu);
        let m = dominant_mult[&dom].to_i64().expect("multiplicities are integers");
        mults.add(mu.clone(), u64::try_from(m).expect("multiplicities are non-negative"));
    }
    let dim = mults.total();
    Ok(CharacterTable { highest: lambda.clone(), mults, dim })
}

/// `V(mu) (x) V(nu)` by Klimyk's rule: each weight `chi` of `V(nu)` sends
/// `mu + chi + rho` to its dominant conjugate with sign `(-1)^l(w)`;
/// singular shifts cancel.
pub fn tensor_decompose_oracle(rs: &RootSystem, mu: &Weight, nu: &Weight) -> Result<WeightMultiset> {
    let table = freudenthal_multiplicities(rs, nu)?;
    require_dominant(rs, mu)?;
    let forms = Forms::new(rs)?;
    let rho = rs.rho();
    let base = mu + &rho;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (chi, m) in table.mults.iter() {
        let (dom, steps) = forms.dominate(&(&base + chi));
        if dom.coords().contains(&0) {
            continue;
        }
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        *acc.entry(&dom - &rho).or_insert(0) += sign * m as i64;
    }
    let mut out = WeightMultiset::new();
    for (lambda, m) in acc {
        assert!(m >= 0, "Klimyk produced a negative multiplicity at {lambda}");
        out.add(lambda, m as u64);
    }
    Ok(out)
}

/// Dominant weights `lambda` with `weyl_dim(lambda) <= budget`, sorted.
///
/// The dimension is strictly increasing in each coordinate, so the search
/// stops along an axis at the first weight over budget.
pub fn dominant_weights_up_to_dim(rs: &RootSystem, budget: u64) -> Result<Vec<Weight>> {
    let forms = Forms::new(rs)?;
    let n = rs.rank();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([Weight::zero(n)]);
    let mut seen = HashSet::from([Weight::zero(n)]);
    while let Some(lam) = queue.pop_front() {
        if weyl_dim_with(&forms, &lam) > budget {
            continue;
        }
        for i in 0..n {
            let mut next = lam.clone();
            next.0[i] += 1;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(lam);
    }
    out.sort();
    Ok(out)
}
