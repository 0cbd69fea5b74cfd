//! Generalized PRV components: witness paths, the reduction of the
//! simple-root case, and exhaustive enumeration in finite type.
//!
//! For `lambda = v mu + w nu - sum k_i beta_i` with every `alpha_i =
//! v^-1 beta_i` simple, the witness is `pi_mu * f^{k_1}_{alpha_1} ...
//! f^{k_p}_{alpha_p} pi_{v^-1 w nu}`, an extremal path of weight
//! `v^-1 lambda` in `B(pi_mu) * B(pi_nu)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{RealRoot, RootSystem, WeylElement};
use crate::error::{Error, Result, VerifyMode};
use crate::extremal::{criterion_roots, is_extremal, satisfies_criterion, CriterionReport};
use crate::oracle::tensor_decompose_oracle;
use crate::path::Path;
use crate::rational::Rational;
use crate::rootops::lower_k;
use crate::weight::{RationalWeight, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrvCase {
    /// Every `beta_i` simple; finite type only.
    SimpleBeta,
    /// Every `v^-1 beta_i` simple.
    VSide,
    /// Every `w^-1 beta_i` simple.
    WSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrvInstance {
    pub mu: Weight,
    pub nu: Weight,
    pub v: WeylElement,
    pub w: WeylElement,
    pub betas: Vec<RealRoot>,
    pub ks: Vec<i64>,
    pub case: PrvCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrvWitness {
    pub instance: PrvInstance,
    pub lambda: Weight,
    /// The primed instance the simple-root case was reduced to.
    pub reduced: Option<PrvInstance>,
    /// The path lies in `B(pi_a) * B(pi_b)` for `factors = [a, b]`.
    pub factors: [Weight; 2],
    /// Dominant weight of the component the path realizes.
    pub target: Weight,
    /// `x` with `witness_path(1) = x^-1 target`.
    pub transport: WeylElement,
    pub witness_path: Path,
    pub criterion: CriterionReport,
    pub brute_force: Option<bool>,
    pub oracle_confirmed: Option<bool>,
}

impl PrvWitness {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serialization is infallible")
    }

    pub fn from_json(rs: &RootSystem, text: &str) -> Result<PrvWitness> {
        let mut wit: PrvWitness = serde_json::from_str(text)?;
        wit.witness_path = wit.witness_path.with_rank(rs.rank())?;
        Ok(wit)
    }

    fn sort_key(&self) -> impl Ord + '_ {
        let inst = &self.instance;
        (&self.lambda, inst.case, inst.betas.iter().map(|b| &b.root_coords).collect::<Vec<_>>(), &inst.ks, &inst.v, &inst.w)
    }
}

impl PrvInstance {
    /// `k = 0`: the original PRV statement.
    pub fn classic(mu: Weight, nu: Weight, v: WeylElement, w: WeylElement) -> Self {
        PrvInstance { mu, nu, v, w, betas: Vec::new(), ks: Vec::new(), case: PrvCase::VSide }
    }

    /// `v mu + w nu - sum k_i beta_i`.
    pub fn lambda(&self, rs: &RootSystem) -> Weight {
        let mut out = &as_int(rs.weyl_apply(&self.v, &self.mu.to_rational())) + &as_int(rs.weyl_apply(&self.w, &self.nu.to_rational()));
        for (beta, &k) in self.betas.iter().zip(&self.ks) {
            out = &out - &rs.root_weight(beta).scale(k);
        }
        out
    }

    /// `m_i = min(<v mu, beta_i^v>, <w nu, beta_i^v>)`.
    pub fn bounds(&self, rs: &RootSystem) -> Vec<i64> {
        let vmu = as_int(rs.weyl_apply(&self.v, &self.mu.to_rational()));
        let wnu = as_int(rs.weyl_apply(&self.w, &self.nu.to_rational()));
        self.betas.iter().map(|b| b.pair_int(&vmu).min(b.pair_int(&wnu))).collect()
    }

    pub fn validate(&self, rs: &RootSystem) -> Result<()> {
        rs.check_rank(self.mu.rank())?;
        rs.check_rank(self.nu.rank())?;
        for x in [&self.mu, &self.nu] {
            if !x.is_dominant() {
                return Err(Error::NotDominant(x.to_string()));
            }
        }
        for (name, x) in [("v", &self.v), ("w", &self.w)] {
            if rs.reduce_word(x.word())? != *x {
                return Err(Error::CaseInvalid(format!("{name} is not a canonical reduced word")));
            }
        }
        if self.betas.len() != self.ks.len() {
            return Err(Error::CaseInvalid(format!("{} roots but {} values of k", self.betas.len(), self.ks.len())));
        }
        for beta in &self.betas {
            rs.check_rank(beta.rank())?;
            if rs.real_root(&beta.root_coords)? != *beta {
                return Err(Error::NotARoot);
            }
        }
        for i in 0..self.betas.len() {
            for j in i + 1..self.betas.len() {
                if self.betas[j].pair_int(&rs.root_weight(&self.betas[i])) != 0 {
                    return Err(Error::NotOrthogonal(i, j));
                }
            }
        }
        let simple_after = |x: &WeylElement| {
            let inv = rs.inverse(x);
            self.betas.iter().all(|b| rs.weyl_apply_root(&inv, b).simple_index().is_some())
        };
        match self.case {
            PrvCase::SimpleBeta => {
                if !rs.is_finite() {
                    return Err(Error::CaseInvalid("simple-beta requires a finite-type root system".into()));
                }
                if !self.betas.iter().all(|b| b.simple_index().is_some()) {
                    return Err(Error::CaseInvalid("simple-beta requires every beta to be simple".into()));
                }
            }
            PrvCase::VSide if !simple_after(&self.v) => {
                return Err(Error::CaseInvalid("v-side requires every v^-1 beta to be simple".into()))
            }
            PrvCase::WSide if !simple_after(&self.w) => {
                return Err(Error::CaseInvalid("w-side requires every w^-1 beta to be simple".into()))
            }
            _ => {}
        }
        for (index, (&k, bound)) in self.ks.iter().zip(self.bounds(rs)).enumerate() {
            if k < 0 || k > bound {
                return Err(Error::KOutOfBounds { index, k, bound });
            }
        }
        Ok(())
    }
}

fn as_int(chi: RationalWeight) -> Weight {
    chi.to_weight().expect("Weyl images of lattice weights are integral")
}

/// The primed instance of the simple-root case:
/// `lambda' = mu`, `mu' = lambda`, `nu' = -w0 nu`, `v' = v^-1`,
/// `w' = (prod s_{alpha_i}) v^-1 w w0`, `beta'_i = v^-1 beta_i`,
/// `k'_i = <w nu, beta_i^v> - k_i`, handled on the v-side.
pub fn reduce_case_i(rs: &RootSystem, inst: &PrvInstance) -> Result<PrvInstance> {
    if !rs.is_finite() {
        return Err(Error::NotFiniteType);
    }
    let simple: Vec<usize> = inst.betas.iter().map(|b| b.simple_index().ok_or(Error::BetaNotSimple)).collect::<Result<_>>()?;
    let lambda = inst.lambda(rs);
    let w0 = rs.longest_element()?;
    let v_inv = rs.inverse(&inst.v);
    // prod s_{v^-1 beta_i} v^-1 = v^-1 prod s_{beta_i}
    let mut word: Vec<usize> = v_inv.word().to_vec();
    word.extend(simple.iter().copied());
    word.extend(inst.w.word());
    word.extend(w0.word());
    let w_prime = rs.reduce_word(&word)?;
    let nu_prime = as_int(rs.weyl_apply(&w0, &(-&inst.nu).to_rational()));
    let wnu = as_int(rs.weyl_apply(&inst.w, &inst.nu.to_rational()));
    let betas: Vec<RealRoot> = inst.betas.iter().map(|b| rs.weyl_apply_root(&v_inv, b)).collect();
    let ks = inst.betas.iter().zip(&inst.ks).map(|(b, k)| b.pair_int(&wnu) - k).collect();
    let primed = PrvInstance { mu: lambda, nu: nu_prime, v: v_inv, w: w_prime, betas, ks, case: PrvCase::VSide };
    debug_assert_eq!(primed.lambda(rs), inst.mu);
    Ok(primed)
}

/// Segments of `f^{k_1}_{alpha_1} ... f^{k_p}_{alpha_p} pi_z` from the
/// sorted closed form, with the partial sums checked against
/// `theta_i = a_i (z - sum_{j>=i} l_j alpha_j) - sum_{j<i} k_j alpha_j`.
fn closed_form(rs: &RootSystem, z: &RationalWeight, alphas: &[usize], ks: &[i64]) -> Result<Vec<RationalWeight>> {
    let mut items: Vec<(Rational, usize, i64, Rational)> = Vec::new();
    for (&i, &k) in alphas.iter().zip(ks) {
        if k == 0 {
            continue;
        }
        let l = z[i].clone();
        if l.is_zero() {
            return Err(Error::ZeroString { k });
        }
        items.push((&Rational::from(k) / &l, i, k, l));
    }
    items.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    let p = items.len();
    let mut segs = Vec::with_capacity(p + 1);
    let mut prev = Rational::ZERO;
    let mut acc = RationalWeight::zero(rs.rank());
    for q in 0..p {
        let reflected = items[q..].iter().fold(z.clone(), |x, it| rs.reflect_simple(&x, it.1));
        let seg = reflected.scale(&(&items[q].0 - &prev));
        acc = &acc + &seg;
        segs.push(seg);
        prev = items[q].0.clone();

        let mut tail = z.clone();
        for it in &items[q..] {
            tail = tail.sub_scaled(&it.3, rs.simple_root(it.1));
        }
        let mut theta = tail.scale(&items[q].0);
        for it in &items[..q] {
            theta = theta.sub_scaled(&Rational::from(it.2), rs.simple_root(it.1));
        }
        if theta != acc {
            return Err(Error::WitnessMismatch);
        }
    }
    segs.push(z.scale(&(&Rational::ONE - &prev)));
    Ok(segs)
}

/// Builds and checks the witness path; the criterion report must pass.
pub fn build_witness(rs: &RootSystem, inst: &PrvInstance, root_cutoff: Option<u32>) -> Result<PrvWitness> {
    inst.validate(rs)?;
    let lambda = inst.lambda(rs);
    if !lambda.is_dominant() {
        return Err(Error::LambdaNotDominant(lambda.to_string()));
    }
    let (core, reduced, target) = match inst.case {
        PrvCase::SimpleBeta => {
            let primed = reduce_case_i(rs, inst)?;
            primed.validate(rs)?;
            (primed.clone(), Some(primed), inst.mu.clone())
        }
        _ => (inst.clone(), None, lambda.clone()),
    };
    // the w-side is the v-side of V(nu) (x) V(mu)
    let (first, second, x, y) = match core.case {
        PrvCase::WSide => (&core.nu, &core.mu, &core.w, &core.v),
        _ => (&core.mu, &core.nu, &core.v, &core.w),
    };
    let x_inv = rs.inverse(x);
    let z = rs.weyl_apply(&x_inv, &rs.weyl_apply(y, &second.to_rational()));
    let alphas: Vec<usize> = core
        .betas
        .iter()
        .map(|b| rs.weyl_apply_root(&x_inv, b).simple_index().ok_or_else(|| Error::CaseInvalid("transported root is not simple".into())))
        .collect::<Result<_>>()?;

    let tail = Path::new(rs.rank(), closed_form(rs, &z, &alphas, &core.ks)?)?;
    let mut iterated = Path::straight(&z);
    for (&i, &k) in alphas.iter().zip(&core.ks).rev() {
        iterated = lower_k(rs, &iterated, i, k as u64).ok_or(Error::WitnessMismatch)?;
    }
    if iterated != tail {
        return Err(Error::WitnessMismatch);
    }
    let witness_path = Path::straight_int(first).concat(&tail)?;
    if witness_path.endpoint() != rs.weyl_apply(&x_inv, &target.to_rational()) {
        return Err(Error::WitnessMismatch);
    }
    let criterion = satisfies_criterion(rs, &witness_path, &criterion_roots(rs, root_cutoff)?)?;
    if !criterion.passed {
        return Err(Error::VerificationFailed(VerifyMode::Criterion));
    }
    Ok(PrvWitness {
        instance: inst.clone(),
        lambda,
        reduced,
        factors: [first.clone(), second.clone()],
        target,
        transport: x.clone(),
        witness_path,
        criterion,
        brute_force: None,
        oracle_confirmed: None,
    })
}

/// Re-checks a witness; fills `brute_force` or `oracle_confirmed`.
pub fn verify_witness(rs: &RootSystem, wit: &PrvWitness, mode: VerifyMode) -> Result<PrvWitness> {
    let fail = Err(Error::VerificationFailed(mode));
    let mut out = wit.clone();
    let consistent = wit.instance.lambda(rs) == wit.lambda
        && wit.witness_path.endpoint() == rs.weyl_apply(&rs.inverse(&wit.transport), &wit.target.to_rational());
    match mode {
        VerifyMode::Criterion => {
            let roots = criterion_roots(rs, wit.criterion.height_cutoff)?;
            out.criterion = satisfies_criterion(rs, &wit.witness_path, &roots)?;
            if !consistent || !out.criterion.passed {
                return fail;
            }
        }
        VerifyMode::Bruteforce => {
            let (extremal, _) = is_extremal(rs, &wit.witness_path)?;
            let (dom, _) = rs.dominant_representative(&wit.witness_path.endpoint())?;
            let ok = consistent && extremal && dom == wit.target.to_rational();
            out.brute_force = Some(ok);
            if !ok {
                return fail;
            }
        }
        VerifyMode::Oracle => {
            let d = tensor_decompose_oracle(rs, &wit.instance.mu, &wit.instance.nu)?;
            let ok = d.get(&wit.lambda) >= 1;
            out.oracle_confirmed = Some(ok);
            if !ok {
                return fail;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Also try pairwise orthogonal families of up to `max_p` roots.
    pub multi: bool,
    pub max_p: usize,
    /// Keep one witness per `lambda`.
    pub dedupe: bool,
    pub check_oracle: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { multi: false, max_p: 1, dedupe: true, check_oracle: false }
    }
}

/// Subsets of simple indices of size `1..=max_p`, pairwise orthogonal.
fn orthogonal_families(rs: &RootSystem, max_p: usize) -> Vec<Vec<usize>> {
    let n = rs.rank();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(fam) = stack.pop() {
        if fam.len() < max_p {
            for j in fam.last().unwrap() + 1..n {
                if fam.iter().all(|&i| rs.cartan()[i][j] == 0) {
                    let mut next = fam.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
        out.push(fam);
    }
    out.sort();
    out
}

fn k_vectors(bounds: &[i64]) -> Vec<Vec<i64>> {
    bounds.iter().fold(vec![Vec::new()], |acc, &m| {
        acc.into_iter().flat_map(|prefix| (1..=m).map(move |k| [prefix.clone(), vec![k]].concat())).collect()
    })
}

/// Every witness over `(v, w)` in `W x W`, all three cases, and every
/// admissible `k >= 1`, plus the classic `k = 0` instances. Sorted by
/// `(lambda, case, betas, ks, v, w)`.
pub fn enumerate_prv(rs: &RootSystem, mu: &Weight, nu: &Weight, opts: EnumerateOptions) -> Result<Vec<PrvWitness>> {
    if !rs.is_finite() {
        return Err(Error::NotFiniteType);
    }
    for x in [mu, nu] {
        rs.check_rank(x.rank())?;
        if !x.is_dominant() {
            return Err(Error::NotDominant(x.to_string()));
        }
    }
    let group = rs.weyl_elements()?;
    let families = orthogonal_families(rs, if opts.multi { opts.max_p.max(1) } else { 1 });
    let pairs: Vec<(&WeylElement, &WeylElement)> = group.iter().flat_map(|v| group.iter().map(move |w| (v, w))).collect();
    let per_pair: Vec<Vec<PrvWitness>> = pairs
        .par_iter()
        .map(|&(v, w)| -> Result<Vec<PrvWitness>> {
            let mut found = Vec::new();
            let classic = PrvInstance::classic(mu.clone(), nu.clone(), v.clone(), w.clone());
            if classic.lambda(rs).is_dominant() {
                found.push(build_witness(rs, &classic, None)?);
            }
            for case in [PrvCase::SimpleBeta, PrvCase::VSide, PrvCase::WSide] {
                for fam in &families {
                    let betas: Vec<RealRoot> = fam
                        .iter()
                        .map(|&i| {
                            let a = RealRoot::simple(rs.rank(), i);
                            match case {
                                PrvCase::SimpleBeta => a,
                                PrvCase::VSide => rs.weyl_apply_root(v, &a),
                                PrvCase::WSide => rs.weyl_apply_root(w, &a),
                            }
                        })
                        .collect();
                    if !betas.iter().all(|b| b.positive) {
                        continue;
                    }
                    let mut inst = PrvInstance { betas, ks: Vec::new(), case, ..classic.clone() };
                    inst.ks = vec![0; fam.len()];
                    let bounds = inst.bounds(rs);
                    for ks in k_vectors(&bounds) {
                        inst.ks = ks;
                        if inst.lambda(rs).is_dominant() {
                            found.push(build_witness(rs, &inst, None)?);
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<PrvWitness> = per_pair.into_iter().flatten().collect();
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    if opts.dedupe {
        all.dedup_by(|b, a| a.lambda == b.lambda);
    }
    if opts.check_oracle {
        let d = tensor_decompose_oracle(rs, mu, nu)?;
        for wit in &mut all {
            wit.oracle_confirmed = Some(d.get(&wit.lambda) >= 1);
        }
    }
    Ok(all)
}

/// `{v mu + w nu dominant}` over `W x W`.
pub fn classic_prv_set(rs: &RootSystem, mu: &Weight, nu: &Weight) -> Result<BTreeSet<Weight>> {
    let group = rs.weyl_elements()?;
    let mut out = BTreeSet::new();
    for v in &group {
        let vmu = as_int(rs.weyl_apply(v, &mu.to_rational()));
        for w in &group {
            let lam = &vmu + &as_int(rs.weyl_apply(w, &nu.to_rational()));
            if lam.is_dominant() {
                out.insert(lam);
            }
        }
    }
    Ok(out)
}

/// Pairs `(v, w)` with `v^-1 w nu = z` and `v^-1 beta = alpha_i`.
pub fn find_transport_pairs(
    rs: &RootSystem,
    nu: &Weight,
    z: &Weight,
    beta: &RealRoot,
    i: usize,
) -> Result<Vec<(WeylElement, WeylElement)>> {
    let group = rs.weyl_elements()?;
    let target = z.to_rational();
    let mut out = Vec::new();
    for v in &group {
        let v_inv = rs.inverse(v);
        if rs.weyl_apply_root(&v_inv, beta).simple_index() != Some(i) {
            continue;
        }
        for w in &group {
            if rs.weyl_apply(&v_inv, &rs.weyl_apply(w, &nu.to_rational())) == target {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    Ok(out)
}
