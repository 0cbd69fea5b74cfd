//! Extremality of paths: the exact test through the highest path, the
//! sufficient criterion on height profiles, and the necessary condition.

use serde::{Deserialize, Serialize};

use crate::cartan::{RealRoot, RootSet, RootSystem, WeylElement};
use crate::crystal::highest_path;
use crate::error::{Error, Result};
use crate::path::Path;
use crate::rational::Rational;

/// `(extremal, w)` where `w` is the minimal element with `w eta(1)`
/// dominant. `eta` is extremal iff that dominant weight is the endpoint of
/// the highest path of `B(eta)`.
pub fn is_extremal(rs: &RootSystem, eta: &Path) -> Result<(bool, WeylElement)> {
    let (top, _) = highest_path(rs, eta)?;
    let (dom, w) = rs.dominant_representative(&eta.endpoint())?;
    Ok((dom == top.endpoint(), w))
}

/// A breakpoint where the profile of `root` is negative and the next
/// segment climbs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub root: Vec<i64>,
    /// 1-based index `j` of the partial sum `chi_1 + ... + chi_j`.
    pub breakpoint: usize,
    pub partial_pairing: Rational,
    pub next_pairing: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub passed: bool,
    pub checked_roots: usize,
    /// `None` when every positive real root was checked.
    pub height_cutoff: Option<u32>,
    pub verdict: String,
    pub violations: Vec<Violation>,
    pub predicted_negative_set: Vec<RealRoot>,
}

impl CriterionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// All positive real roots in finite type, those up to `cutoff` otherwise.
pub fn criterion_roots(rs: &RootSystem, cutoff: Option<u32>) -> Result<RootSet> {
    if rs.is_finite() {
        rs.positive_real_roots(None)
    } else {
        rs.positive_real_roots(Some(cutoff.ok_or(Error::CutoffRequired)?))
    }
}

/// Pairings of the partial sums `chi_1 + ... + chi_j`, `j = 0..=p`.
fn partial_pairings(pi: &Path, beta: &RealRoot) -> Vec<Rational> {
    let mut acc = Rational::ZERO;
    let mut out = Vec::with_capacity(pi.len() + 1);
    out.push(acc.clone());
    for s in pi.segments() {
        acc += &beta.pair(s);
        out.push(acc.clone());
    }
    out
}

/// For each root: whenever a partial sum pairs negatively, the next
/// segment must not pair positively, and the profile must stay negative
/// from then on.
pub fn satisfies_criterion(rs: &RootSystem, pi: &Path, roots: &RootSet) -> Result<CriterionReport> {
    rs.check_rank(pi.rank())?;
    let mut violations = Vec::new();
    for beta in roots.iter() {
        let h = partial_pairings(pi, beta);
        let first_negative = h.iter().position(|x| x.is_negative());
        for j in 1..pi.len() {
            let next = beta.pair(&pi.segments()[j]);
            let climbs = h[j].is_negative() && next.is_positive();
            let returns = first_negative.is_some_and(|f| f <= j) && !h[j + 1].is_negative();
            if climbs || returns {
                violations.push(Violation {
                    root: beta.root_coords.clone(),
                    breakpoint: j,
                    partial_pairing: h[j].clone(),
                    next_pairing: next,
                });
            }
        }
    }
    violations.sort();
    violations.dedup();
    let passed = violations.is_empty();
    let height_cutoff = if roots.is_complete() { None } else { roots.height_cutoff };
    let verdict = match (passed, height_cutoff) {
        (false, _) => "failed".to_string(),
        (true, None) => "passed".to_string(),
        (true, Some(h)) => format!("passed up to height {h}"),
    };
    Ok(CriterionReport {
        passed,
        checked_roots: roots.len(),
        height_cutoff,
        verdict,
        violations,
        predicted_negative_set: criterion_negative_set(pi, roots),
    })
}

/// `{beta : <pi(1), beta^v> < 0}` within `roots`.
pub fn criterion_negative_set(pi: &Path, roots: &[RealRoot]) -> Vec<RealRoot> {
    let end = pi.endpoint();
    let mut out: Vec<RealRoot> = roots.iter().filter(|b| b.pair(&end).is_negative()).cloned().collect();
    out.sort();
    out
}

/// Every extremal path satisfies: `H_beta >= 0` throughout when
/// `H_beta(1) >= 0`, and `H_beta >= H_beta(1)` throughout otherwise.
pub fn necessary_condition(pi: &Path, roots: &[RealRoot]) -> bool {
    roots.iter().all(|beta| {
        let h = partial_pairings(pi, beta);
        let last = h.last().unwrap();
        let floor = if last.is_negative() { last } else { &Rational::ZERO };
        h.iter().all(|x| x >= floor)
    })
}
