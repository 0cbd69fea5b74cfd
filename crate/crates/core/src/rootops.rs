//! Root operators `f_alpha`, `e_alpha` on paths and the induced Weyl action.
//!
//! `f_alpha pi(t) = pi(t) - L(t) alpha` where
//! `L(t) = min(1, min_{s >= t} H(s) - m)`. `L` is computed exactly by a
//! backward sweep over the segments, keeping the running future minimum of
//! `H - m`; each segment splits at most once, where `H - m` meets the cap.
//! `e_alpha` is `pi -> (f_alpha pi*)*`.

use crate::cartan::RootSystem;
use crate::error::{Error, Result};
use crate::path::Path;
use crate::rational::Rational;
use crate::weight::RationalWeight;

/// `f_alpha pi` for the simple root `alpha_i`, or `None` when
/// `H(1) - m < 1`.
pub fn lower(rs: &RootSystem, path: &Path, i: usize) -> Option<Path> {
    let h = path.simple_heights(i);
    let min = h.iter().min().expect("heights start at 0").clone();
    let last = h.last().unwrap();
    let mut future_min = last - &min;
    if future_min < Rational::ONE {
        return None;
    }
    let alpha = rs.simple_root(i);
    let segs = path.segments();
    let mut rev: Vec<RationalWeight> = Vec::with_capacity(segs.len() + 2);
    for k in (0..segs.len()).rev() {
        let u0 = &h[k] - &min;
        let u1 = &h[k + 1] - &min;
        let chi = &segs[k];
        let cap = future_min.clone().min(Rational::ONE);
        if u1 > u0 && u0 < cap {
            if u1 <= cap {
                rev.push(chi.sub_scaled(&(&u1 - &u0), alpha));
            } else {
                // L follows H - m up to the crossing, then stays at the cap
                let s = &(&cap - &u0) / &(&u1 - &u0);
                rev.push(chi.scale(&(&Rational::ONE - &s)));
                rev.push(chi.scale(&s).sub_scaled(&(&cap - &u0), alpha));
            }
        } else {
            rev.push(chi.clone());
        }
        if u0 < future_min {
            future_min = u0;
        }
    }
    rev.reverse();
    Some(Path::from_canonicalized(path.rank(), rev))
}

/// `e_alpha pi = (f_alpha pi*)*`, or `None` when `m > -1`.
pub fn raise(rs: &RootSystem, path: &Path, i: usize) -> Option<Path> {
    lower(rs, &path.dual(), i).map(|p| p.dual())
}

pub fn lower_k(rs: &RootSystem, path: &Path, i: usize, k: u64) -> Option<Path> {
    let mut cur = path.clone();
    for _ in 0..k {
        cur = lower(rs, &cur, i)?;
    }
    Some(cur)
}

pub fn raise_k(rs: &RootSystem, path: &Path, i: usize, k: u64) -> Option<Path> {
    let mut cur = path.clone();
    for _ in 0..k {
        cur = raise(rs, &cur, i)?;
    }
    Some(cur)
}

/// Largest `a` with `f^a` defined: `floor(<pi(1), alpha^v> - m_alpha)`.
pub fn max_lower_count(path: &Path, i: usize) -> i64 {
    let h = path.simple_heights(i);
    let min = h.iter().min().unwrap();
    (h.last().unwrap() - min).floor().to_i64().expect("count fits in i64")
}

/// Largest `a` with `e^a` defined: `floor(|m_alpha|)`.
pub fn max_raise_count(path: &Path, i: usize) -> i64 {
    (-path.simple_min(i)).floor().to_i64().expect("count fits in i64")
}

/// `s~_alpha`: `f^n` if `n = <pi(1), alpha^v> >= 0`, else `e^{-n}`.
pub fn reflect_path(rs: &RootSystem, path: &Path, i: usize) -> Result<Path> {
    rs.check_index(i)?;
    let n = path
        .segments()
        .iter()
        .fold(Rational::ZERO, |acc, s| acc + &s[i])
        .to_i64()
        .ok_or(Error::NotIntegral)?;
    let out = if n >= 0 { lower_k(rs, path, i, n as u64) } else { raise_k(rs, path, i, n.unsigned_abs()) };
    out.ok_or(Error::NotIntegral)
}

/// Applies `s~_{i_1} ... s~_{i_k}` to `path`, rightmost first.
pub fn weyl_path_action(rs: &RootSystem, path: &Path, word: &[usize]) -> Result<Path> {
    rs.check_rank(path.rank())?;
    word.iter().rev().try_fold(path.clone(), |acc, &i| reflect_path(rs, &acc, i))
}
