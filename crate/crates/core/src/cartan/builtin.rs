//! Named Cartan types with Bourbaki numbering, plus untwisted affine
//! extensions `X_n^(1)` (written `Xn~`), whose extra node is `alpha_0`.

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::RootSystem;

/// Symmetric form `(alpha_i, alpha_j)` of a finite type, long roots of norm 2.
fn finite_form(series: char, n: usize) -> Option<Vec<Vec<Rational>>> {
    let mut form = vec![vec![Rational::ZERO; n]; n];
    let link = |form: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        form[i][j] = v.clone();
        form[j][i] = v;
    };
    let minus_one = Rational::from(-1);
    match (series, n) {
        ('A', 1..) => {
            for i in 0..n {
                form[i][i] = Rational::from(2);
            }
            for i in 1..n {
                link(&mut form, i - 1, i, minus_one.clone());
            }
        }
        ('B', 2..) => {
            for i in 0..n {
                form[i][i] = Rational::from(if i + 1 < n { 2 } else { 1 });
            }
            for i in 1..n {
                link(&mut form, i - 1, i, minus_one.clone());
            }
        }
        ('C', 2..) => {
            for i in 0..n {
                form[i][i] = Rational::from(if i + 1 < n { 1 } else { 2 });
            }
            for i in 1..n {
                let v = if i + 1 < n { Rational::new(-1, 2) } else { minus_one.clone() };
                link(&mut form, i - 1, i, v);
            }
        }
        ('D', 4..) => {
            for i in 0..n {
                form[i][i] = Rational::from(2);
            }
            for i in 1..n - 1 {
                link(&mut form, i - 1, i, minus_one.clone());
            }
            link(&mut form, n - 3, n - 1, minus_one.clone());
        }
        ('E', 6..=8) => {
            for i in 0..n {
                form[i][i] = Rational::from(2);
            }
            link(&mut form, 0, 2, minus_one.clone());
            link(&mut form, 1, 3, minus_one.clone());
            for i in 3..n {
                link(&mut form, i - 1, i, minus_one.clone());
            }
        }
        ('F', 4) => {
            for (i, v) in [2, 2, 1, 1].into_iter().enumerate() {
                form[i][i] = Rational::from(v);
            }
            link(&mut form, 0, 1, minus_one.clone());
            link(&mut form, 1, 2, minus_one.clone());
            link(&mut form, 2, 3, Rational::new(-1, 2));
        }
        ('G', 2) => {
            form[0][0] = Rational::new(2, 3);
            form[1][1] = Rational::from(2);
            link(&mut form, 0, 1, minus_one);
        }
        _ => return None,
    }
    Some(form)
}

fn cartan_from_form(form: &[Vec<Rational>]) -> Vec<Vec<i64>> {
    let n = form.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = &(&Rational::from(2) * &form[i][j]) / &form[i][i];
                    v.to_i64().expect("integral Cartan entry")
                })
                .collect()
        })
        .collect()
}

/// Splits `"B3~"`, `"b_3^(1)"` into `('B', 3, affine)`.
fn parse_name(name: &str) -> Option<(char, usize, bool)> {
    let mut s = name.trim().to_ascii_uppercase().replace('_', "");
    let affine = if let Some(rest) = s.strip_suffix('~') {
        s = rest.to_string();
        true
    } else if let Some(rest) = s.strip_suffix("^(1)") {
        s = rest.to_string();
        true
    } else {
        false
    };
    let mut chars = s.chars();
    let series = chars.next()?;
    let n: usize = chars.as_str().parse().ok()?;
    Some((series, n, affine))
}

pub(super) fn build(name: &str) -> Result<RootSystem> {
    let unknown = || Error::Parse(format!("unknown Cartan type {name:?}"));
    let (series, n, affine) = parse_name(name).ok_or_else(unknown)?;
    let form = finite_form(series, n).ok_or_else(unknown)?;
    let canonical = format!("{series}{n}{}", if affine { "~" } else { "" });
    if !affine {
        return RootSystem::new(cartan_from_form(&form), Some(canonical));
    }
    let finite = RootSystem::new(cartan_from_form(&form), None)?;
    let highest = finite
        .positive_real_roots(None)?
        .roots
        .into_iter()
        .max_by_key(|r| r.height())
        .expect("nonempty root system");
    let theta = &highest.root_coords;
    // (theta, alpha_j) from the symmetric form
    let theta_dot: Vec<Rational> = (0..n)
        .map(|j| (0..n).map(|i| &Rational::from(theta[i]) * &form[i][j]).sum())
        .collect();
    let theta_norm: Rational = (0..n).map(|j| &Rational::from(theta[j]) * &theta_dot[j]).sum();
    let mut ext = vec![vec![Rational::ZERO; n + 1]; n + 1];
    ext[0][0] = theta_norm;
    for j in 0..n {
        ext[0][j + 1] = -&theta_dot[j];
        ext[j + 1][0] = -&theta_dot[j];
        for i in 0..n {
            ext[i + 1][j + 1] = form[i][j].clone();
        }
    }
    Ok(RootSystem::new(cartan_from_form(&ext), Some(canonical))?.with_label_base(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bourbaki_rank_two_matrices() {
        assert_eq!(build("A2").unwrap().cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(build("B2").unwrap().cartan(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(build("C2").unwrap().cartan(), &[vec![2, -2], vec![-1, 2]]);
        // alpha_1 short: 3 alpha_1 + alpha_2 is a root
        assert_eq!(build("G2").unwrap().cartan(), &[vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn affine_a1() {
        let rs = build("A1~").unwrap();
        assert_eq!(rs.cartan(), &[vec![2, -2], vec![-2, 2]]);
        assert!(!rs.is_finite());
        assert_eq!(rs.label_base(), 0);
        assert_eq!(rs.name(), Some("A1~"));
        assert_eq!(build("a1^(1)").unwrap().cartan(), rs.cartan());
    }

    #[test]
    fn affine_extensions_are_singular_and_connected() {
        for name in ["A3~", "B3~", "C2~", "D4~", "E6~", "F4~", "G2~"] {
            let rs = build(name).unwrap();
            assert!(!rs.is_finite(), "{name}");
            assert!(rs.cartan()[0].iter().skip(1).any(|&a| a < 0), "{name}");
        }
        assert_eq!(build("G2~").unwrap().cartan(), &[vec![2, 0, -1], vec![0, 2, -3], vec![-1, -1, 2]]);
    }

    #[test]
    fn every_finite_builtin_is_finite() {
        for name in ["A1", "A5", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            assert!(build(name).unwrap().is_finite(), "{name}");
        }
    }

    #[test]
    fn rejects_unknown_names() {
        for name in ["", "X3", "G3", "D2", "E9", "A0", "B1"] {
            assert!(build(name).is_err(), "{name}");
        }
    }
}
