//! Weights in fundamental-weight coordinates: `coords[i] = <chi, alpha_i^v>`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An exact rational weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalWeight(pub Vec<Rational>);

/// An integral weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl RationalWeight {
    pub fn zero(rank: usize) -> Self {
        RationalWeight(vec![Rational::ZERO; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, s: &Rational) -> RationalWeight {
        RationalWeight(self.0.iter().map(|c| c * s).collect())
    }

    /// `self - s * other`, the workhorse of reflections and root operators.
    pub fn sub_scaled(&self, s: &Rational, other: &RationalWeight) -> RationalWeight {
        RationalWeight(self.0.iter().zip(&other.0).map(|(a, b)| a - &(s * b)).collect())
    }

    /// `Some(c)` with `c > 0` if `other == c * self`.
    pub fn positive_multiple(&self, other: &RationalWeight) -> Option<Rational> {
        let k = self.0.iter().position(|c| !c.is_zero())?;
        let c = &other.0[k] / &self.0[k];
        if !c.is_positive() {
            return None;
        }
        self.0.iter().zip(&other.0).all(|(a, b)| &(a * &c) == b).then_some(c)
    }

    pub fn to_weight(&self) -> Option<Weight> {
        self.0.iter().map(Rational::to_i64).collect::<Option<Vec<_>>>().map(Weight)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn to_rational(&self) -> RationalWeight {
        RationalWeight(self.0.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn scale(&self, s: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * s).collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl From<&Weight> for RationalWeight {
    fn from(w: &Weight) -> Self {
        w.to_rational()
    }
}

impl Index<usize> for RationalWeight {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add<&RationalWeight> for &RationalWeight {
    type Output = RationalWeight;
    fn add(self, rhs: &RationalWeight) -> RationalWeight {
        RationalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&RationalWeight> for &RationalWeight {
    type Output = RationalWeight;
    fn sub(self, rhs: &RationalWeight) -> RationalWeight {
        RationalWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalWeight {
    type Output = RationalWeight;
    fn neg(self) -> RationalWeight {
        RationalWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for RationalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

impl fmt::Debug for RationalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_joined(f, &self.0)?;
        write!(f, ")")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_joined(f, &self.0)?;
        write!(f, ")")
    }
}

/// Comma-separated coordinates, e.g. `7,3`.
impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl FromStr for RationalWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.parse::<Rational>().map_err(|_| Error::Parse(format!("bad weight {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(RationalWeight)
    }
}

#[macro_export]
macro_rules! rw {
    ($($x:expr),* $(,)?) => {
        $crate::weight::RationalWeight(vec![$($crate::rational::Rational::from($x as i64)),*])
    };
}
