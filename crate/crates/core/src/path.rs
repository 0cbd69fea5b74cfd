//! Piecewise-linear rational paths `pi_{chi_1} * ... * pi_{chi_p}`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{RealRoot, RootSystem};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weight::{RationalWeight, Weight};

/// A path in canonical form: no zero segment, and no segment that is a
/// positive multiple of its predecessor. Equality of canonical segment
/// lists is equality of paths up to reparametrization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    rank: usize,
    segments: Vec<RationalWeight>,
}

/// Values of `t -> <pi(t), beta^v>` at the breakpoints of the uniform
/// parametrization (segment `k` of `p` runs over `[k/p, (k+1)/p]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightProfile {
    pub breakpoints: Vec<(Rational, Rational)>,
    pub min_value: Rational,
}

impl HeightProfile {
    pub fn values(&self) -> impl DoubleEndedIterator<Item = &Rational> + ExactSizeIterator {
        self.breakpoints.iter().map(|(_, v)| v)
    }

    pub fn final_value(&self) -> &Rational {
        &self.breakpoints.last().expect("profile starts at (0, 0)").1
    }
}

impl Path {
    pub fn empty(rank: usize) -> Path {
        Path { rank, segments: Vec::new() }
    }

    /// Builds and canonicalizes; every segment must have length `rank`.
    pub fn new(rank: usize, segments: Vec<RationalWeight>) -> Result<Path> {
        if let Some(s) = segments.iter().find(|s| s.rank() != rank) {
            return Err(Error::RankMismatch { expected: rank, found: s.rank() });
        }
        Ok(Path::from_canonicalized(rank, segments))
    }

    pub(crate) fn from_canonicalized(rank: usize, segments: Vec<RationalWeight>) -> Path {
        let mut out: Vec<RationalWeight> = Vec::with_capacity(segments.len());
        for seg in segments {
            if seg.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(prev) if prev.positive_multiple(&seg).is_some() => {
                    *prev = &*prev + &seg;
                }
                _ => out.push(seg),
            }
        }
        Path { rank, segments: out }
    }

    /// `pi_chi(t) = t chi`; the zero weight gives the empty path.
    pub fn straight(chi: &RationalWeight) -> Path {
        Path::from_canonicalized(chi.rank(), vec![chi.clone()])
    }

    pub fn straight_int(chi: &Weight) -> Path {
        Path::straight(&chi.to_rational())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn segments(&self) -> &[RationalWeight] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        let segs = self.segments.iter().chain(&other.segments).cloned().collect();
        Ok(Path::from_canonicalized(self.rank, segs))
    }

    /// `pi*(t) = pi(1 - t) - pi(1)`: segments reversed and negated.
    pub fn dual(&self) -> Path {
        Path { rank: self.rank, segments: self.segments.iter().rev().map(|s| -s).collect() }
    }

    /// The dilation `n pi`.
    pub fn scale(&self, n: &Rational) -> Path {
        assert!(n.is_positive(), "dilation factor must be positive");
        Path { rank: self.rank, segments: self.segments.iter().map(|s| s.scale(n)).collect() }
    }

    pub fn endpoint(&self) -> RationalWeight {
        self.segments.iter().fold(RationalWeight::zero(self.rank), |acc, s| &acc + s)
    }

    /// `pi(0) = 0, pi(1/p), ..., pi(1)`.
    pub fn vertices(&self) -> Vec<RationalWeight> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = RationalWeight::zero(self.rank);
        out.push(acc.clone());
        for s in &self.segments {
            acc = &acc + s;
            out.push(acc.clone());
        }
        out
    }

    /// Breakpoint values of `<pi(t), alpha_i^v>`.
    pub fn simple_heights(&self, i: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = Rational::ZERO;
        out.push(acc.clone());
        for s in &self.segments {
            acc += &s[i];
            out.push(acc.clone());
        }
        out
    }

    /// `m_{alpha_i}`.
    pub fn simple_min(&self, i: usize) -> Rational {
        let mut acc = Rational::ZERO;
        let mut min = Rational::ZERO;
        for s in &self.segments {
            acc += &s[i];
            if acc < min {
                min = acc.clone();
            }
        }
        min
    }

    pub fn height_profile(&self, beta: &RealRoot) -> HeightProfile {
        let p = self.segments.len() as i64;
        let mut breakpoints = Vec::with_capacity(self.segments.len() + 1);
        let mut acc = Rational::ZERO;
        let mut min = Rational::ZERO;
        breakpoints.push((Rational::ZERO, Rational::ZERO));
        for (k, s) in self.segments.iter().enumerate() {
            acc += beta.pair(s);
            if acc < min {
                min = acc.clone();
            }
            breakpoints.push((Rational::new(k as i64 + 1, p), acc.clone()));
        }
        HeightProfile { breakpoints, min_value: min }
    }

    /// Every simple-root minimum is an integer.
    pub fn is_integral(&self, rs: &RootSystem) -> bool {
        self.rank == rs.rank() && (0..self.rank).all(|i| self.simple_min(i).is_integer())
    }

    /// Integral with an integral endpoint, i.e. usable as a model path.
    pub fn is_model_path(&self, rs: &RootSystem) -> bool {
        self.is_integral(rs) && self.endpoint().is_integral()
    }

    /// Image inside the dominant chamber (vertex check).
    pub fn is_dominant(&self) -> bool {
        let mut acc = RationalWeight::zero(self.rank);
        for s in &self.segments {
            acc = &acc + s;
            if !acc.is_dominant() {
                return false;
            }
        }
        true
    }

    /// Parses the JSON list-of-rational-string-vectors form.
    pub fn from_json(text: &str, rank: usize) -> Result<Path> {
        let segs: Vec<RationalWeight> = serde_json::from_str(text)?;
        Path::new(rank, segs)
    }

    pub fn from_json_value(value: &serde_json::Value, rank: usize) -> Result<Path> {
        let segs: Vec<RationalWeight> = serde_json::from_value(value.clone())?;
        Path::new(rank, segs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("path serialization is infallible")
    }

    /// Re-checks the rank; a deserialized empty path takes `rank`.
    pub fn with_rank(self, rank: usize) -> Result<Path> {
        if self.segments.is_empty() {
            Ok(Path::empty(rank))
        } else if self.rank == rank {
            Ok(self)
        } else {
            Err(Error::RankMismatch { expected: rank, found: self.rank })
        }
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.segments.serialize(serializer)
    }
}

/// Rank is taken from the first segment; use [`Path::with_rank`] to pin it.
impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let segs = Vec::<RationalWeight>::deserialize(deserializer)?;
        let rank = segs.first().map_or(0, RationalWeight::rank);
        Path::new(rank, segs).map_err(serde::de::Error::custom)
    }
}
