//! Exact dynamics of the angle-doubling map on the circle `R/Z`.
//!
//! Angles are exact rationals. The float shadow carried by [`Angle`] exists for
//! rendering and ray tracing only; combinatorics never look at it.

mod rotation;

pub use rotation::{
    cantor_leaf, cantor_leaf_sturmian, rotation_census, rotational_cycle,
    rotational_cycle_with_budget, sturmian_cycle, CycleCensus, LeafApprox, RotationSetApprox,
    DEFAULT_BRUTE_FORCE_BUDGET, MAX_STURMIAN_PERIOD,
};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::contfrac::ContFracError;

/// Default step cap for [`separation_time`].
pub const DEFAULT_SEPARATION_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse angle {0:?}")]
    Parse(String),
    #[error("invalid critical leaf: {0}")]
    InvalidLeaf(String),
    #[error("angles coincide")]
    CoincidentAngles,
    #[error("image at step {step} lands exactly on a leaf endpoint")]
    ExactHit { step: usize },
    #[error("not separated within {cap} steps")]
    NotSeparated { cap: usize },
    #[error("invalid rotation number {p}/{q}: need 0 < p < q and gcd(p, q) = 1")]
    InvalidRotation { p: u64, q: u64 },
    #[error("brute force over 2^{q} - 1 candidates exceeds the budget of {budget}")]
    DepthTooLarge { q: u64, budget: u64 },
    #[error("expected one rotational cycle for {p}/{q}, found {found}")]
    CycleCount { p: u64, q: u64, found: usize },
    #[error(transparent)]
    ContinuedFraction(#[from] ContFracError),
}

/// A point of `R/Z` as an exact reduced fraction in `[0, 1)`.
#[derive(Clone, Debug)]
pub struct Angle {
    value: BigRational,
    approx: f64,
}

impl Angle {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, CircleError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(CircleError::ZeroDenominator);
        }
        Ok(Self::from_ratio(BigRational::new(numer.into(), denom)))
    }

    /// Reduces any rational into `[0, 1)`.
    pub fn from_ratio(r: BigRational) -> Self {
        let value = &r - r.floor();
        let approx = value.to_f64().unwrap_or(0.0);
        Self { value, approx }
    }

    pub fn zero() -> Self {
        Self::from_ratio(BigRational::zero())
    }

    pub fn half() -> Self {
        Self::from_ratio(BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.value
    }

    pub fn to_f64(&self) -> f64 {
        self.approx
    }

    /// `2θ mod 1`.
    pub fn double(&self) -> Angle {
        Self::from_ratio(&self.value * BigInt::from(2))
    }

    /// `2^n θ mod 1`.
    pub fn double_n(&self, n: usize) -> Angle {
        let factor = BigInt::one() << n;
        Self::from_ratio(&self.value * factor)
    }

    pub fn shifted(&self, by: &BigRational) -> Angle {
        Self::from_ratio(&self.value + by)
    }

    /// The antipodal angle `θ + 1/2`.
    pub fn antipode(&self) -> Angle {
        self.shifted(Angle::half().as_ratio())
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_to(&self, other: &Angle) -> BigRational {
        let d = &other.value - &self.value;
        if d.is_negative() {
            d + BigRational::one()
        } else {
            d
        }
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for Angle {}

impl Hash for Angle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by representative in `[0, 1)`.
impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value.numer(), self.value.denom())
    }
}

impl FromStr for Angle {
    type Err = CircleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CircleError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Angle::new(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Angle::new(n, 1)
            }
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The angle-doubling map `σ`.
pub fn double(theta: &Angle) -> Angle {
    theta.double()
}

/// Length of the shortest arc between two angles, in `[0, 1/2]`.
pub fn arc_distance(a: &Angle, b: &Angle) -> BigRational {
    let d = a.ccw_to(b);
    let other = BigRational::one() - &d;
    if other < d {
        other
    } else {
        d
    }
}

/// The tent map on `[0, 1/2]` conjugating distances under doubling.
pub fn tent(x: &BigRational) -> BigRational {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let two = BigRational::from_integer(BigInt::from(2));
    if *x <= quarter {
        x * two
    } else {
        BigRational::one() - x * two
    }
}

/// Counterclockwise arc from `start` to `end`; `closed` flags say which endpoints belong to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
    pub closed: (bool, bool),
}

impl Arc {
    pub fn open(start: Angle, end: Angle) -> Self {
        Self {
            start,
            end,
            closed: (false, false),
        }
    }

    pub fn closed(start: Angle, end: Angle) -> Self {
        Self {
            start,
            end,
            closed: (true, true),
        }
    }

    pub fn length(&self) -> BigRational {
        self.start.ccw_to(&self.end)
    }

    pub fn contains(&self, theta: &Angle) -> bool {
        if *theta == self.start {
            return self.closed.0;
        }
        if *theta == self.end {
            return self.closed.1;
        }
        self.start.ccw_to(theta) < self.length()
    }
}

/// Which side of a leaf an angle lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeafSide {
    /// The open arc `(alpha, beta)`.
    Inner,
    /// The open arc `(beta, alpha)`.
    Outer,
}

/// The chord joining `alpha` and `beta`, with `0 < alpha < 1/2` and `alpha < beta`.
///
/// The true critical leaf is a diameter. Leaves produced from rational rotational cycles
/// are close to, but never exactly, diameters; [`CriticalLeaf::is_diameter`] tells them apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CriticalLeaf {
    pub alpha: Angle,
    pub beta: Angle,
}

impl CriticalLeaf {
    pub fn new(alpha: Angle, beta: Angle) -> Result<Self, CircleError> {
        if alpha.as_ratio().is_zero() || alpha >= Angle::half() {
            return Err(CircleError::InvalidLeaf(format!(
                "alpha = {alpha} is not in (0, 1/2)"
            )));
        }
        if beta <= alpha {
            return Err(CircleError::InvalidLeaf(format!(
                "beta = {beta} does not exceed alpha = {alpha}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// The diameter through `alpha`.
    pub fn diameter(alpha: Angle) -> Result<Self, CircleError> {
        let beta = alpha.antipode();
        Self::new(alpha, beta)
    }

    pub fn is_diameter(&self) -> bool {
        self.alpha.antipode() == self.beta
    }

    /// `None` when `theta` is one of the endpoints.
    pub fn side(&self, theta: &Angle) -> Option<LeafSide> {
        if *theta == self.alpha || *theta == self.beta {
            None
        } else if Arc::open(self.alpha.clone(), self.beta.clone()).contains(theta) {
            Some(LeafSide::Inner)
        } else {
            Some(LeafSide::Outer)
        }
    }

    /// Whether the chord strictly separates the two angles.
    pub fn separates(&self, a: &Angle, b: &Angle) -> bool {
        matches!(
            (self.side(a), self.side(b)),
            (Some(LeafSide::Inner), Some(LeafSide::Outer))
                | (Some(LeafSide::Outer), Some(LeafSide::Inner))
        )
    }
}

/// Least `m <= cap` such that `σ^m θ` and `σ^m θ'` lie strictly on opposite sides of the leaf.
pub fn separation_time(
    theta: &Angle,
    theta_prime: &Angle,
    leaf: &CriticalLeaf,
    cap: usize,
) -> Result<usize, CircleError> {
    if theta == theta_prime {
        return Err(CircleError::CoincidentAngles);
    }
    let mut a = theta.clone();
    let mut b = theta_prime.clone();
    for step in 0..=cap {
        match (leaf.side(&a), leaf.side(&b)) {
            (None, _) | (_, None) => return Err(CircleError::ExactHit { step }),
            (Some(x), Some(y)) if x != y => return Ok(step),
            _ => {}
        }
        a = a.double();
        b = b.double();
    }
    Err(CircleError::NotSeparated { cap })
}

/// Number of doublings until the arc distance of the pair first reaches `1/3`.
/// `None` for coincident angles, whose distance stays zero.
pub fn steps_to_third(theta: &Angle, theta_prime: &Angle) -> Option<usize> {
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let mut d = arc_distance(theta, theta_prime);
    if d.is_zero() {
        return None;
    }
    let mut steps = 0;
    while d < third {
        d = tent(&d);
        steps += 1;
    }
    Some(steps)
}

/// `⌈log₂(1/(4 d₀))⌉ + 2`, clamped below at 2, computed exactly for `d₀ > 0`.
pub fn growth_bound(d0: &BigRational) -> usize {
    assert!(d0.is_positive(), "growth bound needs a positive distance");
    let mut scaled = d0 * BigInt::from(4);
    let mut e = 0;
    while scaled < BigRational::one() {
        scaled *= BigInt::from(2);
        e += 1;
    }
    e + 2
}

/// The preimage of `theta` under doubling lying in the closed half-circle `[alpha, alpha + 1/2]`.
///
/// When both preimages sit on the boundary (`theta = σ(alpha)`) the result is `alpha`.
/// For a diameter leaf the half-circle is `[alpha, beta]`.
pub fn pullback_in_siegel_arc(theta: &Angle, leaf: &CriticalLeaf) -> Angle {
    let half = Angle::half();
    let first = Angle::from_ratio(theta.as_ratio() / BigInt::from(2));
    let second = first.shifted(half.as_ratio());
    if first == leaf.alpha || second == leaf.alpha {
        return leaf.alpha.clone();
    }
    let arc = Arc::closed(leaf.alpha.clone(), leaf.alpha.antipode());
    if arc.contains(&first) {
        first
    } else {
        second
    }
}

/// The symbols of `σ^i θ`, `i < len`: `1` on the closed arc `[alpha, beta]`, `0` on `(beta, alpha)`.
/// Landing on an endpoint is ambiguous and reported as [`CircleError::ExactHit`].
pub fn leaf_itinerary(
    theta: &Angle,
    leaf: &CriticalLeaf,
    len: usize,
) -> Result<Vec<u8>, CircleError> {
    let mut t = theta.clone();
    let mut out = Vec::with_capacity(len);
    for step in 0..len {
        match leaf.side(&t) {
            None => return Err(CircleError::ExactHit { step }),
            Some(LeafSide::Inner) => out.push(1),
            Some(LeafSide::Outer) => out.push(0),
        }
        t = t.double();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(double(&a("1/3")), a("2/3"));
        assert_eq!(double(&a("2/3")), a("1/3"));
        assert_eq!(double(&a("5/7")), a("3/7"));
    }

    #[test]
    fn normalization() {
        let x = Angle::new(-1, 3).unwrap();
        assert_eq!(x, a("2/3"));
        assert_eq!(Angle::new(14, 7).unwrap(), Angle::zero());
        assert_eq!(a("4/6").to_string(), "2/3");
        assert!(Angle::new(1, 0).is_err());
        assert!("x/3".parse::<Angle>().is_err());
    }

    #[test]
    fn arc_distance_examples() {
        assert_eq!(arc_distance(&a("1/10"), &a("9/10")), r(1, 5));
        assert_eq!(arc_distance(&a("3/11"), &a("3/11")), r(0, 1));
        assert_eq!(arc_distance(&a("1/3"), &a("2/3")), r(1, 3));
    }

    #[test]
    fn tent_examples() {
        assert_eq!(tent(&r(1, 10)), r(1, 5));
        assert_eq!(tent(&r(3, 10)), r(2, 5));
        assert_eq!(tent(&r(1, 2)), r(0, 1));
    }

    #[test]
    fn arcs_are_counterclockwise() {
        let wrap = Arc::open(a("4/7"), a("1/7"));
        assert_eq!(wrap.length(), r(4, 7));
        assert!(wrap.contains(&Angle::zero()));
        assert!(wrap.contains(&a("6/7")));
        assert!(!wrap.contains(&a("2/7")));
        assert!(!wrap.contains(&a("4/7")));
        let closed = Arc::closed(a("4/7"), a("1/7"));
        assert!(closed.contains(&a("4/7")) && closed.contains(&a("1/7")));
    }

    #[test]
    fn leaf_validation() {
        assert!(CriticalLeaf::new(a("1/2"), a("3/4")).is_err());
        assert!(CriticalLeaf::new(Angle::zero(), a("1/2")).is_err());
        assert!(CriticalLeaf::new(a("1/3"), a("1/4")).is_err());
        let d = CriticalLeaf::diameter(a("1/5")).unwrap();
        assert_eq!(d.beta, a("7/10"));
        assert!(d.is_diameter());
    }

    #[test]
    fn separation_at_distance_one_half() {
        // Antipodal angles off the leaf are separated immediately.
        let leaf = CriticalLeaf::diameter(a("1/5")).unwrap();
        assert_eq!(separation_time(&a("1/10"), &a("3/5"), &leaf, 10), Ok(0));
    }

    #[test]
    fn separation_errors() {
        let leaf = CriticalLeaf::diameter(a("1/5")).unwrap();
        assert_eq!(
            separation_time(&a("1/3"), &a("1/3"), &leaf, 10),
            Err(CircleError::CoincidentAngles)
        );
        // 1/20 -> 1/10 -> 1/5 while 1/10 -> 1/5 hits alpha first.
        assert_eq!(
            separation_time(&a("1/20"), &a("1/10"), &leaf, 10),
            Err(CircleError::ExactHit { step: 1 })
        );
        // 0 is fixed on the outer side; 1/64 stays outside until step 4.
        assert_eq!(
            separation_time(&Angle::zero(), &a("1/64"), &leaf, 3),
            Err(CircleError::NotSeparated { cap: 3 })
        );
        assert_eq!(separation_time(&Angle::zero(), &a("1/64"), &leaf, 4), Ok(4));
    }

    #[test]
    fn growth_bound_values() {
        assert_eq!(growth_bound(&r(1, 4)), 2);
        assert_eq!(growth_bound(&r(3, 10)), 2);
        assert_eq!(growth_bound(&r(1, 8)), 3);
        assert_eq!(growth_bound(&r(1, 100)), 7);
    }

    #[test]
    fn pullback_examples() {
        let leaf = CriticalLeaf::diameter(a("1/5")).unwrap();
        assert_eq!(pullback_in_siegel_arc(&Angle::zero(), &leaf), a("1/2"));
        assert_eq!(pullback_in_siegel_arc(&leaf.alpha.double(), &leaf), leaf.alpha);
        let back = pullback_in_siegel_arc(&leaf.alpha, &leaf);
        assert_eq!(back, a("3/5"));
        assert_eq!(back.double(), leaf.alpha);
    }

    #[test]
    fn itinerary_relative_to_leaf() {
        let leaf = CriticalLeaf::new(a("3/7"), a("6/7")).unwrap();
        assert_eq!(leaf_itinerary(&a("1/7"), &leaf, 6).unwrap(), vec![0, 0, 1, 0, 0, 1]);
        assert_eq!(
            leaf_itinerary(&a("5/7"), &leaf, 2),
            Err(CircleError::ExactHit { step: 1 })
        );
    }

    #[test]
    fn angle_json_is_fraction_string() {
        let json = serde_json::to_string(&a("2/6")).unwrap();
        assert_eq!(json, "\"1/3\"");
        let back: Angle = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a("1/3"));
    }
}
