//! Rotational periodic cycles of the doubling map and the critical-leaf approximations
//! they induce along continued-fraction convergents.
//!
//! A period-`q` point of doubling is `k/(2^q - 1)`, and doubling acts on the `q`-bit word
//! of `k` by a cyclic left rotation. The searches below are brute force over those words;
//! [`sturmian_cycle`] writes the cycle down directly and is checked against them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{arc_distance, Angle, Arc, CircleError, CriticalLeaf};
use crate::contfrac::{ContinuedFraction, Convergent};

/// Default cap on the number of brute-force candidates `2^q - 1`.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 1 << 22;

/// Largest period [`sturmian_cycle`] builds; the orbit holds `q` numbers of `q` bits.
pub const MAX_STURMIAN_PERIOD: u64 = 1 << 14;

/// A `σ`-periodic cycle whose circular order is rotated by `p/q` under doubling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSetApprox {
    pub p: u64,
    pub q: u64,
    /// The cycle in increasing order on `[0, 1)`.
    pub orbit: Vec<Angle>,
    /// The longest complementary arc, running counterclockwise from one cycle point to the next.
    pub major_gap: Arc,
    /// The major-gap endpoints ordered as a leaf: `alpha` is the gap's end, `beta` its start.
    pub leaf_estimate: CriticalLeaf,
}

impl Serialize for RotationSetApprox {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RotationSetApprox", 4)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("q", &self.q)?;
        s.serialize_field("orbit", &self.orbit)?;
        s.serialize_field("major_gap", &[&self.major_gap.start, &self.major_gap.end])?;
        s.end()
    }
}

/// How many period-`q` rotational cycles exist for each numerator `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub q: u64,
    /// Number of primitive period-`q` cycles inspected.
    pub cycles: usize,
    /// `p -> number of rotational cycles with rotation number p/q`.
    pub rotational: BTreeMap<u64, usize>,
}

fn check_budget(q: u64, budget: u64) -> Result<u64, CircleError> {
    if q == 0 || q >= 63 {
        return Err(CircleError::DepthTooLarge { q, budget });
    }
    let modulus = (1u64 << q) - 1;
    if modulus > budget {
        return Err(CircleError::DepthTooLarge { q, budget });
    }
    Ok(modulus)
}

/// The orbit of `k` if `k` is the least element of a cycle of exact period `q`.
fn canonical_cycle(k: u64, q: u64, modulus: u64) -> Option<Vec<u64>> {
    let mut orbit = Vec::with_capacity(q as usize);
    let mut x = k;
    for i in 0..q {
        if x < k || (i > 0 && x == k) {
            return None;
        }
        orbit.push(x);
        x = (x << 1) % modulus;
    }
    Some(orbit)
}

/// The combinatorial rotation number numerator of a cycle, if doubling acts on its
/// circular order as a rotation.
fn rotation_numerator(orbit: &[u64], modulus: u64) -> Option<u64> {
    let q = orbit.len();
    let mut sorted = orbit.to_vec();
    sorted.sort_unstable();
    let index = |v: u64| sorted.binary_search(&v).expect("orbit is closed under doubling");
    let shift = (index((sorted[0] << 1) % modulus) + q) % q;
    for (i, &v) in sorted.iter().enumerate() {
        if (index((v << 1) % modulus) + q - i) % q != shift {
            return None;
        }
    }
    Some(shift as u64)
}

fn all_cycles(q: u64, modulus: u64) -> Vec<Vec<u64>> {
    (1..modulus)
        .into_par_iter()
        .filter_map(|k| canonical_cycle(k, q, modulus))
        .collect()
}

fn to_angle(k: u64, modulus: u64) -> Angle {
    Angle::new(BigInt::from(k), BigInt::from(modulus)).expect("modulus is positive")
}

fn build_approx(p: u64, q: u64, modulus: u64, mut orbit: Vec<u64>) -> RotationSetApprox {
    orbit.sort_unstable();
    let n = orbit.len();
    let gap = |i: usize| (orbit[(i + 1) % n] + modulus - orbit[i]) % modulus;
    // Ties are impossible for q >= 2: gap lengths of a rotational cycle are distinct
    // numerators over 2^q - 1; max_by_key keeps the last maximum regardless.
    let start = (0..n).max_by_key(|&i| gap(i)).expect("nonempty orbit");
    let beta = to_angle(orbit[start], modulus);
    let alpha = to_angle(orbit[(start + 1) % n], modulus);
    let leaf_estimate = CriticalLeaf::new(alpha.clone(), beta.clone())
        .expect("the major gap of a rotational cycle straddles 0 with its end below 1/2");
    RotationSetApprox {
        p,
        q,
        orbit: orbit.iter().map(|&k| to_angle(k, modulus)).collect(),
        major_gap: Arc::open(beta, alpha),
        leaf_estimate,
    }
}

pub fn rotational_cycle(p: u64, q: u64) -> Result<RotationSetApprox, CircleError> {
    rotational_cycle_with_budget(p, q, DEFAULT_BRUTE_FORCE_BUDGET)
}

/// The unique period-`q` cycle of doubling with combinatorial rotation number `p/q`,
/// found by checking every cycle among the angles `k/(2^q - 1)`.
pub fn rotational_cycle_with_budget(
    p: u64,
    q: u64,
    budget: u64,
) -> Result<RotationSetApprox, CircleError> {
    validate_rotation(p, q)?;
    let modulus = check_budget(q, budget)?;
    let mut matches: Vec<Vec<u64>> = (1..modulus)
        .into_par_iter()
        .filter_map(|k| canonical_cycle(k, q, modulus))
        .filter(|orbit| rotation_numerator(orbit, modulus) == Some(p))
        .collect();
    if matches.len() != 1 {
        return Err(CircleError::CycleCount {
            p,
            q,
            found: matches.len(),
        });
    }
    Ok(build_approx(p, q, modulus, matches.pop().expect("one match")))
}

/// Tabulates rotation numbers over every primitive period-`q` cycle.
pub fn rotation_census(q: u64, budget: u64) -> Result<CycleCensus, CircleError> {
    let modulus = check_budget(q, budget)?;
    let cycles = all_cycles(q, modulus);
    let mut rotational = BTreeMap::new();
    for orbit in &cycles {
        if let Some(p) = rotation_numerator(orbit, modulus) {
            *rotational.entry(p).or_insert(0) += 1;
        }
    }
    Ok(CycleCensus {
        q,
        cycles: cycles.len(),
        rotational,
    })
}

fn validate_rotation(p: u64, q: u64) -> Result<(), CircleError> {
    if p == 0 || p >= q || p.gcd(&q) != 1 {
        return Err(CircleError::InvalidRotation { p, q });
    }
    Ok(())
}

/// The rotational cycle of `p/q` without a search. In circular order the last `p` points
/// lie in `[1/2, 1)` and doubling advances by `p` places, so the `n`-th binary digit of the
/// smallest point is 1 exactly when `n·p mod q ≥ q − p`.
pub fn sturmian_cycle(p: u64, q: u64) -> Result<RotationSetApprox, CircleError> {
    validate_rotation(p, q)?;
    if q > MAX_STURMIAN_PERIOD {
        return Err(CircleError::DepthTooLarge {
            q,
            budget: MAX_STURMIAN_PERIOD,
        });
    }
    let modulus: BigInt = (BigInt::from(1) << q as usize) - 1;
    let mut x = (0..q).fold(BigInt::from(0), |acc, n| {
        (acc << 1usize) + u32::from((n * p) % q >= q - p)
    });
    let mut orbit = Vec::with_capacity(q as usize);
    for _ in 0..q {
        let next = (&x << 1usize) % &modulus;
        orbit.push(x);
        x = next;
    }
    orbit.sort_unstable();
    let n = orbit.len();
    let gap = |i: usize| {
        let d = &orbit[(i + 1) % n] - &orbit[i];
        if d < BigInt::from(0) {
            d + &modulus
        } else {
            d
        }
    };
    let start = (0..n).max_by_key(|&i| gap(i)).expect("nonempty orbit");
    let angle = |k: &BigInt| Angle::from_ratio(BigRational::new(k.clone(), modulus.clone()));
    let beta = angle(&orbit[start]);
    let alpha = angle(&orbit[(start + 1) % n]);
    let leaf_estimate = CriticalLeaf::new(alpha.clone(), beta.clone())
        .expect("the major gap of a rotational cycle straddles 0 with its end below 1/2");
    Ok(RotationSetApprox {
        p,
        q,
        orbit: orbit.iter().map(angle).collect(),
        major_gap: Arc::open(beta, alpha),
        leaf_estimate,
    })
}

/// A critical-leaf estimate from the rotational cycle of one convergent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeafApprox {
    pub depth: usize,
    pub convergent: Convergent,
    pub leaf: CriticalLeaf,
    pub major_gap: Arc,
    /// Arc distance between this `alpha` and the one of the previous convergent; absent when
    /// the previous convergent does not give a proper rotation number.
    pub error_bound: Option<Angle>,
}

impl LeafApprox {
    /// `beta - alpha`, the length of the arc `[alpha, beta]`.
    pub fn span(&self) -> BigRational {
        self.leaf.alpha.ccw_to(&self.leaf.beta)
    }
}

fn leaf_from(
    cf: &ContinuedFraction,
    depth: usize,
    cycle: &dyn Fn(u64, u64) -> Result<RotationSetApprox, CircleError>,
) -> Result<LeafApprox, CircleError> {
    let convergent = cf.convergent(depth)?;
    let approx = cycle(convergent.p, convergent.q)?;
    let error_bound = match depth.checked_sub(1) {
        Some(prev) if prev >= 1 => {
            let c = cf.convergent(prev)?;
            match cycle(c.p, c.q) {
                Ok(prev_approx) => Some(Angle::from_ratio(arc_distance(
                    &prev_approx.leaf_estimate.alpha,
                    &approx.leaf_estimate.alpha,
                ))),
                Err(CircleError::InvalidRotation { .. }) => None,
                Err(e) => return Err(e),
            }
        }
        _ => None,
    };
    Ok(LeafApprox {
        depth,
        convergent,
        leaf: approx.leaf_estimate,
        major_gap: approx.major_gap,
        error_bound,
    })
}

/// Critical-leaf estimate for the rotation number `cf` at the `depth`-th convergent, with
/// the cycle found by brute force.
pub fn cantor_leaf(
    cf: &ContinuedFraction,
    depth: usize,
    budget: u64,
) -> Result<LeafApprox, CircleError> {
    leaf_from(cf, depth, &|p, q| rotational_cycle_with_budget(p, q, budget))
}

/// As [`cantor_leaf`], with the cycle from [`sturmian_cycle`]; reaches periods in the
/// thousands.
pub fn cantor_leaf_sturmian(cf: &ContinuedFraction, depth: usize) -> Result<LeafApprox, CircleError> {
    leaf_from(cf, depth, &sturmian_cycle)
}
