//! Finite prefixes of simple continued fractions `[a_1, a_2, ...]` for numbers in `(0, 1)`.
//!
//! Rotation numbers are handled through their partial quotients: convergents feed the
//! rotational-cycle approximations on the circle, and the stored prefix drives the
//! bounded-type and large-quotient classifications.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContFracError {
    #[error("continued fraction has no partial quotients")]
    Empty,
    #[error("partial quotient a_{index} is zero")]
    ZeroQuotient { index: usize },
    #[error("depth {depth} exceeds the {available} stored partial quotients")]
    DepthTooLarge { depth: usize, available: usize },
    #[error("convergent at depth {depth} overflows u64")]
    Overflow { depth: usize },
    #[error("cannot parse partial quotient {0:?}")]
    Parse(String),
}

/// A convergent `p/q` of a continued fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Convergent {
    pub p: u64,
    pub q: u64,
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Classification verdicts. Both are relative to the stored prefix only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Every stored `a_i < K`.
    pub bounded_type: bool,
    /// Every stored `a_i >= N`.
    pub in_s_tilde: bool,
    /// How many partial quotients the verdicts looked at.
    pub prefix_len: usize,
}

/// The number `1/(a_1 + 1/(a_2 + ...))`, stored as a finite prefix of positive quotients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    quotients: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(quotients: Vec<u64>) -> Result<Self, ContFracError> {
        if quotients.is_empty() {
            return Err(ContFracError::Empty);
        }
        if let Some(i) = quotients.iter().position(|&a| a == 0) {
            return Err(ContFracError::ZeroQuotient { index: i + 1 });
        }
        Ok(Self { quotients })
    }

    /// `[1, 1, 1, ...]` truncated to `len` quotients.
    pub fn golden_mean(len: usize) -> Self {
        Self {
            quotients: vec![1; len.max(1)],
        }
    }

    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// The first `depth` convergents `p_1/q_1, ..., p_depth/q_depth`.
    pub fn convergents(&self, depth: usize) -> Result<Vec<Convergent>, ContFracError> {
        if depth > self.quotients.len() {
            return Err(ContFracError::DepthTooLarge {
                depth,
                available: self.quotients.len(),
            });
        }
        let (mut p_prev, mut q_prev) = (1u64, 0u64);
        let (mut p, mut q) = (0u64, 1u64);
        let mut out = Vec::with_capacity(depth);
        for (i, &a) in self.quotients[..depth].iter().enumerate() {
            let overflow = ContFracError::Overflow { depth: i + 1 };
            let p_next = a
                .checked_mul(p)
                .and_then(|x| x.checked_add(p_prev))
                .ok_or(overflow.clone())?;
            let q_next = a
                .checked_mul(q)
                .and_then(|x| x.checked_add(q_prev))
                .ok_or(overflow)?;
            p_prev = p;
            q_prev = q;
            p = p_next;
            q = q_next;
            out.push(Convergent { p, q });
        }
        Ok(out)
    }

    pub fn convergent(&self, depth: usize) -> Result<Convergent, ContFracError> {
        if depth == 0 {
            return Ok(Convergent { p: 0, q: 1 });
        }
        Ok(*self.convergents(depth)?.last().expect("depth >= 1"))
    }

    /// Value of the stored prefix, evaluated from the innermost quotient outwards.
    pub fn value(&self) -> f64 {
        self.quotients
            .iter()
            .rev()
            .fold(0.0, |acc, &a| 1.0 / (a as f64 + acc))
    }

    pub fn is_bounded_type(&self, k: u64) -> bool {
        self.quotients.iter().all(|&a| a < k)
    }

    pub fn in_s_tilde(&self, n: u64) -> bool {
        self.quotients.iter().all(|&a| a >= n)
    }

    pub fn classify(&self, n: u64, k: u64) -> Classification {
        Classification {
            bounded_type: self.is_bounded_type(k),
            in_s_tilde: self.in_s_tilde(n),
            prefix_len: self.quotients.len(),
        }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.quotients.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Parses `"1,1,1"` or `"[1, 2, 3]"`.
impl FromStr for ContinuedFraction {
    type Err = ContFracError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let quotients = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| ContFracError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(quotients)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_convergents_follow_fibonacci() {
        let cf = ContinuedFraction::golden_mean(5);
        let got: Vec<(u64, u64)> = cf
            .convergents(5)
            .unwrap()
            .iter()
            .map(|c| (c.p, c.q))
            .collect();
        assert_eq!(got, vec![(1, 1), (1, 2), (2, 3), (3, 5), (5, 8)]);
    }

    #[test]
    fn classification_on_constant_expansions() {
        let golden = ContinuedFraction::golden_mean(20);
        assert!(golden.is_bounded_type(2));
        assert!(!golden.is_bounded_type(1));
        assert!(golden.in_s_tilde(1));
        let threes = ContinuedFraction::new(vec![3; 10]).unwrap();
        assert!(threes.in_s_tilde(3));
        assert!(!threes.in_s_tilde(4));
        let c = threes.classify(3, 4);
        assert!(c.bounded_type && c.in_s_tilde);
        assert_eq!(c.prefix_len, 10);
    }

    #[test]
    fn depth_too_large() {
        let cf = ContinuedFraction::golden_mean(3);
        assert_eq!(
            cf.convergents(4),
            Err(ContFracError::DepthTooLarge {
                depth: 4,
                available: 3
            })
        );
    }

    #[test]
    fn value_approaches_golden_mean() {
        let v = ContinuedFraction::golden_mean(60).value();
        assert!((v - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn parse_forms() {
        let a: ContinuedFraction = "1,2,3".parse().unwrap();
        let b: ContinuedFraction = "[1, 2, 3]".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[1,2,3]");
        assert!("1,0".parse::<ContinuedFraction>().is_err());
        assert!("".parse::<ContinuedFraction>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let cf = ContinuedFraction::new(vec![u64::MAX, u64::MAX, u64::MAX]).unwrap();
        assert!(matches!(cf.convergents(3), Err(ContFracError::Overflow { .. })));
    }
}
