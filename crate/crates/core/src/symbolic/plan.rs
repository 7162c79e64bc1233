use serde::Serialize;

use super::{basic_length, string_element, Itinerary, PullbackId, PullbackString, SymbolicError, Word};

/// The shared initial run of two strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonPrefix {
    pub prefix: Vec<PullbackId>,
    /// Last shared pullback; absent when nothing is shared.
    pub last: Option<PullbackId>,
    pub m: usize,
}

/// Maximal run of equal leading elements. Elements are generated from the sources as
/// needed, so the result does not depend on how far either string was materialized.
pub fn common_prefix(
    u: &PullbackString,
    v: &PullbackString,
) -> Result<CommonPrefix, SymbolicError> {
    if u.source() == v.source() {
        return Err(SymbolicError::IdenticalSources(u.source().to_string()));
    }
    let mut prefix = Vec::new();
    for j in 1.. {
        match (u.element(j), v.element(j)) {
            (Some(a), Some(b)) if a == b => prefix.push(a),
            _ => break,
        }
    }
    Ok(CommonPrefix {
        last: prefix.last().cloned(),
        m: prefix.len(),
        prefix,
    })
}

/// The combinatorial data for two periodic points `u`, `v` of periods `k`, `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub u_word: Word,
    pub v_word: Word,
    pub k: usize,
    pub l: usize,
    /// Basic length of the string of `u`.
    pub w: usize,
    /// Basic length of the string of `v`.
    pub q: usize,
    pub m: usize,
    pub common: Vec<PullbackId>,
    pub last_common: PullbackId,
    pub hat_f_u: Vec<PullbackId>,
    pub f_u: Vec<PullbackId>,
    pub hat_f_v: Vec<PullbackId>,
    pub f_v: Vec<PullbackId>,
    /// `m + 3k + 3l`.
    pub n: usize,
    /// Whether `m < min(w, q)`; recorded, not required.
    pub assumption_holds: bool,
}

fn block(source: &Itinerary, from: usize, len: usize) -> Vec<PullbackId> {
    (from + 1..=from + len)
        .map(|j| string_element(source, j).expect("periodic sources have infinitely many zeros"))
        .collect()
}

pub fn plan_construction(u_word: &Word, v_word: &Word) -> Result<ConstructionPlan, SymbolicError> {
    let (u_word, v_word) = (u_word.primitive_root(), v_word.primitive_root());
    let w = basic_length(&u_word)?;
    let q = basic_length(&v_word)?;
    let u = PullbackString::periodic(&u_word)?;
    let v = PullbackString::periodic(&v_word)?;
    let prefix = common_prefix(&u, &v)?;
    let last_common = match (&prefix.last, prefix.m) {
        (Some(last), m) if m >= 2 => last.clone(),
        (_, m) => return Err(SymbolicError::PrefixTooShort { m }),
    };
    let m = prefix.m;
    let (k, l) = (u_word.len(), v_word.len());
    Ok(ConstructionPlan {
        hat_f_u: block(u.source(), m, w),
        f_u: block(u.source(), m + w, w),
        hat_f_v: block(v.source(), m, q),
        f_v: block(v.source(), m + q, q),
        n: m + 3 * k + 3 * l,
        assumption_holds: m < w.min(q),
        u_word,
        v_word,
        k,
        l,
        w,
        q,
        m,
        common: prefix.prefix,
        last_common,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{intersects, string_of};

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn it(s: &str) -> Itinerary {
        s.parse().unwrap()
    }

    #[test]
    fn worked_plan() {
        let p = plan_construction(&word("011"), &word("0110111")).unwrap();
        assert_eq!((p.k, p.l, p.w, p.q, p.m, p.n), (3, 7, 1, 2, 2, 32));
        assert_eq!(p.last_common.to_string(), "01101*");
        assert_eq!(p.common.len(), 2);
        assert_eq!(p.common[0], PullbackId::delta_prime());
        assert!(!p.assumption_holds);
        assert_eq!(p.hat_f_u.len(), 1);
        assert_eq!(p.f_u.len(), 1);
        assert_eq!(p.hat_f_v.len(), 2);
        assert_eq!(p.f_v.len(), 2);
        assert_eq!(p.hat_f_u[0].to_string(), "01101101*");
        assert_eq!(p.hat_f_v[0].to_string(), "011011101*");
    }

    #[test]
    fn blocks_continue_the_strings() {
        let p = plan_construction(&word("011"), &word("0110111")).unwrap();
        let su = string_of(&it("(011)^"), 4).unwrap();
        assert_eq!(p.hat_f_u, su.elements()[2..3].to_vec());
        assert_eq!(p.f_u, su.elements()[3..4].to_vec());
        // L is attached to the first element of each continuation.
        assert!(intersects(&p.last_common, &p.hat_f_u[0]));
        assert!(intersects(&p.last_common, &p.hat_f_v[0]));
        for a in p.hat_f_u.iter().chain(&p.f_u) {
            for b in p.hat_f_v.iter().chain(&p.f_v) {
                assert_ne!(a, b);
                assert!(!intersects(a, b));
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            plan_construction(&word("011"), &word("011")),
            Err(SymbolicError::IdenticalSources(_))
        ));
        assert!(matches!(
            plan_construction(&word("011"), &word("011011")),
            Err(SymbolicError::IdenticalSources(_))
        ));
        assert!(matches!(
            plan_construction(&word("111"), &word("011")),
            Err(SymbolicError::NoZeros(_))
        ));
        // Both strings start at Δ' and part right after.
        assert_eq!(
            plan_construction(&word("01"), &word("001")),
            Err(SymbolicError::PrefixTooShort { m: 1 })
        );
        assert_eq!(
            plan_construction(&word("1"), &word("0")),
            Err(SymbolicError::NoZeros("1".into()))
        );
    }

    #[test]
    fn prefix_of_short_and_finite_strings() {
        let a = string_of(&it("(01)^"), 2).unwrap();
        let b = string_of(&it("(001)^"), 2).unwrap();
        let c = common_prefix(&a, &b).unwrap();
        assert_eq!(c.m, 1);
        assert_eq!(c.last, Some(PullbackId::delta_prime()));

        // One source has finitely many zeros.
        let d = string_of(&it("01*"), 1).unwrap();
        let x = string_of(&it("(011)^"), 1).unwrap();
        assert_eq!(common_prefix(&d, &x).unwrap().m, 1);

        let e = string_of(&it("(1101)^"), 1).unwrap();
        let c = common_prefix(&e, &x).unwrap();
        assert_eq!((c.m, c.last), (0, None));
    }
}
