use serde::Serialize;

use super::{Itinerary, PullbackId, SymbolicError, Word};

/// The `j`-th pullback on the string of a dust point with itinerary `source`: keep the
/// symbols up to and including the `j`-th zero, then ones forever.
pub fn string_element(source: &Itinerary, j: usize) -> Option<PullbackId> {
    let pos = source.nth_zero(j)?;
    Some(PullbackId::from_word(&source.prefix(pos + 1)))
}

/// The chain of pullbacks joining `Δ` to a dust point, materialized up to some length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackString {
    source: Itinerary,
    elements: Vec<PullbackId>,
}

impl PullbackString {
    /// The string of the periodic point with itinerary `{word}_∞`, nothing materialized yet.
    pub fn periodic(word: &Word) -> Result<Self, SymbolicError> {
        basic_length(word)?;
        Ok(Self {
            source: Itinerary::periodic(word)?,
            elements: Vec::new(),
        })
    }

    pub fn source(&self) -> &Itinerary {
        &self.source
    }

    /// `elements()[j - 1]` is `Δ^j`.
    pub fn elements(&self) -> &[PullbackId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Δ^j`, computed from the source whether or not it has been materialized.
    pub fn element(&self, j: usize) -> Option<PullbackId> {
        match self.elements.get(j.wrapping_sub(1)) {
            Some(e) => Some(e.clone()),
            None => string_element(&self.source, j),
        }
    }

    pub fn extend_to(&mut self, count: usize) -> Result<(), SymbolicError> {
        for j in self.elements.len() + 1..=count {
            let e = string_element(&self.source, j).ok_or(SymbolicError::NotEnoughZeros {
                requested: count,
                available: j - 1,
            })?;
            self.elements.push(e);
        }
        Ok(())
    }
}

pub fn string_of(source: &Itinerary, count: usize) -> Result<PullbackString, SymbolicError> {
    let mut s = PullbackString {
        source: source.clone(),
        elements: Vec::new(),
    };
    s.extend_to(count)?;
    Ok(s)
}

/// Number of zeros in the primitive root of `word`.
pub fn basic_length(word: &Word) -> Result<usize, SymbolicError> {
    match word.primitive_root().zeros() {
        0 => Err(SymbolicError::NoZeros(word.to_string())),
        l => Ok(l),
    }
}

/// The first `count` consecutive groups of `l` elements.
pub fn fragments(
    s: &PullbackString,
    l: usize,
    count: usize,
) -> Result<Vec<Vec<PullbackId>>, SymbolicError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if l == 0 {
        return Err(SymbolicError::NoZeros(s.source.to_string()));
    }
    let needed = l * count;
    if s.len() < needed {
        return Err(SymbolicError::NotEnoughElements {
            needed,
            available: s.len(),
        });
    }
    Ok(s.elements[..needed].chunks(l).map(<[_]>::to_vec).collect())
}

/// Checks that the `k`-fold shift (`k` the period) moves every string element down by
/// `l` places (`l` the basic length) for the first `depth` elements, and sends the first
/// fragment onto `Δ`.
pub fn verify_shift_down(word: &Word, depth: usize) -> Result<bool, SymbolicError> {
    let root = word.primitive_root();
    let l = basic_length(&root)?;
    let k = root.len();
    let s = string_of(&Itinerary::periodic(&root)?, depth + l)?;
    let e = s.elements();
    let moves_down = (0..depth).all(|j| e[j + l].shift(k) == e[j]);
    let first_onto_delta = e[..l].iter().all(|p| p.shift(k) == PullbackId::delta());
    Ok(moves_down && first_onto_delta)
}
