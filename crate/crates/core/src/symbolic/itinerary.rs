use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SymbolicError;

/// A finite binary word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Result<Self, SymbolicError> {
        if let Some(&s) = symbols.iter().find(|&&s| s > 1) {
            return Err(SymbolicError::InvalidSymbol(s));
        }
        Ok(Self(symbols))
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&s| s == 0).count()
    }

    /// Shortest word whose infinite repetition equals the repetition of `self`.
    pub fn primitive_root(&self) -> Word {
        let n = self.0.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return Word(self.0[..d].to_vec());
            }
        }
        self.clone()
    }

    pub fn is_primitive(&self) -> bool {
        !self.0.is_empty() && self.primitive_root().len() == self.0.len()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(SymbolicError::Parse(s.to_string())),
            })
            .collect::<Result<Vec<u8>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    AllOnes,
    Periodic(Word),
}

/// An eventually periodic binary sequence `head · tail`, kept in canonical form:
/// the periodic word is primitive and not all ones, and the head is as short as possible.
/// Structural equality is therefore equality of the infinite sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itinerary {
    head: Vec<u8>,
    tail: Tail,
}

impl Itinerary {
    pub fn new(head: Word, tail: Tail) -> Result<Self, SymbolicError> {
        if let Tail::Periodic(w) = &tail {
            if w.is_empty() {
                return Err(SymbolicError::EmptyPeriod);
            }
        }
        Ok(Self::canonical(head.0, tail))
    }

    /// `1_∞`.
    pub fn all_ones() -> Self {
        Self {
            head: Vec::new(),
            tail: Tail::AllOnes,
        }
    }

    /// `word · 1_∞`.
    pub fn eventually_ones(word: &[u8]) -> Self {
        Self::canonical(word.to_vec(), Tail::AllOnes)
    }

    /// `{word}_∞`.
    pub fn periodic(word: &Word) -> Result<Self, SymbolicError> {
        Self::new(Word::default(), Tail::Periodic(word.clone()))
    }

    fn canonical(mut head: Vec<u8>, tail: Tail) -> Self {
        let tail = match tail {
            Tail::Periodic(w) if w.0.iter().all(|&s| s == 1) => Tail::AllOnes,
            Tail::Periodic(w) => Tail::Periodic(w.primitive_root()),
            Tail::AllOnes => Tail::AllOnes,
        };
        match tail {
            Tail::AllOnes => {
                while head.last() == Some(&1) {
                    head.pop();
                }
                Self {
                    head,
                    tail: Tail::AllOnes,
                }
            }
            Tail::Periodic(mut w) => {
                // Absorb the head's last symbol into the cycle while it matches.
                while let Some(&last) = head.last() {
                    if last != *w.0.last().expect("nonempty period") {
                        break;
                    }
                    head.pop();
                    w.0.rotate_right(1);
                }
                Self {
                    head,
                    tail: Tail::Periodic(w),
                }
            }
        }
    }

    pub fn head(&self) -> &[u8] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_eventually_ones(&self) -> bool {
        self.tail == Tail::AllOnes
    }

    pub fn symbol(&self, i: usize) -> u8 {
        if i < self.head.len() {
            return self.head[i];
        }
        match &self.tail {
            Tail::AllOnes => 1,
            Tail::Periodic(w) => w.0[(i - self.head.len()) % w.len()],
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<u8> {
        (0..len).map(|i| self.symbol(i)).collect()
    }

    /// Drops `steps` leading symbols.
    pub fn shift(&self, steps: usize) -> Itinerary {
        if steps <= self.head.len() {
            return Self::canonical(self.head[steps..].to_vec(), self.tail.clone());
        }
        match &self.tail {
            Tail::AllOnes => Self::all_ones(),
            Tail::Periodic(w) => {
                let mut w = w.clone();
                let by = (steps - self.head.len()) % w.len();
                w.0.rotate_left(by);
                Self {
                    head: Vec::new(),
                    tail: Tail::Periodic(w),
                }
            }
        }
    }

    /// Position of the `j`-th zero, counting from `j = 1`.
    pub fn nth_zero(&self, j: usize) -> Option<usize> {
        if j == 0 {
            return None;
        }
        let head_zeros: Vec<usize> = positions_of_zero(&self.head).collect();
        if j <= head_zeros.len() {
            return Some(head_zeros[j - 1]);
        }
        match &self.tail {
            Tail::AllOnes => None,
            Tail::Periodic(w) => {
                let in_word: Vec<usize> = positions_of_zero(&w.0).collect();
                let r = j - head_zeros.len() - 1;
                let (full, within) = (r / in_word.len(), r % in_word.len());
                Some(self.head.len() + full * w.len() + in_word[within])
            }
        }
    }

    /// Number of zeros, or `None` when infinite.
    pub fn zero_count(&self) -> Option<usize> {
        match self.tail {
            Tail::AllOnes => Some(self.head.iter().filter(|&&s| s == 0).count()),
            Tail::Periodic(_) => None,
        }
    }
}

fn positions_of_zero(symbols: &[u8]) -> impl Iterator<Item = usize> + '_ {
    symbols
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 0)
        .map(|(i, _)| i)
}

/// `head1*` for eventually-ones sequences, `head(word)^` for periodic tails.
impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.head {
            write!(f, "{s}")?;
        }
        match &self.tail {
            Tail::AllOnes => write!(f, "1*"),
            Tail::Periodic(w) => write!(f, "({w})^"),
        }
    }
}

/// Accepts `head(word)^`, `headx*` (the symbol `x` repeated forever), and ignores
/// whitespace and `·` separators, so `0110·1*` and `01101*` name the same sequence.
impl FromStr for Itinerary {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SymbolicError::Parse(s.to_string());
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '·' && *c != '.')
            .collect();
        if let Some(body) = cleaned.strip_suffix(")^") {
            let (head, word) = body.split_once('(').ok_or_else(bad)?;
            let head: Word = head.parse().map_err(|_| bad())?;
            let word: Word = word.parse().map_err(|_| bad())?;
            return Itinerary::new(head, Tail::Periodic(word));
        }
        if let Some(body) = cleaned.strip_suffix('*') {
            let (repeated, head) = match body.chars().last() {
                Some('1') => (Word(vec![1]), &body[..body.len() - 1]),
                Some('0') => (Word(vec![0]), &body[..body.len() - 1]),
                _ => return Err(bad()),
            };
            let head: Word = head.parse().map_err(|_| bad())?;
            return Itinerary::new(head, Tail::Periodic(repeated));
        }
        Err(bad())
    }
}

impl Serialize for Itinerary {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Itinerary {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Itinerary of `Δ` or of a `Δ'`-pullback: eventually all ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PullbackId(Itinerary);

impl PullbackId {
    pub fn new(itinerary: Itinerary) -> Result<Self, SymbolicError> {
        if !itinerary.is_eventually_ones() {
            return Err(SymbolicError::NotPullback(itinerary.to_string()));
        }
        Ok(Self(itinerary))
    }

    /// `word · 1_∞`.
    pub fn from_word(word: &[u8]) -> Self {
        Self(Itinerary::eventually_ones(word))
    }

    /// `Δ`, with itinerary `1_∞`.
    pub fn delta() -> Self {
        Self(Itinerary::all_ones())
    }

    /// `Δ'`, with itinerary `01_∞`.
    pub fn delta_prime() -> Self {
        Self::from_word(&[0])
    }

    pub fn itinerary(&self) -> &Itinerary {
        &self.0
    }

    /// The canonical head; it is empty for `Δ` and otherwise ends in `0`.
    pub fn head(&self) -> &[u8] {
        self.0.head()
    }

    pub fn shift(&self, steps: usize) -> PullbackId {
        Self(self.0.shift(steps))
    }

    /// The pullback this one is attached to on the side of `Δ`: the last zero turned into a one.
    pub fn parent(&self) -> Option<PullbackId> {
        let head = self.head();
        let (_, rest) = head.split_last()?;
        Some(Self::from_word(rest))
    }
}

impl fmt::Display for PullbackId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for PullbackId {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PullbackId::new(s.parse()?)
    }
}

impl Serialize for PullbackId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PullbackId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let it = Itinerary::deserialize(deserializer)?;
        PullbackId::new(it).map_err(serde::de::Error::custom)
    }
}

/// Drops `steps` leading symbols and re-canonicalizes.
pub fn shift(itinerary: &Itinerary, steps: usize) -> Itinerary {
    itinerary.shift(steps)
}

/// Whether the two pullbacks share a point: for some `k` the sequences agree before `k`,
/// one has `1` and the other `0` at `k`, and both are all ones after `k`.
/// Never true for a pullback and itself.
pub fn intersects(i: &PullbackId, j: &PullbackId) -> bool {
    j.parent().as_ref() == Some(i) || i.parent().as_ref() == Some(j)
}
