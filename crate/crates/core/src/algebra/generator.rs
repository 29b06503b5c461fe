use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Which family of mode generators is canonical for a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    PhiPi,
    Ladder,
}

/// Algebra generator. The derived order is the fixed normal-ordering order:
/// `I < K < Kinv < Phi(0) < Phi(1) < ... < Pi(0) < ...` and likewise
/// `APlus(_) < AMinus(_)` for the ladder basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    I,
    K,
    Kinv,
    Phi(u32),
    Pi(u32),
    APlus(u32),
    AMinus(u32),
}

impl Generator {
    /// `I`, `K` and `Kinv` commute with everything.
    pub fn is_central(self) -> bool {
        matches!(self, Generator::I | Generator::K | Generator::Kinv)
    }

    pub fn basis(self) -> Option<Basis> {
        match self {
            Generator::Phi(_) | Generator::Pi(_) => Some(Basis::PhiPi),
            Generator::APlus(_) | Generator::AMinus(_) => Some(Basis::Ladder),
            _ => None,
        }
    }

    pub fn mode(self) -> Option<u32> {
        match self {
            Generator::Phi(j) | Generator::Pi(j) | Generator::APlus(j) | Generator::AMinus(j) => {
                Some(j)
            }
            _ => None,
        }
    }

    /// Generators of the given basis for modes `0..d`.
    pub fn modes(basis: Basis, d: u32) -> Vec<Generator> {
        match basis {
            Basis::PhiPi => (0..d)
                .map(Generator::Phi)
                .chain((0..d).map(Generator::Pi))
                .collect(),
            Basis::Ladder => (0..d)
                .map(Generator::APlus)
                .chain((0..d).map(Generator::AMinus))
                .collect(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::I => write!(f, "I"),
            Generator::K => write!(f, "K"),
            Generator::Kinv => write!(f, "Kinv"),
            Generator::Phi(j) => write!(f, "phi({j})"),
            Generator::Pi(j) => write!(f, "pi({j})"),
            Generator::APlus(j) => write!(f, "ap({j})"),
            Generator::AMinus(j) => write!(f, "am({j})"),
        }
    }
}

/// Word in the free monoid on generators. The empty word is the algebra
/// unit `1`, which is distinct from the generator `I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Non-decreasing in the generator order.
    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

/// Words are ordered by degree first so that printed expressions list
/// low-degree terms first.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "one");
        }
        for (n, g) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn generator_order_matches_normal_ordering() {
        let mut v = vec![Pi(0), Phi(1), Kinv, I, Phi(0), K, Pi(1)];
        v.sort();
        assert_eq!(v, vec![I, K, Kinv, Phi(0), Phi(1), Pi(0), Pi(1)]);
        let mut l = vec![AMinus(0), APlus(1), I, APlus(0)];
        l.sort();
        assert_eq!(l, vec![I, APlus(0), APlus(1), AMinus(0)]);
    }

    #[test]
    fn word_display() {
        assert_eq!(Word::unit().to_string(), "one");
        assert_eq!(Word(vec![Phi(0), Pi(1), I]).to_string(), "phi(0)*pi(1)*I");
        assert!(Word(vec![I, Phi(0), Pi(0)]).is_sorted());
        assert!(!Word(vec![Pi(0), Phi(0)]).is_sorted());
    }
}
