use std::cmp::Ordering;
use std::fmt;

use super::Symbol;

/// A power product of symbols, stored sparsely and sorted by symbol.
///
/// Zero exponents are never stored, so the constant monomial is the empty
/// product. Monomials compare lexicographically: the exponent of the
/// lowest-ordinal symbol decides first, then the next one, and so on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    powers: Vec<(Symbol, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(symbol: Symbol, exponent: u32) -> Self {
        if exponent == 0 {
            return Self::one();
        }
        Self {
            powers: vec![(symbol, exponent)],
        }
    }

    /// Builds a monomial from arbitrary (symbol, exponent) pairs, merging repeats.
    pub fn from_powers<I: IntoIterator<Item = (Symbol, u32)>>(powers: I) -> Self {
        powers
            .into_iter()
            .fold(Self::one(), |acc, (s, e)| acc.mul(&Self::var(s, e)))
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(Symbol, u32)] {
        &self.powers
    }

    pub fn degree_in(&self, symbol: &Symbol) -> u32 {
        self.powers
            .binary_search_by(|(s, _)| s.cmp(symbol))
            .map(|idx| self.powers[idx].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (ls, le) = &self.powers[i];
            let (rs, re) = &other.powers[j];
            match ls.cmp(rs) {
                Ordering::Less => {
                    powers.push((ls.clone(), *le));
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push((rs.clone(), *re));
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((ls.clone(), le + re));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        powers.extend_from_slice(&other.powers[j..]);
        Self { powers }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        if exponent == 0 {
            return Self::one();
        }
        Self {
            powers: self
                .powers
                .iter()
                .map(|(s, e)| (s.clone(), e * exponent))
                .collect(),
        }
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div(&self, divisor: &Self) -> Option<Self> {
        let mut powers = Vec::with_capacity(self.powers.len());
        let mut j = 0;
        for (s, e) in &self.powers {
            let mut exp = *e;
            if j < divisor.powers.len() && divisor.powers[j].0 == *s {
                exp = exp.checked_sub(divisor.powers[j].1)?;
                j += 1;
            } else if j < divisor.powers.len() && divisor.powers[j].0 < *s {
                return None;
            }
            if exp > 0 {
                powers.push((s.clone(), exp));
            }
        }
        if j < divisor.powers.len() {
            return None;
        }
        Some(Self { powers })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Self) -> Self {
        let powers = self
            .powers
            .iter()
            .filter_map(|(s, e)| {
                let m = (*e).min(other.degree_in(s));
                (m > 0).then(|| (s.clone(), m))
            })
            .collect();
        Self { powers }
    }

    /// Splits off the power of `symbol`, returning (exponent, remaining monomial).
    pub fn split(&self, symbol: &Symbol) -> (u32, Self) {
        let mut exponent = 0;
        let powers = self
            .powers
            .iter()
            .filter(|(s, e)| {
                if s == symbol {
                    exponent = *e;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (exponent, Self { powers })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (l, r) in self.powers.iter().zip(&other.powers) {
            match l.0.cmp(&r.0) {
                // The side holding the smaller symbol has a positive exponent
                // where the other has zero.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match l.1.cmp(&r.1) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
            }
        }
        self.powers.len().cmp(&other.powers.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (idx, (s, e)) in self.powers.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}
