use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Assignment, Integer, Monomial, Rational, RationalFunction, Symbol};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms live in a map keyed by [`Monomial`], so iteration is in ascending
/// monomial order and two polynomials are equal exactly when their term maps
/// are. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(symbol: Symbol) -> Self {
        Self::term(Rational::one(), Monomial::var(symbol, 1))
    }

    pub fn term(coefficient: Rational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, monomial: Monomial, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    /// The term with the largest monomial.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The constant value, when this polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn degree_in(&self, symbol: &Symbol) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(symbol)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Every symbol occurring in some term, ascending.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|(s, _)| s.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, monomial: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(monomial), c.clone()))
                .collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, monomial: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(monomial)?, c.clone());
        }
        Some(Self { terms })
    }

    /// Multivariate division by a single divisor in the lex order:
    /// `self = quotient * divisor + remainder`, where no term of the
    /// remainder is divisible by the divisor's leading monomial.
    ///
    /// Returns `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rest = self.clone();
        let mut quotient = Self::zero();
        let mut remainder = Self::zero();
        while let Some((m, c)) = rest.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            match m.div(&lead_m) {
                Some(shift) => {
                    let factor = &c / &lead_c;
                    rest = &rest - &divisor.mul_monomial(&shift).scale(&factor);
                    quotient.add_term(shift, factor);
                }
                None => {
                    rest.terms.remove(&m);
                    remainder.add_term(m, c);
                }
            }
        }
        Some((quotient, remainder))
    }

    /// The exact quotient, if `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The polynomial in the remaining symbols that multiplies `symbol^degree`.
    pub fn coefficient_of(&self, symbol: &Symbol, degree: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(symbol);
            if e == degree {
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Coefficients of every power of `symbol`, keyed by exponent.
    pub fn coefficients_in(&self, symbol: &Symbol) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(symbol);
            out.entry(e).or_default().terms.insert(rest, c.clone());
        }
        out
    }

    /// The odd part p(s) - p(-s) with respect to `symbol`.
    pub fn odd_part_in(&self, symbol: &Symbol) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(symbol) % 2 == 1)
                .map(|(m, c)| (m.clone(), c * Rational::from_integer(2.into())))
                .collect(),
        }
    }

    /// Substitutes `symbol := -symbol`.
    pub fn reflect(&self, symbol: &Symbol) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.degree_in(symbol) % 2 == 1 {
                        -c
                    } else {
                        c.clone()
                    };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Polynomial substitution `symbol := value`.
    pub fn compose(&self, symbol: &Symbol, value: &Polynomial) -> Self {
        let coefficients = self.coefficients_in(symbol);
        let mut out = Self::zero();
        let mut power = Self::one();
        let mut current = 0;
        for (degree, coefficient) in coefficients {
            while current < degree {
                power = &power * value;
                current += 1;
            }
            out = &out + &(&coefficient * &power);
        }
        out
    }

    /// Substitutes `symbol := value`, producing a reduced rational function.
    ///
    /// With `value = n/d` and `D` the degree of `self` in `symbol`, the result
    /// is `sum_k c_k n^k d^(D-k) / d^D`.
    pub fn substitute(&self, symbol: &Symbol, value: &RationalFunction) -> RationalFunction {
        let coefficients = self.coefficients_in(symbol);
        let top = coefficients.keys().next_back().copied().unwrap_or(0);
        let (num, den) = (value.numerator(), value.denominator());
        let num_powers = powers_up_to(num, top);
        let den_powers = powers_up_to(den, top);
        let mut out = Self::zero();
        for (degree, coefficient) in &coefficients {
            let k = *degree as usize;
            let term = &(&coefficient.clone() * &num_powers[k]) * &den_powers[top as usize - k];
            out = &out + &term;
        }
        RationalFunction::new(out, den_powers[top as usize].clone())
            .expect("a power of a nonzero polynomial is nonzero")
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<Rational, AlgebraError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (s, e) in m.powers() {
                let v = assignment
                    .get(s)
                    .ok_or_else(|| AlgebraError::MissingAssignment(s.name().to_string()))?;
                value *= num_traits::pow(v.clone(), *e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Partially evaluates the symbols bound in `assignment`, leaving the rest symbolic.
    pub fn specialize(&self, assignment: &Assignment) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coefficient = c.clone();
            let mut rest = Vec::new();
            for (s, e) in m.powers() {
                match assignment.get(s) {
                    Some(v) => coefficient *= num_traits::pow(v.clone(), *e as usize),
                    None => rest.push((s.clone(), *e)),
                }
            }
            out.add_term(Monomial::from_powers(rest), coefficient);
        }
        out
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// The lcm of coefficient denominators.
    pub fn denominator_lcm(&self) -> Integer {
        self.terms
            .values()
            .fold(Integer::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// The gcd of coefficient numerators (non-negative, zero for the zero polynomial).
    pub fn numerator_gcd(&self) -> Integer {
        self.terms
            .values()
            .fold(Integer::zero(), |acc, c| acc.gcd(c.numer()))
    }

    /// The largest monomial dividing every term; the constant monomial for zero.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        match iter.next() {
            None => Monomial::one(),
            Some(first) => iter.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn integer_coefficients(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (m.clone(), c.to_integer())))
            .collect()
    }
}

fn powers_up_to(base: &Polynomial, top: u32) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(top as usize + 1);
    out.push(Polynomial::one());
    for k in 0..top as usize {
        let next = if base.is_one() {
            Polynomial::one()
        } else {
            &out[k] * base
        };
        out.push(next);
    }
    out
}

impl From<Symbol> for Polynomial {
    fn from(symbol: Symbol) -> Self {
        Self::var(symbol)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (lm, lc) in &self.terms {
            for (rm, rc) in &rhs.terms {
                out.add_term(lm.mul(rm), lc * rc);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Prints terms from the largest monomial down, e.g. `x^2 - 3/2*x*y + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}
