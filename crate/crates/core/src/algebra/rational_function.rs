use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Assignment, Polynomial, Rational, Symbol};

/// A quotient of polynomials.
///
/// Construction reduces the pair: coefficients become coprime integers, the
/// common monomial factor is cancelled and the denominator's leading
/// coefficient is made positive. No polynomial gcd is taken, so equality is
/// decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn zero() -> Self {
        Self::from(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from(Polynomial::one())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if the reduced denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&c.recip()))
    }

    fn reduced(mut num: Polynomial, mut den: Polynomial) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: Polynomial::one(),
            };
        }
        let lcm = num_integer::lcm(num.denominator_lcm(), den.denominator_lcm());
        let gcd = num_integer::gcd(num.numerator_gcd(), den.numerator_gcd());
        let mut factor = Rational::new(lcm, gcd);
        if den
            .leading_term()
            .is_some_and(|(_, c)| c.is_negative())
        {
            factor = -factor;
        }
        if !factor.is_one() {
            num = num.scale(&factor);
            den = den.scale(&factor);
        }
        let common = num.monomial_content().gcd(&den.monomial_content());
        if !common.is_one() {
            num = num.div_monomial(&common).expect("content divides");
            den = den.div_monomial(&common).expect("content divides");
        }
        Self { num, den }
    }

    /// True iff `self` and `other` agree after cross-multiplication.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self::reduced(self.num.pow(exp), self.den.pow(exp))
    }

    /// Substitutes `symbol := value` in numerator and denominator.
    ///
    /// Fails if the denominator becomes identically zero.
    pub fn substitute(&self, symbol: &Symbol, value: &Self) -> Result<Self, AlgebraError> {
        let num = self.num.substitute(symbol, value);
        let den = self.den.substitute(symbol, value);
        num.checked_div(&den)
    }

    pub fn reflect(&self, symbol: &Symbol) -> Self {
        Self::reduced(self.num.reflect(symbol), self.den.reflect(symbol))
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<Rational, AlgebraError> {
        let den = self.den.eval(assignment)?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.num.eval(assignment)? / den)
    }

    /// Partially evaluates; fails if the denominator vanishes.
    pub fn specialize(&self, assignment: &Assignment) -> Result<Self, AlgebraError> {
        Self::new(
            self.num.specialize(assignment),
            self.den.specialize(assignment),
        )
        .map_err(|_| AlgebraError::DivisionByZero)
    }
}

/// Cross-multiplication equality.
pub fn rf_equal(lhs: &RationalFunction, rhs: &RationalFunction) -> bool {
    lhs.equivalent(rhs)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::reduced(p, Polynomial::one())
    }
}

impl From<Symbol> for RationalFunction {
    fn from(s: Symbol) -> Self {
        Self::from(Polynomial::var(s))
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::from(Polynomial::constant(c))
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap_num = self.num.len() > 1;
        let wrap_den = self.den.len() > 1 || self.den.as_constant().is_none();
        match (wrap_num, wrap_den) {
            (true, true) => write!(f, "({})/({})", self.num, self.den),
            (true, false) => write!(f, "({})/{}", self.num, self.den),
            (false, true) => write!(f, "{}/({})", self.num, self.den),
            (false, false) => write!(f, "{}/{}", self.num, self.den),
        }
    }
}
