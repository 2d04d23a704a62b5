use crate::algebra::{Polynomial, RationalFunction, Symbol};

use super::DerivationError;

/// `c0 + c1*v + c2*v^2` with coefficients free of `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm {
    pub constant: RationalFunction,
    pub linear: RationalFunction,
    pub quadratic: RationalFunction,
}

impl QuadraticForm {
    pub fn new(
        quadratic: RationalFunction,
        linear: RationalFunction,
        constant: RationalFunction,
    ) -> Self {
        Self {
            constant,
            linear,
            quadratic,
        }
    }

    /// Splits a polynomial of degree at most two in `var`.
    pub fn from_polynomial(p: &Polynomial, var: &Symbol) -> Result<Self, DerivationError> {
        let degree = p.degree_in(var).unwrap_or(0);
        if degree > 2 {
            return Err(DerivationError::NotQuadratic {
                symbol: var.name().to_string(),
                degree,
            });
        }
        let c = |d| RationalFunction::from(p.coefficient_of(var, d));
        Ok(Self::new(c(2), c(1), c(0)))
    }

    pub fn coefficients(&self) -> [&RationalFunction; 3] {
        [&self.constant, &self.linear, &self.quadratic]
    }

    pub fn map<F>(&self, mut f: F) -> Result<Self, DerivationError>
    where
        F: FnMut(&RationalFunction) -> Result<RationalFunction, DerivationError>,
    {
        Ok(Self {
            constant: f(&self.constant)?,
            linear: f(&self.linear)?,
            quadratic: f(&self.quadratic)?,
        })
    }

    /// The form as a single rational function in `var`.
    pub fn to_function(&self, var: &Symbol) -> RationalFunction {
        let v = RationalFunction::from(var.clone());
        let v2 = v.pow(2);
        let sum = &self.constant + &(&self.linear * &v);
        &sum + &(&self.quadratic * &v2)
    }
}

/// A function `F(v) = A(v)^3 + B(v)^3` with quadratic forms `A`, `B` in `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubeSumTemplate {
    pub var: Symbol,
    pub form_a: QuadraticForm,
    pub form_b: QuadraticForm,
}

impl CubeSumTemplate {
    pub fn new(var: Symbol, form_a: QuadraticForm, form_b: QuadraticForm) -> Self {
        Self {
            var,
            form_a,
            form_b,
        }
    }

    pub fn from_polynomials(
        var: &Symbol,
        a: &Polynomial,
        b: &Polynomial,
    ) -> Result<Self, DerivationError> {
        Ok(Self::new(
            var.clone(),
            QuadraticForm::from_polynomial(a, var)?,
            QuadraticForm::from_polynomial(b, var)?,
        ))
    }

    pub fn expand(&self) -> RationalFunction {
        let a = self.form_a.to_function(&self.var).pow(3);
        let b = self.form_b.to_function(&self.var).pow(3);
        &a + &b
    }

    /// `F(v) - F(-v)`.
    pub fn odd_part(&self) -> RationalFunction {
        let expanded = self.expand();
        &expanded - &expanded.reflect(&self.var)
    }

    pub fn is_even(&self) -> bool {
        self.odd_part().is_zero()
    }
}

/// Odd part of a polynomial with respect to `var`.
pub fn odd_part_of(p: &Polynomial, var: &Symbol) -> Polynomial {
    p.odd_part_in(var)
}
