use serde::Serialize;

use crate::algebra::{Assignment, Rational, RationalFunction, Symbol};

use super::DerivationError;

/// One checked step: what was computed and what it had to match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub name: String,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub verified: bool,
}

/// Ordered audit trail of a derivation run.
#[derive(Clone, Debug, Serialize)]
pub struct DerivationTrace {
    pub steps: Vec<TraceStep>,
    #[serde(skip)]
    pub solution: SolvedParameters,
}

impl DerivationTrace {
    pub fn is_valid(&self) -> bool {
        self.steps.iter().all(|s| s.verified)
    }

    pub fn verified_count(&self) -> usize {
        self.steps.iter().filter(|s| s.verified).count()
    }

    pub fn first_failure(&self) -> Option<&TraceStep> {
        self.steps.iter().find(|s| !s.verified)
    }

    pub fn check(&self) -> Result<(), DerivationError> {
        match self.first_failure() {
            None => Ok(()),
            Some(step) => Err(DerivationError::VerificationFailure {
                step: step.name.clone(),
            }),
        }
    }
}

/// Solved coefficients in terms of `a0`, `a1`, `b0`.
#[derive(Clone, Debug)]
pub struct SolvedParameters {
    pub a0: Symbol,
    pub a1: Symbol,
    pub b0: Symbol,
    pub a2: RationalFunction,
    pub b1: RationalFunction,
    pub b2: RationalFunction,
}

/// Numeric values of `(a2, b1, b2)` at a parameter point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedCoefficients {
    pub a2: Rational,
    pub b1: Rational,
    pub b2: Rational,
}

impl SolvedParameters {
    /// Evaluates the solved coefficients; `a0 = 0` or `b0 = 0` is rejected
    /// because the solved fractions divide by both.
    pub fn specialize(
        &self,
        a0: &Rational,
        a1: &Rational,
        b0: &Rational,
    ) -> Result<SpecializedCoefficients, DerivationError> {
        use num_traits::Zero;
        if a0.is_zero() || b0.is_zero() {
            return Err(DerivationError::DegenerateParameters(format!(
                "a0 = {a0}, b0 = {b0}: the solved coefficients divide by a0 and b0"
            )));
        }
        let at: Assignment = [
            (self.a0.clone(), a0.clone()),
            (self.a1.clone(), a1.clone()),
            (self.b0.clone(), b0.clone()),
        ]
        .into_iter()
        .collect();
        let eval = |rf: &RationalFunction| {
            rf.eval(&at)
                .map_err(|e| DerivationError::DegenerateParameters(e.to_string()))
        };
        Ok(SpecializedCoefficients {
            a2: eval(&self.a2)?,
            b1: eval(&self.b1)?,
            b2: eval(&self.b2)?,
        })
    }
}
