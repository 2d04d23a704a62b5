//! Exact arithmetic: big integers and rationals, sparse multivariate
//! polynomials over the rationals, and quotients of those polynomials.

mod monomial;
mod polynomial;
mod rational_function;
mod symbol;

use std::collections::BTreeMap;

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use rational_function::{rf_equal, RationalFunction};
pub use symbol::{Symbol, SymbolTable};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Reduced fraction of [`Integer`]s with a positive denominator.
pub type Rational = num_rational::BigRational;
/// Values bound to symbols for evaluation.
pub type Assignment = BTreeMap<Symbol, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("no value assigned to symbol `{0}`")]
    MissingAssignment(String),
    #[error("rational function with a zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Builds an [`Assignment`] from integer values.
pub fn assign<'a, I: IntoIterator<Item = (&'a Symbol, i64)>>(values: I) -> Assignment {
    values
        .into_iter()
        .map(|(s, v)| (s.clone(), rational(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    struct Ctx {
        x: Symbol,
        y: Symbol,
        z: Symbol,
        w: Symbol,
    }

    fn ctx() -> Ctx {
        let t = SymbolTable::with_names(["x", "y", "z", "w"]);
        Ctx {
            x: t.get("x").unwrap(),
            y: t.get("y").unwrap(),
            z: t.get("z").unwrap(),
            w: t.get("w").unwrap(),
        }
    }

    fn v(s: &Symbol) -> Polynomial {
        Polynomial::var(s.clone())
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::integer(n)
    }

    #[test]
    fn add_cancels_and_keeps_identity() {
        let Ctx { x, y, .. } = ctx();
        let x2 = v(&x).pow(2);
        assert_eq!(&(&x2 + &c(1)) + &(-&x2), c(1));
        let p = &v(&x) + &v(&y);
        assert_eq!(&p + &Polynomial::zero(), p);
        let sum = &(&v(&x) + &v(&y)) + &(&v(&x) - &v(&y));
        assert_eq!(sum, Polynomial::term(rational(2), Monomial::var(x.clone(), 1)));
        let at = assign([(&x, 3), (&y, 5)]);
        assert_eq!(sum.eval(&at).unwrap(), rational(6));
    }

    #[test]
    fn mul_and_pow() {
        let Ctx { x, y, z, .. } = ctx();
        let xp1 = &v(&x) + &c(1);
        let xm1 = &v(&x) - &c(1);
        assert_eq!(&xp1 * &xm1, &v(&x).pow(2) - &c(1));
        assert_eq!(&xp1 * &Polynomial::one(), xp1);
        assert_eq!(v(&x).pow(0), Polynomial::one());

        let cube = xp1.pow(3);
        let expected = Polynomial::from_terms([
            (Monomial::var(x.clone(), 3), rational(1)),
            (Monomial::var(x.clone(), 2), rational(3)),
            (Monomial::var(x.clone(), 1), rational(3)),
            (Monomial::one(), rational(1)),
        ]);
        assert_eq!(cube, expected);

        // (a1 x + a0)^3 with a1 = y, a0 = z: binomial coefficients.
        let linear = &(&v(&y) * &v(&x)) + &v(&z);
        let cube = linear.pow(3);
        assert_eq!(cube.len(), 4);
        for k in 0..=3u32 {
            let m = Monomial::from_powers([
                (x.clone(), k),
                (y.clone(), k),
                (z.clone(), 3 - k),
            ]);
            let binom = [1, 3, 3, 1][k as usize];
            assert_eq!(cube.terms().find(|(mm, _)| **mm == m).unwrap().1, &rational(binom));
        }
    }

    #[test]
    fn trinomial_cube_has_ten_terms() {
        let t = SymbolTable::with_names(["a2", "a1", "a0", "x"]);
        let s = |n: &str| Polynomial::var(t.get(n).unwrap());
        let x = s("x");
        let form = &(&(&s("a2") * &x.pow(2)) + &(&s("a1") * &x)) + &s("a0");
        assert_eq!(form.pow(3).len(), 10);
    }

    #[test]
    fn coefficient_extraction() {
        let Ctx { x, y, .. } = ctx();
        let p = &(&v(&x).pow(2) + &v(&x).scale(&rational(2))) + &c(3);
        assert_eq!(p.coefficient_of(&x, 1), c(2));
        assert_eq!(p.coefficient_of(&x, 0), c(3));
        assert_eq!((&v(&x).pow(2) + &c(1)).coefficient_of(&x, 5), Polynomial::zero());
        let q = &(&v(&x) * &v(&y)) + &v(&y).pow(3);
        assert_eq!(q.coefficient_of(&x, 1), v(&y));
        assert_eq!(q.coefficient_of(&x, 0), v(&y).pow(3));
    }

    #[test]
    fn eval_reports_missing_symbol() {
        let Ctx { x, .. } = ctx();
        let p = &v(&x).pow(2) - &c(1);
        assert_eq!(p.eval(&assign([(&x, 1)])).unwrap(), rational(0));
        assert_eq!(
            v(&x).eval(&Assignment::new()),
            Err(AlgebraError::MissingAssignment("x".into()))
        );
    }

    #[test]
    fn substitution_identity_and_rescaling() {
        let t = SymbolTable::with_names(["p", "q", "x", "y"]);
        let s = |n: &str| t.get(n).unwrap();
        let (p, q, y) = (s("p"), s("q"), s("y"));

        let target = &Polynomial::var(s("x")).pow(2) + &c(1);
        let same = target.substitute(&s("x"), &RationalFunction::from(s("x")));
        assert_eq!(same.numerator(), &target);
        assert!(same.denominator().is_one());

        // 12 q^3 p^6 y^2 with y := y / (2 q p^3) is 3 q y^2.
        let term = Polynomial::term(
            rational(12),
            Monomial::from_powers([(q.clone(), 3), (p.clone(), 6), (y.clone(), 2)]),
        );
        let value = RationalFunction::new(
            Polynomial::var(y.clone()),
            Polynomial::term(rational(2), Monomial::from_powers([(q.clone(), 1), (p.clone(), 3)])),
        )
        .unwrap();
        let out = term.substitute(&y, &value);
        let expected = Polynomial::term(
            rational(3),
            Monomial::from_powers([(q.clone(), 1), (y.clone(), 2)]),
        );
        assert_eq!(out.as_polynomial(), Some(expected.clone()));
        let at = assign([(&q, 1), (&p, 1), (&y, 2)]);
        assert_eq!(out.eval(&at).unwrap(), expected.eval(&at).unwrap());
        assert_eq!(out.eval(&at).unwrap(), rational(12));
    }

    #[test]
    fn rational_function_reduction_and_equality() {
        let t = SymbolTable::with_names(["a0", "a1", "b0", "x"]);
        let s = |n: &str| Polynomial::var(t.get(n).unwrap());
        let b0 = s("b0");

        let x_over_1 = RationalFunction::from(s("x"));
        let xb_over_b = RationalFunction::new(&s("x") * &b0, b0.clone()).unwrap();
        assert!(rf_equal(&x_over_1, &xb_over_b));
        // common monomial factor is cancelled at construction
        assert!(xb_over_b.denominator().is_one());

        let num = &s("a0").pow(2) * &s("a1");
        let den = b0.pow(2);
        let neg = RationalFunction::new(-&num, den.clone()).unwrap();
        let pos = RationalFunction::new(num.clone(), den.clone()).unwrap();
        assert!(!rf_equal(&neg, &pos));

        // integer content and sign normalisation
        let scaled = RationalFunction::new(num.scale(&rational(-6)), den.scale(&ratio(-3, 2))).unwrap();
        assert_eq!(scaled.numerator(), &num.scale(&rational(4)));
        assert_eq!(scaled.denominator(), &den);

        assert_eq!(
            RationalFunction::new(num, Polynomial::zero()).unwrap_err(),
            AlgebraError::ZeroDenominator
        );
    }

    #[test]
    fn rational_eval_zero_denominator() {
        let Ctx { x, .. } = ctx();
        let rf = RationalFunction::new(c(1), v(&x)).unwrap();
        assert_eq!(rf.eval(&assign([(&x, 0)])), Err(AlgebraError::DivisionByZero));
        assert_eq!(rf.eval(&assign([(&x, 4)])).unwrap(), ratio(1, 4));
    }

    #[test]
    fn exact_division() {
        let Ctx { x, y, .. } = ctx();
        let f = &(&v(&x).pow(3) - &v(&y).pow(3)).scale(&ratio(1, 2)) + &v(&y);
        let g = &(&v(&x) * &v(&y)) - &c(7);
        let product = &f * &g;
        assert_eq!(product.div_exact(&g), Some(f.clone()));
        assert_eq!(product.div_exact(&f), Some(g.clone()));
        let (q, r) = (&product + &v(&y)).div_rem(&g).unwrap();
        assert_eq!(&(&q * &g) + &r, &product + &v(&y));
        assert_eq!((&product + &c(1)).div_exact(&g), None);
        assert!(product.div_rem(&Polynomial::zero()).is_none());
    }

    #[test]
    fn display_is_descending_lex() {
        let t = SymbolTable::with_names(["a0", "a1", "b0", "b1"]);
        let s = |n: &str| Polynomial::var(t.get(n).unwrap());
        let c1 = (&(&s("a0").pow(2) * &s("a1")) + &(&s("b0").pow(2) * &s("b1"))).scale(&rational(6));
        assert_eq!(c1.to_string(), "6*a0^2*a1 + 6*b0^2*b1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        let p = &(&s("a0").pow(2) - &s("a0").scale(&ratio(3, 2))) - &c(1);
        assert_eq!(p.to_string(), "a0^2 - 3/2*a0 - 1");
    }

    // ----- property tests -----

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let ctx = ctx();
        let syms = vec![ctx.x, ctx.y, ctx.z, ctx.w];
        proptest::collection::vec((-9i64..=9, proptest::collection::vec(0u32..=3, 4)), 0..6)
            .prop_map(move |terms| {
                Polynomial::from_terms(terms.into_iter().map(|(coef, exps)| {
                    // cap the total degree at 4
                    let mut budget = 4u32;
                    let powers = syms.iter().zip(exps).map(|(s, e)| {
                        let e = e.min(budget);
                        budget -= e;
                        (s.clone(), e)
                    });
                    (Monomial::from_powers(powers.collect::<Vec<_>>()), rational(coef))
                }))
            })
    }

    fn arb_point() -> impl Strategy<Value = Assignment> {
        proptest::collection::vec(-5i64..=5, 4).prop_map(|vals| {
            let ctx = ctx();
            assign([(&ctx.x, vals[0]), (&ctx.y, vals[1]), (&ctx.z, vals[2]), (&ctx.w, vals[3])])
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, Polynomial::zero());
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(), at in arb_point()) {
            let ea = a.eval(&at).unwrap();
            let eb = b.eval(&at).unwrap();
            prop_assert_eq!((&a * &b).eval(&at).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&at).unwrap(), ea + eb);
        }

        #[test]
        fn substitute_then_eval(a in arb_poly(), n in arb_poly(), d in arb_poly(), at in arb_point()) {
            let ctx = ctx();
            prop_assume!(!d.is_zero());
            let value = RationalFunction::new(n, d).unwrap();
            let dv = value.denominator().eval(&at).unwrap();
            prop_assume!(dv != rational(0));
            let lhs = a.substitute(&ctx.y, &value).eval(&at).unwrap();
            let mut moved = at.clone();
            moved.insert(ctx.y.clone(), value.eval(&at).unwrap());
            prop_assert_eq!(lhs, a.eval(&moved).unwrap());
        }

        #[test]
        fn coefficients_reconstruct(a in arb_poly()) {
            let ctx = ctx();
            let top = a.degree_in(&ctx.x).unwrap_or(0);
            let mut rebuilt = Polynomial::zero();
            for d in 0..=top {
                let xd = Polynomial::term(rational(1), Monomial::var(ctx.x.clone(), d));
                rebuilt = &rebuilt + &(&a.coefficient_of(&ctx.x, d) * &xd);
            }
            prop_assert_eq!(rebuilt, a);
        }

        #[test]
        fn rf_equality_is_an_equivalence(n in arb_poly(), d in arb_poly(), k in arb_poly()) {
            prop_assume!(!d.is_zero() && !k.is_zero());
            let r = RationalFunction::new(n.clone(), d.clone()).unwrap();
            let scaled = RationalFunction::new(&n * &k, &d * &k).unwrap();
            let scaled_again = RationalFunction::new(&(&n * &k) * &k, &(&d * &k) * &k).unwrap();
            prop_assert!(rf_equal(&r, &r));
            prop_assert_eq!(rf_equal(&r, &scaled), rf_equal(&scaled, &r));
            prop_assert!(rf_equal(&r, &scaled) && rf_equal(&scaled, &scaled_again));
            prop_assert!(rf_equal(&r, &scaled_again));
            // reduction never leaves the cross-multiplication class of the raw pair
            prop_assert_eq!(&n * r.denominator(), r.numerator() * &d);
        }
    }
}
