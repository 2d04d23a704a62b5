//! Integer solutions of `A^3 + B^3 = C^3 + D^3` from a four-form
//! parametric identity in `p, q, x, y`.

use std::cmp::Ordering;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{Integer, Polynomial, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("form {form} has a non-integer coefficient")]
    NonIntegerCoefficient { form: &'static str },
    #[error("form {form} mentions symbol `{symbol}` outside p, q, x, y")]
    ForeignSymbol { form: &'static str, symbol: String },
    #[error("form {form} is not the reflection x -> -x of its partner")]
    NotReflected { form: &'static str },
    #[error("all four values are zero")]
    AllZero,
}

const FORM_NAMES: [&str; 4] = ["QA", "QB", "QC", "QD"];

/// Integer-coefficient polynomial in `(p, q, x, y)` compiled for fast evaluation.
#[derive(Clone, Debug)]
struct CompiledForm {
    terms: Vec<(Integer, [u32; 4])>,
}

impl CompiledForm {
    fn compile(
        form: &Polynomial,
        vars: &[Symbol; 4],
        name: &'static str,
    ) -> Result<Self, IdentityError> {
        let mut terms = Vec::with_capacity(form.len());
        for (m, c) in form.terms() {
            if !c.is_integer() {
                return Err(IdentityError::NonIntegerCoefficient { form: name });
            }
            let mut exps = [0u32; 4];
            for (s, e) in m.powers() {
                let slot = vars.iter().position(|v| v == s).ok_or_else(|| {
                    IdentityError::ForeignSymbol {
                        form: name,
                        symbol: s.name().to_string(),
                    }
                })?;
                exps[slot] = *e;
            }
            terms.push((c.to_integer(), exps));
        }
        Ok(Self { terms })
    }

    fn eval(&self, point: &[Integer; 4]) -> Integer {
        let mut total = Integer::zero();
        for (c, exps) in &self.terms {
            let mut term = c.clone();
            for (v, e) in point.iter().zip(exps) {
                if *e > 0 {
                    term *= v.pow(*e);
                }
            }
            total += term;
        }
        total
    }
}

/// Four binary quadratic forms `QA, QB, QC, QD` in `x, y` with coefficients
/// in `p, q`, where `QC`, `QD` are `QA`, `QB` at `-x`.
#[derive(Clone, Debug)]
pub struct ParametricIdentity {
    vars: [Symbol; 4],
    forms: [Polynomial; 4],
    compiled: [CompiledForm; 4],
}

impl ParametricIdentity {
    /// Builds the identity from `QA`, `QB`; `QC`, `QD` are obtained by `x -> -x`.
    pub fn new(
        p: Symbol,
        q: Symbol,
        x: Symbol,
        y: Symbol,
        qa: Polynomial,
        qb: Polynomial,
    ) -> Result<Self, IdentityError> {
        let qc = qa.reflect(&x);
        let qd = qb.reflect(&x);
        Self::from_forms([p, q, x, y], [qa, qb, qc, qd])
    }

    /// Builds the identity from four independently supplied forms.
    pub fn from_forms(vars: [Symbol; 4], forms: [Polynomial; 4]) -> Result<Self, IdentityError> {
        let x = &vars[2];
        if forms[0].reflect(x) != forms[2] {
            return Err(IdentityError::NotReflected { form: "QC" });
        }
        if forms[1].reflect(x) != forms[3] {
            return Err(IdentityError::NotReflected { form: "QD" });
        }
        let compiled = [0, 1, 2, 3].map(|i| CompiledForm::compile(&forms[i], &vars, FORM_NAMES[i]));
        let [a, b, c, d] = compiled;
        Ok(Self {
            vars,
            forms,
            compiled: [a?, b?, c?, d?],
        })
    }

    pub fn symbols(&self) -> &[Symbol; 4] {
        &self.vars
    }

    pub fn qa(&self) -> &Polynomial {
        &self.forms[0]
    }

    pub fn qb(&self) -> &Polynomial {
        &self.forms[1]
    }

    pub fn qc(&self) -> &Polynomial {
        &self.forms[2]
    }

    pub fn qd(&self) -> &Polynomial {
        &self.forms[3]
    }

    pub fn forms(&self) -> &[Polynomial; 4] {
        &self.forms
    }

    /// `QA^3 + QB^3 - QC^3 - QD^3`, expanded.
    pub fn defect(&self) -> Polynomial {
        let [a, b, c, d] = &self.forms;
        let lhs = &a.pow(3) + &b.pow(3);
        let rhs = &c.pow(3) + &d.pow(3);
        &lhs - &rhs
    }

    pub fn holds_symbolically(&self) -> bool {
        self.defect().is_zero()
    }

    /// Evaluates the four forms at integer parameters.
    pub fn instantiate(&self, params: &Params) -> SolutionQuadruple {
        let point = [
            params.p.clone(),
            params.q.clone(),
            params.x.clone(),
            params.y.clone(),
        ];
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| self.compiled[i].eval(&point));
        let quad = SolutionQuadruple::from_values([a, b, c, d], params.clone());
        assert!(
            quad.holds(),
            "identity failed at {params:?}: {quad:?} is not a solution"
        );
        quad
    }
}

/// Generating parameters of a quadruple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params {
    pub p: Integer,
    pub q: Integer,
    pub x: Integer,
    pub y: Integer,
}

impl Params {
    pub fn new(p: i64, q: i64, x: i64, y: i64) -> Self {
        Self {
            p: p.into(),
            q: q.into(),
            x: x.into(),
            y: y.into(),
        }
    }
}

/// Integers with `A^3 + B^3 = C^3 + D^3 = N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionQuadruple {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
    pub n: Integer,
    pub params: Params,
    pub primitive: bool,
}

fn cube(v: &Integer) -> Integer {
    v * v * v
}

impl SolutionQuadruple {
    /// Raw quadruple with `N = A^3 + B^3`; the equation itself is not checked.
    pub fn from_values(values: [Integer; 4], params: Params) -> Self {
        let [a, b, c, d] = values;
        let n = cube(&a) + cube(&b);
        Self {
            a,
            b,
            c,
            d,
            n,
            params,
            primitive: false,
        }
    }

    pub fn values(&self) -> [&Integer; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `A^3 + B^3 = N = C^3 + D^3`.
    pub fn holds(&self) -> bool {
        cube(&self.a) + cube(&self.b) == self.n && cube(&self.c) + cube(&self.d) == self.n
    }

    /// `A >= B > 0`, `C >= D > 0` and `(A, B) >= (C, D)`.
    pub fn is_positive_form(&self) -> bool {
        let [a, b, c, d] = self.values();
        b.is_positive() && d.is_positive() && a >= b && c >= d && (a, b) >= (c, d)
    }

    pub fn gcd(&self) -> Integer {
        self.values()
            .into_iter()
            .fold(Integer::zero(), |acc, v| acc.gcd(v))
    }
}

/// True when the equation cancels term by term.
///
/// Reading the equation as `A^3 + B^3 + (-C)^3 + (-D)^3 = 0`, a quadruple is
/// trivial when the four signed bases split into two pairs `t, -t`. This
/// covers `{A, B} = {C, D}` and every `N = 0` case.
pub fn is_trivial(s: &SolutionQuadruple) -> bool {
    let t = [s.a.clone(), s.b.clone(), -&s.c, -&s.d];
    let cancels = |i: usize, j: usize| (&t[i] + &t[j]).is_zero();
    (cancels(0, 1) && cancels(2, 3))
        || (cancels(0, 2) && cancels(1, 3))
        || (cancels(0, 3) && cancels(1, 2))
}

fn sorted_desc(mut pair: [Integer; 2]) -> [Integer; 2] {
    if pair[0] < pair[1] {
        pair.swap(0, 1);
    }
    pair
}

fn order_sides(left: [Integer; 2], right: [Integer; 2]) -> [Integer; 4] {
    let (l, r) = (sorted_desc(left), sorted_desc(right));
    let [first, second] = match l.cmp(&r) {
        Ordering::Less => [r, l],
        _ => [l, r],
    };
    let [a, b] = first;
    let [c, d] = second;
    [a, b, c, d]
}

/// Primitive canonical representative of a quadruple.
///
/// Divides out the gcd, then moves negative cubes across the equality to
/// reach `X^3 + Y^3 = Z^3 + W^3` with all bases positive when possible.
/// Otherwise the global sign is chosen so that `N >= 0`. In both cases each
/// side is sorted descending and the larger pair comes first.
pub fn normalize(s: &SolutionQuadruple) -> Result<SolutionQuadruple, IdentityError> {
    let g = s.gcd();
    if g.is_zero() {
        return Err(IdentityError::AllZero);
    }
    let [a, b, c, d] = s.values().map(|v| v / &g);
    // signed bases on the left of `... = 0`
    let signed = [a.clone(), b.clone(), -&c, -&d];
    let positives: Vec<Integer> = signed.iter().filter(|v| v.is_positive()).cloned().collect();
    let negatives: Vec<Integer> = signed.iter().filter(|v| v.is_negative()).map(|v| -v).collect();
    let values = if positives.len() == 2 && negatives.len() == 2 {
        order_sides(
            [positives[0].clone(), positives[1].clone()],
            [negatives[0].clone(), negatives[1].clone()],
        )
    } else {
        let flip = (cube(&a) + cube(&b)).is_negative();
        let [a, b, c, d] = if flip { [-a, -b, -c, -d] } else { [a, b, c, d] };
        order_sides([a, b], [c, d])
    };
    let mut out = SolutionQuadruple::from_values(values, s.params.clone());
    out.primitive = true;
    Ok(out)
}

/// Inclusive integer interval; `lo > hi` is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn symmetric(radius: i64) -> Self {
        Self::new(-radius, radius)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            self.hi.abs_diff(self.lo) + 1
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Parameter box for [`enumerate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub p: IntRange,
    pub q: IntRange,
    pub x: IntRange,
    pub y: IntRange,
}

impl Grid {
    pub fn new(p: IntRange, q: IntRange, x: IntRange, y: IntRange) -> Self {
        Self { p, q, x, y }
    }

    pub fn cube(radius: i64) -> Self {
        let r = IntRange::symmetric(radius);
        Self::new(r, r, r, r)
    }

    pub fn points(&self) -> u128 {
        [self.p, self.q, self.x, self.y]
            .iter()
            .map(|r| r.len() as u128)
            .product()
    }

    pub fn iter(&self) -> impl Iterator<Item = Params> + '_ {
        self.p.iter().flat_map(move |p| {
            self.q.iter().flat_map(move |q| {
                self.x
                    .iter()
                    .flat_map(move |x| self.y.iter().map(move |y| Params::new(p, q, x, y)))
            })
        })
    }
}

fn emission_order(l: &SolutionQuadruple, r: &SolutionQuadruple) -> Ordering {
    (&l.n, l.values(), &l.params).cmp(&(&r.n, r.values(), &r.params))
}

/// Instantiates every grid point, drops trivial quadruples, normalizes and
/// deduplicates them.
///
/// Output is sorted by `N`, then by `(A, B, C, D)`. Each distinct canonical
/// quadruple keeps the smallest generating parameters. The grid is split
/// across the current rayon pool; the result does not depend on its size.
pub fn enumerate(identity: &ParametricIdentity, grid: &Grid) -> Vec<SolutionQuadruple> {
    let outer: Vec<(i64, i64)> = grid
        .p
        .iter()
        .flat_map(|p| grid.q.iter().map(move |q| (p, q)))
        .collect();
    let mut found: Vec<SolutionQuadruple> = outer
        .par_iter()
        .flat_map_iter(|&(p, q)| {
            let mut local = Vec::new();
            for x in grid.x.iter() {
                for y in grid.y.iter() {
                    let raw = identity.instantiate(&Params::new(p, q, x, y));
                    if is_trivial(&raw) {
                        continue;
                    }
                    let canonical = normalize(&raw).expect("non-trivial quadruples are nonzero");
                    assert!(canonical.holds(), "normalization broke {raw:?}");
                    local.push(canonical);
                }
            }
            local
        })
        .collect();
    found.par_sort_unstable_by(emission_order);
    found.dedup_by(|later, earlier| later.values() == earlier.values());
    found
}
