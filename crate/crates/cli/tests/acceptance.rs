//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use evencubes::algebra::{rational, Monomial, Polynomial, Rational, RationalFunction};
use evencubes::derivation::{
    build_g, build_identity, odd_part, run_pipeline, solve_linear, DerivationSymbols,
};
use evencubes::identity::{enumerate, is_trivial, normalize, Grid, IntRange, Params, ParametricIdentity};
use evencubes::oracle::verify;
use evencubes::parser::{format, parse_polynomial};
use evencubes::{rf_equal, Integer, SymbolTable};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:.2?}, limit {limit:.0?}"),
    )
}

fn poly(text: &str, s: &DerivationSymbols) -> Result<Polynomial, String> {
    parse_polynomial(text, &s.table).map_err(|e| format!("{text}: {e}"))
}

fn frac(num: &str, den: &str, s: &DerivationSymbols) -> Result<RationalFunction, String> {
    RationalFunction::new(poly(num, s)?, poly(den, s)?).map_err(|e| e.to_string())
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = evencubes_cli::run(
        std::iter::once("evencubes").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn odd_part_reference() -> Outcome {
    let start = Instant::now();
    let s = DerivationSymbols::new();
    let computed = odd_part(&build_g())
        .as_polynomial()
        .ok_or("odd part has a non-constant denominator")?;
    let reference = poly(
        "6(a1*a2^2 + b1*b2^2)*x^5 + 2(6a0*a1*a2 + 6b0*b1*b2 + a1^3 + b1^3)*x^3 + 6(a0^2*a1 + b0^2*b1)*x",
        &s,
    )?;
    ensure(computed == reference, format!("{computed} != {reference}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{} terms, exact", computed.len()))
}

fn b1_b2_and_x5() -> Outcome {
    let start = Instant::now();
    let s = DerivationSymbols::new();
    let odd = odd_part(&build_g()).as_polynomial().ok_or("not polynomial")?;
    let coeff = |d| odd.coefficient_of(&s.x, d);
    let b1 = solve_linear(&coeff(1), &s.b1).map_err(|e| e.to_string())?;
    ensure(rf_equal(&b1, &frac("-a0^2*a1", "b0^2", &s)?), format!("b1 = {b1}"))?;
    let c3 = coeff(3).substitute(&s.b1, &b1);
    let (num3, _) = c3.into_parts();
    let b2 = solve_linear(&num3, &s.b2).map_err(|e| e.to_string())?;
    let b2_reference = frac("(6a0*a2 + a1^2)*b0^6 - a1^2*a0^6", "6b0^5*a0^2", &s)?;
    ensure(rf_equal(&b2, &b2_reference), format!("b2 = {b2}"))?;
    let x5 = coeff(5)
        .substitute(&s.b1, &b1)
        .substitute(&s.b2, &b2)
        .map_err(|e| e.to_string())?;
    let x5_reference = frac(
        "a1^3(b0^6 - a0^6)*(a0^6*a1^2 - 12a0*a2*b0^6 - a1^2*b0^6)",
        "6a0^2*b0^12",
        &s,
    )?;
    ensure(rf_equal(&x5, &x5_reference), format!("x^5 coefficient = {x5}"))?;
    let trace = run_pipeline().map_err(|e| e.to_string())?;
    ensure(
        rf_equal(&trace.solution.b1, &b1),
        "pipeline b1 disagrees with the direct solve",
    )?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("b1, b2 and the x^5 coefficient match, exact".into())
}

fn forms_identity_vanishes() -> Outcome {
    let start = Instant::now();
    let s = DerivationSymbols::new();
    let id = build_identity().map_err(|e| e.to_string())?;
    let [qa, qb, qc, qd] = id.forms();
    let cubes = [qa.pow(3), qb.pow(3), qc.pow(3), qd.pow(3)];
    let degree = |f: &dyn Fn(&Monomial) -> u32| {
        cubes
            .iter()
            .flat_map(|c| c.terms().map(|(m, _)| f(m)))
            .max()
            .unwrap_or(0)
    };
    let pq = degree(&|m| m.degree_in(&s.p) + m.degree_in(&s.q));
    let xy = degree(&|m| m.degree_in(&s.x) + m.degree_in(&s.y));
    let total = &(&cubes[0] + &cubes[1]) - &(&cubes[2] + &cubes[3]);
    ensure(total.is_zero(), format!("{} terms survive", total.len()))?;
    ensure((pq, xy) == (21, 6), format!("degrees ({pq}, {xy}), expected (21, 6)"))?;
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!(
        "zero polynomial; cubes reach degree {pq} in p,q and {xy} in x,y"
    ))
}

fn int(v: i64) -> Rational {
    rational(v)
}

fn pow(v: &Rational, e: u32) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * v)
}

fn reference_instance() -> Outcome {
    let (a0, a1, b0) = (int(-21), int(16), int(42));
    // plain rational evaluation of the reference closed forms
    let a2_direct = &a1 * &a1 * (pow(&a0, 6) - pow(&b0, 6)) / (int(12) * &a0 * pow(&b0, 6));
    let b1_direct = -(&a0 * &a0 * &a1) / (&b0 * &b0);
    let b2_direct = -(&a1 * &a1) * (pow(&a0, 6) - pow(&b0, 6)) / (int(12) * &a0 * &a0 * pow(&b0, 5));
    let expected = (int(1), int(-4), int(2));
    ensure(
        (a2_direct.clone(), b1_direct.clone(), b2_direct.clone()) == expected,
        format!("closed forms give ({a2_direct}, {b1_direct}, {b2_direct})"),
    )?;
    let trace = run_pipeline().map_err(|e| e.to_string())?;
    let c = trace
        .solution
        .specialize(&a0, &a1, &b0)
        .map_err(|e| e.to_string())?;
    ensure(
        (c.a2.clone(), c.b1.clone(), c.b2.clone()) == expected,
        format!("pipeline gives ({}, {}, {})", c.a2, c.b1, c.b2),
    )?;
    let (even, _) = cli(&["check-even", "(x^2+16x-21)^3+(2x^2-4x+42)^3"]);
    let (odd, odd_out) = cli(&["check-even", "(x^2+16x-20)^3+(2x^2-4x+42)^3"]);
    ensure(even == 0, format!("check-even on f exited {even}"))?;
    ensure(odd == 1, format!("check-even on the perturbed f exited {odd}"))?;
    ensure(odd_out.contains("not even"), "perturbed f reported even")?;
    Ok("(a2, b1, b2) = (1, -4, 2); f even, perturbed f not even".into())
}

fn generator_grid() -> Outcome {
    let start = Instant::now();
    let id = build_identity().map_err(|e| e.to_string())?;
    let grid = Grid::cube(3);
    let mut checked = 0usize;
    for params in grid.iter() {
        let raw = id.instantiate(&params);
        ensure(verify(&raw), format!("raw quadruple fails at {params:?}"))?;
        checked += 1;
    }
    let emitted = enumerate(&id, &grid);
    for s in &emitted {
        ensure(verify(s), format!("emitted quadruple fails: {s:?}"))?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "{checked}/{checked} grid points and {} emitted quadruples verify",
        emitted.len()
    ))
}

fn taxicab_recovery() -> Outcome {
    let id = build_identity().map_err(|e| e.to_string())?;
    let s = normalize(&id.instantiate(&Params::new(1, 2, 1, 1))).map_err(|e| e.to_string())?;
    let want = [12, 1, 10, 9].map(Integer::from);
    ensure(
        s.values() == want.each_ref() && s.n == Integer::from(1729) && s.is_positive_form(),
        format!("normalized to {:?} with N = {}", s.values(), s.n),
    )?;
    let mut sums: BTreeMap<i64, usize> = BTreeMap::new();
    for a in 1..=17i64 {
        for b in a..=17 {
            let n = a.pow(3) + b.pow(3);
            if n <= 5000 {
                *sums.entry(n).or_default() += 1;
            }
        }
    }
    let brute: Vec<String> = sums
        .into_iter()
        .filter(|&(_, c)| c >= 2)
        .map(|(n, _)| n.to_string())
        .collect();
    let (code, out) = cli(&["search", "--bound", "5000"]);
    let listed: Vec<String> = out
        .lines()
        .filter_map(|l| l.split_whitespace().next().map(str::to_string))
        .collect();
    ensure(code == 0, format!("search exited {code}"))?;
    ensure(listed == brute, format!("search listed {listed:?}, brute force {brute:?}"))?;
    ensure(listed == ["1729", "4104"], format!("listed {listed:?}"))?;
    Ok("12^3 + 1^3 = 10^3 + 9^3 = 1729; search lists 1729, 4104".into())
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn small_params() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-20i64..=20, -20i64..=20, -20i64..=20, -20i64..=20)
}

fn values(id: &ParametricIdentity, p: i64, q: i64, x: i64, y: i64) -> [Integer; 4] {
    let s = id.instantiate(&Params::new(p, q, x, y));
    [s.a, s.b, s.c, s.d]
}

fn arb_poly(symbols: Vec<evencubes::Symbol>) -> impl Strategy<Value = Polynomial> {
    let n = symbols.len();
    let term = (-9i64..=9, proptest::collection::vec(0u32..=2, n));
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        Polynomial::from_terms(terms.into_iter().filter_map(|(c, exps)| {
            let powers: Vec<_> = symbols.iter().cloned().zip(exps).collect();
            let m = Monomial::from_powers(powers);
            (m.total_degree() <= 4).then(|| (m, int(c)))
        }))
    })
}

fn property_suites() -> Outcome {
    let id = build_identity().map_err(|e| e.to_string())?;
    run_property("homogeneity", 256, (small_params(), -5i64..=5), |((p, q, x, y), l)| {
        let base = values(&id, p, q, x, y);
        let scaled = values(&id, p, q, l * x, l * y);
        prop_assert_eq!(scaled, base.map(|v| v * Integer::from(l * l)));
        Ok(())
    })?;
    run_property("p<->q symmetry", 256, small_params(), |(p, q, x, y)| {
        let [a, b, c, d] = values(&id, p, q, x, y);
        prop_assert_eq!(values(&id, q, p, x, y), [d, c, b, a]);
        Ok(())
    })?;
    run_property("x->-x evenness", 256, small_params(), |(p, q, x, y)| {
        let [a, b, c, d] = values(&id, p, q, x, y);
        prop_assert_eq!(values(&id, p, q, -x, y), [c, d, a, b]);
        Ok(())
    })?;
    run_property("normalize idempotence", 256, small_params(), |(p, q, x, y)| {
        let raw = id.instantiate(&Params::new(p, q, x, y));
        if is_trivial(&raw) {
            return Ok(());
        }
        let once = normalize(&raw).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let twice = normalize(&once).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&once, &twice);
        prop_assert!(verify(&once));
        Ok(())
    })?;

    let table = SymbolTable::with_names(["x", "y", "z", "w"]);
    let symbols = table.symbols().to_vec();
    run_property("parser round trip", 100, arb_poly(symbols.clone()), |p| {
        let text = format(&p);
        let back = parse_polynomial(&text, &table).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(format(&back), text);
        prop_assert_eq!(back, p);
        Ok(())
    })?;
    let three = (
        arb_poly(symbols.clone()),
        arb_poly(symbols.clone()),
        arb_poly(symbols),
    );
    run_property("ring axioms", 128, three, |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        Ok(())
    })?;
    Ok("homogeneity, p<->q, x->-x, normalize, parser round trip (100), ring axioms".into())
}

fn degenerate_handling() -> Outcome {
    let id = build_identity().map_err(|e| e.to_string())?;
    let mut points = 0;
    for t in -3..=3i64 {
        for u in -3..=3i64 {
            for y in -3..=3i64 {
                for params in [
                    Params::new(t, t, u, y),
                    Params::new(t, -t, u, y),
                    Params::new(t, 0, u, y),
                    Params::new(t, u, 0, y),
                ] {
                    let raw = id.instantiate(&params);
                    ensure(is_trivial(&raw), format!("{params:?} is not trivial"))?;
                    points += 1;
                }
            }
        }
    }
    let r = IntRange::symmetric(3);
    let emitted = enumerate(&id, &Grid::new(r, r, r, r));
    let zero = Integer::from(0);
    for s in &emitted {
        let p = &s.params;
        ensure(
            p.p != p.q && p.p != -p.q.clone() && p.q != zero && p.x != zero,
            format!("degenerate point {p:?} was emitted"),
        )?;
    }
    let trace = run_pipeline().map_err(|e| e.to_string())?;
    for (a0, a1, b0) in [(1, 1, 1), (5, 3, 5), (-2, 7, -2), (3, 0, 5), (-4, 0, 9)] {
        let c = trace
            .solution
            .specialize(&int(a0), &int(a1), &int(b0))
            .map_err(|e| format!("({a0}, {a1}, {b0}): {e}"))?;
        ensure(
            c.a2 == int(0) && c.b2 == int(0),
            format!("({a0}, {a1}, {b0}) gives a2 = {}, b2 = {}", c.a2, c.b2),
        )?;
        if a1 == 0 {
            ensure(c.b1 == int(0), format!("a1 = 0 gives b1 = {}", c.b1))?;
        }
    }
    Ok(format!(
        "{points} degenerate points trivial, none emitted; a0=b0 and a1=0 branches give a2=b2=0"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("odd part of g matches the reference polynomial", odd_part_reference),
        ("b1, b2 and the substituted x^5 coefficient", b1_b2_and_x5),
        ("QA^3 + QB^3 - QC^3 - QD^3 expands to zero", forms_identity_vanishes),
        ("reference instance", reference_instance),
        ("generator correctness on |p|,|q|,|x|,|y| <= 3", generator_grid),
        ("taxicab recovery", taxicab_recovery),
        ("property suites", property_suites),
        ("degenerate handling", degenerate_handling),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
