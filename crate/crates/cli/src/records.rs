use std::io::Write;

use evencubes::identity::{ParametricIdentity, SolutionQuadruple};
use evencubes::oracle::Representation;
use evencubes::Integer;
use serde_json::{Map, Number, Value};

pub const QUAD_FIELDS: [&str; 10] = ["p", "q", "x", "y", "A", "B", "C", "D", "N", "primitive"];

fn number(v: &Integer) -> Value {
    // arbitrary precision keeps integers past 64 bits exact
    Value::Number(v.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

fn quad_cells(s: &SolutionQuadruple) -> [&Integer; 9] {
    let p = &s.params;
    [&p.p, &p.q, &p.x, &p.y, &s.a, &s.b, &s.c, &s.d, &s.n]
}

pub fn quad_json(s: &SolutionQuadruple) -> String {
    let mut map = Map::new();
    for (key, v) in QUAD_FIELDS.iter().zip(quad_cells(s)) {
        map.insert(key.to_string(), number(v));
    }
    map.insert("primitive".into(), Value::Bool(s.primitive));
    Value::Object(map).to_string()
}

pub fn write_quads_csv<W: Write>(out: W, quads: &[SolutionQuadruple]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(QUAD_FIELDS)?;
    for s in quads {
        let mut row: Vec<String> = quad_cells(s).iter().map(|v| v.to_string()).collect();
        row.push(s.primitive.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn cube_term(v: &Integer) -> String {
    if v.sign() == num_bigint::Sign::Minus {
        format!("({v})^3")
    } else {
        format!("{v}^3")
    }
}

fn equation(s: &SolutionQuadruple) -> String {
    format!(
        "{} + {} = {} + {} = {}",
        cube_term(&s.a),
        cube_term(&s.b),
        cube_term(&s.c),
        cube_term(&s.d),
        s.n
    )
}

/// Raw values at the generating parameters, then the canonical form.
pub fn quad_human(s: &SolutionQuadruple, identity: &ParametricIdentity) -> String {
    let p = &s.params;
    let raw = identity.instantiate(p);
    let label = if s.is_positive_form() { "positive" } else { "normalized" };
    format!(
        "(p, q, x, y) = ({}, {}, {}, {})\n  raw:        {}\n  {label}:{} {}{}\n",
        p.p,
        p.q,
        p.x,
        p.y,
        equation(&raw),
        " ".repeat(10 - label.len()),
        equation(s),
        if s.primitive { "" } else { "  (not primitive)" },
    )
}

pub fn pair(r: &Representation) -> String {
    format!("({},{})", r.a, r.b)
}

pub fn reps_json(n: u64, reps: &[Representation]) -> String {
    let list: Vec<Value> = reps
        .iter()
        .map(|r| Value::Array(vec![r.a.into(), r.b.into()]))
        .collect();
    let mut map = Map::new();
    map.insert("N".into(), n.into());
    map.insert("representations".into(), Value::Array(list));
    Value::Object(map).to_string()
}
