//! Brute-force sums of two cubes.
//!
//! [`build_index`] lists every `N = a^3 + b^3 <= bound`. In the unsigned
//! regime `1 <= a <= b`. The signed regime adds `a < 0 < b`; such pairs
//! satisfy `N >= b^3 - (b-1)^3 = 3b^2 - 3b + 1`, so `b` is bounded by the
//! largest value with `3b^2 - 3b + 1 <= bound`. That value is the default
//! per-variable cap and makes the signed index complete. A smaller cap can
//! be declared, in which case the index reports itself as incomplete.
//!
//! The index file is plain text, ascending by `(N, a)`:
//!
//! ```text
//! # evencubes-index v1
//! # bound=2000 signed=false cap=0
//! 1729 1 12
//! 1729 9 10
//! ```

use std::collections::HashMap;
use std::io::{BufRead, Write};

use num_integer::Roots;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::algebra::Integer;
use crate::identity::{Params, SolutionQuadruple};

/// Default memory budget for an index, comfortably above `bound = 10^8`.
pub const DEFAULT_MEMORY_BUDGET: usize = 64 << 20;
/// Estimated bytes per stored representation including map overhead.
pub const BYTES_PER_ENTRY: usize = 48;

const HEADER: &str = "# evencubes-index v1";

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("bound must be at least 1")]
    InvalidBound,
    #[error("bound {bound} needs about {estimated_bytes} bytes, over the budget of {budget}")]
    BoundTooLarge {
        bound: u64,
        estimated_bytes: u128,
        budget: usize,
    },
    #[error("index file line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `a^3 + b^3` with `a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Representation {
    pub a: i64,
    pub b: i64,
}

impl Representation {
    pub fn new(a: i64, b: i64) -> Self {
        if a <= b {
            Self { a, b }
        } else {
            Self { a: b, b: a }
        }
    }

    pub fn value(&self) -> i128 {
        cube(self.a) + cube(self.b)
    }
}

fn cube(v: i64) -> i128 {
    let v = v as i128;
    v * v * v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexConfig {
    pub memory_budget: usize,
    /// Overrides the per-variable cap of the signed regime.
    pub signed_cap: Option<u64>,
}

impl Default for IndexConfig {
    fn default() -> Self {
        Self {
            memory_budget: DEFAULT_MEMORY_BUDGET,
            signed_cap: None,
        }
    }
}

/// Largest `b` with `3b^2 - 3b + 1 <= bound`.
pub fn natural_signed_cap(bound: u64) -> u64 {
    let bound = bound as u128;
    let mut b = ((bound / 3).sqrt() + 1) as u64;
    while b > 0 && 3 * (b as u128) * (b as u128) - 3 * b as u128 + 1 > bound {
        b -= 1;
    }
    b
}

/// Smallest `m >= 0` with `m^3 >= v`.
fn ceil_cbrt(v: u128) -> u128 {
    let mut m = v.cbrt();
    while m * m * m < v {
        m += 1;
    }
    m
}

/// Range of `|a|` for the signed pairs `(-|a|, b)` with `0 < N <= bound`.
fn signed_partner_range(b: u64, bound: u64) -> std::ops::RangeInclusive<u64> {
    let b3 = (b as u128).pow(3);
    let lo = ceil_cbrt(b3.saturating_sub(bound as u128)).max(1) as u64;
    lo..=b.saturating_sub(1)
}

fn unsigned_partner_limit(a: u64, bound: u64) -> u64 {
    let rest = bound as u128 - (a as u128).pow(3);
    rest.cbrt() as u64
}

fn estimate_entries(bound: u64, signed_cap: Option<u64>, stop_after: u128) -> u128 {
    let mut count: u128 = 0;
    let mut a = 1u64;
    while 2 * (a as u128).pow(3) <= bound as u128 {
        count += (unsigned_partner_limit(a, bound) - a + 1) as u128;
        if count > stop_after {
            return count;
        }
        a += 1;
    }
    if let Some(cap) = signed_cap {
        for b in 2..=cap {
            let r = signed_partner_range(b, bound);
            if !r.is_empty() {
                count += (r.end() - r.start() + 1) as u128;
            }
            if count > stop_after {
                return count;
            }
        }
    }
    count
}

#[derive(Clone, Debug)]
pub struct RepresentationIndex {
    bound: u64,
    signed: bool,
    signed_cap: u64,
    entries: HashMap<u64, Vec<Representation>>,
}

impl RepresentationIndex {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn signed(&self) -> bool {
        self.signed
    }

    /// Largest `b` searched for signed pairs; zero for unsigned indexes.
    pub fn signed_cap(&self) -> u64 {
        self.signed_cap
    }

    /// Whether the signed part covers every pair with `N <= bound`.
    pub fn is_complete(&self) -> bool {
        !self.signed || self.signed_cap >= natural_signed_cap(self.bound)
    }

    pub fn get(&self, n: u64) -> &[Representation] {
        self.entries.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, n: u64, rep: &Representation) -> bool {
        self.get(n).binary_search(rep).is_ok()
    }

    /// Number of distinct `N`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn representation_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    /// All `(N, representations)` ascending by `N`.
    pub fn sorted(&self) -> Vec<(u64, &[Representation])> {
        let mut out: Vec<_> = self.entries.iter().map(|(n, r)| (*n, r.as_slice())).collect();
        out.sort_unstable_by_key(|(n, _)| *n);
        out
    }

    fn from_pairs(bound: u64, signed: bool, signed_cap: u64, mut pairs: Vec<(u64, Representation)>) -> Self {
        pairs.par_sort_unstable();
        pairs.dedup();
        let mut entries: HashMap<u64, Vec<Representation>> = HashMap::new();
        for (n, rep) in pairs {
            entries.entry(n).or_default().push(rep);
        }
        Self {
            bound,
            signed,
            signed_cap,
            entries,
        }
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<(), OracleError> {
        writeln!(out, "{HEADER}")?;
        writeln!(
            out,
            "# bound={} signed={} cap={}",
            self.bound, self.signed, self.signed_cap
        )?;
        for (n, reps) in self.sorted() {
            for r in reps {
                writeln!(out, "{n} {} {}", r.a, r.b)?;
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self, OracleError> {
        let bad = |line: usize, message: &str| OracleError::Format {
            line,
            message: message.to_string(),
        };
        let mut lines = input.lines();
        let first = lines.next().transpose()?.unwrap_or_default();
        if first.trim() != HEADER {
            return Err(bad(1, "missing index header"));
        }
        let meta = lines.next().transpose()?.unwrap_or_default();
        let mut bound = None;
        let mut signed = None;
        let mut cap = None;
        for field in meta.trim_start_matches('#').split_whitespace() {
            match field.split_once('=') {
                Some(("bound", v)) => bound = v.parse::<u64>().ok(),
                Some(("signed", v)) => signed = v.parse::<bool>().ok(),
                Some(("cap", v)) => cap = v.parse::<u64>().ok(),
                _ => return Err(bad(2, "unknown metadata field")),
            }
        }
        let (Some(bound), Some(signed), Some(cap)) = (bound, signed, cap) else {
            return Err(bad(2, "metadata needs bound, signed and cap"));
        };
        let mut pairs = Vec::new();
        let mut previous: Option<(u64, i64)> = None;
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 3;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [n, a, b] = fields[..] else {
                return Err(bad(line_no, "expected `N a b`"));
            };
            let (Ok(n), Ok(a), Ok(b)) = (n.parse::<u64>(), a.parse::<i64>(), b.parse::<i64>()) else {
                return Err(bad(line_no, "non-integer field"));
            };
            if a > b || Representation::new(a, b).value() != n as i128 || n > bound || n == 0 {
                return Err(bad(line_no, "entry is not a valid representation"));
            }
            if !(a >= 1 || (signed && a < 0)) {
                return Err(bad(line_no, "entry outside the declared regime"));
            }
            if previous.is_some_and(|p| p >= (n, a)) {
                return Err(bad(line_no, "entries must ascend by (N, a)"));
            }
            previous = Some((n, a));
            pairs.push((n, Representation { a, b }));
        }
        Ok(Self::from_pairs(bound, signed, cap, pairs))
    }
}

pub fn build_index(bound: u64, signed: bool) -> Result<RepresentationIndex, OracleError> {
    build_index_with(bound, signed, &IndexConfig::default())
}

/// Builds the index, splitting the outer loop across the current rayon pool.
pub fn build_index_with(
    bound: u64,
    signed: bool,
    config: &IndexConfig,
) -> Result<RepresentationIndex, OracleError> {
    if bound == 0 {
        return Err(OracleError::InvalidBound);
    }
    let cap = if signed {
        config.signed_cap.unwrap_or_else(|| natural_signed_cap(bound))
    } else {
        0
    };
    let allowed = (config.memory_budget / BYTES_PER_ENTRY) as u128;
    let estimate = estimate_entries(bound, signed.then_some(cap), allowed);
    if estimate > allowed {
        return Err(OracleError::BoundTooLarge {
            bound,
            estimated_bytes: estimate * BYTES_PER_ENTRY as u128,
            budget: config.memory_budget,
        });
    }

    let a_max = (bound / 2).cbrt();
    let mut pairs: Vec<(u64, Representation)> = (1..=a_max)
        .into_par_iter()
        .flat_map_iter(|a| {
            (a..=unsigned_partner_limit(a, bound)).map(move |b| {
                let rep = Representation::new(a as i64, b as i64);
                (rep.value() as u64, rep)
            })
        })
        .collect();
    if signed {
        let negative: Vec<(u64, Representation)> = (2..=cap)
            .into_par_iter()
            .flat_map_iter(|b| {
                signed_partner_range(b, bound).map(move |m| {
                    let rep = Representation::new(-(m as i64), b as i64);
                    (rep.value() as u64, rep)
                })
            })
            .collect();
        pairs.extend(negative);
    }
    Ok(RepresentationIndex::from_pairs(bound, signed, cap, pairs))
}

/// Every `N` with at least two representations, ascending.
pub fn multi_rep(index: &RepresentationIndex) -> Vec<(u64, Vec<Representation>)> {
    index
        .sorted()
        .into_iter()
        .filter(|(_, reps)| reps.len() >= 2)
        .map(|(n, reps)| (n, reps.to_vec()))
        .collect()
}

/// Direct search for the representations of a single `n`, without an index.
///
/// Positive pairs come from a two-pointer sweep; with `signed_cap` set, pairs
/// `(-m, b)` with `b <= signed_cap` are found by an exact cube-root test.
pub fn representations_of(n: u64, signed_cap: Option<u64>) -> Vec<Representation> {
    let target = n as i128;
    let mut out = Vec::new();
    if let Some(cap) = signed_cap {
        for b in 2..=cap as i64 {
            let rest = cube(b) - target;
            if rest <= 0 {
                continue;
            }
            let m = (rest as u128).cbrt() as i64;
            if m < b && m > 0 && cube(m) == rest {
                out.push(Representation::new(-m, b));
            }
        }
    }
    let (mut lo, mut hi) = (1i64, (n as u128).cbrt() as i64);
    while lo <= hi {
        let v = cube(lo) + cube(hi);
        match v.cmp(&target) {
            std::cmp::Ordering::Equal => {
                out.push(Representation::new(lo, hi));
                lo += 1;
                hi -= 1;
            }
            std::cmp::Ordering::Less => lo += 1,
            std::cmp::Ordering::Greater => hi -= 1,
        }
    }
    out.sort_unstable();
    out
}

/// `A^3 + B^3 = C^3 + D^3` by direct big-integer cubing.
pub fn verify(s: &SolutionQuadruple) -> bool {
    s.a.pow(3) + s.b.pow(3) == s.c.pow(3) + s.d.pow(3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckEntry {
    pub n: Integer,
    pub pairs: [Representation; 2],
    pub params: Params,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub matched: Vec<CrosscheckEntry>,
    pub misses: Vec<CrosscheckEntry>,
    pub skipped_out_of_bound: usize,
    /// Quadruples the index cannot speak for: not in positive form with an
    /// unsigned index, or with a non-positive `N` or a zero base.
    pub skipped_unsupported: usize,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.misses.is_empty()
    }

    pub fn checked(&self) -> usize {
        self.matched.len() + self.misses.len()
    }
}

fn to_pair(x: &Integer, y: &Integer) -> Option<Representation> {
    Some(Representation::new(x.to_i64()?, y.to_i64()?))
}

/// Looks up both sides of every quadruple with `N <= bound` in the index.
pub fn crosscheck<'a, I>(quads: I, index: &RepresentationIndex) -> CrosscheckReport
where
    I: IntoIterator<Item = &'a SolutionQuadruple>,
{
    let mut report = CrosscheckReport::default();
    for s in quads {
        if !s.n.is_positive() {
            report.skipped_unsupported += 1;
            continue;
        }
        let n = match s.n.to_u64() {
            Some(n) if n <= index.bound() => n,
            _ => {
                report.skipped_out_of_bound += 1;
                continue;
            }
        };
        let usable = s.is_positive_form()
            || (index.signed() && s.values().iter().all(|v| !num_traits::Zero::is_zero(*v)));
        // a signed pair past the cap was never searched
        let in_regime = |r: &Representation| r.a > 0 || r.b.unsigned_abs() <= index.signed_cap();
        let pairs = match (usable, to_pair(&s.a, &s.b), to_pair(&s.c, &s.d)) {
            (true, Some(l), Some(r)) if in_regime(&l) && in_regime(&r) => [l, r],
            _ => {
                report.skipped_unsupported += 1;
                continue;
            }
        };
        let entry = CrosscheckEntry {
            n: s.n.clone(),
            pairs,
            params: s.params.clone(),
        };
        if pairs.iter().all(|p| index.contains(n, p)) {
            report.matched.push(entry);
        } else {
            report.misses.push(entry);
        }
    }
    report
}
