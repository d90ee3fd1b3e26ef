//! Triple-point weights and the weight multiset Φ.
//!
//! Triple-point data are supplied externally, one list per coloring.
//! Cocycle tables are taken as given; nothing here checks the cocycle
//! condition, and reports call such tables unverified.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

pub type Coefficient = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("element {value} out of range for {what} of order {order}")]
    OutOfRange { what: &'static str, value: usize, order: usize },
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("coefficient groups differ: modulus {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("coloring id {0:?} appears twice")]
    DuplicateColoring(String),
    #[error("line {line}: {detail}")]
    Csv { line: u64, detail: String },
    #[error("entry {0:?} given twice")]
    DuplicateEntry((usize, usize, usize, usize)),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TriplePointDatum {
    pub sign: i8,
    pub y: usize,
    pub x1: usize,
    pub x2: usize,
    pub x3: usize,
}

impl TriplePointDatum {
    pub fn new(sign: i64, y: usize, x1: usize, x2: usize, x3: usize) -> Result<Self, InvariantError> {
        let sign = match sign {
            1 => 1,
            -1 => -1,
            s => return Err(InvariantError::BadSign(s)),
        };
        Ok(TriplePointDatum { sign, y, x1, x2, x3 })
    }
}

/// φ: Y × X³ → Z or Z_m, stored sparsely. Absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTable {
    modulus: u64,
    x_order: usize,
    y_order: usize,
    values: BTreeMap<(usize, usize, usize, usize), Coefficient>,
}

impl CocycleTable {
    /// The zero table. `modulus == 0` means integer coefficients.
    pub fn zero(modulus: u64, x_order: usize, y_order: usize) -> Self {
        CocycleTable { modulus, x_order, y_order, values: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.x_order, self.y_order)
    }

    pub fn set(&mut self, y: usize, x1: usize, x2: usize, x3: usize, value: Coefficient) -> Result<(), InvariantError> {
        self.check(y, x1, x2, x3)?;
        let v = reduce(value, self.modulus);
        if v == 0 {
            self.values.remove(&(y, x1, x2, x3));
        } else {
            self.values.insert((y, x1, x2, x3), v);
        }
        Ok(())
    }

    pub fn get(&self, y: usize, x1: usize, x2: usize, x3: usize) -> Result<Coefficient, InvariantError> {
        self.check(y, x1, x2, x3)?;
        Ok(self.values.get(&(y, x1, x2, x3)).copied().unwrap_or(0))
    }

    /// Pointwise sum; both tables must share modulus and orders.
    pub fn add(&self, other: &CocycleTable) -> Result<CocycleTable, InvariantError> {
        if self.modulus != other.modulus {
            return Err(InvariantError::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut out = self.clone();
        for (&(y, a, b, c), &v) in &other.values {
            let cur = out.get(y, a, b, c)?;
            out.set(y, a, b, c, cur + v)?;
        }
        Ok(out)
    }

    fn check(&self, y: usize, x1: usize, x2: usize, x3: usize) -> Result<(), InvariantError> {
        if y >= self.y_order {
            return Err(InvariantError::OutOfRange { what: "Y", value: y, order: self.y_order });
        }
        for x in [x1, x2, x3] {
            if x >= self.x_order {
                return Err(InvariantError::OutOfRange { what: "X", value: x, order: self.x_order });
            }
        }
        Ok(())
    }
}

fn reduce(v: Coefficient, modulus: u64) -> Coefficient {
    if modulus == 0 {
        v
    } else {
        v.rem_euclid(modulus as i64)
    }
}

pub fn weight_of_triple(t: &TriplePointDatum, phi: &CocycleTable) -> Result<Coefficient, InvariantError> {
    let g = phi.get(t.y, t.x1, t.x2, t.x3)?;
    Ok(reduce(t.sign as Coefficient * g, phi.modulus))
}

pub fn weight_of_coloring(ts: &[TriplePointDatum], phi: &CocycleTable) -> Result<Coefficient, InvariantError> {
    let mut sum = 0;
    for t in ts {
        sum = reduce(sum + weight_of_triple(t, phi)?, phi.modulus);
    }
    Ok(sum)
}

/// Sorted-with-multiplicity multiset of coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightMultiset {
    pub modulus: u64,
    values: Vec<Coefficient>,
}

impl WeightMultiset {
    pub fn new(modulus: u64, mut values: Vec<Coefficient>) -> Self {
        for v in values.iter_mut() {
            *v = reduce(*v, modulus);
        }
        values.sort_unstable();
        WeightMultiset { modulus, values }
    }

    pub fn values(&self) -> &[Coefficient] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(value, multiplicity)` pairs in increasing value order.
    pub fn counts(&self) -> Vec<(Coefficient, usize)> {
        let mut out: Vec<(Coefficient, usize)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((w, k)) if *w == v => *k += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, v: Coefficient) -> usize {
        let v = reduce(v, self.modulus);
        self.values.iter().filter(|&&w| w == v).count()
    }
}

pub fn phi_multiset(
    per_coloring: &[(String, Vec<TriplePointDatum>)],
    phi: &CocycleTable,
) -> Result<WeightMultiset, InvariantError> {
    let mut ids = HashSet::new();
    let mut values = Vec::with_capacity(per_coloring.len());
    for (id, ts) in per_coloring {
        if !ids.insert(id.as_str()) {
            return Err(InvariantError::DuplicateColoring(id.clone()));
        }
        values.push(weight_of_coloring(ts, phi)?);
    }
    Ok(WeightMultiset::new(phi.modulus, values))
}

/// Multiset inclusion: each value of `a` occurs in `b` at least as often.
pub fn multiset_subset(a: &WeightMultiset, b: &WeightMultiset) -> Result<bool, InvariantError> {
    Ok(first_excess(a, b)?.is_none())
}

/// The smallest value whose multiplicity in `a` exceeds that in `b`.
pub fn first_excess(a: &WeightMultiset, b: &WeightMultiset) -> Result<Option<(Coefficient, usize, usize)>, InvariantError> {
    if a.modulus != b.modulus {
        return Err(InvariantError::ModulusMismatch(a.modulus, b.modulus));
    }
    let bc: BTreeMap<Coefficient, usize> = b.counts().into_iter().collect();
    Ok(a.counts().into_iter().find_map(|(v, k)| {
        let kb = bc.get(&v).copied().unwrap_or(0);
        (k > kb).then_some((v, k, kb))
    }))
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: u64, name: &str) -> Result<T, InvariantError> {
    let raw = rec.get(i).ok_or_else(|| InvariantError::Csv { line, detail: format!("missing {name}") })?;
    raw.parse().map_err(|_| InvariantError::Csv { line, detail: format!("bad {name} {raw:?}") })
}

/// Parses a cocycle file: a `modulus,m` line, then `y,x1,x2,x3,value` rows.
pub fn parse_cocycle(text: &str, x_order: usize, y_order: usize) -> Result<CocycleTable, InvariantError> {
    let mut rdr = reader(text);
    let mut table: Option<CocycleTable> = None;
    let mut given = HashSet::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| InvariantError::Csv { line: 0, detail: e.to_string() })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        match table.as_mut() {
            None => {
                if rec.get(0) != Some("modulus") || rec.len() != 2 {
                    return Err(InvariantError::Csv { line, detail: "expected `modulus,m` first".into() });
                }
                table = Some(CocycleTable::zero(field(&rec, 1, line, "modulus")?, x_order, y_order));
            }
            Some(t) => {
                if rec.len() != 5 {
                    return Err(InvariantError::Csv { line, detail: format!("expected 5 fields, got {}", rec.len()) });
                }
                let key = (
                    field(&rec, 0, line, "y")?,
                    field(&rec, 1, line, "x1")?,
                    field(&rec, 2, line, "x2")?,
                    field(&rec, 3, line, "x3")?,
                );
                if !given.insert(key) {
                    return Err(InvariantError::DuplicateEntry(key));
                }
                t.set(key.0, key.1, key.2, key.3, field(&rec, 4, line, "value")?)?;
            }
        }
    }
    table.ok_or(InvariantError::Csv { line: 1, detail: "empty cocycle file".into() })
}

/// Number of `(y, x1, x2, x3)` cells a parsed file left implicit.
pub fn implicit_entries(text: &str, phi: &CocycleTable) -> usize {
    let (n, m) = phi.orders();
    let explicit = reader(text).records().filter_map(Result::ok).filter(|r| r.len() == 5).count();
    (m * n * n * n).saturating_sub(explicit)
}

/// Parses `coloring_id,sign,y,x1,x2,x3` rows, grouped by id in order of
/// first appearance. A row holding only an id declares a coloring without
/// triple points. An optional header row starting `coloring_id` is skipped.
pub fn parse_triples(text: &str) -> Result<Vec<(String, Vec<TriplePointDatum>)>, InvariantError> {
    let mut out: Vec<(String, Vec<TriplePointDatum>)> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for rec in reader(text).records() {
        let rec = rec.map_err(|e| InvariantError::Csv { line: 0, detail: e.to_string() })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(|f| f.is_empty()) || rec.get(0) == Some("coloring_id") {
            continue;
        }
        let id = rec[0].to_string();
        let slot = *index.entry(id.clone()).or_insert_with(|| {
            out.push((id, Vec::new()));
            out.len() - 1
        });
        match rec.len() {
            1 => {}
            6 => {
                let t = TriplePointDatum::new(
                    field(&rec, 1, line, "sign")?,
                    field(&rec, 2, line, "y")?,
                    field(&rec, 3, line, "x1")?,
                    field(&rec, 4, line, "x2")?,
                    field(&rec, 5, line, "x3")?,
                )?;
                out[slot].1.push(t);
            }
            k => return Err(InvariantError::Csv { line, detail: format!("expected 1 or 6 fields, got {k}") }),
        }
    }
    Ok(out)
}
