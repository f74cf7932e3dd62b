//! Matching fingerprints against a reference knot table up to mirror image.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::Read;
use std::path::Path;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::homfly::{alexander_from_homfly, jones_from_homfly, mirror_homfly};
use crate::invariants::text::{format_half, format_poly2, parse_half, parse_poly2};
use crate::invariants::{Fingerprint, Poly1, Poly2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotRecord {
    pub name: String,
    pub crossings: usize,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MatchResult {
    Unknot,
    Unique { name: String, mirrored: bool },
    Ambiguous(Vec<String>),
    /// Matches only connected sums of reference knots, e.g. `3a1#m3a1`.
    Composite(Vec<String>),
    Unknown,
}

impl MatchResult {
    /// Name of the knot or `a|b|...` for an ambiguity class.
    pub fn label(&self) -> String {
        match self {
            MatchResult::Unknot => "0_1".into(),
            MatchResult::Unique { name, .. } => name.clone(),
            MatchResult::Ambiguous(names) | MatchResult::Composite(names) => names.join("|"),
            MatchResult::Unknown => "?".into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ReferenceError {
    #[error("cannot read reference table: {0}")]
    Io(#[from] std::io::Error),
    #[error("row {row}: {msg}")]
    Row { row: usize, msg: String },
    #[error("duplicate knot name {0}")]
    Duplicate(String),
    #[error("row {row} ({name}): {which} polynomial disagrees with the HOMFLY-PT specialization")]
    Identity { row: usize, name: String, which: &'static str },
    #[error("trefoil 3a1 missing or inconsistent under every supported convention")]
    Gate,
}

#[derive(Deserialize)]
struct CsvRow {
    name: String,
    crossings: usize,
    homfly: String,
    jones: String,
    alexander: String,
}

/// Convention adjustments tried on the trefoil row before loading.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Convention {
    Native,
    /// HOMFLY-PT written in `v^-1` (mirror-image variable convention).
    InvertedV,
    /// Jones written in `t^-1`.
    InvertedT,
}

impl Convention {
    const ALL: [Convention; 3] = [Convention::Native, Convention::InvertedV, Convention::InvertedT];

    fn apply(self, homfly: Poly2, jones: Poly1) -> (Poly2, Poly1) {
        match self {
            Convention::Native => (homfly, jones),
            Convention::InvertedV => (mirror_homfly(&homfly), jones),
            Convention::InvertedT => (homfly, jones.invert_variable()),
        }
    }
}

fn identities_hold(h: &Poly2, j: &Poly1, a: &Poly1) -> Result<(), &'static str> {
    if jones_from_homfly(h) != *j {
        return Err("jones");
    }
    if alexander_from_homfly(h) != *a {
        return Err("alexander");
    }
    Ok(())
}

/// A connected sum of reference knots; `m` marks a mirrored summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeRecord {
    pub name: String,
    pub crossings: usize,
}

fn product(a: &Fingerprint, b: &Fingerprint) -> Fingerprint {
    Fingerprint {
        homfly: &a.homfly * &b.homfly,
        jones: &a.jones * &b.jones,
        alexander: &a.alexander * &b.alexander,
        components: 1,
    }
}

/// Fingerprints of connected sums with two or three summands and total
/// crossing number at most `max`. Invariants are multiplicative, so a
/// composite fingerprint is the product of its summands'.
fn composite_index(records: &[KnotRecord], max: usize) -> HashMap<Fingerprint, Vec<CompositeRecord>> {
    let mut small: Vec<&KnotRecord> = records.iter().filter(|r| r.crossings + 3 <= max).collect();
    small.sort_by_key(|a| knot_order(&a.name));
    let mut out: HashMap<Fingerprint, Vec<CompositeRecord>> = HashMap::new();
    let mut add = |parts: &[(&KnotRecord, bool)]| {
        let mut f = Fingerprint::unknot();
        for (r, m) in parts {
            f = product(&f, &if *m { r.fingerprint.mirror() } else { r.fingerprint.clone() });
        }
        let name = parts.iter().map(|(r, m)| format!("{}{}", if *m { "m" } else { "" }, r.name)).join("#");
        let crossings = parts.iter().map(|(r, _)| r.crossings).sum();
        let list = out.entry(f.mirror_key()).or_default();
        if !list.iter().any(|c: &CompositeRecord| c.name == name) {
            list.push(CompositeRecord { name, crossings });
        }
    };
    // the first summand is never mirrored: overall mirror images share keys
    let chiral = |r: &KnotRecord| r.fingerprint.mirror() != r.fingerprint;
    for (i, a) in small.iter().enumerate() {
        for (j, b) in small.iter().enumerate().skip(i) {
            if a.crossings + b.crossings > max {
                continue;
            }
            for mb in [false, true] {
                if mb && !chiral(b) {
                    continue;
                }
                add(&[(a, false), (b, mb)]);
                for c in small.iter().skip(j) {
                    if a.crossings + b.crossings + c.crossings > max {
                        continue;
                    }
                    for mc in [false, true] {
                        if !(mc && !chiral(c)) {
                            add(&[(a, false), (b, mb), (c, mc)]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Immutable reference table indexed by mirror-closed fingerprint.
#[derive(Clone, Debug)]
pub struct ReferenceTable {
    records: Vec<KnotRecord>,
    index: HashMap<Fingerprint, Vec<usize>>,
    composites: HashMap<Fingerprint, Vec<CompositeRecord>>,
    convention: Convention,
}

impl ReferenceTable {
    pub fn from_records(records: Vec<KnotRecord>) -> Result<ReferenceTable, ReferenceError> {
        let mut names = BTreeSet::new();
        let mut index: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        for (i, r) in records.iter().enumerate() {
            if !names.insert(r.name.clone()) {
                return Err(ReferenceError::Duplicate(r.name.clone()));
            }
            index.entry(r.fingerprint.mirror_key()).or_default().push(i);
        }
        let max = records.iter().map(|r| r.crossings).max().unwrap_or(0);
        let composites = composite_index(&records, max);
        Ok(ReferenceTable { records, index, composites, convention: Convention::Native })
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<ReferenceTable, ReferenceError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut raw = Vec::new();
        for (i, row) in rdr.deserialize::<CsvRow>().enumerate() {
            let row_no = i + 2;
            let row = row.map_err(|e| ReferenceError::Row { row: row_no, msg: e.to_string() })?;
            let bad = |e: crate::invariants::text::PolyParseError| ReferenceError::Row { row: row_no, msg: e.to_string() };
            let h = parse_poly2(&row.homfly).map_err(bad)?;
            let j = parse_half(&row.jones, "t").map_err(bad)?;
            let a = parse_half(&row.alexander, "t").map_err(bad)?;
            raw.push((row_no, row.name, row.crossings, h, j, a));
        }
        let convention = match raw.iter().find(|r| r.1 == "3a1") {
            Some((_, _, _, h, j, a)) => Convention::ALL
                .into_iter()
                .find(|c| {
                    let (h, j) = c.apply(h.clone(), j.clone());
                    identities_hold(&h, &j, a).is_ok()
                })
                .ok_or(ReferenceError::Gate)?,
            None => return Err(ReferenceError::Gate),
        };
        if convention != Convention::Native {
            log::warn!("reference table normalized from {convention:?} convention");
        }
        let mut records = Vec::with_capacity(raw.len());
        for (row, name, crossings, h, j, a) in raw {
            let (h, j) = convention.apply(h, j);
            if let Err(which) = identities_hold(&h, &j, &a) {
                return Err(ReferenceError::Identity { row, name, which });
            }
            records.push(KnotRecord {
                name,
                crossings,
                fingerprint: Fingerprint { homfly: h, jones: j, alexander: a, components: 1 },
            });
        }
        let mut table = ReferenceTable::from_records(records)?;
        table.convention = convention;
        Ok(table)
    }

    /// Rebuilds the connected-sum index for total crossing number up to
    /// `max` (by default the largest crossing number in the table).
    pub fn with_composite_limit(mut self, max: usize) -> ReferenceTable {
        self.composites = composite_index(&self.records, max);
        self
    }

    /// The sub-table of knots with at most `max_crossings` crossings.
    pub fn restricted(&self, max_crossings: usize) -> ReferenceTable {
        let records = self.records.iter().filter(|r| r.crossings <= max_crossings).cloned().collect();
        let mut t = ReferenceTable::from_records(records).expect("names stay unique");
        t.convention = self.convention;
        t
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn max_crossings(&self) -> usize {
        self.records.iter().map(|r| r.crossings).max().unwrap_or(0)
    }

    /// Groups of two or more records sharing a fingerprint up to mirror.
    pub fn collision_classes(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .index
            .values()
            .filter(|v| v.len() > 1)
            .map(|v| {
                let mut names: Vec<String> = v.iter().map(|&i| self.records[i].name.clone()).collect();
                names.sort_by_key(|a| knot_order(a));
                names
            })
            .collect();
        out.sort_by(|a, b| knot_order(&a[0]).cmp(&knot_order(&b[0])));
        out
    }

    /// Writes the table in the reference CSV format.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,crossings,homfly,jones,alexander\n");
        for r in &self.records {
            let f = &r.fingerprint;
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.name,
                r.crossings,
                format_poly2(&f.homfly),
                format_half(&f.jones, "t"),
                format_half(&f.alexander, "t")
            ));
        }
        s
    }
}

pub fn load_reference(path: &Path) -> Result<ReferenceTable, ReferenceError> {
    ReferenceTable::from_reader(File::open(path)?)
}

/// Sort key for knot names such as `9a5` or `11n76`: crossings, then
/// alternating before non-alternating, then index.
pub fn knot_order(name: &str) -> (usize, u8, usize, String) {
    let split = name.find(['a', 'n']);
    match split {
        Some(p) => {
            let c = name[..p].parse().unwrap_or(usize::MAX);
            let kind = name.as_bytes()[p];
            let i = name[p + 1..].parse().unwrap_or(usize::MAX);
            (c, kind, i, name.to_string())
        }
        None => (usize::MAX, 0, 0, name.to_string()),
    }
}

/// Matches `f` or its mirror against the table.
pub fn identify(f: &Fingerprint, table: &ReferenceTable) -> MatchResult {
    identify_bounded(f, table, usize::MAX)
}

/// Like [`identify`], keeping only knots with at most `max_crossings`
/// crossings (a diagram with `c` crossings cannot present a knot of
/// larger crossing number).
pub fn identify_bounded(f: &Fingerprint, table: &ReferenceTable, max_crossings: usize) -> MatchResult {
    if f.is_unknot() {
        return MatchResult::Unknot;
    }
    let key = f.mirror_key();
    let primes: Vec<&KnotRecord> = table
        .index
        .get(&key)
        .into_iter()
        .flatten()
        .map(|&i| &table.records[i])
        .filter(|r| r.crossings <= max_crossings)
        .collect();
    let composites: Vec<&CompositeRecord> =
        table.composites.get(&key).into_iter().flatten().filter(|c| c.crossings <= max_crossings).collect();
    let mut names: Vec<String> = primes.iter().map(|r| r.name.clone()).collect();
    names.sort_by_key(|a| knot_order(a));
    names.extend(composites.iter().map(|c| c.name.clone()));
    match (primes.as_slice(), composites.is_empty()) {
        ([], true) => MatchResult::Unknown,
        ([], false) => MatchResult::Composite(names),
        ([r], true) => MatchResult::Unique { name: r.name.clone(), mirrored: r.fingerprint != *f },
        _ => MatchResult::Ambiguous(names),
    }
}

/// True for connected-sum names produced by the composite index.
pub fn is_composite_name(name: &str) -> bool {
    name.contains('#')
}
