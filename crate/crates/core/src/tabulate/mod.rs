//! Enumeration of delta-crossing diagrams over triple-point projections
//! and tabulation of the knots they present.
//!
//! Every triple point of a knot projection with `n` triple points is
//! resolved into each of the four delta types. The resulting diagrams are
//! reduced modulo mirror image, expanded to classical diagrams,
//! fingerprinted and identified. A knot's delta-crossing number is the
//! least `n` at which it appears: shrinking the triangle of each
//! delta-crossing to a point turns any `k`-delta diagram into a diagram
//! over some `k`-point projection, so smaller `n` are covered exhaustively.

pub mod cache;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::codec::{emit_dpd, parse_lines, parse_spd};
use crate::diagram::{DeltaDiagram, DeltaType, ShadowProjection, ALL_DELTA_TYPES};
use crate::identify::{identify_bounded, is_composite_name, knot_order, MatchResult, ReferenceTable};
use crate::invariants::{fingerprint_with, Fingerprint, HomflyEngine};
use crate::resolve::delta_to_classical;
pub use cache::FingerprintCache;

#[derive(Debug, Error)]
pub enum TabulateError {
    #[error("no projection file for n = {n} under {dir}")]
    MissingTb { n: usize, dir: PathBuf },
    #[error("{path}:{line}: {msg}")]
    BadTb { path: PathBuf, line: usize, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Finds the projection file for `n`: `DIR/tb{n}.spd`, `DIR/tb{n}/*.spd`,
/// or `DIR` itself when it is such a directory.
pub fn tb_files(dir: &Path, n: usize) -> Result<Vec<PathBuf>, TabulateError> {
    let name = format!("tb{n}");
    let flat = dir.join(format!("{name}.spd"));
    if flat.is_file() {
        return Ok(vec![flat]);
    }
    let sub = if dir.join(&name).is_dir() {
        dir.join(&name)
    } else if dir.file_name().is_some_and(|f| f == name.as_str()) {
        dir.to_path_buf()
    } else {
        return Err(TabulateError::MissingTb { n, dir: dir.to_path_buf() });
    };
    let mut files: Vec<PathBuf> = fs::read_dir(&sub)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "spd"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(TabulateError::MissingTb { n, dir: dir.to_path_buf() });
    }
    Ok(files)
}

/// Reads the projections with `n` triple points, checking that each one is
/// spherical and has the stated size.
pub fn read_tb(dir: &Path, n: usize) -> Result<Vec<ShadowProjection>, TabulateError> {
    let mut out = Vec::new();
    for path in tb_files(dir, n)? {
        let text = fs::read_to_string(&path)?;
        let bad = |line, msg: String| TabulateError::BadTb { path: path.clone(), line, msg };
        let list = parse_lines(&text, parse_spd).map_err(|(line, e)| bad(line, e.to_string()))?;
        for (i, p) in list.into_iter().enumerate() {
            if p.n() != n {
                return Err(bad(i + 1, format!("expected {n} triple points, found {}", p.n())));
            }
            if !p.is_planar() {
                return Err(bad(i + 1, "projection is not spherical".into()));
            }
            out.push(p);
        }
    }
    Ok(out)
}

/// Keeps the single-component projections.
pub fn filter_knot_projections(projections: &[ShadowProjection]) -> Vec<ShadowProjection> {
    projections.iter().filter(|p| p.is_knot()).cloned().collect()
}

/// All `4^n` delta diagrams over `p`, in lexicographic order of the type
/// word (`S < T < U < W`, first triple point most significant).
pub fn enumerate_assignments(p: &ShadowProjection) -> Vec<DeltaDiagram> {
    if p.n() == 0 {
        return vec![DeltaDiagram::empty()];
    }
    let base = DeltaDiagram::new(
        p.points().iter().map(|&arcs| crate::diagram::DeltaCrossing { kind: DeltaType::S, arcs }).collect(),
    )
    .expect("a valid shadow carries a valid delta diagram");
    (0..p.n())
        .map(|_| ALL_DELTA_TYPES)
        .multi_cartesian_product()
        .map(|kinds| base.with_kinds(&kinds))
        .collect()
}

/// Canonical form shared by a diagram and its mirror image.
pub fn mirror_class_key(d: &DeltaDiagram) -> DeltaDiagram {
    let a = d.canonical();
    let b = d.mirror().canonical();
    if emit_dpd(&b) < emit_dpd(&a) {
        b
    } else {
        a
    }
}

/// One representative per mirror pair (and per isomorphism class), in
/// order of first occurrence; the representative is the canonical key.
pub fn dedupe_mirrors(diagrams: &[DeltaDiagram]) -> Vec<DeltaDiagram> {
    let keys: Vec<DeltaDiagram> = diagrams.par_iter().map(mirror_class_key).collect();
    let mut seen = BTreeSet::new();
    keys.into_iter().filter(|k| seen.insert(emit_dpd(k))).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub n: usize,
    pub projections: usize,
    pub knot_projections: usize,
    pub enumerated: usize,
    pub after_dedup: usize,
    pub unique: usize,
    pub ambiguous: usize,
    pub unknot: usize,
    pub composite: usize,
    pub unknown: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Identification {
    Unique,
    Ambiguous,
}

/// A knot (or a fingerprint class of knots) with its least delta level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotEntry {
    pub names: Vec<String>,
    pub delta: usize,
    pub identification: Identification,
    /// Least canonical dPD code among the diagrams at that level.
    pub witness: String,
}

impl KnotEntry {
    pub fn label(&self) -> String {
        self.names.join("|")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TabulationReport {
    pub levels: Vec<LevelStats>,
    /// Uniquely identified knots followed by ambiguity classes, each sorted
    /// by level and knot order.
    pub knots: Vec<KnotEntry>,
    /// Diagrams whose fingerprint matched nothing in the reference table.
    pub unknown_witnesses: Vec<String>,
}

impl TabulationReport {
    pub fn unique_at(&self, delta: usize) -> Vec<&str> {
        self.knots
            .iter()
            .filter(|k| k.delta == delta && k.identification == Identification::Unique)
            .map(|k| k.names[0].as_str())
            .collect()
    }

    pub fn classes_at(&self, delta: usize) -> Vec<&KnotEntry> {
        self.knots.iter().filter(|k| k.delta == delta && k.identification == Identification::Ambiguous).collect()
    }

    pub fn max_level(&self) -> usize {
        self.levels.iter().map(|l| l.n).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub tb_dir: PathBuf,
    pub max_n: usize,
}

struct Outcome {
    result: MatchResult,
    witness: String,
}

fn fingerprint_all(diagrams: &[DeltaDiagram], cache: &FingerprintCache) -> Vec<(String, Fingerprint, bool)> {
    diagrams
        .par_iter()
        .map_init(HomflyEngine::new, |engine, d| {
            let key = emit_dpd(d);
            if let Some(f) = cache.get(&key) {
                return (key, f.clone(), false);
            }
            if engine.memo_len() > 200_000 {
                *engine = HomflyEngine::new();
            }
            let f = fingerprint_with(engine, &delta_to_classical(d)).expect("projection sizes stay within budget");
            (key, f, true)
        })
        .collect()
}

/// Runs enumeration and identification for `n = 1..=max_n`.
pub fn run_pipeline(
    cfg: &PipelineConfig,
    table: &ReferenceTable,
    cache: &mut FingerprintCache,
) -> Result<TabulationReport, TabulateError> {
    let mut levels = Vec::new();
    let mut best: BTreeMap<Vec<String>, (usize, Identification, String)> = BTreeMap::new();
    let mut unknown_witnesses = Vec::new();
    for n in 1..=cfg.max_n {
        let all = read_tb(&cfg.tb_dir, n)?;
        let knots = filter_knot_projections(&all);
        let mut stats = LevelStats { n, projections: all.len(), knot_projections: knots.len(), ..Default::default() };
        let mut reps = Vec::new();
        for p in &knots {
            let ds = enumerate_assignments(p);
            stats.enumerated += ds.len();
            reps.extend(dedupe_mirrors(&ds));
        }
        // the same diagram may come from two projections only if they are
        // isomorphic, which ingestion rules out; dedupe again regardless
        let mut seen = BTreeSet::new();
        reps.retain(|d| seen.insert(emit_dpd(d)));
        stats.after_dedup = reps.len();
        log::info!("n = {n}: {} knot projections, {} diagrams, {} after mirror reduction", knots.len(), stats.enumerated, reps.len());
        let fps = fingerprint_all(&reps, cache);
        let fresh: Vec<(String, Fingerprint)> = fps.iter().filter(|x| x.2).map(|(k, f, _)| (k.clone(), f.clone())).collect();
        log::info!("n = {n}: {} fingerprints computed, {} from cache", fresh.len(), fps.len() - fresh.len());
        cache.extend(fresh)?;
        let outcomes: Vec<Outcome> = fps
            .into_iter()
            .map(|(key, f, _)| Outcome { result: identify_bounded(&f, table, 3 * n), witness: key })
            .collect();
        for o in outcomes {
            let (names, kind) = match o.result {
                MatchResult::Unique { name, .. } => {
                    stats.unique += 1;
                    (vec![name], Identification::Unique)
                }
                MatchResult::Ambiguous(names) => {
                    stats.ambiguous += 1;
                    (names, Identification::Ambiguous)
                }
                MatchResult::Unknot => {
                    stats.unknot += 1;
                    continue;
                }
                MatchResult::Composite(names) => {
                    stats.composite += 1;
                    log::debug!("composite candidate {} for {}", names.join("|"), o.witness);
                    continue;
                }
                MatchResult::Unknown => {
                    stats.unknown += 1;
                    log::debug!("unidentified diagram {}", o.witness);
                    unknown_witnesses.push(o.witness);
                    continue;
                }
            };
            let entry = best.entry(names).or_insert((n, kind, o.witness.clone()));
            if entry.0 == n && o.witness < entry.2 {
                entry.2 = o.witness;
            }
        }
        levels.push(stats);
    }
    unknown_witnesses.sort();
    let mut knots: Vec<KnotEntry> = best
        .into_iter()
        .map(|(names, (delta, identification, witness))| KnotEntry { names, delta, identification, witness })
        .collect();
    knots.sort_by(|a, b| {
        (a.identification, a.delta, knot_order(&a.names[0])).cmp(&(b.identification, b.delta, knot_order(&b.names[0])))
    });
    Ok(TabulationReport { levels, knots, unknown_witnesses })
}

/// Table-1 style counts: `delta<TAB>count<TAB>names` with ambiguity
/// classes written as `a|b` after the unique names.
pub fn emit_table1(report: &TabulationReport) -> String {
    let mut s = String::from("# Prime knots by delta-crossing number: delta, count, names\n");
    for level in 1..=report.max_level() {
        let unique = report.unique_at(level);
        let classes: Vec<String> = report.classes_at(level).iter().map(|k| k.label()).collect();
        if unique.is_empty() && classes.is_empty() {
            continue;
        }
        let names = unique.iter().map(|s| s.to_string()).chain(classes).join(" ");
        s.push_str(&format!("{level}\t{}\t{names}\n", unique.len() + report.classes_at(level).len()));
    }
    s
}

/// Minimal witnesses `name<TAB>dPD`, one line per knot or class.
pub fn emit_table2(report: &TabulationReport, max_delta: usize) -> String {
    let mut s = String::from("# Minimal delta-crossing diagrams: name, dPD code\n");
    for k in report.knots.iter().filter(|k| k.delta <= max_delta) {
        s.push_str(&format!("{}\t{}\n", k.label(), k.witness));
    }
    s
}

/// Per-knot status `delta<TAB>name<TAB>Unique|Ambiguous<TAB>witness`.
pub fn emit_identifications(report: &TabulationReport) -> String {
    let mut s = String::from("# delta, knot or ambiguity class, identification, witness dPD\n");
    for k in &report.knots {
        s.push_str(&format!("{}\t{}\t{:?}\t{}\n", k.delta, k.label(), k.identification, k.witness));
    }
    s
}

/// Writes `table1.txt`, `table2.txt` (witnesses for every level) and
/// `identifications.txt` to `dir`.
pub fn emit_tables(report: &TabulationReport, dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("table1.txt"), emit_table1(report))?;
    fs::write(dir.join("table2.txt"), emit_table2(report, usize::MAX))?;
    fs::write(dir.join("identifications.txt"), emit_identifications(report))?;
    Ok(())
}

/// Rows of a Table-1 style file: `(delta, count, names)`.
pub fn parse_table1(text: &str) -> Vec<(usize, usize, Vec<String>)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| {
            let mut parts = l.split('\t');
            let d = parts.next()?.trim().parse().ok()?;
            let c = parts.next()?.trim().parse().ok()?;
            let names = parts.next().unwrap_or("").split_whitespace().map(String::from).collect();
            Some((d, c, names))
        })
        .collect()
}

/// Rows of a Table-2 style file: `(name, dPD code)`.
pub fn parse_table2(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter_map(|l| l.split_once('\t').map(|(a, b)| (a.trim().to_string(), b.trim().to_string())))
        .collect()
}

/// Differences between a report and an expected Table-1 row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RowComparison {
    pub delta: usize,
    /// Uniquely identified at this level but not listed.
    pub unexpected: Vec<String>,
    /// Listed but neither identified here nor covered by a class here.
    pub missing: Vec<String>,
    /// Listed knots accounted for only through an ambiguity class.
    pub via_classes: Vec<String>,
    /// Classes at this level not explained by a listed knot, a knot of
    /// lower level or a connected-sum candidate.
    pub stray_classes: Vec<String>,
}

impl RowComparison {
    pub fn exact(&self) -> bool {
        self.is_consistent() && self.via_classes.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty() && self.stray_classes.is_empty()
    }
}

pub fn compare_row(report: &TabulationReport, delta: usize, expected: &[String]) -> RowComparison {
    let want: BTreeSet<&str> = expected.iter().map(String::as_str).collect();
    let unique: BTreeSet<&str> = report.unique_at(delta).into_iter().collect();
    let classes = report.classes_at(delta);
    let mut cmp = RowComparison { delta, ..Default::default() };
    cmp.unexpected = unique.difference(&want).map(|s| s.to_string()).collect();
    for name in want.difference(&unique) {
        if classes.iter().any(|c| c.names.iter().any(|m| m == name)) {
            cmp.via_classes.push(name.to_string());
        } else {
            cmp.missing.push(name.to_string());
        }
    }
    let lower: BTreeSet<&str> = (1..delta).flat_map(|d| report.unique_at(d)).collect();
    cmp.stray_classes = classes
        .iter()
        .filter(|c| {
            !c.names.iter().any(|m| want.contains(m.as_str()) || lower.contains(m.as_str()) || is_composite_name(m))
        })
        .map(|c| c.label())
        .collect();
    cmp
}
