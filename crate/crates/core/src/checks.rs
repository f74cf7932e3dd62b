//! Whole-set checks of the structural results over projection data: tangle
//! existence and the face identity on every projection, and the crossing
//! bounds of the resolutions with invariant preservation.

use std::fs;
use std::path::{Path, PathBuf};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::codec::{emit_spd, emit_tpd, parse_lines, parse_spd};
use crate::diagram::{Role, Roles, ShadowProjection, TripleDiagram};
use crate::invariants::{fingerprint_with, Fingerprint, HomflyEngine};
use crate::resolve::{delta_to_classical, triple_to_classical, triple_to_deltas_naive, triple_to_deltas_optimized};
use crate::tabulate::TabulateError;
use crate::tangles::{face_identity_report, max_disjoint_counts, verify_existence};

/// Reads every `.spd` file in `dir` and in its `tb*` subdirectories.
pub fn read_projection_dir(dir: &Path) -> Result<Vec<ShadowProjection>, TabulateError> {
    let mut files: Vec<PathBuf> = Vec::new();
    let mut dirs = vec![dir.to_path_buf()];
    if dir.is_file() {
        files.push(dir.to_path_buf());
        dirs.clear();
    }
    while let Some(d) = dirs.pop() {
        for e in fs::read_dir(&d)? {
            let p = e?.path();
            if p.is_dir() && p.file_name().is_some_and(|f| f.to_string_lossy().starts_with("tb")) {
                dirs.push(p);
            } else if p.extension().is_some_and(|x| x == "spd") {
                files.push(p);
            }
        }
    }
    files.sort();
    let mut out = Vec::new();
    for path in files {
        let text = fs::read_to_string(&path)?;
        let list = parse_lines(&text, parse_spd)
            .map_err(|(line, e)| TabulateError::BadTb { path: path.clone(), line, msg: e.to_string() })?;
        out.extend(list);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExistenceSummary {
    pub checked: usize,
    /// sPD codes of projections with no tangle pattern.
    pub without_pattern: Vec<String>,
    /// sPD codes whose face identity residual is not zero.
    pub nonzero_residual: Vec<String>,
    /// sPD codes with a face over its bigon ceiling but no `T4` at that face.
    pub ceiling_violations: Vec<String>,
}

impl ExistenceSummary {
    pub fn passed(&self) -> bool {
        self.without_pattern.is_empty() && self.nonzero_residual.is_empty() && self.ceiling_violations.is_empty()
    }
}

pub fn check_existence(projections: &[ShadowProjection]) -> ExistenceSummary {
    let mut s = ExistenceSummary { checked: projections.len(), ..Default::default() };
    for p in projections {
        let m = p.planar_map();
        let code = emit_spd(p);
        let found = match verify_existence(&m) {
            Ok(found) => found,
            Err(_) => {
                s.without_pattern.push(code.clone());
                Vec::new()
            }
        };
        let r = face_identity_report(&m);
        if r.residual != 0 {
            s.nonzero_residual.push(code.clone());
        }
        let flagged_ok = r.faces.iter().filter(|f| f.flagged).all(|f| {
            found.iter().any(|e| e.kind == crate::tangles::TangleKind::T4 && e.faces.first() == Some(&f.face))
        });
        if !flagged_ok {
            s.ceiling_violations.push(code);
        }
    }
    s
}

/// Every valid role assignment of a projection (`6^n` diagrams), in
/// lexicographic order.
pub fn all_role_assignments(p: &ShadowProjection) -> Vec<TripleDiagram> {
    let perms: Vec<Roles> = [Role::Top, Role::Middle, Role::Bottom]
        .into_iter()
        .permutations(3)
        .map(|v| [v[0], v[1], v[2]])
        .collect();
    (0..p.n())
        .map(|_| perms.clone())
        .multi_cartesian_product()
        .filter_map(|roles| TripleDiagram::new(p.clone(), roles).ok())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionCheck {
    pub code: String,
    pub n: usize,
    pub t1: usize,
    pub t2: usize,
    pub naive: usize,
    pub optimized: usize,
    pub preserved: bool,
}

impl ResolutionCheck {
    pub fn passed(&self) -> bool {
        self.naive == 2 * self.n && self.optimized + self.t1 + self.t2 <= 2 * self.n && self.preserved
    }
}

/// Resolves a triple-crossing diagram both ways and compares the
/// fingerprints of the three classical expansions.
pub fn check_resolution(engine: &mut HomflyEngine, d: &TripleDiagram) -> ResolutionCheck {
    let counts = max_disjoint_counts(&d.base().planar_map());
    let naive = triple_to_deltas_naive(d);
    let (optimized, _) = triple_to_deltas_optimized(d);
    let fp = |engine: &mut HomflyEngine, c| -> Fingerprint { fingerprint_with(engine, &c).expect("within budget") };
    let base = fp(engine, triple_to_classical(d));
    let a = fp(engine, delta_to_classical(&naive));
    let b = fp(engine, delta_to_classical(&optimized));
    ResolutionCheck {
        code: emit_tpd(d),
        n: d.n(),
        t1: counts.t1,
        t2: counts.t2,
        naive: naive.n(),
        optimized: optimized.n(),
        preserved: a == base && b == base,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ResolutionSummary {
    pub checked: usize,
    pub saved: usize,
    pub failures: Vec<ResolutionCheck>,
}

/// Runs [`check_resolution`] over every role assignment of every projection.
pub fn check_resolutions(projections: &[ShadowProjection]) -> ResolutionSummary {
    let diagrams: Vec<TripleDiagram> = projections.iter().flat_map(all_role_assignments).collect();
    let results: Vec<ResolutionCheck> = diagrams
        .par_iter()
        .map_init(HomflyEngine::new, |engine, d| {
            if engine.memo_len() > 200_000 {
                *engine = HomflyEngine::new();
            }
            check_resolution(engine, d)
        })
        .collect();
    let saved = results.iter().map(|r| r.naive - r.optimized).sum();
    ResolutionSummary {
        checked: results.len(),
        saved,
        failures: results.into_iter().filter(|r| !r.passed()).collect(),
    }
}
