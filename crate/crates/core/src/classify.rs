//! Exhaustive enumeration of incidence bases, the genus 0 and 1 tables, and
//! an audit of the enumeration against the classification predicates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::thread;

use serde::Serialize;

use crate::base::{self, BundleDescriptor, BundleKind, IncidenceBase, ScrollInvariants};
use crate::error::{Error, Result};
use crate::oracle::oracle_intersection_number;
use crate::ruled::{self, DirectrixCount};
use crate::schubert::intersection_number;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedBase {
    pub base: IncidenceBase,
    /// Genus from degeneration; `speciality` records any failure of `n = d - 2g + 1`.
    pub invariants: ScrollInvariants,
}

/// Every base `n_1 <= … <= n_r` in `P^n` with `1 <= n_i <= n-2`,
/// `Σ (n-1-n_i) = 2n-3` and `n_i + n_j >= n-1`, in lexicographic order.
pub fn enumerate_base_dims(ambient: u32) -> Result<Vec<IncidenceBase>> {
    if ambient < 3 {
        return Err(Error::Precondition(format!(
            "enumeration starts at P^3, got P^{ambient}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    extend_dims(ambient, 1, 2 * ambient - 3, &mut current, &mut out);
    out.sort();
    out.into_iter()
        .map(|dims| IncidenceBase::new(ambient, dims))
        .collect()
}

fn extend_dims(
    n: u32,
    min_dim: u32,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if remaining == 0 {
        // sorted, so the first two spaces give the smallest pair sum
        if current.len() < 2 || current[0] + current[1] >= n - 1 {
            out.push(current.clone());
        }
        return;
    }
    for d in min_dim..=n - 2 {
        let cost = n - 1 - d;
        if cost > remaining {
            continue;
        }
        if current.len() == 1 && current[0] + d < n - 1 {
            continue;
        }
        current.push(d);
        extend_dims(n, d, remaining - cost, current, out);
        current.pop();
    }
}

/// All bases of `P^n` paired with their invariants.
pub fn enumerate_bases(ambient: u32) -> Result<Vec<EnumeratedBase>> {
    let bases = enumerate_base_dims(ambient)?;
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(bases.len().max(1));
    let chunk = bases.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<EnumeratedBase>>> = thread::scope(|s| {
        let handles: Vec<_> = bases
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|b| {
                            Ok(EnumeratedBase {
                                base: b.clone(),
                                invariants: base::invariants_reporting_speciality(b)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(bases.len());
    for part in results {
        out.extend(part?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinDirectrix {
    pub degree: i64,
    pub ambient: u32,
    pub count: DirectrixCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub ambient: u32,
    pub dims: Vec<u32>,
    pub degree: i64,
    pub genus: i64,
    pub e: i64,
    pub m: i64,
    pub min_directrix: MinDirectrix,
    pub bundle: BundleDescriptor,
}

impl TableRow {
    pub fn from_enumerated(entry: &EnumeratedBase) -> Result<TableRow> {
        let inv = &entry.invariants;
        let b = &entry.base;
        if inv.speciality != 0 {
            return Err(Error::SpecialityViolated {
                base: b.to_string(),
                degree: inv.degree,
                genus: inv.genus,
                speciality: inv.speciality,
            });
        }
        let bundle = inv.bundle.ok_or_else(|| {
            Error::Precondition(format!("{b} has genus {}, not 0 or 1", inv.genus))
        })?;
        let model = inv.model().ok_or_else(|| {
            Error::Inconsistent(format!("{b}: invariants do not form a ruled surface model"))
        })?;
        Ok(TableRow {
            ambient: b.ambient(),
            dims: b.dims().to_vec(),
            degree: inv.degree,
            genus: inv.genus,
            e: inv.e,
            m: inv.divisor_degree,
            min_directrix: MinDirectrix {
                degree: inv.min_directrix_degree,
                ambient: inv.min_directrix_space,
                count: ruled::min_directrix_count(&model)?,
            },
            bundle,
        })
    }

    pub fn base(&self) -> IncidenceBase {
        IncidenceBase::new(self.ambient, self.dims.clone()).expect("table rows hold valid bases")
    }

    fn scroll_label(&self) -> String {
        format!("R^{}_{} ⊂ P^{}", self.degree, self.genus, self.ambient)
    }

    fn directrix_label(&self) -> String {
        let md = &self.min_directrix;
        if md.degree == 1 {
            format!("P^1 ({})", md.count)
        } else {
            format!(
                "C^{}_{} ⊂ P^{} ({})",
                md.degree, self.genus, md.ambient, md.count
            )
        }
    }
}

/// Rational and elliptic incidence scrolls in `P^3, …, P^max_n`.
pub fn build_tables(max_n: u32) -> Result<(Vec<TableRow>, Vec<TableRow>)> {
    if max_n < 3 {
        return Err(Error::Precondition(format!(
            "tables start at P^3, got max_n = {max_n}"
        )));
    }
    let mut rational = Vec::new();
    let mut elliptic = Vec::new();
    for n in 3..=max_n {
        for entry in enumerate_bases(n)? {
            match entry.invariants.genus {
                0 => rational.push(TableRow::from_enumerated(&entry)?),
                1 => elliptic.push(TableRow::from_enumerated(&entry)?),
                _ => {}
            }
        }
    }
    Ok((rational, elliptic))
}

fn display_width(s: &str) -> usize {
    s.chars().count()
}

fn pad(s: &str, width: usize) -> String {
    let mut out = s.to_string();
    out.extend(std::iter::repeat_n(
        ' ',
        width.saturating_sub(display_width(s)),
    ));
    out
}

/// Aligned plain-text rendering of a table.
pub fn render_table_text(genus: u32, rows: &[TableRow]) -> String {
    let title = match genus {
        0 => "incidence rational scrolls".to_string(),
        1 => "incidence elliptic scrolls".to_string(),
        g => format!("incidence scrolls of genus {g}"),
    };
    let header = [
        "scroll",
        "base",
        "min directrix",
        "normalized bundle",
        "deg 𝔟",
    ];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.scroll_label(),
                r.base().histogram(),
                r.directrix_label(),
                r.bundle.to_string(),
                r.m.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(display_width);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(display_width(cell));
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "# {title}");
    let line = |cells: [&str; 5]| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(&pad(cell, widths[i]));
                s.push_str("  ");
            }
        }
        s
    };
    let _ = writeln!(out, "{}", line(header));
    for row in &body {
        let cells = [
            row[0].as_str(),
            row[1].as_str(),
            row[2].as_str(),
            row[3].as_str(),
            row[4].as_str(),
        ];
        let _ = writeln!(out, "{}", line(cells));
    }
    out
}

pub fn render_table_json(rows: &[TableRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("table rows serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ComputationFailed,
    DegreeOracleMismatch,
    GenusFormulaMismatch,
    MissingModel,
    NotIncidence,
    AmbiguousClause,
    PredictedBaseMismatch,
    ConstraintUnmet,
    IndecomposableEllipticE0,
    DuplicateInvariants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub base: String,
    pub kind: ViolationKind,
    pub detail: String,
}

/// A base of genus at least two whose scroll is special: the genus from
/// degeneration does not satisfy `n = d - 2g + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialScroll {
    pub base: String,
    pub degree: i64,
    pub genus: i64,
    /// `(d + 1 - n) / 2` when it is an integer.
    pub formula_genus: Option<i64>,
    pub speciality: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub max_n: u32,
    pub bases_checked: usize,
    pub rational_rows: usize,
    pub elliptic_rows: usize,
    pub violations: Vec<Violation>,
    pub special_scrolls: Vec<SpecialScroll>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "audit up to P^{}: {} bases, {} rational, {} elliptic, {} violations, {} special scrolls",
            self.max_n,
            self.bases_checked,
            self.rational_rows,
            self.elliptic_rows,
            self.violations.len(),
            self.special_scrolls.len()
        );
        for v in &self.violations {
            let _ = writeln!(out, "VIOLATION {:?} {}: {}", v.kind, v.base, v.detail);
        }
        for s in &self.special_scrolls {
            let formula = s
                .formula_genus
                .map_or_else(|| "non-integral".to_string(), |g| g.to_string());
            let _ = writeln!(
                out,
                "special {}: d = {}, g = {} (formula {}), i = {}",
                s.base, s.degree, s.genus, formula, s.speciality
            );
        }
        out
    }
}

fn formula_genus(inv: &ScrollInvariants) -> Option<i64> {
    let twice = inv.degree + 1 - i64::from(inv.ambient);
    (twice >= 0 && twice % 2 == 0).then_some(twice / 2)
}

/// Cross-checks every base of `P^3, …, P^max_n` against the classification.
pub fn audit(max_n: u32) -> AuditReport {
    let mut report = AuditReport {
        max_n,
        ..AuditReport::default()
    };
    let mut seen: BTreeMap<(i64, i64, u32, i64), String> = BTreeMap::new();
    for n in 3..=max_n {
        let entries = match enumerate_bases(n) {
            Ok(entries) => entries,
            Err(err) => {
                report.violations.push(Violation {
                    base: format!("P^{n}"),
                    kind: ViolationKind::ComputationFailed,
                    detail: err.to_string(),
                });
                continue;
            }
        };
        for entry in &entries {
            report.bases_checked += 1;
            audit_entry(entry, &mut report, &mut seen);
        }
    }
    report
}

fn audit_entry(
    entry: &EnumeratedBase,
    report: &mut AuditReport,
    seen: &mut BTreeMap<(i64, i64, u32, i64), String>,
) {
    let b = &entry.base;
    let inv = &entry.invariants;
    let name = b.to_string();
    let mut violate = |kind: ViolationKind, detail: String| {
        report.violations.push(Violation {
            base: name.clone(),
            kind,
            detail,
        });
    };

    let mut codims = b.codims();
    codims.push(1);
    match (
        intersection_number(b.ambient(), &codims),
        oracle_intersection_number(b.ambient(), &codims),
    ) {
        (Ok(p), Ok(o)) if p == o => {}
        (p, o) => violate(
            ViolationKind::DegreeOracleMismatch,
            format!("Pieri {p:?}, bialternant {o:?}"),
        ),
    }

    let key = (inv.degree, inv.genus, inv.ambient, inv.e);
    if let Some(other) = seen.insert(key, name.clone()) {
        violate(
            ViolationKind::DuplicateInvariants,
            format!("shares (d, g, n, e) = {key:?} with {other}"),
        );
    }

    let formula = formula_genus(inv);
    if formula != Some(inv.genus) {
        if inv.genus <= 1 {
            violate(
                ViolationKind::GenusFormulaMismatch,
                format!("degeneration gives {}, formula {formula:?}", inv.genus),
            );
        } else {
            report.special_scrolls.push(SpecialScroll {
                base: name.clone(),
                degree: inv.degree,
                genus: inv.genus,
                formula_genus: formula,
                speciality: inv.speciality,
            });
        }
    }

    if inv.genus > 1 {
        return;
    }
    match inv.genus {
        0 => report.rational_rows += 1,
        _ => report.elliptic_rows += 1,
    }
    if let Some(bundle) = inv.bundle {
        if bundle.base_genus == 1 && bundle.kind == BundleKind::Indecomposable && bundle.e == 0 {
            violate(
                ViolationKind::IndecomposableEllipticE0,
                "indecomposable elliptic scroll with e = 0".into(),
            );
        }
    }
    let Some(model) = inv.model() else {
        violate(
            ViolationKind::MissingModel,
            format!("no ruled surface model for {inv:?}"),
        );
        return;
    };
    match ruled::is_incidence(&model) {
        Ok(true) => {}
        Ok(false) => {
            violate(
                ViolationKind::NotIncidence,
                format!("{model} fails the classification"),
            );
            return;
        }
        Err(err) => {
            violate(ViolationKind::ComputationFailed, err.to_string());
            return;
        }
    }
    let predictions: Result<BTreeSet<IncidenceBase>> =
        ruled::incidence_clauses(&model).and_then(|cs| {
            cs.into_iter()
                .map(|c| ruled::predicted_base_for(&model, c))
                .collect()
        });
    match predictions {
        Ok(set) if set.len() == 1 => {
            let predicted = set.into_iter().next().expect("one prediction");
            if &predicted != b {
                violate(
                    ViolationKind::PredictedBaseMismatch,
                    format!("{model} predicts {predicted}"),
                );
            }
            if model.decomposable() {
                match ruled::base_structure_constraints(&model) {
                    Ok(reqs) if ruled::satisfies_constraints(&predicted, &reqs) => {}
                    Ok(reqs) => violate(
                        ViolationKind::ConstraintUnmet,
                        format!("{predicted} misses {reqs:?}"),
                    ),
                    Err(err) => violate(ViolationKind::ComputationFailed, err.to_string()),
                }
            }
        }
        Ok(set) => violate(
            ViolationKind::AmbiguousClause,
            format!("clauses of {model} predict {} different bases", set.len()),
        ),
        Err(err) => violate(ViolationKind::ComputationFailed, err.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(s: &str) -> IncidenceBase {
        s.parse().unwrap()
    }

    /// Brute force over every multiset of dimensions in `0..=n-1` with at most
    /// `2n-3` members, filtered by the three validation conditions.
    fn brute_force(n: u32) -> Vec<IncidenceBase> {
        fn rec(n: u32, start: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<IncidenceBase>) {
            let b = IncidenceBase::new(n, cur.clone()).unwrap();
            if !cur.is_empty() && base::validate(&b).all_pass && cur.iter().all(|&d| d >= 1) {
                out.push(b);
            }
            if left == 0 {
                return;
            }
            for d in start..n {
                cur.push(d);
                rec(n, d, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 0, 2 * n as usize - 3, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 3..=6 {
            assert_eq!(enumerate_base_dims(n).unwrap(), brute_force(n), "n = {n}");
        }
    }

    #[test]
    fn small_ambients() {
        let bases: Vec<_> = enumerate_bases(3)
            .unwrap()
            .into_iter()
            .map(|e| e.base)
            .collect();
        assert_eq!(bases, vec![base("3:1,1,1")]);
        let four: Vec<_> = enumerate_bases(4)
            .unwrap()
            .into_iter()
            .map(|e| (e.base.to_string(), e.invariants.degree, e.invariants.genus))
            .collect();
        assert_eq!(
            four,
            vec![
                ("4:1,2,2,2".to_string(), 3, 0),
                ("4:2,2,2,2,2".to_string(), 5, 1)
            ]
        );
        assert!(enumerate_bases(2).is_err());
    }

    #[test]
    fn seven_p3_in_p5_is_special() {
        let all = enumerate_bases(5).unwrap();
        let entry = all
            .iter()
            .find(|e| e.base == base("5:3,3,3,3,3,3,3"))
            .unwrap();
        assert_eq!(entry.invariants.degree, 14);
        assert_eq!(entry.invariants.genus, 8);
        assert_eq!(entry.invariants.speciality, 6);
        let low: Vec<_> = all.iter().filter(|e| e.invariants.genus <= 1).collect();
        assert_eq!(low.len(), 3);
    }

    #[test]
    fn table_row_rendering() {
        let (rational, elliptic) = build_tables(5).unwrap();
        assert_eq!(rational.len(), 4);
        assert_eq!(elliptic.len(), 2);
        let text = render_table_text(0, &rational);
        assert!(text.contains("R^2_0 ⊂ P^3"));
        assert!(text.contains("{3 P^1}"));
        assert!(text.contains("C^2_0 ⊂ P^2 (∞¹)"));
        let json = render_table_json(&elliptic);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed[0]["dims"], serde_json::json!([2, 2, 2, 2, 2]));
        assert_eq!(parsed[0]["min_directrix"]["count"], "∞¹");
        assert_eq!(parsed[0]["bundle"]["kind"], "indecomposable");
        assert_eq!(parsed[1]["min_directrix"]["count"], 2);
    }

    #[test]
    fn table_row_rejects_higher_genus() {
        let entry = enumerate_bases(6)
            .unwrap()
            .into_iter()
            .find(|e| e.base == base("6:3,3,3,3,4"))
            .unwrap();
        assert_eq!(entry.invariants.genus, 2);
        assert!(TableRow::from_enumerated(&entry).is_err());
    }

    #[test]
    fn audit_small_range_is_clean() {
        let report = audit(6);
        assert!(report.is_clean(), "{}", report.render_text());
        assert_eq!(report.rational_rows, 6);
        assert_eq!(report.elliptic_rows, 3);
        assert!(report
            .special_scrolls
            .iter()
            .any(|s| s.base == "5:3,3,3,3,3,3,3" && s.formula_genus == Some(5)));
    }
}
