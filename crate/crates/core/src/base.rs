//! Incidence bases: the multiset of linear subspaces whose common transversal
//! lines sweep out a scroll.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::degeneration;
use crate::error::{to_i64, Error, Result};
use crate::ruled::RuledSurfaceModel;
use crate::schubert::intersection_number;

/// A set of subspaces `P^{n_1}, …, P^{n_r}` of `P^n`, kept with `n_1 <= … <= n_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawBase", into = "RawBase")]
pub struct IncidenceBase {
    ambient: u32,
    dims: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawBase {
    ambient: u32,
    dims: Vec<u32>,
}

impl TryFrom<RawBase> for IncidenceBase {
    type Error = Error;

    fn try_from(raw: RawBase) -> Result<Self> {
        IncidenceBase::new(raw.ambient, raw.dims)
    }
}

impl From<IncidenceBase> for RawBase {
    fn from(b: IncidenceBase) -> Self {
        RawBase {
            ambient: b.ambient,
            dims: b.dims,
        }
    }
}

impl IncidenceBase {
    /// Requires `n >= 2` and every `n_i <= n-1`.
    pub fn new(ambient: u32, dims: impl Into<Vec<u32>>) -> Result<Self> {
        if ambient < 2 {
            return Err(Error::AmbientTooSmall { ambient });
        }
        let mut dims = dims.into();
        if let Some(&d) = dims.iter().find(|&&d| d > ambient - 1) {
            return Err(Error::SubspaceTooLarge { dim: d, ambient });
        }
        dims.sort_unstable();
        Ok(IncidenceBase { ambient, dims })
    }

    /// Parses the structured form `{"ambient": n, "dims": [..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Codimension of the Schubert condition `σ_{n-1-n_i}` of each space.
    pub fn codims(&self) -> Vec<u32> {
        self.dims.iter().map(|&d| self.ambient - 1 - d).collect()
    }

    /// `Σ (n - 1 - n_i)`, the number of conditions imposed on `G(1,n)`.
    pub fn condition_count(&self) -> u64 {
        self.dims
            .iter()
            .map(|&d| u64::from(self.ambient - 1 - d))
            .sum()
    }

    /// `2n - 3`, the number of conditions that cut a curve out of `G(1,n)`.
    pub fn required_conditions(&self) -> u64 {
        2 * u64::from(self.ambient) - 3
    }

    pub fn satisfies_is(&self) -> bool {
        self.condition_count() == self.required_conditions()
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dims.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.dims.len(),
            })
        }
    }

    /// `{P^1, 3 P^2}` style rendering with multiplicities.
    pub fn histogram(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.dims.len() {
            let d = self.dims[i];
            let run = self.dims[i..].iter().take_while(|&&x| x == d).count();
            if run == 1 {
                parts.push(format!("P^{d}"));
            } else {
                parts.push(format!("{run} P^{d}"));
            }
            i += run;
        }
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for IncidenceBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.ambient)?;
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for IncidenceBase {
    type Err = Error;

    /// Accepts `n:d1,d2,...` (whitespace tolerated, empty list allowed).
    fn from_str(s: &str) -> Result<Self> {
        let (ambient, dims) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `n:d1,d2,...`, got `{s}`")))?;
        let ambient: u32 = ambient
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad ambient dimension `{}`", ambient.trim())))?;
        let dims = dims
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad subspace dimension `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        IncidenceBase::new(ambient, dims)
    }
}

/// Result of checking a base against the incidence condition and the
/// general-position reductions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub base: String,
    pub condition_count: u64,
    pub required_conditions: u64,
    pub satisfies_is: bool,
    /// Indices of spaces of dimension `n-1`, which impose nothing.
    pub hyperplanes: Vec<usize>,
    pub no_hyperplanes: bool,
    /// Index pairs with `n_i + n_j < n - 1`.
    pub degenerate_pairs: Vec<(usize, usize)>,
    pub nondegenerate: bool,
    pub all_pass: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: conditions {}/{} ({}), hyperplanes {:?}, degenerate pairs {:?}",
            self.base,
            self.condition_count,
            self.required_conditions,
            if self.satisfies_is { "ok" } else { "fails" },
            self.hyperplanes,
            self.degenerate_pairs
        )
    }
}

pub fn validate(b: &IncidenceBase) -> ValidationReport {
    let n = b.ambient;
    let hyperplanes: Vec<usize> = b
        .dims
        .iter()
        .enumerate()
        .filter(|(_, &d)| d >= n - 1)
        .map(|(i, _)| i)
        .collect();
    let mut degenerate_pairs = Vec::new();
    for i in 0..b.dims.len() {
        for j in i + 1..b.dims.len() {
            if b.dims[i] + b.dims[j] < n - 1 {
                degenerate_pairs.push((i, j));
            }
        }
    }
    let satisfies_is = b.satisfies_is();
    let no_hyperplanes = hyperplanes.is_empty();
    let nondegenerate = degenerate_pairs.is_empty();
    ValidationReport {
        base: b.to_string(),
        condition_count: b.condition_count(),
        required_conditions: b.required_conditions(),
        satisfies_is,
        hyperplanes,
        no_hyperplanes,
        degenerate_pairs,
        nondegenerate,
        all_pass: satisfies_is && no_hyperplanes && nondegenerate,
    }
}

pub(crate) fn require_valid(b: &IncidenceBase) -> Result<()> {
    let report = validate(b);
    if report.all_pass {
        Ok(())
    } else {
        Err(Error::InvalidBase(report))
    }
}

/// Drops hyperplanes and replaces a degenerate pair `n_i + n_j < n - 1` by the
/// span `P^{n_i+n_j+1}` they lie in, until neither step applies.
///
/// Both steps keep `Σ (n-1-n_i) - (2n-3)` fixed.
pub fn normalize(b: &IncidenceBase) -> Result<IncidenceBase> {
    let mut ambient = b.ambient;
    let mut dims = b.dims.clone();
    loop {
        dims.retain(|&d| d < ambient - 1);
        // dims stay sorted, so the first two entries have the smallest sum
        if dims.len() < 2 || dims[0] + dims[1] >= ambient - 1 {
            return IncidenceBase::new(ambient, dims);
        }
        let span = dims[0] + dims[1] + 1;
        if span < 2 {
            return Err(Error::Unrealizable {
                reason: format!("{b} reduces to two points spanning a single line"),
            });
        }
        let drop = ambient - span;
        let mut next = vec![dims[0], dims[1]];
        for &d in &dims[2..] {
            let reduced = d.checked_sub(drop).ok_or_else(|| Error::Unrealizable {
                reason: format!("{b}: a P^{d} misses the span P^{span} of a degenerate pair"),
            })?;
            next.push(reduced);
        }
        next.sort_unstable();
        ambient = span;
        dims = next;
    }
}

/// Number of lines meeting every base space and a general `P^{n-2}`.
pub fn degree(b: &IncidenceBase) -> Result<i64> {
    require_valid(b)?;
    degree_unchecked(b)
}

pub(crate) fn degree_unchecked(b: &IncidenceBase) -> Result<i64> {
    let mut codims = b.codims();
    codims.push(1);
    to_i64(intersection_number(b.ambient, &codims)?)
}

/// Degree of the directrix curve traced on the `k`-th base space: the lines of
/// the scroll meeting a general hyperplane of `P^{n_k}`.
pub fn directrix_degree(b: &IncidenceBase, k: usize) -> Result<i64> {
    require_valid(b)?;
    directrix_degree_unchecked(b, k)
}

pub(crate) fn directrix_degree_unchecked(b: &IncidenceBase, k: usize) -> Result<i64> {
    b.check_index(k)?;
    if b.dims[k] == 0 {
        // the scroll is a cone with vertex this point
        return Ok(0);
    }
    let mut codims = b.codims();
    codims[k] += 1;
    to_i64(intersection_number(b.ambient, &codims)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BundleKind {
    Decomposable,
    Indecomposable,
}

/// The normalized rank-2 bundle `ℰ` with `X = P(ℰ)`; the divisor `𝔢` of `∧²ℰ`
/// is recorded by `-deg 𝔢 = e` and, for elliptic `e = 0`, whether it is trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BundleDescriptor {
    pub kind: BundleKind,
    pub base_genus: u32,
    pub e: i64,
    #[serde(rename = "e_trivial")]
    pub e_divisor_trivial: bool,
}

impl BundleDescriptor {
    pub fn new(kind: BundleKind, base_genus: u32, e: i64, e_divisor_trivial: bool) -> Result<Self> {
        match (kind, base_genus) {
            (BundleKind::Decomposable, 0 | 1) if e >= 0 => {}
            (BundleKind::Indecomposable, 1) if e == -1 || e == 0 => {}
            _ => {
                return Err(Error::InvalidModel(format!(
                    "no {kind:?} normalized bundle with e = {e} over a curve of genus {base_genus}"
                )))
            }
        }
        if e_divisor_trivial && !(base_genus == 1 && e == 0) {
            return Err(Error::InvalidModel(
                "triviality of the determinant divisor is only tracked for elliptic e = 0".into(),
            ));
        }
        Ok(BundleDescriptor {
            kind,
            base_genus,
            e,
            e_divisor_trivial,
        })
    }

    pub fn decomposable(&self) -> bool {
        self.kind == BundleKind::Decomposable
    }
}

impl fmt::Display for BundleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base_genus, self.kind) {
            (0, _) if self.e == 0 => write!(f, "O ⊕ O"),
            (0, _) => write!(f, "O ⊕ O(-{})", self.e),
            (_, BundleKind::Indecomposable) if self.e == -1 => write!(f, "Ext¹(O_C(P), O_C)"),
            (_, BundleKind::Indecomposable) => write!(f, "Ext¹(O_C, O_C)"),
            (_, BundleKind::Decomposable) if self.e == 0 && self.e_divisor_trivial => {
                write!(f, "O_C ⊕ O_C")
            }
            (_, BundleKind::Decomposable) if self.e == 0 => write!(f, "O_C ⊕ O_C(𝔢), 𝔢 ≁ 0"),
            (_, BundleKind::Decomposable) => write!(f, "O_C ⊕ O_C(𝔢), deg 𝔢 = -{}", self.e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScrollInvariants {
    pub degree: i64,
    pub genus: i64,
    pub ambient: u32,
    pub e: i64,
    /// `m = deg 𝔟` for the hyperplane class `C_0 + 𝔟f`.
    pub divisor_degree: i64,
    pub min_directrix_degree: i64,
    /// Dimension of the (first) base space carrying a minimum directrix.
    pub min_directrix_space: u32,
    pub decomposable: bool,
    /// `i` in `n = d - 2g + 1 + i`.
    pub speciality: i64,
    /// Only classified for curves of genus 0 and 1.
    pub bundle: Option<BundleDescriptor>,
}

impl ScrollInvariants {
    /// The ruled surface model for genus 0 and 1 scrolls.
    pub fn model(&self) -> Option<RuledSurfaceModel> {
        let bundle = self.bundle?;
        RuledSurfaceModel::new(
            bundle.base_genus,
            bundle.e,
            bundle.decomposable(),
            bundle.e_divisor_trivial,
            self.divisor_degree,
        )
        .ok()
    }
}

/// Degree, genus and ruled-surface invariants of the scroll of a valid base.
///
/// The genus is computed by degeneration and must agree with
/// `n = d - 2g + 1`; a special scroll is reported as
/// [`Error::SpecialityViolated`].
pub fn invariants(b: &IncidenceBase) -> Result<ScrollInvariants> {
    let inv = invariants_reporting_speciality(b)?;
    if inv.speciality != 0 {
        return Err(Error::SpecialityViolated {
            base: b.to_string(),
            degree: inv.degree,
            genus: inv.genus,
            speciality: inv.speciality,
        });
    }
    Ok(inv)
}

/// As [`invariants`], but a nonzero speciality is returned in the result
/// instead of being an error.
pub fn invariants_reporting_speciality(b: &IncidenceBase) -> Result<ScrollInvariants> {
    require_valid(b)?;
    let n = b.ambient;
    let degree = degree_unchecked(b)?;
    let genus = degeneration::genus_by_degeneration(b)?;
    let speciality = i64::from(n) - degree + 2 * genus - 1;

    let mut min_degree = i64::MAX;
    let mut min_space = 0;
    for k in 0..b.len() {
        let dk = directrix_degree_unchecked(b, k)?;
        if dk < min_degree {
            min_degree = dk;
            min_space = b.dims[k];
        }
    }
    let e = degree - 2 * min_degree;
    let divisor_degree = degree - min_degree;
    let decomposable = b.len() >= 2 && b.dims[0] + b.dims[1] == n - 1;

    let bundle = if (0..=1).contains(&genus) {
        Some(infer_bundle(b, genus, e, decomposable, divisor_degree)?)
    } else {
        None
    };

    Ok(ScrollInvariants {
        degree,
        genus,
        ambient: n,
        e,
        divisor_degree,
        min_directrix_degree: min_degree,
        min_directrix_space: min_space,
        decomposable,
        speciality,
        bundle,
    })
}

fn infer_bundle(
    b: &IncidenceBase,
    genus: i64,
    e: i64,
    decomposable: bool,
    divisor_degree: i64,
) -> Result<BundleDescriptor> {
    let kind = if decomposable {
        BundleKind::Decomposable
    } else {
        BundleKind::Indecomposable
    };
    let base_genus = genus as u32;
    let trivial = if base_genus == 1 && decomposable && e == 0 {
        let model = RuledSurfaceModel::new(1, 0, true, true, divisor_degree)?;
        model
            .predicted_base()
            .map(|predicted| &predicted == b)
            .unwrap_or(false)
    } else {
        false
    };
    BundleDescriptor::new(kind, base_genus, e, trivial).map_err(|err| {
        Error::Inconsistent(format!(
            "{b}: arithmetic invariants fit no ruled surface: {err}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(s: &str) -> IncidenceBase {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let b = base(" 6 : 4,2, 3,3 ,4");
        assert_eq!(b.dims(), &[2, 3, 3, 4, 4]);
        assert_eq!(b.to_string(), "6:2,3,3,4,4");
        assert_eq!(b.histogram(), "{P^2, 2 P^3, 2 P^4}");
        assert_eq!(base("3:").len(), 0);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("4".parse::<IncidenceBase>(), Err(Error::Parse(_))));
        assert!(matches!(
            "x:1".parse::<IncidenceBase>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "4:1,a".parse::<IncidenceBase>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            "4:5".parse::<IncidenceBase>(),
            Err(Error::SubspaceTooLarge { dim: 5, ambient: 4 })
        ));
        assert!(matches!(
            "1:0".parse::<IncidenceBase>(),
            Err(Error::AmbientTooSmall { .. })
        ));
    }

    #[test]
    fn json_form() {
        let b = IncidenceBase::from_json(r#"{"ambient": 4, "dims": [2,2,2,2,2]}"#).unwrap();
        assert_eq!(b, base("4:2,2,2,2,2"));
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"ambient":4,"dims":[2,2,2,2,2]}"#
        );
        assert!(IncidenceBase::from_json(r#"{"ambient": 4, "dims": [9]}"#).is_err());
    }

    #[test]
    fn validate_elliptic_quintic() {
        let r = validate(&base("4:2,2,2,2,2"));
        assert!(r.all_pass);
        assert_eq!(r.condition_count, 5);
    }

    #[test]
    fn validate_too_few_conditions() {
        let r = validate(&base("4:2,2"));
        assert!(!r.satisfies_is);
        assert!(r.nondegenerate);
        assert!(!r.all_pass);
    }

    #[test]
    fn validate_degenerate_pair() {
        let r = validate(&base("4:1,1,2,2"));
        assert_eq!(r.condition_count, 6);
        assert!(!r.satisfies_is);
        assert_eq!(r.degenerate_pairs, vec![(0, 1)]);
    }

    #[test]
    fn validate_hyperplane() {
        let r = validate(&base("4:1,2,2,2,3"));
        assert!(r.satisfies_is);
        assert_eq!(r.hyperplanes, vec![4]);
        assert!(!r.all_pass);
    }

    #[test]
    fn normalize_drops_hyperplane_only() {
        assert_eq!(normalize(&base("6:3,3,3,4,5")).unwrap(), base("6:3,3,3,4"));
    }

    #[test]
    fn normalize_reduces_degenerate_pair() {
        assert_eq!(normalize(&base("6:2,2,3,4,5")).unwrap(), base("5:2,2,2,3"));
    }

    #[test]
    fn normalize_leaves_normal_base() {
        assert_eq!(normalize(&base("4:1,2,2,2")).unwrap(), base("4:1,2,2,2"));
    }

    #[test]
    fn normalize_unrealizable() {
        assert!(matches!(
            normalize(&base("6:0,1,1")),
            Err(Error::Unrealizable { .. })
        ));
        assert!(matches!(
            normalize(&base("5:0,0,3")),
            Err(Error::Unrealizable { .. })
        ));
    }

    #[test]
    fn degrees_of_known_scrolls() {
        assert_eq!(degree(&base("3:1,1,1")).unwrap(), 2);
        assert_eq!(degree(&base("4:2,2,2,2,2")).unwrap(), 5);
        assert_eq!(degree(&base("5:2,2,3,3,3")).unwrap(), 6);
        assert!(matches!(degree(&base("4:2,2")), Err(Error::InvalidBase(_))));
    }

    #[test]
    fn directrix_degrees() {
        assert_eq!(directrix_degree(&base("5:2,2,2,3"), 0).unwrap(), 2);
        assert_eq!(directrix_degree(&base("5:2,2,2,3"), 3).unwrap(), 3);
        assert_eq!(directrix_degree(&base("3:1,1,1"), 0).unwrap(), 1);
        assert!(matches!(
            directrix_degree(&base("3:1,1,1"), 3),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
    }

    #[test]
    fn invariants_of_decomposable_elliptic_septic() {
        let inv = invariants(&base("6:2,3,3,4,4")).unwrap();
        assert_eq!(
            (inv.degree, inv.genus, inv.e, inv.divisor_degree),
            (7, 1, 1, 4)
        );
        assert_eq!(inv.min_directrix_degree, 3);
        assert_eq!(inv.min_directrix_space, 2);
        assert!(inv.decomposable);
        let bundle = inv.bundle.unwrap();
        assert_eq!(bundle.kind, BundleKind::Decomposable);
        assert_eq!(bundle.to_string(), "O_C ⊕ O_C(𝔢), deg 𝔢 = -1");
    }

    #[test]
    fn invariants_of_elliptic_quintic() {
        let inv = invariants(&base("4:2,2,2,2,2")).unwrap();
        assert_eq!(
            (inv.degree, inv.genus, inv.e, inv.divisor_degree),
            (5, 1, -1, 2)
        );
        assert!(!inv.decomposable);
        assert_eq!(inv.bundle.unwrap().kind, BundleKind::Indecomposable);
    }

    #[test]
    fn invariants_of_first_family_at_four() {
        let inv = invariants(&base("7:3,3,4,4,5")).unwrap();
        assert_eq!((inv.degree, inv.genus), (10, 2));
        assert!(inv.bundle.is_none());
    }

    #[test]
    fn trivial_determinant_is_recognised() {
        let inv = invariants(&base("7:3,3,3,5,5")).unwrap();
        assert!(inv.bundle.unwrap().e_divisor_trivial);
        let inv = invariants(&base("5:2,2,3,3,3")).unwrap();
        assert!(!inv.bundle.unwrap().e_divisor_trivial);
    }

    #[test]
    fn special_scroll_is_an_error_not_a_wrong_genus() {
        // seven P^3's in P^5: a linear section curve of G(1,5) with K = H, so g = 8
        let b = base("5:3,3,3,3,3,3,3");
        match invariants(&b) {
            Err(Error::SpecialityViolated {
                degree,
                genus,
                speciality,
                ..
            }) => assert_eq!((degree, genus, speciality), (14, 8, 6)),
            other => panic!("expected speciality error, got {other:?}"),
        }
        let inv = invariants_reporting_speciality(&b).unwrap();
        assert_eq!(inv.speciality, 6);
    }

    #[test]
    fn bundle_descriptor_constraints() {
        assert!(BundleDescriptor::new(BundleKind::Indecomposable, 0, 0, false).is_err());
        assert!(BundleDescriptor::new(BundleKind::Indecomposable, 1, 1, false).is_err());
        assert!(BundleDescriptor::new(BundleKind::Decomposable, 1, -1, false).is_err());
        assert!(BundleDescriptor::new(BundleKind::Decomposable, 1, 1, true).is_err());
        assert!(BundleDescriptor::new(BundleKind::Decomposable, 1, 0, true).is_ok());
    }
}
