//! Ruled surfaces over curves of genus 0 and 1 embedded as scrolls by
//! `H ~ C_0 + 𝔟f`, `m = deg 𝔟`: section counts, very ampleness, and which of
//! them are incidence scrolls.

use std::fmt;

use serde::Serialize;

use crate::base::IncidenceBase;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuledSurfaceModel {
    genus: u32,
    e: i64,
    decomposable: bool,
    e_divisor_trivial: bool,
    /// Coefficient of `C_0`; `1` for scroll divisors.
    a: i64,
    m: i64,
}

impl RuledSurfaceModel {
    /// A scroll divisor `C_0 + 𝔟f` on `P(ℰ)`.
    pub fn new(
        genus: u32,
        e: i64,
        decomposable: bool,
        e_divisor_trivial: bool,
        m: i64,
    ) -> Result<Self> {
        Self::with_divisor(genus, e, decomposable, e_divisor_trivial, 1, m)
    }

    pub fn with_divisor(
        genus: u32,
        e: i64,
        decomposable: bool,
        e_divisor_trivial: bool,
        a: i64,
        m: i64,
    ) -> Result<Self> {
        match genus {
            0 if !decomposable => {
                return Err(Error::InvalidModel(
                    "every rank-2 bundle on P^1 splits".into(),
                ))
            }
            0 if e < 0 => return Err(Error::InvalidModel(format!("e = {e} < 0 on P^1"))),
            1 if !decomposable && !(e == -1 || e == 0) => {
                return Err(Error::InvalidModel(format!(
                    "indecomposable elliptic ruled surfaces have e = -1 or 0, got {e}"
                )))
            }
            1 if decomposable && e < 0 => {
                return Err(Error::InvalidModel(format!(
                    "decomposable normalized bundles have e >= 0, got {e}"
                )))
            }
            0 | 1 => {}
            g => {
                return Err(Error::InvalidModel(format!(
                    "only rational and elliptic bases are modelled, got genus {g}"
                )))
            }
        }
        if e_divisor_trivial && !(genus == 1 && e == 0) {
            return Err(Error::InvalidModel(
                "triviality of 𝔢 is only meaningful for elliptic e = 0".into(),
            ));
        }
        Ok(RuledSurfaceModel {
            genus,
            e,
            decomposable,
            e_divisor_trivial,
            a,
            m,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn decomposable(&self) -> bool {
        self.decomposable
    }

    pub fn e_divisor_trivial(&self) -> bool {
        self.e_divisor_trivial
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    fn g(&self) -> i64 {
        i64::from(self.genus)
    }

    pub fn very_ample(&self) -> Result<bool> {
        very_ample(self)
    }

    pub fn is_incidence(&self) -> Result<bool> {
        is_incidence(self)
    }

    pub fn predicted_base(&self) -> Result<IncidenceBase> {
        predicted_base(self)
    }
}

impl fmt::Display for RuledSurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} e={} ", self.genus, self.e)?;
        if self.genus == 1 {
            write!(
                f,
                "{}{} ",
                if self.decomposable {
                    "decomposable"
                } else {
                    "indecomposable"
                },
                if self.e_divisor_trivial {
                    " 𝔢~0"
                } else {
                    ""
                }
            )?;
        }
        if self.a == 1 {
            write!(f, "H ~ C0 + 𝔟f, deg 𝔟 = {}", self.m)
        } else {
            write!(f, "D ~ {}C0 + 𝔟f, deg 𝔟 = {}", self.a, self.m)
        }
    }
}

/// `h^0(O_X(a C_0 + m f))` on the rational ruled surface `X_e`:
/// `Σ_{j=0..a} max(0, m - j e + 1)`.
pub fn h0_rational(a: i64, m: i64, e: i64) -> Result<i64> {
    if a < 0 || e < 0 {
        return Err(Error::Precondition(format!(
            "h0 on X_e needs a >= 0 and e >= 0, got a = {a}, e = {e}"
        )));
    }
    Ok((0..=a).map(|j| (m - j * e + 1).max(0)).sum())
}

fn h0_elliptic_line_bundle(degree: i64, trivial: bool) -> i64 {
    match degree {
        d if d >= 1 => d,
        0 if trivial => 1,
        _ => 0,
    }
}

/// `h^0(O_X(C_0 + 𝔟f))` on `P(O_C ⊕ O_C(𝔢))` over an elliptic curve, `deg 𝔟 = m`.
///
/// This is `h^0(O_C(𝔟)) + h^0(O_C(𝔟 + 𝔢))`. Only degrees are modelled, so a
/// representative is fixed: `𝔟 = 0` when `m = 0`, `𝔟 = -𝔢` when `m = e ≠ 0`,
/// and a general divisor otherwise. `e_trivial` decides `𝔢 ~ 0` when `e = 0`.
pub fn h0_elliptic_decomposable(m: i64, e: i64, e_trivial: bool) -> i64 {
    let b_trivial = m == 0;
    let b_plus_e_trivial = if e == 0 {
        b_trivial && e_trivial
    } else {
        m == e
    };
    h0_elliptic_line_bundle(m, b_trivial) + h0_elliptic_line_bundle(m - e, b_plus_e_trivial)
}

/// Very ampleness of `a C_0 + 𝔟f`: `a > 0` and `m > a e` on `X_e`, and for an
/// elliptic scroll divisor `m >= e + 3`.
pub fn very_ample(model: &RuledSurfaceModel) -> Result<bool> {
    match model.genus {
        0 => Ok(model.a > 0 && model.m > model.a * model.e),
        _ if model.a != 1 => Err(Error::Precondition(
            "very ampleness on elliptic ruled surfaces is only decided for C0 + 𝔟f".into(),
        )),
        _ => Ok(model.m >= model.e + 3),
    }
}

fn require_scroll(model: &RuledSurfaceModel) -> Result<()> {
    if model.a != 1 {
        return Err(Error::Precondition(format!(
            "{model} does not embed X as a scroll (a ≠ 1)"
        )));
    }
    if !very_ample(model)? {
        return Err(Error::Precondition(format!("{model} is not very ample")));
    }
    Ok(())
}

/// Degree and ambient dimension `(2m - e, 2(m - g) - e + 1)` of the scroll.
pub fn embedding_invariants(model: &RuledSurfaceModel) -> Result<(i64, i64)> {
    require_scroll(model)?;
    let (m, e) = (model.m, model.e);
    Ok((2 * m - e, 2 * (m - model.g()) - e + 1))
}

/// Which clause of the classification a model satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IncidenceClause {
    /// Rational, `m = e + 1`: a line is the minimum directrix.
    RationalLineDirectrix,
    /// Rational, `e = 0`.
    RationalBalanced,
    /// Rational, `e = 1`.
    RationalNearlyBalanced,
    /// Elliptic, indecomposable, `e = -1`, `m = 2`.
    EllipticIndecomposable,
    /// Elliptic, `𝔢 ~ 0`, `m = 4`.
    EllipticTrivialDeterminant,
    /// Elliptic, decomposable, `0 <= e <= 3`, `m = e + 3`.
    EllipticDecomposable,
}

/// All clauses the model satisfies, in a fixed order.
pub fn incidence_clauses(model: &RuledSurfaceModel) -> Result<Vec<IncidenceClause>> {
    require_scroll(model)?;
    let (e, m) = (model.e, model.m);
    let mut out = Vec::new();
    if model.genus == 0 {
        if m == e + 1 {
            out.push(IncidenceClause::RationalLineDirectrix);
        }
        if e == 0 {
            out.push(IncidenceClause::RationalBalanced);
        }
        if e == 1 {
            out.push(IncidenceClause::RationalNearlyBalanced);
        }
    } else {
        if !model.decomposable && e == -1 && m == 2 {
            out.push(IncidenceClause::EllipticIndecomposable);
        }
        if model.decomposable && e == 0 && model.e_divisor_trivial && m == 4 {
            out.push(IncidenceClause::EllipticTrivialDeterminant);
        }
        if model.decomposable
            && (0..=3).contains(&e)
            && m == e + 3
            && !(e == 0 && model.e_divisor_trivial)
        {
            out.push(IncidenceClause::EllipticDecomposable);
        }
    }
    Ok(out)
}

/// Section-count criterion for rational scrolls with `e >= 1`:
/// `m h^0(C_0) + (m - e) h^0(C_0 + e f) = 2(2m - e + 1) - 3`.
pub fn rational_section_count_criterion(m: i64, e: i64) -> Result<(i64, i64, bool)> {
    let lhs = m * h0_rational(1, 0, e)? + (m - e) * h0_rational(1, e, e)?;
    let rhs = 2 * (2 * m - e + 1) - 3;
    Ok((lhs, rhs, lhs == rhs))
}

/// Whether the scroll is swept by the lines meeting a general-position base.
///
/// For rational surfaces with `e >= 1` the clause test is cross-checked
/// against [`rational_section_count_criterion`].
pub fn is_incidence(model: &RuledSurfaceModel) -> Result<bool> {
    let by_clauses = !incidence_clauses(model)?.is_empty();
    if model.genus == 0 && model.e >= 1 {
        let (lhs, rhs, by_sections) = rational_section_count_criterion(model.m, model.e)?;
        if by_sections != by_clauses {
            return Err(Error::Inconsistent(format!(
                "{model}: classification says {by_clauses}, section count {lhs} vs {rhs}"
            )));
        }
    }
    Ok(by_clauses)
}

fn base_from_parts(ambient: i64, parts: &[(i64, i64)]) -> Result<IncidenceBase> {
    let ambient = u32::try_from(ambient).map_err(|_| Error::Overflow)?;
    let mut dims = Vec::new();
    for &(count, dim) in parts {
        let dim = u32::try_from(dim)
            .map_err(|_| Error::Precondition(format!("negative subspace dimension {dim}")))?;
        dims.extend(std::iter::repeat_n(dim, count.max(0) as usize));
    }
    crate::base::normalize(&IncidenceBase::new(ambient, dims)?)
}

/// The base of an incidence scroll, normalized (the rational `e = 0`,
/// `m = 1` pattern contains a hyperplane of `P^3`).
pub fn predicted_base(model: &RuledSurfaceModel) -> Result<IncidenceBase> {
    let clauses = incidence_clauses(model)?;
    let Some(&clause) = clauses.first() else {
        return Err(Error::Precondition(format!(
            "{model} is not an incidence scroll"
        )));
    };
    predicted_base_for(model, clause)
}

/// The base predicted by one particular clause.
pub fn predicted_base_for(
    model: &RuledSurfaceModel,
    clause: IncidenceClause,
) -> Result<IncidenceBase> {
    if !incidence_clauses(model)?.contains(&clause) {
        return Err(Error::Precondition(format!(
            "{model} does not satisfy {clause:?}"
        )));
    }
    let (e, m) = (model.e, model.m);
    match clause {
        IncidenceClause::RationalLineDirectrix => {
            let n = e + 3;
            base_from_parts(n, &[(1, 1), (e + 2, n - 2)])
        }
        IncidenceClause::RationalBalanced => base_from_parts(2 * m + 1, &[(3, m), (1, m + 1)]),
        IncidenceClause::RationalNearlyBalanced => base_from_parts(2 * m, &[(1, m - 1), (3, m)]),
        IncidenceClause::EllipticIndecomposable => base_from_parts(4, &[(5, 2)]),
        IncidenceClause::EllipticTrivialDeterminant => base_from_parts(7, &[(3, 3), (2, 5)]),
        IncidenceClause::EllipticDecomposable => {
            base_from_parts(2 * m - e - 1, &[(1, 2), (e + 1, e + 2), (3 - e, e + 3)])
        }
    }
}

/// A lower bound on how many spaces of a given dimension a base must contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaseRequirement {
    pub dim: i64,
    pub min_count: i64,
}

/// Spaces forced into the base of a decomposable incidence scroll by its
/// directrix curves, with both speciality indices taken as zero.
pub fn base_structure_constraints(model: &RuledSurfaceModel) -> Result<Vec<BaseRequirement>> {
    if !model.decomposable {
        return Err(Error::Precondition(
            "base constraints are derived for decomposable scrolls".into(),
        ));
    }
    let (g, e, m) = (model.g(), model.e, model.m);
    let (i1, i2) = (0, 0);
    let small = m - e - g + i1;
    let large = m - g + i2;
    let trivial = model.e_divisor_trivial || (model.genus == 0 && e == 0);
    let mut reqs: Vec<BaseRequirement> = Vec::new();
    let mut push = |dim: i64, count: i64| {
        if let Some(r) = reqs.iter_mut().find(|r| r.dim == dim) {
            r.min_count += count;
        } else {
            reqs.push(BaseRequirement {
                dim,
                min_count: count,
            });
        }
    };
    if trivial {
        // e = 0, so both directrix spans have the same dimension
        push(small, 3);
    } else {
        push(small, 1);
        let copies = e + 2 - g;
        let feasible = large + copies * small <= 4 * m - 2 * e - 4 * g - 1 + 2 * (i1 + i2);
        push(large, if feasible { copies } else { 1 });
    }
    Ok(reqs)
}

/// Whether a base meets every requirement.
pub fn satisfies_constraints(b: &IncidenceBase, reqs: &[BaseRequirement]) -> bool {
    reqs.iter().all(|r| {
        let have = b.dims().iter().filter(|&&d| i64::from(d) == r.dim).count() as i64;
        have >= r.min_count
    })
}

/// How many minimum-degree directrix curves a scroll carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectrixCount {
    Finite(u32),
    /// A one-parameter family.
    OneParameter,
}

impl fmt::Display for DirectrixCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectrixCount::Finite(k) => write!(f, "{k}"),
            DirectrixCount::OneParameter => write!(f, "∞¹"),
        }
    }
}

impl Serialize for DirectrixCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DirectrixCount::Finite(k) => s.serialize_u32(*k),
            DirectrixCount::OneParameter => s.serialize_str("∞¹"),
        }
    }
}

/// Minimum directrices are the curves in `|C_0|` and, on the elliptic
/// `e = 0`, `𝔢 ≁ 0` surface, also `C_0 - 𝔢f`; the indecomposable `e = -1`
/// surface has a one-parameter family of non-equivalent sections `C_0`.
pub fn min_directrix_count(model: &RuledSurfaceModel) -> Result<DirectrixCount> {
    let h0 = match (model.genus, model.decomposable) {
        (0, _) => h0_rational(1, 0, model.e)?,
        (_, true) => h0_elliptic_decomposable(0, model.e, model.e_divisor_trivial),
        (_, false) => return Ok(DirectrixCount::OneParameter),
    };
    Ok(match h0 {
        0 => {
            return Err(Error::Inconsistent(format!(
                "{model}: the normalized section C0 has no sections"
            )))
        }
        1 if model.genus == 1 && model.e == 0 => DirectrixCount::Finite(2),
        1 => DirectrixCount::Finite(1),
        _ => DirectrixCount::OneParameter,
    })
}
