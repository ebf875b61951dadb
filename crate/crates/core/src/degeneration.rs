//! Join and separate: specializing two base spaces into a common hyperplane
//! splits the scroll in two, and degree and genus can be read off the pieces.

use std::collections::{BTreeSet, HashMap};

use crate::base::{self, IncidenceBase};
use crate::error::{to_i64, Error, Result};
use crate::schubert::intersection_number;

/// One side of a join, after normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// `None` for the plane of lines through `P^0` when the pair meets in a point.
    pub base: Option<IncidenceBase>,
    pub degree: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationSplit {
    pub pair: (usize, usize),
    /// Dimension of `P^{n_i} ∩ P^{n_j}` once both lie in a hyperplane.
    pub m: u32,
    /// Lines through `P^m` meeting the other spaces, in `P^n` (not normalized).
    pub beta_dot: IncidenceBase,
    /// Lines inside the hyperplane, in `P^{n-1}` (not normalized).
    pub beta_ddot: IncidenceBase,
    /// Generators common to both components.
    pub kappa: i64,
    pub first: Component,
    pub second: Component,
}

impl DegenerationSplit {
    pub fn degree(&self) -> i64 {
        self.first.degree + self.second.degree
    }

    pub fn genus(&self) -> i64 {
        self.first.genus + self.second.genus + self.kappa - 1
    }

    /// Checks `g = g_1 + g_2 + κ - 1` against a genus obtained elsewhere.
    pub fn check_genus(&self, genus: i64) -> Result<()> {
        if self.genus() == genus {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!(
                "join of {} gives genus {} + {} + {} - 1 = {}, expected {genus}",
                self.beta_ddot,
                self.first.genus,
                self.second.genus,
                self.kappa,
                self.genus()
            )))
        }
    }
}

fn component(b: &IncidenceBase) -> Result<Component> {
    let normal = base::normalize(b)?;
    if !normal.satisfies_is() {
        return Err(Error::Inconsistent(format!(
            "component {b} normalizes to {normal}, which does not cut a curve"
        )));
    }
    let degree = base::degree(&normal)?;
    let genus = genus_by_degeneration(&normal)?;
    Ok(Component {
        base: Some(normal),
        degree,
        genus,
    })
}

struct PairData {
    m: u32,
    beta_dot: IncidenceBase,
    beta_ddot: IncidenceBase,
    kappa: i64,
}

fn pair_data(b: &IncidenceBase, i: usize, j: usize) -> Result<PairData> {
    b.check_index(i)?;
    b.check_index(j)?;
    if i == j {
        return Err(Error::Precondition(
            "join needs two distinct base spaces".into(),
        ));
    }
    let n = b.ambient();
    let dims = b.dims();
    let (ni, nj) = (dims[i], dims[j]);
    let m = (ni + nj + 1).checked_sub(n).ok_or_else(|| {
        Error::Precondition(format!(
            "P^{ni} and P^{nj} cannot meet inside a hyperplane of P^{n}"
        ))
    })?;
    let rest: Vec<u32> = dims
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, &d)| d)
        .collect();

    let mut dot = vec![m];
    dot.extend(&rest);
    let beta_dot = IncidenceBase::new(n, dot)?;

    let mut ddot = vec![ni, nj];
    for &d in &rest {
        let lowered = d.checked_sub(1).ok_or_else(|| {
            Error::Precondition(format!("a P^0 of {b} cannot be moved into the hyperplane"))
        })?;
        ddot.push(lowered);
    }
    let beta_ddot = IncidenceBase::new(n - 1, ddot)?;

    for side in [&beta_dot, &beta_ddot] {
        if !side.satisfies_is() {
            return Err(Error::Inconsistent(format!(
                "join of {b} at ({i},{j}) produced {side}, which does not cut a curve"
            )));
        }
    }

    // lines of the hyperplane through P^m meeting each P^{n_k - 1}
    let mut codims = vec![n - 2 - m];
    codims.extend(rest.iter().map(|&d| n - 1 - d));
    let kappa = to_i64(intersection_number(n - 1, &codims)?)?;

    Ok(PairData {
        m,
        beta_dot,
        beta_ddot,
        kappa,
    })
}

/// Specializes the `i`-th and `j`-th spaces into a hyperplane.
pub fn join(b: &IncidenceBase, i: usize, j: usize) -> Result<DegenerationSplit> {
    base::require_valid(b)?;
    let data = pair_data(b, i, j)?;
    let first = if data.m == 0 {
        Component {
            base: None,
            degree: 1,
            genus: 0,
        }
    } else {
        component(&data.beta_dot)?
    };
    let second = component(&data.beta_ddot)?;
    let split = DegenerationSplit {
        pair: (i, j),
        m: data.m,
        beta_dot: data.beta_dot,
        beta_ddot: data.beta_ddot,
        kappa: data.kappa,
        first,
        second,
    };
    let d = base::degree(b)?;
    if split.degree() != d {
        return Err(Error::Inconsistent(format!(
            "{b} has degree {d} but its join at ({i},{j}) has degrees {} + {}",
            split.first.degree, split.second.degree
        )));
    }
    Ok(split)
}

/// Which space a separated `P^{n_i}` is pulled away from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partner {
    Index(usize),
    /// A hyperplane `P^{n-1}` is added to the base first; it imposes nothing.
    AddedHyperplane,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    /// The new base in `P^{n+1}`.
    pub base: IncidenceBase,
    /// Positions of the separated pair in `base`; joining them undoes the separation.
    pub pair: (usize, usize),
}

/// Inverse of an `m = 0` join: `P^{n_i}` and `P^{n_j}` with `n_i + n_j = n`
/// are kept and every other space is raised by one dimension in `P^{n+1}`.
pub fn separate(b: &IncidenceBase, i: usize, partner: Partner) -> Result<Separation> {
    b.check_index(i)?;
    let n = b.ambient();
    let ni = b.dims()[i];
    let (nj, rest): (u32, Vec<u32>) = match partner {
        Partner::Index(j) => {
            b.check_index(j)?;
            if i == j {
                return Err(Error::Precondition(
                    "separate needs two distinct base spaces".into(),
                ));
            }
            let rest = b
                .dims()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, &d)| d)
                .collect();
            (b.dims()[j], rest)
        }
        Partner::AddedHyperplane => {
            let rest = b
                .dims()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &d)| d)
                .collect();
            (n - 1, rest)
        }
    };
    if ni + nj != n {
        return Err(Error::Precondition(format!(
            "separate needs a pair meeting in a point (n_i + n_j = {n}), got P^{ni} and P^{nj}"
        )));
    }
    let mut dims = vec![ni, nj];
    dims.extend(rest.iter().map(|&d| d + 1));
    let separated = IncidenceBase::new(n + 1, dims)?;

    let excess = |x: &IncidenceBase| x.condition_count() as i64 - x.required_conditions() as i64;
    if excess(&separated) != excess(b) {
        return Err(Error::Inconsistent(format!(
            "separating {b} changed the condition count ({separated})"
        )));
    }

    let pi = separated
        .dims()
        .iter()
        .position(|&d| d == ni)
        .expect("separated base keeps P^{n_i}");
    let pj = separated
        .dims()
        .iter()
        .enumerate()
        .position(|(k, &d)| k != pi && d == nj)
        .expect("separated base keeps P^{n_j}");
    let pair = if pi < pj { (pi, pj) } else { (pj, pi) };
    Ok(Separation {
        base: separated,
        pair,
    })
}

/// Genus of the scroll by repeatedly joining the two smallest base spaces.
///
/// Scrolls of degree at most two are rational.
pub fn genus_by_degeneration(b: &IncidenceBase) -> Result<i64> {
    base::require_valid(b)?;
    if base::degree(b)? <= 2 {
        return Ok(0);
    }
    Ok(join(b, 0, 1)?.genus())
}

/// Every genus reachable by joining any pair at every level of the recursion.
///
/// A single element means the result does not depend on the pairs chosen.
pub fn genus_over_all_pair_choices(b: &IncidenceBase) -> Result<BTreeSet<i64>> {
    let mut memo = HashMap::new();
    genus_spectrum(b, &mut memo)
}

fn genus_spectrum(
    b: &IncidenceBase,
    memo: &mut HashMap<IncidenceBase, BTreeSet<i64>>,
) -> Result<BTreeSet<i64>> {
    if let Some(hit) = memo.get(b) {
        return Ok(hit.clone());
    }
    base::require_valid(b)?;
    let mut out = BTreeSet::new();
    if base::degree(b)? <= 2 {
        out.insert(0);
        memo.insert(b.clone(), out.clone());
        return Ok(out);
    }
    let dims = b.dims();
    let mut seen = BTreeSet::new();
    for i in 0..dims.len() {
        for j in i + 1..dims.len() {
            if !seen.insert((dims[i], dims[j])) {
                continue;
            }
            let data = pair_data(b, i, j)?;
            let first = if data.m == 0 {
                BTreeSet::from([0])
            } else {
                genus_spectrum(&base::normalize(&data.beta_dot)?, memo)?
            };
            let second = genus_spectrum(&base::normalize(&data.beta_ddot)?, memo)?;
            for g1 in &first {
                for g2 in &second {
                    out.insert(g1 + g2 + data.kappa - 1);
                }
            }
        }
    }
    memo.insert(b.clone(), out.clone());
    Ok(out)
}
