//! Independent evaluation of top-degree products of special classes in `G(1,n)`.
//!
//! The cohomology of `G(1,n)` is generated by `σ_c = h_c(x,y)`, the complete
//! homogeneous symmetric polynomial in two variables, and the degree of a
//! top-degree product is the coefficient of `x^n y^(n-1)` in
//! `(x - y) · ∏ h_{c_i}(x,y)`. No Pieri expansion is involved.

use crate::error::{Error, Result};
use crate::schubert::check_top_degree;

/// A homogeneous polynomial in `x, y`; `coeffs[i]` multiplies `x^i y^(deg - i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Homogeneous {
    coeffs: Vec<i128>,
}

impl Homogeneous {
    fn complete(c: u32) -> Self {
        Homogeneous {
            coeffs: vec![1; c as usize + 1],
        }
    }

    fn x_minus_y() -> Self {
        Homogeneous {
            coeffs: vec![-1, 1],
        }
    }

    fn mul(&self, other: &Homogeneous) -> Result<Homogeneous> {
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &p) in self.coeffs.iter().enumerate() {
            if p == 0 {
                continue;
            }
            for (j, &q) in other.coeffs.iter().enumerate() {
                let term = p.checked_mul(q).ok_or(Error::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(Homogeneous { coeffs: out })
    }
}

/// Degree of `∏ σ_{c_i}` in `G(1,n)` via the bialternant formula.
pub fn oracle_intersection_number(ambient: u32, codims: &[u32]) -> Result<u128> {
    check_top_degree(ambient, codims)?;
    let mut poly = Homogeneous::x_minus_y();
    for &c in codims {
        poly = poly.mul(&Homogeneous::complete(c))?;
    }
    let value = poly.coeffs[ambient as usize];
    u128::try_from(value)
        .map_err(|_| Error::Inconsistent(format!("negative bialternant coefficient {value}")))
}
