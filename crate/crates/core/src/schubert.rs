//! Schubert calculus on the Grassmannian of lines `G(1,n)`.
//!
//! A Schubert class of `G(1,n)` is indexed by a partition `(a,b)` fitting in a
//! `2 x (n-1)` box. The special class `σ_c = σ_(c,0)` is the class of lines
//! meeting a fixed linear subspace of dimension `n-1-c`, so a base space
//! `P^r ⊂ P^n` imposes `σ_(n-1-r)`. Products are expanded with the Pieri rule
//! and coefficients are kept as checked `u128`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// The class `σ_(a,b)` with `a >= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchubertClass {
    a: u32,
    b: u32,
}

impl SchubertClass {
    /// Builds `σ_(a,b)` in `G(1,ambient)`; the rows are sorted so that `a >= b`.
    pub fn new(a: u32, b: u32, ambient: u32) -> Result<Self> {
        check_ambient(ambient)?;
        let (a, b) = if a >= b { (a, b) } else { (b, a) };
        if a > ambient - 1 {
            return Err(Error::ClassOutsideBox { a, b, ambient });
        }
        Ok(SchubertClass { a, b })
    }

    /// The special class `σ_c`.
    pub fn special(c: u32, ambient: u32) -> Result<Self> {
        Self::new(c, 0, ambient)
    }

    /// The fundamental class `σ_(0,0)`.
    pub const fn fundamental() -> Self {
        SchubertClass { a: 0, b: 0 }
    }

    /// The class of a point, `σ_(n-1,n-1)`.
    pub fn point(ambient: u32) -> Result<Self> {
        check_ambient(ambient)?;
        Ok(SchubertClass {
            a: ambient - 1,
            b: ambient - 1,
        })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn codimension(&self) -> u32 {
        self.a + self.b
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ({},{})", self.a, self.b)
    }
}

/// Dimension of `G(1,n)`.
pub fn grassmannian_dimension(ambient: u32) -> u32 {
    2 * ambient.saturating_sub(1)
}

fn check_ambient(ambient: u32) -> Result<()> {
    if ambient == 0 {
        Err(Error::AmbientTooSmall { ambient })
    } else {
        Ok(())
    }
}

/// A finite nonnegative integer combination of Schubert classes of `G(1,n)`.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSum {
    ambient: u32,
    terms: BTreeMap<SchubertClass, u128>,
}

impl CycleSum {
    /// The unit `1 · σ_(0,0)`.
    pub fn identity(ambient: u32) -> Result<Self> {
        Self::from_class(SchubertClass::fundamental(), 1, ambient)
    }

    pub fn zero(ambient: u32) -> Result<Self> {
        check_ambient(ambient)?;
        Ok(CycleSum {
            ambient,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_class(class: SchubertClass, coefficient: u128, ambient: u32) -> Result<Self> {
        let class = SchubertClass::new(class.a, class.b, ambient)?;
        let mut sum = Self::zero(ambient)?;
        if coefficient != 0 {
            sum.terms.insert(class, coefficient);
        }
        Ok(sum)
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, class: SchubertClass) -> u128 {
        self.terms.get(&class).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (SchubertClass, u128)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common codimension of all terms, `None` for the zero cycle.
    pub fn codimension(&self) -> Option<u32> {
        self.terms.keys().next().map(SchubertClass::codimension)
    }

    /// Degree of the top-dimensional part: the coefficient of the point class.
    pub fn degree(&self) -> u128 {
        SchubertClass::point(self.ambient)
            .map(|p| self.coefficient(p))
            .unwrap_or(0)
    }

    pub fn checked_add(&self, other: &CycleSum) -> Result<CycleSum> {
        if self.ambient != other.ambient {
            return Err(Error::ContextMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        let mut out = self.clone();
        for (class, coeff) in other.terms() {
            out.accumulate(class, coeff)?;
        }
        Ok(out)
    }

    fn accumulate(&mut self, class: SchubertClass, coeff: u128) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(class).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(Error::Overflow)?;
        Ok(())
    }
}

impl fmt::Display for CycleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (class, coeff)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *coeff == 1 {
                write!(f, "{class}")?;
            } else {
                write!(f, "{coeff}·{class}")?;
            }
        }
        Ok(())
    }
}

/// Multiplies `s` by the special class `σ_c` using the Pieri rule:
/// `σ_(a,b) · σ_c = Σ σ_(a',b')` over `a' + b' = a + b + c`,
/// `a <= a' <= n-1`, `b <= b' <= a`.
pub fn pieri_multiply(s: &CycleSum, c: u32) -> Result<CycleSum> {
    let ambient = s.ambient;
    let width = ambient - 1;
    if c > width {
        return Err(Error::CodimOutOfRange { codim: c, ambient });
    }
    let mut out = CycleSum::zero(ambient)?;
    for (class, coeff) in s.terms() {
        let total = class.a + class.b + c;
        for a2 in class.a..=width {
            let Some(b2) = total.checked_sub(a2) else {
                break;
            };
            if b2 < class.b {
                break;
            }
            if b2 > class.a {
                continue;
            }
            out.accumulate(SchubertClass { a: a2, b: b2 }, coeff)?;
        }
    }
    Ok(out)
}

/// The product `σ_{c_1} ⋯ σ_{c_k}` in `G(1,n)`.
///
/// Factors are applied in descending order; the result does not depend on it.
pub fn special_product(ambient: u32, codims: &[u32]) -> Result<CycleSum> {
    check_ambient(ambient)?;
    for &c in codims {
        if c > ambient - 1 {
            return Err(Error::CodimOutOfRange { codim: c, ambient });
        }
    }
    let mut order = codims.to_vec();
    order.sort_unstable_by(|x, y| y.cmp(x));
    let mut acc = CycleSum::identity(ambient)?;
    for c in order {
        if c == 0 {
            continue;
        }
        acc = pieri_multiply(&acc, c)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Checks that `codims` is a top-degree product in `G(1,n)`.
pub(crate) fn check_top_degree(ambient: u32, codims: &[u32]) -> Result<()> {
    check_ambient(ambient)?;
    let expected = grassmannian_dimension(ambient);
    let actual = codims
        .iter()
        .try_fold(0u32, |acc, &c| acc.checked_add(c))
        .ok_or(Error::Overflow)?;
    if actual != expected {
        return Err(Error::DimensionMismatch {
            ambient,
            expected,
            actual,
        });
    }
    for &c in codims {
        if c > ambient - 1 {
            return Err(Error::CodimOutOfRange { codim: c, ambient });
        }
    }
    Ok(())
}

/// Number of lines in `P^n` meeting general linear subspaces of codimensions
/// `c_i + 1`, i.e. the degree of `∏ σ_{c_i}` in `G(1,n)`.
///
/// The codimensions must add up to `dim G(1,n) = 2n-2`.
pub fn intersection_number(ambient: u32, codims: &[u32]) -> Result<u128> {
    check_top_degree(ambient, codims)?;
    Ok(special_product(ambient, codims)?.degree())
}

/// `G(l,n)`, used only for the expected dimension of a special Schubert intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannContext {
    l: u32,
    n: u32,
}

impl GrassmannContext {
    pub fn new(l: u32, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::AmbientTooSmall { ambient: n });
        }
        if l >= n {
            return Err(Error::SubspaceTooLarge { dim: l, ambient: n });
        }
        Ok(GrassmannContext { l, n })
    }

    pub fn lines(n: u32) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dimension(&self) -> i64 {
        i64::from(self.l + 1) * i64::from(self.n - self.l)
    }
}

/// `(l+1)(n-l) - Σ (n - n_j - 1)`: the dimension of the locus of `l`-planes
/// meeting general subspaces `P^{n_j}`. Negative values mean the locus is empty.
pub fn expected_dimension(ctx: GrassmannContext, dims: &[u32]) -> Result<i64> {
    let mut value = ctx.dimension();
    for &d in dims {
        if d > ctx.n - 1 {
            return Err(Error::SubspaceTooLarge {
                dim: d,
                ambient: ctx.n,
            });
        }
        value -= i64::from(ctx.n - d - 1);
    }
    Ok(value)
}
