use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Poly;

/// A polynomial in `τ` with coefficients in `Q[y]`, kept in the form
/// `τ^m (P_0 + P_1 τ + P_2 τ² + …)` with `P_0 ≠ 0`.
///
/// The zero object has no coefficients. Trailing zero coefficients are
/// stripped, so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TauPoly {
    m: usize,
    coeffs: Vec<Poly>,
}

/// Builds a [`TauPoly`] from the coefficient list of `τ^0, τ^1, …`.
pub fn tau_normalize(raw: Vec<Poly>) -> TauPoly {
    TauPoly::from_raw(raw)
}

impl TauPoly {
    pub fn from_raw(mut raw: Vec<Poly>) -> Self {
        while raw.last().is_some_and(Zero::is_zero) {
            raw.pop();
        }
        let Some(m) = raw.iter().position(|c| !c.is_zero()) else {
            return TauPoly::default();
        };
        raw.drain(..m);
        TauPoly { m, coeffs: raw }
    }

    pub fn constant(p: Poly) -> Self {
        Self::from_raw(vec![p])
    }

    /// `τ · p`.
    pub fn tau_times(p: Poly) -> Self {
        Self::from_raw(vec![Poly::zero(), p])
    }

    /// Lower degree `m`; `None` for zero.
    pub fn lower_degree(&self) -> Option<usize> {
        (!self.coeffs.is_empty()).then_some(self.m)
    }

    /// `P_μ`, the coefficient of `τ^{m+μ}`; zero past the end.
    pub fn coeff(&self, mu: usize) -> Poly {
        self.coeffs.get(mu).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `τ^k`.
    pub fn raw_coeff(&self, k: usize) -> Poly {
        k.checked_sub(self.m).map_or_else(Poly::zero, |mu| self.coeff(mu))
    }

    fn raw(&self) -> Vec<Poly> {
        let mut v = vec![Poly::zero(); self.m];
        v.extend(self.coeffs.iter().cloned());
        v
    }
}

impl Zero for TauPoly {
    fn zero() -> Self {
        TauPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for TauPoly {
    fn one() -> Self {
        TauPoly::constant(Poly::one())
    }
}

impl Add for TauPoly {
    type Output = TauPoly;

    fn add(self, rhs: TauPoly) -> TauPoly {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (mut a, b) = (self.raw(), rhs.raw());
        if a.len() < b.len() {
            a.resize(b.len(), Poly::zero());
        }
        for (k, c) in b.into_iter().enumerate() {
            a[k] = &a[k] + &c;
        }
        TauPoly::from_raw(a)
    }
}

impl Neg for TauPoly {
    type Output = TauPoly;

    fn neg(self) -> TauPoly {
        TauPoly {
            m: self.m,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for TauPoly {
    type Output = TauPoly;

    fn sub(self, rhs: TauPoly) -> TauPoly {
        self + (-rhs)
    }
}

impl Mul for TauPoly {
    type Output = TauPoly;

    fn mul(self, rhs: TauPoly) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (x, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (y, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[x + y] = &out[x + y] + &(a * b);
                }
            }
        }
        let mut raw = vec![Poly::zero(); self.m + rhs.m];
        raw.extend(out);
        TauPoly::from_raw(raw)
    }
}

impl fmt::Display for TauPoly {
    /// `t^m * (P0 + P1*t + …)`, with `t` standing for `τ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "t^{} * (", self.m)?;
        let mut first = true;
        for (mu, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match mu {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{mu}")?,
            }
        }
        write!(f, ")")
    }
}
