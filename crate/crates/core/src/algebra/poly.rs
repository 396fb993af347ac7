//! Sparse multivariate polynomials over `Q` in the coordinates `y_{it}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{mul_mod, Domain, Fp, Scalar};
use super::AlgebraError;
use crate::involution::Root;

/// Coordinate `y_{it}` on `n*`, indexed by the root `ε_t − ε_i`.
pub type Variable = Root;

/// Product of variables with positive exponents, stored sorted by `(t, i)`.
///
/// Monomials are ordered by total degree, then lexicographically with the
/// variable of largest `(t, i)` most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                Ordering::Equal => {
                    out.push((a[x].0, a[x].1 + b[y].1));
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.0.iter().rev();
            let mut b = other.0.iter().rev();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        let ord = va.cmp(&vb).then(ea.cmp(&eb));
                        if ord != Ordering::Equal {
                            return ord;
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Variables largest first, e.g. `y[7,4]*y[4,1]^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.0.iter().rev().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "y[{},{}]", v.i, v.j)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial with exact rational coefficients; zero coefficients are never
/// stored, so equal polynomials compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn var(v: Variable) -> Self {
        Self::term(BigRational::one(), Monomial::var(v))
    }

    /// `y_{row,col}`.
    pub fn y(row: usize, col: usize) -> Self {
        Self::var(Root::at(row, col))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// `±self`, whichever has a positive leading coefficient.
    pub fn sign_normalized(&self) -> Poly {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Substitutes scalar values for every variable; the scalar domain is
    /// taken from the values supplied (rational when `point` is empty).
    pub fn eval(&self, point: &BTreeMap<Variable, Scalar>) -> Result<Scalar, AlgebraError> {
        let mut domains = point.values().map(Scalar::domain);
        let domain = domains.next().unwrap_or(Domain::Rational);
        if domains.any(|d| d != domain) {
            return Err(AlgebraError::MixedDomains);
        }
        self.eval_in(domain, |v| point.get(&v).cloned())
    }

    pub fn eval_in(
        &self,
        domain: Domain,
        value: impl Fn(Variable) -> Option<Scalar>,
    ) -> Result<Scalar, AlgebraError> {
        let mut acc = Scalar::zero_in(domain);
        for (m, c) in &self.terms {
            let mut t = Scalar::from_rational_in(c, domain)?;
            for &(v, e) in &m.0 {
                let x = value(v).ok_or(AlgebraError::MissingAssignment(v))?;
                t = t.mul(&x.pow(e))?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Compiles the polynomial for fast repeated evaluation over `F_p`;
    /// `slot` maps each variable to its index in the coordinate slice.
    pub fn compile_fp(&self, p: u32, slot: impl Fn(Variable) -> usize) -> Result<FpPoly, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let coeff = Fp::from_rational(c, p)?.value();
                let factors = m.0.iter().map(|&(v, e)| (slot(v), e)).collect();
                Ok((coeff, factors))
            })
            .filter(|r: &Result<(u32, Vec<(usize, u32)>), AlgebraError>| {
                !matches!(r, Ok((0, _)))
            })
            .collect::<Result<_, _>>()?;
        Ok(FpPoly { p, terms })
    }
}

/// A polynomial reduced modulo `p`, addressing variables by slot index.
#[derive(Debug, Clone)]
pub struct FpPoly {
    p: u32,
    terms: Vec<(u32, Vec<(usize, u32)>)>,
}

impl FpPoly {
    pub fn eval(&self, coords: &[u8]) -> u32 {
        let p = self.p;
        let mut acc = 0u64;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(slot, e) in factors {
                let x = u32::from(coords[slot]);
                for _ in 0..e {
                    t = mul_mod(t, x, p);
                }
                if t == 0 {
                    break;
                }
            }
            acc += u64::from(t);
        }
        (acc % u64::from(p)) as u32
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::int(1)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Terms from the largest monomial down, e.g.
    /// `y[7,4]*y[4,1] + y[7,3]*y[3,1] - 2*y[2,1]^2 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = AlgebraError;

    /// Parses the format produced by `Display`. Factors may repeat and appear
    /// in any order; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| AlgebraError::Parse(format!("{msg} in {s:?}"));
        if text.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut out = Poly::zero();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigRational::one();
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            }
            let end = text[pos..]
                .find(['+', '-'])
                .map_or(text.len(), |k| pos + k);
            let body = &text[pos..end];
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = sign;
            let mut factors = Vec::new();
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix("y[") {
                    let (inner, power) = rest.split_once(']').ok_or_else(|| err("unclosed y["))?;
                    let (i, t) = inner.split_once(',').ok_or_else(|| err("expected y[i,t]"))?;
                    let i: usize = i.parse().map_err(|_| err("bad row index"))?;
                    let t: usize = t.parse().map_err(|_| err("bad column index"))?;
                    if t == 0 || t >= i {
                        return Err(err("variable must satisfy 0 < t < i"));
                    }
                    let e = match power.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| err("bad exponent"))?,
                        None if power.is_empty() => 1,
                        None => return Err(err("unexpected text after variable")),
                    };
                    factors.push((Root::at(i, t), e));
                } else {
                    coeff *= parse_rational(factor).ok_or_else(|| err("bad coefficient"))?;
                }
            }
            out.add_term(Monomial::from_factors(factors), coeff);
            pos = end;
        }
        Ok(out)
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    (!den.is_zero()).then(|| BigRational::new(num, den))
}
