//! Minors of the formal matrix `Φ` (strictly lower triangular, entries
//! `y_{ij}`) and of its characteristic matrix `Φ(τ) = τΦ + E`; the index sets
//! `J(k,t)`, `I(k,t)` and the minors `D_{k,t}`; Laplace-type product identities
//! between minors.
//!
//! Index sets are 1-based. A minor always takes its rows and columns in
//! increasing order, which fixes every sign below.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{det, submatrix, AlgebraError, Poly, Ring, TauPoly};
use crate::involution::Involution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("index set is not strictly increasing: {0:?}")]
    NotIncreasing(Vec<usize>),
    #[error("index sets have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Strictly increasing list of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(items: Vec<usize>) -> Result<Self, MinorError> {
        if items.windows(2).any(|w| w[0] >= w[1]) || items.first() == Some(&0) {
            return Err(MinorError::NotIncreasing(items));
        }
        Ok(IndexSet(items))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.0.iter().chain(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        self.0.iter().copied().filter(|&x| !other.contains(x)).collect()
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        self.0.iter().copied().filter(|&x| other.contains(x)).collect()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&x| !other.contains(x))
    }

    /// Sum of the 1-based positions of `subset`'s elements inside `self`.
    fn position_sum(&self, subset: &IndexSet) -> usize {
        subset
            .0
            .iter()
            .map(|x| self.0.binary_search(x).expect("subset") + 1)
            .sum()
    }

    /// All subsets with `k` elements, in lexicographic order.
    pub fn subsets(&self, k: usize) -> Vec<IndexSet> {
        fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
            if cur.len() == k {
                out.push(IndexSet(cur.clone()));
                return;
            }
            for x in start..items.len() {
                if items.len() - x < k - cur.len() {
                    break;
                }
                cur.push(items[x]);
                go(items, k, x + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= self.len() {
            go(&self.0, k, 0, &mut Vec::new(), &mut out);
        }
        out
    }

    fn check_range(&self, n: usize) -> Result<(), MinorError> {
        match self.max() {
            Some(index) if index > n => Err(MinorError::OutOfRange { index, n }),
            _ => Ok(()),
        }
    }

    fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|x| x - 1).collect()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndexSet(iter.into_iter().collect::<BTreeSet<_>>().into_iter().collect())
    }
}

impl From<&[usize]> for IndexSet {
    fn from(items: &[usize]) -> Self {
        items.iter().copied().collect()
    }
}

/// `I ≥ J`: `ord(I)_r ≥ ord(J)_r` for every slot `r`.
pub fn index_geq(rows: &IndexSet, cols: &IndexSet) -> Result<bool, MinorError> {
    if rows.len() != cols.len() {
        return Err(MinorError::SizeMismatch(rows.len(), cols.len()));
    }
    Ok(rows.0.iter().zip(&cols.0).all(|(a, b)| a >= b))
}

/// Rows `I`, columns `J` of an `n × n` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSpec {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub n: usize,
}

impl MinorSpec {
    pub fn new(n: usize, rows: IndexSet, cols: IndexSet) -> Result<Self, MinorError> {
        if rows.len() != cols.len() {
            return Err(MinorError::SizeMismatch(rows.len(), cols.len()));
        }
        rows.check_range(n)?;
        cols.check_range(n)?;
        Ok(MinorSpec { rows, cols, n })
    }
}

/// Entry `(i, j)` of `Φ`: `y_{ij}` below the diagonal, zero elsewhere.
pub fn phi_entry(i: usize, j: usize) -> Poly {
    if i > j {
        Poly::y(i, j)
    } else {
        Poly::zero()
    }
}

/// Entry `(i, j)` of `Φ(τ) = τΦ + E`.
pub fn phi_tau_entry(i: usize, j: usize) -> TauPoly {
    match i.cmp(&j) {
        std::cmp::Ordering::Greater => TauPoly::tau_times(Poly::y(i, j)),
        std::cmp::Ordering::Equal => TauPoly::one(),
        std::cmp::Ordering::Less => TauPoly::zero(),
    }
}

pub fn phi_minor(spec: &MinorSpec) -> Poly {
    let m: Vec<Vec<Poly>> = spec
        .rows
        .0
        .iter()
        .map(|&i| spec.cols.0.iter().map(|&j| phi_entry(i, j)).collect())
        .collect();
    det(&m).expect("square by construction")
}

/// Minor of `Φ(τ)`; zero exactly when `I ≱ J`.
pub fn phi_tau_minor(spec: &MinorSpec) -> TauPoly {
    let m: Vec<Vec<TauPoly>> = spec
        .rows
        .0
        .iter()
        .map(|&i| spec.cols.0.iter().map(|&j| phi_tau_entry(i, j)).collect())
        .collect();
    det(&m).expect("square by construction")
}

/// The index sets behind `D_{k,t}`:
/// `J′ = {j < t : σ(j) > k}`, `I′ = σ(J′)`, `J = J′ ⊔ {t}`, `I = I′ ⊔ {k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DktSpec {
    pub k: usize,
    pub t: usize,
    pub j_prime: IndexSet,
    pub i_prime: IndexSet,
    pub cols: IndexSet,
    pub rows: IndexSet,
}

impl DktSpec {
    pub fn minor_spec(&self, n: usize) -> MinorSpec {
        MinorSpec {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            n,
        }
    }
}

pub fn dkt_spec(sigma: &Involution, k: usize, t: usize) -> Result<DktSpec, MinorError> {
    let n = sigma.n();
    for index in [k, t] {
        if index == 0 || index > n {
            return Err(MinorError::OutOfRange { index, n });
        }
    }
    let j_prime: IndexSet = (1..t).filter(|&j| sigma.apply(j) > k).collect();
    let i_prime: IndexSet = j_prime.0.iter().map(|&j| sigma.apply(j)).collect();
    // j < t and σ(j) > k, so neither t ∈ J′ nor k ∈ I′ can happen
    debug_assert!(!j_prime.contains(t) && !i_prime.contains(k));
    let cols = j_prime.union(&IndexSet(vec![t]));
    let rows = i_prime.union(&IndexSet(vec![k]));
    Ok(DktSpec { k, t, j_prime, i_prime, cols, rows })
}

/// `D_{k,t}(τ)`, the minor of `Φ(τ)` on rows `I(k,t)` and columns `J(k,t)`.
pub fn dkt_tau(sigma: &Involution, k: usize, t: usize) -> Result<TauPoly, MinorError> {
    let spec = dkt_spec(sigma, k, t)?;
    Ok(phi_tau_minor(&spec.minor_spec(sigma.n())))
}

/// `D_{k,t}`, the minor of `Φ` itself.
pub fn dkt_minor(sigma: &Involution, k: usize, t: usize) -> Result<Poly, MinorError> {
    let spec = dkt_spec(sigma, k, t)?;
    Ok(phi_minor(&spec.minor_spec(sigma.n())))
}

/// Which side of the product the chosen subset lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceSide {
    /// Columns `S ⊆ J₂` fixed, sum over row sets `T ⊆ I₂`.
    Column,
    /// Rows `T ⊆ I₂` fixed, sum over column sets `S ⊆ J₂`.
    Row,
}

/// Both sides of
/// `M_{I₁}^{J₁} · M_I^J = Σ ε(T,S) · M_{I₁⊔T}^{J₁⊔S} · M_{I∖T}^{J∖S}`
/// evaluated on a concrete matrix.
///
/// The sign is `ε(T,S) = (−1)^{pos(T) + pos(S)}`, where `pos(T)` is the sum of
/// the 1-based positions of `T` inside `I₂` and likewise `pos(S)` inside `J₂`.
#[derive(Debug, Clone)]
pub struct LaplaceExpansion<T> {
    pub pivot: T,
    pub full: T,
    /// `(sign, M_{I₁⊔T}^{J₁⊔S}, M_{I∖T}^{J∖S}, T, S)`.
    pub terms: Vec<(i8, T, T, IndexSet, IndexSet)>,
}

impl<T: Ring> LaplaceExpansion<T> {
    pub fn lhs(&self) -> T {
        self.pivot.clone() * self.full.clone()
    }

    pub fn rhs(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, (sign, a, b, _, _)| {
            let prod = a.clone() * b.clone();
            if *sign > 0 {
                acc + prod
            } else {
                acc - prod
            }
        })
    }
}

/// Minor of a concrete matrix on 1-based index sets.
pub fn minor_of<T: Ring>(a: &[Vec<T>], rows: &IndexSet, cols: &IndexSet) -> Result<T, MinorError> {
    if rows.len() != cols.len() {
        return Err(MinorError::SizeMismatch(rows.len(), cols.len()));
    }
    rows.check_range(a.len())?;
    cols.check_range(a.len())?;
    Ok(det(&submatrix(a, &rows.zero_based(), &cols.zero_based()))?)
}

#[allow(clippy::too_many_arguments)]
pub fn laplace_expansion<T: Ring>(
    a: &[Vec<T>],
    rows: &IndexSet,
    cols: &IndexSet,
    rows1: &IndexSet,
    cols1: &IndexSet,
    chosen: &IndexSet,
    side: LaplaceSide,
) -> Result<LaplaceExpansion<T>, MinorError> {
    let bad = |msg: &str| Err(MinorError::MalformedPartition(msg.into()));
    if rows.len() != cols.len() {
        return Err(MinorError::SizeMismatch(rows.len(), cols.len()));
    }
    if rows1.len() != cols1.len() {
        return bad("|I1| != |J1|");
    }
    if !rows1.is_subset(rows) || !cols1.is_subset(cols) {
        return bad("I1 must lie in I and J1 in J");
    }
    let rows2 = rows.difference(rows1);
    let cols2 = cols.difference(cols1);
    let (fixed_side, summed_side) = match side {
        LaplaceSide::Column => (&cols2, &rows2),
        LaplaceSide::Row => (&rows2, &cols2),
    };
    if !chosen.is_subset(fixed_side) {
        return bad("chosen subset must lie in J2 (column side) or I2 (row side)");
    }
    let pivot = minor_of(a, rows1, cols1)?;
    let full = minor_of(a, rows, cols)?;
    let mut terms = Vec::new();
    for other in summed_side.subsets(chosen.len()) {
        let (t, s) = match side {
            LaplaceSide::Column => (other, chosen.clone()),
            LaplaceSide::Row => (chosen.clone(), other),
        };
        let sign = if (rows2.position_sum(&t) + cols2.position_sum(&s)) % 2 == 0 { 1 } else { -1 };
        let left = minor_of(a, &rows1.union(&t), &cols1.union(&s))?;
        let right = minor_of(a, &rows.difference(&t), &cols.difference(&s))?;
        terms.push((sign, left, right, t, s));
    }
    Ok(LaplaceExpansion { pivot, full, terms })
}

/// Evaluates both sides of the product identity and compares them.
#[allow(clippy::too_many_arguments)]
pub fn laplace_check<T: Ring>(
    a: &[Vec<T>],
    rows: &IndexSet,
    cols: &IndexSet,
    rows1: &IndexSet,
    cols1: &IndexSet,
    chosen: &IndexSet,
    side: LaplaceSide,
) -> Result<bool, MinorError> {
    let e = laplace_expansion(a, rows, cols, rows1, cols1, chosen, side)?;
    Ok(e.lhs() == e.rhs())
}

/// Whether `left.0 · left.1 = Σ parts[k].0 · parts[k].1` is an admissible
/// presentation: every nonzero summand has lower degree at least that of
/// the left side. A zero left side counts as lower degree `∞`.
pub fn ldeg_admissible(parts: &[(TauPoly, TauPoly)], left: &(TauPoly, TauPoly)) -> bool {
    let lower = |a: &TauPoly, b: &TauPoly| Some(a.lower_degree()? + b.lower_degree()?);
    let bound = lower(&left.0, &left.1);
    parts.iter().all(|(a, b)| match (lower(a, b), bound) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(m), Some(bound)) => m >= bound,
    })
}

/// `Φ(τ)` as a full matrix, for instantiating the product identities.
pub fn phi_tau_matrix(n: usize) -> Vec<Vec<TauPoly>> {
    (1..=n)
        .map(|i| (1..=n).map(|j| phi_tau_entry(i, j)).collect())
        .collect()
}
