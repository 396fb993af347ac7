use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::OrbitError;
use crate::algebra::{is_prime, Scalar};
use crate::ideal::XSigmaPoint;
use crate::involution::Root;

/// Slot of the coordinate `y_{it}` (`i > t`) in the row-major packing
/// `y21, y31, y32, y41, …`.
pub fn coord_index(i: usize, t: usize) -> usize {
    debug_assert!(t >= 1 && t < i);
    (i - 1) * (i - 2) / 2 + (t - 1)
}

pub fn coord_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// A point of `𝔫*` over `F_p`, stored as the values `f(y_{it})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FFPoint {
    n: usize,
    p: u32,
    coords: Vec<u8>,
}

pub(super) fn check_prime(p: u32) -> Result<(), OrbitError> {
    if !is_prime(p) {
        return Err(OrbitError::NotPrime(p));
    }
    if p > u8::MAX as u32 {
        return Err(OrbitError::PrimeTooLarge(p));
    }
    Ok(())
}

impl FFPoint {
    pub fn zero(n: usize, p: u32) -> Result<Self, OrbitError> {
        check_prime(p)?;
        Ok(FFPoint {
            n,
            p,
            coords: vec![0; coord_count(n)],
        })
    }

    /// Coordinates in row-major order; every entry must be below `p`.
    pub fn from_coords(n: usize, p: u32, coords: Vec<u8>) -> Result<Self, OrbitError> {
        check_prime(p)?;
        if coords.len() != coord_count(n) {
            return Err(OrbitError::Shape(format!(
                "expected {} coordinates for n = {n}, got {}",
                coord_count(n),
                coords.len()
            )));
        }
        if let Some(&c) = coords.iter().find(|&&c| u32::from(c) >= p) {
            return Err(OrbitError::Shape(format!("coordinate {c} is not reduced modulo {p}")));
        }
        Ok(FFPoint { n, p, coords })
    }

    pub fn from_xsigma(f: &XSigmaPoint, p: u32) -> Result<Self, OrbitError> {
        let mut point = FFPoint::zero(f.sigma().n(), p)?;
        for (root, value) in f.coordinates() {
            point.set(root.i, root.j, scalar_to_fp(&value, p)?);
        }
        Ok(point)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    /// `f(y_{it})`.
    pub fn get(&self, i: usize, t: usize) -> u32 {
        u32::from(self.coords[coord_index(i, t)])
    }

    pub fn set(&mut self, i: usize, t: usize, value: u32) {
        self.coords[coord_index(i, t)] = (value % self.p) as u8;
    }

    /// Support of the point as a set of roots.
    pub fn support(&self) -> Vec<Root> {
        Root::all(self.n).filter(|r| self.get(r.i, r.j) != 0).collect()
    }

    /// The strictly upper-triangular matrix `F` with `F[t][i] = f(y_{it})`,
    /// 0-based.
    pub fn to_matrix(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for i in 2..=self.n {
            for t in 1..i {
                m[t - 1][i - 1] = self.get(i, t);
            }
        }
        m
    }

    /// Image under `I + c·e_{q+1,q}` without forming matrices:
    /// `y_{i,q+1} += c·y_{i,q}` for `i > q+1` and `y_{q,r} −= c·y_{q+1,r}` for `r < q`.
    pub fn transvect(&self, q: usize, c: u32) -> FFPoint {
        let p = self.p;
        let mut out = self.clone();
        for i in q + 2..=self.n {
            let v = (self.get(i, q + 1) + c * self.get(i, q)) % p;
            out.set(i, q + 1, v);
        }
        for r in 1..q {
            let v = (self.get(q, r) + (p - c % p) * self.get(q + 1, r)) % p;
            out.set(q, r, v);
        }
        out
    }
}

impl fmt::Display for FFPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u8::to_string).collect();
        write!(f, "[{}] mod {}", parts.join(","), self.p)
    }
}

/// Reduces a scalar (rational or already in `F_p`) into `F_p`.
pub fn scalar_to_fp(value: &Scalar, p: u32) -> Result<u32, OrbitError> {
    match value {
        Scalar::Fp(x) if x.modulus() == p => Ok(x.value()),
        Scalar::Fp(x) => Err(OrbitError::Shape(format!(
            "value lives in F_{}, expected F_{p}",
            x.modulus()
        ))),
        Scalar::Rational(q) => Ok(crate::algebra::Fp::from_rational(q, p)?.value()),
    }
}

/// Lower unitriangular `n × n` matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    p: u32,
    m: Vec<Vec<u32>>,
}

impl GroupElement {
    pub fn identity(n: usize, p: u32) -> Self {
        let m = (0..n)
            .map(|r| (0..n).map(|c| u32::from(r == c)).collect())
            .collect();
        GroupElement { p, m }
    }

    /// `I + c·e_{q+1,q}`, 1-based `q`.
    pub fn transvection(n: usize, p: u32, q: usize, c: u32) -> Self {
        let mut g = Self::identity(n, p);
        g.m[q][q - 1] = c % p;
        g
    }

    /// Entries below the diagonal drawn uniformly from `F_p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: u32, rng: &mut R) -> Self {
        let mut g = Self::identity(n, p);
        for r in 0..n {
            for c in 0..r {
                g.m[r][c] = rng.gen_range(0..p);
            }
        }
        g
    }

    /// Rows of the matrix; must be lower unitriangular with entries below `p`.
    pub fn from_rows(p: u32, m: Vec<Vec<u32>>) -> Result<Self, OrbitError> {
        check_prime(p)?;
        let n = m.len();
        for (r, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(OrbitError::Shape("group element must be square".into()));
            }
            for (c, &v) in row.iter().enumerate() {
                let ok = v < p && if r == c { v == 1 } else { c < r || v == 0 };
                if !ok {
                    return Err(OrbitError::Shape(format!("entry ({},{}) = {v} breaks unitriangularity", r + 1, c + 1)));
                }
            }
        }
        Ok(GroupElement { p, m })
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.m
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            p: self.p,
            m: mat_mul(&self.m, &other.m, self.p),
        }
    }

    /// Inverse by forward substitution.
    pub fn inverse(&self) -> GroupElement {
        let (n, p) = (self.n(), u64::from(self.p));
        let mut inv = vec![vec![0u32; n]; n];
        for c in 0..n {
            inv[c][c] = 1;
            for r in c + 1..n {
                let s: u64 = (c..r).map(|k| u64::from(self.m[r][k]) * u64::from(inv[k][c])).sum::<u64>() % p;
                inv[r][c] = ((p - s) % p) as u32;
            }
        }
        GroupElement { p: self.p, m: inv }
    }
}

fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let n = a.len();
    let p = u64::from(p);
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| ((0..n).map(|k| u64::from(a[r][k]) * u64::from(b[k][c])).sum::<u64>() % p) as u32)
                .collect()
        })
        .collect()
}

/// `Ad*_g f`: the strictly upper-triangular part of `g·F·g⁻¹`.
pub fn coadjoint(g: &GroupElement, f: &FFPoint) -> Result<FFPoint, OrbitError> {
    if g.n() != f.n || g.p != f.p {
        return Err(OrbitError::Shape(format!(
            "group element over F_{} of size {} cannot act on a point over F_{} of size {}",
            g.p,
            g.n(),
            f.p,
            f.n
        )));
    }
    let conj = mat_mul(&mat_mul(&g.m, &f.to_matrix(), f.p), &g.inverse().m, f.p);
    let mut out = f.clone();
    for i in 2..=f.n {
        for t in 1..i {
            out.set(i, t, conj[t - 1][i - 1]);
        }
    }
    Ok(out)
}
