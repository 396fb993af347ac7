//! Involutions of `S_n`, their decomposition into commuting reflections,
//! Coxeter length and the partial products `σ_t`.
//!
//! All indices are 1-based, matching the row/column numbering of the
//! diagrams and matrices built on top of this module.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("malformed cycle notation at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("transposition ({a},{b}) overlaps an earlier transposition")]
    Overlap { a: usize, b: usize },
    #[error("not an involution: image[{j}] = {image}, but image[{image}] != {j}")]
    NotInvolution { j: usize, image: usize },
    #[error("not a permutation of 1..={n}")]
    NotPermutation { n: usize },
    #[error("partial product index {t} out of range 0..={max}")]
    PartialOutOfRange { t: usize, max: usize },
}

/// A positive root `α_{ji} = ε_j − ε_i` with `j < i`.
///
/// The root labels the square `(i, j)` of the admissible diagram and the
/// coordinate function `y_{ij}`. The derived order is by column, then row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    /// Column index (`j(ξ)`).
    pub j: usize,
    /// Row index (`i(ξ)`).
    pub i: usize,
}

impl Root {
    /// Panics unless `j < i`.
    pub fn new(j: usize, i: usize) -> Self {
        assert!(0 < j && j < i, "root requires 0 < j < i, got j={j}, i={i}");
        Root { j, i }
    }

    /// Root attached to the square `(row, col)` of a diagram.
    pub fn at(row: usize, col: usize) -> Self {
        Root::new(col, row)
    }

    /// `γ + γ'` when it is again a positive root.
    pub fn add(self, other: Root) -> Option<Root> {
        if self.i == other.j {
            Some(Root::new(self.j, other.i))
        } else if other.i == self.j {
            Some(Root::new(other.j, self.i))
        } else {
            None
        }
    }

    /// All positive roots of `gl(n)`, ordered by column then row.
    pub fn all(n: usize) -> impl Iterator<Item = Root> {
        (1..n).flat_map(move |j| (j + 1..=n).map(move |i| Root { j, i }))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a({},{})", self.j, self.i)
    }
}

/// `ε_a − ε_b` for arbitrary distinct `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub a: usize,
    pub b: usize,
}

impl SignedRoot {
    pub fn is_positive(&self) -> bool {
        self.a < self.b
    }
}

/// A permutation of `{1..n}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (1..=n).collect() }
    }

    /// `images[k]` is the image of `k + 1`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, InvolutionError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(InvolutionError::NotPermutation { n });
            }
            seen[x] = true;
        }
        Ok(Permutation { image: images })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            image: other.image.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Number of pairs `a < b` with `w(a) > w(b)`.
    pub fn inversions(&self) -> usize {
        let w = &self.image;
        (0..w.len())
            .map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &x)| x == k + 1)
    }
}

/// `w(γ) = ε_{w(j)} − ε_{w(i)}` for `γ = ε_j − ε_i`.
pub fn act_on_root(w: &Permutation, root: Root) -> SignedRoot {
    SignedRoot {
        a: w.apply(root.j),
        b: w.apply(root.i),
    }
}

/// A self-inverse permutation of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Involution {
    perm: Permutation,
}

impl Involution {
    pub fn identity(n: usize) -> Self {
        Involution { perm: Permutation::identity(n) }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, InvolutionError> {
        let perm = Permutation::from_images(images)?;
        for j in 1..=perm.n() {
            let image = perm.apply(j);
            if perm.apply(image) != j {
                return Err(InvolutionError::NotInvolution { j, image });
            }
        }
        Ok(Involution { perm })
    }

    /// Product of the given disjoint transpositions in `S_n`.
    pub fn from_transpositions(
        n: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, InvolutionError> {
        let mut image: Vec<usize> = (1..=n).collect();
        for &(a, b) in pairs {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(InvolutionError::OutOfRange { index: x, n });
                }
            }
            if a == b || image[a - 1] != a || image[b - 1] != b {
                return Err(InvolutionError::Overlap { a, b });
            }
            image[a - 1] = b;
            image[b - 1] = a;
        }
        Ok(Involution { perm: Permutation { image } })
    }

    /// Parses cycle notation such as `"(1,4)(2,7)(3,6)"`; the empty string is
    /// the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self, InvolutionError> {
        let pairs = parse_cycles(text)?;
        Involution::from_transpositions(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm.apply(x)
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.perm
    }

    /// The roots `ξ_1, …, ξ_s` of the commuting reflections, in ascending
    /// order of their columns `j(ξ_m)`.
    ///
    /// For commuting reflections this coincides with the decreasing
    /// lexicographic order on roots, since the columns are pairwise distinct.
    pub fn decompose(&self) -> Vec<Root> {
        (1..=self.n())
            .filter(|&j| self.apply(j) > j)
            .map(|j| Root::new(j, self.apply(j)))
            .collect()
    }

    /// `s(σ)`, the number of transpositions.
    pub fn reflection_count(&self) -> usize {
        (1..=self.n()).filter(|&j| self.apply(j) > j).count()
    }

    /// Coxeter length, computed as the inversion count.
    pub fn length(&self) -> usize {
        self.perm.inversions()
    }

    /// `σ_t`: the product of the reflections `r_m` with `j(ξ_m) ≤ t`.
    pub fn partial(&self, t: usize) -> Result<Involution, InvolutionError> {
        let max = self.n().saturating_sub(1);
        if t > max {
            return Err(InvolutionError::PartialOutOfRange { t, max });
        }
        Ok(self.partial_unchecked(t))
    }

    /// `σ_t'`: the product of the reflections `r_m` with `j(ξ_m) > t`.
    pub fn complement(&self, t: usize) -> Result<Involution, InvolutionError> {
        let max = self.n().saturating_sub(1);
        if t > max {
            return Err(InvolutionError::PartialOutOfRange { t, max });
        }
        let image = (1..=self.n())
            .map(|x| {
                let y = self.apply(x);
                if x.min(y) > t {
                    y
                } else {
                    x
                }
            })
            .collect();
        Ok(Involution { perm: Permutation { image } })
    }

    /// Like [`Involution::partial`], without the range check; any `t ≥ n − 1`
    /// yields `σ` itself.
    pub(crate) fn partial_unchecked(&self, t: usize) -> Involution {
        let image = (1..=self.n())
            .map(|x| {
                let y = self.apply(x);
                if x.min(y) <= t {
                    y
                } else {
                    x
                }
            })
            .collect();
        Involution { perm: Permutation { image } }
    }

    /// Every involution of `S_n`, identity first.
    pub fn all(n: usize) -> Vec<Involution> {
        let mut out = Vec::new();
        let mut image: Vec<usize> = (1..=n).collect();
        enumerate_matchings(1, n, &mut image, &mut out);
        out
    }
}

fn enumerate_matchings(start: usize, n: usize, image: &mut Vec<usize>, out: &mut Vec<Involution>) {
    let Some(a) = (start..=n).find(|&x| image[x - 1] == x) else {
        out.push(Involution { perm: Permutation { image: image.clone() } });
        return;
    };
    // `a` stays fixed
    enumerate_matchings(a + 1, n, image, out);
    for b in a + 1..=n {
        if image[b - 1] == b {
            image[a - 1] = b;
            image[b - 1] = a;
            enumerate_matchings(a + 1, n, image, out);
            image[a - 1] = a;
            image[b - 1] = b;
        }
    }
}

impl fmt::Display for Involution {
    /// Cycle notation, transpositions ordered by their smaller entry; the
    /// identity prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for root in self.decompose() {
            write!(f, "({},{})", root.j, root.i)?;
        }
        Ok(())
    }
}

/// Splits cycle notation into the listed pairs without validating them
/// against `n`.
pub fn parse_cycles(text: &str) -> Result<Vec<(usize, usize)>, InvolutionError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut pairs = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let expect = |pos: &mut usize, c: u8| -> Result<(), InvolutionError> {
        skip_ws(pos);
        if *pos < bytes.len() && bytes[*pos] == c {
            *pos += 1;
            Ok(())
        } else {
            Err(InvolutionError::Syntax {
                pos: *pos,
                msg: format!("expected '{}'", c as char),
            })
        }
    };
    let number = |pos: &mut usize| -> Result<usize, InvolutionError> {
        skip_ws(pos);
        let begin = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        text[begin..*pos].parse().map_err(|_| InvolutionError::Syntax {
            pos: begin,
            msg: "expected a positive integer".into(),
        })
    };
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        expect(&mut pos, b'(')?;
        let a = number(&mut pos)?;
        expect(&mut pos, b',')?;
        let b = number(&mut pos)?;
        expect(&mut pos, b')')?;
        pairs.push((a, b));
    }
    Ok(pairs)
}

impl FromStr for Permutation {
    type Err = InvolutionError;

    /// One-line notation, e.g. `"4 3 2 1"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images = s
            .split_whitespace()
            .map(|w| {
                w.parse::<usize>().map_err(|_| InvolutionError::Syntax {
                    pos: 0,
                    msg: format!("bad image {w:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }
}
