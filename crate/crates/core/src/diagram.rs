//! Admissible diagrams: every square `(i, t)` below the diagonal is tagged
//! `⊗` (the roots `S` of σ's transpositions), `+` (`C₊`), `−` (`C₋`) or `•`
//! (`M`).
//!
//! [`classify`] derives the tags from sign conditions on the partial products
//! `σ_{t−1}`, `σ_t`; [`build_iterative`] fills the grid transposition by
//! transposition and serves as an independent cross-check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::involution::{act_on_root, Involution, Root};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("root {0} is not in C-")]
    NotCminus(Root),
    #[error("root {0} is not in M")]
    NotMroot(Root),
    #[error("root {root} lies outside the {n}x{n} diagram")]
    OutOfRange { root: Root, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootClass {
    #[serde(rename = "S")]
    Scross,
    #[serde(rename = "C+")]
    Cplus,
    #[serde(rename = "C-")]
    Cminus,
    #[serde(rename = "M")]
    Mdot,
}

impl RootClass {
    pub fn symbol(self, style: RenderStyle) -> char {
        match (style, self) {
            (RenderStyle::Unicode, RootClass::Scross) => '⊗',
            (RenderStyle::Unicode, RootClass::Cplus) => '+',
            (RenderStyle::Unicode, RootClass::Cminus) => '−',
            (RenderStyle::Unicode, RootClass::Mdot) => '•',
            (RenderStyle::Ascii, RootClass::Scross) => 'X',
            (RenderStyle::Ascii, RootClass::Cplus) => '+',
            (RenderStyle::Ascii, RootClass::Cminus) => '-',
            (RenderStyle::Ascii, RootClass::Mdot) => '*',
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RootClass::Scross => "S",
            RootClass::Cplus => "C+",
            RootClass::Cminus => "C-",
            RootClass::Mdot => "M",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Ascii,
    Unicode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleDiagram {
    n: usize,
    cells: BTreeMap<Root, RootClass>,
}

impl AdmissibleDiagram {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Class of the square `(row, col)`, `None` on or above the diagonal.
    pub fn at(&self, row: usize, col: usize) -> Option<RootClass> {
        if col >= row || row > self.n || col == 0 {
            return None;
        }
        self.cells.get(&Root::at(row, col)).copied()
    }

    pub fn class_of(&self, root: Root) -> RootClass {
        self.cells[&root]
    }

    pub fn cells(&self) -> impl Iterator<Item = (Root, RootClass)> + '_ {
        self.cells.iter().map(|(&r, &c)| (r, c))
    }

    /// Roots of the given class in (column, row) order.
    pub fn roots_of(&self, class: RootClass) -> Vec<Root> {
        self.cells().filter(|&(_, c)| c == class).map(|(r, _)| r).collect()
    }

    pub fn count(&self, class: RootClass) -> usize {
        self.cells.values().filter(|&&c| c == class).count()
    }

    /// `Π = S ⊔ M ⊔ C₊`.
    pub fn pi(&self) -> BTreeSet<Root> {
        self.cells()
            .filter(|&(_, c)| c != RootClass::Cminus)
            .map(|(r, _)| r)
            .collect()
    }

    pub fn render(&self, style: RenderStyle) -> String {
        let mut out = String::new();
        for row in 1..=self.n {
            let line: Vec<String> = (1..row)
                .map(|col| self.at(row, col).unwrap().symbol(style).to_string())
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Like [`AdmissibleDiagram::render`], with column indices on top and row
    /// indices on the left.
    pub fn render_labeled(&self, style: RenderStyle) -> String {
        let w = self.n.to_string().len();
        let mut out = String::new();
        let header: Vec<String> = (1..=self.n).map(|c| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{:w$} {}", "", header.join(" ").trim_end());
        for row in 1..=self.n {
            let cells: Vec<String> = (1..row)
                .map(|col| format!("{:>w$}", self.at(row, col).unwrap().symbol(style)))
                .collect();
            let line = format!("{row:>w$} {}", cells.join(" "));
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }

    pub fn export(&self) -> DiagramJson {
        DiagramJson {
            n: self.n,
            cells: self
                .cells
                .iter()
                .map(|(r, &c)| CellJson { row: r.i, col: r.j, class: c })
                .collect(),
        }
    }
}

/// Wire form: `{"n":7,"cells":[{"row":4,"col":1,"class":"S"},…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: usize,
    pub cells: Vec<CellJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub row: usize,
    pub col: usize,
    pub class: RootClass,
}

pub fn classify(sigma: &Involution) -> AdmissibleDiagram {
    let n = sigma.n();
    let s_roots: BTreeSet<Root> = sigma.decompose().into_iter().collect();
    let partials: Vec<Involution> = (0..n).map(|t| sigma.partial_unchecked(t)).collect();
    let cells = Root::all(n)
        .map(|gamma| {
            let t = gamma.j;
            let before = act_on_root(partials[t - 1].as_permutation(), gamma).is_positive();
            let after = act_on_root(partials[t].as_permutation(), gamma).is_positive();
            let class = if s_roots.contains(&gamma) {
                RootClass::Scross
            } else if !before {
                RootClass::Cminus
            } else if !after {
                RootClass::Cplus
            } else {
                RootClass::Mdot
            };
            (gamma, class)
        })
        .collect();
    AdmissibleDiagram { n, cells }
}

pub fn pi_set(sigma: &Involution) -> BTreeSet<Root> {
    classify(sigma).pi()
}

/// Fills the grid one transposition at a time: `⊗` at `(i(ξ), j(ξ))`, `+` up
/// the column and `−` along the row, where for each `k` strictly between
/// `j(ξ)` and `i(ξ)` the pair of squares `(k, j(ξ))`, `(i(ξ), k)` is filled
/// only if neither is already occupied. Leftover squares become `•`.
pub fn build_iterative(sigma: &Involution) -> AdmissibleDiagram {
    let n = sigma.n();
    let mut filled: BTreeMap<Root, RootClass> = BTreeMap::new();
    for xi in sigma.decompose() {
        filled.insert(xi, RootClass::Scross);
        for k in xi.j + 1..xi.i {
            let up = Root::at(k, xi.j);
            let right = Root::at(xi.i, k);
            if !filled.contains_key(&up) && !filled.contains_key(&right) {
                filled.insert(up, RootClass::Cplus);
                filled.insert(right, RootClass::Cminus);
            }
        }
    }
    let cells = Root::all(n)
        .map(|r| (r, filled.get(&r).copied().unwrap_or(RootClass::Mdot)))
        .collect();
    AdmissibleDiagram { n, cells }
}

/// The unique `γ ∈ C₊` with `γ + γ' ∈ S`, for `γ' ∈ C₋`.
pub fn pair_cminus(diagram: &AdmissibleDiagram, gamma_prime: Root) -> Result<Root, DiagramError> {
    if diagram.cells.get(&gamma_prime) != Some(&RootClass::Cminus) {
        return Err(DiagramError::NotCminus(gamma_prime));
    }
    let mut hits = diagram
        .roots_of(RootClass::Cplus)
        .into_iter()
        .filter(|&g| {
            g.add(gamma_prime)
                .is_some_and(|sum| diagram.class_of(sum) == RootClass::Scross)
        });
    let gamma = hits.next().expect("every C- root pairs with a C+ root");
    debug_assert!(hits.next().is_none());
    Ok(gamma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MRootInfo {
    pub root: Root,
    /// 0 or 1.
    pub mtype: u8,
    /// `σ_{t−1}(i)`.
    pub k: usize,
    /// `σ(t)`.
    pub a: usize,
}

/// Type and auxiliary indices of an `M`-root `η = ε_t − ε_i`.
///
/// `η` has type 1 when some `ξ ∈ S` with `j(ξ) ≤ t − 1` ends in row `i`,
/// i.e. there is a `⊗` in row `i` left of column `t`.
pub fn mroot_info(sigma: &Involution, diagram: &AdmissibleDiagram, eta: Root) -> Result<MRootInfo, DiagramError> {
    if eta.i > diagram.n {
        return Err(DiagramError::OutOfRange { root: eta, n: diagram.n });
    }
    if diagram.class_of(eta) != RootClass::Mdot {
        return Err(DiagramError::NotMroot(eta));
    }
    let (t, i) = (eta.j, eta.i);
    let type1 = sigma.decompose().iter().any(|xi| xi.j < t && xi.i == i);
    let k = sigma.partial_unchecked(t - 1).apply(i);
    let a = sigma.apply(t);
    Ok(MRootInfo {
        root: eta,
        mtype: u8::from(type1),
        k,
        a,
    })
}
