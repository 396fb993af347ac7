//! Points of `X_σ`, the generators `Q_{i,t}` and `D_m − D_m(f)` of the
//! defining ideal of `Ω(f)`, the polarization `𝔭_σ` and the orbit dimension.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Domain, Poly, Scalar};
use crate::diagram::{classify, mroot_info, AdmissibleDiagram, DiagramError, RootClass};
use crate::involution::{Involution, Root};
use crate::minors::{dkt_minor, dkt_tau, MinorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("expected {expected} values (one per transposition), got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("value {m} is zero; points of X_sigma are nonzero on every transposition root")]
    ZeroValue { m: usize },
    #[error("m = {m} out of range 1..={s}")]
    IndexOutOfRange { m: usize, s: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A linear form `f` with `f(y_{ξ_m}) = values[m]` and zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSigmaPoint {
    sigma: Involution,
    domain: Domain,
    values: Vec<Scalar>,
}

pub fn xsigma_point(sigma: &Involution, values: Vec<Scalar>) -> Result<XSigmaPoint, IdealError> {
    let s = sigma.reflection_count();
    if values.len() != s {
        return Err(IdealError::ValueCount { expected: s, got: values.len() });
    }
    if let Some(m) = values.iter().position(Scalar::is_zero) {
        return Err(IdealError::ZeroValue { m: m + 1 });
    }
    let domain = values.first().map_or(Domain::Rational, Scalar::domain);
    if values.iter().any(|v| v.domain() != domain) {
        return Err(AlgebraError::MixedDomains.into());
    }
    Ok(XSigmaPoint {
        sigma: sigma.clone(),
        domain,
        values,
    })
}

impl XSigmaPoint {
    /// All values equal to 1, in the given domain.
    pub fn unit(sigma: &Involution, domain: Domain) -> Self {
        let one = Scalar::from_rational_in(&BigRational::one(), domain).expect("1 lives in every domain");
        XSigmaPoint {
            sigma: sigma.clone(),
            domain,
            values: vec![one; sigma.reflection_count()],
        }
    }

    pub fn sigma(&self) -> &Involution {
        &self.sigma
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Every coordinate `f(y_{it})`, zeros included.
    pub fn coordinates(&self) -> BTreeMap<Root, Scalar> {
        let mut map: BTreeMap<Root, Scalar> = Root::all(self.sigma.n())
            .map(|r| (r, Scalar::zero_in(self.domain)))
            .collect();
        for (xi, v) in self.sigma.decompose().into_iter().zip(&self.values) {
            map.insert(xi, v.clone());
        }
        map
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    Q,
    D,
}

/// One generator of the ideal: `poly − expected`, where `expected` is zero
/// for `Q_{i,t}` and `D_m(f)` for `D_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// The `M`-root `(i,t)` for `Q`, the transposition root `ξ_m` for `D`.
    pub root: Root,
    /// `m` for `D`-generators.
    pub m: Option<usize>,
    pub poly: Poly,
    pub expected: Scalar,
}

impl Generator {
    pub fn label(&self) -> String {
        match self.kind {
            GeneratorKind::Q => format!("Q[{},{}]", self.root.i, self.root.j),
            GeneratorKind::D => format!("D{}", self.m.unwrap_or_default()),
        }
    }

    /// `poly(point) − expected`.
    pub fn residual(&self, point: &BTreeMap<Root, Scalar>) -> Result<Scalar, IdealError> {
        Ok(self.poly.eval(point)?.sub(&self.expected)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub sigma: Involution,
    pub dim: usize,
    pub generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn q_generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().filter(|g| g.kind == GeneratorKind::Q)
    }

    pub fn d_generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().filter(|g| g.kind == GeneratorKind::D)
    }

    /// Adds 1 to the expected value of the first generator. Only useful for
    /// exercising failure paths.
    pub fn perturb_first_constant(&mut self) {
        if let Some(g) = self.generators.first_mut() {
            let one = Scalar::from_rational_in(&BigRational::one(), g.expected.domain()).expect("1 exists");
            g.expected = g.expected.add(&one).expect("same domain");
        }
    }

    pub fn to_json(&self) -> GeneratorSetJson {
        GeneratorSetJson {
            n: self.n(),
            sigma: self.sigma.to_string(),
            dim: self.dim,
            generators: self
                .generators
                .iter()
                .map(|g| match g.kind {
                    GeneratorKind::Q => GeneratorJson::Q {
                        row: g.root.i,
                        col: g.root.j,
                        poly: g.poly.to_string(),
                    },
                    GeneratorKind::D => GeneratorJson::D {
                        m: g.m.unwrap_or_default(),
                        poly: g.poly.to_string(),
                        value: g.expected.to_string(),
                    },
                })
                .collect(),
        }
    }
}

/// Wire form of a [`GeneratorSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSetJson {
    pub n: usize,
    pub sigma: String,
    pub dim: usize,
    pub generators: Vec<GeneratorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GeneratorJson {
    D { m: usize, poly: String, value: String },
    Q { row: usize, col: usize, poly: String },
}

fn q_poly_in(sigma: &Involution, diagram: &AdmissibleDiagram, eta: Root) -> Result<Poly, IdealError> {
    let info = mroot_info(sigma, diagram, eta)?;
    let d = dkt_tau(sigma, info.k, eta.j)?;
    Ok(d.coeff(usize::from(info.mtype)))
}

/// `Q_{i,t}` for `η = ε_t − ε_i ∈ M`: with `k = σ_{t−1}(i)`, the coefficient
/// `P_{k,t,0}` of `D_{k,t}(τ)` in type 0 and `P_{k,t,1}` in type 1.
pub fn q_poly(sigma: &Involution, eta: Root) -> Result<Poly, IdealError> {
    q_poly_in(sigma, &classify(sigma), eta)
}

/// `D_m = D_{i(ξ_m), j(ξ_m)}`, 1-based `m`.
pub fn d_poly(sigma: &Involution, m: usize) -> Result<Poly, IdealError> {
    let roots = sigma.decompose();
    let xi = m
        .checked_sub(1)
        .and_then(|k| roots.get(k))
        .ok_or(IdealError::IndexOutOfRange { m, s: roots.len() })?;
    Ok(dkt_minor(sigma, xi.i, xi.j)?)
}

/// All generators: `Q`'s sorted by `(t, i)`, then `D_m − D_m(f)` by `m`.
pub fn generator_set(f: &XSigmaPoint) -> Result<GeneratorSet, IdealError> {
    let sigma = f.sigma();
    let diagram = classify(sigma);
    let point = f.coordinates();
    let zero = Scalar::zero_in(f.domain());

    let q: Vec<Generator> = diagram
        .roots_of(RootClass::Mdot)
        .into_par_iter()
        .map(|eta| {
            Ok(Generator {
                kind: GeneratorKind::Q,
                root: eta,
                m: None,
                poly: q_poly_in(sigma, &diagram, eta)?,
                expected: zero.clone(),
            })
        })
        .collect::<Result<_, IdealError>>()?;

    let mut generators = q;
    for (idx, xi) in sigma.decompose().into_iter().enumerate() {
        let poly = d_poly(sigma, idx + 1)?;
        let expected = poly.eval(&point)?;
        generators.push(Generator {
            kind: GeneratorKind::D,
            root: xi,
            m: Some(idx + 1),
            poly,
            expected,
        });
    }
    Ok(GeneratorSet {
        sigma: sigma.clone(),
        dim: orbit_dim(sigma),
        generators,
    })
}

/// The subalgebra `𝔭_σ` spanned by `y_{it}` for `ε_t − ε_i ∈ Π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub n: usize,
    pub basis: BTreeSet<Root>,
}

pub fn polarization(sigma: &Involution) -> Polarization {
    Polarization {
        n: sigma.n(),
        basis: classify(sigma).pi(),
    }
}

impl Polarization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.n * (self.n - 1) / 2 - self.dim()
    }

    /// `γ, γ′ ∈ Π` and `γ + γ′ ∈ Δ⁺` imply `γ + γ′ ∈ Π`.
    pub fn is_subalgebra(&self) -> bool {
        self.pairs().all(|(a, b)| a.add(b).is_none_or(|sum| self.basis.contains(&sum)))
    }

    /// `(Π + Π) ∩ S = ∅`, so `f([𝔭, 𝔭]) = 0` for every `f ∈ X_σ`.
    pub fn is_isotropic(&self, sigma: &Involution) -> bool {
        let s: BTreeSet<Root> = sigma.decompose().into_iter().collect();
        self.pairs().all(|(a, b)| a.add(b).is_none_or(|sum| !s.contains(&sum)))
    }

    fn pairs(&self) -> impl Iterator<Item = (Root, Root)> + '_ {
        self.basis
            .iter()
            .flat_map(move |&a| self.basis.iter().map(move |&b| (a, b)))
    }
}

/// `dim Ω(f) = l(σ) − s(σ)`.
pub fn orbit_dim(sigma: &Involution) -> usize {
    sigma.length() - sigma.reflection_count()
}

/// `|Δ⁺| − |M| − |S|`.
pub fn orbit_dim_by_classes(diagram: &AdmissibleDiagram) -> usize {
    let n = diagram.n();
    n * (n - 1) / 2 - diagram.count(RootClass::Mdot) - diagram.count(RootClass::Scross)
}

/// `2|C₋|`.
pub fn orbit_dim_by_cminus(diagram: &AdmissibleDiagram) -> usize {
    2 * diagram.count(RootClass::Cminus)
}

/// Number of squares carrying `+` or `−`.
pub fn signed_square_count(diagram: &AdmissibleDiagram) -> usize {
    diagram.count(RootClass::Cplus) + diagram.count(RootClass::Cminus)
}

/// `dim 𝔫^f = dim 𝔫 − dim Ω(f)`.
pub fn stabilizer_dim(sigma: &Involution) -> usize {
    let n = sigma.n();
    n * (n - 1) / 2 - orbit_dim(sigma)
}
