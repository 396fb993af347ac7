use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::point::{check_prime, coord_index, scalar_to_fp};
use super::{coadjoint, orbit_enumerate, FFPoint, GroupElement, OrbitError, DEFAULT_LIMIT};
use crate::algebra::{FpPoly, Scalar};
use crate::ideal::{generator_set, xsigma_point, GeneratorKind, GeneratorSet, XSigmaPoint};
use crate::involution::{Involution, Root};

pub const CAVEAT: &str = "finite-field check: tests set-theoretic vanishing over F_p; \
the underlying theorems are stated in characteristic zero";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub limit: usize,
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            limit: DEFAULT_LIMIT,
            seed: 0,
            samples: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorVerdict {
    pub label: String,
    pub kind: GeneratorKind,
    pub poly: String,
    /// Value the generator must take on the whole orbit.
    pub expected: u32,
    /// Orbit points where it takes a different value.
    pub failures: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub n: usize,
    pub sigma: String,
    pub p: u32,
    pub values: Vec<u32>,
    pub dim: usize,
    pub orbit_size: u64,
    pub expected_size: u64,
    pub size_matches: bool,
    pub size_is_power_of_p: bool,
    pub generators: Vec<GeneratorVerdict>,
    /// Orbit points supported exactly on the transposition roots.
    pub xsigma_hits: u64,
    pub xsigma_is_f: bool,
    pub seed: u64,
    pub samples: usize,
    pub sample_mismatches: u64,
    pub elapsed_ms: u64,
    pub caveat: String,
    pub passed: bool,
}

impl OrbitReport {
    pub fn summary_line(&self) -> String {
        let sigma = if self.sigma.is_empty() { "id" } else { &self.sigma };
        format!(
            "n={} sigma={} p={} dim={} orbit={} expected={} generators={}/{} xsigma={} samples={}/{} {}",
            self.n,
            sigma,
            self.p,
            self.dim,
            self.orbit_size,
            self.expected_size,
            self.generators.iter().filter(|g| g.holds).count(),
            self.generators.len(),
            self.xsigma_hits,
            self.samples as u64 - self.sample_mismatches.min(self.samples as u64),
            self.samples,
            if self.passed { "PASS" } else { "FAIL" },
        )
    }
}

/// Generator values at `g·f` compared with those at `f` for seeded random `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub seed: u64,
    pub samples: usize,
    /// Samples where at least one generator changed value.
    pub mismatches: u64,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

struct Compiled {
    poly: FpPoly,
    expected: u32,
}

fn compile(set: &GeneratorSet, p: u32) -> Result<Vec<Compiled>, OrbitError> {
    set.generators
        .iter()
        .map(|g| {
            Ok(Compiled {
                poly: g.poly.compile_fp(p, |v| coord_index(v.i, v.j))?,
                expected: scalar_to_fp(&g.expected, p)?,
            })
        })
        .collect()
}

fn sample_mismatches(compiled: &[Compiled], f: &FFPoint, seed: u64, samples: usize) -> Result<u64, OrbitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let at_f: Vec<u32> = compiled.iter().map(|c| c.poly.eval(f.coords())).collect();
    let mut mismatches = 0;
    for _ in 0..samples {
        let g = GroupElement::random(f.n(), f.p(), &mut rng);
        let image = coadjoint(&g, f)?;
        if compiled.iter().zip(&at_f).any(|(c, &v)| c.poly.eval(image.coords()) != v) {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

/// Checks that every generator keeps its value at `f` along `samples`
/// random images `g·f`, without enumerating the orbit.
pub fn check_invariance(
    set: &GeneratorSet,
    f: &FFPoint,
    seed: u64,
    samples: usize,
) -> Result<InvarianceReport, OrbitError> {
    let compiled = compile(set, f.p())?;
    Ok(InvarianceReport {
        seed,
        samples,
        mismatches: sample_mismatches(&compiled, f, seed, samples)?,
    })
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x % p == 0 {
        x /= p;
    }
    x == 1
}

/// Builds `f ∈ X_σ` from `values` over `F_p` and runs [`verify_generators`]
/// on the generator set of `f`.
pub fn verify(sigma: &Involution, p: u32, values: &[i64], opts: &VerifyOptions) -> Result<OrbitReport, OrbitError> {
    check_prime(p)?;
    let scalars = values
        .iter()
        .map(|&v| Scalar::fp(v, p))
        .collect::<Result<Vec<_>, _>>()?;
    let f = xsigma_point(sigma, scalars)?;
    let set = generator_set(&f)?;
    verify_generators(&f, &set, p, opts)
}

/// Enumerates `Ω(f)` over `F_p` and checks, against the given generators:
/// (a) `|Ω| = p^dim`; (b) each `Q` vanishes on `Ω`; (c) each `D_m` equals
/// `D_m(f)` on `Ω`; (d) `f` is the only point of `Ω` in `X_σ`; (e) generator
/// values are unchanged at seeded random images `g·f`.
pub fn verify_generators(
    f: &XSigmaPoint,
    set: &GeneratorSet,
    p: u32,
    opts: &VerifyOptions,
) -> Result<OrbitReport, OrbitError> {
    let start = Instant::now();
    let sigma = f.sigma();
    let expected_size = u64::from(p)
        .checked_pow(set.dim as u32)
        .filter(|&size| size <= opts.limit as u64)
        .ok_or(OrbitError::LimitExceeded { limit: opts.limit })?;
    let point = FFPoint::from_xsigma(f, p)?;
    let orbit = orbit_enumerate(&point, opts.limit)?;
    let compiled = compile(set, p)?;

    let generators: Vec<GeneratorVerdict> = set
        .generators
        .par_iter()
        .zip(compiled.par_iter())
        .map(|(g, c)| {
            let failures = orbit
                .points()
                .iter()
                .filter(|x| c.poly.eval(x.coords()) != c.expected)
                .count() as u64;
            GeneratorVerdict {
                label: g.label(),
                kind: g.kind,
                poly: g.poly.to_string(),
                expected: c.expected,
                failures,
                holds: failures == 0,
            }
        })
        .collect();

    let s_roots: BTreeSet<Root> = sigma.decompose().into_iter().collect();
    let hits: Vec<&FFPoint> = orbit
        .points()
        .iter()
        .filter(|x| x.support().into_iter().collect::<BTreeSet<_>>() == s_roots)
        .collect();
    let xsigma_is_f = hits.len() == 1 && *hits[0] == point;

    let sample_mismatches = sample_mismatches(&compiled, &point, opts.seed, opts.samples)?;

    let orbit_size = orbit.len() as u64;
    let size_matches = orbit_size == expected_size;
    let size_is_power_of_p = is_power_of(orbit_size, u64::from(p));
    let passed = size_matches
        && size_is_power_of_p
        && generators.iter().all(|g| g.holds)
        && xsigma_is_f
        && sample_mismatches == 0;
    Ok(OrbitReport {
        n: sigma.n(),
        sigma: sigma.to_string(),
        p,
        values: f
            .values()
            .iter()
            .map(|v| scalar_to_fp(v, p))
            .collect::<Result<_, _>>()?,
        dim: set.dim,
        orbit_size,
        expected_size,
        size_matches,
        size_is_power_of_p,
        generators,
        xsigma_hits: hits.len() as u64,
        xsigma_is_f,
        seed: opts.seed,
        samples: opts.samples,
        sample_mismatches,
        elapsed_ms: start.elapsed().as_millis() as u64,
        caveat: CAVEAT.to_string(),
        passed,
    })
}

/// Largest `n` allowed by [`survey`] for the prime `p`.
pub fn survey_max_n(p: u32) -> Option<usize> {
    match p {
        2 => Some(6),
        3 => Some(5),
        5 => Some(4),
        _ => None,
    }
}

/// [`verify`] with unit values on every involution of `S_n`.
pub fn survey(n: usize, p: u32, opts: &VerifyOptions) -> Result<Vec<OrbitReport>, OrbitError> {
    check_prime(p)?;
    if survey_max_n(p).is_none_or(|max| n > max) {
        return Err(OrbitError::Guard { n, p });
    }
    Involution::all(n)
        .iter()
        .map(|sigma| verify(sigma, p, &vec![1; sigma.reflection_count()], opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Domain;

    fn inv(text: &str, n: usize) -> Involution {
        Involution::parse(text, n).unwrap()
    }

    #[test]
    fn identity_report() {
        let r = verify(&Involution::identity(4), 2, &[], &VerifyOptions::default()).unwrap();
        assert_eq!(r.orbit_size, 1);
        assert!(r.passed);
        assert_eq!(r.generators.len(), 6);
        assert!(r.generators.iter().all(|g| g.kind == GeneratorKind::Q && g.holds));
    }

    #[test]
    fn transposition_reports() {
        let r = verify(&inv("(1,3)", 3), 3, &[1], &VerifyOptions::default()).unwrap();
        assert_eq!(r.orbit_size, 9);
        assert!(r.passed, "{r:?}");
        let r = verify(&inv("(1,3)", 3), 2, &[1], &VerifyOptions::default()).unwrap();
        assert_eq!(r.orbit_size, 4);
        assert!(r.passed);
    }

    #[test]
    fn example1_over_f2() {
        let r = verify(&inv("(1,4)(2,7)(3,6)", 7), 2, &[1, 1, 1], &VerifyOptions::default()).unwrap();
        assert_eq!(r.orbit_size, 4096);
        assert_eq!(r.generators.len(), 9);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn bad_inputs() {
        let s = inv("(1,3)", 3);
        assert!(matches!(verify(&s, 3, &[3], &VerifyOptions::default()), Err(OrbitError::Ideal(_))));
        assert_eq!(verify(&s, 4, &[1], &VerifyOptions::default()), Err(OrbitError::NotPrime(4)));
        let opts = VerifyOptions { limit: 3, ..VerifyOptions::default() };
        assert_eq!(verify(&s, 2, &[1], &opts), Err(OrbitError::LimitExceeded { limit: 3 }));
        assert_eq!(survey(7, 2, &VerifyOptions::default()), Err(OrbitError::Guard { n: 7, p: 2 }));
        assert_eq!(survey(3, 7, &VerifyOptions::default()), Err(OrbitError::Guard { n: 3, p: 7 }));
    }

    #[test]
    fn tampered_generators_fail() {
        let s = inv("(1,4)(2,7)(3,6)", 7);
        let f = XSigmaPoint::unit(&s, Domain::Fp(2));
        let mut set = generator_set(&f).unwrap();
        set.perturb_first_constant();
        let r = verify_generators(&f, &set, 2, &VerifyOptions::default()).unwrap();
        assert!(!r.passed);
        assert!(!r.generators[0].holds);
        assert_eq!(r.generators[0].failures, 4096);
        assert!(r.sample_mismatches == 0);
    }

    #[test]
    fn survey_counts() {
        for (n, count) in [(3, 4), (4, 10)] {
            let reports = survey(n, 2, &VerifyOptions::default()).unwrap();
            assert_eq!(reports.len(), count);
            assert!(reports.iter().all(|r| r.passed));
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = verify(&inv("(1,3)", 3), 2, &[1], &VerifyOptions::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: OrbitReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(r.summary_line().ends_with("PASS"));
    }
}
