use std::collections::HashSet;

use rayon::prelude::*;

use super::{FFPoint, OrbitError};

/// An enumerated orbit, sorted by packed coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    points: Vec<FFPoint>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FFPoint] {
        &self.points
    }

    pub fn contains(&self, f: &FFPoint) -> bool {
        self.points.binary_search(f).is_ok()
    }
}

fn neighbours(f: &FFPoint) -> impl Iterator<Item = FFPoint> + '_ {
    (1..f.n()).flat_map(move |q| (1..f.p()).map(move |c| f.transvect(q, c)))
}

fn finish(seen: HashSet<FFPoint>) -> Orbit {
    let mut points: Vec<FFPoint> = seen.into_iter().collect();
    points.sort_unstable();
    Orbit { points }
}

/// Breadth-first closure of `{f}` under the simple-root transvections
/// `I + c·e_{q+1,q}`, which generate `UT(n, F_p)`. Frontier levels are
/// expanded in parallel; the result does not depend on scheduling.
pub fn orbit_enumerate(f: &FFPoint, limit: usize) -> Result<Orbit, OrbitError> {
    let mut seen: HashSet<FFPoint> = HashSet::from([f.clone()]);
    let mut frontier = vec![f.clone()];
    while !frontier.is_empty() {
        let candidates: Vec<FFPoint> = frontier.par_iter().flat_map_iter(neighbours).collect();
        frontier = Vec::new();
        for g in candidates {
            if !seen.contains(&g) {
                if seen.len() == limit {
                    return Err(OrbitError::LimitExceeded { limit });
                }
                seen.insert(g.clone());
                frontier.push(g);
            }
        }
    }
    Ok(finish(seen))
}

/// Single-threaded reference for [`orbit_enumerate`].
pub fn orbit_enumerate_sequential(f: &FFPoint, limit: usize) -> Result<Orbit, OrbitError> {
    let mut seen: HashSet<FFPoint> = HashSet::from([f.clone()]);
    let mut queue = std::collections::VecDeque::from([f.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in neighbours(&x) {
            if !seen.contains(&g) {
                if seen.len() == limit {
                    return Err(OrbitError::LimitExceeded { limit });
                }
                seen.insert(g.clone());
                queue.push_back(g);
            }
        }
    }
    Ok(finish(seen))
}
