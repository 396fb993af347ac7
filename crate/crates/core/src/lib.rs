//! Coadjoint orbits of the unitriangular group attached to involutions:
//! root classification and admissible diagrams, exact symbolic minors,
//! generators of the defining ideal, and finite-field orbit checks.

pub mod algebra;
pub mod diagram;
pub mod ideal;
pub mod involution;
pub mod minors;
pub mod orbit;
