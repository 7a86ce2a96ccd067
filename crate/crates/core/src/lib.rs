//! Exact computations of ramification data: polynomial maps of the
//! projective line, Iversen's formula for surface covers, and
//! Hasse–Herbrand functions of totally ramified p-adic extensions.

pub mod algebra;
pub mod chi_ring;
pub mod curve_ram;
pub mod local_ram;
pub mod place;
pub mod surface_rh;
