//! Exact polyhedra: LP feasibility, relative interiors, Fourier–Motzkin
//! projection, double description, complements and complexes.

mod complex;
mod fm;
mod hpoly;
pub mod lp;
mod vrep;

pub use complex::{
    canonical_direction, complement_pieces, complement_within, contained_in_complex, fan_stats, overlay, refine,
    same_support, weak_rows, Containment, FanStats, Orbit, PolyComplex,
};
pub use fm::fm_project;
pub use hpoly::{Constraint, HPolyhedron, Rel, Relint};
pub use vrep::{h_to_v, hv_convert, primitive, v_to_h, VPolyhedron};
