//! Eta quotients, `j`, hauptmoduln and weight-4 moonshine identities.

mod checks;
mod data;
mod series;

pub use checks::{exact_checks, modularity_checks, moonshine_checks, MODULARITY_TOL};
pub use data::{HauptmodulSpec, MoonshineData};
pub use series::{
    char_solve, default_combos, delta_j_j, e4_standard, hauptmodul, hauptmodul_for, theta_trace,
    theta_trace_in, twisted_weight4, twisted_weight4_in, weight2_coefficient, weight4_onepoint,
    CharacterData,
};
