//! Regular-singular ODEs in `θ` and their Frobenius series solutions.

mod ode;
mod roots;
mod scalar;
mod solve;
mod suite;

pub use ode::{apply_ode, RegularSingularODE};
pub use roots::{durand_kerner, polynomial_roots, IndicialRoot};
pub use solve::{
    frobenius_solve, indicial_roots, solve_inhomogeneous, ExponentClass, FrobeniusBasis,
    NumericSolution, Solution, SolutionMarker, NUMERIC_CLASS_FLAG,
};
pub use suite::{run_case, standard_suite, SuiteCase};
