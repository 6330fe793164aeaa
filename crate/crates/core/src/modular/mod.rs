//! `SL(2,Z)` matrices, the right action on torsion pairs, slash actions and
//! the numeric transformation-law harness.

mod gamma;
mod harness;
mod pair;
mod slash;

pub use gamma::{act_exponents, reduce_cyclic_pair, GammaMat};
pub use harness::{
    default_tau_grid, default_z, format_complex, parse_complex, qk_numeric, verify_law, Law,
    LawParams, PK_CONTINUATION_FLAG, PLAMBDA_FLAG,
};
pub use pair::TorsionPair;
pub use slash::{slash_eval, slash_eval_jacobi};
