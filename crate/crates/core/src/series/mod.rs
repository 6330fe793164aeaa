//! Truncated Puiseux series, log-series, two-variable expansions, infinite
//! products and numeric evaluation.

mod biseries;
mod eval;
mod json;
mod logseries;
mod product;
mod puiseux;

pub use biseries::{span_len, BiSeries, Iota, Laurent2, TailBound, Var, Window};
pub use eval::{eval_log_series, eval_puiseux, qx, Evaluation, NumericSeries};
pub use logseries::LogQSeries;
pub use product::{divisor_sums, product_coefficients, product_expand};
pub use puiseux::{Puiseux, ThetaScale, KARATSUBA_THRESHOLD};
