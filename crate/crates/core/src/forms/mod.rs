//! Named functions: Bernoulli polynomials, Eisenstein series, the twisted
//! series `Q_k` and `P̄_k`, Klein and Hecke forms, Zhu coefficients and the
//! numeric evaluators for `℘₁`, `G₂`, `P_λ` and `P_k`.

mod bernoulli;
mod eisenstein;
mod klein;
mod numeric;
mod pbar;
mod qk;
mod zhu;

pub use bernoulli::{
    bernoulli_identities_check, bernoulli_numbers, bernoulli_poly, bernoulli_value, BernoulliPoly,
};
pub use eisenstein::{del_k, eisenstein, sigma};
pub use klein::{hecke_series, klein_hecke_series, klein_log_derivative, klein_series};
pub use numeric::{
    g2_eval, pk_eval, pk_eval_continued, plambda_eval, prop44_expected, prop44_sum, wp1_eval,
    SumControl,
};
pub use pbar::{pbar_series, residue_identity, ResidueIdentity};
pub use qk::{qk_series, qk_series_rep, QK_DENOMINATOR_FLAG};
pub use zhu::{zhu_coeff, zhu_coeff_binomial};
