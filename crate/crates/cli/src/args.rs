use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "orbiform",
    version,
    about = "Exact q-series, twisted Eisenstein forms and modularity checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Exponent bound (in q) for exact series, a positive rational.
    #[arg(long, global = true, default_value = "60")]
    pub trunc: String,
    /// Tolerance for numeric checks, positive.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Moonshine data file (overrides ORBIFORM_DATA).
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bernoulli polynomial B_k, optionally evaluated at a rational x.
    Bernoulli { k: usize, x: Option<String> },
    /// Eisenstein series of even weight k >= 2.
    Eisenstein { k: i64 },
    /// Twisted Eisenstein series Q_k(μ, λ) for μ = e^{2πi j/M}, λ = e^{2πi l/N}.
    Qk {
        k: u32,
        j_over_m: String,
        l_over_n: String,
    },
    /// Numeric value of P_k(μ, λ, z, τ).
    PkEval {
        k: u32,
        j_over_m: String,
        l_over_n: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Starting number of terms on each side.
        #[arg(long, default_value_t = 32)]
        cutoff: usize,
    },
    /// Coefficient c(p, i, m) by both expansions.
    ZhuCoeff {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        i: u32,
        m: u32,
    },
    /// Check a transformation law, or the whole batch with `--suite all`.
    Verify(VerifyArgs),
    /// Frobenius basis of a regular-singular ODE read from JSON.
    Frobenius {
        #[arg(long)]
        ode: PathBuf,
        /// Forcing term f (a log-series JSON) for L S + f = 0.
        #[arg(long)]
        forcing: Option<PathBuf>,
    },
    /// Moonshine series and identities.
    Moonshine {
        #[command(subcommand)]
        what: MoonshineCmd,
    },
    /// Torsion pair utilities.
    Pairs {
        #[command(subcommand)]
        what: PairsCmd,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Law identifier: P_invariance, P_derivative, Q_modularity, G2_quasimodular, wp1_laws, Plambda_lemma, klein_hecke or delk_commutes.
    pub law: Option<String>,
    /// Run a named batch; only `all` exists.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// `j/M,l/N`.
    #[arg(long, default_value = "1/2,1/3")]
    pub pair: String,
    /// `S`, `T`, a word such as `ST`, or `a,b,c,d`.
    #[arg(long, default_value = "S", allow_hyphen_values = true)]
    pub gamma: String,
    /// Fixed z (default: a point inside the strip for each τ).
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Comma-separated τ grid, e.g. `i,0.5+i`.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    /// Exact-series terms used for numeric evaluation.
    #[arg(long, default_value_t = 400)]
    pub terms: usize,
}

#[derive(Debug, Subcommand)]
pub enum MoonshineCmd {
    /// Δ, j and J.
    #[command(name = "J")]
    J,
    /// Hauptmodul T_g of a class in the data file.
    Hauptmodul { label: String },
    /// Z(v, τ) and the braces series.
    Weight4,
    /// Twisted weight-4 trace for 2B or 3B.
    Twisted4 { label: String },
    /// θ T_g.
    Theta { label: String },
    /// Character degrees solved from the braces series.
    Chars,
    /// Every exact and numeric moonshine gate.
    Check,
}

#[derive(Debug, Subcommand)]
pub enum PairsCmd {
    /// γ with (a, c)γ ≡ (0, e) mod n.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        c: i64,
        n: i64,
    },
    /// Orbit of (μ, λ) under SL(2, Z).
    Orbit { j_over_m: String, l_over_n: String },
}
