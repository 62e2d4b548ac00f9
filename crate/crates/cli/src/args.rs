use crate::report::Format;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "fsol", version, about = "Fundamental solutions on Heisenberg type groups: evaluation and verification runs")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Cmd {
    /// C_α, C̃_α, the Abel-limit constant and c_j^∓ for given n and α.
    Constants(Opts),
    /// Nf(τ, t) of a Gaussian test function.
    Ntransform(Opts),
    /// Eigen residuals of the spherical distributions for L and U.
    SpectralCheck(Opts),
    /// Truncated inversion at the identity, one row per K.
    Invert(Opts),
    /// ⟨Φ, g⟩ for a Gaussian g, corrected and literal.
    PairPhi(Opts),
    /// ⟨Φ, (L_α f)^∨⟩ = f(e) on N(p,q,ℂ) (or ℍ with --field quat).
    VerifyFsol(Opts),
    /// Radon inversion residual at five points and the duality gap.
    RadonCheck(Opts),
    /// c₀ variant resolution and ⟨Φ, (Lf)^∨⟩ = f(e) on N(p,q,ℍ).
    QuatVerify(Opts),
    /// Coefficient tables a_kl, b_kl, c_kl and the a+b discrepancy report.
    Coeffs(Opts),
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Constants(_) => "constants",
            Cmd::Ntransform(_) => "ntransform",
            Cmd::SpectralCheck(_) => "spectral-check",
            Cmd::Invert(_) => "invert",
            Cmd::PairPhi(_) => "pair-phi",
            Cmd::VerifyFsol(_) => "verify-fsol",
            Cmd::RadonCheck(_) => "radon-check",
            Cmd::QuatVerify(_) => "quat-verify",
            Cmd::Coeffs(_) => "coeffs",
        }
    }

    pub fn opts(&self) -> &Opts {
        match self {
            Cmd::Constants(o)
            | Cmd::Ntransform(o)
            | Cmd::SpectralCheck(o)
            | Cmd::Invert(o)
            | Cmd::PairPhi(o)
            | Cmd::VerifyFsol(o)
            | Cmd::RadonCheck(o)
            | Cmd::QuatVerify(o)
            | Cmd::Coeffs(o) => o,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Complex,
    Quat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridId {
    Coarse,
    Default,
    Fine,
}

/// A point given as comma separated reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(pub Vec<f64>);

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct Opts {
    #[arg(long, default_value_t = 1)]
    pub p: usize,
    #[arg(long, default_value_t = 1)]
    pub q: usize,
    #[arg(long, value_enum, default_value_t = FieldArg::Complex)]
    pub field: FieldArg,
    /// Dimension parameter of the constants and tables (default p+q, at least 2).
    #[arg(long)]
    pub n: Option<usize>,
    /// Restrict c_j^∓ to one j.
    #[arg(long)]
    pub j: Option<usize>,
    /// α as "re" or "re,im".
    #[arg(long, value_parser = parse_alpha, default_value = "0", allow_hyphen_values = true)]
    pub alpha: C,
    /// k-truncation: k runs over −(K−1)..=K−1.
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Spectral cutoff Λ (default 14√b).
    #[arg(long = "Lambda")]
    pub lambda: Option<f64>,
    #[arg(long, value_enum, default_value_t = GridId::Default)]
    pub grid: GridId,
    /// Tolerance gate; without it no record is gated.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Gaussian rate in v of the test function.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Gaussian rate in the center of the test function.
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    /// Center point for ntransform (default 0).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub t: Option<Point>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a real number"))?;
    if !x.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(x)
}

pub fn parse_alpha(s: &str) -> Result<C, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(C::new(parse_real(re)?, 0.0)),
        [re, im] => Ok(C::new(parse_real(re)?, parse_real(im)?)),
        _ => Err(format!("expected \"re\" or \"re,im\", got '{s}'")),
    }
}

pub fn parse_point(s: &str) -> Result<Point, String> {
    s.split(',').map(parse_real).collect::<Result<Vec<_>, _>>().map(Point)
}
