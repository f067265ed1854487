use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lieco",
    version,
    about = "Lie algebra cohomology, pseudo-extensions and coadjoint orbits",
    long_about = "Lie algebra cohomology, pseudo-extensions and coadjoint orbits.\n\n\
        ALGEBRA arguments are paths to algebra files or catalog names \
        (abelian2, heisenberg1, galilei11, poincare11, su2, sl2r).\n\
        Exit codes: 0 success, 1 definite negative verdict, 2 input error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct Deform {
    /// Cocycle file (`cocycle A B = c` lines) or a catalog cocycle name.
    #[arg(long, value_name = "FILE|NAME")]
    pub cocycle: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Search {
    /// Residual threshold for an Equivalent verdict.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed for restart points. Falls back to LIECO_SEED, then 42.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of optimizer restarts.
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    /// Residual evaluations allowed per restart.
    #[arg(long, default_value_t = 2000)]
    pub budget: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an algebra and check antisymmetry and the Jacobi identity.
    Validate {
        algebra: String,
        #[command(flatten)]
        output: Output,
    },
    /// Dimensions and bases of Z², B² and H²; with --cocycle, its class.
    H2 {
        algebra: String,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        output: Output,
    },
    /// Central extension by a 2-cocycle.
    Extend {
        algebra: String,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        output: Output,
    },
    /// Pseudo-extension by the coboundary of a functional.
    PseudoExtend {
        algebra: String,
        /// Functional λ⁰ as comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        l0: String,
        #[command(flatten)]
        output: Output,
    },
    /// Basis change removing the central terms of a trivial extension.
    Trivialize {
        algebra: String,
        /// Functional λ⁰ generating a pseudo-extension.
        #[arg(long, allow_hyphen_values = true)]
        l0: Option<String>,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        output: Output,
    },
    /// Presymplectic matrix Ω(λ⁰) + Γ, its rank and a Darboux basis.
    Omega {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        l0: String,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        output: Output,
    },
    /// Kernel of the presymplectic form.
    CharSub {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        l0: String,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        output: Output,
    },
    /// Is ν on the (deformed) coadjoint orbit of μ?
    Orbit {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Do two gradients λ⁰ define the same pseudo-cohomology class?
    PseudoClass {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        l0: String,
        #[arg(long, allow_hyphen_values = true)]
        l0b: String,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Check that h = exp(t₁X₁)···exp(tₙXₙ) carries λ⁰b to λ⁰ and pulls back Ω.
    WitnessCheck {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        l0: String,
        #[arg(long, allow_hyphen_values = true)]
        l0b: String,
        /// Exponential coordinates t₁…tₙ as comma-separated floats.
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        #[command(flatten)]
        deform: Deform,
        /// Residual threshold.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Integrality of λ⁰ along the compact directions of a catalog group.
    Integrality {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        l0: String,
        #[command(flatten)]
        output: Output,
    },
    /// Inönü-Wigner contraction with respect to a subalgebra.
    Contract {
        algebra: String,
        /// Subalgebra generators, comma-separated.
        #[arg(long, value_name = "NAMES")]
        sub: String,
        /// Cocycle entries scale as ε^(w_i + w_j - scale).
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        scale: i32,
        /// Functional whose coboundary is contracted.
        #[arg(long, allow_hyphen_values = true)]
        l0: Option<String>,
        #[command(flatten)]
        deform: Deform,
        #[command(flatten)]
        output: Output,
    },
    /// Sampled checks of a catalog realization and its cocycles.
    GroupVerify {
        algebra: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// List catalog realizations, or describe one.
    Catalog {
        name: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

impl Command {
    pub fn format(&self) -> Format {
        match self {
            Command::Validate { output, .. }
            | Command::H2 { output, .. }
            | Command::Extend { output, .. }
            | Command::PseudoExtend { output, .. }
            | Command::Trivialize { output, .. }
            | Command::Omega { output, .. }
            | Command::CharSub { output, .. }
            | Command::Orbit { output, .. }
            | Command::PseudoClass { output, .. }
            | Command::WitnessCheck { output, .. }
            | Command::Integrality { output, .. }
            | Command::Contract { output, .. }
            | Command::GroupVerify { output, .. }
            | Command::Catalog { output, .. } => output.format,
        }
    }
}
