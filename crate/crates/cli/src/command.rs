//! Command-line surface. [`CommandSpec::to_args`] prints a parsed command
//! back to arguments that parse to the same value.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(
    name = "kummer-lab",
    version,
    about = "Natural automorphisms of generalized Kummer varieties: freeness, Lefschetz numbers, Enriques quotients"
)]
pub struct CommandSpec {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

/// `t_a ∘ h` on `E × E`.
#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct AutoArgs {
    /// gaussian, eisenstein or integer.
    #[arg(long, default_value = "integer")]
    pub ring: String,
    /// Linear part, e.g. "[[z,0],[0,1]]".
    #[arg(long)]
    pub h: String,
    /// Translation, e.g. "(1/3,1/3)".
    #[arg(long, default_value = "(0,0)")]
    pub a: String,
}

/// A linear action on `H¹(A, Z)`: either `--h` over `--ring`, or an explicit
/// integer `--matrix`.
#[derive(Clone, Debug, PartialEq, Eq, Args)]
pub struct MapArgs {
    #[arg(long, default_value = "integer")]
    pub ring: String,
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    pub h: Option<String>,
    /// Accepted for symmetry with the other commands; does not enter.
    #[arg(long, conflicts_with = "matrix")]
    pub a: Option<String>,
    /// Square integer matrix, e.g. "[[0,0,0,-1],[1,0,0,-1],[0,1,0,-1],[0,0,1,-1]]".
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Lefschetz number of the induced automorphism of K_n(A).
    Lefschetz {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        n: u32,
    },
    /// Does the cyclic group generated by the automorphism act freely on K_n(A)?
    Freeness {
        #[command(flatten)]
        auto: AutoArgs,
        #[arg(long)]
        n: u32,
        /// Cross-check against a brute-force search over points of level at most this.
        #[arg(long)]
        level: Option<u32>,
    },
    /// Invariant characters of the n-torsion, by order.
    Characters {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        n: u32,
    },
    /// Enriques / weak Enriques verdict for a free cyclic quotient.
    Classify {
        #[arg(long)]
        n: u32,
        /// Group order; omit to derive it from --h/--a after a freeness check.
        #[arg(long, conflicts_with = "h", required_unless_present = "h")]
        d: Option<u32>,
        #[arg(long, default_value = "integer")]
        ring: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, requires = "h")]
        a: Option<String>,
    },
    /// Product decompositions with given dimension and holomorphic Euler characteristic.
    Decompose {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        chi: u32,
    },
    /// Sweep (h, a) pairs for free actions.
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ring: String,
        /// Translations are taken from A[gcd(n, level)]; at most 24.
        #[arg(long)]
        level: u32,
        /// Largest norm of a matrix entry; at most 4.
        #[arg(long, default_value_t = 1)]
        max_norm: u32,
        /// Search only this linear part.
        #[arg(long)]
        h: Option<String>,
        /// Decide every candidate, without the multiplier-order shortcut.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Recompute every published value and compare.
    VerifyPaper,
}

fn push(out: &mut Vec<String>, flag: &str, value: impl ToString) {
    out.push(format!("--{flag}"));
    out.push(value.to_string());
}

fn push_opt(out: &mut Vec<String>, flag: &str, value: &Option<impl ToString>) {
    if let Some(v) = value {
        push(out, flag, v.to_string());
    }
}

impl CommandSpec {
    /// Arguments (without the program name) that parse back to `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = Vec::new();
        push(&mut out, "format", self.format.as_str());
        match &self.command {
            Command::Lefschetz { map, n } | Command::Characters { map, n } => {
                let name = if matches!(self.command, Command::Lefschetz { .. }) { "lefschetz" } else { "characters" };
                out.push(name.into());
                push(&mut out, "ring", &map.ring);
                push_opt(&mut out, "h", &map.h);
                push_opt(&mut out, "a", &map.a);
                push_opt(&mut out, "matrix", &map.matrix);
                push(&mut out, "n", n);
            }
            Command::Freeness { auto, n, level } => {
                out.push("freeness".into());
                push(&mut out, "ring", &auto.ring);
                push(&mut out, "h", &auto.h);
                push(&mut out, "a", &auto.a);
                push(&mut out, "n", n);
                push_opt(&mut out, "level", level);
            }
            Command::Classify { n, d, ring, h, a } => {
                out.push("classify".into());
                push(&mut out, "n", n);
                push_opt(&mut out, "d", d);
                push(&mut out, "ring", ring);
                push_opt(&mut out, "h", h);
                push_opt(&mut out, "a", a);
            }
            Command::Decompose { dim, chi } => {
                out.push("decompose".into());
                push(&mut out, "dim", dim);
                push(&mut out, "chi", chi);
            }
            Command::Search { n, ring, level, max_norm, h, exhaustive } => {
                out.push("search".into());
                push(&mut out, "n", n);
                push(&mut out, "ring", ring);
                push(&mut out, "level", level);
                push(&mut out, "max-norm", max_norm);
                push_opt(&mut out, "h", h);
                if *exhaustive {
                    out.push("--exhaustive".into());
                }
            }
            Command::VerifyPaper => out.push("verify-paper".into()),
        }
        out
    }
}
