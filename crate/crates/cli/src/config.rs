//! Command-line configuration.
//!
//! [`RunConfig`] is both the clap parser and a serde type, so a run can be
//! recorded next to its reports and replayed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use repfn_core::partition::Variant;
use repfn_core::prefix::DEFAULT_CEILING;
use repfn_core::repfn::CounterKind;

#[derive(Debug, Clone, PartialEq, Parser, Serialize, Deserialize)]
#[command(name = "repfn", version, about = "Representation functions of complementary partitions of the nonnegative integers")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Report format; `scan` defaults to JSON, everything else to CSV.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Cap on worker threads for range computations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Largest admissible number of elements `x + 1` in any prefix or range.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    pub max_elements: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    R2,
    R3,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::R2 => Variant::R2,
            VariantArg::R3 => Variant::R3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CounterArg {
    R2,
    R3,
}

impl From<CounterArg> for CounterKind {
    fn from(v: CounterArg) -> Self {
        match v {
            CounterArg::R2 => CounterKind::R2,
            CounterArg::R3 => CounterKind::R3,
        }
    }
}

/// Which function `repfn` tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RangeArg {
    R2,
    R3,
    /// `R_{A, ℕ\A}`, ordered pairs.
    Cross,
}

/// The set under study: a partition given by variant, threshold and
/// initial segment, optionally corrupted afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Args, Serialize, Deserialize)]
pub struct SetArgs {
    /// Partition variant; presets pick their own default.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,

    /// Threshold N; required with a hex initial segment.
    #[arg(long = "N")]
    pub threshold: Option<u64>,

    /// `thue-morse`, `chen-wang`, or a little-endian hex bitmap of A ∩ [0, 2N-1].
    #[arg(long, default_value = "thue-morse")]
    pub initial: String,

    /// Invert membership of these integers after construction.
    #[arg(long, value_delimiter = ',')]
    pub flip: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Thue–Morse membership and binary digits for 0..=x.
    Tm {
        #[arg(long)]
        x: u64,
    },
    /// Tabulate R2, R3 or R_{A, ℕ\A} for 0..=x.
    Repfn {
        #[arg(long)]
        x: u64,
        #[arg(long, value_enum, default_value = "r2")]
        counter: RangeArg,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Build the partition on [0, x].
    Construct {
        #[arg(long)]
        x: u64,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Check R(A, n) = R(ℕ\A, n) on [2N-1, x] and the digit recurrence.
    Verify {
        #[arg(long)]
        x: u64,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Check m ∈ A ⇔ 2^i m + k ∈ A (k ∈ A0) and its negation (k ∈ B0).
    Lemma2 {
        #[arg(long, default_value_t = 256)]
        m_max: u64,
        #[arg(long, default_value_t = 8)]
        i_max: u32,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Check that every block [j 2^k, (j+1) 2^k) is a shifted copy of A0 or B0.
    Blocks {
        #[arg(long)]
        k: u32,
        /// Prefix bound; defaults to (2^k0 + 4) 2^k - 1.
        #[arg(long)]
        x: Option<u64>,
        #[command(flatten)]
        set: SetArgs,
    },
    /// S(n) decomposition for every n in [from, x] with f(n) >= 1.
    Sdecomp {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 1)]
        from: u64,
    },
    /// T(n) class counts and toggle checks for every n in [from, x].
    Tclasses {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 1)]
        from: u64,
    },
    /// Good-n fractions per dyadic window.
    Density {
        #[arg(long)]
        x: u64,
        /// Exponents θ; defaults to 0.005, 0.01, 0.0149.
        #[arg(long, value_delimiter = ',')]
        theta: Vec<f64>,
        /// O-constants C; defaults to 1, 2, 4, 8.
        #[arg(long = "C", value_delimiter = ',')]
        c: Vec<f64>,
        #[arg(long, value_enum, default_value = "r2")]
        counter: CounterArg,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Minimal and maximal R(A, n)/n per window.
    Scan {
        #[arg(long)]
        x: u64,
        /// Fixed window length; dyadic windows when absent.
        #[arg(long)]
        window_size: Option<u64>,
        #[arg(long, value_enum, default_value = "r2")]
        counter: CounterArg,
        /// Also assert R2(A0, 2^(2l+1) - 1) = 0 for l <= this value.
        #[arg(long)]
        allones: Option<u32>,
        #[command(flatten)]
        set: SetArgs,
    },
}

pub const DEFAULT_THETAS: [f64; 3] = [0.005, 0.010, 0.0149];
pub const DEFAULT_CS: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

impl RunConfig {
    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Scan { .. } => Format::Json,
            _ => Format::Csv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("repfn").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn round_trips_through_json() {
        let configs = [
            parse(&["verify", "--variant", "r2", "--N", "1", "--initial", "thue-morse", "--x", "4096"]),
            parse(&["density", "--x", "65536", "--theta", "0.01,0.005", "--C", "4"]),
            parse(&["scan", "--x", "100", "--window-size", "10", "--allones", "3", "--format", "csv"]),
            parse(&["blocks", "--k", "5", "--N", "2", "--initial", "06", "--flip", "3,9", "-o", "out.json"]),
            parse(&["tm", "--x", "10", "--threads", "2", "--max-elements", "100"]),
        ];
        for cfg in configs {
            let json = serde_json::to_string(&cfg).unwrap();
            let back: RunConfig = serde_json::from_str(&json).unwrap();
            assert_eq!(back, cfg, "{json}");
        }
    }

    #[test]
    fn format_defaults() {
        assert_eq!(parse(&["scan", "--x", "10"]).format(), Format::Json);
        assert_eq!(parse(&["density", "--x", "10"]).format(), Format::Csv);
        assert_eq!(parse(&["scan", "--x", "10", "--format", "csv"]).format(), Format::Csv);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(RunConfig::try_parse_from(["repfn", "verify"]).is_err());
        assert!(RunConfig::try_parse_from(["repfn", "verify", "--x", "-3"]).is_err());
        assert!(RunConfig::try_parse_from(["repfn", "repfn", "--x", "5", "--counter", "r9"]).is_err());
    }
}
