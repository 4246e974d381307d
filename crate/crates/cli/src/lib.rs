//! The `subseq` command-line tool as a library: [`run`] parses an argument
//! vector, dispatches to `subseq-core`, and returns the status together
//! with the text or JSON document to print.

mod codec;
mod commands;
pub mod gapfile;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use codec::Codec;

#[derive(Debug, Parser)]
#[command(name = "subseq", version, about = "Subsequence matching and analysis")]
pub struct Cli {
    /// Alphabet in order: letters, or space-separated integers with --symbols.
    /// Defaults to the letters of the inputs.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Read words as whitespace-separated integers.
    #[arg(long, global = true)]
    pub symbols: bool,
    /// Print a JSON document instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cross-check the answer against the brute-force oracle.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Search budget for brute-force routines and the oracle.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 8)]
    pub oracle_max_len: usize,
    #[arg(long, global = true, default_value_t = 3)]
    pub oracle_max_sigma: usize,
    #[arg(long, global = true, default_value_t = 3)]
    pub oracle_max_k: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EditKind {
    Insert,
    Delete,
    Substitute,
    /// Substitutions reaching universality index exactly k.
    SubstituteExact,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is U a subsequence of W?
    Match { u: String, w: String },
    /// Is U a subsequence of some window of length P of W?
    MatchRange {
        u: String,
        w: String,
        #[arg(short)]
        p: usize,
    },
    /// Is U a subsequence of W under gap constraints?
    MatchGc {
        u: String,
        w: String,
        #[arg(long)]
        gc: PathBuf,
    },
    /// Arch factorization of W.
    Arch { w: String },
    /// Universality index of W, or whether W is k-universal.
    Universality {
        w: String,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Are all words of length K p-subsequences of W?
    UniRange {
        w: String,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        p: usize,
    },
    /// Are all words of length K gc-subsequences of W?
    UniGc {
        w: String,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        gc: PathBuf,
    },
    /// Fewest edits making W k-universal.
    EditUni {
        w: String,
        #[arg(long, value_enum)]
        op: EditKind,
        #[arg(short)]
        k: usize,
    },
    /// One shortest absent subsequence of W.
    Sas { w: String },
    /// Shortest absent subsequence of the factor W[i..j].
    SasRange {
        w: String,
        #[arg(short)]
        i: usize,
        #[arg(short)]
        j: usize,
    },
    IsSas { u: String, w: String },
    IsMas { u: String, w: String },
    /// All shortest absent subsequences, lexicographically.
    SasEnum {
        w: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// All minimal absent subsequences, by length then lexicographically.
    MasEnum {
        w: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    MasLongest { w: String },
    /// Shortest minimal absent subsequence of W starting with U.
    MasExt { w: String, u: String },
    /// Is V a minimal absent p-subsequence of W?
    Pmas {
        v: String,
        w: String,
        #[arg(short)]
        p: usize,
    },
    /// Is V a shortest absent p-subsequence of W?
    Psas {
        v: String,
        w: String,
        #[arg(short)]
        p: usize,
    },
    Shortlex {
        w: String,
        #[arg(short)]
        k: usize,
    },
    /// Do V and W share their subsequences of length up to K (or, with
    /// -p / --gc, their constrained subsequences of length exactly K)?
    Equi {
        v: String,
        w: String,
        #[arg(short)]
        k: usize,
        #[arg(short, conflicts_with = "gc")]
        p: Option<usize>,
        #[arg(long)]
        gc: Option<PathBuf>,
    },
    /// Largest K with V and W equivalent.
    MaxK { v: String, w: String },
    SimonTree { w: String },
    /// Is every length-K subsequence of W also one of V?
    Contains {
        w: String,
        v: String,
        #[arg(short)]
        k: usize,
    },
    /// Shortest subsequence of W of length at most K that V lacks.
    Distinguish {
        w: String,
        v: String,
        #[arg(short)]
        k: usize,
    },
    /// Number of embeddings of P into W.
    Count {
        p: String,
        w: String,
        #[arg(long)]
        gc: Option<PathBuf>,
    },
    /// Same embedding count for every pattern of length K?
    EquiMult {
        w: String,
        v: String,
        #[arg(long)]
        gc: Option<PathBuf>,
        /// Pattern length; defaults to one more than the gap count.
        #[arg(short)]
        k: Option<usize>,
    },
    /// Subsequence automaton of W (or its complement) as JSON.
    Dfa {
        w: String,
        #[arg(long)]
        complement: bool,
    },
    /// Embedding-counting NFA of W for patterns of length K.
    Nfa {
        w: String,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        gc: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InputError,
    ResourceError,
    OracleMismatch,
}

impl Status {
    pub fn code(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InputError => "input_error",
            Status::ResourceError => "resource_error",
            Status::OracleMismatch => "oracle_mismatch",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 2,
            Status::ResourceError => 3,
            Status::OracleMismatch => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvocationResult {
    pub status: Status,
    pub payload: String,
}

/// The document printed with `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub status: Status,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn read_envelope(text: &str) -> Result<Envelope, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn run<I, T>(argv: I) -> InvocationResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok,
                _ => Status::InputError,
            };
            return InvocationResult {
                status,
                payload: e.to_string(),
            };
        }
    };
    commands::execute(&cli)
}
