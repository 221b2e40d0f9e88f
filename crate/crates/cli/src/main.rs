// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `cisgraph`: classify graphs, reproduce the class-relation table, scan
//! small graphs for inclusion violations, emit gallery graphs and test
//! line graphs for the CIS property.
//!
//! Exit status: 0 on success, 1 when a computed result fails its own
//! verification, 2 on bad input.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cisgraph", version, about = "Clique/stable-set graph class recognition")]
struct Cli {
    /// write the result here instead of stdout
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every class (or the chosen ones) on the input graphs
    Classify(ClassifyArgs),
    /// Verify the witness cells of the class-relation table
    Table(TableArgs),
    /// Check class inclusions on all graphs up to a given order
    Scan(ScanArgs),
    /// List or emit the named constructions
    Gallery(GalleryArgs),
    /// Decide whether a line graph is CIS from its root graph
    CisLine(CisLineArgs),
    /// Decide equistability and strong equistability
    Equistable(EquistableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
pub struct InputArgs {
    /// path, `-` for stdin, or `gallery:ID`
    #[arg(short, long, value_name = "SOURCE")]
    pub input: Option<String>,
    /// same as --input
    #[arg(value_name = "SOURCE", conflicts_with = "input")]
    pub source: Option<String>,
    /// seed for `gallery:random-split:K:L`
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl InputArgs {
    pub fn source(&self) -> anyhow::Result<&str> {
        self.input
            .as_deref()
            .or(self.source.as_deref())
            .ok_or_else(|| anyhow::anyhow!("no input given (use -i PATH, -i -, or gallery:ID)"))
    }
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// restrict to these classes (repeatable or comma-separated)
    #[arg(short, long = "property", value_delimiter = ',', value_name = "NAME")]
    pub properties: Vec<String>,
    /// report the equistability classes as unsupported
    #[arg(long)]
    pub skip_lp: bool,
    /// treat the input as JSON reports and re-check their certificates
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// leave the equistability cells unchecked
    #[arg(long)]
    pub skip_lp: bool,
    /// leave the LLbar cells unchecked
    #[arg(long)]
    pub skip_llbar: bool,
    /// re-check a JSON table report given by --input
    #[arg(long)]
    pub verify: bool,
    /// JSON table report for --verify
    #[arg(short, long, value_name = "SOURCE")]
    pub input: Option<String>,
}

#[derive(Args)]
pub struct ScanArgs {
    /// largest order generated
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// also evaluate the equistability classes
    #[arg(long)]
    pub include_lp: bool,
    /// scan these graph6 lines instead of generating graphs
    #[arg(short, long, value_name = "SOURCE")]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// re-run the scan described by a JSON report and compare
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args)]
pub struct GalleryArgs {
    #[command(subcommand)]
    pub action: GalleryAction,
}

#[derive(Subcommand)]
pub enum GalleryAction {
    /// Print the available names
    List,
    /// Print one construction: NAME, projective:Q or random-split:K:L
    Emit {
        id: String,
        #[arg(long, value_enum, default_value_t = EmitFormat::Graph6)]
        format: EmitFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmitFormat {
    Graph6,
    Edges,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Interpret {
    /// the input is the root graph H
    Root,
    /// the input is a line graph G = L(H)
    Line,
    /// a line graph when it has a root, otherwise a root graph
    Auto,
}

#[derive(Args)]
pub struct CisLineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long = "as", value_enum, default_value_t = Interpret::Auto)]
    pub interpret: Interpret,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// treat the input as JSON reports and re-check them
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args)]
pub struct EquistableArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// decide by the subset-scanning LP loop instead of the affine hull
    #[arg(long)]
    pub lp_loop: bool,
    /// treat the input as JSON reports and re-check their certificates
    #[arg(long)]
    pub verify: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => commands::classify(a),
        Command::Table(a) => commands::table(a),
        Command::Scan(a) => commands::scan(a),
        Command::Gallery(a) => commands::gallery(a),
        Command::CisLine(a) => commands::cis_line(a),
        Command::Equistable(a) => commands::equistable(a),
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for issue in &out.issues {
        eprintln!("verification failed: {issue}");
    }
    if out.issues.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
