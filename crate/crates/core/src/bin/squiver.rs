use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use special_quiver::appendix::{verify_appendix, CaseStatus};
use special_quiver::jordan::{JordanSpec, StructureConstants};
use special_quiver::path_algebra::{koszul_blocks, DEFAULT_DEG_CAP, DEFAULT_HOM_CAP};
use special_quiver::quiver::assemble;
use special_quiver::report::{self, emit_blocks, emit_dot, emit_koszul_text, emit_text, to_json, write_atomic};
use special_quiver::tkk::{jordan_from_short_pair, minimality_check, tkk_construct};
use special_quiver::{Error, Result};

#[derive(Parser)]
#[command(name = "squiver", version, about = "Quivers with relations for special Jordan modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Text,
}

#[derive(clap::Args)]
struct Io {
    /// Input JSON file.
    #[arg(long)]
    spec: PathBuf,
    /// Output file; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the quiver with relations of a Jordan spec.
    Quiver {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// List the blocks of the relation set.
    Blocks {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Minimal resolutions of the simples of every block.
    Koszul {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_HOM_CAP, value_parser = positive)]
        hom_cap: usize,
        #[arg(long, default_value_t = DEFAULT_DEG_CAP, value_parser = positive)]
        deg_cap: usize,
    },
    /// Check the duality and tensor-restriction identities with the character engine.
    VerifyAppendix {
        #[arg(long, default_value_t = 6, value_parser = positive)]
        max_rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the TKK construction on explicit structure constants.
    TkkCheck {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

/// Output text and whether every check passed.
type Outcome = (String, bool);

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_spec(io: &Io) -> Result<JordanSpec> {
    JordanSpec::from_json(&read(&io.spec)?)
}

fn run(cmd: &Command) -> Result<(Outcome, Option<PathBuf>)> {
    match cmd {
        Command::Quiver { io, format } => {
            let r = assemble(&load_spec(io)?)?;
            let text = match format {
                Format::Dot => emit_dot(&r),
                Format::Json => to_json(&r),
                Format::Text => emit_text(&r),
            };
            Ok(((text, true), io.out.clone()))
        }
        Command::Blocks { io, format } => {
            let r = assemble(&load_spec(io)?)?;
            let text = match format {
                Format::Json => {
                    let rows: Vec<_> = r
                        .blocks
                        .iter()
                        .map(|b| json!({ "block": b, "shape": report::block_shape(&r, b), "kindName": report::kind_name(b.kind) }))
                        .collect();
                    to_json(&json!({ "blocks": rows, "isolatedVertices": r.isolated_vertices }))
                }
                _ => emit_blocks(&r),
            };
            Ok(((text, true), io.out.clone()))
        }
        Command::Koszul { io, format, hom_cap, deg_cap } => {
            let r = assemble(&load_spec(io)?)?;
            let blocks = koszul_blocks(&r, *hom_cap, *deg_cap)?;
            let ok = blocks.iter().all(|b| b.report.koszul);
            let text = match format {
                Format::Json => to_json(&json!({ "koszul": ok, "blocks": blocks })),
                _ => {
                    let mut s = String::new();
                    for b in &blocks {
                        s.push_str(&format!("block {} dims {:?}\n", b.block, b.dims));
                        s.push_str(&emit_koszul_text(&b.report));
                    }
                    s.push_str(&format!("all blocks koszul: {ok}\n"));
                    s
                }
            };
            Ok(((text, ok), io.out.clone()))
        }
        Command::VerifyAppendix { max_rank, out, format } => {
            let cases = verify_appendix(*max_rank)?;
            let ok = cases.iter().all(|c| c.status != CaseStatus::Fail);
            let text = match format {
                Format::Json => to_json(&json!({ "pass": ok, "cases": cases })),
                _ => {
                    let mut s = String::new();
                    for c in &cases {
                        let status = match c.status {
                            CaseStatus::Pass => "PASS",
                            CaseStatus::Fail => "FAIL",
                            CaseStatus::Discrepancy => "DISCREPANCY",
                        };
                        s.push_str(&format!(
                            "{status}\t{} ({})\t{}\t{}\texpected {}\tcomputed {}\n",
                            c.lemma, c.item, c.algebra, c.statement, c.expected, c.computed
                        ));
                    }
                    s
                }
            };
            Ok(((text, ok), out.clone()))
        }
        Command::TkkCheck { io, format } => {
            let sc = StructureConstants::from_json(&read(&io.spec)?)?;
            let g = tkk_construct(&sc)?;
            let minimal = minimality_check(&g);
            let round_trip = jordan_from_short_pair(&g) == sc;
            let (m, z, p) = g.dims;
            let name = if g.dims == (1, 1, 1) { "sl(2)".to_string() } else { format!("dim {}", g.dim()) };
            let ok = minimal && round_trip;
            let text = match format {
                Format::Json => to_json(&json!({
                    "dims": [m, z, p],
                    "lie": name,
                    "jacobi": true,
                    "minimal": minimal,
                    "roundTrip": round_trip,
                })),
                _ => format!(
                    "graded dims: {m} + {z} + {p}\nlie algebra: {name}\njacobi: true\nminimal: {minimal}\nround trip: {round_trip}\n"
                ),
            };
            Ok(((text, ok), io.out.clone()))
        }
    }
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("Usage", e.to_string().trim(), 2),
    };
    let result = run(&cli.command).and_then(|((text, ok), out)| {
        match out {
            Some(path) => write_atomic(&path, &text)?,
            None => print!("{text}"),
        }
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => fail("VerificationFailed", "at least one check failed", 3),
        Err(e) => fail(e.kind(), &e.to_string(), e.exit_code() as u8),
    }
}
