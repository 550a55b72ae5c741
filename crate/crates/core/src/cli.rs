//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::hl::HlTable;
use crate::partitions::Partition;
use crate::series::{AbSeries, IntSeries};
use crate::verify::{
    catalog, master_sides, Fault, rr_identity, rr_lhs, rr_rhs, rr6_lhs, run_by_id, verify_all, MasterKind, Param, Profile,
    Settings, Side, Site, Status, VerificationReport, VerifyError, VerifyOptions,
};

pub const SCHEMA: &str = "hlq-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hlq", version, about = "Exact Hall-Littlewood polynomials, q-series, and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run only this k instead of the profile's range
    #[arg(long, global = true)]
    k: Option<usize>,

    /// Run only this n instead of the profile's range
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Compare q-exponents below this bound
    #[arg(long, global = true, allow_hyphen_values = true)]
    q_order: Option<i64>,

    /// Lowest q-exponent compared by Laurent checks
    #[arg(long, global = true, allow_hyphen_values = true)]
    q_lo: Option<i64>,

    /// Compare z-powers below this bound
    #[arg(long, global = true)]
    z_order: Option<usize>,

    /// Total x-degree for polynomial checks
    #[arg(long, global = true)]
    degree: Option<u32>,

    /// Rational points per instance
    #[arg(long, global = true)]
    points: Option<usize>,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[arg(long, global = true, env = "HLQ_PROFILE", default_value = "quick")]
    profile: Profile,

    #[arg(long, global = true, value_enum, default_value_t = Output::Human)]
    output: Output,

    /// Adds one to the left side at q^e before comparing (self-test of mismatch reporting)
    #[arg(long, global = true, hide = true, allow_hyphen_values = true)]
    fault_q: Option<i64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the identity catalog
    List,
    /// Check one identity
    Verify { id: String },
    /// Check every identity in the catalog
    VerifyAll,
    /// Print a series or a Hall-Littlewood polynomial
    Dump {
        #[command(subcommand)]
        target: DumpTarget,
    },
}

#[derive(Debug, Subcommand)]
enum DumpTarget {
    /// rr6-lhs, krrN-lhs, krrN-rhs, master-zq2-lhs, master-zq2-rhs, master-zq-lhs, master-zq-rhs
    Series { id: String },
    /// P_λ(x_1..x_n; t) as "exponents : coefficient" lines
    Hl {
        partition: String,
        nvars: usize,
        /// Use t = q^2 instead of t = q
        #[arg(long)]
        q_square: bool,
    },
}

impl Cli {
    fn options(&self) -> VerifyOptions {
        VerifyOptions { fault: self.fault_q.map(|e| Fault { side: Side::Lhs, site: Site::Q(e) }) }
    }

    fn settings(&self) -> Settings {
        Settings {
            profile: self.profile,
            k: self.k,
            n: self.n,
            q_order: self.q_order,
            q_lo: self.q_lo,
            z_order: self.z_order,
            degree: self.degree,
            points: self.points,
            seed: self.seed,
        }
    }
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema: &'static str,
    profile: Profile,
    seed: u64,
    reports: &'a [VerificationReport],
}

#[derive(Serialize)]
struct CatalogDoc {
    schema: &'static str,
    entries: Vec<CatalogLine>,
}

#[derive(Serialize)]
struct CatalogLine {
    id: String,
    strategy: &'static str,
    description: String,
}

/// `(exponent, coefficient)` pairs, coefficients printed exactly
type SeriesTerms = Vec<(i64, String)>;

#[derive(Serialize)]
struct SeriesDoc {
    schema: &'static str,
    id: String,
    order: Option<i64>,
    terms: SeriesTerms,
}

#[derive(Serialize)]
struct PolyDoc {
    schema: &'static str,
    partition: String,
    nvars: usize,
    t: &'static str,
    terms: Vec<(Vec<u32>, SeriesTerms)>,
}

/// Parses `args` (program name first), writes to `out` and `err`, and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Box<dyn std::error::Error>> {
    let settings = cli.settings();
    match &cli.command {
        Command::List => {
            let entries: Vec<CatalogLine> = catalog()
                .into_iter()
                .map(|e| CatalogLine { id: e.id, strategy: e.strategy.name(), description: e.description })
                .collect();
            match cli.output {
                Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&CatalogDoc { schema: SCHEMA, entries })?)?,
                Output::Human => {
                    for e in entries {
                        writeln!(out, "{:<20} {:<17} {}", e.id, e.strategy, e.description)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { id } => match run_by_id(id, &settings, &cli.options()) {
            Ok(report) => emit(cli, &settings, &[report], out),
            Err(VerifyError::UnknownId(id)) => {
                writeln!(err, "error: unknown identity id {id:?}")?;
                writeln!(err, "run `hlq list` for the catalog; known ids:")?;
                let ids: Vec<String> = catalog().into_iter().map(|e| e.id).collect();
                writeln!(err, "  {}", ids.join(" "))?;
                Ok(2)
            }
            Err(e) => Err(e.into()),
        },
        Command::VerifyAll => emit(cli, &settings, &verify_all(&settings), out),
        Command::Dump { target } => dump(cli, target, out, err),
    }
}

fn exit_status(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Error) {
        2
    } else if reports.iter().any(|r| r.status == Status::Mismatch) {
        1
    } else {
        0
    }
}

fn human_line(r: &VerificationReport) -> String {
    let mut line = match r.status {
        Status::Match => format!("{:<20} match through {}", r.spec.id, r.verified_through),
        Status::Mismatch => match &r.witness {
            Some(w) => format!("{:<20} mismatch ({}) at {}: lhs {} rhs {}", r.spec.id, w.instance, w.site, w.lhs, w.rhs),
            None => format!("{:<20} mismatch", r.spec.id),
        },
        Status::Error => format!("{:<20} error", r.spec.id),
    };
    if let Some(note) = &r.note {
        line.push_str(&format!(" [{note}]"));
    }
    line
}

fn emit(cli: &Cli, settings: &Settings, reports: &[VerificationReport], out: &mut dyn Write) -> Result<i32, Box<dyn std::error::Error>> {
    match cli.output {
        Output::Json => {
            let doc = ReportDoc { schema: SCHEMA, profile: settings.profile, seed: settings.seed, reports };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Output::Human => {
            for r in reports {
                writeln!(out, "{}", human_line(r))?;
            }
        }
    }
    Ok(exit_status(reports))
}

enum Dumped {
    Int(IntSeries),
    Ab(AbSeries),
}

fn series_by_id(id: &str, k: usize, order: i64) -> Result<Option<Dumped>, VerifyError> {
    if id == "rr6-lhs" {
        return Ok(Some(Dumped::Int(rr6_lhs(order)?)));
    }
    for (prefix, kind) in [("master-zq2-", MasterKind::Zq2), ("master-zq-", MasterKind::Zq)] {
        if let Some(side) = id.strip_prefix(prefix) {
            let (l, r) = master_sides(kind, k, Param::Formal, Param::Formal, 1, order)?;
            return Ok(match side {
                "lhs" => Some(Dumped::Ab(l)),
                "rhs" => Some(Dumped::Ab(r)),
                _ => None,
            });
        }
    }
    let Some((family, side)) = id.rsplit_once('-') else {
        return Ok(None);
    };
    let Some(ident) = rr_identity(family) else {
        return Ok(None);
    };
    Ok(match side {
        "lhs" => Some(Dumped::Int(rr_lhs(ident, k, order)?)),
        "rhs" => Some(Dumped::Int(rr_rhs(ident, k, order)?)),
        _ => None,
    })
}

fn dump(cli: &Cli, target: &DumpTarget, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Box<dyn std::error::Error>> {
    match target {
        DumpTarget::Series { id } => {
            let order = cli.q_order.unwrap_or(20);
            let k = cli.k.unwrap_or(1);
            let series = match series_by_id(id, k, order) {
                Ok(Some(s)) => s,
                Ok(None) => {
                    writeln!(err, "error: unknown series {id:?}; try rr6-lhs, krr1-lhs, krr1-rhs, master-zq2-lhs")?;
                    return Ok(2);
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(2);
                }
            };
            let (text, terms, known) = match &series {
                Dumped::Int(s) => (s.to_string(), s.to_pairs(), s.order()),
                Dumped::Ab(s) => (s.to_string(), s.to_pairs(), s.order()),
            };
            match cli.output {
                Output::Json => {
                    let doc = SeriesDoc { schema: SCHEMA, id: id.clone(), order: known, terms };
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
                Output::Human => writeln!(out, "{text}")?,
            }
            Ok(0)
        }
        DumpTarget::Hl { partition, nvars, q_square } => {
            let lambda: Partition = match partition.parse() {
                Ok(p) => p,
                Err(e) => {
                    writeln!(err, "error: cannot parse partition {partition:?}: {e}")?;
                    return Ok(2);
                }
            };
            let poly = HlTable::new(*q_square).get(&lambda, *nvars);
            match cli.output {
                Output::Json => {
                    let doc = PolyDoc {
                        schema: SCHEMA,
                        partition: lambda.to_string(),
                        nvars: *nvars,
                        t: if *q_square { "q^2" } else { "q" },
                        terms: poly.terms().map(|(e, c)| (e.clone(), c.to_pairs())).collect(),
                    };
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
                }
                Output::Human => write!(out, "{poly}")?,
            }
            Ok(0)
        }
    }
}
