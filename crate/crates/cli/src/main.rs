use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use salem::cyclofactor::{pisot_minpoly, salem_minpoly, strip_cyclotomic};
use salem::families::{Family, DEFAULT_EXCEPTION_BOUND};
use salem::polyring::parse_rational;
use salem::search::{enumerate, shortness, SearchConfig, SporadicCode};
use salem::tables::{verify_table, verify_table_data, TableId};
use salem::unitcircle::{classify_with_digits, Label};
use salem::{Error, IntPoly, Rational, Sign};

#[derive(Parser)]
#[command(name = "salem", version, about = "Exact computation with Salem and Pisot polynomials")]
struct Cli {
    /// Decimal digits for printed roots.
    #[arg(long, global = true, env = "SALEM_DIGITS", default_value_t = 9)]
    digits: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchFormat {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct PolyArg {
    /// Polynomial, e.g. "z^4-z^3-z^2-z+1", or a JSON coefficient array from the constant term up.
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    poly: IntPoly,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Count zeros inside, on and outside the unit circle and label the polynomial.
    Classify(PolyArg),
    /// Minimal polynomial of the Salem or Pisot number of a polynomial.
    Minpoly(PolyArg),
    /// Data of the family z^n P(z) + eps P*(z).
    Family {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        pisot: IntPoly,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        eps: Sign,
        #[arg(long)]
        n0: bool,
        #[arg(long)]
        schedule: bool,
        /// Indices where rho_n is a Pisot number.
        #[arg(long)]
        exceptions: bool,
        /// Degree of the minimal polynomial of rho_n.
        #[arg(long, value_name = "N")]
        min_degree: Option<u64>,
        /// The Salem number rho_n.
        #[arg(long, value_name = "N")]
        rho: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// All Salem polynomials of a given length with Salem number in [min, max].
    Search {
        #[arg(long)]
        length: usize,
        #[arg(long, value_parser = parse_bound)]
        min: Rational,
        #[arg(long, value_parser = parse_bound)]
        max: Rational,
        #[arg(long, value_enum, default_value_t = SearchFormat::Table)]
        format: SearchFormat,
        /// List family hits and family members in the table output.
        #[arg(long)]
        families: bool,
        #[arg(long, value_name = "N")]
        jobs: Option<usize>,
        /// Cap every gap bound (the search is then reported incomplete).
        #[arg(long, value_name = "G")]
        max_gap: Option<u64>,
        /// Skip the f and 5 annotations.
        #[arg(long)]
        no_flags: bool,
    },
    /// Least length of a Salem polynomial for the Salem number of a minimal polynomial.
    Shortness {
        #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
        poly: IntPoly,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        #[arg(long)]
        degree_cap: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a vendored table row by row.
    VerifyTable {
        /// table1, salem6, families, all-salem or all.
        #[arg(value_parser = parse_tables)]
        table: Tables,
        /// Read the rows from this file instead of the vendored data.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand a code n,k,d,eps to z^n(z^k - z^(k-d) - 1) + eps(z^k + z^d - 1).
    Decode {
        #[arg(long, value_parser = parse_code, allow_hyphen_values = true)]
        code: SporadicCode,
    },
}

fn parse_poly(s: &str) -> Result<IntPoly, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_bound(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Clone)]
struct Tables(Vec<TableId>);

fn parse_tables(s: &str) -> Result<Tables, String> {
    if s == "all" {
        return Ok(Tables(TableId::ALL.to_vec()));
    }
    s.parse().map(|t| Tables(vec![t])).map_err(|e: Error| e.to_string())
}

fn parse_code(s: &str) -> Result<SporadicCode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Output text and whether the command succeeded.
type Outcome = (String, bool);

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: Cli) -> salem::Result<Outcome> {
    let digits = cli.digits;
    match cli.command {
        Command::Classify(arg) => {
            let cert = classify_with_digits(&arg.poly, digits)?;
            if arg.format == Format::Json {
                let mut v = serde_json::to_value(&cert).expect("serializable");
                v["polynomial"] = json!(arg.poly.to_string());
                return Ok((pretty(&v), true));
            }
            let mut out = String::new();
            let _ = writeln!(out, "polynomial: {}", arg.poly);
            let _ = writeln!(out, "label: {}", cert.label);
            let _ = writeln!(
                out,
                "zeros: {} inside, {} on the circle, {} outside",
                cert.inside, cert.on_circle, cert.outside
            );
            let _ = writeln!(out, "real zeros above 1: {}", cert.real_gt_one);
            if let Some(root) = cert.root_decimal() {
                let _ = writeln!(out, "root: {root}");
            }
            Ok((out, true))
        }
        Command::Minpoly(arg) => {
            let cert = classify_with_digits(&arg.poly, digits)?;
            let m = match cert.label {
                Label::Salem => salem_minpoly(&arg.poly)?,
                Label::Pisot => pisot_minpoly(&arg.poly)?,
                other => {
                    return Err(Error::Domain(format!(
                        "{} is neither Salem nor Pisot ({other})",
                        arg.poly
                    )))
                }
            };
            let cofactor = strip_cyclotomic(&arg.poly.exact_div(&m)?)?;
            let factorization = strip_cyclotomic(&arg.poly)?;
            if arg.format == Format::Json {
                let v = json!({
                    "polynomial": arg.poly.to_string(),
                    "label": cert.label.to_string(),
                    "root": cert.root_decimal(),
                    "min_poly": m.to_string(),
                    "degree": m.deg(),
                    "cyclotomic_factors": cofactor.factors,
                    "factorization": factorization.to_string(),
                });
                return Ok((pretty(&v), true));
            }
            let mut out = String::new();
            let _ = writeln!(out, "minimal polynomial: {m}");
            let _ = writeln!(out, "degree: {}", m.deg());
            let _ = writeln!(out, "label: {}", cert.label);
            if let Some(root) = cert.root_decimal() {
                let _ = writeln!(out, "root: {root}");
            }
            let _ = writeln!(out, "factorization: {factorization}");
            Ok((out, true))
        }
        Command::Family {
            pisot,
            eps,
            n0,
            schedule,
            exceptions,
            min_degree,
            rho,
            format,
        } => family(&pisot, eps, n0, schedule, exceptions, min_degree, rho, format, digits),
        Command::Search {
            length,
            min,
            max,
            format,
            families,
            jobs,
            max_gap,
            no_flags,
        } => {
            let mut cfg = SearchConfig::new(length, min, max)?;
            cfg.digits = digits;
            cfg.jobs = jobs;
            cfg.max_gap_override = max_gap;
            cfg.flags = !no_flags;
            let report = enumerate(&cfg)?;
            let text = match format {
                SearchFormat::Csv => report.to_csv()?,
                SearchFormat::Json => pretty(&report.to_json()),
                SearchFormat::Table => {
                    let mut t = report.to_table();
                    if !families {
                        t = t
                            .lines()
                            .filter(|l| !l.starts_with("family: "))
                            .map(|l| format!("{l}\n"))
                            .collect();
                    } else {
                        for h in &report.family_members {
                            let _ = writeln!(t, "member: {} {}", h.salem_number(), h.poly);
                        }
                    }
                    t
                }
            };
            Ok((text, true))
        }
        Command::Shortness {
            poly,
            max_length,
            degree_cap,
            format,
        } => {
            let r = shortness(&poly, max_length, degree_cap)?;
            if format == Format::Json {
                let v = json!({
                    "shortness": r.shortness,
                    "max_length": r.max_length,
                    "exhaustive": r.exhaustive,
                    "polynomials": r.polys.iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
                return Ok((pretty(&v), true));
            }
            let mut out = String::new();
            match r.shortness {
                Some(s) => {
                    let _ = writeln!(out, "shortness: {s}");
                    for p in &r.polys {
                        let _ = writeln!(out, "{p}  (degree {})", p.deg());
                    }
                }
                None => {
                    let _ = writeln!(out, "shortness > {max_length}");
                }
            }
            if !r.exhaustive {
                let _ = writeln!(out, "warning: a search was incomplete");
            }
            Ok((out, true))
        }
        Command::VerifyTable { table, file, format } => {
            let reports = match (file, &table.0[..]) {
                (Some(path), [id]) => {
                    let data = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
                    vec![verify_table_data(*id, &data)?]
                }
                (Some(_), _) => return Err(Error::Domain("--file needs a single table".into())),
                (None, ids) => ids.iter().map(|&id| verify_table(id)).collect::<salem::Result<_>>()?,
            };
            let ok = reports.iter().all(|r| r.passed());
            let text = if format == Format::Json {
                pretty(&serde_json::to_value(&reports).expect("serializable"))
            } else {
                reports.iter().map(ToString::to_string).collect()
            };
            Ok((text, ok))
        }
        Command::Decode { code } => Ok((format!("{}\n", code.decode()), true)),
    }
}

#[allow(clippy::too_many_arguments)]
fn family(
    pisot: &IntPoly,
    eps: Sign,
    want_n0: bool,
    want_schedule: bool,
    want_exceptions: bool,
    min_degree: Option<u64>,
    rho: Option<u64>,
    format: Format,
    digits: u32,
) -> salem::Result<Outcome> {
    let fam = Family::new(pisot, eps)?;
    let all = !(want_n0 || want_schedule || want_exceptions || min_degree.is_some() || rho.is_some());
    let mut v = json!({ "P": pisot.to_string(), "eps": eps.value() });
    if all || want_n0 {
        v["n0"] = json!(fam.find_n0(fam.default_n0_limit())?);
        v["r"] = json!(fam.r_value().to_string());
    }
    if all || want_schedule {
        let s = fam.cyclotomic_schedule()?;
        v["schedule"] = json!(s.iter().map(|&(a, d)| [a, d]).collect::<Vec<_>>());
    }
    if want_exceptions {
        v["pisot_exceptions"] = json!(fam.pisot_exception_indices(DEFAULT_EXCEPTION_BOUND)?);
        v["exceptions_checked_up_to"] = json!(DEFAULT_EXCEPTION_BOUND);
    }
    if let Some(n) = min_degree {
        let spec = fam.analyze()?;
        v["min_degree"] = json!({ "n": n, "degree": spec.min_degree(n)? });
    }
    if let Some(n) = rho {
        let cert = classify_with_digits(&fam.poly(n), digits)?;
        let root = cert
            .root_decimal()
            .ok_or_else(|| Error::Domain(format!("P_{n} has no zero above 1 ({})", cert.label)))?;
        v["rho"] = json!({ "n": n, "value": root, "label": cert.label.to_string() });
    }
    if format == Format::Json {
        return Ok((pretty(&v), true));
    }
    let mut out = String::new();
    let _ = writeln!(out, "family: z^n({pisot}) {eps} ({pisot})*");
    if let Some(n0) = v.get("n0") {
        let _ = writeln!(out, "n0: {n0}");
        let _ = writeln!(out, "r: {}", v["r"].as_str().unwrap_or_default());
    }
    if let Some(s) = v.get("schedule").and_then(|s| s.as_array()) {
        let pairs: Vec<String> = s.iter().map(|p| format!("{}:{}", p[0], p[1])).collect();
        let _ = writeln!(out, "schedule: {}", pairs.join(" "));
    }
    if let Some(e) = v.get("pisot_exceptions") {
        let _ = writeln!(out, "Pisot exceptions (n <= {DEFAULT_EXCEPTION_BOUND}): {e}");
    }
    if let Some(m) = v.get("min_degree") {
        let _ = writeln!(out, "degree of minpoly(rho_{}): {}", m["n"], m["degree"]);
    }
    if let Some(r) = v.get("rho") {
        let _ = writeln!(out, "rho_{}: {} ({})", r["n"], r["value"].as_str().unwrap_or_default(), r["label"].as_str().unwrap_or_default());
    }
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 })
        }
    }
}
