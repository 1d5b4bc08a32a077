//! Command-line driver for the verification suites.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qmcheck::report::{run_suite, SuiteParams};
use qmcheck::tower::{tower_invariants, TowerSpec};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qmcheck", version, about = "Exact verification of quaternion-order lattices, surface-cover homology, branched-cover towers, and nine-nodal cubic threefolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite (quaternion | lattice | homology | tower | cubic | all)
    Verify {
        suite: String,
        /// Family parameter as "p/q", an integer, or the token "symbolic"
        #[arg(long)]
        alpha: Option<String>,
        /// Extra genus for the pushforward kernel count
        #[arg(long)]
        genus: Option<u32>,
        /// Starting prime for the finite-field oracle
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sample count for the randomized algebra checks
        #[arg(long)]
        samples: Option<usize>,
        /// Number of random family members to sweep
        #[arg(long)]
        random_members: Option<usize>,
        /// Number of random pairs for the moduli-coordinate check
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Print the invariants of a tower given as "g:a'.ai.aj.ak"
    Tower {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the table of admissible towers with their invariants
    Census {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| format!("bad numerator '{num}'"))?;
    let d: BigInt = den.trim().parse().map_err(|_| format!("bad denominator '{den}'"))?;
    if d.is_zero() {
        return Err("denominator is zero".into());
    }
    Ok(BigRational::new(n, d))
}

fn seed_from_env() -> u64 {
    std::env::var("QMCHECK_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0x5EED_CAFE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify {
            suite,
            alpha,
            genus,
            prime,
            format,
            out,
            samples,
            random_members,
            pairs,
        } => {
            let mut params = SuiteParams {
                seed: seed_from_env(),
                ..SuiteParams::default()
            };
            match alpha.as_deref() {
                Some("symbolic") => {
                    params.symbolic = true;
                    params.alpha = None;
                }
                Some(s) => match parse_rational(s) {
                    Ok(a) => {
                        if a.is_zero() {
                            eprintln!("error: alpha must be nonzero");
                            return ExitCode::from(2);
                        }
                        params.alpha = Some(a);
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                },
                None => {}
            }
            params.genus = genus;
            if let Some(p) = prime {
                if p < 5 {
                    eprintln!("error: the oracle prime must be at least 5");
                    return ExitCode::from(2);
                }
                params.prime = p;
            }
            if let Some(s) = samples {
                params.samples = s;
            }
            if let Some(m) = random_members {
                params.random_members = m;
            }
            if let Some(p) = pairs {
                params.pairs = p;
            }
            let report = match run_suite(&suite, &params) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let rendered = match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            match out {
                Some(path) => {
                    let mut f = match std::fs::File::create(&path) {
                        Ok(f) => f,
                        Err(e) => {
                            eprintln!("error: cannot write {}: {e}", path.display());
                            return ExitCode::from(2);
                        }
                    };
                    if let Err(e) = f.write_all(rendered.as_bytes()) {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => print!("{rendered}"),
            }
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::Tower { spec, format } => {
            let spec = match TowerSpec::parse(&spec) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let inv = match tower_invariants(&spec) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match format {
                Format::Json => {
                    let body = serde_json::json!({
                        "schema_version": qmcheck::report::SCHEMA_VERSION,
                        "spec": spec.to_string(),
                        "invariants": inv,
                    });
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
                Format::Text => {
                    println!("tower {spec}");
                    println!("  middle genus   {}", inv.g_pm);
                    println!("  top genus      {}", inv.g_tilde);
                    println!("  dim P          {}", inv.dim_p);
                    println!("  dim moduli     {}", inv.dim_moduli);
                    println!("  dim period     {}", inv.dim_shim);
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Census { format } => {
            let table = qmcheck::tower::admissible_table();
            match format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = table
                        .iter()
                        .map(|(s, inv)| {
                            serde_json::json!({ "spec": s.to_string(), "invariants": inv })
                        })
                        .collect();
                    let body = serde_json::json!({
                        "schema_version": qmcheck::report::SCHEMA_VERSION,
                        "rows": rows,
                    });
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
                Format::Text => {
                    println!(
                        "{:<12} {:>6} {:>9} {:>11} {:>11}",
                        "tower", "dim P", "dim mod", "dim period", "top genus"
                    );
                    for (s, inv) in &table {
                        println!(
                            "{:<12} {:>6} {:>9} {:>11} {:>11}",
                            s.to_string(),
                            inv.dim_p,
                            inv.dim_moduli,
                            inv.dim_shim,
                            inv.g_tilde
                        );
                    }
                }
            }
            ExitCode::SUCCESS
        }
    }
}
