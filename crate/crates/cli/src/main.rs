//! `nilvar`: components of varieties of commuting nilpotent matrix pairs.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilvar_core::classify::{components, ComponentDescriptor};
use nilvar_core::exactla::{parse_rational, RationalMatrix};
use nilvar_core::homalg::{ext1_vanishes, graph_maps, hom_dim_oracle};
use nilvar_core::modmatrix::{band_module, string_module, MatrixPairModule};
use nilvar_core::verify::{self, Level};
use nilvar_core::{AlgebraParams, Word};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "nilvar",
    version,
    about = "Irreducible components of V(n,a,b) = {(A,B) : AB = BA = A^a = B^b = 0}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the irreducible components of V(n,a,b).
    Classify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Component tables for n = 2..max-n.
    Tables {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Graph-map basis of Hom(M(c1), M(c2)).
    Hom {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Whether Ext^1(M(c), M(d)) vanishes for semi-projective strings.
    Ext {
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Matrices and invariants of a string or band module.
    Module {
        #[arg(long, conflicts_with = "band", required_unless_present = "band")]
        string: Option<String>,
        #[arg(long)]
        band: Option<String>,
        /// Band parameter, one per layer (repeatable).
        #[arg(long = "lambda", requires = "band")]
        lambdas: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the self-verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    #[arg(long, default_value_t = 3)]
    a: usize,
    #[arg(long, default_value_t = 3)]
    b: usize,
}

impl ParamArgs {
    fn params(self) -> nilvar_core::Result<AlgebraParams> {
        AlgebraParams::new(self.a, self.b)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum LevelArg {
    Quick,
    Full,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = std::env::var("NILVAR_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> nilvar_core::Result<u8> {
    match command {
        Command::Classify { n, params, format } => {
            let result = components(n, params.a, params.b)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&result.to_json()).expect("json")),
                Format::Table => print!("{}", result.to_table()),
            }
        }
        Command::Tables { max_n, params, format } => {
            params.params()?;
            let mut all = Vec::new();
            for n in 2..=max_n {
                all.push(components(n, params.a, params.b)?);
            }
            match format {
                Format::Json => {
                    let v: Vec<_> = all.iter().map(|c| c.to_json()).collect();
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
                Format::Table => {
                    for c in &all {
                        println!("n = {}", c.n);
                        print_rows("regular", c.components.iter().filter(|c| c.is_regular()));
                        print_rows(
                            "open orbits (semi-projective)",
                            c.components.iter().filter(|c| {
                                matches!(
                                    c,
                                    ComponentDescriptor::OpenOrbit {
                                        side: nilvar_core::words::Side::SemiProjective,
                                        ..
                                    }
                                )
                            }),
                        );
                        println!();
                    }
                }
            }
        }
        Command::Hom { c1, c2, params, format } => {
            let params = params.params()?;
            let (w1, w2) = (Word::parse(&c1, params)?, Word::parse(&c2, params)?);
            let maps = graph_maps(&w1, &w2);
            let oracle = hom_dim_oracle(&string_module(&w1), &string_module(&w2))?;
            match format {
                Format::Json => {
                    let basis: Vec<_> = maps
                        .iter()
                        .map(|g| json!({"factor": g.factor.to_string(), "sub": g.sub.to_string(), "matrix": matrix_rows(&g.matrix())}))
                        .collect();
                    let v = json!({"c1": w1.plain(), "c2": w2.plain(), "dim": maps.len(), "linear_algebra_dim": oracle, "basis": basis});
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
                Format::Table => {
                    println!("dim Hom(M({w1}), M({w2})) = {}", maps.len());
                    println!("linear-algebra check: {oracle}");
                    for (k, g) in maps.iter().enumerate() {
                        println!("f{}: factor {} -> substring {}", k + 1, g.factor, g.sub);
                        print!("{}", render_matrix(&g.matrix(), "  "));
                    }
                }
            }
        }
        Command::Ext { c, d, params, format } => {
            let params = params.params()?;
            let (wc, wd) = (Word::parse(&c, params)?, Word::parse(&d, params)?);
            let vanishes = ext1_vanishes(&wc, &wd)?;
            match format {
                Format::Json => println!("{}", json!({"c": wc.plain(), "d": wd.plain(), "vanishes": vanishes})),
                Format::Table => println!("vanishes: {vanishes}"),
            }
        }
        Command::Module {
            string,
            band,
            lambdas,
            params,
            format,
        } => {
            let params = params.params()?;
            let (label, module) = match (string, band) {
                (Some(s), _) => {
                    let w = Word::parse(&s, params)?;
                    (format!("M({w})"), string_module(&w))
                }
                (None, Some(b)) => {
                    let w = Word::parse(&b, params)?;
                    let lambdas = if lambdas.is_empty() {
                        vec!["1".to_string()]
                    } else {
                        lambdas
                    };
                    let values = lambdas
                        .iter()
                        .map(|l| parse_rational(l))
                        .collect::<nilvar_core::Result<Vec<_>>>()?;
                    (format!("M({w}, {})", lambdas.join(", ")), band_module(&w, &values)?)
                }
                (None, None) => unreachable!("clap requires one of --string and --band"),
            };
            print_module(&label, &module, format)?;
        }
        Command::Verify { level, seed } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let report = verify::run(level, seed);
            print!("{}", report.render());
            return Ok(if report.passed() { 0 } else { 2 });
        }
    }
    Ok(0)
}

fn print_rows<'a>(title: &str, rows: impl Iterator<Item = &'a ComponentDescriptor>) {
    println!("  {title}:");
    for c in rows {
        println!("    {} {}", c.label(), c.dim());
    }
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

fn render_matrix(m: &RationalMatrix, indent: &str) -> String {
    let rows = matrix_rows(m);
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|row| {
            format!(
                "{indent}[{}]\n",
                row.iter().map(|e| format!("{e:>width$}")).collect::<Vec<_>>().join(" ")
            )
        })
        .collect()
}

fn print_module(label: &str, m: &MatrixPairModule, format: Format) -> nilvar_core::Result<()> {
    let stats = m.stats()?;
    let (pa, pb) = m.jordan_pair()?;
    match format {
        Format::Json => {
            let v = json!({"module": label, "matrices": m.to_json(), "jordan_pair": [pa, pb], "stats": stats});
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Table => {
            println!("{label}, dimension {} over {}", m.dim(), m.params());
            println!("A =");
            print!("{}", render_matrix(m.a(), "  "));
            println!("B =");
            print!("{}", render_matrix(m.b(), "  "));
            println!("relations: {}", if m.verify_relations() { "ok" } else { "violated" });
            println!("jordan pair: ({pa}, {pb})");
            println!(
                "rk A = {}, rk B = {}, top = {}, socle = {}, regular = {}",
                stats.rk_a, stats.rk_b, stats.top_dim, stats.soc_dim, stats.regular
            );
        }
    }
    Ok(())
}
