use std::collections::BTreeSet;
use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tukey_spectra::catalog::catalog_spectrum;
use tukey_spectra::finite::{
    bridge_suite, fan_invariance_oracle, fan_invariance_poset, stone_correspondence_oracle, stone_suite, FinitePoset,
    FAN_ORACLE_DEFAULT_N,
};
use tukey_spectra::orders::{classify_cuts, intalg_spectrum, order_size, realize_interval};
use tukey_spectra::pseudotrees::{
    epsilon_and_character, ptree_chain_classes, ptree_size, ptree_spectrum, realize_weak_product,
};
use tukey_spectra::trees::{tree_chain_classes, tree_size, tree_spectrum};
use tukey_spectra::tukey::{compare_types, normalize, normalize_traced, type_size, Mode, TukeyType};
use tukey_spectra::{syntax, Card, Error};

const STONE_DEFAULT_N: usize = 6;

#[derive(Parser)]
#[command(name = "tukey", version, about = "Tukey spectra of ultrafilters on interval, tree and pseudo-tree algebras")]
struct Cli {
    /// Emit JSON of the form {input, result, rule_traces}.
    #[arg(long, global = true)]
    json: bool,
    /// Comparator mode; extended also uses the directed-set invariants.
    #[arg(long, global = true, default_value = "strict")]
    mode: ModeArg,
    /// Read the term (or poset edge list, for oracles) from a file.
    #[arg(long, global = true, value_name = "PATH")]
    file: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Intalg,
    Treealg,
    Ptree,
    Catalog,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Suite {
    Fans,
    Stone,
    Bridge,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Bring a product term to canonical form, with the rewrite trace.
    Normalize { term: Option<String> },
    /// Compare two types under Tukey reducibility.
    Compare { a: Option<String>, b: Option<String> },
    /// The set of Tukey types of ultrafilters on the algebra of a term.
    Spectrum {
        #[arg(long)]
        kind: Kind,
        term: Option<String>,
    },
    /// Every class of initial chains with its type.
    Chains {
        #[arg(long)]
        kind: Kind,
        term: Option<String>,
    },
    /// Build a term whose spectrum contains the requested types.
    Realize {
        #[command(subcommand)]
        what: Realize,
    },
    /// Run the exhaustive finite oracles.
    Oracle {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Realize {
    /// A linear order realizing pairs `((cf ci) ...)`.
    Interval { pairs: Option<String> },
    /// A pseudo-tree whose root class has the weak product of the factors.
    Weakprod { factors: Vec<String> },
}

/// What a command produced: the text form and the JSON `result` and
/// `rule_traces` fields.
struct Output {
    text: String,
    result: Value,
    traces: Value,
}

impl Output {
    fn plain(text: impl Into<String>, result: Value) -> Output {
        Output { text: text.into(), result, traces: json!([]) }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn set_text<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn spectrum_json(spectrum: &BTreeSet<TukeyType>, size: Card) -> Value {
    json!({
        "spectrum": spectrum.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "terms": spectrum.iter().map(TukeyType::render).collect::<Vec<_>>(),
        "size": size,
        "has_max_type": spectrum.contains(&TukeyType::top(size)),
    })
}

fn input_text(file: &Option<String>, arg: Option<String>, what: &str) -> Result<String, Failure> {
    match (arg, file) {
        (Some(a), None) => Ok(a),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}"))),
        (Some(_), Some(_)) => Err(Failure::Usage(format!("give the {what} either inline or with --file, not both"))),
        (None, None) => Err(Failure::Usage(format!("missing {what}"))),
    }
}

fn run(cli: &Cli) -> Result<(String, Output), Failure> {
    let mode = match cli.mode {
        ModeArg::Strict => Mode::Strict,
        ModeArg::Extended => Mode::Extended,
    };
    match &cli.command {
        Command::Normalize { term } => {
            let src = input_text(&cli.file, term.clone(), "term")?;
            let n = normalize_traced(&syntax::parse_type(&src)?)?;
            let ids: Vec<&str> = n.rules().iter().map(|r| r.id()).collect();
            let text = format!("{}\ntrace: [{}]", n.ty, ids.join(", "));
            let result = json!({"type": n.ty.to_string(), "term": n.ty.render(), "size": type_size(&n.ty)});
            let traces = json!(n.steps.iter().map(|s| json!({"rule": s.rule, "detail": s.detail})).collect::<Vec<_>>());
            Ok((src, Output { text, result, traces }))
        }
        Command::Compare { a, b } => {
            let (src, terms) = match (a, b, &cli.file) {
                (Some(a), Some(b), None) => (format!("{a}\n{b}"), vec![syntax::parse_type(a)?, syntax::parse_type(b)?]),
                (None, None, Some(_)) => {
                    let src = input_text(&cli.file, None, "terms")?;
                    let terms = syntax::parse_types(&src)?;
                    (src, terms)
                }
                _ => return Err(Failure::Usage("compare takes two terms, or --file with two terms".into())),
            };
            if terms.len() != 2 {
                return Err(Failure::Usage(format!("compare needs exactly two terms, found {}", terms.len())));
            }
            let (x, y) = (normalize(&terms[0])?, normalize(&terms[1])?);
            let c = compare_types(&x, &y, mode);
            let result = json!({
                "left": x.to_string(),
                "right": y.to_string(),
                "verdict": c.verdict,
                "strict": c.strict,
                "mode": c.mode,
            });
            Ok((src, Output { text: c.to_string(), result, traces: json!(c.trace) }))
        }
        Command::Spectrum { kind, term } => {
            let src = input_text(&cli.file, term.clone(), "term")?;
            let (spectrum, size) = match kind {
                Kind::Intalg => {
                    let t = syntax::parse_order(&src)?;
                    (intalg_spectrum(&t)?, order_size(&t)?)
                }
                Kind::Treealg => {
                    let t = syntax::parse_tree(&src)?;
                    (tree_spectrum(&t)?, tree_size(&t)?)
                }
                Kind::Ptree => {
                    let t = syntax::parse_ptree(&src)?;
                    (ptree_spectrum(&t)?, ptree_size(&t)?)
                }
                Kind::Catalog => {
                    let s = syntax::parse_catalog(&src)?;
                    (catalog_spectrum(&s)?, s.kappa())
                }
            };
            Ok((src, Output::plain(set_text(&spectrum), spectrum_json(&spectrum, size))))
        }
        Command::Chains { kind, term } => {
            let src = input_text(&cli.file, term.clone(), "term")?;
            let out = match kind {
                Kind::Intalg => {
                    let classes = classify_cuts(&syntax::parse_order(&src)?)?;
                    let text = classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
                    Output::plain(text, json!(classes))
                }
                Kind::Treealg => {
                    let classes = tree_chain_classes(&syntax::parse_tree(&src)?)?;
                    let text = classes.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
                    Output::plain(text, json!(classes))
                }
                Kind::Ptree => {
                    let classes = ptree_chain_classes(&syntax::parse_ptree(&src)?)?;
                    let mut lines = Vec::new();
                    let mut rows = Vec::new();
                    for c in &classes {
                        let (eps, chi) = epsilon_and_character(c)?;
                        lines.push(format!("{c} eps={eps} chi={chi}"));
                        rows.push(json!({"class": c, "epsilon": eps, "character": chi}));
                    }
                    Output::plain(lines.join("\n"), json!(rows))
                }
                Kind::Catalog => {
                    return Err(Failure::Usage("catalog families have no chain classes; use spectrum".into()));
                }
            };
            Ok((src, out))
        }
        Command::Realize { what } => match what {
            Realize::Interval { pairs } => {
                let src = input_text(&cli.file, pairs.clone(), "pair list")?;
                let t = realize_interval(&syntax::parse_pairs(&src)?)?;
                let spectrum = intalg_spectrum(&t)?;
                let result = json!({"term": t.to_string(), "spectrum": spectrum.iter().map(|t| t.to_string()).collect::<Vec<_>>()});
                Ok((src, Output::plain(t.to_string(), result)))
            }
            Realize::Weakprod { factors } => {
                let inline = if factors.is_empty() { None } else { Some(factors.join(" ")) };
                let src = input_text(&cli.file, inline, "factor list")?;
                let t = realize_weak_product(&syntax::parse_weak_factors(&src)?)?;
                let root = ptree_chain_classes(&t)?
                    .into_iter()
                    .find(|c| c.handle.path.is_empty() && c.handle.site == tukey_spectra::pseudotrees::Site::Whole)
                    .expect("every term has a root class");
                let result = json!({"term": t.to_string(), "root_type": root.tukey.to_string()});
                Ok((src, Output::plain(format!("{t}\nroot class type: {}", root.tukey), result)))
            }
        },
        Command::Oracle { suite, max_n } => {
            if let Some(path) = &cli.file {
                let src = input_text(&cli.file, None, "poset")?;
                let p = FinitePoset::parse_edges(&src)?;
                let out = match suite {
                    Suite::Fans => {
                        let r = fan_invariance_poset(&p)?;
                        Output::plain(r.to_string(), json!(r))
                    }
                    Suite::Stone => {
                        let r = stone_correspondence_oracle(&p)?;
                        Output::plain(r.to_string(), json!(r))
                    }
                    _ => return Err(Failure::Usage(format!("{path}: a poset file works with --suite fans or stone"))),
                };
                return Ok((src, out));
            }
            let mut texts = Vec::new();
            let mut result = serde_json::Map::new();
            if matches!(suite, Suite::Fans | Suite::All) {
                let r = fan_invariance_oracle(max_n.unwrap_or(FAN_ORACLE_DEFAULT_N))?;
                texts.push(r.to_string());
                result.insert("fans".into(), json!(r));
            }
            if matches!(suite, Suite::Stone | Suite::All) {
                let r = stone_suite(max_n.unwrap_or(STONE_DEFAULT_N))?;
                texts.push(r.to_string());
                result.insert("stone".into(), json!(r));
            }
            if matches!(suite, Suite::Bridge | Suite::All) {
                let r = bridge_suite(max_n.unwrap_or(STONE_DEFAULT_N))?;
                texts.push(r.to_string());
                result.insert("bridge".into(), json!(r));
            }
            let input = format!("suite={} max_n={}", suite_name(*suite), max_n.map_or("default".into(), |n| n.to_string()));
            Ok((input, Output::plain(texts.join("\n\n"), Value::Object(result))))
        }
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Fans => "fans",
        Suite::Stone => "stone",
        Suite::Bridge => "bridge",
        Suite::All => "all",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok((input, out)) => {
            if cli.json {
                let doc = json!({"input": input.trim(), "result": out.result, "rule_traces": out.traces});
                println!("{}", serde_json::to_string_pretty(&doc).expect("values serialize"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (1, "usage", m),
                Failure::Domain(e) if e.is_parse() => (1, "parse", e.to_string()),
                Failure::Domain(e) => (2, "domain", e.to_string()),
                Failure::Io(m) => (2, "io", m),
            };
            if cli.json {
                println!("{}", json!({"error": {"kind": kind, "message": msg}}));
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
