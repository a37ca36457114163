use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use walksep::classify::{classify, ClassName};
use walksep::format::{model_lines, parse_graph, parse_label_set, parse_model, serialize_graph, serialize_model};
use walksep::generators::{random_graph, GenSpec};
use walksep::imodel::{
    check_axiom, closure_with, global_model_with, model_difference, pairwise_statements, Axiom, Limits,
};
use walksep::maximality::{maximalize, non_maximal_witness};
use walksep::separation::connecting_walk;
use walksep::{Error, Graph};

#[derive(Parser)]
#[command(name = "walksep", version, about = "Separation, independence models and maximality for mixed graphs")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide A ⊥ B | C. Exit 0 when separated, 1 when connected.
    Separate {
        graph: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value = "")]
        given: String,
        /// Print a connecting walk when the sets are connected.
        #[arg(long)]
        witness: bool,
    },
    /// List every separation statement of a graph.
    Model {
        graph: PathBuf,
        #[arg(long, default_value_t = Limits::default().global_model)]
        bound: usize,
    },
    /// List the pairwise statements ⟨i, j | ant({i,j})⟩ of a chain mixed graph.
    Pairwise { graph: PathBuf },
    /// Close a model under a set of axioms.
    Closure {
        model: PathBuf,
        /// Comma-separated subset of s1..s6.
        #[arg(long, default_value = "s1,s2,s3,s4,s5,s6")]
        axioms: String,
        #[arg(long, default_value_t = Limits::default().closure)]
        bound: usize,
    },
    /// Report class membership.
    Classify { graph: PathBuf },
    /// Exit 0 when the chain mixed graph is maximal, 1 otherwise.
    MaximalCheck { graph: PathBuf },
    /// Add edges until the chain mixed graph is maximal.
    Maximalize { graph: PathBuf },
    /// Exit 0 when both graphs induce the same model, 1 otherwise.
    Equiv { first: PathBuf, second: PathBuf },
    /// Emit a random graph.
    Gen {
        #[arg(long)]
        n: usize,
        /// Class name such as CMG or MAMP, or `any`.
        #[arg(long, default_value = "any")]
        class: String,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a model against s1..s6. Exit 0 when every check passes.
    Axioms {
        model: PathBuf,
        #[arg(long, default_value = "s1,s2,s3,s4,s5,s6")]
        axioms: String,
    },
}

struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Outcome {
        Outcome { text, json, code: 0 }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn parse_axioms(list: &str) -> anyhow::Result<Vec<Axiom>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Axiom::parse(s).ok_or_else(|| anyhow!("unknown axiom {s:?}")))
        .collect()
}

fn text_block(lines: &[String]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn run(cmd: Cmd) -> anyhow::Result<Outcome> {
    Ok(match cmd {
        Cmd::Separate {
            graph,
            lhs,
            rhs,
            given,
            witness,
        } => {
            let g = load_graph(&graph)?;
            let (a, b, c) = (parse_label_set(&g, &lhs)?, parse_label_set(&g, &rhs)?, parse_label_set(&g, &given)?);
            walksep::separation::SeparationQuery::new(a, b, c)?;
            let mut walk = None;
            'outer: for i in a {
                for j in b {
                    if let Some(w) = connecting_walk(&g, i, j, c)? {
                        walk = Some(w);
                        break 'outer;
                    }
                }
            }
            let verdict = if walk.is_some() { "connected" } else { "separated" };
            let rendered = walk.as_ref().map(|w| w.render(&g));
            let mut text = format!("{verdict}\n");
            if witness {
                if let Some(r) = &rendered {
                    text.push_str(&format!("{r}\n"));
                }
            }
            let mut j = json!({ "result": verdict });
            if witness {
                j["witness"] = rendered.clone().map_or(Value::Null, Value::String);
            }
            Outcome {
                text,
                json: j,
                code: walk.is_some() as u8,
            }
        }
        Cmd::Model { graph, bound } => {
            let m = global_model_with(&load_graph(&graph)?, bound)?;
            Outcome::ok(serialize_model(&m), json!({ "nodes": m.labels(), "statements": model_lines(&m) }))
        }
        Cmd::Pairwise { graph } => {
            let m = pairwise_statements(&load_graph(&graph)?)?;
            Outcome::ok(serialize_model(&m), json!({ "nodes": m.labels(), "statements": model_lines(&m) }))
        }
        Cmd::Closure { model, axioms, bound } => {
            let m = parse_model(&read(&model)?).with_context(|| format!("in {}", model.display()))?;
            let closed = closure_with(&m, &parse_axioms(&axioms)?, bound)?;
            Outcome::ok(
                serialize_model(&closed),
                json!({ "nodes": closed.labels(), "statements": model_lines(&closed) }),
            )
        }
        Cmd::Classify { graph } => {
            let cls = classify(&load_graph(&graph)?);
            let lines: Vec<String> = cls
                .flags()
                .map(|(c, yes)| format!("{:<6}{}", c.as_str(), if yes { "yes" } else { "no" }))
                .collect();
            Outcome::ok(text_block(&lines), serde_json::to_value(cls)?)
        }
        Cmd::MaximalCheck { graph } => {
            let g = load_graph(&graph)?;
            match non_maximal_witness(&g)? {
                None => Outcome::ok("maximal\n".into(), json!({ "maximal": true })),
                Some(w) => {
                    let (i, j) = (g.label(w.i), g.label(w.j));
                    let walk = w.walk.render(&g);
                    Outcome {
                        text: format!("not maximal\n{i} {j}\n{walk}\n"),
                        json: json!({ "maximal": false, "pair": [i, j], "witness": walk }),
                        code: 1,
                    }
                }
            }
        }
        Cmd::Maximalize { graph } => {
            let g = load_graph(&graph)?;
            let m = maximalize(&g)?;
            let added: Vec<String> = m.edges().filter(|e| !g.contains_edge(e)).map(|e| m.fmt_edge(e)).collect();
            let text = serialize_graph(&m);
            Outcome::ok(text.clone(), json!({ "graph": text, "added": added }))
        }
        Cmd::Equiv { first, second } => {
            let (g1, g2) = (load_graph(&first)?, load_graph(&second)?);
            match model_difference(&g1, &g2)? {
                None => Outcome::ok("equivalent\n".into(), json!({ "equivalent": true })),
                Some((t, in_first)) => {
                    let stmt = format!("{} | {} | {}", g1.fmt_set(t.a), g1.fmt_set(t.b), g1.fmt_set(t.c));
                    let side = if in_first { "first" } else { "second" };
                    Outcome {
                        text: format!("different\n{stmt} only in {side}\n"),
                        json: json!({ "equivalent": false, "statement": stmt, "only_in": side }),
                        code: 1,
                    }
                }
            }
        }
        Cmd::Gen { n, class, density, seed } => {
            let class = match class.as_str() {
                c if c.eq_ignore_ascii_case("any") => None,
                c => Some(ClassName::parse(c).ok_or_else(|| anyhow!("unknown class {c:?}"))?),
            };
            let g = random_graph(&GenSpec::new(n, class, density, seed))?;
            let text = serialize_graph(&g);
            Outcome::ok(text.clone(), json!({ "graph": text }))
        }
        Cmd::Axioms { model, axioms } => {
            let m = parse_model(&read(&model)?).with_context(|| format!("in {}", model.display()))?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut all = true;
            for ax in parse_axioms(&axioms)? {
                let v = check_axiom(&m, ax);
                all &= v.is_empty();
                let first = v.first().map(|v| {
                    format!(
                        "A={} B={} C={} D={} missing {}",
                        m.fmt_set(v.a),
                        m.fmt_set(v.b),
                        m.fmt_set(v.c),
                        m.fmt_set(v.d),
                        m.fmt_triple(&v.missing)
                    )
                });
                match &first {
                    None => lines.push(format!("{ax} PASS")),
                    Some(f) => lines.push(format!("{ax} FAIL {f}")),
                }
                rows.push(json!({
                    "axiom": ax.to_string(),
                    "name": ax.name(),
                    "pass": v.is_empty(),
                    "violations": v.len(),
                    "first": first,
                }));
            }
            Outcome {
                text: text_block(&lines),
                json: Value::Array(rows),
                code: (!all) as u8,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let size = err.chain().any(|e| matches!(e.downcast_ref::<Error>(), Some(Error::SizeLimit { .. })));
            ExitCode::from(if size { 3 } else { 2 })
        }
    }
}
