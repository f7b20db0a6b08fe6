use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use pigraph::alternating::{
    alternating_orientation_of_cocomp, AlternationRejection, OddCycle, PhiConflict, Reason,
};
use pigraph::format::{
    parse_graph, parse_ordering, write_graph, write_instance, write_ordering, write_representation,
};
use pigraph::gen::{
    banded_representation, nonbetweenness_to_graph, random_instance, random_representation,
    representation_to_graph,
};
use pigraph::oracle::brute_force_recognize;
use pigraph::transitive::{ForcingChain, NotCocomparability, TransitiveViolation, Umbrella};
use pigraph::{
    cocomparability_orient, recognize, verify_apex_ordering, verify_transitive_extension,
    ApexViolation, ChordlessC4, Error, Graph, RecognitionOutcome, Rejection,
};

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;
const USAGE: u8 = 2;
const TOO_LARGE: u8 = 3;

#[derive(Parser)]
#[command(name = "pigraph", version, about = "Simple-triangle (PI) graph recognition")]
struct Cli {
    /// Print JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing; report through the exit code only
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an apex ordering, or the rejecting stage and its witness
    Recognize {
        #[arg(required_unless_present = "batch")]
        graph: Option<PathBuf>,
        /// Process every file in a directory, in name order
        #[arg(long, conflicts_with = "graph")]
        batch: Option<PathBuf>,
    },
    /// Check that an ordering is an apex ordering
    Verify { graph: PathBuf, ordering: PathBuf },
    /// Generate instances
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Exhaustive recognition (at most 9 vertices)
    Oracle {
        #[arg(required_unless_present = "batch")]
        graph: Option<PathBuf>,
        #[arg(long, conflicts_with = "graph")]
        batch: Option<PathBuf>,
    },
    /// Cocomparability recognition, or check an ordering with --order
    Cocomp {
        graph: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Alternating orientation of a cocomparability graph
    Altorient { graph: PathBuf },
}

#[derive(Subcommand)]
enum GenKind {
    /// Intersection model of random triangles
    Rep {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sparse banded model; average degree grows with the spread
        #[arg(long)]
        spread: Option<u64>,
        /// Emit the intersection graph instead of the model
        #[arg(long)]
        graph: bool,
    },
    /// Random non-betweenness instance
    Reduction {
        /// Number of elements
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        triples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the reduction graph instead of the instance
        #[arg(long)]
        graph: bool,
    },
}

struct Report {
    code: u8,
    text: String,
    json: Value,
}

impl Report {
    fn render(&self, as_json: bool) -> String {
        if as_json {
            format!("{}\n", self.json)
        } else {
            self.text.clone()
        }
    }
}

fn failure(e: &Error) -> Report {
    let code = match e {
        Error::InputTooLarge { .. } => TOO_LARGE,
        _ => USAGE,
    };
    Report {
        code,
        text: String::new(),
        json: json!({ "error": e.to_string() }),
    }
}

fn read(path: &Path) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| Report {
        code: USAGE,
        text: String::new(),
        json: json!({ "error": format!("{}: {e}", path.display()) }),
    })
}

fn load_graph(path: &Path) -> Result<Graph, Report> {
    let text = read(path)?;
    parse_graph(&text).map_err(|e| {
        let mut r = failure(&e);
        r.json = json!({ "error": format!("{}: {e}", path.display()) });
        r
    })
}

fn arcs_json(arcs: &[(usize, usize)]) -> Value {
    json!(arcs.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())
}

fn chain_lines(out: &mut String, chain: &ForcingChain) {
    for &(a, b) in &chain.0 {
        writeln!(out, "forcing {a} {b}").unwrap();
    }
}

fn odd_cycle_lines(out: &mut String, cycle: &OddCycle) {
    for &(a, b) in &cycle.0 {
        writeln!(out, "pair {a} {b}").unwrap();
    }
}

fn conflict_lines(out: &mut String, c: &PhiConflict) {
    out.push_str("order ");
    out.push_str(&write_ordering(&c.order));
    for s in &c.steps {
        let (a, b) = s.from;
        let (x, y) = s.to;
        match s.reason {
            Reason::Alternation { closing } => {
                writeln!(out, "implies {a} {b} {x} {y} c4 {closing}").unwrap()
            }
            Reason::Delta => writeln!(out, "implies {a} {b} {x} {y} delta").unwrap(),
        }
    }
}

fn conflict_json(c: &PhiConflict) -> Value {
    let steps: Vec<Value> = c
        .steps
        .iter()
        .map(|s| {
            let reason = match s.reason {
                Reason::Alternation { closing } => json!({ "c4": closing }),
                Reason::Delta => json!("delta"),
            };
            json!({ "from": [s.from.0, s.from.1], "to": [s.to.0, s.to.1], "reason": reason })
        })
        .collect();
    json!({ "order": c.order, "steps": steps })
}

fn rejection_report(r: &Rejection) -> Report {
    let mut text = format!("{}\n", r.stage());
    let witness = match r {
        Rejection::NotCocomparability(chain) => {
            chain_lines(&mut text, chain);
            json!({ "forcing_chain": arcs_json(&chain.0) })
        }
        Rejection::AuxNotBipartite(cycle) => {
            odd_cycle_lines(&mut text, cycle);
            json!({ "odd_cycle": arcs_json(&cycle.0) })
        }
        Rejection::PhiUnsatisfiable(c) => {
            conflict_lines(&mut text, c);
            conflict_json(c)
        }
    };
    Report {
        code: REJECT,
        text,
        json: json!({ "verdict": "reject", "stage": r.stage(), "witness": witness }),
    }
}

fn cmd_recognize(path: &Path) -> Report {
    let g = match load_graph(path) {
        Ok(g) => g,
        Err(r) => return r,
    };
    match recognize(&g) {
        RecognitionOutcome::Accepted(order) => Report {
            code: ACCEPT,
            text: write_ordering(&order),
            json: json!({ "verdict": "accept", "ordering": order }),
        },
        RecognitionOutcome::Rejected(r) => rejection_report(&r),
    }
}

fn umbrella_report(u: Umbrella) -> Report {
    Report {
        code: REJECT,
        text: format!("UMBRELLA {} {} {}\n", u.u, u.v, u.w),
        json: json!({ "verdict": "reject", "umbrella": [u.u, u.v, u.w] }),
    }
}

fn cmd_verify(graph: &Path, ordering: &Path) -> Report {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(r) => return r,
    };
    let text = match read(ordering) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let sigma = match parse_ordering(&text, g.n()) {
        Ok(s) => s,
        Err(e) => return failure(&e),
    };
    match verify_apex_ordering(&g, &sigma) {
        Ok(()) => Report {
            code: ACCEPT,
            text: "OK\n".into(),
            json: json!({ "verdict": "accept" }),
        },
        Err(ApexViolation::Malformed(e)) => failure(&e),
        Err(ApexViolation::Umbrella(u)) => umbrella_report(u),
        Err(ApexViolation::C4NotAlternating(ChordlessC4([a, b, c, d]))) => Report {
            code: REJECT,
            text: format!("C4_NOT_ALTERNATING {a} {b} {c} {d}\n"),
            json: json!({ "verdict": "reject", "c4_not_alternating": [a, b, c, d] }),
        },
    }
}

fn cmd_oracle(path: &Path) -> Report {
    let g = match load_graph(path) {
        Ok(g) => g,
        Err(r) => return r,
    };
    match brute_force_recognize(&g) {
        Err(e) => failure(&e),
        Ok(Some(order)) => Report {
            code: ACCEPT,
            text: format!("YES\n{}", write_ordering(&order)),
            json: json!({ "verdict": "accept", "ordering": order }),
        },
        Ok(None) => Report {
            code: REJECT,
            text: "NO\n".into(),
            json: json!({ "verdict": "reject" }),
        },
    }
}

fn cmd_cocomp(graph: &Path, order: Option<&Path>) -> Report {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(r) => return r,
    };
    if let Some(path) = order {
        let text = match read(path) {
            Ok(t) => t,
            Err(r) => return r,
        };
        let sigma = match parse_ordering(&text, g.n()) {
            Ok(s) => s,
            Err(e) => return failure(&e),
        };
        return match verify_transitive_extension(&g, &sigma) {
            Ok(()) => Report {
                code: ACCEPT,
                text: "OK\n".into(),
                json: json!({ "verdict": "accept" }),
            },
            Err(TransitiveViolation::Malformed(e)) => failure(&e),
            Err(TransitiveViolation::Umbrella(u)) => umbrella_report(u),
        };
    }
    match cocomparability_orient(&g) {
        Ok(fbar) => {
            let order = fbar.order();
            Report {
                code: ACCEPT,
                text: format!("YES\n{}", write_ordering(&order)),
                json: json!({ "verdict": "accept", "ordering": order }),
            }
        }
        Err(NotCocomparability::Forcing(chain)) => {
            rejection_report(&Rejection::NotCocomparability(chain))
        }
        Err(NotCocomparability::Umbrella(u)) => umbrella_report(u),
    }
}

fn cmd_altorient(path: &Path) -> Report {
    let g = match load_graph(path) {
        Ok(g) => g,
        Err(r) => return r,
    };
    match alternating_orientation_of_cocomp(&g) {
        Ok(f) => {
            let arcs: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(a, b)| if f.has_arc_index(g.arc_index(a, b).unwrap()) { (a, b) } else { (b, a) })
                .collect();
            let mut text = String::from("YES\n");
            for &(a, b) in &arcs {
                writeln!(text, "{a} {b}").unwrap();
            }
            Report {
                code: ACCEPT,
                text,
                json: json!({ "verdict": "accept", "arcs": arcs_json(&arcs) }),
            }
        }
        Err(AlternationRejection::NotCocomparability(chain)) => {
            rejection_report(&Rejection::NotCocomparability(chain))
        }
        Err(AlternationRejection::NotAlternatelyOrientable(cycle)) => {
            rejection_report(&Rejection::AuxNotBipartite(cycle))
        }
    }
}

fn cmd_gen(kind: &GenKind) -> Report {
    let text = match *kind {
        GenKind::Rep {
            n,
            seed,
            spread,
            graph,
        } => {
            let rep = match spread {
                Some(s) => banded_representation(n, s, seed),
                None => random_representation(n, seed),
            };
            if graph {
                write_graph(&representation_to_graph(&rep))
            } else {
                write_representation(&rep)
            }
        }
        GenKind::Reduction {
            n,
            triples,
            seed,
            graph,
        } => match random_instance(n, triples, seed) {
            Err(e) => return failure(&e),
            Ok(inst) if graph => write_graph(&nonbetweenness_to_graph(&inst)),
            Ok(inst) => write_instance(&inst),
        },
    };
    Report {
        code: ACCEPT,
        json: json!({ "content": text }),
        text,
    }
}

/// Runs `one` on every regular file in `dir`, in parallel, and prints the
/// reports in file-name order. The exit code is the largest one seen.
fn batch(dir: &Path, one: fn(&Path) -> Report) -> Report {
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            return Report {
                code: USAGE,
                text: String::new(),
                json: json!({ "error": format!("{}: {e}", dir.display()) }),
            }
        }
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let reports: Vec<(String, Report)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, one(p))
        })
        .collect();
    let code = reports.iter().map(|(_, r)| r.code).max().unwrap_or(ACCEPT);
    let mut text = String::new();
    for (name, r) in &reports {
        writeln!(text, "== {name} {}", r.code).unwrap();
        text.push_str(&r.text);
        if let Some(e) = r.json.get("error") {
            writeln!(text, "error: {}", e.as_str().unwrap_or_default()).unwrap();
        }
    }
    let json = json!(reports
        .iter()
        .map(|(name, r)| json!({ "file": name, "exit": r.code, "result": r.json }))
        .collect::<Vec<_>>());
    Report { code, text, json }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match &cli.command {
        Command::Recognize { graph, batch: dir } => match dir {
            Some(d) => batch(d, cmd_recognize),
            None => cmd_recognize(graph.as_deref().unwrap()),
        },
        Command::Verify { graph, ordering } => cmd_verify(graph, ordering),
        Command::Gen { kind } => cmd_gen(kind),
        Command::Oracle { graph, batch: dir } => match dir {
            Some(d) => batch(d, cmd_oracle),
            None => cmd_oracle(graph.as_deref().unwrap()),
        },
        Command::Cocomp { graph, order } => cmd_cocomp(graph, order.as_deref()),
        Command::Altorient { graph } => cmd_altorient(graph),
    };
    let single_error = report.code >= USAGE && report.text.is_empty();
    if single_error && !cli.json {
        if let Some(e) = report.json.get("error").and_then(Value::as_str) {
            eprintln!("error: {e}");
        }
    } else if !cli.quiet {
        print!("{}", report.render(cli.json));
    }
    ExitCode::from(report.code)
}
