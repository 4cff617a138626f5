// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uec_core::essential::{check_cpdag, is_removable, materialize_completions, predict_completions, Cpdag};
use uec_core::moves::{replay, transformation_sequence, PhaseCounts};
use uec_core::oracle::{verify, verify_all, Claim, VerificationReport};
use uec_core::text::GraphDocument;
use uec_core::udg::{clique_cover, distinguishing_pair, same_uec, udg_of};
use uec_core::Error;

/// Exit statuses.
const OK: u8 = 0;
const FALSE: u8 = 1;
const INPUT: u8 = 2;
const PRECONDITION: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "uec", version, about = "Unconditional equivalence of DAGs and essential graphs")]
struct Cli {
    /// Only print primary output (graphs, move lists, reports).
    #[arg(long, global = true)]
    quiet: bool,

    /// Also write the resulting graph(s) as Graphviz DOT to this path.
    #[arg(long, global = true, value_name = "PATH")]
    emit_dot: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the unconditional dependence graph of a DAG.
    Udg {
        /// Graph file, or `-` for standard input.
        graph: String,
        /// Append the source-clique cover as comment lines.
        #[arg(long)]
        cover: bool,
    },
    /// Exit 0 if two DAGs are unconditionally equivalent, 1 otherwise.
    SameUec {
        a: String,
        b: String,
        /// Print a node pair dependent in one graph but not the other.
        #[arg(long)]
        explain: bool,
    },
    /// Print insert/reverse/delete moves turning the first DAG into the second.
    Transform {
        a: String,
        b: String,
        /// Replay the moves and check every intermediate graph.
        #[arg(long)]
        check: bool,
    },
    /// Exit 0 if the edge between two nodes of an essential graph is removable.
    Removable { graph: String, v: String, w: String },
    /// Print the width-1 completions of removing an edge from an essential graph.
    Completions { graph: String, v: String, w: String },
    /// Check a claim exhaustively on all graphs with `n` nodes.
    Verify {
        /// Claim id, or `all`.
        claim: String,
        n: usize,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

/// An error message with the exit status it maps to.
struct Failure(u8, String);

type Outcome = Result<u8, Failure>;

fn status_of(e: &Error) -> u8 {
    match e {
        Error::AdjacentPair(..) | Error::Precondition(_) | Error::Budget(_) => PRECONDITION,
        Error::Verification(_) | Error::IllegalMove { .. } => INTERNAL,
        _ => INPUT,
    }
}

/// Renders an error, naming nodes by their labels.
fn describe(e: &Error, labels: &[String]) -> String {
    let l = |i: usize| labels.get(i).map(String::as_str).unwrap_or("?");
    match *e {
        Error::SelfLoop(v) => format!("self-loop on node {}", l(v)),
        Error::Cycle(v, w) => format!("edge {} -> {} would create a directed cycle", l(v), l(w)),
        Error::ParallelEdge(v, w) => format!("nodes {} and {} are joined by more than one edge", l(v), l(w)),
        Error::PartiallyDirectedCycle(v, w) => {
            format!("graph contains a partially directed cycle through {} -> {}", l(v), l(w))
        }
        Error::MissingEdge(v, w) => format!("edge {} {} is not present", l(v), l(w)),
        Error::SameNode(v) => format!("expected two distinct nodes, got {} twice", l(v)),
        Error::IllegalMove { index, kind, tail, head, ref reason } => {
            format!("move {index} ({kind} {} {}) is illegal: {reason}", l(tail), l(head))
        }
        _ => e.to_string(),
    }
}

fn fail(e: Error, labels: &[String]) -> Failure {
    Failure(status_of(&e), describe(&e, labels))
}

struct Inputs {
    stdin_used: bool,
}

impl Inputs {
    fn read(&mut self, path: &str) -> Result<GraphDocument, Failure> {
        let text = if path == "-" {
            if self.stdin_used {
                return Err(Failure(INPUT, "standard input can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure(INPUT, format!("reading standard input: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure(INPUT, format!("{path}: {e}")))?
        };
        GraphDocument::parse(&text).map_err(|e| Failure(INPUT, format!("{path}: {e}")))
    }
}

fn node(doc: &GraphDocument, label: &str) -> Result<usize, Failure> {
    doc.labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Failure(INPUT, format!("graph `{}` has no node `{label}`", doc.name)))
}

fn read_cpdag(doc: &GraphDocument) -> Result<Cpdag, Failure> {
    let g = doc.to_chain_graph().map_err(|e| fail(e, &doc.labels))?;
    if let Some(violation) = check_cpdag(&g) {
        return Err(Failure(INPUT, format!("not an essential graph: {}", violation.describe(&doc.labels))));
    }
    Cpdag::new(g).map_err(|e| fail(e, &doc.labels))
}

struct Run {
    quiet: bool,
    out: String,
    dot: Vec<GraphDocument>,
    inputs: Inputs,
}

impl Run {
    fn note(&mut self, line: &str) {
        if !self.quiet {
            self.out.push_str(line);
            self.out.push('\n');
        }
    }

    fn execute(&mut self, command: Command) -> Outcome {
        match command {
            Command::Udg { graph, cover } => self.udg(&graph, cover),
            Command::SameUec { a, b, explain } => self.same_uec(&a, &b, explain),
            Command::Transform { a, b, check } => self.transform(&a, &b, check),
            Command::Removable { graph, v, w } => self.removable(&graph, &v, &w),
            Command::Completions { graph, v, w } => self.completions(&graph, &v, &w),
            Command::Verify { claim, n, json } => self.verify(&claim, n, json),
        }
    }

    fn udg(&mut self, path: &str, cover: bool) -> Outcome {
        let doc = self.inputs.read(path)?;
        let g = doc.to_dag().map_err(|e| fail(e, &doc.labels))?;
        let u = GraphDocument::from_undirected(&doc.name, &doc.labels, udg_of(&g).edges());
        self.out.push_str(&u.emit());
        if cover {
            for &(s, clique) in clique_cover(&g).cliques() {
                let members: Vec<&str> = clique.iter().map(|v| doc.labels[v].as_str()).collect();
                let _ = writeln!(self.out, "# clique {}: {}", doc.labels[s], members.join(" "));
            }
        }
        self.dot.push(u);
        Ok(OK)
    }

    /// Reads two DAG documents, the second re-indexed to the first's labels.
    fn pair(&mut self, a: &str, b: &str) -> Result<(GraphDocument, uec_core::Dag, uec_core::Dag), Failure> {
        let da = self.inputs.read(a)?;
        let db = self.inputs.read(b)?.relabel_to(&da.labels).map_err(|e| fail(e, &da.labels))?;
        let ga = da.to_dag().map_err(|e| fail(e, &da.labels))?;
        let gb = db.to_dag().map_err(|e| fail(e, &da.labels))?;
        self.dot.push(da.clone());
        Ok((da, ga, gb))
    }

    fn same_uec(&mut self, a: &str, b: &str, explain: bool) -> Outcome {
        let (doc, ga, gb) = self.pair(a, b)?;
        let labels = &doc.labels;
        if same_uec(&ga, &gb).map_err(|e| fail(e, labels))? {
            self.note("equivalent");
            return Ok(OK);
        }
        self.note("not equivalent");
        if explain {
            if let Some((v, w)) = distinguishing_pair(&ga, &gb).map_err(|e| fail(e, labels))? {
                let side = if udg_of(&ga).adjacent(v, w) { "first" } else { "second" };
                let _ = writeln!(
                    self.out,
                    "{} and {} are dependent only in the {side} graph",
                    labels[v], labels[w]
                );
            }
        }
        Ok(FALSE)
    }

    fn transform(&mut self, a: &str, b: &str, check: bool) -> Outcome {
        let (doc, ga, gb) = self.pair(a, b)?;
        let labels = &doc.labels;
        let seq = transformation_sequence(&ga, &gb).map_err(|e| fail(e, labels))?;
        self.out.push_str(&seq.to_text(labels));
        if check {
            let steps = replay(&ga, &seq).map_err(|e| fail(e, labels))?;
            let last = steps.last().unwrap_or(&ga);
            if *last != gb {
                return Err(Failure(INTERNAL, "replaying the moves does not reach the second graph".into()));
            }
            let gained = gb.skeleton().edges().iter().filter(|&&(v, w)| !ga.adjacent(v, w)).count();
            let lost = ga.skeleton().edges().iter().filter(|&&(v, w)| !gb.adjacent(v, w)).count();
            let PhaseCounts { insert, reverse, delete } = seq.counts();
            if insert != gained || delete != lost {
                return Err(Failure(
                    INTERNAL,
                    format!("phase counts {insert}/{reverse}/{delete} do not match {gained} gained and {lost} lost adjacencies"),
                ));
            }
            self.note(&format!("# checked: {} moves ({insert} insert, {reverse} reverse, {delete} delete)", seq.len()));
        }
        Ok(OK)
    }

    fn cpdag_edge(&mut self, path: &str, v: &str, w: &str) -> Result<(GraphDocument, Cpdag, usize, usize), Failure> {
        let doc = self.inputs.read(path)?;
        let g = read_cpdag(&doc)?;
        let (v, w) = (node(&doc, v)?, node(&doc, w)?);
        if v == w {
            return Err(fail(Error::SameNode(v), &doc.labels));
        }
        if !g.has_directed(v, w) && !g.has_undirected(v, w) {
            return Err(fail(Error::MissingEdge(v, w), &doc.labels));
        }
        Ok((doc, g, v, w))
    }

    fn removable(&mut self, path: &str, v: &str, w: &str) -> Outcome {
        let (doc, g, v, w) = self.cpdag_edge(path, v, w)?;
        self.dot.push(doc.clone());
        if is_removable(&g, v, w).map_err(|e| fail(e, &doc.labels))? {
            self.note("removable");
            Ok(OK)
        } else {
            self.note("not removable");
            Ok(FALSE)
        }
    }

    fn completions(&mut self, path: &str, v: &str, w: &str) -> Outcome {
        let (doc, g, vi, wi) = self.cpdag_edge(path, v, w)?;
        let labels = &doc.labels;
        let prediction = predict_completions(&g, vi, wi).map_err(|e| match e {
            Error::Precondition(_) => {
                let arrow = if g.has_directed(vi, wi) { "->" } else { "--" };
                Failure(PRECONDITION, format!("edge {v} {arrow} {w} is not removable"))
            }
            e => fail(e, labels),
        })?;
        let found = materialize_completions(&g, vi, wi).map_err(|e| fail(e, labels))?;
        let _ = writeln!(self.out, "# predicted {}", prediction.predicted_count);
        if prediction.is_already_complete {
            self.out.push_str("# already complete\n");
        }
        for (i, c) in found.iter().enumerate() {
            if i > 0 {
                self.out.push('\n');
            }
            let d = GraphDocument::from_chain_graph(&format!("{}_{}", doc.name, i + 1), labels, c);
            self.out.push_str(&d.emit());
            self.dot.push(d);
        }
        let removed = g.without_edge(vi, wi).map_err(|e| fail(e, labels))?;
        let consistent = if prediction.is_already_complete {
            found.len() == 1 && *found[0].graph() == removed
        } else {
            found.len() == prediction.predicted_count
        };
        if !consistent {
            return Err(Failure(
                INTERNAL,
                format!(
                    "completion count mismatch: predicted {}{}, found {}",
                    prediction.predicted_count,
                    if prediction.is_already_complete { " (already complete)" } else { "" },
                    found.len()
                ),
            ));
        }
        Ok(OK)
    }

    fn verify(&mut self, claim: &str, n: usize, json: bool) -> Outcome {
        let no_labels: &[String] = &[];
        let reports: Vec<VerificationReport> = if claim.eq_ignore_ascii_case("all") {
            verify_all(n).map_err(|e| fail(e, no_labels))?
        } else {
            let known: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
            let c = Claim::from_id(claim).ok_or_else(|| {
                Failure(INPUT, format!("unknown claim `{claim}`; known claims: all, {}", known.join(", ")))
            })?;
            vec![verify(c, n).map_err(|e| fail(e, no_labels))?]
        };
        if json {
            let text = serde_json::to_string_pretty(&reports).map_err(|e| Failure(INTERNAL, e.to_string()))?;
            self.out.push_str(&text);
            self.out.push('\n');
        } else {
            for r in &reports {
                self.out.push_str(&r.to_text());
            }
        }
        Ok(if reports.iter().all(VerificationReport::passed) { OK } else { INTERNAL })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run = Run { quiet: cli.quiet, out: String::new(), dot: Vec::new(), inputs: Inputs { stdin_used: false } };
    let outcome = run.execute(cli.command);
    print!("{}", run.out);
    let status = match outcome {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            code
        }
    };
    if let Some(path) = cli.emit_dot {
        let dot: String = run.dot.iter().map(GraphDocument::to_dot).collect();
        if let Err(e) = std::fs::write(&path, dot) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(if status == OK { INPUT } else { status });
        }
    }
    ExitCode::from(status)
}
