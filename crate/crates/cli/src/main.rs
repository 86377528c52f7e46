use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cutwidth_core::exact::{brute_force_optimum, exact_optimum, pure_vertex_dp, subset_dp, ExactResult, SolverKind};
use cutwidth_core::generators::families::Graph;
use cutwidth_core::io;
use cutwidth_core::kernels::{ola_kernel, OlaKernelOutput};
use cutwidth_core::lean::{lean_refine, solve_pieces, turing_kernel, KernelOutput};
use cutwidth_core::obstructions::{
    best_degree_tangle, cvd_approx, cvd_branching, cvd_kernel, enumerate_minimal_obstructions,
    find_cutwidth_minimal, CutwidthOracle, Family, MinimalSearch,
};
use cutwidth_core::report::{verify, Certificate, GenParams, Report};
use cutwidth_core::tournament::{approximate_semicomplete, relaxation, tournament_exact};
use cutwidth_core::{Digraph, Objective, SolverCaps, VertexOrdering};

/// Cutwidth and optimal linear arrangement of digraphs.
///
/// Exit status: 0 answered, 1 negative decision, 2 usage or capability error.
#[derive(Parser, Debug)]
#[command(name = "cutwidth", version)]
struct Cli {
    /// Seed for randomised generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print the full JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest vertex count handed to the subset dynamic program.
    #[arg(long, global = true)]
    cap_n: Option<usize>,
    /// Largest number of non-pure vertices for the pure-vertex dynamic program.
    #[arg(long, global = true)]
    cap_k: Option<usize>,
    /// Omit the wall time so that reports are byte-stable.
    #[arg(long, global = true)]
    stable: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Solver {
    Auto,
    Brute,
    Dp,
    PureDp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    T,
    Sc,
}

#[derive(Args, Debug)]
struct Input {
    /// Digraph file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact cutwidth with a witness ordering.
    Ctw {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "auto")]
        solver: Solver,
    },
    /// Exact optimal linear arrangement cost with a witness ordering.
    Ola {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "auto")]
        solver: Solver,
    },
    /// Factor-two approximation for semi-complete digraphs.
    Approx {
        #[command(flatten)]
        input: Input,
    },
    /// Cutwidth and OLA of a tournament via its sorted ordering.
    Tournament {
        #[command(flatten)]
        input: Input,
    },
    /// Refines an ordering until it is lean.
    Lean {
        #[command(flatten)]
        input: Input,
        /// Starting ordering (1-based ids); defaults to the approximation on
        /// semi-complete inputs and the identity otherwise.
        #[arg(long)]
        ordering: Option<PathBuf>,
    },
    /// Splits `ctw <= c` on a semi-complete digraph into small pieces.
    TuringKernel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c: usize,
        /// Decide every piece exactly.
        #[arg(long)]
        solve: bool,
        /// Decide pieces on separate threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Linear vertex kernel for `OLA <= k`.
    OlaKernel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: u64,
    },
    /// Finds a (c+1)-cutwidth-minimal induced subdigraph.
    Obstruction {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c: u64,
    },
    /// Lists all c-cutwidth-minimal tournaments or semi-complete digraphs.
    Enumerate {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Deleting vertices to reach cutwidth at most c.
    Cvd {
        #[command(subcommand)]
        mode: CvdMode,
    },
    /// Instance generators; prints a digraph.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Re-checks a report from its witnesses and certificates.
    Verify {
        /// Report file, or `-` for standard input.
        report: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CvdMode {
    /// Exact bounded search with budget k.
    Branch {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        k: usize,
    },
    /// Deletes whole obstructions until none is left.
    Approx {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c: u64,
    },
    /// Sunflower kernel for budget k.
    Kernel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GenFamily {
    /// The basic digraph of a 3-CNF formula.
    Nae {
        /// DIMACS CNF file, or `-`.
        cnf: PathBuf,
    },
    /// The semi-complete complement of the formula digraph.
    ComplementNae { cnf: PathBuf },
    /// Circular tournament with cutwidth t(t+1)/2 - x.
    Circular {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        x: usize,
    },
    /// Cutwidth-minimal tournament on 2c+1 vertices.
    Minimal {
        #[arg(long)]
        c: usize,
        /// Reversed pairs as `tail:head,...` (1-based).
        #[arg(long)]
        matching: Option<String>,
    },
    /// Tournament encoding vertex cover of an undirected graph.
    Vc {
        /// Graph file (`p edge n m`), or `-`.
        graph: PathBuf,
        #[arg(long)]
        c: usize,
    },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "semicomplete")]
        kind: RandomKind,
        /// Probability of a symmetric pair (semicomplete) or of an arc (digraph).
        #[arg(long, default_value_t = 0.2)]
        p: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RandomKind {
    Semicomplete,
    Tournament,
    Digraph,
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

struct Outcome {
    report: Report,
    text: String,
    negative: bool,
}

impl Outcome {
    fn new(report: Report, text: String) -> Self {
        Outcome {
            report,
            text,
            negative: false,
        }
    }

    fn negative(mut self) -> Self {
        self.negative = true;
        self
    }
}

fn read_source(path: &Path) -> AnyResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
    }
}

fn read_digraph(input: &Input) -> AnyResult<Digraph> {
    let text = read_source(&input.input)?;
    io::parse_digraph(&text).map_err(|e| format!("{}: {e}", input.input.display()).into())
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn solver_name(kind: SolverKind) -> String {
    serde_json::to_value(kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn witness_lines(report: &Report) -> String {
    let mut s = String::new();
    if let Some(w) = &report.witness {
        s += &format!("witness {}\n", joined(w));
    }
    if let Some(cv) = &report.cut_vector {
        s += &format!("cut vector {}\n", joined(cv));
    }
    s
}

fn exact_report(command: &str, d: &Digraph, res: &ExactResult) -> AnyResult<Report> {
    let mut r = Report::new(command, Some(d)).with_witness(d, &res.ordering)?;
    r.objective = Some(res.objective);
    r.value = Some(res.value);
    r.solver = Some(solver_name(res.solver));
    r.certificates.push(Certificate::Optimal {
        objective: res.objective,
    });
    Ok(r)
}

fn solve_exact(command: &str, input: &Input, solver: Solver, objective: Objective, caps: &SolverCaps) -> AnyResult<Outcome> {
    let d = read_digraph(input)?;
    let res = match solver {
        Solver::Auto => exact_optimum(&d, objective, caps)?,
        Solver::Brute => brute_force_optimum(&d, objective, caps)?,
        Solver::Dp => subset_dp(&d, objective, caps)?,
        Solver::PureDp => pure_vertex_dp(&d, objective, caps)?,
    };
    let r = exact_report(command, &d, &res)?;
    let label = match objective {
        Objective::Cutwidth => "cutwidth",
        Objective::Ola => "ola",
    };
    let text = format!("{label} {}\n{}solver {}\n", res.value, witness_lines(&r), solver_name(res.solver));
    Ok(Outcome::new(r, text))
}

fn parse_matching(text: &str) -> AnyResult<Vec<(usize, usize)>> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| format!("matching pair '{p}' is not tail:head"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn generate(family: &GenFamily, seed: u64) -> AnyResult<Outcome> {
    let params = match family {
        GenFamily::Nae { cnf } => GenParams::Nae {
            cnf: io::write_cnf(&io::parse_cnf(&read_source(cnf)?)?),
        },
        GenFamily::ComplementNae { cnf } => GenParams::ComplementNae {
            cnf: io::write_cnf(&io::parse_cnf(&read_source(cnf)?)?),
        },
        GenFamily::Circular { t, x } => GenParams::Circular { t: *t, x: *x },
        GenFamily::Minimal { c, matching } => GenParams::Minimal {
            c: *c,
            matching: matching.as_deref().map(parse_matching).transpose()?,
        },
        GenFamily::Vc { graph, c } => {
            let g: Graph = io::parse_graph(&read_source(graph)?)?;
            GenParams::Vc {
                graph: io::write_graph(&g),
                c: *c,
            }
        }
        GenFamily::Random { n, kind, p } => match kind {
            RandomKind::Semicomplete => GenParams::RandomSemicomplete { n: *n, p_sym: *p, seed },
            RandomKind::Tournament => GenParams::RandomTournament { n: *n, seed },
            RandomKind::Digraph => GenParams::RandomDigraph { n: *n, p: *p, seed },
        },
    };
    let d = params.generate()?;
    let text = io::write_digraph(&d);
    let mut r = Report::new("gen", None);
    r.output = Some(text.clone());
    if matches!(family, GenFamily::Random { .. }) {
        r.seed = Some(seed);
    }
    r.certificates.push(Certificate::Generated { params });
    Ok(Outcome::new(r, text))
}

fn run(cli: &Cli) -> AnyResult<Outcome> {
    let defaults = SolverCaps::default();
    let caps = SolverCaps {
        brute_force_n: cli.cap_n.map_or(defaults.brute_force_n, |n| n.min(defaults.brute_force_n)),
        subset_n: cli.cap_n.unwrap_or(defaults.subset_n),
        non_pure_k: cli.cap_k.unwrap_or(defaults.non_pure_k),
    };
    let oracle = CutwidthOracle::new(caps);

    Ok(match &cli.command {
        Command::Ctw { input, solver } => solve_exact("ctw", input, *solver, Objective::Cutwidth, &caps)?,
        Command::Ola { input, solver } => solve_exact("ola", input, *solver, Objective::Ola, &caps)?,
        Command::Approx { input } => {
            let d = read_digraph(input)?;
            let a = approximate_semicomplete(&d)?;
            let mut r = Report::new("approx", Some(&d)).with_witness(&d, &a.ordering)?;
            r.certificates.push(Certificate::Approximation);
            let text = format!("width {}\ncost {}\n{}", a.width, a.cost, witness_lines(&r));
            Outcome::new(r, text)
        }
        Command::Tournament { input } => {
            let d = read_digraph(input)?;
            let (ctw, ola) = tournament_exact(&d)?;
            let mut r = exact_report("tournament", &d, &ctw)?;
            r.certificates.push(Certificate::Optimal {
                objective: Objective::Ola,
            });
            let mut text = format!("cutwidth {}\nola {}\n{}", ctw.value, ola.value, witness_lines(&r));
            if let Some(t) = best_degree_tangle(&relaxation(&d)?) {
                text += &format!("tangle lower bound {} from {} vertices\n", t.bound, t.vertices.len());
                r.certificates.push(Certificate::from(&t));
            }
            Outcome::new(r, text)
        }
        Command::Lean { input, ordering } => {
            let d = read_digraph(input)?;
            let start = match ordering {
                Some(p) => io::parse_ordering(&read_source(p)?)?,
                None if d.is_semicomplete() => approximate_semicomplete(&d)?.ordering,
                None => VertexOrdering::identity(d.n()),
            };
            let refined = lean_refine(&d, &start)?;
            let mut r = Report::new("lean", Some(&d)).with_witness(&d, &refined.ordering)?;
            r.certificates.push(Certificate::Lean {
                refinement_steps: refined.steps.len(),
            });
            let text = format!(
                "steps {}\nwidth {}\ncost {}\n{}",
                refined.steps.len(),
                refined.cuts.width(),
                refined.cuts.cost(),
                witness_lines(&r)
            );
            Outcome::new(r, text)
        }
        Command::TuringKernel {
            input,
            c,
            solve,
            parallel,
        } => {
            let d = read_digraph(input)?;
            let mut r = Report::new("turing-kernel", Some(&d));
            match turing_kernel(&d, *c)? {
                KernelOutput::Reject { approximation_width } => {
                    r.verdict = Some("REJECT".into());
                    r.certificates.push(Certificate::KernelReject {
                        c: *c,
                        approximation_width,
                    });
                    let text = format!("verdict REJECT\napproximation width {approximation_width} > {}\n", 2 * c);
                    Outcome::new(r, text).negative()
                }
                KernelOutput::Pieces { pieces, .. } => {
                    let ids: Vec<Vec<usize>> = pieces.iter().map(|p| io::to_one_based(&p.vertices)).collect();
                    let mut text = format!("pieces {}\n", pieces.len());
                    for p in &ids {
                        text += &format!("piece {}\n", joined(p));
                    }
                    let mut witnesses = None;
                    let mut negative = false;
                    if *solve {
                        let answers = solve_pieces(&pieces, *c, &caps, *parallel)?;
                        let holds = answers.iter().all(|a| a.holds);
                        if holds {
                            witnesses = Some(
                                answers
                                    .iter()
                                    .map(|a| io::to_one_based(a.witness.as_ref().expect("holds").sequence()))
                                    .collect(),
                            );
                        }
                        negative = !holds;
                        let verdict = if holds { "YES" } else { "NO" };
                        r.verdict = Some(verdict.into());
                        text = format!("verdict {verdict}\n{text}");
                    } else {
                        r.verdict = Some("PIECES".into());
                    }
                    r.certificates.push(Certificate::KernelPieces {
                        c: *c,
                        pieces: ids,
                        piece_witnesses: witnesses,
                    });
                    let out = Outcome::new(r, text);
                    if negative {
                        out.negative()
                    } else {
                        out
                    }
                }
            }
        }
        Command::OlaKernel { input, k } => {
            let d = read_digraph(input)?;
            let mut r = Report::new("ola-kernel", Some(&d));
            match ola_kernel(&d, *k)? {
                OlaKernelOutput::Reject { remaining } => {
                    r.verdict = Some("REJECT".into());
                    r.certificates.push(Certificate::OlaReject { k: *k, remaining });
                    let text = format!("verdict REJECT\n{remaining} vertices on cycles > {}\n", 2 * k);
                    Outcome::new(r, text).negative()
                }
                OlaKernelOutput::Reduced { vertices, digraph } => {
                    let ids = io::to_one_based(&vertices);
                    r.verdict = Some("REDUCED".into());
                    r.output = Some(io::write_digraph(&digraph));
                    let text = format!("c kept vertices {}\n{}", joined(&ids), io::write_digraph(&digraph));
                    r.certificates.push(Certificate::OlaReduced { k: *k, vertices: ids });
                    Outcome::new(r, text)
                }
            }
        }
        Command::Obstruction { input, c } => {
            let d = read_digraph(input)?;
            let mut r = Report::new("obstruction", Some(&d));
            match find_cutwidth_minimal(&d, *c, &oracle)? {
                MinimalSearch::WithinBound { cutwidth } => {
                    r.objective = Some(Objective::Cutwidth);
                    r.value = Some(cutwidth);
                    r.verdict = Some("NO".into());
                    Outcome::new(r, format!("no obstruction: cutwidth {cutwidth} <= {c}\n")).negative()
                }
                MinimalSearch::Obstruction(o) => {
                    let ids = io::to_one_based(&o.vertices);
                    r.verdict = Some("YES".into());
                    let text = format!("obstruction {}\nthreshold {}\n", joined(&ids), o.threshold);
                    r.certificates.push(Certificate::Obstruction {
                        vertices: ids,
                        threshold: o.threshold,
                    });
                    Outcome::new(r, text)
                }
            }
        }
        Command::Enumerate { c, nmax, family } => {
            let (family, name) = match family {
                FamilyArg::T => (Family::Tournament, "t"),
                FamilyArg::Sc => (Family::Semicomplete, "sc"),
            };
            let entries = enumerate_minimal_obstructions(*c, *nmax, family, &caps)?;
            let members: Vec<String> = entries.iter().map(|e| io::write_digraph(&e.digraph)).collect();
            let mut text = format!("obstructions {}\n", entries.len());
            for (e, m) in entries.iter().zip(&members) {
                text += &format!("c n {} cutwidth {}\n{m}", e.n, e.cutwidth);
            }
            let mut r = Report::new("enumerate", None);
            r.certificates.push(Certificate::Catalog {
                c: *c,
                family: name.into(),
                members,
            });
            Outcome::new(r, text)
        }
        Command::Cvd { mode } => match mode {
            CvdMode::Branch { input, c, k } => {
                let d = read_digraph(input)?;
                let mut r = Report::new("cvd branch", Some(&d));
                match cvd_branching(&d, *c, *k, &oracle)? {
                    Some(set) => {
                        let ids = io::to_one_based(&set.vertices);
                        r.verdict = Some("YES".into());
                        let text = format!("verdict YES\ndelete {}\n", joined(&ids));
                        r.certificates.push(Certificate::DeletionSet { vertices: ids, c: *c });
                        Outcome::new(r, text)
                    }
                    None => {
                        r.verdict = Some("NO".into());
                        Outcome::new(r, format!("verdict NO\nno deletion set of size <= {k}\n")).negative()
                    }
                }
            }
            CvdMode::Approx { input, c } => {
                let d = read_digraph(input)?;
                let set = cvd_approx(&d, *c, &oracle)?;
                let ids = io::to_one_based(&set.vertices);
                let mut r = Report::new("cvd approx", Some(&d));
                let text = format!("delete {}\nsize {}\n", joined(&ids), ids.len());
                r.certificates.push(Certificate::DeletionSet { vertices: ids, c: *c });
                Outcome::new(r, text)
            }
            CvdMode::Kernel { input, c, k } => {
                let d = read_digraph(input)?;
                let kern = cvd_kernel(&d, *c, *k, &oracle)?;
                let ids = io::to_one_based(&kern.vertices);
                let family: Vec<Vec<usize>> = kern.reduced_family.iter().map(|s| io::to_one_based(s)).collect();
                let mut r = Report::new("cvd kernel", Some(&d));
                r.output = Some(io::write_digraph(&kern.digraph));
                let text = format!(
                    "c kept vertices {}\nc obstruction sets {} of {}\n{}",
                    joined(&ids),
                    family.len(),
                    kern.family.len(),
                    io::write_digraph(&kern.digraph)
                );
                r.certificates.push(Certificate::CvdKernel {
                    c: *c,
                    k: *k,
                    vertices: ids,
                    family,
                });
                Outcome::new(r, text)
            }
        },
        Command::Gen { family } => generate(family, cli.seed)?,
        Command::Verify { report } => {
            let rep = Report::from_json(&read_source(report)?)?;
            let v = verify(&rep, &caps)?;
            let mut text = String::new();
            for c in &v.checks {
                text += &format!("{} {}: {}\n", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail);
            }
            text += if v.passed() { "verified\n" } else { "verification failed\n" };
            let mut r = Report::new("verify", None);
            r.verdict = Some(if v.passed() { "YES" } else { "NO" }.into());
            r.output = Some(serde_json::to_string(&v)?);
            let out = Outcome::new(r, text);
            if v.passed() {
                out
            } else {
                out.negative()
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            if !cli.stable {
                out.report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = if cli.json { out.report.to_json() + "\n" } else { out.text };
            // A closed pipe is not an error.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if out.negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
