use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use braidlaz_core::braid::{
    braid_cobordism, closure_summary, free_reduce, insert_relator, is_pure, left_normal_form, markov_move,
    permutation_of, words_equal, BraidWord, GroupCode, MarkovMove,
};
use braidlaz_core::fgl::{
    bud_defects, cocycle_divisor, fgl_from_log, log_of_bud, mishchenko_classes, quillen_c1_tensor, specialize,
    sym_cocycle, universal_bud_bounded, universal_tower, Bud, GradedPolynomial, LazardState, LogSeries,
};
use braidlaz_core::kz::{
    check_infinitesimal_relations, curvature_is_zero, holonomy_with, numeric_curvature_sample,
    permutation_representation, sn_equivariance_check, transposition_system, ConfigurationPoint, HolonomyOptions,
    InfinitesimalSystem, LoopPath, RationalMatrix, RelationReport,
};
use braidlaz_core::rational::{format_rational, parse_rational};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::json::{
    matrix_from_json, BraidJson, ClosureJson, CobordismJson, DefectsJson, HolonomyJson, NormalFormJson, PolyJson,
    RationalRows, ReportJson, SystemJson,
};
use crate::text::{
    format_braid, format_complex, format_matrix, parse_braid, parse_loop_spec, parse_polyline, parse_polynomial,
    parse_rational_point, parse_word, LoopSpec,
};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Braids, the Knizhnik–Zamolodchikov connection and Lazard's formal group law.
#[derive(Debug, Parser)]
#[command(name = "braidlaz", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every random choice; echoed in the output of commands that use it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest series degree a command may work to.
    #[arg(long, global = true, default_value_t = 32)]
    pub max_degree: u32,
    /// Largest Lazard stage a command may build.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_stages: usize,
    /// Worker threads for commands with independent sub-tasks.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Braid words: normal forms, the word problem, closures and Markov moves.
    Braid {
        #[command(subcommand)]
        command: BraidCommand,
    },
    /// Formal group laws: cocycles, buds, the universal tower and its logarithm.
    Fgl {
        #[command(subcommand)]
        command: FglCommand,
    },
    /// Infinitesimal braid relations and the KZ connection.
    Kz {
        #[command(subcommand)]
        command: KzCommand,
    },
}

/// A braid word from the command line, a file or standard input.
///
/// With `--n` the word is bare letters (`"1 2 -1"`); without it the input is
/// the headed form `n=3` / `1 2 -1`, or the JSON form.
#[derive(Debug, Args)]
pub struct WordInput {
    /// Number of strands.
    #[arg(long)]
    pub n: Option<usize>,
    /// The word; `-` reads standard input.
    #[arg(allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Read the word from a file instead.
    #[arg(long, conflicts_with = "word")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BraidCommand {
    /// Cancel adjacent inverse letters.
    Reduce(WordInput),
    /// Left normal form `Δ^inf · A_1 ⋯ A_k`.
    Nf(WordInput),
    /// Decide whether two words are the same braid, or test random equal pairs.
    Eq {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true, required_unless_present = "insert_relators")]
        u: Option<String>,
        #[arg(allow_hyphen_values = true, required_unless_present = "insert_relators")]
        v: Option<String>,
        /// Instead of comparing two words, build this many pairs by relator insertion.
        #[arg(long, conflicts_with_all = ["u", "v"])]
        insert_relators: Option<usize>,
        /// Longest random base word for `--insert-relators`.
        #[arg(long, default_value_t = 20)]
        length: usize,
    },
    /// Permutation of the strands, as images of the final positions.
    Perm(WordInput),
    /// Whether the braid is pure.
    Pure(WordInput),
    /// Components and exponent sum of the closure.
    Closure(WordInput),
    /// Apply a Markov move: `conjugate:<letters>`, `stabilize`, `stabilize-`, `destabilize`.
    Markov {
        #[command(flatten)]
        input: WordInput,
        #[arg(long = "move")]
        mv: String,
    },
    /// Endpoints of the cobordism of intervals traced by the strands.
    Cobordism(WordInput),
}

/// Which bud a command works with.
#[derive(Debug, Args)]
pub struct LawInput {
    /// The universal bud of this stage.
    #[arg(long, conflicts_with = "law")]
    pub stages: Option<usize>,
    /// An explicit law `F(x, y)`; `-` reads standard input.
    #[arg(long, allow_hyphen_values = true)]
    pub law: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum FglCommand {
    /// The primitive symmetric 2-cocycle of degree n.
    Cocycle {
        #[arg(long)]
        n: u32,
    },
    /// Associativity, commutativity and unit defects modulo degree m + 1.
    Defects {
        #[arg(allow_hyphen_values = true)]
        law: String,
        #[arg(long)]
        m: u32,
    },
    /// The universal bud of a stage.
    Universal {
        #[arg(long)]
        stages: usize,
        /// Print every stage up to the requested one.
        #[arg(long)]
        tower: bool,
    },
    /// Logarithm of the universal bud of a stage, or of an explicit law.
    Log {
        #[command(flatten)]
        source: LawInput,
        /// Bud degree of an explicit law.
        #[arg(long)]
        m: Option<u32>,
    },
    /// The law `φ^{-1}(φ(x) + φ(y))` of a logarithm given as a series in t.
    Exp {
        #[arg(allow_hyphen_values = true)]
        log: String,
        #[arg(long)]
        m: u32,
    },
    /// The classes `[CP^k]` read off the logarithm.
    Mishchenko {
        #[arg(long)]
        stages: usize,
    },
    /// First Chern class of a tensor product, `F(a, b)`.
    Quillen {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        source: LawInput,
        /// Truncation degree (and the bud degree of an explicit law).
        #[arg(long)]
        m: u32,
    },
    /// Substitute values for the generators: `--assign 1=2 --assign 2=a1^2`.
    Specialize {
        #[arg(long)]
        stages: usize,
        #[arg(long = "assign", required = true)]
        assignments: Vec<String>,
    },
}

/// An infinitesimal system from a JSON file or a built-in example.
#[derive(Debug, Args)]
pub struct SystemInput {
    /// System JSON; `-` reads standard input.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "example")]
    pub file: Option<String>,
    /// The transposition system `n,d` instead of a file.
    #[arg(long, conflicts_with = "file")]
    pub example: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum KzCommand {
    /// Check the infinitesimal braid relations exactly.
    Check(SystemInput),
    /// Decide flatness of the connection, with the relation report as witness.
    Curvature(SystemInput),
    /// Largest entry of the curvature at configuration points such as `0,1,2+i`.
    Sample {
        #[command(flatten)]
        system: SystemInput,
        #[arg(long = "point", required = true)]
        points: Vec<String>,
    },
    /// Whether the system is equivariant under a representation of S_n.
    Equivariance {
        #[command(flatten)]
        system: SystemInput,
        /// JSON list of the matrices of s_1 … s_{n-1}; defaults to permuting tensor factors.
        #[arg(long)]
        rho: Option<PathBuf>,
    },
    /// Parallel transport around a loop (repeat `--loop` to concatenate).
    Holonomy {
        #[command(flatten)]
        system: SystemInput,
        #[arg(long = "loop", required = true)]
        loops: Vec<String>,
        #[arg(long, default_value_t = 4096)]
        steps: usize,
        /// Integrate even if the relations fail.
        #[arg(long)]
        allow_non_flat: bool,
        /// Minimum distance between points, relative to the configuration diameter.
        #[arg(long, default_value_t = 1e-6)]
        clearance: f64,
    },
    /// Print the transposition system for n points and factor dimension d.
    Example {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Multiply every matrix by this rational.
        #[arg(long)]
        scale: Option<String>,
    },
}

/// Exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut ctx = Context {
        cli: &cli,
        stdin,
        stdin_used: false,
    };
    match ctx.dispatch() {
        Ok(mut stdout) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if let CliError::Usage(_) = e {
                let _ = write!(stderr, "\n{}\n", Cli::command().render_usage());
            }
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

struct Context<'a> {
    cli: &'a Cli,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("values serialize")
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

impl Context<'_> {
    fn json(&self) -> bool {
        self.cli.format == Format::Json
    }

    fn read_stdin(&mut self) -> Result<String, CliError> {
        if self.stdin_used {
            return Err(usage("standard input can only be read once"));
        }
        self.stdin_used = true;
        let mut s = String::new();
        self.stdin
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
        Ok(s)
    }

    /// The argument itself, or standard input for `-`.
    fn inline_or_stdin(&mut self, arg: &str) -> Result<String, CliError> {
        if arg == "-" {
            self.read_stdin()
        } else {
            Ok(arg.to_string())
        }
    }

    fn path_or_stdin(&mut self, arg: &str) -> Result<String, CliError> {
        if arg == "-" {
            self.read_stdin()
        } else {
            read_file(Path::new(arg))
        }
    }

    fn dispatch(&mut self) -> Result<String, CliError> {
        match &self.cli.command {
            Command::Braid { command } => self.braid(command),
            Command::Fgl { command } => self.fgl(command),
            Command::Kz { command } => self.kz(command),
        }
    }

    // ---------------------------------------------------------------- braids

    fn word(&mut self, input: &WordInput) -> Result<BraidWord, CliError> {
        let text = match (&input.file, &input.word) {
            (Some(path), _) => read_file(path)?,
            (None, Some(w)) => self.inline_or_stdin(w)?,
            (None, None) => return Err(usage("missing braid word (give it, `-`, or --file)")),
        };
        parse_any_word(input.n, &text)
    }

    fn braid(&mut self, command: &BraidCommand) -> Result<String, CliError> {
        let json = self.json();
        let emit_word = |w: &BraidWord| {
            if json {
                to_json(&BraidJson::from(w))
            } else {
                format_braid(w)
            }
        };
        Ok(match command {
            BraidCommand::Reduce(input) => emit_word(&free_reduce(&self.word(input)?)),
            BraidCommand::Nf(input) => {
                let nf = left_normal_form(&self.word(input)?);
                if json {
                    to_json(&NormalFormJson::from(&nf))
                } else {
                    let mut out = format!("n={} inf={}\n", nf.strands, nf.inf);
                    for f in &nf.factors {
                        let _ = writeln!(out, "{f}");
                    }
                    out
                }
            }
            BraidCommand::Eq {
                n,
                u,
                v,
                insert_relators,
                length,
            } => match insert_relators {
                Some(count) => self.random_pairs(*n, *count, *length)?,
                None => {
                    let u = u.as_deref().expect("clap requires u");
                    let v = v.as_deref().expect("clap requires v");
                    let u = self.inline_or_stdin(u)?;
                    let v = self.inline_or_stdin(v)?;
                    let equal = words_equal(&parse_word(*n, &u)?, &parse_word(*n, &v)?).map_err(domain)?;
                    if json {
                        to_json(&json!({ "equal": equal }))
                    } else {
                        equal.to_string()
                    }
                }
            },
            BraidCommand::Perm(input) => {
                let p = permutation_of(&self.word(input)?);
                if json {
                    to_json(&json!({ "permutation": p.images() }))
                } else {
                    p.to_string()
                }
            }
            BraidCommand::Pure(input) => {
                let pure = is_pure(&self.word(input)?);
                if json {
                    to_json(&json!({ "pure": pure }))
                } else {
                    pure.to_string()
                }
            }
            BraidCommand::Closure(input) => {
                let c = closure_summary(&self.word(input)?);
                if json {
                    to_json(&ClosureJson::from(&c))
                } else {
                    format!(
                        "strands={} components={} exponent_sum={}",
                        c.strands, c.components, c.exponent_sum
                    )
                }
            }
            BraidCommand::Markov { input, mv } => {
                let w = self.word(input)?;
                let mv = parse_move(w.strands(), mv)?;
                emit_word(&markov_move(&w, &mv).map_err(domain)?)
            }
            BraidCommand::Cobordism(input) => {
                let c = braid_cobordism(&self.word(input)?);
                if json {
                    to_json(&CobordismJson::from(&c))
                } else {
                    let pts = |ps: &[[i64; 3]]| {
                        ps.iter()
                            .map(|p| format!("({},{},{})", p[0], p[1], p[2]))
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    format!(
                        "intervals={}\ntop: {}\nbottom: {}\npermutation: {}",
                        c.intervals,
                        pts(&c.top),
                        pts(&c.bottom),
                        c.permutation
                    )
                }
            }
        })
    }

    /// Seeded pairs `(w, w with a relator inserted)`, all of which must be equal.
    fn random_pairs(&self, n: usize, count: usize, length: usize) -> Result<String, CliError> {
        let code = GroupCode::artin(n).map_err(usage)?;
        if code.relators().is_empty() {
            return Err(usage(format!("B_{n} has no relators to insert")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.cli.seed);
        let mut equal = 0usize;
        let mut failures = Vec::new();
        for k in 0..count {
            let w = random_word(&mut rng, n, length);
            let conj = random_word(&mut rng, n, 4);
            let idx = rng.gen_range(0..code.relators().len());
            let pos = rng.gen_range(0..=w.len());
            let other = insert_relator(&w, &code, idx, pos, Some(&conj)).map_err(domain)?;
            if words_equal(&w, &other).map_err(domain)? {
                equal += 1;
            } else {
                failures.push(k);
            }
        }
        Ok(if self.json() {
            to_json(&json!({ "seed": self.cli.seed, "pairs": count, "equal": equal, "failures": failures }))
        } else {
            format!("seed={} pairs={count} equal={equal}", self.cli.seed)
        })
    }

    // --------------------------------------------------------- formal groups

    fn polynomial(&mut self, arg: &str) -> Result<GradedPolynomial, CliError> {
        let text = self.inline_or_stdin(arg)?;
        parse_polynomial(&text)
    }

    fn check_degree(&self, m: u32) -> Result<(), CliError> {
        if m > self.cli.max_degree {
            return Err(usage(format!(
                "degree {m} exceeds --max-degree {}",
                self.cli.max_degree
            )));
        }
        Ok(())
    }

    fn stage(&self, q: usize) -> Result<LazardState, CliError> {
        if q > self.cli.max_stages {
            return Err(usage(format!("stage {q} exceeds --max-stages {}", self.cli.max_stages)));
        }
        universal_bud_bounded(q, self.cli.max_stages).map_err(domain)
    }

    fn law(&mut self, source: &LawInput, m: Option<u32>) -> Result<Bud, CliError> {
        match (source.stages, &source.law) {
            (Some(q), _) => Ok(self.stage(q)?.law().clone()),
            (None, Some(text)) => {
                let m = m.ok_or_else(|| usage("an explicit --law needs --m"))?;
                self.check_degree(m)?;
                Bud::new(self.polynomial(text)?, m).map_err(domain)
            }
            (None, None) => Err(usage("give --stages or --law")),
        }
    }

    fn emit_poly(&self, p: &GradedPolynomial, degree: u32) -> String {
        if self.json() {
            to_json(&PolyJson::new(p, degree))
        } else {
            p.to_string()
        }
    }

    fn fgl(&mut self, command: &FglCommand) -> Result<String, CliError> {
        match command {
            FglCommand::Cocycle { n } => {
                self.check_degree(*n)?;
                let c = sym_cocycle(*n).map_err(domain)?;
                Ok(if self.json() {
                    to_json(
                        &json!({ "n": n, "divisor": cocycle_divisor(*n).to_string(), "cocycle": PolyJson::new(&c, *n) }),
                    )
                } else {
                    c.to_string()
                })
            }
            FglCommand::Defects { law, m } => {
                self.check_degree(*m)?;
                let d = bud_defects(&self.polynomial(law)?, *m);
                Ok(if self.json() {
                    to_json(&DefectsJson::new(&d, *m))
                } else {
                    format!(
                        "associativity: {}\ncommutativity: {}\nunit: {}",
                        d.associativity, d.commutativity, d.unit
                    )
                })
            }
            FglCommand::Universal { stages, tower } => {
                if *stages > self.cli.max_stages {
                    return Err(usage(format!(
                        "stage {stages} exceeds --max-stages {}",
                        self.cli.max_stages
                    )));
                }
                let states = if *tower {
                    universal_tower(*stages, self.cli.max_stages).map_err(domain)?
                } else {
                    vec![self.stage(*stages)?]
                };
                Ok(if self.json() {
                    let laws: Vec<PolyJson> = states.iter().map(|s| PolyJson::from(s.law())).collect();
                    if *tower {
                        to_json(&laws)
                    } else {
                        to_json(&laws[0])
                    }
                } else if *tower {
                    states
                        .iter()
                        .map(|s| format!("f{} = {}\n", s.stage(), s.law().law()))
                        .collect()
                } else {
                    states[0].law().law().to_string()
                })
            }
            FglCommand::Log { source, m } => {
                let log = match source.stages {
                    Some(q) => self.stage(q)?.log().clone(),
                    None => log_of_bud(&self.law(source, *m)?).map_err(domain)?,
                };
                Ok(self.emit_log(&log))
            }
            FglCommand::Exp { log, m } => {
                self.check_degree(*m)?;
                let p = self.polynomial(log)?;
                let phi = LogSeries::from_polynomial(&p, *m).map_err(usage)?;
                let bud = fgl_from_log(&phi, *m).map_err(domain)?;
                Ok(self.emit_poly(bud.law(), bud.degree()))
            }
            FglCommand::Mishchenko { stages } => {
                let classes = mishchenko_classes(&self.stage(*stages)?);
                Ok(if self.json() {
                    let list: Vec<PolyJson> = classes.classes().iter().map(PolyJson::of_polynomial).collect();
                    to_json(&json!({ "stages": stages, "classes": list }))
                } else {
                    classes
                        .classes()
                        .iter()
                        .enumerate()
                        .map(|(k, c)| format!("[CP^{k}] = {c}\n"))
                        .collect()
                })
            }
            FglCommand::Quillen { a, b, source, m } => {
                self.check_degree(*m)?;
                let bud = self.law(source, Some(*m))?;
                let a = self.polynomial(a)?;
                let b = self.polynomial(b)?;
                let c = quillen_c1_tensor(&bud, &a, &b, *m).map_err(domain)?;
                Ok(self.emit_poly(&c, (*m).min(bud.degree())))
            }
            FglCommand::Specialize { stages, assignments } => {
                let state = self.stage(*stages)?;
                let mut map = BTreeMap::new();
                for a in assignments {
                    let (k, value) = parse_assignment(a)?;
                    map.insert(k, value);
                }
                let bud = specialize(state.law(), &map).map_err(domain)?;
                Ok(self.emit_poly(bud.law(), bud.degree()))
            }
        }
    }

    fn emit_log(&self, log: &LogSeries) -> String {
        if self.json() {
            to_json(&PolyJson::from(log))
        } else {
            log.to_polynomial(braidlaz_core::fgl::Var::T).to_string()
        }
    }

    // -------------------------------------------------------------------- kz

    fn system(&mut self, input: &SystemInput) -> Result<InfinitesimalSystem, CliError> {
        if let Some(spec) = &input.example {
            let (n, d) = parse_example(spec)?;
            return transposition_system(n, d).map_err(usage);
        }
        let path = input.file.as_deref().expect("clap requires --file or --example");
        let text = self.path_or_stdin(path)?;
        let j: SystemJson = serde_json::from_str(&text).map_err(|e| usage(format!("system JSON: {e}")))?;
        InfinitesimalSystem::try_from(&j)
    }

    fn emit_report(&self, report: &RelationReport, label: &str, ok: bool) -> String {
        if self.json() {
            return to_json(&json!({ label: ok, "report": ReportJson::from(report) }));
        }
        let mut out = format!("{label}={ok}\n");
        for ((a, b), (c, d)) in &report.commuting_violations {
            let _ = writeln!(out, "commuting violation: A{a}{b} and A{c}{d}");
        }
        for t in &report.triangle_violations {
            let (i, j, k) = t.triple;
            let _ = writeln!(
                out,
                "triangle violation: ({i},{j},{k}) left_vanishes={} right_vanishes={} brackets_agree={}",
                t.left_vanishes, t.right_vanishes, t.brackets_agree
            );
        }
        let _ = writeln!(out, "max_residual={}", format_rational(&report.max_residual));
        out
    }

    fn kz(&mut self, command: &KzCommand) -> Result<String, CliError> {
        match command {
            KzCommand::Check(input) => {
                let report = check_infinitesimal_relations(&self.system(input)?);
                let ok = report.is_empty();
                Ok(self.emit_report(&report, "satisfied", ok))
            }
            KzCommand::Curvature(input) => {
                let w = curvature_is_zero(&self.system(input)?);
                Ok(self.emit_report(&w.report, "flat", w.flat))
            }
            KzCommand::Sample { system, points } => {
                let sys = self.system(system)?;
                let points: Vec<ConfigurationPoint> = points
                    .iter()
                    .map(|p| parse_rational_point(p).map(ConfigurationPoint::new))
                    .collect::<Result<_, _>>()?;
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(self.cli.threads.unwrap_or(1).max(1))
                    .build()
                    .map_err(domain)?;
                let residuals = pool.install(|| {
                    points
                        .par_iter()
                        .map(|p| numeric_curvature_sample(&sys, p))
                        .collect::<Result<Vec<_>, _>>()
                });
                let residuals = residuals.map_err(domain)?;
                Ok(if self.json() {
                    let list: Vec<String> = residuals.iter().map(format_rational).collect();
                    to_json(&json!({ "residuals": list }))
                } else {
                    residuals
                        .iter()
                        .enumerate()
                        .map(|(k, r)| format!("point {}: {}\n", k + 1, format_rational(r)))
                        .collect()
                })
            }
            KzCommand::Equivariance { system, rho } => {
                let sys = self.system(system)?;
                let rho = match rho {
                    Some(path) => {
                        let rows: Vec<RationalRows> = serde_json::from_str(&read_file(path)?)
                            .map_err(|e| usage(format!("representation JSON: {e}")))?;
                        rows.iter()
                            .map(matrix_from_json)
                            .collect::<Result<Vec<RationalMatrix>, _>>()?
                    }
                    None => {
                        let d = tensor_root(sys.dim(), sys.points()).ok_or_else(|| {
                            usage(format!(
                                "dimension {} is not a {}-th power; pass --rho",
                                sys.dim(),
                                sys.points()
                            ))
                        })?;
                        permutation_representation(sys.points(), d)
                    }
                };
                let ok = sn_equivariance_check(&sys, &rho).map_err(domain)?;
                Ok(if self.json() {
                    to_json(&json!({ "equivariant": ok }))
                } else {
                    ok.to_string()
                })
            }
            KzCommand::Holonomy {
                system,
                loops,
                steps,
                allow_non_flat,
                clearance,
            } => {
                let sys = self.system(system)?;
                let mut paths = Vec::new();
                for spec in loops {
                    paths.push(match parse_loop_spec(spec)? {
                        LoopSpec::Circle {
                            moving,
                            around,
                            radius_factor,
                        } => LoopPath::Circle {
                            moving,
                            around,
                            radius_factor,
                        },
                        LoopSpec::Offset { moving, radius } => LoopPath::OffsetCircle { moving, radius },
                        LoopSpec::Polyline(path) => LoopPath::Polyline(parse_polyline(&read_file(&path)?, &path)?),
                    });
                }
                let path = if paths.len() == 1 {
                    paths.pop().expect("one loop")
                } else {
                    LoopPath::Concat(paths)
                };
                let options = HolonomyOptions {
                    steps: *steps,
                    allow_non_flat: *allow_non_flat,
                    clearance: *clearance,
                };
                let res = holonomy_with(&sys, &path, &options).map_err(domain)?;
                Ok(if self.json() {
                    to_json(&HolonomyJson::from(&res))
                } else {
                    let rows = res.matrix.to_rows();
                    format!(
                        "steps={} error_estimate={:e}\n{}",
                        res.steps,
                        res.error_estimate,
                        format_matrix(&rows, format_complex)
                    )
                })
            }
            KzCommand::Example { n, d, scale } => {
                let mut sys = transposition_system(*n, *d).map_err(usage)?;
                if let Some(s) = scale {
                    let k = parse_rational(s).ok_or_else(|| usage(format!("bad --scale {s:?}")))?;
                    let map = sys.iter().map(|(p, a)| (p, a.scale(&k))).collect();
                    sys = InfinitesimalSystem::new(*n, sys.dim(), map).map_err(domain)?;
                }
                Ok(if self.json() {
                    to_json(&SystemJson::from(&sys))
                } else {
                    let mut out = format!("n={} dim={}\n", sys.points(), sys.dim());
                    for ((i, j), a) in sys.iter() {
                        let _ = write!(out, "A{i},{j} =\n{}", format_matrix(&a.to_rows(), format_rational));
                    }
                    out
                })
            }
        }
    }
}

/// Bare letters with `n`, else the headed text form or JSON.
fn parse_any_word(n: Option<usize>, text: &str) -> Result<BraidWord, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let j: BraidJson = serde_json::from_str(trimmed).map_err(|e| usage(format!("braid JSON: {e}")))?;
        let w = BraidWord::try_from(&j)?;
        return match n {
            Some(n) if n != w.strands() => Err(usage(format!("--n {n} disagrees with the word's n={}", w.strands()))),
            _ => Ok(w),
        };
    }
    match n {
        Some(n) if !trimmed.starts_with("n=") => parse_word(n, text),
        Some(n) => {
            let w = parse_braid(text)?;
            if w.strands() != n {
                return Err(usage(format!("--n {n} disagrees with the header n={}", w.strands())));
            }
            Ok(w)
        }
        None => parse_braid(text),
    }
}

fn parse_move(strands: usize, text: &str) -> Result<MarkovMove, CliError> {
    match text {
        "stabilize" | "stabilize+" => Ok(MarkovMove::Stabilize(true)),
        "stabilize-" => Ok(MarkovMove::Stabilize(false)),
        "destabilize" => Ok(MarkovMove::Destabilize),
        _ => match text.strip_prefix("conjugate:") {
            Some(letters) => Ok(MarkovMove::Conjugate(parse_word(strands, letters)?)),
            None => Err(usage(format!(
                "bad move {text:?}; expected conjugate:<letters>, stabilize, stabilize- or destabilize"
            ))),
        },
    }
}

fn parse_assignment(text: &str) -> Result<(usize, GradedPolynomial), CliError> {
    let (k, value) = text
        .split_once('=')
        .ok_or_else(|| usage(format!("bad assignment {text:?}; expected k=value")))?;
    let k = k
        .trim()
        .trim_start_matches(['a', 'v'])
        .parse::<usize>()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| usage(format!("bad generator index in {text:?}")))?;
    Ok((k, parse_polynomial(value)?))
}

fn parse_example(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || usage(format!("bad --example {spec:?}; expected n,d"));
    let (n, d) = spec.split_once(',').ok_or_else(bad)?;
    Ok((
        n.trim().parse().map_err(|_| bad())?,
        d.trim().parse().map_err(|_| bad())?,
    ))
}

/// `d` with `d^n = dim`, if any.
fn tensor_root(dim: usize, n: usize) -> Option<usize> {
    (1..=dim).find(|d| d.checked_pow(n as u32) == Some(dim))
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i64> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i64);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::from_signed(n, &letters).expect("letters are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        let mut argv = vec!["braidlaz"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    #[test]
    fn word_sources() {
        assert_eq!(parse_any_word(Some(3), "1 2 -1").unwrap().to_signed(), vec![1, 2, -1]);
        assert_eq!(parse_any_word(None, "n=3\n1 2 -1\n").unwrap().strands(), 3);
        assert_eq!(
            parse_any_word(None, r#"{"n":3,"word":[1]}"#).unwrap().to_signed(),
            vec![1]
        );
        assert!(parse_any_word(Some(4), "n=3\n1").is_err());
        assert!(parse_any_word(None, "1 2").is_err());
    }

    #[test]
    fn moves_and_assignments() {
        assert_eq!(parse_move(3, "stabilize-").unwrap(), MarkovMove::Stabilize(false));
        assert!(matches!(
            parse_move(3, "conjugate:1 -2").unwrap(),
            MarkovMove::Conjugate(_)
        ));
        assert!(parse_move(3, "twist").is_err());
        let (k, v) = parse_assignment("a2=1/2*a1^2").unwrap();
        assert_eq!((k, v.to_string()), (2, "1/2*a1^2".to_string()));
        assert!(parse_assignment("0=1").is_err());
        assert_eq!(tensor_root(8, 3), Some(2));
        assert_eq!(tensor_root(6, 2), None);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["braid", "eq", "--n", "3", "1 2 1", "2 1 2"]).stdout, "true\n");
        assert_eq!(call(&["braid", "frobnicate"]).code, 2);
        let out = call(&["braid", "markov", "--n", "3", "1 1", "--move", "destabilize"]);
        assert_eq!(out.code, 1, "{out:?}");
        assert!(call(&["--help"]).stdout.contains("braid"));
        assert_eq!(call(&["fgl", "universal", "--stages", "9"]).code, 2);
    }
}
