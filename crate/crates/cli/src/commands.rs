//! Subcommand definitions, dispatch and output documents.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use freeiso::decision::{
    decide_free, embeds_in_f1, embeds_in_free, Certificate, EmbedOutcome, InconclusiveReason, Obstruction, Outcome,
};
use freeiso::hom_search::{is_homomorphism_to_free, search_epi_onto_rank, EpiSearch, GroupHom};
use freeiso::presentation::standard_names;
use freeiso::verify::{check_certified_system, check_nontrivial, verify_embedding, verify_outcome, Verdict, VerifyError};
use freeiso::word_problem::{
    certify_supplied, knuth_bendix, CertifiedSystem, Completion, NontrivialityWitness, Oracle, OracleAnswer,
    SupplyRejection,
};
use freeiso::{build_graph, AbelianInvariants, Budget, BudgetReport, Presentation, Word};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::text::{
    format_word, parse_presentation, parse_rewriting_system, parse_word, parse_word_list, print_presentation,
    print_rewriting_system, FixtureError, ParseError,
};

pub const FORMAT_VERSION: u64 = 1;

pub const EXIT_DEFINITIVE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Word(ParseError),
    #[error("rewriting fixture: {0}")]
    Fixture(#[from] FixtureError),
    #[error("rewriting fixture rejected: {0}")]
    Supply(#[from] SupplyRejection),
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Usage(String),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Document(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "freeiso", version, about = "Decide whether finitely presented groups are free, with certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Longest image word per generator in homomorphism searches.
    #[arg(long = "max-image-len", default_value_t = 2)]
    pub max_image_length: usize,
    /// Longest word enumerated or searched for a triviality certificate.
    #[arg(long = "max-word-len", default_value_t = 6)]
    pub max_word_length: usize,
    /// Candidate tuples per homomorphism search.
    #[arg(long, default_value_t = 100_000)]
    pub max_tuples: usize,
    /// Conjugates of relators per triviality certificate.
    #[arg(long = "max-cert-terms", default_value_t = 4)]
    pub max_certificate_terms: usize,
    /// Scheduler steps per procedure per round.
    #[arg(long, default_value_t = 1)]
    pub quantum: usize,
    /// Worker threads; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            max_image_length: self.max_image_length,
            max_word_length: self.max_word_length,
            max_tuples: self.max_tuples,
            max_certificate_terms: self.max_certificate_terms,
            quantum: self.quantum.max(1),
            workers: self.workers.max(1),
            ..Budget::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Confluent rewriting system for the group, in the fixture line format.
    #[arg(long, value_name = "FILE")]
    pub rewriting: Option<PathBuf>,
    /// Try Knuth-Bendix completion and use the result if it succeeds.
    #[arg(long, conflicts_with = "rewriting")]
    pub kb: bool,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Emit a JSON document instead of text.
    #[arg(long)]
    pub json: bool,
    /// Omit timing fields so identical runs give identical bytes.
    #[arg(long)]
    pub reproducible: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is G isomorphic to the free group of rank n?
    DecideFree {
        file: PathBuf,
        #[arg(short = 'n', long = "rank")]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Does G embed in the free group of rank n?
    EmbedFree {
        file: PathBuf,
        #[arg(short = 'n', long = "rank", default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for a homomorphism onto a free subgroup of rank at least n.
    EpiSearch {
        file: PathBuf,
        #[arg(short = 'n', long = "rank")]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether a word is trivial in G.
    Wp {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fold the subgroup graph of a tuple of words in a free group.
    Fold {
        #[arg(long)]
        rank: usize,
        /// Comma-separated words over x, y, z (x1, x2, ... beyond rank 3).
        #[arg(long)]
        words: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Abelianization invariants of G.
    Abelian {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Knuth-Bendix completion; prints the system in the fixture format.
    Kb {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Replay every certificate in a JSON document produced by this tool.
    Verify {
        document: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// What to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(path: &Path) -> Result<Presentation, CliError> {
    parse_presentation(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

pub fn presentation_hash(p: &Presentation) -> String {
    hex::encode(Sha256::digest(print_presentation(p).as_bytes()))
}

fn build_oracle(g: &Presentation, args: &OracleArgs, budget: &Budget) -> Result<(Oracle, &'static str), CliError> {
    if let Some(path) = &args.rewriting {
        let system = parse_rewriting_system(&read(path)?, g.generator_names())?;
        let certified = certify_supplied(g, system, budget)?;
        return Ok((Oracle::with_system(g, certified, budget), "supplied-rewriting"));
    }
    if args.kb {
        if let Completion::Complete(s) = knuth_bendix(g, budget) {
            return Ok((Oracle::with_system(g, s, budget), "knuth-bendix"));
        }
    }
    Ok((Oracle::standard(g, budget), "standard"))
}

struct Doc {
    fields: serde_json::Map<String, Value>,
    started: Instant,
}

impl Doc {
    fn new(command: &str, g: &Presentation) -> Self {
        let mut fields = serde_json::Map::new();
        fields.insert("format_version".into(), json!(FORMAT_VERSION));
        fields.insert("command".into(), json!(command));
        fields.insert("input_hash".into(), json!(presentation_hash(g)));
        fields.insert("presentation".into(), json!(print_presentation(g)));
        Doc { fields, started: Instant::now() }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.fields.insert(key.into(), v);
    }

    fn finish(mut self, out: &OutputArgs) -> String {
        if !out.reproducible {
            self.set("elapsed_ms", json!(self.started.elapsed().as_millis() as u64));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(self.fields)).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn join_map(images: &[Word], dom: &[String], cod: &[String]) -> String {
    dom.iter().zip(images).map(|(d, w)| format!("{d} -> {}", format_word(w, cod))).collect::<Vec<_>>().join(", ")
}

fn render_outcome(o: &Outcome, g: &Presentation, h_names: &[String]) -> String {
    let gn = g.generator_names();
    match o {
        Outcome::Isomorphic { phi, inverse, .. } => format!(
            "Isomorphic\nphi: {}\npsi: {}\n",
            join_map(&phi.images, gn, h_names),
            join_map(&inverse.psi_images, h_names, gn)
        ),
        Outcome::NotIsomorphic(c) => format!("NotIsomorphic: {}\n", render_certificate(c, g, h_names)),
        Outcome::Inconclusive(r) => format!("Inconclusive: {}\n", render_reason(r)),
    }
}

fn render_certificate(c: &Certificate, g: &Presentation, h_names: &[String]) -> String {
    match c {
        Certificate::Obstruction(Obstruction::RankTooLarge { generators, target_rank }) => {
            format!("{generators} generators cannot generate a free group of rank {target_rank}")
        }
        Certificate::Obstruction(Obstruction::AbelianizationMismatch { found, target_rank }) => {
            format!("abelianization is {found}, not Z^{target_rank}")
        }
        Certificate::Obstruction(Obstruction::AbelianShortcut { target_rank, commutators }) => {
            format!("G is abelian ({} commutator certificates), F_{target_rank} is not", commutators.len())
        }
        Certificate::Kernel { phi, witness, .. } => format!(
            "epimorphism {} sends the nontrivial word {} to 1",
            join_map(&phi.images, g.generator_names(), h_names),
            format_word(&witness.word, g.generator_names())
        ),
    }
}

fn render_reason(r: &InconclusiveReason) -> String {
    match r {
        InconclusiveReason::NoEpimorphismFound { exhaustive: true } => {
            "no epimorphism within the image-length bound (all candidates tried)".into()
        }
        InconclusiveReason::NoEpimorphismFound { exhaustive: false } => "no epimorphism within the tuple budget".into(),
        InconclusiveReason::BothExhausted => "neither a kernel element nor an inverse map found".into(),
        InconclusiveReason::KernelWithoutHopfian(_) => "kernel element found but no Hopfian side".into(),
        InconclusiveReason::TrivialityUnknown => "some generator could not be classified".into(),
        InconclusiveReason::SurjectivityUnproven => "surjectivity could not be certified".into(),
    }
}

fn report_line(r: &BudgetReport) -> String {
    format!("report: {}\n", serde_json::to_string(r).expect("reports serialize"))
}

fn exit_for(definitive: bool) -> i32 {
    if definitive {
        EXIT_DEFINITIVE
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn embed_kind(e: &EmbedOutcome) -> &'static str {
    match e {
        EmbedOutcome::Embeds { .. } => "Embeds",
        EmbedOutcome::NotEmbeddable { .. } => "NotEmbeddable",
        EmbedOutcome::Inconclusive { .. } => "Inconclusive",
    }
}

fn oracle_kind(a: &OracleAnswer) -> &'static str {
    match a {
        OracleAnswer::Trivial(_) => "Trivial",
        OracleAnswer::Nontrivial(_) => "Nontrivial",
        OracleAnswer::Unknown(_) => "Unknown",
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::DecideFree { file, n, budget, oracle, output } => {
            let g = load(&file)?;
            let budget = budget.budget();
            let mut doc = Doc::new("decide-free", &g);
            let (oracle, oracle_name) = build_oracle(&g, &oracle, &budget)?;
            let d = decide_free(&oracle, n, &budget);
            let code = exit_for(d.outcome.is_definitive());
            let stdout = if output.json {
                doc.set("target_rank", json!(n));
                doc.set("oracle", json!(oracle_name));
                doc.set("outcome", json!(d.outcome.kind()));
                doc.set("certificate", serde_json::to_value(&d.outcome)?);
                doc.set("budget", serde_json::to_value(&budget)?);
                doc.set("budget_report", serde_json::to_value(&d.report)?);
                doc.finish(&output)
            } else {
                render_outcome(&d.outcome, &g, &standard_names(n)) + &report_line(&d.report)
            };
            Ok(Output { code, stdout })
        }
        Command::EmbedFree { file, n, budget, oracle, output } => {
            let g = load(&file)?;
            let budget = budget.budget();
            let mut doc = Doc::new("embed-free", &g);
            let (oracle, oracle_name) = build_oracle(&g, &oracle, &budget)?;
            let e = match n {
                0 => return Err(CliError::Usage("embedding target must have rank at least 1".into())),
                1 => embeds_in_f1(&oracle, &budget),
                _ => embeds_in_free(&oracle, n, &budget).expect("rank checked"),
            };
            let code = exit_for(!matches!(e.outcome, EmbedOutcome::Inconclusive { .. }));
            let stdout = if output.json {
                doc.set("target_rank", json!(n));
                doc.set("oracle", json!(oracle_name));
                doc.set("outcome", json!(embed_kind(&e.outcome)));
                doc.set("certificate", serde_json::to_value(&e.outcome)?);
                doc.set("budget", serde_json::to_value(&budget)?);
                doc.set("budget_report", serde_json::to_value(&e.report)?);
                doc.finish(&output)
            } else {
                let mut s = match &e.outcome {
                    EmbedOutcome::Embeds { rank, .. } => format!("Embeds: G is free of rank {rank}\n"),
                    EmbedOutcome::NotEmbeddable { certificates } => {
                        let mut s = "NotEmbeddable\n".to_string();
                        for (r, c) in certificates {
                            s += &format!("  rank {r}: {}\n", render_certificate(c, &g, &standard_names(*r)));
                        }
                        s
                    }
                    EmbedOutcome::Inconclusive { per_rank } => {
                        let mut s = "Inconclusive\n".to_string();
                        for (r, o) in per_rank {
                            s += &format!("  rank {r}: {}", render_outcome(o, &g, &standard_names(*r)));
                        }
                        s
                    }
                };
                s += &report_line(&e.report);
                s
            };
            Ok(Output { code, stdout })
        }
        Command::EpiSearch { file, n, budget, output } => {
            let g = load(&file)?;
            let budget = budget.budget();
            let mut doc = Doc::new("epi-search", &g);
            let (kind, certificate, report, text) = match search_epi_onto_rank(&g, n, &budget) {
                EpiSearch::Found(w, r) => {
                    let text = format!(
                        "Found: {} (image rank {})\n",
                        join_map(&w.hom.images, g.generator_names(), &standard_names(n)),
                        w.image_rank
                    );
                    let cert = json!({ "images": w.hom.images, "image_rank": w.image_rank });
                    ("Found", cert, r, text)
                }
                EpiSearch::Exhausted { report, exhaustive } => {
                    ("Exhausted", json!({ "exhaustive": exhaustive }), report, "Exhausted\n".to_string())
                }
            };
            let code = exit_for(kind == "Found");
            let stdout = if output.json {
                doc.set("target_rank", json!(n));
                doc.set("outcome", json!(kind));
                doc.set("certificate", certificate);
                doc.set("budget", serde_json::to_value(&budget)?);
                doc.set("budget_report", serde_json::to_value(&report)?);
                doc.finish(&output)
            } else {
                text + &report_line(&report)
            };
            Ok(Output { code, stdout })
        }
        Command::Wp { file, word, budget, oracle, output } => {
            let g = load(&file)?;
            let budget = budget.budget();
            let w = parse_word(&word, g.generator_names()).map_err(CliError::Word)?;
            let mut doc = Doc::new("wp", &g);
            let (oracle, oracle_name) = build_oracle(&g, &oracle, &budget)?;
            let mut report = BudgetReport::default();
            let answer = oracle.query(&w, &mut report);
            let code = exit_for(!matches!(answer, OracleAnswer::Unknown(_)));
            let stdout = if output.json {
                doc.set("word", serde_json::to_value(&w)?);
                doc.set("oracle", json!(oracle_name));
                doc.set("outcome", json!(oracle_kind(&answer)));
                doc.set("certificate", serde_json::to_value(&answer)?);
                doc.set("budget", serde_json::to_value(&budget)?);
                doc.set("budget_report", serde_json::to_value(&report)?);
                doc.finish(&output)
            } else {
                let detail = match &answer {
                    OracleAnswer::Trivial(c) => format!(" (product of {} conjugates of relators)", c.len()),
                    OracleAnswer::Nontrivial(NontrivialityWitness::AbelianImage(_)) => " (abelian image)".into(),
                    OracleAnswer::Nontrivial(NontrivialityWitness::NormalFormNonEmpty { normal_form, .. }) => {
                        format!(" (normal form {})", format_word(normal_form, g.generator_names()))
                    }
                    OracleAnswer::Unknown(_) => String::new(),
                };
                format!("{}{detail}\n", oracle_kind(&answer)) + &report_line(&report)
            };
            Ok(Output { code, stdout })
        }
        Command::Fold { rank, words, output } => {
            let names = standard_names(rank);
            let tuple = parse_word_list(&words, &names).map_err(CliError::Word)?;
            let graph = build_graph(rank, &tuple);
            let basis: Vec<String> = graph.basis().iter().map(|b| format_word(b, &names)).collect();
            let stdout = if output.json {
                let mut doc = Doc::new("fold", &Presentation::free(rank));
                doc.set("words", serde_json::to_value(&tuple)?);
                doc.set("outcome", json!("Folded"));
                doc.set(
                    "certificate",
                    json!({
                        "rank": graph.rank(),
                        "vertex_count": graph.vertex_count(),
                        "basis": graph.basis(),
                        "edges": graph.to_edge_list(),
                    }),
                );
                doc.finish(&output)
            } else {
                format!("rank: {}\nbasis: {}\n{}", graph.rank(), basis.join(", "), graph.to_edge_list())
            };
            Ok(Output { code: EXIT_DEFINITIVE, stdout })
        }
        Command::Abelian { file, output } => {
            let g = load(&file)?;
            let inv = g.abelian_invariants();
            let stdout = if output.json {
                let mut doc = Doc::new("abelian", &g);
                doc.set("outcome", json!(inv.to_string()));
                doc.set("certificate", serde_json::to_value(&inv)?);
                doc.finish(&output)
            } else {
                format!("{inv}\n")
            };
            Ok(Output { code: EXIT_DEFINITIVE, stdout })
        }
        Command::Kb { file, budget, output } => {
            let g = load(&file)?;
            let budget = budget.budget();
            let mut doc = Doc::new("kb", &g);
            let c = knuth_bendix(&g, &budget);
            let code = exit_for(matches!(c, Completion::Complete(_)));
            let stdout = match (&c, output.json) {
                (Completion::Complete(s), true) => {
                    doc.set("outcome", json!("Complete"));
                    doc.set("certificate", serde_json::to_value(s)?);
                    doc.set("budget", serde_json::to_value(&budget)?);
                    doc.finish(&output)
                }
                (Completion::Unknown(stop), true) => {
                    doc.set("outcome", json!("Unknown"));
                    doc.set("reason", json!(stop.to_string()));
                    doc.set("budget", serde_json::to_value(&budget)?);
                    doc.finish(&output)
                }
                (Completion::Complete(s), false) => print_rewriting_system(&s.system, g.generator_names()),
                (Completion::Unknown(stop), false) => format!("Unknown: {stop}\n"),
            };
            Ok(Output { code, stdout })
        }
        Command::Verify { document, output } => {
            let verdict = verify_document(&read(&document)?)?;
            let stdout = if output.json {
                format!("{}\n", json!({ "format_version": FORMAT_VERSION, "command": "verify", "verdict": verdict }))
            } else {
                format!("verified: {verdict}\n")
            };
            Ok(Output { code: exit_for(verdict != "Inconclusive"), stdout })
        }
    }
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    doc.get(key).ok_or_else(|| CliError::Document(format!("missing field '{key}'")))
}

fn rank_field(doc: &Value) -> Result<usize, CliError> {
    field(doc, "target_rank")?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::Document("target_rank is not a natural number".into()))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Isomorphic => "Isomorphic",
        Verdict::NotIsomorphic => "NotIsomorphic",
        Verdict::Inconclusive => "Inconclusive",
        Verdict::Embeds => "Embeds",
        Verdict::NotEmbeddable => "NotEmbeddable",
    }
}

/// Replays the certificate in a JSON document and returns the verified
/// outcome name. Nothing is searched: every claim is checked directly.
pub fn verify_document(text: &str) -> Result<&'static str, CliError> {
    let doc: Value = serde_json::from_str(text)?;
    if field(&doc, "format_version")?.as_u64() != Some(FORMAT_VERSION) {
        return Err(CliError::Document("unsupported format_version".into()));
    }
    let command = field(&doc, "command")?.as_str().unwrap_or_default().to_string();
    let pres_text = field(&doc, "presentation")?.as_str().unwrap_or_default();
    let g = parse_presentation(pres_text).map_err(|source| CliError::Parse { path: "<document>".into(), source })?;
    if field(&doc, "input_hash")?.as_str() != Some(presentation_hash(&g).as_str()) {
        return Err(CliError::Document("input_hash does not match the presentation".into()));
    }
    let claimed = field(&doc, "outcome")?.as_str().unwrap_or_default().to_string();
    let cert = field(&doc, "certificate")?.clone();
    let fail = |m: &str| CliError::Verify(VerifyError(m.to_string()));
    let name = match command.as_str() {
        "decide-free" => {
            let o: Outcome = serde_json::from_value(cert)?;
            if o.kind() != claimed {
                return Err(fail("outcome field disagrees with the certificate"));
            }
            verdict_name(verify_outcome(&g, &Presentation::free(rank_field(&doc)?), &o)?)
        }
        "embed-free" => {
            let e: EmbedOutcome = serde_json::from_value(cert)?;
            if embed_kind(&e) != claimed {
                return Err(fail("outcome field disagrees with the certificate"));
            }
            verdict_name(verify_embedding(&g, rank_field(&doc)?, &e)?)
        }
        "wp" => {
            let w: Word = serde_json::from_value(field(&doc, "word")?.clone())?;
            w.check_rank(g.num_generators()).map_err(|e| fail(&e.to_string()))?;
            let a: OracleAnswer = serde_json::from_value(cert)?;
            if oracle_kind(&a) != claimed {
                return Err(fail("outcome field disagrees with the certificate"));
            }
            match &a {
                OracleAnswer::Trivial(c) => {
                    if !c.proves(g.relators(), &w) {
                        return Err(fail("triviality certificate does not reduce to the word"));
                    }
                    "Trivial"
                }
                OracleAnswer::Nontrivial(wit) => {
                    check_nontrivial(&g, &w, wit)?;
                    "Nontrivial"
                }
                OracleAnswer::Unknown(_) => "Inconclusive",
            }
        }
        "epi-search" if claimed == "Found" => {
            let n = rank_field(&doc)?;
            let images: Vec<Word> = serde_json::from_value(field(&cert, "images")?.clone())?;
            if is_homomorphism_to_free(&g, n, &images) != Ok(true) {
                return Err(fail("images do not satisfy the relators"));
            }
            let hom = GroupHom { codomain_rank: n, images, verified: true };
            if hom.image_graph().rank() < n {
                return Err(fail("image has rank below the target"));
            }
            "Found"
        }
        "epi-search" => "Inconclusive",
        "kb" if claimed == "Complete" => {
            let s: CertifiedSystem = serde_json::from_value(cert)?;
            check_certified_system(&g, &s)?;
            "Complete"
        }
        "kb" => "Inconclusive",
        "abelian" => {
            let inv: AbelianInvariants = serde_json::from_value(cert)?;
            if inv != g.abelian_invariants() {
                return Err(fail("abelian invariants differ"));
            }
            "Abelian"
        }
        other => return Err(CliError::Document(format!("no certificate to verify for command '{other}'"))),
    };
    Ok(name)
}
