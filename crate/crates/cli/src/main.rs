//! `srd`: face numbers, Σ-quotients and Lefschetz data of simplicial
//! complexes, and the verifiers that compare them, as JSON or text reports.

mod matrix;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sr_duality::corpus::{corpus, corpus_entry, Classification};
use sr_duality::graded::{artinian_hilbert, random_lsop_for_pair};
use sr_duality::homology::{betti, buchsbaum_obstruction, classify_manifold, ManifoldKind};
use sr_duality::io::{complex_to_json, load_complex, load_pair};
use sr_duality::lefschetz::{
    verify_bary_unimodality, verify_flip_equiv, verify_stellar_equiv, wlp_check, WlpReport,
};
use sr_duality::linalg::DEFAULT_CHARACTERISTIC;
use sr_duality::report::theorem;
use sr_duality::sigma::{
    face_numbers, verify_a_invariant, verify_ball_duality, verify_gorenstein, verify_lemma_exact,
    verify_link_bound, verify_manifold_duality, verify_monotonicity, verify_multiplicity,
    verify_quotient_duality, verify_schenzel, verify_sigma_layer, verify_sigma_quotient,
    SigmaModule,
};
use sr_duality::surgery::{
    barycentric_subdivision, bistellar_flip, find_flips, stellar_subdivision,
};
use sr_duality::{
    Error, Face, FieldSpec, RelativeComplex, Report, Result, Settings, SimplicialComplex, Verdict,
};

#[derive(Parser)]
#[command(
    name = "srd",
    version,
    about = "Stanley-Reisner modules, h''-vectors and their verifiers"
)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Options {
    /// Characteristic of the coefficient field, a prime below 2^31.
    #[arg(long = "char", value_name = "P", global = true, default_value_t = DEFAULT_CHARACTERISTIC)]
    characteristic: u32,
    /// Work over the rationals instead of F_P.
    #[arg(long, global = true)]
    rational: bool,
    /// Seed of the random linear forms.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials for best-of-k genericity checks.
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    out: Format,
}

impl Options {
    fn settings(&self) -> Result<Settings> {
        let field = if self.rational {
            FieldSpec::rationals()
        } else {
            FieldSpec::prime(self.characteristic)?
        };
        Ok(Settings {
            field,
            seed: self.seed,
            trials: self.trials,
            ..Settings::default()
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A complex given as a JSON file or `corpus:<name>`.
#[derive(Args)]
struct ComplexArg {
    #[arg(long, value_name = "FILE|corpus:NAME")]
    complex: String,
}

impl ComplexArg {
    fn load(&self) -> Result<SimplicialComplex> {
        load_complex(&self.complex)
    }
}

/// Either a complex (paired with the void subcomplex) or a relative pair.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct PairArg {
    #[arg(long, value_name = "FILE|corpus:NAME")]
    complex: Option<String>,
    /// JSON file `{"delta": <complex>, "gamma": <complex>}`.
    #[arg(long, value_name = "FILE")]
    pair: Option<PathBuf>,
}

impl PairArg {
    fn load(&self) -> Result<(String, RelativeComplex)> {
        match (&self.complex, &self.pair) {
            (Some(c), _) => Ok((c.clone(), RelativeComplex::absolute(load_complex(c)?))),
            (None, Some(p)) => Ok((p.display().to_string(), load_pair(p)?)),
            (None, None) => Err(Error::Parse(
                "either --complex or --pair is required".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// f-vector.
    Fvec(ComplexArg),
    /// h-vector with d = dim + 1.
    Hvec(ComplexArg),
    /// Manifold type, orientability, connectivity and Buchsbaum test.
    Check(ComplexArg),
    /// Hilbert function of M / ΘM for a random l.s.o.p. Θ.
    Hilbert(PairArg),
    /// Hilbert functions of M / Σ(Θ;M), M / ΘM and Σ / ΘM.
    Sigma {
        #[command(flatten)]
        input: PairArg,
        /// Also report dim Σ_j in this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run one verifier, or the whole corpus matrix.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Best-of-k weak Lefschetz test in the middle degree of M / Σ.
    Wlp(ComplexArg),
    /// Apply a (p-1)-bistellar flip and print the result.
    Flip {
        #[command(flatten)]
        input: ComplexArg,
        #[command(flatten)]
        site: SiteArg,
    },
    /// Stellar subdivision at a face.
    Stellar {
        #[command(flatten)]
        input: ComplexArg,
        #[command(flatten)]
        face: FaceArg,
    },
    /// Barycentric subdivision.
    Bary(ComplexArg),
    /// List the built-in complexes, or print one.
    Corpus {
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Args)]
struct SiteArg {
    /// Flip size p = |B|, between 1 and d.
    #[arg(long)]
    p: usize,
    /// Which site, in the order they are enumerated.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

impl SiteArg {
    fn site(&self, k: &SimplicialComplex) -> Result<sr_duality::surgery::FlipSite> {
        let sites = find_flips(k, self.p)?;
        let n = sites.len();
        sites.into_iter().nth(self.index).ok_or_else(|| {
            Error::Contract(format!(
                "no flip site {} for p = {} ({n} sites)",
                self.index, self.p
            ))
        })
    }
}

#[derive(Args)]
struct FaceArg {
    /// Comma-separated vertex labels.
    #[arg(long, value_delimiter = ',', required = true)]
    face: Vec<u32>,
}

impl FaceArg {
    fn face(&self) -> Face {
        Face::new(self.face.iter().copied())
    }
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// dim (M/Σ)_j equals the combinatorial h''_j.
    #[command(alias = theorem::SIGMA_QUOTIENT_ALIAS)]
    SigmaQuotient(PairArg),
    /// dim (M/ΘM)_j equals h'_j.
    Schenzel(PairArg),
    /// dim (Σ/ΘM)_j = C(d,j) β_{j-1}.
    SigmaLayer(PairArg),
    /// h'' and M/Σ reversal between (Δ,∂Δ) and Δ for a manifold with boundary.
    Duality(ComplexArg),
    /// M/Σ reversal alone.
    QuotientDuality(ComplexArg),
    /// Artinian reversal between (Δ,∂Δ) and Δ for a homology ball.
    BallDuality(ComplexArg),
    /// M/Σ is palindromic for an orientable closed manifold.
    Gorenstein(ComplexArg),
    /// The a-invariant from M/Σ, from h'' and from link homology.
    AInvariant(ComplexArg),
    /// Σ dim(M/ΘM) minus the facet count against local cohomology.
    Multiplicity(ComplexArg),
    /// h''(Δ) ≥ h''(Γ) for an equidimensional subcomplex Γ.
    Monotone {
        #[command(flatten)]
        input: ComplexArg,
        /// The subcomplex Γ.
        #[arg(long, value_name = "FILE|corpus:NAME")]
        sub: String,
    },
    /// h''(K) ≥ h(lk τ).
    LinkBound {
        #[command(flatten)]
        input: ComplexArg,
        #[command(flatten)]
        face: FaceArg,
    },
    /// Removing the interior of a ball from a closed manifold.
    LemmaExact {
        #[command(flatten)]
        input: ComplexArg,
        /// The full-dimensional ball Γ.
        #[arg(long, value_name = "FILE|corpus:NAME")]
        sub: String,
    },
    /// WLP agrees before and after a bistellar flip.
    FlipEquiv {
        #[command(flatten)]
        input: ComplexArg,
        #[command(flatten)]
        site: SiteArg,
    },
    /// WLP agrees before and after a stellar subdivision.
    StellarEquiv {
        #[command(flatten)]
        input: ComplexArg,
        #[command(flatten)]
        face: FaceArg,
    },
    /// h'' of the barycentric subdivision is unimodal.
    BaryUnimodal(ComplexArg),
    /// Every applicable verifier on the built-in corpus.
    All {
        #[arg(long, required = true)]
        corpus: bool,
        /// Restrict to these corpus entries.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
    },
}

#[derive(Serialize)]
struct CorpusRow {
    name: String,
    classification: Classification,
    f_vector: Vec<u64>,
    provenance: String,
}

enum Output {
    Report(Report),
    Reports(Vec<Report>),
    Complex(SimplicialComplex),
    Wlp(WlpReport),
    Corpus(Vec<CorpusRow>),
}

fn to_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn recorded(command: &str, subject: &str, k: &SimplicialComplex, s: &Settings) -> Report {
    Report::new(command, theorem::NONE, s.field)
        .with_subject(subject)
        .input("complex", k)
}

fn pair_recorded(command: &str, subject: &str, pair: &RelativeComplex, s: &Settings) -> Report {
    Report::new(command, theorem::NONE, s.field)
        .with_subject(subject)
        .input("delta", pair.delta())
        .input("gamma", pair.gamma())
        .seed(s.seed)
}

fn manifold_summary(k: &SimplicialComplex, field: FieldSpec) -> String {
    let v = classify_manifold(k, field);
    match v.kind {
        ManifoldKind::NotManifold => format!(
            "not a homology manifold over {field}: {}",
            v.reason.unwrap_or_default()
        ),
        kind => format!(
            "{} homology manifold over {field}, {}orientable, {}connected",
            if kind == ManifoldKind::ClosedManifold {
                "closed"
            } else {
                "bounded"
            },
            if v.orientable { "" } else { "non-" },
            if v.connected { "" } else { "not " },
        ),
    }
}

fn run_verify(check: &VerifyCommand, s: &Settings) -> Result<Output> {
    let report = match check {
        VerifyCommand::SigmaQuotient(p) => {
            let (name, pair) = p.load()?;
            verify_sigma_quotient(&pair, s)?.with_subject(&name)
        }
        VerifyCommand::Schenzel(p) => {
            let (name, pair) = p.load()?;
            verify_schenzel(&pair, s)?.with_subject(&name)
        }
        VerifyCommand::SigmaLayer(p) => {
            let (name, pair) = p.load()?;
            verify_sigma_layer(&pair, s)?.with_subject(&name)
        }
        VerifyCommand::Duality(c) => {
            verify_manifold_duality(&c.load()?, s)?.with_subject(&c.complex)
        }
        VerifyCommand::QuotientDuality(c) => {
            verify_quotient_duality(&c.load()?, s)?.with_subject(&c.complex)
        }
        VerifyCommand::BallDuality(c) => {
            verify_ball_duality(&c.load()?, s)?.with_subject(&c.complex)
        }
        VerifyCommand::Gorenstein(c) => verify_gorenstein(&c.load()?, s)?.with_subject(&c.complex),
        VerifyCommand::AInvariant(c) => verify_a_invariant(&c.load()?, s)?.with_subject(&c.complex),
        VerifyCommand::Multiplicity(c) => {
            verify_multiplicity(&c.load()?, s)?.with_subject(&c.complex)
        }
        VerifyCommand::Monotone { input, sub } => {
            verify_monotonicity(&input.load()?, &load_complex(sub)?, s)?
                .with_subject(&input.complex)
        }
        VerifyCommand::LinkBound { input, face } => {
            verify_link_bound(&input.load()?, &face.face(), s)?.with_subject(&input.complex)
        }
        VerifyCommand::LemmaExact { input, sub } => {
            verify_lemma_exact(&input.load()?, &load_complex(sub)?, s)?.with_subject(&input.complex)
        }
        VerifyCommand::FlipEquiv { input, site } => {
            let k = input.load()?;
            verify_flip_equiv(&k, &site.site(&k)?, s)?.with_subject(&input.complex)
        }
        VerifyCommand::StellarEquiv { input, face } => {
            verify_stellar_equiv(&input.load()?, &face.face(), s)?.with_subject(&input.complex)
        }
        VerifyCommand::BaryUnimodal(c) => {
            verify_bary_unimodality(&c.load()?, s)?.with_subject(&c.complex)
        }
        VerifyCommand::All { names, .. } => {
            return Ok(Output::Reports(matrix::corpus_matrix(names.as_deref(), s)?));
        }
    };
    Ok(Output::Report(report))
}

fn run(cli: &Cli) -> Result<Output> {
    let s = cli.opts.settings()?;
    Ok(match &cli.command {
        Command::Fvec(c) => {
            let k = c.load()?;
            let f = k.f_vector().0;
            let summary = format!("f = {f:?}");
            Output::Report(
                recorded("fvec", &c.complex, &k, &s)
                    .vector("f", &to_i64(&f))
                    .finish(Verdict::Recorded, summary),
            )
        }
        Command::Hvec(c) => {
            let k = c.load()?;
            let h = k.h_vector((k.dim() + 1).max(0) as usize)?.entries;
            let summary = format!("h = {h:?}");
            Output::Report(
                recorded("hvec", &c.complex, &k, &s)
                    .vector("h", &h)
                    .finish(Verdict::Recorded, summary),
            )
        }
        Command::Check(c) => {
            let k = c.load()?;
            let b = betti(&RelativeComplex::absolute(k.clone()), s.field);
            let mut summary = manifold_summary(&k, s.field);
            match buchsbaum_obstruction(&RelativeComplex::absolute(k.clone()), s.field) {
                None => summary.push_str("; Buchsbaum"),
                Some(why) => summary.push_str(&format!("; not Buchsbaum: {why}")),
            }
            Output::Report(
                recorded("check", &c.complex, &k, &s)
                    .vector("f", &to_i64(&k.f_vector().0))
                    .vector("betti", &to_i64(&b.entries))
                    .finish(Verdict::Recorded, summary),
            )
        }
        Command::Hilbert(p) => {
            let (name, pair) = p.load()?;
            let lsop = random_lsop_for_pair(&pair, s.field, s.seed, s.attempts)?;
            let a = artinian_hilbert(&pair, &lsop)?;
            let summary = format!("dim(M/Theta M) = {a:?}");
            Output::Report(
                pair_recorded("hilbert", &name, &pair, &s)
                    .vector("artinian-hilbert", &a)
                    .finish(Verdict::Recorded, summary),
            )
        }
        Command::Sigma { input, degree } => {
            let (name, pair) = input.load()?;
            let lsop = random_lsop_for_pair(&pair, s.field, s.seed, s.attempts)?;
            let sm = SigmaModule::new(&pair, &lsop)?;
            let q = sm.quotient_hilbert();
            let mut rep = pair_recorded("sigma", &name, &pair, &s)
                .vector("quotient-hilbert", &q)
                .vector("artinian-hilbert", &sm.artinian_hilbert())
                .vector("layer", &sm.layer())
                .vector(
                    "h-double-prime",
                    &face_numbers(&pair, s.field).h_double_prime,
                );
            if let Some(j) = *degree {
                if j > sm.d() + 1 {
                    return Err(Error::Contract(format!(
                        "degree {j} is above d + 1 = {}",
                        sm.d() + 1
                    )));
                }
                let piece = sm.piece(j);
                let dim = sm.module().dim(j) as i64;
                rep = rep.vector(
                    "sigma-piece",
                    &[j as i64, dim, dim - piece.codim as i64, piece.codim as i64],
                );
            }
            Output::Report(rep.finish(Verdict::Recorded, format!("dim(M/Sigma) = {q:?}")))
        }
        Command::Verify { check } => run_verify(check, &s)?,
        Command::Wlp(c) => Output::Wlp(wlp_check(&c.load()?, s.field, s.seed, s.trials)?),
        Command::Flip { input, site } => {
            let k = input.load()?;
            Output::Complex(bistellar_flip(&k, &site.site(&k)?)?)
        }
        Command::Stellar { input, face } => {
            Output::Complex(stellar_subdivision(&input.load()?, &face.face())?)
        }
        Command::Bary(c) => Output::Complex(barycentric_subdivision(&c.load()?)?),
        Command::Corpus { name: Some(name) } => Output::Complex(
            corpus_entry(name)
                .ok_or_else(|| Error::Parse(format!("unknown corpus complex `{name}`")))?
                .complex,
        ),
        Command::Corpus { name: None } => Output::Corpus(
            corpus()
                .into_iter()
                .map(|e| CorpusRow {
                    f_vector: e.complex.f_vector().0,
                    name: e.name,
                    classification: e.classification,
                    provenance: e.provenance,
                })
                .collect(),
        ),
    })
}

fn wlp_text(r: &WlpReport) -> String {
    format!(
        "degree {} -> {}: dims {} -> {}, best rank {} over {} trials (seed {}): {}\n",
        r.degree_pair.0,
        r.degree_pair.1,
        r.source_dim,
        r.target_dim,
        r.best_rank,
        r.trials,
        r.seed,
        r.verdict
    )
}

/// Rendered output and process exit code.
fn render(out: &Output, format: Format) -> (String, u8) {
    let json = |v: &dyn erased::Json| v.pretty();
    match (out, format) {
        (Output::Report(r), Format::Json) => (r.to_json() + "\n", r.verdict.exit_code() as u8),
        (Output::Report(r), Format::Text) => (r.to_text(), r.verdict.exit_code() as u8),
        (Output::Reports(rs), format) => {
            let failed = rs.iter().any(|r| r.verdict == Verdict::Fail);
            let text = match format {
                Format::Json => json(rs) + "\n",
                Format::Text => {
                    let mut t: String = rs.iter().map(Report::to_text).collect();
                    let count = |v| rs.iter().filter(|r| r.verdict == v).count();
                    t.push_str(&format!(
                        "{} reports: {} pass, {} fail, {} precondition-failure, {} recorded\n",
                        rs.len(),
                        count(Verdict::Pass),
                        count(Verdict::Fail),
                        count(Verdict::PreconditionFailure),
                        count(Verdict::Recorded)
                    ));
                    t
                }
            };
            (text, u8::from(failed))
        }
        (Output::Complex(k), Format::Json) => (complex_to_json(k) + "\n", 0),
        (Output::Complex(k), Format::Text) => (format!("{k}\n"), 0),
        (Output::Wlp(r), Format::Json) => (json(r) + "\n", 0),
        (Output::Wlp(r), Format::Text) => (wlp_text(r), 0),
        (Output::Corpus(rows), Format::Json) => (json(rows) + "\n", 0),
        (Output::Corpus(rows), Format::Text) => (
            rows.iter()
                .map(|r| {
                    format!(
                        "{:<34} {:<40} f = {:?}\n",
                        r.name,
                        r.classification.to_string(),
                        r.f_vector
                    )
                })
                .collect(),
            0,
        ),
    }
}

mod erased {
    /// Pretty JSON for any serializable value behind a trait object.
    pub trait Json {
        fn pretty(&self) -> String;
    }

    impl<T: serde::Serialize + ?Sized> Json for T {
        fn pretty(&self) -> String {
            serde_json::to_string_pretty(self).expect("output values serialize")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let (text, code) = render(&out, cli.opts.out);
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Inconsistency(_) | Error::Genericity { .. } => 1,
                _ => 2,
            })
        }
    }
}
