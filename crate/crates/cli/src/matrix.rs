//! Every applicable verifier on every corpus entry, run in parallel.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use sr_duality::corpus::{corpus, Classification, CorpusEntry};
use sr_duality::homology::boundary_complex;
use sr_duality::lefschetz::{
    excluded_flip_sizes, verify_bary_unimodality, verify_flip_equiv, verify_stellar_equiv,
};
use sr_duality::report::theorem;
use sr_duality::sigma::{
    verify_a_invariant, verify_ball_duality, verify_gorenstein, verify_lemma_exact,
    verify_link_bound, verify_manifold_duality, verify_monotonicity, verify_multiplicity,
    verify_quotient_duality, verify_schenzel, verify_sigma_layer, verify_sigma_quotient,
};
use sr_duality::surgery::find_flips;
use sr_duality::{Error, Face, RelativeComplex, Report, Result, Settings, Verdict};

/// Largest facet count for which the barycentric subdivision is checked.
const BARY_FACET_LIMIT: usize = 16;

type Check = Box<dyn Fn(&Settings) -> Result<Report> + Send + Sync>;

struct Job {
    command: &'static str,
    theorem: &'static str,
    subject: String,
    check: Check,
}

impl Job {
    fn new(
        command: &'static str,
        theorem: &'static str,
        subject: impl Into<String>,
        check: impl Fn(&Settings) -> Result<Report> + Send + Sync + 'static,
    ) -> Job {
        Job {
            command,
            theorem,
            subject: subject.into(),
            check: Box::new(check),
        }
    }

    /// Runs the check; an error becomes a failed report so one bad entry
    /// does not hide the rest of the matrix.
    fn run(&self, s: &Settings) -> Report {
        match (self.check)(s) {
            Ok(r) => r.with_subject(&self.subject),
            Err(e) => Report::new(self.command, self.theorem, s.field)
                .with_subject(&self.subject)
                .finish(Verdict::Fail, format!("error: {e}")),
        }
    }
}

fn entry_jobs(e: &CorpusEntry, field: sr_duality::FieldSpec) -> Vec<Job> {
    let name = e.name.clone();
    let k = e.complex.clone();
    let mut jobs = Vec::new();
    macro_rules! on_complex {
        ($command:literal, $theorem:expr, $f:path) => {{
            let k = k.clone();
            jobs.push(Job::new($command, $theorem, name.clone(), move |s| {
                $f(&k, s)
            }));
        }};
    }
    macro_rules! on_pair {
        ($command:literal, $theorem:expr, $f:path, $pair:expr, $subject:expr) => {{
            let pair = $pair;
            jobs.push(Job::new($command, $theorem, $subject, move |s| {
                $f(&pair, s)
            }));
        }};
    }

    let abs = RelativeComplex::absolute(k.clone());
    on_pair!(
        "verify sigma-quotient",
        theorem::SIGMA_QUOTIENT,
        verify_sigma_quotient,
        abs.clone(),
        name.clone()
    );
    on_pair!(
        "verify schenzel",
        theorem::SCHENZEL,
        verify_schenzel,
        abs.clone(),
        name.clone()
    );
    on_pair!(
        "verify sigma-layer",
        theorem::SIGMA_LAYER,
        verify_sigma_layer,
        abs,
        name.clone()
    );
    on_complex!(
        "verify multiplicity",
        theorem::MULTIPLICITY,
        verify_multiplicity
    );
    on_complex!(
        "verify a-invariant",
        theorem::A_INVARIANT,
        verify_a_invariant
    );
    on_complex!("verify gorenstein", theorem::GORENSTEIN, verify_gorenstein);
    on_complex!(
        "verify duality",
        theorem::MANIFOLD_DUALITY,
        verify_manifold_duality
    );
    on_complex!(
        "verify quotient-duality",
        theorem::QUOTIENT_DUALITY,
        verify_quotient_duality
    );
    on_complex!(
        "verify ball-duality",
        theorem::BALL_DUALITY,
        verify_ball_duality
    );

    if let Some(&v) = k.vertices().iter().next() {
        let k = k.clone();
        let tau = Face::new([v]);
        jobs.push(Job::new(
            "verify link-bound",
            theorem::LINK_BOUND,
            format!("{name} @ {tau}"),
            move |s| verify_link_bound(&k, &tau, s),
        ));
    }

    let bounded = matches!(
        e.classification,
        Classification::Ball | Classification::ManifoldWithBoundary { .. }
    );
    if bounded {
        if let Some(boundary) = boundary_complex(&k, field.prime_subfield()) {
            if let Ok(pair) = RelativeComplex::new(k.clone(), boundary) {
                on_pair!(
                    "verify sigma-quotient",
                    theorem::SIGMA_QUOTIENT,
                    verify_sigma_quotient,
                    pair,
                    format!("{name} rel boundary")
                );
            }
        }
    }

    let d = (k.dim() + 1) as usize;
    let closed_orientable = matches!(
        e.classification,
        Classification::Sphere | Classification::ClosedManifold { orientable: true }
    );
    if closed_orientable && d >= 2 {
        let excluded = excluded_flip_sizes(d);
        let site = (1..=d)
            .filter(|p| !excluded.contains(p))
            .find_map(|p| find_flips(&k, p).ok()?.into_iter().next());
        if let Some(site) = site {
            let k = k.clone();
            jobs.push(Job::new(
                "verify flip-equiv",
                theorem::FLIP_WLP,
                format!("{name} @ {site}"),
                move |s| verify_flip_equiv(&k, &site, s),
            ));
        }
        // subdividing a facet needs dim σ = d - 1 > d/2
        if let Some(facet) = k.facets().first().cloned().filter(|_| d >= 3) {
            let k = k.clone();
            jobs.push(Job::new(
                "verify stellar-equiv",
                theorem::STELLAR_WLP,
                format!("{name} @ {facet}"),
                move |s| verify_stellar_equiv(&k, &facet, s),
            ));
        }
    }

    if k.dim() <= 2 && k.facets().len() <= BARY_FACET_LIMIT {
        on_complex!(
            "verify bary-unimodal",
            theorem::BARY_UNIMODAL,
            verify_bary_unimodality
        );
    }
    jobs
}

/// Checks on pairs of corpus entries where one sits inside the other.
fn nested_jobs(entries: &[CorpusEntry]) -> Vec<Job> {
    let find = |n: &str| {
        entries
            .iter()
            .find(|e| e.name == n)
            .map(|e| e.complex.clone())
    };
    let mut jobs = Vec::new();
    if let (Some(big), Some(small)) = (find("torus7"), find("torus7-star")) {
        let (b, sm) = (big.clone(), small.clone());
        jobs.push(Job::new(
            "verify monotone",
            theorem::MONOTONICITY,
            "torus7 > torus7-star",
            move |s| verify_monotonicity(&b, &sm, s),
        ));
        jobs.push(Job::new(
            "verify lemma-exact",
            theorem::EXCISION_SEQUENCE,
            "torus7 > torus7-star",
            move |s| verify_lemma_exact(&big, &small, s),
        ));
    }
    if let (Some(big), Some(small)) = (find("rp2-6"), find("mobius5")) {
        jobs.push(Job::new(
            "verify monotone",
            theorem::MONOTONICITY,
            "rp2-6 > mobius5",
            move |s| verify_monotonicity(&big, &small, s),
        ));
    }
    jobs
}

/// Runs the matrix on the named entries (all of them when `names` is `None`),
/// sorted by theorem id, then subject, then command.
pub fn corpus_matrix(names: Option<&[String]>, s: &Settings) -> Result<Vec<Report>> {
    let all = corpus();
    let entries: Vec<CorpusEntry> = match names {
        None => all,
        Some(names) => names
            .iter()
            .map(|n| {
                all.iter()
                    .find(|e| &e.name == n)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("unknown corpus complex `{n}`")))
            })
            .collect::<Result<_>>()?,
    };
    let mut jobs: Vec<Job> = entries
        .iter()
        .flat_map(|e| entry_jobs(e, s.field))
        .collect();
    jobs.extend(nested_jobs(&entries));

    let next = AtomicUsize::new(0);
    let reports = Mutex::new(Vec::with_capacity(jobs.len()));
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(jobs.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let r = job.run(s);
                reports
                    .lock()
                    .expect("no worker panics while holding the lock")
                    .push(r);
            });
        }
    });
    let mut reports = reports.into_inner().expect("workers have finished");
    reports.sort_by(|a, b| {
        (&a.theorem, &a.subject, &a.command).cmp(&(&b.theorem, &b.subject, &b.command))
    });
    Ok(reports)
}
