//! Weak Lefschetz checks on `F[Δ]/Σ(Θ;F[Δ])` and the harnesses comparing
//! them across bistellar flips, stellar subdivisions and barycentric
//! subdivisions.
//!
//! "Generic" is approximated by best-of-`k` random draws from one seeded
//! stream, so a negative outcome is reported as "no WLP observed".

use std::collections::BTreeSet;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, RelativeComplex, SimplicialComplex, Vertex};
use crate::error::{contract, Result};
use crate::graded::{artinian_hilbert, sample_common_lsop, LinearForm, Lsop};
use crate::homology::{betti_of, buchsbaum_obstruction, classify_manifold, ManifoldKind};
use crate::linalg::FieldSpec;
use crate::report::{theorem, Report, Settings, Verdict};
use crate::sigma::{face_numbers, MultRank, SigmaModule};
use crate::surgery::{
    barycentric_subdivision, bistellar_flip, is_flip_site, stellar_subdivision, FlipSite,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WlpVerdict {
    HasWlp,
    NoWlpObserved,
}

impl fmt::Display for WlpVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WlpVerdict::HasWlp => "has-WLP",
            WlpVerdict::NoWlpObserved => "no-WLP-observed",
        })
    }
}

/// Best rank of `×ω : (M/Σ)_j → (M/Σ)_{j+1}` over random trials, `j = ⌊d/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WlpReport {
    pub degree_pair: (usize, usize),
    pub source_dim: usize,
    pub target_dim: usize,
    pub best_rank: usize,
    pub surjective: bool,
    pub injective: bool,
    /// Trials actually run; sampling stops once the rank reaches the target.
    pub trials: usize,
    pub seed: u64,
    /// Rank seen in each trial, in stream order.
    pub ranks: Vec<usize>,
    pub verdict: WlpVerdict,
}

impl WlpReport {
    fn from_ranks(
        j: usize,
        source: usize,
        target: usize,
        ranks: Vec<usize>,
        seed: u64,
    ) -> WlpReport {
        let best = ranks.iter().copied().max().unwrap_or(0);
        let surjective = best == target;
        WlpReport {
            degree_pair: (j, j + 1),
            source_dim: source,
            target_dim: target,
            best_rank: best,
            surjective,
            injective: best == source,
            trials: ranks.len(),
            seed,
            ranks,
            verdict: if surjective {
                WlpVerdict::HasWlp
            } else {
                WlpVerdict::NoWlpObserved
            },
        }
    }
}

/// True iff `v` rises weakly to some index and falls weakly after it.
pub fn unimodal(v: &[i64]) -> bool {
    let Some((peak, _)) = v
        .iter()
        .enumerate()
        .max_by_key(|&(i, x)| (*x, std::cmp::Reverse(i)))
    else {
        return true;
    };
    v[..=peak].windows(2).all(|w| w[0] <= w[1]) && v[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// Ranks of `×ω` on `M/Σ(Θ;M)` from degree `j` to `j + 1`, for `j = 0..d`.
pub fn mult_profile(
    pair: &RelativeComplex,
    lsop: &Lsop,
    omega: &LinearForm,
) -> Result<Vec<MultRank>> {
    if omega.field() != lsop.field {
        return contract("the multiplier and the l.s.o.p. live over different fields");
    }
    let sm = SigmaModule::new(pair, lsop)?;
    Ok((0..sm.d())
        .map(|j| sm.multiplication_rank(omega, j))
        .collect())
}

/// The degree `⌊d/2⌋` at which the weak Lefschetz map starts.
pub fn wlp_degree(d: usize) -> usize {
    d / 2
}

fn union_vertices(complexes: &[&SimplicialComplex]) -> BTreeSet<Vertex> {
    complexes
        .iter()
        .flat_map(|k| k.vertices().iter().copied())
        .collect()
}

fn require_connected_buchsbaum(k: &SimplicialComplex, field: FieldSpec) -> Result<()> {
    if let Some(why) = buchsbaum_obstruction(&RelativeComplex::absolute(k.clone()), field) {
        return contract(format!("not Buchsbaum over {field}: {why}"));
    }
    if k.dim() < 0 || betti_of(k, field).get(0) != 0 {
        return contract("complex is not connected");
    }
    Ok(())
}

/// Best-of-`trials` WLP test, drawing `(Θ, ω)` pairs from one stream seeded by `seed`.
pub fn wlp_check(
    k: &SimplicialComplex,
    field: FieldSpec,
    seed: u64,
    trials: usize,
) -> Result<WlpReport> {
    require_connected_buchsbaum(k, field)?;
    let pair = RelativeComplex::absolute(k.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = Vec::new();
    let (mut source, mut target, mut j) = (0, 0, 0);
    for _ in 0..trials.max(1) {
        let lsop = sample_common_lsop(&[k], field, &mut rng, crate::graded::DEFAULT_LSOP_ATTEMPTS)?;
        let omega = LinearForm::random(lsop.field, &union_vertices(&[k]), &mut rng);
        let sm = SigmaModule::new(&pair, &lsop)?;
        j = wlp_degree(sm.d());
        let r = sm.multiplication_rank(&omega, j);
        (source, target) = (r.source, r.target);
        ranks.push(r.rank);
        if r.rank == target {
            break;
        }
    }
    Ok(WlpReport::from_ranks(j, source, target, ranks, seed))
}

/// WLP of `F[K]/Σ(Θ)` for a fixed `Θ`, best over `trials` draws of `ω`.
fn wlp_for_lsop(
    k: &SimplicialComplex,
    lsop: &Lsop,
    rng: &mut ChaCha8Rng,
    trials: usize,
    seed: u64,
) -> Result<WlpReport> {
    let pair = RelativeComplex::absolute(k.clone());
    let forms = Lsop::from_forms(&pair, lsop.forms.clone())?;
    let sm = SigmaModule::new(&pair, &forms)?;
    let j = wlp_degree(sm.d());
    let vertices = union_vertices(&[k]);
    let mut ranks = Vec::new();
    let (mut source, mut target) = (0, 0);
    for _ in 0..trials.max(1) {
        let omega = LinearForm::random(lsop.field, &vertices, rng);
        let r = sm.multiplication_rank(&omega, j);
        (source, target) = (r.source, r.target);
        ranks.push(r.rank);
        if r.rank == target {
            break;
        }
    }
    Ok(WlpReport::from_ranks(j, source, target, ranks, seed))
}

/// Hypotheses shared by the flip and stellar harnesses.
fn closed_orientable(k: &SimplicialComplex, field: FieldSpec) -> std::result::Result<(), String> {
    let v = classify_manifold(k, field);
    if v.kind != ManifoldKind::ClosedManifold {
        return Err(format!("not a closed homology manifold over {field}"));
    }
    if !v.connected {
        return Err("manifold is not connected".into());
    }
    if !v.orientable {
        return Err(format!("orientability fails over {field}"));
    }
    Ok(())
}

/// Flip sizes `p` excluded by the theorem: `(d+1)/2` for odd `d`, `d/2` and `(d+2)/2` for even `d`.
pub fn excluded_flip_sizes(d: usize) -> Vec<usize> {
    if d % 2 == 1 {
        vec![d.div_ceil(2)]
    } else {
        vec![d / 2, (d + 2) / 2]
    }
}

fn ones(len: usize, d: usize) -> Vec<i64> {
    (0..=d).map(|j| i64::from(j < len)).collect()
}

fn wlp_vector(r: &WlpReport) -> [i64; 4] {
    [
        r.degree_pair.0 as i64,
        r.source_dim as i64,
        r.target_dim as i64,
        r.best_rank as i64,
    ]
}

/// WLP of `K` and of its flip at `site` agree under one common l.s.o.p.;
/// also checks that the replaced balls `Ā∗∂B̄` and `∂Ā∗B̄` have Artinian
/// reductions with Hilbert functions `(1, ..., 1)` of lengths `p` and `d - p + 1`.
pub fn verify_flip_equiv(k: &SimplicialComplex, site: &FlipSite, s: &Settings) -> Result<Report> {
    let rep = Report::new("verify flip-equiv", theorem::FLIP_WLP, s.field)
        .input("complex", k)
        .seed(s.seed);
    if let Err(why) = closed_orientable(k, s.field) {
        return Ok(rep.precondition(why));
    }
    if !is_flip_site(k, site) {
        return Ok(rep.precondition(format!("{site} is not a flip site")));
    }
    let d = (k.dim() + 1) as usize;
    let p = site.p();
    if excluded_flip_sizes(d).contains(&p) {
        return Ok(rep.precondition(format!("flip size p = {p} is excluded for d = {d}")));
    }
    let flipped = bistellar_flip(k, site)?;
    let rep = rep.input("flipped", &flipped);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let lsop = sample_common_lsop(&[k, &flipped], s.field, &mut rng, s.attempts)?;
    let before = wlp_for_lsop(k, &lsop, &mut rng, s.trials, s.seed)?;
    let after = wlp_for_lsop(&flipped, &lsop, &mut rng, s.trials, s.seed)?;

    let ball = |a: &Face, b: &Face, host: &SimplicialComplex| -> Result<Vec<i64>> {
        let facets: Vec<Face> = a
            .vertices()
            .iter()
            .map(|&v| a.minus(&Face::new([v])).union(b))
            .collect();
        let g = SimplicialComplex::from_facets(facets);
        debug_assert!(g.facets().iter().all(|f| host.contains(f)));
        let pair = RelativeComplex::absolute(g);
        artinian_hilbert(&pair, &Lsop::from_forms(&pair, lsop.forms.clone())?)
    };
    // Ā∗∂B̄ has facets A ∪ (B ∖ b); ∂Ā∗B̄ has facets (A ∖ a) ∪ B
    let gamma1 = ball(&site.b, &site.a, k)?;
    let gamma2 = ball(&site.a, &site.b, &flipped)?;
    let proof_ok = gamma1 == ones(p, d) && gamma2 == ones(d - p + 1, d);
    let agree = before.verdict == after.verdict;
    let summary = format!(
        "{}-flip: before {} (rank {}/{}), after {} (rank {}/{}); ball reductions {gamma1:?}, {gamma2:?}",
        p - 1,
        before.verdict,
        before.best_rank,
        before.target_dim,
        after.verdict,
        after.best_rank,
        after.target_dim
    );
    Ok(rep
        .vector("wlp-before", &wlp_vector(&before))
        .vector("wlp-after", &wlp_vector(&after))
        .vector("artinian-hilbert-removed", &gamma1)
        .vector("artinian-hilbert-inserted", &gamma2)
        .finish(Verdict::from_bool(agree && proof_ok), summary))
}

/// WLP of `K` and of its stellar subdivision at `σ` agree, each tested with
/// its own random data, when `dim σ > d/2`.
pub fn verify_stellar_equiv(k: &SimplicialComplex, sigma: &Face, s: &Settings) -> Result<Report> {
    let rep = Report::new("verify stellar-equiv", theorem::STELLAR_WLP, s.field)
        .input("complex", k)
        .seed(s.seed);
    if let Err(why) = closed_orientable(k, s.field) {
        return Ok(rep.precondition(why));
    }
    if sigma.is_empty() || !k.contains(sigma) {
        return Ok(rep.precondition(format!("{sigma} is not a nonempty face")));
    }
    let d = (k.dim() + 1) as usize;
    if 2 * sigma.dim() <= d as isize {
        return Ok(rep.precondition(format!(
            "dim {sigma} = {} is not above d/2 = {d}/2",
            sigma.dim()
        )));
    }
    let sub = stellar_subdivision(k, sigma)?;
    let before = wlp_check(k, s.field, s.seed, s.trials)?;
    let after = wlp_check(&sub, s.field, s.seed.wrapping_add(1), s.trials)?;
    let summary = format!(
        "before {}, after subdividing {sigma}: {}",
        before.verdict, after.verdict
    );
    Ok(rep
        .input("subdivided", &sub)
        .seed(s.seed.wrapping_add(1))
        .vector("wlp-before", &wlp_vector(&before))
        .vector("wlp-after", &wlp_vector(&after))
        .finish(Verdict::from_bool(before.verdict == after.verdict), summary))
}

/// Degrees where `×ω` on `M/Σ` is claimed injective and surjective, for
/// `d` parameters: injective for `i ≤ ⌈d/2⌉ - 1`, surjective for `⌈d/2⌉ ≤ i < d`.
pub fn lefschetz_split(d: usize) -> (Vec<usize>, Vec<usize>) {
    let half = d.div_ceil(2);
    ((0..half).collect(), (half..d).collect())
}

/// Unimodality of `h″` for the barycentric subdivision of `k`, plus the
/// injective/surjective pattern of a generic `×ω` on `F[Δ]/Σ`.
///
/// The statement assumes characteristic zero; over `F_p` only unimodality
/// and the agreement of the two `h″` routes decide the verdict, and the
/// report is marked as a characteristic-`p` proxy.
pub fn verify_bary_unimodality(k: &SimplicialComplex, s: &Settings) -> Result<Report> {
    let bary = barycentric_subdivision(k)?;
    let rep = Report::new("verify bary-unimodal", theorem::BARY_UNIMODAL, s.field)
        .input("complex", k)
        .input("subdivision", &bary)
        .seed(s.seed);
    if let Err(e) = require_connected_buchsbaum(&bary, s.field) {
        return Ok(rep.precondition(e.to_string()));
    }
    let pair = RelativeComplex::absolute(bary.clone());
    let hpp = face_numbers(&pair, s.field).h_double_prime;
    let d = hpp.len() - 1;
    let (inj, surj) = lefschetz_split(d);
    let vertices = union_vertices(&[&bary]);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut best: Vec<MultRank> = Vec::new();
    let mut quotient = Vec::new();
    for _ in 0..s.trials.max(1) {
        let lsop = sample_common_lsop(&[&bary], s.field, &mut rng, s.attempts)?;
        let omega = LinearForm::random(lsop.field, &vertices, &mut rng);
        let sm = SigmaModule::new(&pair, &lsop)?;
        quotient = sm.quotient_hilbert();
        let profile: Vec<MultRank> = (0..d).map(|i| sm.multiplication_rank(&omega, i)).collect();
        if best.is_empty() {
            best = profile;
        } else {
            for (b, r) in best.iter_mut().zip(profile) {
                if r.rank > b.rank {
                    *b = r;
                }
            }
        }
        if inj.iter().all(|&i| best[i].injective()) && surj.iter().all(|&i| best[i].surjective()) {
            break;
        }
    }
    let pattern =
        inj.iter().all(|&i| best[i].injective()) && surj.iter().all(|&i| best[i].surjective());
    let uni = unimodal(&hpp);
    let routes = quotient == hpp;
    let proxy = !s.field.is_rational();
    let ok = uni && routes && (proxy || pattern);
    let ranks: Vec<i64> = best.iter().map(|r| r.rank as i64).collect();
    let mut rep = rep
        .vector("h-double-prime", &hpp)
        .vector("quotient-hilbert", &quotient)
        .vector("ranks", &ranks)
        .vector(
            "injective-degrees",
            &inj.iter().map(|&i| i as i64).collect::<Vec<_>>(),
        )
        .vector(
            "surjective-degrees",
            &surj.iter().map(|&i| i as i64).collect::<Vec<_>>(),
        );
    if d % 2 == 1 {
        // the statement bounds i by d/2 - 1 and d/2; for odd d the degree (d-1)/2 sits between them
        let b = best[(d - 1) / 2];
        rep = rep
            .vector("boundary-degree", &[b.degree as i64, b.source as i64, b.target as i64, b.rank as i64])
            .note(format!(
                "odd d = {d}: degree {} lies between the fractional bounds; injective: {}, surjective: {}",
                b.degree,
                b.injective(),
                b.surjective()
            ));
    }
    if proxy {
        rep = rep.note(format!(
            "characteristic {} proxy: the statement assumes characteristic zero; rank pattern recorded, not asserted",
            s.field.characteristic()
        ));
    }
    let summary =
        format!("h'' = {hpp:?}, unimodal: {uni}; ranks {ranks:?}, split respected: {pattern}");
    Ok(rep.finish(Verdict::from_bool(ok), summary))
}
