//! Verifiers comparing the algebraic side (`M/Σ(Θ;M)`, `M/ΘM`) with
//! combinatorial face invariants. Each returns a [`Report`]; unmet
//! hypotheses yield a precondition-failure verdict rather than an error.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{face_numbers, inconsistency, SigmaModule};
use crate::comb::binomial;
use crate::complex::{Face, RelativeComplex, SimplicialComplex};
use crate::error::Result;
use crate::graded::{
    artinian_hilbert, is_lsop, random_common_lsop, random_lsop, random_lsop_for_pair, Lsop,
};
use crate::homology::{
    betti, betti_of, buchsbaum_obstruction, classify_manifold, is_homology_ball, ManifoldKind,
};
use crate::linalg::FieldSpec;
use crate::report::{theorem, Report, Settings, Verdict};

fn pair_report(command: &str, id: &str, pair: &RelativeComplex, s: &Settings) -> Report {
    Report::new(command, id, s.field)
        .input("delta", pair.delta())
        .input("gamma", pair.gamma())
        .seed(s.seed)
}

fn complex_report(command: &str, id: &str, k: &SimplicialComplex, s: &Settings) -> Report {
    Report::new(command, id, s.field)
        .input("complex", k)
        .seed(s.seed)
}

fn reversed(v: &[i64]) -> Vec<i64> {
    v.iter().rev().copied().collect()
}

fn dominates(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x >= y)
}

fn not_buchsbaum(rep: Report, field: FieldSpec, why: String) -> Report {
    rep.precondition(format!("not Buchsbaum over {field}: {why}"))
}

fn betti_i64(b: &crate::homology::BettiVector) -> Vec<i64> {
    b.entries.iter().map(|&x| x as i64).collect()
}

/// `dim (M/Σ(Θ;M))_j` equals the combinatorial `h″_j` for a Buchsbaum pair,
/// and the quotient vanishes in degree `d + 1`.
pub fn verify_sigma_quotient(pair: &RelativeComplex, s: &Settings) -> Result<Report> {
    let rep = pair_report("verify sigma-quotient", theorem::SIGMA_QUOTIENT, pair, s);
    if let Some(why) = buchsbaum_obstruction(pair, s.field) {
        return Ok(not_buchsbaum(rep, s.field, why));
    }
    let lsop = random_lsop_for_pair(pair, s.field, s.seed, s.attempts)?;
    let sm = SigmaModule::new(pair, &lsop)?;
    let q = sm.quotient_hilbert();
    let n = face_numbers(pair, s.field);
    let ok = q == n.h_double_prime && sm.vanishes_above_top();
    let summary = format!("dim(M/Sigma) = {q:?}, h'' = {:?}", n.h_double_prime);
    Ok(rep
        .vector("quotient-hilbert", &q)
        .vector("h-double-prime", &n.h_double_prime)
        .vector("h", &n.h)
        .vector("betti", &betti_i64(&n.betti))
        .finish(Verdict::from_bool(ok), summary))
}

/// `dim (M/ΘM)_j = h′_j` for a Buchsbaum pair.
pub fn verify_schenzel(pair: &RelativeComplex, s: &Settings) -> Result<Report> {
    let rep = pair_report("verify schenzel", theorem::SCHENZEL, pair, s);
    if let Some(why) = buchsbaum_obstruction(pair, s.field) {
        return Ok(not_buchsbaum(rep, s.field, why));
    }
    let lsop = random_lsop_for_pair(pair, s.field, s.seed, s.attempts)?;
    let a = artinian_hilbert(pair, &lsop)?;
    let n = face_numbers(pair, s.field);
    let summary = format!("dim(M/Theta M) = {a:?}, h' = {:?}", n.h_prime);
    Ok(rep
        .vector("artinian-hilbert", &a)
        .vector("h-prime", &n.h_prime)
        .finish(Verdict::from_bool(a == n.h_prime), summary))
}

/// `dim (Σ/ΘM)_j = C(d,j) β̃_{j-1}` for `j < d` and `0` for `j ≥ d`.
pub fn verify_sigma_layer(pair: &RelativeComplex, s: &Settings) -> Result<Report> {
    let rep = pair_report("verify sigma-layer", theorem::SIGMA_LAYER, pair, s);
    if let Some(why) = buchsbaum_obstruction(pair, s.field) {
        return Ok(not_buchsbaum(rep, s.field, why));
    }
    let lsop = random_lsop_for_pair(pair, s.field, s.seed, s.attempts)?;
    let sm = SigmaModule::new(pair, &lsop)?;
    let layer = sm.layer();
    let d = sm.d() as i64;
    let b = betti(pair, s.field);
    let expected: Vec<i64> = (0..=d)
        .map(|j| {
            if j < d {
                binomial(d, j) * b.get(j as isize - 1) as i64
            } else {
                0
            }
        })
        .collect();
    let ok = layer == expected && sm.vanishes_above_top();
    let summary = format!("dim(Sigma/Theta M) = {layer:?}, expected {expected:?}");
    Ok(rep
        .vector("layer", &layer)
        .vector("expected", &expected)
        .finish(Verdict::from_bool(ok), summary))
}

/// Manifold hypotheses shared by the duality checks.
fn manifold_with_boundary(
    k: &SimplicialComplex,
    field: FieldSpec,
) -> std::result::Result<SimplicialComplex, String> {
    let v = classify_manifold(k, field);
    match v.kind {
        ManifoldKind::NotManifold => {
            return Err(format!(
                "not a homology manifold over {field}: {}",
                v.reason.unwrap_or_default()
            ))
        }
        ManifoldKind::ClosedManifold => return Err("manifold has empty boundary".into()),
        ManifoldKind::ManifoldWithBoundary => {}
    }
    if !v.connected {
        return Err("manifold is not connected".into());
    }
    if !v.orientable {
        return Err(format!(
            "orientability fails over {field}: top relative homology is not one-dimensional"
        ));
    }
    Ok(v.boundary)
}

/// Hilbert functions of `F[Δ]/Σ` and `F[Δ,∂Δ]/Σ` under one l.s.o.p.
fn duality_pieces(
    k: &SimplicialComplex,
    boundary: &SimplicialComplex,
    s: &Settings,
) -> Result<(Vec<i64>, Vec<i64>)> {
    let lsop = random_lsop(k, s.field, s.seed, s.attempts)?;
    let whole = SigmaModule::new(&RelativeComplex::absolute(k.clone()), &lsop)?.quotient_hilbert();
    let pair = RelativeComplex::new(k.clone(), boundary.clone())?;
    let rel = SigmaModule::new(&pair, &lsop)?.quotient_hilbert();
    Ok((whole, rel))
}

/// `h″_i(Δ,∂Δ) = h″_{d-i}(Δ)` and the matching reversal of the `M/Σ`
/// Hilbert functions, for a connected orientable manifold with boundary.
pub fn verify_manifold_duality(k: &SimplicialComplex, s: &Settings) -> Result<Report> {
    let rep = complex_report("verify duality", theorem::MANIFOLD_DUALITY, k, s);
    let boundary = match manifold_with_boundary(k, s.field) {
        Ok(b) => b,
        Err(why) => return Ok(rep.precondition(why)),
    };
    let pair = RelativeComplex::new(k.clone(), boundary.clone())?;
    let hk = face_numbers(&RelativeComplex::absolute(k.clone()), s.field).h_double_prime;
    let hp = face_numbers(&pair, s.field).h_double_prime;
    let (whole, rel) = duality_pieces(k, &boundary, s)?;
    let numbers = hp == reversed(&hk);
    let hilbert = rel == reversed(&whole);
    let summary = format!(
        "h''(D,dD) = {hp:?} vs reversed h''(D) = {:?}; quotient {rel:?} vs reversed {:?}",
        reversed(&hk),
        reversed(&whole)
    );
    Ok(rep
        .vector("h-double-prime-pair", &hp)
        .vector("h-double-prime", &hk)
        .vector("quotient-hilbert-pair", &rel)
        .vector("quotient-hilbert", &whole)
        .finish(Verdict::from_bool(numbers && hilbert), summary))
}

/// Hilbert-function reversal between `F[Δ,∂Δ]/Σ` and `F[Δ]/Σ` alone.
pub fn verify_quotient_duality(k: &SimplicialComplex, s: &Settings) -> Result<Report> {
    let rep = complex_report("verify quotient-duality", theorem::QUOTIENT_DUALITY, k, s);
    let boundary = match manifold_with_boundary(k, s.field) {
        Ok(b) => b,
        Err(why) => return Ok(rep.precondition(why)),
    };
    let (whole, rel) = duality_pieces(k, &boundary, s)?;
    let ok = rel == reversed(&whole);
    let summary = format!("quotient {rel:?} vs reversed {:?}", reversed(&whole));
    Ok(rep
        .vector("quotient-hilbert-pair", &rel)
        .vector("quotient-hilbert", &whole)
        .finish(Verdict::from_bool(ok), summary))
}

/// For a homology ball, `dim (F[Δ,∂Δ]/Θ)_j = dim (F[Δ]/Θ)_{d-j}`.
pub fn verify_ball_duality(k: &SimplicialComplex, s: &Settings) -> Result<Report> {
    let rep = complex_report("verify ball-duality", theorem::BALL_DUALITY, k, s);
    if !is_homology_ball(k, s.field) {
        return Ok(rep.precondition(format!("not a homology ball over {}", s.field)));
    }
    let boundary = classify_manifold(k, s.field).boundary;
    let lsop = random_lsop(k, s.field, s.seed, s.attempts)?;
    let whole = artinian_hilbert(&RelativeComplex::absolute(k.clone()), &lsop)?;
    let rel = artinian_hilbert(&RelativeComplex::new(k.clone(), boundary)?, &lsop)?;
    let ok = rel == reversed(&whole);
    let summary = format!(
        "dim(F[D,dD]/Theta) = {rel:?} vs reversed dim(F[D]/Theta) = {:?}",
        reversed(&whole)
    );
    Ok(rep
        .vector("artinian-hilbert-pair", &rel)
        .vector("artinian-hilbert", &whole)
        .finish(Verdict::from_bool(ok), summary))
}

/// `F[Δ]/Σ` has a palindromic Hilbert function for a connected orientable
/// closed manifold. When the hypotheses fail, the vector is still recorded.
pub fn verify_gorenstein(k: &SimplicialComplex, s: &Settings) -> Result<Report> {
    let rep = complex_report("verify gorenstein", theorem::GORENSTEIN, k, s);
    let v = classify_manifold(k, s.field);
    let hypothesis = match (v.kind, v.connected, v.orientable) {
        (ManifoldKind::ClosedManifold, true, true) => None,
        (ManifoldKind::ClosedManifold, false, _) => Some("manifold is not connected".to_string()),
        (ManifoldKind::ClosedManifold, _, false) => Some(format!(
            "orientability fails over {}: top homology is not one-dimensional",
            s.field
        )),
        _ => Some(format!("not a closed homology manifold over {}", s.field)),
    };
    if hypothesis.is_some() && v.kind != ManifoldKind::ClosedManifold {
        return Ok(rep.precondition(hypothesis.unwrap_or_default()));
    }
    let lsop = random_lsop(k, s.field, s.seed, s.attempts)?;
    let q = SigmaModule::new(&RelativeComplex::absolute(k.clone()), &lsop)?.quotient_hilbert();
    let palindrome = q == reversed(&q);
    let rep = rep.vector("quotient-hilbert", &q);
    Ok(match hypothesis {
        None => rep.finish(
            Verdict::from_bool(palindrome),
            format!("quotient {q:?}, palindrome: {palindrome}"),
        ),
        Some(why) => rep.precondition(format!(
            "{why}; quotient {q:?}, palindrome: {palindrome} (no claim made)"
        )),
    })
}

/// Three independent computations of the a-invariant of `F[K]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AInvariant {
    /// `max{k : (M/Σ)_k ≠ 0} - d`.
    pub algebraic: i64,
    /// `max{k : h″_k ≠ 0} - d`.
    pub combinatorial: i64,
    /// `-min{|τ| : H̃_{d-1-|τ|}(lk τ) ≠ 0}`.
    pub hochster: i64,
}

fn top_index(v: &[i64]) -> Option<i64> {
    v.iter().rposition(|&x| x != 0).map(|k| k as i64)
}

/// All three routes to the a-invariant, without asserting agreement.
pub fn a_invariant_routes(
    k: &SimplicialComplex,
    field: FieldSpec,
    lsop: &Lsop,
) -> Result<AInvariant> {
    let d = (k.dim() + 1) as i64;
    let abs = RelativeComplex::absolute(k.clone());
    let q = SigmaModule::new(&abs, lsop)?.quotient_hilbert();
    let hpp = face_numbers(&abs, field).h_double_prime;
    let min_face = k
        .all_faces()
        .filter(|tau| betti_of(&k.link(tau), field).get((d - 1 - tau.len() as i64) as isize) != 0)
        .map(|tau| tau.len() as i64)
        .min();
    let (Some(qa), Some(ca), Some(ha)) = (top_index(&q), top_index(&hpp), min_face) else {
        return crate::error::contract(
            "a-invariant undefined: vanishing quotient or no face with top link homology",
        );
    };
    Ok(AInvariant {
        algebraic: qa - d,
        combinatorial: ca - d,
        hochster: -ha,
    })
}

/// The a-invariant of `F[K]`, failing with an inconsistency error when the
/// three routes disagree.
pub fn a_invariant(k: &SimplicialComplex, field: FieldSpec, lsop: &Lsop) -> Result<i64> {
    let a = a_invariant_routes(k, field, lsop)?;
    if a.algebraic != a.combinatorial || a.combinatorial != a.hochster {
        return inconsistency(format!("a-invariant routes disagree: {a:?}"));
    }
    Ok(a.algebraic)
}

pub fn verify_a_invariant(k: &SimplicialComplex, s: &Settings) -> Result<Report> {
    let rep = complex_report("verify a-invariant", theorem::A_INVARIANT, k, s);
    let abs = RelativeComplex::absolute(k.clone());
    if let Some(why) = buchsbaum_obstruction(&abs, s.field) {
        return Ok(not_buchsbaum(rep, s.field, why));
    }
    if betti_of(k, s.field).get(0) != 0 || k.dim() < 1 {
        return Ok(rep.precondition("complex is not connected of dimension at least one"));
    }
    let lsop = random_lsop(k, s.field, s.seed, s.attempts)?;
    let a = a_invariant_routes(k, s.field, &lsop)?;
    let ok = a.algebraic == a.combinatorial && a.combinatorial == a.hochster;
    Ok(rep
        .vector("a-invariant", &[a.algebraic, a.combinatorial, a.hochster])
        .finish(
            Verdict::from_bool(ok),
            format!(
                "algebraic {}, h'' {}, link homology {}",
                a.algebraic, a.combinatorial, a.hochster
            ),
        ))
}

fn is_subcomplex(gamma: &SimplicialComplex, delta: &SimplicialComplex) -> bool {
    gamma.facets().iter().all(|f| delta.contains(f))
}

/// `h″_i(Δ) ≥ h″_i(Γ)` for Buchsbaum `Γ ⊆ Δ` of equal dimension, both
/// combinatorially and through `M/Σ` under a common l.s.o.p.
pub fn verify_monotonicity(
    delta: &SimplicialComplex,
    gamma: &SimplicialComplex,
    s: &Settings,
) -> Result<Report> {
    let rep = Report::new("verify monotone", theorem::MONOTONICITY, s.field)
        .input("delta", delta)
        .input("gamma", gamma)
        .seed(s.seed);
    if !is_subcomplex(gamma, delta) {
        return Ok(rep.precondition("second complex is not a subcomplex of the first"));
    }
    if gamma.dim() != delta.dim() {
        return Ok(rep.precondition("complexes have different dimensions"));
    }
    let (da, ga) = (
        RelativeComplex::absolute(delta.clone()),
        RelativeComplex::absolute(gamma.clone()),
    );
    for (name, p) in [("ambient", &da), ("subcomplex", &ga)] {
        if let Some(why) = buchsbaum_obstruction(p, s.field) {
            return Ok(not_buchsbaum(rep, s.field, format!("{name}: {why}")));
        }
    }
    let hd = face_numbers(&da, s.field).h_double_prime;
    let hg = face_numbers(&ga, s.field).h_double_prime;
    let lsop = random_common_lsop(&[delta, gamma], s.field, s.seed, s.attempts)?;
    let qd = SigmaModule::new(&da, &lsop)?.quotient_hilbert();
    let qg = SigmaModule::new(&ga, &lsop)?.quotient_hilbert();
    let ok = dominates(&hd, &hg) && dominates(&qd, &qg);
    let summary = format!("h''(Delta) = {hd:?} >= h''(Gamma) = {hg:?}; quotients {qd:?} >= {qg:?}");
    Ok(rep
        .vector("h-double-prime-delta", &hd)
        .vector("h-double-prime-gamma", &hg)
        .vector("quotient-hilbert-delta", &qd)
        .vector("quotient-hilbert-gamma", &qg)
        .finish(Verdict::from_bool(ok), summary))
}

/// `h″_i(K) ≥ h_i(lk τ)` for Buchsbaum `K` and a nonempty face `τ`.
pub fn verify_link_bound(k: &SimplicialComplex, tau: &Face, s: &Settings) -> Result<Report> {
    let rep = complex_report("verify link-bound", theorem::LINK_BOUND, k, s);
    if tau.is_empty() || !k.contains(tau) {
        return Ok(rep.precondition(format!("{tau} is not a nonempty face")));
    }
    let abs = RelativeComplex::absolute(k.clone());
    if let Some(why) = buchsbaum_obstruction(&abs, s.field) {
        return Ok(not_buchsbaum(rep, s.field, why));
    }
    let d = (k.dim() + 1) as usize;
    let hpp = face_numbers(&abs, s.field).h_double_prime;
    let link = k.link(tau);
    let mut hl = link.h_vector(d - tau.len())?.entries;
    hl.resize(d + 1, 0);
    let hs = k.star(tau).h_vector(d)?.entries;
    let ok = dominates(&hpp, &hl) && hs == hl;
    let summary = format!("h''(K) = {hpp:?} >= h(lk {tau}) = {hl:?}; star h = {hs:?}");
    Ok(rep
        .vector("h-double-prime", &hpp)
        .vector("h-link", &hl)
        .vector("h-star", &hs)
        .finish(Verdict::from_bool(ok), summary))
}

/// Removing the interior of a full-dimensional homology ball `Γ` from a
/// closed manifold `Δ` leaves a manifold `D` with `∂D = ∂Γ`, and
/// `dim (F[Δ]/Σ)_j = dim (F[D,∂D]/Σ)_j + dim (F[Γ]/Θ)_j`,
/// `h_j(D,∂D) = h_j(Δ) - h_j(Γ)`, with `β̃(D,∂D) = β̃(Δ,Γ) = β̃(Δ)`.
pub fn verify_lemma_exact(
    delta: &SimplicialComplex,
    gamma: &SimplicialComplex,
    s: &Settings,
) -> Result<Report> {
    let rep = Report::new("verify lemma-exact", theorem::EXCISION_SEQUENCE, s.field)
        .input("delta", delta)
        .input("gamma", gamma)
        .seed(s.seed);
    if classify_manifold(delta, s.field).kind != ManifoldKind::ClosedManifold {
        return Ok(rep.precondition(format!(
            "ambient complex is not a closed homology manifold over {}",
            s.field
        )));
    }
    if !is_subcomplex(gamma, delta) {
        return Ok(rep.precondition("second complex is not a subcomplex of the first"));
    }
    if gamma.dim() != delta.dim() {
        return Ok(rep.precondition("subcomplex is not full-dimensional"));
    }
    if !is_homology_ball(gamma, s.field) {
        return Ok(rep.precondition(format!(
            "subcomplex is not a homology ball over {}",
            s.field
        )));
    }
    let gamma_boundary = classify_manifold(gamma, s.field).boundary;
    let interior: HashSet<Face> = gamma
        .all_faces()
        .filter(|f| !gamma_boundary.contains(f))
        .cloned()
        .collect();
    let rest = delta.without_faces(&interior)?;
    let rv = classify_manifold(&rest, s.field);
    let boundary_ok = rv.kind == ManifoldKind::ManifoldWithBoundary
        && rv.boundary.facets() == gamma_boundary.facets();

    let lsop = random_lsop(delta, s.field, s.seed, s.attempts)?;
    let rest_pair = RelativeComplex::new(rest.clone(), rv.boundary.clone())?;
    let whole =
        SigmaModule::new(&RelativeComplex::absolute(delta.clone()), &lsop)?.quotient_hilbert();
    let mut rest_lsop = Lsop::from_forms(&rest_pair, lsop.forms.clone())?;
    rest_lsop.seed = lsop.seed;
    let ball_ok = is_lsop(gamma, &lsop.forms)?;
    let (q_rest, q_ball) = if rest_lsop.validated && ball_ok {
        let q_rest = SigmaModule::new(&rest_pair, &rest_lsop)?.quotient_hilbert();
        let q_ball = artinian_hilbert(&RelativeComplex::absolute(gamma.clone()), &lsop)?;
        (q_rest, q_ball)
    } else {
        return inconsistency(
            "an l.s.o.p. of the ambient complex failed on a full-dimensional subcomplex".into(),
        );
    };
    let additive = whole
        .iter()
        .zip(q_rest.iter().zip(&q_ball))
        .all(|(w, (r, b))| *w == r + b);

    let d = (delta.dim() + 1) as usize;
    let h_rest = rest_pair.h_vector(d)?.entries;
    let h_delta = delta.h_vector(d)?.entries;
    let h_gamma = gamma.h_vector(d)?.entries;
    let h_ok = h_rest
        .iter()
        .zip(h_delta.iter().zip(&h_gamma))
        .all(|(r, (a, b))| *r == a - b);

    let b_rest = betti(&rest_pair, s.field);
    let b_rel = betti(
        &RelativeComplex::new(delta.clone(), gamma.clone())?,
        s.field,
    );
    let b_delta = betti_of(delta, s.field);
    let excision = b_rest.entries == b_rel.entries && b_rel.entries == b_delta.entries;

    let ok = boundary_ok && additive && h_ok && excision;
    let summary = format!(
        "boundary matches: {boundary_ok}; {whole:?} = {q_rest:?} + {q_ball:?}: {additive}; h additivity: {h_ok}; betti excision: {excision}"
    );
    Ok(rep
        .vector("quotient-hilbert-delta", &whole)
        .vector("quotient-hilbert-rest", &q_rest)
        .vector("artinian-hilbert-ball", &q_ball)
        .vector("h-rest", &h_rest)
        .vector("h-delta", &h_delta)
        .vector("h-ball", &h_gamma)
        .vector("betti-rest", &betti_i64(&b_rest))
        .vector("betti-relative", &betti_i64(&b_rel))
        .vector("betti-delta", &betti_i64(&b_delta))
        .finish(Verdict::from_bool(ok), summary))
}

/// `Σ_j dim (M/ΘM)_j - e = Σ_{i=1}^{d-1} C(d-1,i) β̃_{i-1}`, with the
/// multiplicity `e` of linear parameters equal to the number of facets.
pub fn verify_multiplicity(k: &SimplicialComplex, s: &Settings) -> Result<Report> {
    let rep = complex_report("verify multiplicity", theorem::MULTIPLICITY, k, s);
    let abs = RelativeComplex::absolute(k.clone());
    if let Some(why) = buchsbaum_obstruction(&abs, s.field) {
        return Ok(not_buchsbaum(rep, s.field, why));
    }
    let lsop = random_lsop(k, s.field, s.seed, s.attempts)?;
    let a = artinian_hilbert(&abs, &lsop)?;
    let n = face_numbers(&abs, s.field);
    let d = n.d as i64;
    let facets = k.facets().len() as i64;
    let lhs = a.iter().sum::<i64>() - facets;
    let lhs_comb = n.h_prime.iter().sum::<i64>() - facets;
    let rhs: i64 = (1..d)
        .map(|i| binomial(d - 1, i) * n.betti.get(i as isize - 1) as i64)
        .sum();
    let ok = lhs == rhs && lhs_comb == rhs;
    let summary = format!(
        "{} - {facets} = {lhs}, local cohomology side {rhs}",
        a.iter().sum::<i64>()
    );
    Ok(rep
        .vector("artinian-hilbert", &a)
        .vector("h-prime", &n.h_prime)
        .vector("identity", &[lhs, rhs])
        .finish(Verdict::from_bool(ok), summary))
}
