//! Reduced relative simplicial homology over a field, and the homological
//! classifiers built on it: homology manifolds (closed or with boundary),
//! orientability, homology balls and spheres, and Schenzel's Buchsbaum
//! criterion.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, RelativeComplex, SimplicialComplex};
use crate::linalg::{FieldSpec, Matrix};

/// Dimensions `β̃_{-1}, β̃_0, ..., β̃_{top}` of reduced homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub field: FieldSpec,
    pub entries: Vec<u64>,
}

impl BettiVector {
    /// `β̃_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.entries.get(k))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&b| b == 0)
    }

    /// True iff the only nonzero entry is `β̃_i = 1`.
    pub fn is_sphere_of_dim(&self, i: isize) -> bool {
        self.get(i) == 1 && self.entries.iter().sum::<u64>() == 1
    }

    /// `Σ_{i ≥ -1} (-1)^i β̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.entries, self.field)
    }
}

/// Signed incidence matrix of `∂ : C_i → C_{i-1}`, rows indexed by `upper`.
fn boundary_matrix(field: FieldSpec, upper: &[Face], lower: &[Face]) -> Matrix {
    let index: HashMap<&Face, usize> = lower.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let mut m = Matrix::zeros(field, upper.len(), lower.len());
    let (plus, minus) = (field.one(), field.from_i64(-1));
    for (r, face) in upper.iter().enumerate() {
        for (pos, g) in face.boundary_faces() {
            if let Some(&c) = index.get(&g) {
                m.set(r, c, if pos % 2 == 0 { &plus } else { &minus });
            }
        }
    }
    m
}

/// Reduced homology of `(Δ, Γ)`: the chain complex on faces of `Δ ∖ Γ`,
/// with `∅` in degree `-1` exactly when `Γ` is void.
///
/// Betti numbers only depend on the characteristic, so the computation runs
/// over the prime subfield of `field`.
pub fn betti(pair: &RelativeComplex, field: FieldSpec) -> BettiVector {
    let field = field.prime_subfield();
    let top = pair.delta().dim();
    let chains: Vec<Vec<Face>> = (-1..=top).map(|i| pair.faces(i)).collect();
    // ranks[k] is the rank of the boundary map out of chains[k]
    let mut ranks = vec![0usize; chains.len() + 1];
    for k in 1..chains.len() {
        ranks[k] = boundary_matrix(field, &chains[k], &chains[k - 1]).rank();
    }
    let entries = (0..chains.len())
        .map(|k| (chains[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    BettiVector { field, entries }
}

/// Reduced homology of a single complex.
pub fn betti_of(k: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    betti(&RelativeComplex::absolute(k.clone()), field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManifoldKind {
    NotManifold,
    ClosedManifold,
    ManifoldWithBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldVerdict {
    pub kind: ManifoldKind,
    /// Boundary faces together with `∅`; the void complex when the manifold
    /// is closed or the input is not a manifold.
    pub boundary: SimplicialComplex,
    /// `H̃_{top}(Δ, ∂Δ)` is one-dimensional.
    pub orientable: bool,
    /// `β̃_0 = 0`.
    pub connected: bool,
    /// Human-readable reason when `kind` is `NotManifold`.
    pub reason: Option<String>,
}

impl ManifoldVerdict {
    fn not_manifold(reason: String) -> ManifoldVerdict {
        ManifoldVerdict {
            kind: ManifoldKind::NotManifold,
            boundary: SimplicialComplex::void(),
            orientable: false,
            connected: false,
            reason: Some(reason),
        }
    }

    pub fn is_manifold(&self) -> bool {
        self.kind != ManifoldKind::NotManifold
    }
}

/// Classifies `K` as a homology manifold over `field`.
///
/// Every nonempty face `τ` of a pure `D`-dimensional complex must have a link
/// with the homology of a `(D-|τ|)`-sphere or ball. Ball-type faces form the
/// boundary, which must itself be a closed `(D-1)`-manifold.
pub fn classify_manifold(k: &SimplicialComplex, field: FieldSpec) -> ManifoldVerdict {
    if k.is_void() || k.facets()[0].is_empty() {
        return ManifoldVerdict::not_manifold("complex has no vertices".into());
    }
    if !k.is_pure() {
        return ManifoldVerdict::not_manifold("complex is not pure".into());
    }
    let top = k.dim();
    let mut boundary_faces = Vec::new();
    for face in k.all_faces().filter(|f| !f.is_empty()) {
        let b = betti_of(&k.link(face), field);
        let index = top - face.len() as isize;
        if b.is_zero() {
            boundary_faces.push(face.clone());
        } else if !b.is_sphere_of_dim(index) {
            return ManifoldVerdict::not_manifold(format!(
                "link of {face} has homology {:?}",
                b.entries
            ));
        }
    }
    let (kind, boundary) = if boundary_faces.is_empty() {
        (ManifoldKind::ClosedManifold, SimplicialComplex::void())
    } else {
        let boundary = SimplicialComplex::from_facets(boundary_faces);
        let inner = classify_manifold(&boundary, field);
        if inner.kind != ManifoldKind::ClosedManifold || boundary.dim() != top - 1 {
            return ManifoldVerdict::not_manifold(format!(
                "boundary {boundary} is not a closed manifold of dimension {}",
                top - 1
            ));
        }
        (ManifoldKind::ManifoldWithBoundary, boundary)
    };
    let connected = betti_of(k, field).get(0) == 0;
    let pair = RelativeComplex::new(k.clone(), boundary.clone()).expect("boundary is a subcomplex");
    let orientable = betti(&pair, field).get(top) == 1;
    ManifoldVerdict {
        kind,
        boundary,
        orientable,
        connected,
        reason: None,
    }
}

/// Boundary complex `∂K` of a homology manifold (void when closed), or `None`
/// when `K` is not a homology manifold over `field`.
pub fn boundary_complex(k: &SimplicialComplex, field: FieldSpec) -> Option<SimplicialComplex> {
    let v = classify_manifold(k, field);
    v.is_manifold().then_some(v.boundary)
}

/// A closed homology manifold with the homology of a sphere.
pub fn is_homology_sphere(k: &SimplicialComplex, field: FieldSpec) -> bool {
    classify_manifold(k, field).kind == ManifoldKind::ClosedManifold
        && betti_of(k, field).is_sphere_of_dim(k.dim())
}

/// A homology manifold with boundary, with vanishing homology, whose
/// boundary is a homology sphere.
pub fn is_homology_ball(k: &SimplicialComplex, field: FieldSpec) -> bool {
    let v = classify_manifold(k, field);
    v.kind == ManifoldKind::ManifoldWithBoundary
        && betti_of(k, field).is_zero()
        && is_homology_sphere(&v.boundary, field)
}

/// Schenzel's criterion: the pair is pure and, for every nonempty face `τ`
/// of `Δ ∖ Γ`, `H̃_i(lk_Δ τ, lk_Γ τ)` vanishes for `i ≠ dim(Δ,Γ) - |τ|`.
pub fn is_buchsbaum(pair: &RelativeComplex, field: FieldSpec) -> bool {
    buchsbaum_obstruction(pair, field).is_none()
}

/// The first face violating the Buchsbaum criterion, with a description.
pub fn buchsbaum_obstruction(pair: &RelativeComplex, field: FieldSpec) -> Option<String> {
    if !pair.is_pure() {
        return Some("pair is not pure".into());
    }
    let top = pair.dim();
    for face in pair.all_faces().filter(|f| !f.is_empty()) {
        let b = betti(&pair.link(face), field);
        let allowed = top - face.len() as isize;
        if (-1..b.entries.len() as isize - 1).any(|i| i != allowed && b.get(i) != 0) {
            return Some(format!(
                "link of {face} has homology {:?} off index {allowed}",
                b.entries
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Vertex;

    fn fp(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn complex(list: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(list.iter().map(|f| Face::from(*f)))
    }

    fn mobius() -> SimplicialComplex {
        complex(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 4, 5], &[1, 2, 5]])
    }

    fn rp2() -> SimplicialComplex {
        complex(&[
            &[1, 2, 3],
            &[2, 3, 4],
            &[3, 4, 5],
            &[1, 4, 5],
            &[1, 2, 5],
            &[1, 3, 6],
            &[3, 5, 6],
            &[2, 5, 6],
            &[2, 4, 6],
            &[1, 4, 6],
        ])
    }

    fn torus() -> SimplicialComplex {
        let mut facets = Vec::new();
        for i in 0..7u32 {
            let v = |k: u32| (i + k) % 7 + 1;
            facets.push(Face::new([v(0), v(1), v(3)]));
            facets.push(Face::new([v(0), v(2), v(3)]));
        }
        SimplicialComplex::from_facets(facets)
    }

    #[test]
    fn mobius_homology() {
        assert_eq!(betti_of(&mobius(), fp(2)).entries, vec![0, 0, 1, 0]);
        let boundary = complex(&[&[1, 3], &[3, 5], &[2, 5], &[2, 4], &[1, 4]]);
        let pair = RelativeComplex::new(mobius(), boundary).unwrap();
        assert_eq!(betti(&pair, fp(2)).entries, vec![0, 0, 1, 1]);
        assert_eq!(betti(&pair, fp(3)).entries, vec![0, 0, 0, 0]);
    }

    #[test]
    fn projective_plane_homology() {
        assert_eq!(betti_of(&rp2(), fp(2)).entries, vec![0, 0, 1, 1]);
        assert_eq!(betti_of(&rp2(), fp(5)).entries, vec![0, 0, 0, 0]);
        assert_eq!(
            betti_of(&rp2(), FieldSpec::rationals()).entries,
            vec![0, 0, 0, 0]
        );
    }

    #[test]
    fn empty_and_void() {
        assert_eq!(
            betti_of(&SimplicialComplex::empty(), fp(2)).entries,
            vec![1]
        );
        assert!(betti_of(&SimplicialComplex::void(), fp(2)).is_zero());
    }

    #[test]
    fn mobius_is_a_manifold_with_boundary() {
        let v = classify_manifold(&mobius(), fp(2));
        assert_eq!(v.kind, ManifoldKind::ManifoldWithBoundary);
        assert_eq!(
            v.boundary,
            complex(&[&[1, 3], &[3, 5], &[2, 5], &[2, 4], &[1, 4]])
        );
        assert!(v.orientable && v.connected);
        let v3 = classify_manifold(&mobius(), fp(3));
        assert_eq!(v3.kind, ManifoldKind::ManifoldWithBoundary);
        assert!(!v3.orientable);
    }

    #[test]
    fn torus_is_closed_and_orientable() {
        let t = torus();
        assert_eq!(t.f_vector().0, vec![1, 7, 21, 14]);
        let v = classify_manifold(&t, FieldSpec::rationals());
        assert_eq!(v.kind, ManifoldKind::ClosedManifold);
        assert!(v.orientable && v.connected);
        assert_eq!(
            betti_of(&t, FieldSpec::rationals()).entries,
            vec![0, 0, 2, 1]
        );
    }

    #[test]
    fn balls_and_spheres() {
        assert!(is_homology_ball(
            &SimplicialComplex::simplex([1, 2, 3]),
            fp(2)
        ));
        assert!(is_homology_sphere(
            &SimplicialComplex::simplex_boundary(1..=4),
            fp(3)
        ));
        let star = torus().star(&Face::from([1]));
        assert_eq!(star.f_vector().0, vec![1, 7, 12, 6]);
        assert!(is_homology_ball(&star, FieldSpec::rationals()));
        assert!(!is_homology_sphere(&mobius(), fp(2)));
        assert!(!is_homology_ball(&mobius(), fp(2)));
    }

    #[test]
    fn non_manifolds() {
        let bowtie = complex(&[&[1, 2, 3], &[1, 4, 5]]);
        assert_eq!(
            classify_manifold(&bowtie, fp(2)).kind,
            ManifoldKind::NotManifold
        );
        let mixed = complex(&[&[1, 2], &[3]]);
        assert_eq!(
            classify_manifold(&mixed, fp(2)).kind,
            ManifoldKind::NotManifold
        );
    }

    #[test]
    fn buchsbaum_examples() {
        let abs = |k: SimplicialComplex| RelativeComplex::absolute(k);
        assert!(is_buchsbaum(&abs(torus()), fp(2)));
        assert!(is_buchsbaum(&abs(mobius()), fp(3)));
        let boundary = complex(&[&[1, 3], &[3, 5], &[2, 5], &[2, 4], &[1, 4]]);
        assert!(is_buchsbaum(
            &RelativeComplex::new(mobius(), boundary).unwrap(),
            fp(2)
        ));
        // two hollow triangles sharing a vertex: links are points or pairs of points
        let wedge = complex(&[&[1, 2], &[2, 3], &[1, 3], &[1, 4], &[4, 5], &[1, 5]]);
        assert!(is_buchsbaum(&abs(wedge), fp(2)));
        // two tetrahedron boundaries glued at a vertex: the glue vertex has a disconnected link
        let mut glued: Vec<Face> = SimplicialComplex::simplex_boundary([1, 2, 3, 4])
            .facets()
            .to_vec();
        glued.extend(
            SimplicialComplex::simplex_boundary([1, 5, 6, 7])
                .facets()
                .iter()
                .cloned(),
        );
        assert!(!is_buchsbaum(
            &abs(SimplicialComplex::from_facets(glued)),
            fp(2)
        ));
        assert!(!is_buchsbaum(&abs(complex(&[&[1, 2], &[3]])), fp(2)));
    }

    #[test]
    fn euler_characteristic_matches_face_counts() {
        for k in [mobius(), rp2(), torus()] {
            for f in [fp(2), fp(3), FieldSpec::rationals()] {
                assert_eq!(
                    betti_of(&k, f).euler_characteristic(),
                    k.f_vector().reduced_euler_characteristic()
                );
            }
        }
    }
}
