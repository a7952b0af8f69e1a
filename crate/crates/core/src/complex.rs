//! Simplicial and relative simplicial complexes.
//!
//! A complex is generated by its facets. The *void* complex has no faces at
//! all (no facets); the *empty* complex `{∅}` has the single facet `∅`. The
//! two behave differently in links, reduced homology and the degree-0 part of
//! a Stanley–Reisner module, so both are representable.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::comb::binomial;
use crate::error::{contract, Result};

pub type Vertex = u32;

/// A face: a strictly increasing list of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Face(Vec<Vertex>);

impl Face {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Face {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn empty() -> Face {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains(*v))
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        )
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    /// All subsets, including `∅` and the face itself.
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        (0u64..1 << n).map(move |mask| {
            Face(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    /// Codimension-one faces `self ∖ {v_i}`, paired with the deleted position `i`.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (i, Face(v))
        })
    }
}

impl From<Vec<Vertex>> for Face {
    fn from(v: Vec<Vertex>) -> Face {
        Face::new(v)
    }
}

impl From<Face> for Vec<Vertex> {
    fn from(f: Face) -> Vec<Vertex> {
        f.0
    }
}

impl From<&[Vertex]> for Face {
    fn from(v: &[Vertex]) -> Face {
        Face::new(v.iter().copied())
    }
}

impl<const N: usize> From<[Vertex; N]> for Face {
    fn from(v: [Vertex; N]) -> Face {
        Face::new(v)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Face counts `f_{-1}, f_0, ..., f_{top}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Entries `f_0, f_1, ...`, without the `f_{-1}` slot.
    pub fn proper(&self) -> &[u64] {
        self.0.get(1..).unwrap_or(&[])
    }

    /// Inverse h-transform, `f_{i-1} = Σ_j C(d-j, i-j) h_j` for `i = 0..=d`.
    pub fn from_h(h: &HVector) -> FVector {
        let d = h.d as i64;
        FVector(
            (0..=d)
                .map(|i| {
                    (0..=i)
                        .map(|j| binomial(d - j, i - j) * h.entries[j as usize])
                        .sum::<i64>() as u64
                })
                .collect(),
        )
    }

    /// Drops trailing zero entries (keeping at least `f_{-1}`).
    pub fn trimmed(mut self) -> FVector {
        while self.0.len() > 1 && self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    /// `Σ_{i ≥ -1} (-1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// `h_0, ..., h_d` for an explicit ambient `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector {
    pub d: usize,
    pub entries: Vec<i64>,
}

impl HVector {
    /// `h_j = Σ_{i=0}^{j} (-1)^{j-i} C(d-i, d-j) f_{i-1}` for `j = 0..=d`.
    pub fn from_f(f: &FVector, d: usize) -> Result<HVector> {
        let top = f.clone().trimmed().0.len() as isize - 2;
        if (d as isize) < top + 1 {
            return contract(format!(
                "h-vector with d = {d} for a complex of dimension {top}"
            ));
        }
        let di = d as i64;
        let entries = (0..=di)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(di - i, di - j) * f.get(i as isize - 1) as i64
                    })
                    .sum()
            })
            .collect();
        Ok(HVector { d, entries })
    }

    pub fn get(&self, j: usize) -> i64 {
        self.entries.get(j).copied().unwrap_or(0)
    }
}

/// A finite simplicial complex on an ordered vertex set.
///
/// Immutable after construction; the full face list is materialized once,
/// grouped by cardinality and sorted lexicographically.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: BTreeSet<Vertex>,
    facets: Vec<Face>,
    by_size: Vec<Vec<Face>>,
    members: HashSet<Face>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Complex on an explicit vertex set (which may contain labels used by no
    /// face) generated by `facets`. Dominated generators are discarded.
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        facets: impl IntoIterator<Item = Face>,
    ) -> Result<SimplicialComplex> {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        let facets: Vec<Face> = facets.into_iter().collect();
        if let Some(bad) = facets
            .iter()
            .flat_map(|f| f.vertices())
            .find(|v| !vertices.contains(v))
        {
            return contract(format!("facet vertex {bad} is not in the vertex set"));
        }
        Ok(Self::build(vertices, facets))
    }

    /// Complex whose vertex set is the union of the generators.
    pub fn from_facets(facets: impl IntoIterator<Item = Face>) -> SimplicialComplex {
        let facets: Vec<Face> = facets.into_iter().collect();
        let vertices = facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        Self::build(vertices, facets)
    }

    /// Complex with an explicitly listed face set, which must be closed under
    /// taking subsets.
    pub fn from_faces(
        vertices: impl IntoIterator<Item = Vertex>,
        faces: impl IntoIterator<Item = Face>,
    ) -> Result<SimplicialComplex> {
        let faces: HashSet<Face> = faces.into_iter().collect();
        for f in &faces {
            if let Some((_, g)) = f.boundary_faces().find(|(_, g)| !faces.contains(g)) {
                return contract(format!(
                    "face set is not closed: {f} present but {g} missing"
                ));
            }
        }
        let facets: Vec<Face> = faces
            .iter()
            .filter(|f| {
                !faces
                    .iter()
                    .any(|g| g.len() == f.len() + 1 && f.is_subset(g))
            })
            .cloned()
            .collect();
        Self::new(vertices, facets)
    }

    fn build(vertices: BTreeSet<Vertex>, facets: Vec<Face>) -> SimplicialComplex {
        let mut facets: Vec<Face> = facets
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        facets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Face> = Vec::new();
        for f in facets {
            if !kept.iter().any(|g| f.is_subset(g)) {
                kept.push(f);
            }
        }
        kept.sort();
        let mut members = HashSet::new();
        for f in &kept {
            for s in f.subfaces() {
                members.insert(s);
            }
        }
        let top = kept.iter().map(Face::len).max();
        let mut by_size = vec![Vec::new(); top.map_or(0, |t| t + 1)];
        for f in &members {
            by_size[f.len()].push(f.clone());
        }
        for group in &mut by_size {
            group.sort();
        }
        SimplicialComplex {
            vertices,
            facets: kept,
            by_size,
            members,
        }
    }

    /// The complex with no faces at all.
    pub fn void() -> SimplicialComplex {
        Self::build(BTreeSet::new(), Vec::new())
    }

    /// The complex `{∅}`.
    pub fn empty() -> SimplicialComplex {
        Self::build(BTreeSet::new(), vec![Face::empty()])
    }

    /// The full simplex on `vertices`.
    pub fn simplex(vertices: impl IntoIterator<Item = Vertex>) -> SimplicialComplex {
        Self::from_facets([Face::new(vertices)])
    }

    /// The boundary of the full simplex on `vertices`, on the same vertex set.
    pub fn simplex_boundary(vertices: impl IntoIterator<Item = Vertex>) -> SimplicialComplex {
        let top = Face::new(vertices);
        let vs: Vec<Vertex> = top.vertices().to_vec();
        Self::build(
            vs.into_iter().collect(),
            top.boundary_faces().map(|(_, f)| f).collect(),
        )
    }

    /// The cycle `1-2-...-n-1`, `n >= 3`.
    pub fn cycle(n: u32) -> SimplicialComplex {
        Self::from_facets((1..=n).map(|i| Face::new([i, i % n + 1])))
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.members.contains(face)
    }

    /// Maximal face dimension; `-1` for both `{∅}` and the void complex.
    pub fn dim(&self) -> isize {
        self.by_size.len() as isize - 2
    }

    /// All faces of dimension `i`, sorted.
    pub fn faces(&self, i: isize) -> &[Face] {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.by_size.get(k))
            .map_or(&[], Vec::as_slice)
    }

    /// Every face, by dimension and then lexicographically.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.by_size.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.members.len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.by_size.iter().map(|g| g.len() as u64).collect())
    }

    pub fn h_vector(&self, d: usize) -> Result<HVector> {
        HVector::from_f(&self.f_vector(), d)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.facets[0].len())
    }

    /// `{σ : σ ∪ τ ∈ K, σ ∩ τ = ∅}`; void when `τ ∉ K`.
    pub fn link(&self, tau: &Face) -> SimplicialComplex {
        if !self.contains(tau) {
            return Self::void();
        }
        Self::from_facets(
            self.facets
                .iter()
                .filter(|f| tau.is_subset(f))
                .map(|f| f.minus(tau)),
        )
    }

    /// Closure of the facets containing `τ`; void when `τ ∉ K`.
    pub fn star(&self, tau: &Face) -> SimplicialComplex {
        if !self.contains(tau) {
            return Self::void();
        }
        Self::from_facets(self.facets.iter().filter(|f| tau.is_subset(f)).cloned())
    }

    /// Join with a complex on a disjoint vertex set.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(v) = self.vertices.intersection(&other.vertices).next() {
            return contract(format!("join of complexes sharing vertex {v}"));
        }
        let vertices = self.vertices.union(&other.vertices).copied();
        let facets: Vec<Face> = self
            .facets
            .iter()
            .flat_map(|a| other.facets.iter().map(move |b| a.union(b)))
            .collect();
        Self::new(vertices, facets)
    }

    /// Subcomplex of faces contained in `w`, on vertex set `w ∩ V`.
    pub fn induced(&self, w: &BTreeSet<Vertex>) -> SimplicialComplex {
        let vertices: BTreeSet<Vertex> = self.vertices.intersection(w).copied().collect();
        let wf = Face::new(w.iter().copied());
        let facets = self.facets.iter().map(|f| f.intersection(&wf)).collect();
        Self::build(vertices, facets)
    }

    /// Subcomplex of all faces not in `removed`; `removed` must be closed
    /// upward within `K` for the result to be a complex.
    pub fn without_faces(&self, removed: &HashSet<Face>) -> Result<SimplicialComplex> {
        Self::from_faces(
            self.vertices.iter().copied(),
            self.all_faces().filter(|f| !removed.contains(f)).cloned(),
        )
    }

    /// Same complex with every vertex renamed through `map`, which must be
    /// injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<SimplicialComplex> {
        let get = |v: &Vertex| map.get(v).copied();
        let vertices: Option<BTreeSet<Vertex>> = self.vertices.iter().map(get).collect();
        let Some(vertices) = vertices.filter(|vs| vs.len() == self.vertices.len()) else {
            return contract("relabeling is not injective on the vertex set");
        };
        let facets = self
            .facets
            .iter()
            .map(|f| Face::new(f.vertices().iter().map(|v| map[v])));
        Self::new(vertices, facets)
    }

    /// Whether the complexes agree up to a bijection of vertices that occur in faces.
    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        if self.f_vector() != other.f_vector() || self.facets.len() != other.facets.len() {
            return false;
        }
        let a: Vec<Vertex> = self.faces(0).iter().map(|f| f.vertices()[0]).collect();
        let b: Vec<Vertex> = other.faces(0).iter().map(|f| f.vertices()[0]).collect();
        let degree = |k: &SimplicialComplex, v: Vertex| -> Vec<usize> {
            let mut counts = vec![0; k.by_size.len()];
            for f in k.all_faces().filter(|f| f.contains(v)) {
                counts[f.len()] += 1;
            }
            counts
        };
        let da: Vec<Vec<usize>> = a.iter().map(|&v| degree(self, v)).collect();
        let db: Vec<Vec<usize>> = b.iter().map(|&v| degree(other, v)).collect();
        let mut map = BTreeMap::new();
        let mut used = vec![false; b.len()];
        self.extend_isomorphism(other, &a, &b, &da, &db, &mut map, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        other: &SimplicialComplex,
        a: &[Vertex],
        b: &[Vertex],
        da: &[Vec<usize>],
        db: &[Vec<usize>],
        map: &mut BTreeMap<Vertex, Vertex>,
        used: &mut [bool],
    ) -> bool {
        let k = map.len();
        if k == a.len() {
            return true;
        }
        let v = a[k];
        for j in 0..b.len() {
            if used[j] || da[k] != db[j] {
                continue;
            }
            map.insert(v, b[j]);
            // every facet through v whose vertices are all mapped must land on a face
            let consistent = self.facets.iter().filter(|f| f.contains(v)).all(|f| {
                let image: Option<Vec<Vertex>> =
                    f.vertices().iter().map(|u| map.get(u).copied()).collect();
                image.is_none_or(|img| other.facets.binary_search(&Face::new(img)).is_ok())
            });
            if consistent {
                used[j] = true;
                if self.extend_isomorphism(other, a, b, da, db, map, used) {
                    return true;
                }
                used[j] = false;
            }
            map.remove(&v);
        }
        false
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "void");
        }
        let parts: Vec<String> = self.facets.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

/// A pair `Γ ⊆ Δ`, whose faces are those of `Δ ∖ Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeComplex {
    delta: SimplicialComplex,
    gamma: SimplicialComplex,
}

impl RelativeComplex {
    pub fn new(delta: SimplicialComplex, gamma: SimplicialComplex) -> Result<RelativeComplex> {
        if let Some(f) = gamma.facets().iter().find(|f| !delta.contains(f)) {
            return contract(format!(
                "subcomplex facet {f} is not a face of the ambient complex"
            ));
        }
        Ok(RelativeComplex { delta, gamma })
    }

    /// `(K, void)`, whose faces are all faces of `K` including `∅`.
    pub fn absolute(delta: SimplicialComplex) -> RelativeComplex {
        RelativeComplex {
            delta,
            gamma: SimplicialComplex::void(),
        }
    }

    pub fn delta(&self) -> &SimplicialComplex {
        &self.delta
    }

    pub fn gamma(&self) -> &SimplicialComplex {
        &self.gamma
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.delta.contains(face) && !self.gamma.contains(face)
    }

    /// Faces of dimension `i` in `Δ ∖ Γ`, sorted.
    pub fn faces(&self, i: isize) -> Vec<Face> {
        self.delta
            .faces(i)
            .iter()
            .filter(|f| !self.gamma.contains(f))
            .cloned()
            .collect()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.delta.all_faces().filter(|f| !self.gamma.contains(f))
    }

    /// Faces of `Δ ∖ Γ` not strictly contained in another face of `Δ ∖ Γ`.
    pub fn maximal_faces(&self) -> Vec<Face> {
        // Δ ∖ Γ is closed upward in Δ, so its maximal faces are facets of Δ.
        self.delta
            .facets()
            .iter()
            .filter(|f| !self.gamma.contains(f))
            .cloned()
            .collect()
    }

    /// Largest dimension of a face in `Δ ∖ Γ`; `-2` if there is none.
    pub fn dim(&self) -> isize {
        self.maximal_faces()
            .iter()
            .map(Face::dim)
            .max()
            .unwrap_or(-2)
    }

    pub fn is_pure(&self) -> bool {
        let m = self.maximal_faces();
        m.iter().all(|f| f.len() == m[0].len())
    }

    pub fn f_vector(&self) -> FVector {
        let top = self.delta.dim();
        FVector((-1..=top).map(|i| self.faces(i).len() as u64).collect())
    }

    pub fn h_vector(&self, d: usize) -> Result<HVector> {
        HVector::from_f(&self.f_vector(), d)
    }

    /// The Krull dimension `dim(Δ) + 1` used as the default ambient `d`.
    pub fn krull_dim(&self) -> usize {
        (self.delta.dim() + 1).max(0) as usize
    }

    /// `(lk_Δ τ, lk_Γ τ)`.
    pub fn link(&self, tau: &Face) -> RelativeComplex {
        RelativeComplex {
            delta: self.delta.link(tau),
            gamma: self.gamma.link(tau),
        }
    }
}

impl fmt::Display for RelativeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.delta, self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn faces(list: &[&[Vertex]]) -> Vec<Face> {
        list.iter().map(|f| Face::from(*f)).collect()
    }

    fn mobius() -> SimplicialComplex {
        SimplicialComplex::from_facets(faces(&[
            &[1, 2, 3],
            &[2, 3, 4],
            &[3, 4, 5],
            &[1, 4, 5],
            &[1, 2, 5],
        ]))
    }

    fn mobius_boundary() -> SimplicialComplex {
        SimplicialComplex::from_facets(faces(&[&[1, 3], &[3, 5], &[2, 5], &[2, 4], &[1, 4]]))
    }

    fn rp2() -> SimplicialComplex {
        SimplicialComplex::from_facets(faces(&[
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
        ]))
    }

    #[test]
    fn mobius_faces_and_vectors() {
        let m = mobius();
        assert_eq!(
            m.faces(2),
            faces(&[&[1, 2, 3], &[1, 2, 5], &[1, 4, 5], &[2, 3, 4], &[3, 4, 5]]).as_slice()
        );
        assert_eq!(m.f_vector(), FVector(vec![1, 5, 10, 5]));
        assert_eq!(m.h_vector(3).unwrap().entries, vec![1, 2, 3, -1]);
        assert!(m.h_vector(2).is_err());
    }

    #[test]
    fn mobius_relative_to_boundary() {
        let pair = RelativeComplex::new(mobius(), mobius_boundary()).unwrap();
        assert!(pair.faces(0).is_empty());
        assert_eq!(pair.f_vector(), FVector(vec![0, 0, 5, 5]));
        assert_eq!(pair.h_vector(3).unwrap().entries, vec![0, 0, 5, 0]);
        assert_eq!(pair.dim(), 2);
    }

    #[test]
    fn empty_and_void_complexes() {
        let e = SimplicialComplex::empty();
        assert_eq!(e.faces(-1), &[Face::empty()]);
        assert_eq!(e.f_vector(), FVector(vec![1]));
        let v = SimplicialComplex::void();
        assert!(v.faces(-1).is_empty());
        assert_eq!(v.f_vector(), FVector(vec![]));
        assert_ne!(e, v);
    }

    #[test]
    fn rp2_and_sphere_vectors() {
        assert_eq!(rp2().f_vector(), FVector(vec![1, 6, 15, 10]));
        let s = SimplicialComplex::simplex_boundary(1..=5);
        assert_eq!(s.f_vector(), FVector(vec![1, 5, 10, 10, 5]));
        assert_eq!(s.h_vector(4).unwrap().entries, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn links() {
        let m = mobius();
        let lk = m.link(&Face::from([1]));
        assert_eq!(lk.facets(), faces(&[&[2, 3], &[2, 5], &[4, 5]]).as_slice());
        assert_eq!(m.link(&Face::empty()), m);
        assert!(m.link(&Face::from([1, 3, 4])).is_void());
    }

    #[test]
    fn star_join_induced() {
        let j = SimplicialComplex::simplex([1, 2])
            .join(&SimplicialComplex::simplex([3]))
            .unwrap();
        assert_eq!(j, SimplicialComplex::simplex([1, 2, 3]));
        assert!(SimplicialComplex::simplex([1, 2])
            .join(&SimplicialComplex::simplex([2]))
            .is_err());
        let w: BTreeSet<Vertex> = [1, 2, 3].into();
        assert_eq!(mobius().induced(&w), SimplicialComplex::simplex([1, 2, 3]));
        let tau = Face::from([1]);
        let cone = SimplicialComplex::simplex([1])
            .join(&mobius().link(&tau))
            .unwrap();
        assert_eq!(mobius().star(&tau), cone);
    }

    #[test]
    fn purity() {
        assert!(mobius().is_pure());
        assert!(!SimplicialComplex::from_facets(faces(&[&[1, 2], &[3]])).is_pure());
    }

    #[test]
    fn dominated_generators_are_dropped() {
        let k = SimplicialComplex::from_facets(faces(&[&[1, 2], &[1], &[], &[1, 2]]));
        assert_eq!(k.facets(), faces(&[&[1, 2]]).as_slice());
    }

    #[test]
    fn from_faces_requires_closure() {
        assert!(SimplicialComplex::from_faces([1, 2], faces(&[&[], &[1, 2]])).is_err());
        let k = SimplicialComplex::from_faces([1, 2], faces(&[&[], &[1], &[2]])).unwrap();
        assert_eq!(k.facets().len(), 2);
    }

    #[test]
    fn relative_pair_requires_containment() {
        let err = RelativeComplex::new(
            SimplicialComplex::simplex([1, 2]),
            SimplicialComplex::simplex([3]),
        );
        assert!(err.is_err());
    }

    #[test]
    fn isomorphism_detection() {
        let c5 = SimplicialComplex::cycle(5);
        let map: BTreeMap<Vertex, Vertex> = [(1, 10), (2, 30), (3, 20), (4, 50), (5, 40)].into();
        assert!(c5.is_isomorphic(&c5.relabel(&map).unwrap()));
        assert!(mobius_boundary().is_isomorphic(&c5));
        let two_triangles = SimplicialComplex::from_facets(faces(&[
            &[1, 2],
            &[2, 3],
            &[1, 3],
            &[4, 5],
            &[5, 6],
            &[4, 6],
        ]));
        assert!(!two_triangles.is_isomorphic(&SimplicialComplex::cycle(6)));
    }

    /// Random complexes on at most 6 vertices, given by generator bitmasks.
    pub(crate) fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
        prop::collection::vec(1u32..64, 1..6).prop_map(|masks| {
            SimplicialComplex::from_facets(
                masks
                    .into_iter()
                    .map(|m| Face::new((0..6).filter(|i| m >> i & 1 == 1).map(|i| i + 1))),
            )
        })
    }

    proptest! {
        #[test]
        fn f_h_round_trip(k in arb_complex(), extra in 0usize..3) {
            let d = (k.dim() + 1) as usize + extra;
            let h = k.h_vector(d).unwrap();
            let mut f = k.f_vector().0;
            f.resize(d + 1, 0);
            prop_assert_eq!(FVector::from_h(&h).0, f);
        }

        #[test]
        fn top_h_is_signed_euler_characteristic(k in arb_complex()) {
            let d = (k.dim() + 1) as usize;
            let h = k.h_vector(d).unwrap();
            let sign = if d % 2 == 1 { 1 } else { -1 };
            prop_assert_eq!(h.get(d), sign * k.f_vector().reduced_euler_characteristic());
        }

        #[test]
        fn star_is_cone_over_link(k in arb_complex(), pick in 0usize..64) {
            let all: Vec<Face> = k.all_faces().cloned().collect();
            let tau = &all[pick % all.len()];
            let closed_tau = SimplicialComplex::new(tau.vertices().iter().copied(), [tau.clone()]).unwrap();
            let cone = closed_tau.join(&k.link(tau)).unwrap();
            let star = k.star(tau);
            prop_assert_eq!(star.facets(), cone.facets());
        }

        #[test]
        fn relative_counts_split(k in arb_complex(), pick in 0usize..64) {
            let sub = SimplicialComplex::from_facets([k.facets()[pick % k.facets().len()].clone()]);
            let pair = RelativeComplex::new(k.clone(), sub.clone()).unwrap();
            let (a, b, c) = (k.f_vector(), pair.f_vector(), sub.f_vector());
            for i in -1..=k.dim() {
                prop_assert_eq!(a.get(i), b.get(i) + c.get(i));
            }
        }
    }
}
