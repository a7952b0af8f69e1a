//! Retriangulation moves: bistellar flips, stellar subdivisions and
//! barycentric subdivisions.
//!
//! New vertices receive the smallest positive label not already in use.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::comb::subsets;
use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{contract, Result};

/// A flip site `(A, B)` with `|A| + |B| = d + 1` and `Δ_{A∪B} = Ā ∗ ∂B̄`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlipSite {
    pub a: Face,
    pub b: Face,
}

impl FlipSite {
    /// `p = |B|`; the move is a `(p-1)`-flip.
    pub fn p(&self) -> usize {
        self.b.len()
    }

    /// The site of the reverse move in the flipped complex.
    pub fn inverse(&self) -> FlipSite {
        FlipSite {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

impl fmt::Display for FlipSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A = {}, B = {}", self.a, self.b)
    }
}

/// Smallest positive integer that is not a vertex label of `k`.
pub fn fresh_vertex(k: &SimplicialComplex) -> Vertex {
    (1..)
        .find(|v| !k.vertices().contains(v))
        .expect("finite vertex set")
}

fn krull(k: &SimplicialComplex) -> usize {
    (k.dim() + 1).max(0) as usize
}

/// The facets `A ∪ (B ∖ b)` of `Ā ∗ ∂B̄`.
fn removed_facets(site: &FlipSite) -> Vec<Face> {
    site.b
        .vertices()
        .iter()
        .map(|&v| site.a.union(&site.b.minus(&Face::new([v]))))
        .collect()
}

/// Whether `site` is a flip site of `k`.
pub fn is_flip_site(k: &SimplicialComplex, site: &FlipSite) -> bool {
    let d = krull(k);
    if site.a.is_empty()
        || site.b.is_empty()
        || !site.a.is_disjoint(&site.b)
        || site.a.len() + site.b.len() != d + 1
    {
        return false;
    }
    if site.p() == 1 {
        let v = site.b.vertices()[0];
        return !k.vertices().contains(&v) && k.facets().contains(&site.a);
    }
    let support = site.a.union(&site.b);
    let induced = k.induced(&support.vertices().iter().copied().collect());
    let mut expected = removed_facets(site);
    expected.sort();
    induced.facets() == expected.as_slice()
}

/// All flip sites with `|B| = p`, sorted; for `p = 1` every facet paired with the fresh vertex.
pub fn find_flips(k: &SimplicialComplex, p: usize) -> Result<Vec<FlipSite>> {
    let d = krull(k);
    if p == 0 || p > d {
        return contract(format!("flip size p = {p} outside 1..={d}"));
    }
    if p == 1 {
        let b = Face::new([fresh_vertex(k)]);
        return Ok(k
            .facets()
            .iter()
            .map(|a| FlipSite {
                a: a.clone(),
                b: b.clone(),
            })
            .collect());
    }
    let mut sites = Vec::new();
    for a in k.faces((d - p) as isize) {
        // each vertex of B lies in the link of A
        let link = k.link(a);
        let candidates: Vec<Vertex> = link.faces(0).iter().map(|f| f.vertices()[0]).collect();
        for b in subsets(&candidates, p) {
            let site = FlipSite {
                a: a.clone(),
                b: Face::new(b),
            };
            if is_flip_site(k, &site) {
                sites.push(site);
            }
        }
    }
    sites.sort();
    Ok(sites)
}

/// `(K ∖ Ā∗∂B̄) ∪ (∂Ā∗B̄)`.
pub fn bistellar_flip(k: &SimplicialComplex, site: &FlipSite) -> Result<SimplicialComplex> {
    if !is_flip_site(k, site) {
        return contract(format!("{site} is not a flip site"));
    }
    let removed = removed_facets(site);
    let added = site
        .a
        .vertices()
        .iter()
        .map(|&v| site.b.union(&site.a.minus(&Face::new([v]))));
    let facets: Vec<Face> = k
        .facets()
        .iter()
        .filter(|f| !removed.contains(f))
        .cloned()
        .chain(added)
        .collect();
    Ok(SimplicialComplex::from_facets(facets))
}

/// `(K ∖ st σ) ∪ (ā ∗ ∂σ̄ ∗ lk σ)` for a nonempty face `σ` and a fresh vertex `a`.
pub fn stellar_subdivision(k: &SimplicialComplex, sigma: &Face) -> Result<SimplicialComplex> {
    if sigma.is_empty() || !k.contains(sigma) {
        return contract(format!("{sigma} is not a nonempty face"));
    }
    let apex = Face::new([fresh_vertex(k)]);
    let mut facets = Vec::new();
    for f in k.facets() {
        if sigma.is_subset(f) {
            for &v in sigma.vertices() {
                facets.push(f.minus(&Face::new([v])).union(&apex));
            }
        } else {
            facets.push(f.clone());
        }
    }
    let vertices = k
        .vertices()
        .iter()
        .copied()
        .chain(apex.vertices().iter().copied());
    SimplicialComplex::new(vertices, facets)
}

/// Order complex of the nonempty faces, with vertex `i` standing for the
/// `i`-th nonempty face in (dimension, lexicographic) order. The map sends
/// each new vertex to its originating face.
pub fn barycentric_subdivision_with_origins(
    k: &SimplicialComplex,
) -> Result<(SimplicialComplex, BTreeMap<Vertex, Face>)> {
    if k.is_void() {
        return contract("barycentric subdivision of the void complex");
    }
    let origins: BTreeMap<Vertex, Face> = k
        .all_faces()
        .filter(|f| !f.is_empty())
        .cloned()
        .zip(1..)
        .map(|(f, v)| (v, f))
        .collect();
    let label: BTreeMap<&Face, Vertex> = origins.iter().map(|(v, f)| (f, *v)).collect();
    let mut facets = Vec::new();
    for f in k.facets().iter().filter(|f| !f.is_empty()) {
        for order in permutations(f.vertices()) {
            let chain = (1..=order.len()).map(|n| label[&Face::new(order[..n].iter().copied())]);
            facets.push(Face::new(chain));
        }
    }
    if facets.is_empty() {
        facets.push(Face::empty());
    }
    Ok((
        SimplicialComplex::new(origins.keys().copied(), facets)?,
        origins,
    ))
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    Ok(barycentric_subdivision_with_origins(k)?.0)
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{betti_of, classify_manifold};
    use crate::linalg::FieldSpec;
    use std::collections::BTreeSet;

    fn complex(list: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(list.iter().map(|f| Face::from(*f)))
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

    /// Flip sites by testing every split of every vertex subset of size `d + 1`.
    fn brute_force_sites(k: &SimplicialComplex, p: usize) -> Vec<FlipSite> {
        let d = (k.dim() + 1) as usize;
        let vs: Vec<Vertex> = k.vertices().iter().copied().collect();
        let mut out = Vec::new();
        for set in subsets(&vs, d + 1) {
            for b in subsets(&set, p) {
                let b = Face::new(b);
                let a = Face::new(set.iter().copied()).minus(&b);
                // faces of K inside A ∪ B must be exactly the faces of Ā ∗ ∂B̄
                let all = Face::new(set.iter().copied());
                let ok = all.subfaces().all(|f| {
                    let in_join = a.is_subset(&f.union(&a)) && !b.is_subset(&f);
                    k.contains(&f) == in_join
                });
                if ok {
                    out.push(FlipSite { a, b });
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn zero_flip_sites_are_facets() {
        assert_eq!(
            find_flips(&SimplicialComplex::simplex_boundary(1..=4), 1)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            find_flips(&SimplicialComplex::simplex_boundary(1..=5), 1)
                .unwrap()
                .len(),
            5
        );
        assert!(find_flips(&SimplicialComplex::cycle(5), 3).is_err());
    }

    #[test]
    fn cycle_sites_match_brute_force() {
        let c5 = SimplicialComplex::cycle(5);
        let sites = find_flips(&c5, 2).unwrap();
        assert_eq!(sites.len(), 5);
        assert_eq!(sites, brute_force_sites(&c5, 2));
        let flipped = bistellar_flip(&c5, &sites[0]).unwrap();
        assert!(flipped.is_isomorphic(&SimplicialComplex::cycle(4)));
    }

    #[test]
    fn sites_on_surfaces_match_brute_force() {
        for k in [torus(), rp2(), SimplicialComplex::simplex_boundary(1..=5)] {
            let d = (k.dim() + 1) as usize;
            for p in 2..=d {
                assert_eq!(find_flips(&k, p).unwrap(), brute_force_sites(&k, p));
            }
        }
    }

    #[test]
    fn zero_flip_of_four_sphere_boundary() {
        let s = SimplicialComplex::simplex_boundary(1..=5);
        let site = &find_flips(&s, 1).unwrap()[0];
        let t = bistellar_flip(&s, site).unwrap();
        assert_eq!(t.vertices().len(), 6);
        assert_eq!(t.h_vector(4).unwrap().entries, vec![1, 2, 2, 2, 1]);
        let back = bistellar_flip(&t, &site.inverse()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn flips_preserve_homology_and_manifoldness() {
        let t = stellar_subdivision(&torus(), &Face::from([1, 2, 4])).unwrap();
        assert_eq!(find_flips(&t, 3).unwrap().len(), 1);
        for p in 1..=3 {
            for site in find_flips(&t, p).unwrap().iter().take(3) {
                let u = bistellar_flip(&t, site).unwrap();
                for f in [FieldSpec::prime(2).unwrap(), FieldSpec::rationals()] {
                    assert_eq!(betti_of(&u, f), betti_of(&t, f));
                    let (a, b) = (classify_manifold(&u, f), classify_manifold(&t, f));
                    assert_eq!((a.kind, a.orientable), (b.kind, b.orientable));
                }
                let back = bistellar_flip(&u, &site.inverse()).unwrap();
                assert!(back.is_isomorphic(&t));
            }
        }
    }

    #[test]
    fn inadmissible_flip_is_rejected() {
        let s = SimplicialComplex::simplex_boundary(1..=4);
        let bad = FlipSite {
            a: Face::from([1, 2]),
            b: Face::from([3, 4]),
        };
        assert!(bistellar_flip(&s, &bad).is_err());
    }

    #[test]
    fn stellar_examples() {
        let s = SimplicialComplex::simplex_boundary(1..=4);
        let t = stellar_subdivision(&s, &Face::from([1, 2, 3])).unwrap();
        assert_eq!((t.vertices().len(), t.facets().len()), (5, 6));
        let v = stellar_subdivision(&torus(), &Face::from([3])).unwrap();
        assert!(v.is_isomorphic(&torus()));
        let e = stellar_subdivision(&torus(), &Face::from([1, 2])).unwrap();
        let (old, new) = (torus().f_vector(), e.f_vector());
        assert_eq!(
            new.0,
            vec![old.0[0], old.0[1] + 1, old.0[2] + 3, old.0[3] + 2]
        );
        assert!(stellar_subdivision(&torus(), &Face::from([1, 2, 5])).is_err());
    }

    #[test]
    fn barycentric_examples() {
        let c = barycentric_subdivision(&SimplicialComplex::cycle(3)).unwrap();
        assert!(c.is_isomorphic(&SimplicialComplex::cycle(6)));
        let (b, origins) = barycentric_subdivision_with_origins(&rp2()).unwrap();
        assert_eq!(b.f_vector().0, vec![1, 31, 90, 60]);
        assert_eq!(origins[&1], Face::from([1]));
        assert_eq!(origins[&31], Face::from([3, 5, 6]));
        for f in [FieldSpec::prime(2).unwrap(), FieldSpec::rationals()] {
            assert_eq!(betti_of(&b, f), betti_of(&rp2(), f));
        }
        assert!(barycentric_subdivision(&SimplicialComplex::void()).is_err());
    }

    #[test]
    fn operations_preserve_euler_characteristic() {
        let k = torus();
        let chi = k.f_vector().reduced_euler_characteristic();
        let mut results = vec![barycentric_subdivision(&k).unwrap()];
        results.push(stellar_subdivision(&k, &Face::from([1, 2, 4])).unwrap());
        // the 7-vertex torus is neighborly, so subdivide a facet to create flip sites
        let s = stellar_subdivision(&k, &Face::from([1, 2, 4])).unwrap();
        for p in 2..=3 {
            let sites = find_flips(&s, p).unwrap();
            assert!(!sites.is_empty());
            results.push(bistellar_flip(&s, &sites[0]).unwrap());
        }
        for r in results {
            assert_eq!(r.f_vector().reduced_euler_characteristic(), chi);
        }
        let w: BTreeSet<Vertex> = [1, 2].into();
        assert_eq!(k.induced(&w).facets().len(), 1);
    }
}
