//! Named example complexes with their construction and expected topology.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::homology::{classify_manifold, is_homology_ball, is_homology_sphere, ManifoldKind};
use crate::linalg::FieldSpec;
use crate::surgery::{barycentric_subdivision, bistellar_flip, find_flips, stellar_subdivision};

/// Topological type a corpus entry is expected to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// Homology sphere over every field.
    Sphere,
    /// Homology ball over every field.
    Ball,
    /// Connected closed homology manifold; orientability as seen over ℚ.
    ClosedManifold { orientable: bool },
    /// Connected homology manifold with nonempty boundary; orientability over ℚ.
    ManifoldWithBoundary { orientable: bool },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Sphere => f.write_str("sphere"),
            Classification::Ball => f.write_str("ball"),
            Classification::ClosedManifold { orientable } => {
                write!(
                    f,
                    "closed {}manifold",
                    if *orientable {
                        "orientable "
                    } else {
                        "non-orientable "
                    }
                )
            }
            Classification::ManifoldWithBoundary { orientable } => {
                write!(
                    f,
                    "{}manifold with boundary",
                    if *orientable {
                        "orientable "
                    } else {
                        "non-orientable "
                    }
                )
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
    /// How the complex is constructed.
    pub provenance: String,
    pub classification: Classification,
}

impl CorpusEntry {
    fn new(
        name: impl Into<String>,
        complex: SimplicialComplex,
        provenance: impl Into<String>,
        c: Classification,
    ) -> Self {
        CorpusEntry {
            name: name.into(),
            complex,
            provenance: provenance.into(),
            classification: c,
        }
    }

    /// Whether the complex has its declared classification.
    pub fn check_classification(&self) -> bool {
        let k = &self.complex;
        let fields = [
            FieldSpec::prime(2).expect("prime"),
            FieldSpec::prime(3).expect("prime"),
            FieldSpec::rationals(),
        ];
        match self.classification {
            Classification::Sphere => fields.iter().all(|&f| is_homology_sphere(k, f)),
            Classification::Ball => fields.iter().all(|&f| is_homology_ball(k, f)),
            Classification::ClosedManifold { orientable } => {
                let v = classify_manifold(k, FieldSpec::rationals());
                v.kind == ManifoldKind::ClosedManifold && v.connected && v.orientable == orientable
            }
            Classification::ManifoldWithBoundary { orientable } => {
                let v = classify_manifold(k, FieldSpec::rationals());
                v.kind == ManifoldKind::ManifoldWithBoundary
                    && v.connected
                    && v.orientable == orientable
            }
        }
    }
}

fn complex(facets: &[&[Vertex]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| Face::from(*f)))
}

/// Five-vertex Möbius band.
pub fn mobius5() -> SimplicialComplex {
    complex(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 4, 5], &[1, 2, 5]])
}

/// Six-vertex real projective plane: the Möbius band with a cone over its boundary.
pub fn rp2_6() -> SimplicialComplex {
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

/// Seven-vertex torus with facets `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        let v = |k: u32| (i + k) % 7 + 1;
        facets.push(Face::new([v(0), v(1), v(3)]));
        facets.push(Face::new([v(0), v(2), v(3)]));
    }
    SimplicialComplex::from_facets(facets)
}

/// Star of vertex 1 in the seven-vertex torus, a disk.
pub fn torus7_star() -> SimplicialComplex {
    torus7().star(&Face::from([1]))
}

/// The `k`-simplex on vertices `1..=k+1`.
pub fn simplex(k: u32) -> SimplicialComplex {
    SimplicialComplex::simplex(1..=k + 1)
}

/// Boundary of the `k`-simplex on vertices `1..=k+1`.
pub fn boundary_simplex(k: u32) -> SimplicialComplex {
    SimplicialComplex::simplex_boundary(1..=k + 1)
}

fn generated() -> Vec<CorpusEntry> {
    use Classification::*;
    let s4 = boundary_simplex(4);
    let s5 = boundary_simplex(5);
    let first_facet = s4.facets()[0].clone();
    let zero_flip = &find_flips(&s4, 1).expect("flip sizes are in range")[0];
    let t_edge = stellar_subdivision(&torus7(), &Face::from([1, 2])).expect("edge of the torus");
    let s5_face = s5.faces(3)[0].clone();
    vec![
        CorpusEntry::new(
            "boundary-simplex-4-flip0",
            bistellar_flip(&s4, zero_flip).expect("facets are flip sites"),
            format!("0-flip of boundary-simplex-4 at facet {first_facet}"),
            Sphere,
        ),
        CorpusEntry::new(
            "boundary-simplex-4-stellar-facet",
            stellar_subdivision(&s4, &first_facet).expect("facet"),
            format!("stellar subdivision of boundary-simplex-4 at facet {first_facet}"),
            Sphere,
        ),
        CorpusEntry::new(
            "boundary-simplex-5-stellar-3face",
            stellar_subdivision(&s5, &s5_face).expect("face"),
            format!("stellar subdivision of boundary-simplex-5 at 3-face {s5_face}"),
            Sphere,
        ),
        CorpusEntry::new(
            "torus7-stellar-edge",
            t_edge,
            "stellar subdivision of torus7 at edge {1,2}",
            ClosedManifold { orientable: true },
        ),
        CorpusEntry::new(
            "bary-mobius5",
            barycentric_subdivision(&mobius5()).expect("nonvoid"),
            "barycentric subdivision of mobius5",
            ManifoldWithBoundary { orientable: false },
        ),
        CorpusEntry::new(
            "bary-rp2-6",
            barycentric_subdivision(&rp2_6()).expect("nonvoid"),
            "barycentric subdivision of rp2-6",
            ClosedManifold { orientable: false },
        ),
    ]
}

/// Every corpus entry, in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    use Classification::*;
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push(CorpusEntry::new(
            format!("simplex-{k}"),
            simplex(k),
            format!("full {k}-simplex on 1..={}", k + 1),
            Ball,
        ));
    }
    for k in 1..=6 {
        out.push(CorpusEntry::new(
            format!("boundary-simplex-{k}"),
            boundary_simplex(k),
            format!("proper faces of the {k}-simplex on 1..={}", k + 1),
            Sphere,
        ));
    }
    for n in 3..=8 {
        out.push(CorpusEntry::new(
            format!("cycle-{n}"),
            SimplicialComplex::cycle(n),
            format!("{n}-gon"),
            Sphere,
        ));
    }
    out.push(CorpusEntry::new(
        "mobius5",
        mobius5(),
        "Moebius band with facets 123, 234, 345, 451, 512",
        ManifoldWithBoundary { orientable: false },
    ));
    out.push(CorpusEntry::new(
        "rp2-6",
        rp2_6(),
        "mobius5 with vertex 6 coned over its boundary",
        ClosedManifold { orientable: false },
    ));
    out.push(CorpusEntry::new(
        "torus7",
        torus7(),
        "facets {i,i+1,i+3} and {i,i+2,i+3} mod 7",
        ClosedManifold { orientable: true },
    ));
    out.push(CorpusEntry::new(
        "torus7-star",
        torus7_star(),
        "star of vertex 1 in torus7",
        Ball,
    ));
    out.extend(generated());
    out
}

pub fn corpus_names() -> Vec<String> {
    corpus().into_iter().map(|e| e.name).collect()
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_of;

    #[test]
    fn names_are_unique() {
        let names = corpus_names();
        let set: std::collections::BTreeSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
    }

    #[test]
    fn entries_have_their_declared_classification() {
        for e in corpus() {
            assert!(
                e.check_classification(),
                "{} is not a {}",
                e.name,
                e.classification
            );
        }
    }

    #[test]
    fn documented_examples() {
        assert_eq!(corpus_entry("mobius5").unwrap().complex.facets().len(), 5);
        assert_eq!(
            corpus_entry("rp2-6").unwrap().complex.f_vector().0,
            vec![1, 6, 15, 10]
        );
        assert_eq!(corpus_entry("torus7").unwrap().complex.facets().len(), 14);
        assert_eq!(
            corpus_entry("torus7-star").unwrap().complex.f_vector().0,
            vec![1, 7, 12, 6]
        );
        assert!(corpus_entry("nope").is_none());
        let b = corpus_entry("bary-rp2-6").unwrap().complex;
        assert_eq!(
            betti_of(&b, FieldSpec::prime(2).unwrap()).entries,
            vec![0, 0, 1, 1]
        );
    }
}
