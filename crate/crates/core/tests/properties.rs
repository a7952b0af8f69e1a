//! Property tests over randomly generated matrices and complexes.

use std::collections::BTreeMap;

use proptest::prelude::*;
use sr_duality::graded::random_lsop;
use sr_duality::homology::betti_of;
use sr_duality::io::{complex_from_json, complex_to_json};
use sr_duality::sigma::SigmaModule;
use sr_duality::surgery::{bistellar_flip, find_flips, stellar_subdivision};
use sr_duality::{FVector, Face, FieldSpec, HVector, Matrix, RelativeComplex, SimplicialComplex};

fn fp() -> FieldSpec {
    FieldSpec::prime(101).unwrap()
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(1u32..=6, 1..=3), 1..6)
        .prop_map(|fs| SimplicialComplex::from_facets(fs.into_iter().map(Face::new)))
}

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity((r, c, e) in matrix_strategy()) {
        for field in [fp(), FieldSpec::rationals()] {
            let m = Matrix::from_i64(field, r, c, &e).unwrap();
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.rows(), c);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.mul(&k.transpose()).unwrap().is_zero());
            let (left, independent) = m.left_kernel();
            prop_assert_eq!(left.rows() + independent.len(), r);
            prop_assert!(left.mul(&m).unwrap().is_zero());
        }
    }

    #[test]
    fn f_and_h_vectors_round_trip(k in complex_strategy()) {
        let d = (k.dim() + 1) as usize;
        let f = k.f_vector();
        let h = HVector::from_f(&f, d).unwrap();
        prop_assert_eq!(FVector::from_h(&h).trimmed(), f.trimmed());
        prop_assert_eq!(h.entries.iter().sum::<i64>(), k.faces(d as isize - 1).len() as i64);
    }

    #[test]
    fn json_round_trip(k in complex_strategy()) {
        prop_assert_eq!(complex_from_json(&complex_to_json(&k)).unwrap(), k);
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers(k in complex_strategy()) {
        for field in [FieldSpec::prime(2).unwrap(), FieldSpec::rationals()] {
            prop_assert_eq!(betti_of(&k, field).euler_characteristic(), k.f_vector().reduced_euler_characteristic());
        }
    }

    #[test]
    fn sigma_sits_between_theta_m_and_m(k in complex_strategy(), seed in 0u64..1000) {
        let lsop = random_lsop(&k, fp(), seed, 32).unwrap();
        let sm = SigmaModule::new(&RelativeComplex::absolute(k.clone()), &lsop).unwrap();
        for j in 0..=sm.d() + 1 {
            let piece = sm.piece(j);
            let theta = sm.theta_piece(j);
            prop_assert!(piece.span.row_space_contains_all(theta).unwrap());
            prop_assert!(theta.rank() <= piece.span.rank());
            prop_assert_eq!(piece.codim + piece.span.rank(), sm.module().dim(j));
        }
        prop_assert!(sm.quotient_hilbert().iter().all(|&x| x >= 0));
    }

    #[test]
    fn quotient_hilbert_ignores_vertex_labels(k in complex_strategy(), shift in 1u32..20) {
        let map: BTreeMap<u32, u32> = k.vertices().iter().map(|&v| (v, 7 * v + shift)).collect();
        let relabeled = k.relabel(&map).unwrap();
        let q = |c: &SimplicialComplex| {
            let lsop = random_lsop(c, FieldSpec::prime(32003).unwrap(), 1, 32).unwrap();
            SigmaModule::new(&RelativeComplex::absolute(c.clone()), &lsop).unwrap().quotient_hilbert()
        };
        prop_assert_eq!(q(&k), q(&relabeled));
    }

    #[test]
    fn flips_are_involutions(picks in prop::collection::vec(0usize..64, 1..4), p in 1usize..=3, which in 0usize..64) {
        // random 2-spheres by repeated stellar subdivision of facets of the tetrahedron boundary
        let mut k = SimplicialComplex::simplex_boundary(1..=4);
        for i in picks {
            let facet = k.facets()[i % k.facets().len()].clone();
            k = stellar_subdivision(&k, &facet).unwrap();
        }
        let sites = find_flips(&k, p).unwrap();
        prop_assume!(!sites.is_empty());
        let site = &sites[which % sites.len()];
        let flipped = bistellar_flip(&k, site).unwrap();
        prop_assert_eq!(bistellar_flip(&flipped, &site.inverse()).unwrap(), k.clone());
        prop_assert_eq!(flipped.f_vector().reduced_euler_characteristic(), k.f_vector().reduced_euler_characteristic());
    }
}
