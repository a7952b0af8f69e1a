//! Exact scalar arithmetic and the dense elimination kernel.
//!
//! Every algebraic computation in the crate reduces to ranks, kernels and
//! span membership over one of three kinds of field: the rationals (exact
//! `BigRational` entries), a prime field `F_p`, or a table-driven `GF(p^k)`
//! used when random choices in small characteristic need room.

mod field;
mod gf;
mod matrix;

pub use field::{FieldSpec, Scalar, DEFAULT_CHARACTERISTIC, RATIONAL_SAMPLE_BOUND};
pub use matrix::{kernel_basis, rank, subspace_sum_contains, Matrix};

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(fp(7), 3).rank(), 3);
    }

    #[test]
    fn duplicate_rows_over_f2() {
        let m = Matrix::from_i64(fp(2), 2, 2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    /// Rank over F_2 by xor-ing bitmask rows; independent of the generic kernel.
    fn gf2_rank(rows: &[u32]) -> usize {
        let mut rows = rows.to_vec();
        let mut rank = 0;
        for bit in 0..32 {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn mobius_boundary_matrix_rank() {
        let triangles = [[1, 2, 3], [2, 3, 4], [3, 4, 5], [1, 4, 5], [1, 2, 5]];
        let mut edges = Vec::new();
        for a in 1..=5 {
            for b in a + 1..=5 {
                edges.push([a, b]);
            }
        }
        assert_eq!(edges.len(), 10);
        let mut entries = Vec::new();
        let mut masks = Vec::new();
        for t in &triangles {
            let mut mask = 0u32;
            for (j, e) in edges.iter().enumerate() {
                let inc = t.contains(&e[0]) && t.contains(&e[1]);
                entries.push(inc as i64);
                if inc {
                    mask |= 1 << j;
                }
            }
            masks.push(mask);
        }
        let m = Matrix::from_i64(fp(2), 5, 10, &entries).unwrap();
        assert_eq!(gf2_rank(&masks), 5);
        assert_eq!(m.rank(), 5);
    }

    #[test]
    fn kernel_of_sum_form_over_f3() {
        let m = Matrix::from_i64(fp(3), 1, 2, &[1, 1]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), vec![fp(3).from_i64(1), fp(3).from_i64(2)]);
    }

    #[test]
    fn invertible_rational_matrix_has_trivial_kernel() {
        let q = FieldSpec::rationals();
        let m = Matrix::from_i64(q, 2, 2, &[2, 1, 1, 1]).unwrap();
        assert_eq!(m.kernel_basis().rows(), 0);
    }

    #[test]
    fn triangle_edge_boundary_has_one_cycle() {
        // edges 12, 13, 23 against vertices 1, 2, 3 (rows are edges)
        let q = FieldSpec::rationals();
        let d1 = Matrix::from_i64(q, 3, 3, &[-1, 1, 0, -1, 0, 1, 0, -1, 1]).unwrap();
        // cycles live in the left kernel, i.e. the kernel of the transpose
        let z = d1.transpose().kernel_basis();
        assert_eq!(z.rows(), 1);
        let check = Matrix::vstack(&[&z]).unwrap().mul(&d1).unwrap();
        assert!(check.is_zero());
    }

    #[test]
    fn membership_in_subspace_sums() {
        let f5 = fp(5);
        let e1 = Matrix::from_i64(f5, 1, 2, &[1, 0]).unwrap();
        let e2 = Matrix::from_i64(f5, 1, 2, &[0, 1]).unwrap();
        let empty = Matrix::zeros(f5, 0, 2);
        let v = |a, b| vec![f5.from_i64(a), f5.from_i64(b)];
        assert!(subspace_sum_contains(&e1, &e2, &v(0, 0)).unwrap());
        assert!(subspace_sum_contains(&e1, &e2, &v(1, 1)).unwrap());
        assert!(!subspace_sum_contains(&e1, &empty, &v(0, 1)).unwrap());
        let wide = Matrix::zeros(f5, 1, 3);
        assert!(subspace_sum_contains(&e1, &wide, &v(0, 1)).is_err());
        assert!(e1.row_space_contains(&[f5.one()]).is_err());
    }

    #[test]
    fn mixed_field_entries_are_rejected() {
        let a = fp(5).one();
        let b = fp(7).one();
        let err = Matrix::from_scalars(fp(5), 1, 2, &[a, b]).unwrap_err();
        assert!(matches!(err, crate::Error::Configuration(_)));
    }

    /// Fraction-free determinant of a small integer matrix.
    fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                    return 0;
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
            .collect()
    }

    /// Largest order of a nonvanishing minor.
    fn minor_rank(a: &[Vec<i64>]) -> usize {
        let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
        for k in (1..=r.min(c)).rev() {
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let minor: Vec<Vec<i128>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| a[i][j] as i128).collect())
                        .collect();
                    if det_i128(minor) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=6, 1usize..=6)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-1i64..=1, c), r))
    }

    fn to_matrix(field: FieldSpec, a: &[Vec<i64>]) -> Matrix {
        let flat: Vec<i64> = a.iter().flatten().copied().collect();
        Matrix::from_i64(field, a.len(), a[0].len(), &flat).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rank_nullity(a in small_matrix(), p in prop::sample::select(vec![2u32, 3, 32003, 0])) {
            let m = to_matrix(FieldSpec::from_characteristic(p).unwrap(), &a);
            prop_assert_eq!(m.rank() + m.kernel_basis().rows(), m.cols());
            // kernel rows really are in the kernel
            let prod = m.mul(&m.kernel_basis().transpose()).unwrap();
            prop_assert!(prod.is_zero());
        }

        #[test]
        fn rank_is_row_operation_invariant(a in small_matrix(), seed in 0u64..1000) {
            let f = FieldSpec::prime(32003).unwrap();
            let m = to_matrix(f, &a);
            let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i)).collect();
            let n = rows.len();
            rows.rotate_left((seed as usize) % n);
            let s = f.from_i64(seed as i64 % 97 + 1);
            rows[0] = rows[0].iter().map(|x| x * &s).collect();
            let m2 = Matrix::from_rows(f, &rows).unwrap();
            prop_assert_eq!(m.rank(), m2.rank());
        }

        #[test]
        fn rational_and_large_prime_ranks_match_minor_oracle(
            a in (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
                prop::collection::vec(prop::collection::vec(-1i64..=1, c), r)
            })
        ) {
            let expected = minor_rank(&a);
            prop_assert_eq!(to_matrix(FieldSpec::rationals(), &a).rank(), expected);
            prop_assert_eq!(to_matrix(FieldSpec::prime(32003).unwrap(), &a).rank(), expected);
        }
    }
}
