//! Brute-force Σ(Θ;M) from its defining generating set, compared degree by
//! degree with the library. The oracle has its own F_p arithmetic, monomial
//! bases and elimination and solves one augmented system per colon piece.
//! Shared by the `oracle` and `acceptance` test targets.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sr_duality::graded::{random_lsop_for_pair, Lsop, MonomialBasis};
use sr_duality::sigma::sigma_piece;
use sr_duality::{Face, FieldSpec, RelativeComplex, SimplicialComplex};

const P: u64 = 32003;

fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % P;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + (P - f) * y) % P;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank(rows: &[Vec<u64>], cols: usize) -> usize {
    rref(&mut rows.to_vec(), cols).len()
}

/// Null space of the `rows × cols` matrix `a`, as column vectors.
fn null_space(a: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (P - m[r][f]) % P;
            }
            v
        })
        .collect()
}

struct Oracle {
    delta: Vec<BTreeSet<u32>>,
    gamma: Vec<BTreeSet<u32>>,
    vertices: Vec<u32>,
}

impl Oracle {
    fn new(pair: &RelativeComplex) -> Oracle {
        let set = |f: &Face| f.vertices().iter().copied().collect::<BTreeSet<u32>>();
        Oracle {
            delta: pair.delta().facets().iter().map(set).collect(),
            gamma: if pair.gamma().is_void() {
                Vec::new()
            } else {
                pair.gamma().facets().iter().map(set).collect()
            },
            vertices: pair.delta().vertices().iter().copied().collect(),
        }
    }

    fn in_pair(&self, support: &BTreeSet<u32>) -> bool {
        self.delta.iter().any(|f| support.is_subset(f))
            && !self.gamma.iter().any(|f| support.is_subset(f))
    }

    /// Monomials of degree `j` (as sorted variable lists) whose support lies in Δ but not in Γ.
    fn basis(&self, j: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(vs: &[u32], start: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for i in start..vs.len() {
                cur.push(vs[i]);
                rec(vs, i, left - 1, cur, out);
                cur.pop();
            }
        }
        rec(&self.vertices, 0, j, &mut cur, &mut out);
        out.retain(|m| self.in_pair(&m.iter().copied().collect()));
        out
    }

    /// Column-convention matrix of multiplication by `form` from degree `j` to `j + 1`.
    fn mult(&self, form: &HashMap<u32, u64>, src: &[Vec<u32>], dst: &[Vec<u32>]) -> Vec<Vec<u64>> {
        let index: HashMap<&Vec<u32>, usize> =
            dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut a = vec![vec![0; src.len()]; dst.len()];
        for (c, m) in src.iter().enumerate() {
            for (&v, &coef) in form {
                let mut prod = m.clone();
                prod.push(v);
                prod.sort();
                if let Some(&r) = index.get(&prod) {
                    a[r][c] = (a[r][c] + coef) % P;
                }
            }
        }
        a
    }

    /// Spanning vectors of Σ(Θ;M)_j in the basis of degree `j`.
    fn sigma(&self, theta: &[HashMap<u32, u64>], j: usize) -> (Vec<Vec<u32>>, Vec<Vec<u64>>) {
        let bj = self.basis(j);
        let mut gens = Vec::new();
        if j > 0 {
            let prev = self.basis(j - 1);
            for t in theta {
                let a = self.mult(t, &prev, &bj);
                for c in 0..prev.len() {
                    gens.push(a.iter().map(|row| row[c]).collect::<Vec<u64>>());
                }
            }
        }
        let next = self.basis(j + 1);
        let maps: Vec<Vec<Vec<u64>>> = theta.iter().map(|t| self.mult(t, &bj, &next)).collect();
        for k in 0..theta.len() {
            // x ∈ M_j with θ_k x = Σ_{i≠k} θ_i y_i: kernel of [A_k | -A_i ...], projected to x
            let others: Vec<usize> = (0..theta.len()).filter(|&i| i != k).collect();
            let n = bj.len();
            let cols = n * (1 + others.len());
            let system: Vec<Vec<u64>> = (0..next.len())
                .map(|r| {
                    let mut row = maps[k][r].clone();
                    for &i in &others {
                        row.extend(maps[i][r].iter().map(|&x| (P - x) % P));
                    }
                    row
                })
                .collect();
            for v in null_space(&system, cols) {
                gens.push(v[..n].to_vec());
            }
        }
        (bj, gens)
    }
}

fn residue(s: &sr_duality::Scalar) -> u64 {
    s.to_string()
        .parse()
        .expect("prime-field scalars print as residues")
}

fn forms(lsop: &Lsop) -> Vec<HashMap<u32, u64>> {
    lsop.forms
        .iter()
        .map(|f| f.terms().map(|(v, c)| (v, residue(c))).collect())
        .collect()
}

fn random_face(rng: &mut ChaCha8Rng, n: u32, max: usize) -> Face {
    let size = rng.random_range(1..=max.min(n as usize));
    let mut vs = BTreeSet::new();
    while vs.len() < size {
        vs.insert(rng.random_range(1..=n));
    }
    Face::new(vs)
}

fn random_pair(rng: &mut ChaCha8Rng) -> RelativeComplex {
    let n = rng.random_range(2..=6);
    let facets: Vec<Face> = (0..rng.random_range(1..=6))
        .map(|_| random_face(rng, n, 3))
        .collect();
    let delta = SimplicialComplex::from_facets(facets);
    let gamma = match rng.random_range(0..4) {
        0 => SimplicialComplex::void(),
        1 => SimplicialComplex::empty(),
        _ => {
            let faces: Vec<Face> = delta
                .all_faces()
                .filter(|f| !f.is_empty())
                .cloned()
                .collect();
            let picked: Vec<Face> = (0..rng.random_range(1..=3))
                .map(|_| faces[rng.random_range(0..faces.len())].clone())
                .collect();
            SimplicialComplex::from_facets(picked)
        }
    };
    RelativeComplex::new(delta, gamma).expect("gamma is built from faces of delta")
}

/// Checks `count` distinct random pairs (at most 6 vertices, `d ≤ 3`) drawn
/// from `seed`, returning how many were compared or the first mismatch.
pub fn compare_random_pairs(count: usize, seed: u64) -> Result<usize, String> {
    let field = FieldSpec::prime(P as u32).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut seen = BTreeSet::new();
    while checked < count {
        let pair = random_pair(&mut rng);
        if pair.delta().dim() < 0
            || pair.dim() != pair.delta().dim()
            || !seen.insert(format!(
                "{:?}|{:?}",
                pair.delta().facets(),
                pair.gamma().facets()
            ))
        {
            continue;
        }
        let lsop =
            random_lsop_for_pair(&pair, field, checked as u64, 32).map_err(|e| e.to_string())?;
        let oracle = Oracle::new(&pair);
        let theta = forms(&lsop);
        for j in 0..=lsop.d() + 1 {
            let (basis, gens) = oracle.sigma(&theta, j);
            let piece = sigma_piece(&pair, &lsop, j).map_err(|e| e.to_string())?;
            let lib = MonomialBasis::new(&pair, j);
            if lib.len() != basis.len() {
                return Err(format!("basis sizes differ in degree {j} for {pair:?}"));
            }
            let lib_rows: Vec<Vec<u64>> = (0..piece.span.rows())
                .map(|r| {
                    let mut v = vec![0; basis.len()];
                    for (c, m) in lib.monomials().iter().enumerate() {
                        let k = basis.iter().position(|b| b == m).expect("same monomials");
                        v[k] = residue(&piece.span.get(r, c));
                    }
                    v
                })
                .collect();
            let r_oracle = rank(&gens, basis.len());
            let r_lib = rank(&lib_rows, basis.len());
            let both: Vec<Vec<u64>> = gens.iter().chain(&lib_rows).cloned().collect();
            if r_oracle != r_lib
                || rank(&both, basis.len()) != r_lib
                || piece.codim != basis.len() - r_lib
            {
                return Err(format!(
                    "Σ_{j} differs for {pair:?}: oracle dim {r_oracle}, library dim {r_lib}"
                ));
            }
        }
        checked += 1;
    }
    Ok(checked)
}
