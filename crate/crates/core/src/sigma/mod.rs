//! Goto's submodule `Σ(Θ; M)` of a Stanley–Reisner module, computed degree by
//! degree, and the h′/h″ face invariants it realizes.
//!
//! In degree `j`,
//! `Σ(Θ;M)_j = (ΘM)_j + Σ_k { x ∈ M_j : θ_k x ∈ Σ_{i≠k} θ_i M_j }`.
//! Each colon piece is the projection onto the `x` block of the left kernel
//! of `[×θ_k ; ×θ_i (i ≠ k)]`; all pieces come from one left kernel of the
//! stacked multiplication maps.

mod checks;

pub use checks::*;

use serde::{Deserialize, Serialize};

use crate::comb::binomial;
use crate::complex::RelativeComplex;
use crate::error::{Error, Result};
use crate::graded::{GradedModule, LinearForm, Lsop};
use crate::homology::{betti, BettiVector};
use crate::linalg::{FieldSpec, Matrix};

/// `Σ(Θ;M)_j` as a row-echelon basis in the monomial coordinates of `M_j`.
#[derive(Clone, Debug)]
pub struct SigmaPiece {
    pub degree: usize,
    pub span: Matrix,
    /// `dim M_j - dim Σ_j`.
    pub codim: usize,
}

/// `Σ(Θ;M)` and `ΘM` in every degree `0..=d+1`.
#[derive(Clone, Debug)]
pub struct SigmaModule {
    module: GradedModule,
    lsop: Lsop,
    theta: Vec<Matrix>,
    sigma: Vec<Matrix>,
}

fn stack(parts: &[&Matrix]) -> Matrix {
    Matrix::vstack(parts).expect("pieces share a degree")
}

/// `x ↦ x mod V` for a reduced echelon basis `v` of `V ⊆ F^n`, as an
/// `n × c` matrix onto the `c` non-pivot coordinates, plus those coordinates.
fn quotient_projection(v: &Matrix) -> (Matrix, Vec<usize>) {
    let n = v.cols();
    let leads: Vec<usize> = v.leading_columns().into_iter().flatten().collect();
    let free: Vec<usize> = (0..n).filter(|c| !leads.contains(c)).collect();
    let mut p = Matrix::zeros(v.field(), n, free.len());
    let one = v.field().one();
    for (k, &c) in free.iter().enumerate() {
        p.set(c, k, &one);
    }
    for (r, &c) in leads.iter().enumerate() {
        for (k, &f) in free.iter().enumerate() {
            let e = v.get(r, f);
            if !e.is_zero() {
                p.set(c, k, &-&e);
            }
        }
    }
    (p, free)
}

/// `Σ_j` and `(ΘM)_{j+1}` from the row basis of `(ΘM)_j` and the maps
/// `×θ_k : M_j → M_{j+1}`.
///
/// A vector `(y_1, ..., y_d)` in the left kernel of `[×θ_1; ...; ×θ_d]` has
/// `θ_k y_k ∈ Σ_{i≠k} θ_i M_j`, and every element of the colon piece for `k`
/// arises as such a block `y_k`. So the sum of the colon pieces is spanned by
/// the block projections of one left kernel; only their images modulo
/// `(ΘM)_j` are needed.
fn sigma_degree(theta: &Matrix, mults: &[Matrix]) -> (Matrix, Matrix) {
    let dim = theta.cols();
    let images = stack(&mults.iter().collect::<Vec<_>>());
    if theta.rows() == dim {
        return (theta.clone(), images.row_basis());
    }
    let (kernel, independent) = images.left_kernel();
    let next_theta = images.select_rows(&independent).row_basis();
    let (proj, free) = quotient_projection(theta);
    let images: Vec<Matrix> = (0..mults.len())
        .map(|k| {
            kernel
                .column_block(k * dim, (k + 1) * dim)
                .mul(&proj)
                .expect("conformal")
        })
        .collect();
    let reduced = stack(&images.iter().collect::<Vec<_>>()).row_basis();
    let mut lifted = Matrix::zeros(theta.field(), reduced.rows(), dim);
    for r in 0..reduced.rows() {
        for (k, &c) in free.iter().enumerate() {
            lifted.set(r, c, &reduced.get(r, k));
        }
    }
    (stack(&[theta, &lifted]).row_basis(), next_theta)
}

/// Largest degree of a minimal monomial generator of `F[Δ,Γ]`, i.e. the
/// largest face of `Δ ∖ Γ` whose proper faces all lie in `Γ`.
fn generator_degree(pair: &RelativeComplex) -> usize {
    pair.all_faces()
        .filter(|f| f.boundary_faces().all(|(_, g)| !pair.contains(&g)))
        .map(|f| f.len())
        .max()
        .unwrap_or(0)
}

impl SigmaModule {
    pub fn new(pair: &RelativeComplex, lsop: &Lsop) -> Result<SigmaModule> {
        crate::graded::ensure_validated(lsop)?;
        let d = lsop.d();
        let module = GradedModule::new(pair, d + 2);
        let field = lsop.field;
        let top_generator = generator_degree(pair);
        let mut theta = vec![Matrix::zeros(field, 0, module.dim(0))];
        let mut sigma = Vec::with_capacity(d + 2);
        for j in 0..=d + 1 {
            let full = theta[j].rows() == module.dim(j);
            // once Θ fills M_j above the generators, M_{j+1} = x·ΘM_{j-1} ⊆ ΘM_j as well
            if full && j >= top_generator {
                sigma.push(theta[j].clone());
                if j <= d {
                    theta.push(Matrix::identity(field, module.dim(j + 1)));
                }
                continue;
            }
            let next: Vec<Matrix> = lsop
                .forms
                .iter()
                .map(|f| module.mult(f, j).matrix)
                .collect();
            let (span, next_theta) = sigma_degree(&theta[j], &next);
            sigma.push(span);
            if j <= d {
                theta.push(next_theta);
            }
        }
        Ok(SigmaModule {
            module,
            lsop: lsop.clone(),
            theta,
            sigma,
        })
    }

    pub fn d(&self) -> usize {
        self.lsop.d()
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn lsop(&self) -> &Lsop {
        &self.lsop
    }

    pub fn piece(&self, j: usize) -> SigmaPiece {
        let span = self.sigma[j].clone();
        SigmaPiece {
            degree: j,
            codim: self.module.dim(j) - span.rows(),
            span,
        }
    }

    /// Row basis of `(ΘM)_j`.
    pub fn theta_piece(&self, j: usize) -> &Matrix {
        &self.theta[j]
    }

    /// `dim (M/Σ)_j` for `j = 0..=d`.
    pub fn quotient_hilbert(&self) -> Vec<i64> {
        (0..=self.d())
            .map(|j| (self.module.dim(j) - self.sigma[j].rows()) as i64)
            .collect()
    }

    /// `dim (M/ΘM)_j` for `j = 0..=d`.
    pub fn artinian_hilbert(&self) -> Vec<i64> {
        (0..=self.d())
            .map(|j| (self.module.dim(j) - self.theta[j].rows()) as i64)
            .collect()
    }

    /// `dim (Σ/ΘM)_j` for `j = 0..=d`.
    pub fn layer(&self) -> Vec<i64> {
        (0..=self.d())
            .map(|j| (self.sigma[j].rows() - self.theta[j].rows()) as i64)
            .collect()
    }

    /// `Σ_{d+1} = M_{d+1}`, i.e. the quotient vanishes beyond `d`.
    pub fn vanishes_above_top(&self) -> bool {
        let j = self.d() + 1;
        self.sigma[j].rows() == self.module.dim(j)
    }

    /// Rank of `×ω : (M/Σ)_i → (M/Σ)_{i+1}`, with both dimensions.
    pub fn multiplication_rank(&self, omega: &LinearForm, i: usize) -> MultRank {
        let source = self.module.dim(i) - self.sigma[i].rows();
        let target = self.module.dim(i + 1) - self.sigma[i + 1].rows();
        let image = self.module.mult(omega, i).matrix;
        // images of Σ_i land in Σ_{i+1}, so the full image of M_i modulo Σ_{i+1} is the quotient image
        let rank = stack(&[&image, &self.sigma[i + 1]]).rank() - self.sigma[i + 1].rows();
        MultRank {
            degree: i,
            source,
            target,
            rank,
        }
    }
}

/// Rank of a multiplication map between quotient degrees `degree → degree + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultRank {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub rank: usize,
}

impl MultRank {
    pub fn injective(&self) -> bool {
        self.rank == self.source
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.target
    }
}

/// `Σ(Θ;M)_j` on a freshly computed module.
pub fn sigma_piece(pair: &RelativeComplex, lsop: &Lsop, j: usize) -> Result<SigmaPiece> {
    let s = SigmaModule::new(pair, lsop)?;
    if j > s.d() + 1 {
        return crate::error::contract(format!("degree {j} is beyond d + 1 = {}", s.d() + 1));
    }
    Ok(s.piece(j))
}

/// `dim (M/Σ(Θ;M))_j` for `j = 0..=d`.
pub fn quotient_hilbert(pair: &RelativeComplex, lsop: &Lsop) -> Result<Vec<i64>> {
    Ok(SigmaModule::new(pair, lsop)?.quotient_hilbert())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Combinatorial,
    Algebraic,
}

/// `h″_0, ..., h″_d` with the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HppVector {
    pub entries: Vec<i64>,
    pub provenance: Provenance,
}

/// The face invariants of a pair over a field, with `d = dim Δ + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceNumbers {
    pub d: usize,
    pub h: Vec<i64>,
    pub h_prime: Vec<i64>,
    pub h_double_prime: Vec<i64>,
    pub betti: BettiVector,
}

/// h, h′ and h″ of a pair:
/// `h′_j = h_j - C(d,j) Σ_{i=1}^{j-1} (-1)^{j-i} β̃_{i-1}` and
/// `h″_j = h′_j - C(d,j) β̃_{j-1}` for `j < d`, `h″_d = h′_d`.
pub fn face_numbers(pair: &RelativeComplex, field: FieldSpec) -> FaceNumbers {
    let d = pair.krull_dim();
    let h = pair
        .h_vector(d)
        .expect("krull dimension bounds the pair")
        .entries;
    let b = betti(pair, field);
    let beta = |i: i64| b.get(i as isize) as i64;
    let di = d as i64;
    let h_prime: Vec<i64> = (0..=di)
        .map(|j| {
            let correction: i64 = (1..j)
                .map(|i| {
                    if (j - i) % 2 == 0 {
                        beta(i - 1)
                    } else {
                        -beta(i - 1)
                    }
                })
                .sum();
            h[j as usize] - binomial(di, j) * correction
        })
        .collect();
    let h_double_prime = (0..=di)
        .map(|j| {
            if j < di {
                h_prime[j as usize] - binomial(di, j) * beta(j - 1)
            } else {
                h_prime[j as usize]
            }
        })
        .collect();
    FaceNumbers {
        d,
        h,
        h_prime,
        h_double_prime,
        betti: b,
    }
}

/// h″ by the combinatorial route.
pub fn h_double_prime(pair: &RelativeComplex, field: FieldSpec) -> HppVector {
    HppVector {
        entries: face_numbers(pair, field).h_double_prime,
        provenance: Provenance::Combinatorial,
    }
}

/// h″ by the algebraic route, `dim (M/Σ(Θ;M))_j`.
pub fn h_double_prime_algebraic(pair: &RelativeComplex, lsop: &Lsop) -> Result<HppVector> {
    Ok(HppVector {
        entries: quotient_hilbert(pair, lsop)?,
        provenance: Provenance::Algebraic,
    })
}

pub(crate) fn inconsistency<T>(msg: String) -> Result<T> {
    Err(Error::Inconsistency(msg))
}
