//! Degree-by-degree model of the Stanley–Reisner module `F[Δ,Γ] = I_Γ / I_Δ`.
//!
//! Degree `j` has a basis of monomials of total degree `j` whose support is a
//! face of `Δ` but not of `Γ`. Multiplication by a linear form is a matrix
//! between consecutive degrees; monomials whose support leaves `Δ` vanish.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::comb::{binomial, compositions};
use crate::complex::{Face, RelativeComplex, SimplicialComplex, Vertex};
use crate::error::{contract, Error, Result};
use crate::linalg::{FieldSpec, Matrix, Scalar};

/// Default number of sampling attempts for a random l.s.o.p.
pub const DEFAULT_LSOP_ATTEMPTS: usize = 32;

/// A monomial as the sorted multiset of its variables (`x1^2 x3` is `[1,1,3]`).
pub type Monomial = Vec<Vertex>;

/// The monomial basis of one degree of `F[Δ,Γ]`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(pair: &RelativeComplex, degree: usize) -> MonomialBasis {
        let mut monomials = Vec::new();
        if degree == 0 {
            if pair.contains(&Face::empty()) {
                monomials.push(Vec::new());
            }
        } else {
            for face in pair
                .all_faces()
                .filter(|f| !f.is_empty() && f.len() <= degree)
            {
                for exps in compositions(degree, face.len()) {
                    let mut m = Vec::with_capacity(degree);
                    for (&v, &e) in face.vertices().iter().zip(&exps) {
                        m.extend(std::iter::repeat_n(v, e));
                    }
                    monomials.push(m);
                }
            }
        }
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        MonomialBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// `Σ_{τ ∈ Δ∖Γ, 1 ≤ |τ| ≤ j} C(j-1, |τ|-1)`, plus one for `∅` in degree 0.
    pub fn expected_size(pair: &RelativeComplex, degree: usize) -> usize {
        if degree == 0 {
            return usize::from(pair.contains(&Face::empty()));
        }
        let j = degree as i64;
        pair.all_faces()
            .filter(|f| !f.is_empty())
            .map(|f| binomial(j - 1, f.len() as i64 - 1) as usize)
            .sum()
    }
}

/// `Σ_v c_v x_v` with coefficients in a fixed field; absent vertices have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    field: FieldSpec,
    coefficients: BTreeMap<Vertex, Scalar>,
}

impl LinearForm {
    pub fn new(
        field: FieldSpec,
        coefficients: impl IntoIterator<Item = (Vertex, Scalar)>,
    ) -> Result<LinearForm> {
        let mut map = BTreeMap::new();
        for (v, c) in coefficients {
            if c.field() != field {
                return Err(Error::Configuration(format!(
                    "coefficient in {} for a form over {field}",
                    c.field()
                )));
            }
            if !c.is_zero() {
                map.insert(v, c);
            }
        }
        Ok(LinearForm {
            field,
            coefficients: map,
        })
    }

    pub fn zero(field: FieldSpec) -> LinearForm {
        LinearForm {
            field,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn variable(field: FieldSpec, v: Vertex) -> LinearForm {
        LinearForm {
            field,
            coefficients: [(v, field.one())].into(),
        }
    }

    /// A form with independent uniform coefficients on every vertex of `vertices`.
    pub fn random(
        field: FieldSpec,
        vertices: &BTreeSet<Vertex>,
        rng: &mut ChaCha8Rng,
    ) -> LinearForm {
        let coeffs = vertices.iter().map(|&v| (v, field.random(rng)));
        LinearForm::new(field, coeffs).expect("sampled in the form's own field")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coefficient(&self, v: Vertex) -> Scalar {
        self.coefficients
            .get(&v)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero coefficients, by vertex.
    pub fn terms(&self) -> impl Iterator<Item = (Vertex, &Scalar)> {
        self.coefficients.iter().map(|(&v, c)| (v, c))
    }

    pub fn scaled(&self, s: &Scalar) -> LinearForm {
        let coeffs = self.coefficients.iter().map(|(&v, c)| (v, c * s));
        LinearForm::new(self.field, coeffs).expect("same field")
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let vs: BTreeSet<Vertex> = self
            .coefficients
            .keys()
            .chain(other.coefficients.keys())
            .copied()
            .collect();
        let coeffs = vs
            .into_iter()
            .map(|v| (v, &self.coefficient(v) + &other.coefficient(v)));
        LinearForm::new(self.field, coeffs).expect("same field")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .map(|(v, c)| format!("{c}*x{v}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A linear system of parameters `θ_1, ..., θ_d`.
#[derive(Clone, Debug)]
pub struct Lsop {
    pub forms: Vec<LinearForm>,
    pub field: FieldSpec,
    /// Seed of the random stream the forms came from, if sampled.
    pub seed: Option<u64>,
    /// Number of samples drawn before the criterion passed.
    pub attempts: usize,
    pub validated: bool,
}

impl Lsop {
    /// Validates explicit forms against the facet-rank criterion for `pair`.
    pub fn from_forms(pair: &RelativeComplex, forms: Vec<LinearForm>) -> Result<Lsop> {
        let Some(field) = forms.first().map(LinearForm::field) else {
            return contract("an l.s.o.p. needs at least one form");
        };
        if forms.iter().any(|f| f.field() != field) {
            return Err(Error::Configuration(
                "l.s.o.p. forms over different fields".into(),
            ));
        }
        let validated = is_lsop_for_pair(pair, &forms)?;
        Ok(Lsop {
            forms,
            field,
            seed: None,
            attempts: 0,
            validated,
        })
    }

    pub fn d(&self) -> usize {
        self.forms.len()
    }

    /// `A · Θ` for an invertible `d × d` matrix `A` over the forms' field.
    /// The result spans the same space, so validation carries over.
    pub fn recombined(&self, a: &Matrix) -> Result<Lsop> {
        if a.rows() != self.d() || a.cols() != self.d() || a.field() != self.field {
            return contract("recombination matrix must be d x d over the l.s.o.p. field");
        }
        if a.rank() != self.d() {
            return contract("recombination matrix is singular");
        }
        let forms = (0..self.d())
            .map(|i| {
                (0..self.d()).fold(LinearForm::zero(self.field), |acc, k| {
                    acc.add(&self.forms[k].scaled(&a.get(i, k)))
                })
            })
            .collect();
        Ok(Lsop {
            forms,
            field: self.field,
            seed: self.seed,
            attempts: self.attempts,
            validated: self.validated,
        })
    }

    fn ensure_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            contract("linear forms have not been validated as an l.s.o.p.")
        }
    }
}

/// Rank of the coefficient matrix of `forms` restricted to the vertices of `face`.
fn restricted_rank(forms: &[LinearForm], face: &Face) -> usize {
    let field = forms[0].field();
    let mut m = Matrix::zeros(field, forms.len(), face.len());
    for (i, f) in forms.iter().enumerate() {
        for (j, &v) in face.vertices().iter().enumerate() {
            m.set(i, j, &f.coefficient(v));
        }
    }
    m.rank()
}

/// Facet-rank criterion for `F[K]`: `d = dim K + 1` forms whose restriction
/// to every facet `τ` has rank `|τ|`.
pub fn is_lsop(k: &SimplicialComplex, forms: &[LinearForm]) -> Result<bool> {
    let d = (k.dim() + 1).max(0) as usize;
    if forms.len() != d {
        return contract(format!(
            "{} forms given for a complex with d = {d}",
            forms.len()
        ));
    }
    Ok(k.facets()
        .iter()
        .filter(|f| !f.is_empty())
        .all(|f| restricted_rank(forms, f) == f.len()))
}

/// The same criterion over the maximal faces of `Δ ∖ Γ`, with `d = dim(Δ,Γ) + 1`.
pub fn is_lsop_for_pair(pair: &RelativeComplex, forms: &[LinearForm]) -> Result<bool> {
    let d = (pair.dim() + 1).max(0) as usize;
    if forms.len() != d {
        return contract(format!(
            "{} forms given for a pair with d = {d}",
            forms.len()
        ));
    }
    Ok(pair
        .maximal_faces()
        .iter()
        .filter(|f| !f.is_empty())
        .all(|f| restricted_rank(forms, f) == f.len()))
}

/// Samples dense random forms over the union of the vertex sets until they
/// are an l.s.o.p. for every complex in `complexes` (which must share `d`).
///
/// Coefficients come from the parameter field of `field`, so small
/// characteristics sample from a large extension field.
pub fn random_common_lsop(
    complexes: &[&SimplicialComplex],
    field: FieldSpec,
    seed: u64,
    max_attempts: usize,
) -> Result<Lsop> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lsop = sample_common_lsop(complexes, field, &mut rng, max_attempts)?;
    lsop.seed = Some(seed);
    Ok(lsop)
}

/// [`random_common_lsop`] drawing from an existing random stream.
pub fn sample_common_lsop(
    complexes: &[&SimplicialComplex],
    field: FieldSpec,
    rng: &mut ChaCha8Rng,
    max_attempts: usize,
) -> Result<Lsop> {
    let Some(first) = complexes.first() else {
        return contract("no complexes given");
    };
    if first.is_void() || first.dim() < 0 {
        return contract("a random l.s.o.p. needs a complex with at least one vertex");
    }
    let d = (first.dim() + 1) as usize;
    if complexes.iter().any(|k| (k.dim() + 1) as usize != d) {
        return contract("complexes of different dimensions have no common l.s.o.p.");
    }
    let vertices: BTreeSet<Vertex> = complexes
        .iter()
        .flat_map(|k| k.vertices().iter().copied())
        .collect();
    let field = field.parameter_field();
    for attempt in 1..=max_attempts {
        let forms: Vec<LinearForm> = (0..d)
            .map(|_| LinearForm::random(field, &vertices, rng))
            .collect();
        let mut ok = true;
        for k in complexes {
            ok &= is_lsop(k, &forms)?;
        }
        if ok {
            return Ok(Lsop {
                forms,
                field,
                seed: None,
                attempts: attempt,
                validated: true,
            });
        }
    }
    Err(Error::Genericity {
        field: field.to_string(),
        attempts: max_attempts,
    })
}

/// Random l.s.o.p. for `F[K]`.
pub fn random_lsop(
    k: &SimplicialComplex,
    field: FieldSpec,
    seed: u64,
    max_attempts: usize,
) -> Result<Lsop> {
    random_common_lsop(&[k], field, seed, max_attempts)
}

/// Random l.s.o.p. for `F[Δ]` (hence for `F[Δ,Γ]` when `dim(Δ,Γ) = dim Δ`).
pub fn random_lsop_for_pair(
    pair: &RelativeComplex,
    field: FieldSpec,
    seed: u64,
    max_attempts: usize,
) -> Result<Lsop> {
    if pair.dim() != pair.delta().dim() {
        return contract("the pair's dimension differs from the ambient complex");
    }
    let mut lsop = random_lsop(pair.delta(), field, seed, max_attempts)?;
    lsop.validated = is_lsop_for_pair(pair, &lsop.forms)?;
    Ok(lsop)
}

/// Multiplication by a linear form from degree `j` to degree `j + 1`.
///
/// Row `k` of `matrix` is the expansion of `form · (k-th source monomial)` in
/// the target basis, so the image of the map is the row space.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source_degree: usize,
    pub matrix: Matrix,
}

impl GradedMap {
    /// The same map with the target-by-source orientation (column `k` is the image of monomial `k`).
    pub fn column_matrix(&self) -> Matrix {
        self.matrix.transpose()
    }
}

/// The graded pieces `M_0, ..., M_top` of `M = F[Δ,Γ]` with their bases.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pair: RelativeComplex,
    bases: Vec<MonomialBasis>,
}

impl GradedModule {
    /// Bases for degrees `0..=top`.
    pub fn new(pair: &RelativeComplex, top: usize) -> GradedModule {
        let bases = (0..=top).map(|j| MonomialBasis::new(pair, j)).collect();
        GradedModule {
            pair: pair.clone(),
            bases,
        }
    }

    pub fn pair(&self) -> &RelativeComplex {
        &self.pair
    }

    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, j: usize) -> &MonomialBasis {
        &self.bases[j]
    }

    pub fn dim(&self, j: usize) -> usize {
        self.bases.get(j).map_or(0, MonomialBasis::len)
    }

    /// `×form : M_j → M_{j+1}`, requiring `j < top`.
    pub fn mult(&self, form: &LinearForm, j: usize) -> GradedMap {
        assert!(j < self.top(), "degree {j} has no stored successor");
        let (src, dst) = (&self.bases[j], &self.bases[j + 1]);
        let mut m = Matrix::zeros(form.field(), src.len(), dst.len());
        for (r, mono) in src.monomials().iter().enumerate() {
            for (v, c) in form.terms() {
                let mut prod = mono.clone();
                let at = prod.partition_point(|&u| u <= v);
                prod.insert(at, v);
                if let Some(col) = dst.position(&prod) {
                    m.add_at(r, col, c);
                }
            }
        }
        GradedMap {
            source_degree: j,
            matrix: m,
        }
    }

    /// Rows spanning `(ΘM)_j = Σ_i θ_i M_{j-1}` inside `M_j`.
    pub fn theta_image(&self, lsop: &Lsop, j: usize) -> Matrix {
        if j == 0 {
            return Matrix::zeros(lsop.field, 0, self.dim(0));
        }
        let parts: Vec<Matrix> = lsop
            .forms
            .iter()
            .map(|f| self.mult(f, j - 1).matrix)
            .collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::vstack(&refs).expect("equal widths").row_basis()
    }
}

/// `mult_matrix` on a freshly built module.
pub fn mult_matrix(pair: &RelativeComplex, form: &LinearForm, j: usize) -> GradedMap {
    GradedModule::new(pair, j + 1).mult(form, j)
}

/// `dim (M/ΘM)_j` for `j = 0..=d`, where `d` is the number of forms.
pub fn artinian_hilbert(pair: &RelativeComplex, lsop: &Lsop) -> Result<Vec<i64>> {
    lsop.ensure_validated()?;
    let d = lsop.d();
    let module = GradedModule::new(pair, d);
    Ok((0..=d)
        .map(|j| (module.dim(j) - module.theta_image(lsop, j).rows()) as i64)
        .collect())
}

/// Report-friendly rendering of an l.s.o.p.
#[derive(Clone, Debug, Serialize)]
pub struct LsopSummary {
    pub field: String,
    pub seed: Option<u64>,
    pub attempts: usize,
}

impl From<&Lsop> for LsopSummary {
    fn from(l: &Lsop) -> LsopSummary {
        LsopSummary {
            field: l.field.to_string(),
            seed: l.seed,
            attempts: l.attempts,
        }
    }
}

pub(crate) fn ensure_validated(lsop: &Lsop) -> Result<()> {
    lsop.ensure_validated()
}
