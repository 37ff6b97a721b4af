//! Presentation matrices of determinantal germs: minors, Jacobians, bordered
//! matrices, hyperplane sections and perturbations.

mod file;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub use file::{MatrixFile, MatrixFileError};

use crate::polycore::{parse_poly, ParseError, Poly, PolyError, Rational, Ring};

/// Bound on the absolute value of automatic perturbation constants.
pub const PERTURBATION_BOUND: i64 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix has no entries")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("entry ({row},{col}) does not vanish at the origin")]
    NotAtOrigin { row: usize, col: usize },
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorSize { k: usize, rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linear form is zero")]
    ZeroForm,
    #[error("not a linear form: {0}")]
    NotLinear(String),
    #[error("parameter `{0}` has no assigned value")]
    MissingParameter(String),
    #[error("perturbation does not vanish when all parameters are zero (entry ({row},{col}))")]
    TemplateNotCentered { row: usize, col: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}

/// Dense matrix of polynomials over a named ring, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl Matrix {
    pub fn new(ring: Ring, grid: Vec<Vec<Poly>>) -> Result<Self, MatrixError> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, row) in grid.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged { row: i, expected: cols, got: row.len() });
            }
            for p in row {
                if p.nvars() != ring.len() {
                    return Err(PolyError::RingMismatch { left: ring.len(), right: p.nvars() }.into());
                }
                entries.push(p);
            }
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    /// Parses a grid of polynomial strings.
    pub fn parse(ring: &Ring, grid: &[&[&str]]) -> Result<Self, MatrixError> {
        let polys = grid
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s, ring)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::new(ring.clone(), polys)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn grid(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let grid = (0..self.cols).map(|j| (0..self.rows).map(|i| self.entry(i, j).clone()).collect()).collect();
        Matrix::new(self.ring.clone(), grid).expect("transpose of a valid matrix")
    }

    /// Applies `f` to every entry, producing a matrix over `ring`.
    pub fn map_entries(&self, ring: Ring, mut f: impl FnMut(&Poly) -> Result<Poly, MatrixError>) -> Result<Matrix, MatrixError> {
        let grid = (0..self.rows).map(|i| self.row(i).iter().map(&mut f).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        Matrix::new(ring, grid)
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows || self.ring != other.ring {
            return Err(MatrixError::Shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let n = self.ring.len();
        let grid = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| (0..self.cols).fold(Poly::zero(n), |acc, k| &acc + &(self.entry(i, k) * other.entry(k, j))))
                    .collect()
            })
            .collect();
        Matrix::new(self.ring.clone(), grid)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly {
        debug_assert_eq!(rows.len(), cols.len());
        let n = self.ring.len();
        match rows.len() {
            0 => Poly::one(n),
            1 => self.entry(rows[0], cols[0]).clone(),
            2 => &(self.entry(rows[0], cols[0]) * self.entry(rows[1], cols[1])) - &(self.entry(rows[0], cols[1]) * self.entry(rows[1], cols[0])),
            _ => {
                // Laplace expansion along the first selected row
                let mut acc = Poly::zero(n);
                let mut rest_cols = Vec::with_capacity(cols.len() - 1);
                for (k, &c) in cols.iter().enumerate() {
                    let e = self.entry(rows[0], c);
                    if e.is_zero() {
                        continue;
                    }
                    rest_cols.clear();
                    rest_cols.extend(cols.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &c)| c));
                    let sub = &(e * &self.minor(&rows[1..], &rest_cols));
                    acc = if k % 2 == 0 { &acc + sub } else { &acc - sub };
                }
                acc
            }
        }
    }

    /// All `k×k` minors, row subsets outermost, both in lexicographic order.
    /// Zero minors are kept.
    pub fn all_minors(&self, k: usize) -> Result<Vec<Poly>, MatrixError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(MatrixError::MinorSize { k, rows: self.rows, cols: self.cols });
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        Ok(row_sets.iter().flat_map(|r| col_sets.iter().map(move |c| (r, c))).map(|(r, c)| self.minor(r, c)).collect())
    }

    pub fn display(&self) -> MatrixDisplay<'_> {
        MatrixDisplay(self)
    }

    /// Entries rendered as strings in the matrix ring.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.display(&self.ring).to_string()).collect()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

pub struct MatrixDisplay<'a>(&'a Matrix);

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.0.to_strings();
        write!(f, "[")?;
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Nonzero, deduplicated generators of an ideal, in first-occurrence order.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealGens {
    ring: Ring,
    gens: Vec<Poly>,
}

impl IdealGens {
    pub fn new(ring: Ring, gens: impl IntoIterator<Item = Poly>) -> Self {
        let mut out: Vec<Poly> = Vec::new();
        for g in gens {
            debug_assert_eq!(g.nvars(), ring.len());
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        IdealGens { ring, gens: out }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Union with another generator list, deduplicated.
    pub fn union(&self, other: &IdealGens) -> IdealGens {
        IdealGens::new(self.ring.clone(), self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.display(&self.ring).to_string()).collect()
    }
}

impl fmt::Debug for IdealGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.to_strings().join(", "))
    }
}

/// Matrix germ `M` with `X = V(t×t minors of M)`.
///
/// Germ matrices must vanish at the origin; matrices produced by
/// perturbation or by sections at a nonzero level are flagged as deformed
/// and exempt.
#[derive(Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    matrix: Matrix,
    minor_size: usize,
    deformed: bool,
}

impl PresentationMatrix {
    pub fn new(matrix: Matrix) -> Result<Self, MatrixError> {
        let zero = vec![Rational::zero(); matrix.ring.len()];
        for i in 0..matrix.rows {
            for j in 0..matrix.cols {
                if !matrix.entry(i, j).eval(&zero).is_zero() {
                    return Err(MatrixError::NotAtOrigin { row: i, col: j });
                }
            }
        }
        let minor_size = matrix.rows.min(matrix.cols);
        Ok(PresentationMatrix { matrix, minor_size, deformed: false })
    }

    /// A member of a deformation; the origin condition is not imposed.
    pub fn deformed(matrix: Matrix) -> Self {
        let minor_size = matrix.rows.min(matrix.cols);
        PresentationMatrix { matrix, minor_size, deformed: true }
    }

    pub fn parse(ring: &Ring, grid: &[&[&str]]) -> Result<Self, MatrixError> {
        PresentationMatrix::new(Matrix::parse(ring, grid)?)
    }

    pub fn with_minor_size(mut self, t: usize) -> Result<Self, MatrixError> {
        if t == 0 || t > self.matrix.rows.min(self.matrix.cols) {
            return Err(MatrixError::MinorSize { k: t, rows: self.matrix.rows, cols: self.matrix.cols });
        }
        self.minor_size = t;
        Ok(self)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Ring {
        &self.matrix.ring
    }

    pub fn nvars(&self) -> usize {
        self.matrix.ring.len()
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        self.matrix.entry(i, j)
    }

    pub fn minor_size(&self) -> usize {
        self.minor_size
    }

    pub fn is_deformed(&self) -> bool {
        self.deformed
    }

    /// True for `(n+1)×n` and `n×(n+1)` shapes with maximal minors.
    pub fn is_codim2_shape(&self) -> bool {
        self.rows().abs_diff(self.cols()) == 1 && self.minor_size == self.rows().min(self.cols())
    }
}

impl fmt::Debug for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix.display())
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix.display())
    }
}

/// All `t×t` minors of `M`, zeros dropped and duplicates removed.
pub fn maximal_minors(m: &PresentationMatrix) -> IdealGens {
    let minors = m.matrix.all_minors(m.minor_size).expect("minor size validated on construction");
    IdealGens::new(m.ring().clone(), minors)
}

/// Signed complementary minors: entry `i` is `(-1)^i` times the maximal minor
/// omitting line `i`, where lines are rows of an `(n+1)×n` matrix or columns
/// of an `n×(n+1)` one.
pub fn signed_minor_vector(m: &PresentationMatrix) -> Result<Vec<Poly>, MatrixError> {
    let (r, c) = (m.rows(), m.cols());
    if r.abs_diff(c) != 1 {
        return Err(MatrixError::Shape(format!("expected (n+1)x n or n x(n+1), got {r}x{c}")));
    }
    let tall = r > c;
    let long = r.max(c);
    let short: Vec<usize> = (0..r.min(c)).collect();
    Ok((0..long)
        .map(|i| {
            let rest: Vec<usize> = (0..long).filter(|&l| l != i).collect();
            let f = if tall { m.matrix.minor(&rest, &short) } else { m.matrix.minor(&short, &rest) };
            if i % 2 == 0 {
                f
            } else {
                -f
            }
        })
        .collect())
}

/// Checks that `f` is the minor ideal of `M` and that the signed minor
/// vector annihilates `M`, i.e. the Hilbert–Burch complex is a complex.
pub fn hilbert_burch_check(m: &PresentationMatrix, f: &IdealGens) -> Result<bool, MatrixError> {
    let signed = signed_minor_vector(m)?;
    if f.ring() != m.ring() {
        return Err(MatrixError::Shape("ideal and matrix live in different rings".into()));
    }
    if maximal_minors(m).gens() != f.gens() {
        return Ok(false);
    }
    let n = m.nvars();
    let tall = m.rows() > m.cols();
    let lines = m.rows().min(m.cols());
    Ok((0..lines).all(|j| {
        let sum = signed.iter().enumerate().fold(Poly::zero(n), |acc, (i, s)| {
            let e = if tall { m.entry(i, j) } else { m.entry(j, i) };
            &acc + &(s * e)
        });
        sum.is_zero()
    }))
}

/// Row `i` is the gradient of generator `i`.
pub fn jacobian(f: &IdealGens) -> Matrix {
    let grid = f.gens().iter().map(Poly::gradient).collect();
    Matrix::new(f.ring().clone(), grid).unwrap_or_else(|_| Matrix {
        ring: f.ring().clone(),
        rows: 0,
        cols: f.ring().len(),
        entries: Vec::new(),
    })
}

/// A linear form `p = Σ c_i x_i` together with `ω = dp`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectionData {
    coeffs: Vec<Rational>,
}

impl ProjectionData {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, MatrixError> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(MatrixError::ZeroForm);
        }
        Ok(ProjectionData { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, MatrixError> {
        ProjectionData::new(coeffs.iter().map(|&c| crate::polycore::rat(c)).collect())
    }

    /// Coordinate function `x_i`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[i] = Rational::one();
        ProjectionData { coeffs }
    }

    /// Reads a homogeneous linear form such as `y - z`.
    pub fn parse(s: &str, ring: &Ring) -> Result<Self, MatrixError> {
        let p = parse_poly(s, ring)?;
        ProjectionData::from_poly(&p, ring)
    }

    pub fn from_poly(p: &Poly, ring: &Ring) -> Result<Self, MatrixError> {
        let mut coeffs = vec![Rational::zero(); p.nvars()];
        for (m, c) in p.terms() {
            let v = match (m.degree(), m.support().next()) {
                (1, Some(v)) => v,
                _ => return Err(MatrixError::NotLinear(p.display(ring).to_string())),
            };
            coeffs[v] = c.clone();
        }
        ProjectionData::new(coeffs)
    }

    /// Uniformly random coefficients in `[-bound, bound]`, not all zero.
    pub fn random(nvars: usize, rng: &mut impl Rng, bound: i64) -> Self {
        loop {
            let c: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-bound..=bound)).collect();
            if let Ok(p) = ProjectionData::from_ints(&c) {
                return p;
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient row of `ω`.
    pub fn omega(&self) -> Vec<Poly> {
        self.coeffs.iter().map(|c| Poly::constant(self.coeffs.len(), c.clone())).collect()
    }

    pub fn linear_form(&self) -> Poly {
        let n = self.coeffs.len();
        self.coeffs.iter().enumerate().fold(Poly::zero(n), |acc, (i, c)| &acc + &Poly::var(n, i).scale(c))
    }

    pub fn render(&self, ring: &Ring) -> String {
        self.linear_form().display(ring).to_string()
    }

    /// Variable eliminated by a section: the highest index with a nonzero coefficient.
    pub fn pivot(&self) -> usize {
        (0..self.coeffs.len()).rev().find(|&i| !self.coeffs[i].is_zero()).expect("nonzero form")
    }

    /// Restriction to the hyperplane `p = level`, expressed in the remaining
    /// variables (the pivot removed).
    pub fn restrict(&self, other: &ProjectionData) -> Result<ProjectionData, MatrixError> {
        let v = self.pivot();
        let cv = &self.coeffs[v];
        let k = &other.coeffs[v] / cv;
        let coeffs = (0..self.coeffs.len()).filter(|&i| i != v).map(|i| &other.coeffs[i] - &(&k * &self.coeffs[i])).collect();
        ProjectionData::new(coeffs)
    }
}

/// Appends the coefficient row of `ω` to `Jf`.
pub fn bordered_matrix(jf: &Matrix, omega: &ProjectionData) -> Result<Matrix, MatrixError> {
    if omega.nvars() != jf.cols() {
        return Err(MatrixError::Shape(format!("form has {} coefficients, Jacobian has {} columns", omega.nvars(), jf.cols())));
    }
    let mut grid = jf.grid();
    grid.push(omega.omega());
    Matrix::new(jf.ring().clone(), grid)
}

/// All `k×k` minors of `a`, deduplicated, zeros dropped.
pub fn kxk_minors(a: &Matrix, k: usize) -> Result<IdealGens, MatrixError> {
    Ok(IdealGens::new(a.ring().clone(), a.all_minors(k)?))
}

/// Section by the hyperplane `p = 0`.
pub fn hyperplane_section(m: &PresentationMatrix, p: &ProjectionData) -> Result<PresentationMatrix, MatrixError> {
    hyperplane_section_at(m, p, &Rational::zero())
}

/// Section by the affine hyperplane `p = level`: the highest-index variable
/// with nonzero coefficient is solved for and substituted. A nonzero level
/// yields a deformed matrix.
pub fn hyperplane_section_at(m: &PresentationMatrix, p: &ProjectionData, level: &Rational) -> Result<PresentationMatrix, MatrixError> {
    let n = m.nvars();
    if p.nvars() != n {
        return Err(MatrixError::Shape(format!("form has {} coefficients, ring has {n} variables", p.nvars())));
    }
    let v = p.pivot();
    let cv = &p.coeffs[v];
    let mut image = Poly::constant(n, level / cv);
    for i in (0..n).filter(|&i| i != v) {
        image = &image - &Poly::var(n, i).scale(&(&p.coeffs[i] / cv));
    }
    let map: Vec<usize> = (0..n).map(|i| if i < v { i } else { i.saturating_sub(1) }).collect();
    let ring = m.ring().without(v);
    let matrix = m.matrix.map_entries(ring, |e| Ok(e.substitute(&[(v, image.clone())])?.remap(n - 1, &map)))?;
    let out = if m.deformed || !level.is_zero() { PresentationMatrix::deformed(matrix) } else { PresentationMatrix::new(matrix)? };
    out.with_minor_size(m.minor_size)
}

/// Perturbation of a base matrix by a matrix of polynomials in the ring
/// variables and named parameters.
#[derive(Clone, Debug)]
pub struct DeformationTemplate {
    base: PresentationMatrix,
    params: Vec<String>,
    perturbation: Matrix,
    assignment: BTreeMap<String, Rational>,
}

impl DeformationTemplate {
    /// `perturbation` lives in the base ring extended by `params` (appended
    /// in order) and must vanish when every parameter is zero.
    pub fn new(base: PresentationMatrix, params: Vec<String>, perturbation: Matrix, assignment: BTreeMap<String, Rational>) -> Result<Self, MatrixError> {
        let ext = base.ring().extended(&params)?;
        if perturbation.ring() != &ext || perturbation.rows() != base.rows() || perturbation.cols() != base.cols() {
            return Err(MatrixError::Shape("perturbation must match the base matrix shape and ring".into()));
        }
        let n = base.nvars();
        let zeros: Vec<(usize, Poly)> = (0..params.len()).map(|k| (n + k, Poly::zero(ext.len()))).collect();
        for i in 0..base.rows() {
            for j in 0..base.cols() {
                if !perturbation.entry(i, j).substitute(&zeros)?.is_zero() {
                    return Err(MatrixError::TemplateNotCentered { row: i, col: j });
                }
            }
        }
        Ok(DeformationTemplate { base, params, perturbation, assignment })
    }

    /// Parses perturbation strings; parameter names become extra variables.
    pub fn parse(base: PresentationMatrix, params: &[&str], grid: &[&[&str]], assignment: &[(&str, Rational)]) -> Result<Self, MatrixError> {
        let ext = base.ring().extended(params)?;
        let perturbation = Matrix::parse(&ext, grid)?;
        let assignment = assignment.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        DeformationTemplate::new(base, params.iter().map(|s| s.to_string()).collect(), perturbation, assignment)
    }

    pub fn base(&self) -> &PresentationMatrix {
        &self.base
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn perturbation(&self) -> &Matrix {
        &self.perturbation
    }

    pub fn assignment(&self) -> &BTreeMap<String, Rational> {
        &self.assignment
    }

    pub fn with_assignment(mut self, name: &str, value: Rational) -> Self {
        self.assignment.insert(name.to_string(), value);
        self
    }

    /// The deformed member at the current assignment.
    pub fn apply(&self) -> Result<PresentationMatrix, MatrixError> {
        let n = self.base.nvars();
        let ext_len = self.perturbation.ring().len();
        let mut subst = Vec::with_capacity(self.params.len());
        for (k, name) in self.params.iter().enumerate() {
            let v = self.assignment.get(name).ok_or_else(|| MatrixError::MissingParameter(name.clone()))?;
            subst.push((n + k, Poly::constant(ext_len, v.clone())));
        }
        let map: Vec<usize> = (0..ext_len).map(|i| i.min(n.saturating_sub(1))).collect();
        let mut grid = Vec::with_capacity(self.base.rows());
        for i in 0..self.base.rows() {
            let mut row = Vec::with_capacity(self.base.cols());
            for j in 0..self.base.cols() {
                let d = self.perturbation.entry(i, j).substitute(&subst)?.remap(n, &map);
                row.push(self.base.entry(i, j) + &d);
            }
            grid.push(row);
        }
        let m = Matrix::new(self.base.ring().clone(), grid)?;
        PresentationMatrix::deformed(m).with_minor_size(self.base.minor_size())
    }
}

/// How a smoothing is produced.
#[derive(Clone, Debug)]
pub enum Perturbation {
    /// Random nonzero constants in `[-B, B]` added to every entry.
    Auto,
    Template(DeformationTemplate),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationKind {
    Auto,
    Template,
}

impl Perturbation {
    pub fn kind(&self) -> PerturbationKind {
        match self {
            Perturbation::Auto => PerturbationKind::Auto,
            Perturbation::Template(_) => PerturbationKind::Template,
        }
    }
}

/// Perturbs `M`. Auto mode draws one constant per entry in row-major order
/// from a ChaCha8 stream seeded with `seed` (scale λ = 1); template mode
/// ignores the seed.
pub fn perturb(m: &PresentationMatrix, mode: &Perturbation, seed: u64) -> Result<PresentationMatrix, MatrixError> {
    match mode {
        Perturbation::Auto => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = m.nvars();
            let matrix = m.matrix.map_entries(m.ring().clone(), |e| {
                let c = nonzero_in_range(&mut rng, PERTURBATION_BOUND);
                Ok(e + &Poly::from_int(n, c))
            })?;
            PresentationMatrix::deformed(matrix).with_minor_size(m.minor_size)
        }
        Perturbation::Template(t) => {
            if t.base() != m {
                return Err(MatrixError::Shape("template base differs from the matrix".into()));
            }
            t.apply()
        }
    }
}

/// Uniform draw from `{-b..b} \ {0}`.
pub fn nonzero_in_range(rng: &mut impl Rng, b: i64) -> i64 {
    let k = rng.gen_range(0..2 * b);
    if k < b {
        k - b
    } else {
        k - b + 1
    }
}
