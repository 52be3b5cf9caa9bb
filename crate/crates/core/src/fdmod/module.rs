use std::sync::Arc;

use super::ModuleError;
use crate::field::{Field, Scalar};
use crate::linalg::{complement_coordinates, Matrix};
use crate::shriek::GradedAlgebra;

/// A finite-dimensional graded left module over a [`GradedAlgebra`], given by
/// the action of each generator as a matrix `M_d -> M_{d+1}` in every degree.
///
/// Zero components at either end are trimmed, so equal modules have equal
/// representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    min_degree: i32,
    dims: Vec<usize>,
    /// `actions[g][k]`: degree `min_degree + k` to the next
    actions: Vec<Vec<Matrix>>,
}

/// A degree-two relation that does not act as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: usize,
    pub degree: i32,
}

impl GradedModule {
    /// Validates shapes: `actions[g][k]` must be `dims[k+1] x dims[k]`
    /// (zero rows past the last degree).
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        min_degree: i32,
        dims: Vec<usize>,
        actions: Vec<Vec<Matrix>>,
    ) -> Result<Self, ModuleError> {
        if actions.len() != algebra.num_gens() {
            return Err(ModuleError::GeneratorCount { expected: algebra.num_gens(), found: actions.len() });
        }
        for (g, per_degree) in actions.iter().enumerate() {
            if per_degree.len() != dims.len() {
                return Err(ModuleError::Shape {
                    generator: algebra.gen_names()[g].clone(),
                    degree: min_degree,
                    expected: (dims.len(), 0),
                    found: (per_degree.len(), 0),
                });
            }
            for (k, m) in per_degree.iter().enumerate() {
                let rows = dims.get(k + 1).copied().unwrap_or(0);
                if (m.nrows(), m.ncols()) != (rows, dims[k]) {
                    return Err(ModuleError::Shape {
                        generator: algebra.gen_names()[g].clone(),
                        degree: min_degree + k as i32,
                        expected: (rows, dims[k]),
                        found: (m.nrows(), m.ncols()),
                    });
                }
            }
        }
        let mut m = GradedModule { algebra, min_degree, dims, actions };
        m.trim();
        Ok(m)
    }

    fn trim(&mut self) {
        let lead = self.dims.iter().take_while(|&&d| d == 0).count();
        if lead == self.dims.len() {
            self.min_degree = 0;
            self.dims.clear();
            for a in &mut self.actions {
                a.clear();
            }
            return;
        }
        let trail = self.dims.iter().rev().take_while(|&&d| d == 0).count();
        let keep = self.dims.len() - trail;
        self.dims = self.dims[lead..keep].to_vec();
        for a in &mut self.actions {
            *a = a[lead..keep].to_vec();
            if let Some(last) = a.last_mut() {
                // the map out of the last kept degree now lands in nothing
                *last = Matrix::zeros(last.field(), 0, last.ncols());
            }
        }
        self.min_degree += lead as i32;
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Self {
        let g = algebra.num_gens();
        GradedModule { algebra, min_degree: 0, dims: Vec::new(), actions: vec![Vec::new(); g] }
    }

    /// The simple module `k` concentrated in `degree`.
    pub fn simple(algebra: Arc<GradedAlgebra>, degree: i32) -> Self {
        let f = algebra.field();
        let g = algebra.num_gens();
        GradedModule { algebra, min_degree: degree, dims: vec![1], actions: vec![vec![Matrix::zeros(f, 0, 1)]; g] }
    }

    /// The algebra as a module over itself, generated in degree 0.
    pub fn regular(algebra: Arc<GradedAlgebra>) -> Self {
        super::FreeModule::new(algebra, vec![0]).to_module()
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn min_degree(&self) -> i32 {
        self.min_degree
    }

    /// One past the highest nonzero degree.
    pub fn end_degree(&self) -> i32 {
        self.min_degree + self.dims.len() as i32
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.min_degree..self.end_degree()
    }

    pub fn dim(&self, d: i32) -> usize {
        self.index(d).map_or(0, |k| self.dims[k])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `(degree, dimension)` for every nonzero degree range entry.
    pub fn dimension_vector(&self) -> Vec<(i32, usize)> {
        self.degrees().map(|d| (d, self.dim(d))).collect()
    }

    fn index(&self, d: i32) -> Option<usize> {
        let k = d - self.min_degree;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    /// Action of generator `g` from degree `d` to `d + 1`.
    pub fn action(&self, g: usize, d: i32) -> Matrix {
        match self.index(d) {
            Some(k) if k + 1 < self.dims.len() => self.actions[g][k].clone(),
            _ => Matrix::zeros(self.field(), self.dim(d + 1), self.dim(d)),
        }
    }

    fn action_ref(&self, g: usize, d: i32) -> Option<&Matrix> {
        self.index(d).filter(|&k| k + 1 < self.dims.len()).map(|k| &self.actions[g][k])
    }

    /// `g * v` for `v` in degree `d`.
    pub fn act_vec(&self, g: usize, d: i32, v: &[Scalar]) -> Vec<Scalar> {
        match self.action_ref(g, d) {
            Some(m) => m.mul_vec(v),
            None => vec![self.field().zero(); self.dim(d + 1)],
        }
    }

    /// `e * v` for the basis element `e` of the algebra and `v` in degree `d`.
    pub fn act_basis_vec(&self, e: usize, d: i32, v: &[Scalar]) -> Vec<Scalar> {
        match self.algebra.split(e) {
            None => v.to_vec(),
            Some((g, rest)) => {
                let inner = self.act_basis_vec(rest, d, v);
                let rest_deg = self.algebra.degree_of(rest) as i32;
                self.act_vec(g, d + rest_deg, &inner)
            }
        }
    }

    /// Images `e * v` for every basis element `e`, indexed by basis index.
    pub fn orbit(&self, d: i32, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let alg = &self.algebra;
        let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(alg.dim());
        for e in 0..alg.dim() {
            let img = match alg.split(e) {
                None => v.to_vec(),
                Some((g, rest)) => {
                    let rest_deg = alg.degree_of(rest) as i32;
                    self.act_vec(g, d + rest_deg, &out[rest])
                }
            };
            out.push(img);
        }
        out
    }

    /// Action of an algebra element on degree `d`, as a matrix into degree
    /// `d + deg`. The element must be homogeneous of degree `deg`.
    pub fn element_action(&self, a: &[Scalar], deg: usize, d: i32) -> Matrix {
        let src = self.dim(d);
        let tgt = self.dim(d + deg as i32);
        let mut m = Matrix::zeros(self.field(), tgt, src);
        for j in 0..src {
            let mut e = vec![self.field().zero(); src];
            e[j] = self.field().one();
            let orbit = self.orbit(d, &e);
            for (idx, c) in a.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                debug_assert_eq!(self.algebra.degree_of(idx), deg);
                for (r, x) in orbit[idx].iter().enumerate() {
                    if !x.is_zero() {
                        m.set(r, j, m.get(r, j) + &(c * x));
                    }
                }
            }
        }
        m
    }

    /// Relations of the algebra that fail to act as zero.
    pub fn check(&self) -> Vec<RelationViolation> {
        let mut out = Vec::new();
        for (ri, rel) in self.algebra.relations().iter().enumerate() {
            for d in self.degrees() {
                let mut sum = Matrix::zeros(self.field(), self.dim(d + 2), self.dim(d));
                for (u, v, c) in rel {
                    let prod = self.action(*u, d + 1).mul(&self.action(*v, d));
                    sum = sum.add(&prod.scale(c));
                }
                if !sum.is_zero() {
                    out.push(RelationViolation { relation: ri, degree: d });
                }
            }
        }
        out
    }

    /// Moves every component up by `k` degrees: `M.shifted(k)_{d+k} = M_d`.
    pub fn shifted(&self, k: i32) -> GradedModule {
        let mut m = self.clone();
        if !m.is_zero() {
            m.min_degree += k;
        }
        m
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule, ModuleError> {
        super::check_same_algebra(&self.algebra, &other.algebra)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.end_degree().max(other.end_degree());
        let dims: Vec<usize> = (lo..hi).map(|d| self.dim(d) + other.dim(d)).collect();
        let f = self.field();
        let actions = (0..self.algebra.num_gens())
            .map(|g| {
                (lo..hi)
                    .map(|d| {
                        let (a, b) = (self.action(g, d), other.action(g, d));
                        let mut m = Matrix::zeros(f, a.nrows() + b.nrows(), a.ncols() + b.ncols());
                        for i in 0..a.nrows() {
                            for j in 0..a.ncols() {
                                m.set(i, j, a.get(i, j).clone());
                            }
                        }
                        for i in 0..b.nrows() {
                            for j in 0..b.ncols() {
                                m.set(a.nrows() + i, a.ncols() + j, b.get(i, j).clone());
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(self.algebra.clone(), lo, dims, actions)
    }

    /// Same underlying spaces with generator actions replaced.
    pub(crate) fn with_actions(&self, algebra: Arc<GradedAlgebra>, actions: Vec<Vec<Matrix>>) -> GradedModule {
        let mut m = GradedModule { algebra, min_degree: self.min_degree, dims: self.dims.clone(), actions };
        m.trim();
        m
    }

    pub(crate) fn raw_actions(&self) -> &[Vec<Matrix>] {
        &self.actions
    }

    /// `JM` in degree `d`: the span of all generator images from `d - 1`.
    pub fn radical_span(&self, d: i32) -> Vec<Vec<Scalar>> {
        let mut span = Vec::new();
        for g in 0..self.algebra.num_gens() {
            if let Some(m) = self.action_ref(g, d - 1) {
                for c in 0..m.ncols() {
                    span.push(m.column(c));
                }
            }
        }
        span
    }

    /// Minimal generators: per degree, coordinate vectors completing `JM` to
    /// a basis. Returned as `(degree, vector)` in ascending degree.
    pub fn top(&self) -> Vec<(i32, Vec<Scalar>)> {
        let f = self.field();
        let mut gens = Vec::new();
        for d in self.degrees() {
            let dim = self.dim(d);
            for c in complement_coordinates(f, dim, &self.radical_span(d)) {
                let mut v = vec![f.zero(); dim];
                v[c] = f.one();
                gens.push((d, v));
            }
        }
        gens
    }

    /// Degrees of the minimal generators, ascending.
    pub fn generator_degrees(&self) -> Vec<i32> {
        self.top().into_iter().map(|(d, _)| d).collect()
    }

    /// Smallest submodule containing the given homogeneous vectors, as a
    /// reduced spanning set per degree.
    pub fn submodule(&self, gens: &[(i32, Vec<Scalar>)]) -> Submodule {
        let f = self.field();
        let mut spans: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); self.dims.len()];
        for d in self.degrees() {
            let k = self.index(d).unwrap();
            let mut vecs: Vec<Vec<Scalar>> = gens.iter().filter(|(e, _)| *e == d).map(|(_, v)| v.clone()).collect();
            if k > 0 {
                for g in 0..self.algebra.num_gens() {
                    for v in &spans[k - 1] {
                        vecs.push(self.act_vec(g, d - 1, v));
                    }
                }
            }
            let mut m = Matrix::from_rows(f, self.dims[k], vecs);
            m.rref();
            spans[k] = m.rows().to_vec();
        }
        Submodule { min_degree: self.min_degree, rows: spans }
    }

    /// `M / U`.
    pub fn quotient(&self, sub: &Submodule) -> GradedModule {
        let f = self.field();
        let complements: Vec<Vec<usize>> = self
            .degrees()
            .map(|d| {
                let k = self.index(d).unwrap();
                complement_coordinates(f, self.dims[k], &sub.rows[k])
            })
            .collect();
        let dims: Vec<usize> = complements.iter().map(Vec::len).collect();
        let actions = (0..self.algebra.num_gens())
            .map(|g| {
                (0..self.dims.len())
                    .map(|k| {
                        let d = self.min_degree + k as i32;
                        let rows = complements.get(k + 1).map_or(0, Vec::len);
                        let mut m = Matrix::zeros(f, rows, complements[k].len());
                        if rows > 0 {
                            for (j, &c) in complements[k].iter().enumerate() {
                                let mut e = vec![f.zero(); self.dims[k]];
                                e[c] = f.one();
                                let w = sub.reduce(k + 1, self.act_vec(g, d, &e));
                                for (i, &c2) in complements[k + 1].iter().enumerate() {
                                    m.set(i, j, w[c2].clone());
                                }
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let mut q = GradedModule { algebra: self.algebra.clone(), min_degree: self.min_degree, dims, actions };
        q.trim();
        q
    }
}

/// A graded subspace stored as reduced row echelon spanning rows per degree.
#[derive(Debug, Clone)]
pub struct Submodule {
    min_degree: i32,
    rows: Vec<Vec<Vec<Scalar>>>,
}

impl Submodule {
    pub fn dim(&self, d: i32) -> usize {
        let k = d - self.min_degree;
        if k < 0 {
            return 0;
        }
        self.rows.get(k as usize).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Clears the pivot coordinates of `v` using the spanning rows at index `k`.
    fn reduce(&self, k: usize, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for row in &self.rows[k] {
            let p = row.iter().position(|x| !x.is_zero()).expect("reduced row");
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a = &*a - &(&f * b);
                    }
                }
            }
        }
        v
    }
}
