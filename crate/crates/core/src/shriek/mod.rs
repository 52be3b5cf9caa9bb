//! The Koszul dual `B_n^!` of a homogenized G-algebra.
//!
//! `B_n = T(V)/⟨R⟩` with `V = span(X_1, ..., X_n, Z)` and `R` spanned by the
//! `n(n-1)/2` homogenized commutation relations plus the `n` relations
//! `X_i Z - Z X_i`. The dual `B_n^! = T(V*)/⟨R^⊥⟩` is built degree by degree
//! by row reduction; basis words are the lexicographically least words that
//! survive (letters ordered `x1 < ... < xn < z`).
//!
//! The z-free basis words span the subalgebra `C_n^!`, the quantized exterior
//! algebra, and the words ending in `z` span the complement `C_n^! z`.

mod algebra;
mod nakayama;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

pub use algebra::GradedAlgebra;
pub use nakayama::{NakayamaFlags, NakayamaMap};

use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::presentation::{Flavor, GPresentation};
use crate::rewrite::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShriekError {
    #[error("expected a homogenized presentation, got {0}")]
    Flavor(Flavor),
    #[error("degree {degree}: dual has dimension {found}, expected {expected}")]
    DimensionMismatch { degree: usize, expected: u64, found: usize },
    #[error("the z-free words do not span a subalgebra")]
    SubalgebraNotClosed,
    #[error("element has {found} coordinates, the algebra has dimension {expected}")]
    BasisMismatch { expected: usize, found: usize },
    #[error("degrees {0} and {1} are not complementary")]
    DegreeMismatch(usize, usize),
    #[error("socle pairing is degenerate in degree {0}")]
    Degenerate(usize),
    #[error("Nakayama certification failed: {0}")]
    Certification(NakayamaFlags),
    #[error("malformed algebra: {0}")]
    Malformed(String),
}

/// `B_n^!` together with its subalgebra `C_n^!` and socle data.
#[derive(Debug, Clone)]
pub struct ShriekAlgebra {
    pres: Arc<GPresentation>,
    full: Arc<GradedAlgebra>,
    sub: Arc<GradedAlgebra>,
    /// `C_n^!` basis index -> `B_n^!` basis index
    sub_embedding: Vec<usize>,
    in_sub: Vec<bool>,
    socle: usize,
    socle_scale: Scalar,
    relation_dim: usize,
    dual_relation_dim: usize,
}

/// Index of the letter `X_a X_b` in `V ⊗ V`.
fn pair(nv: usize, a: usize, b: usize) -> usize {
    a * nv + b
}

impl ShriekAlgebra {
    pub fn build(pres: &Arc<GPresentation>) -> Result<ShriekAlgebra, ShriekError> {
        if pres.flavor() != Flavor::Homogenized {
            return Err(ShriekError::Flavor(pres.flavor()));
        }
        let field = pres.field();
        let n = pres.n();
        let nv = n + 1;
        let z = n;

        let mut relations = Vec::new();
        for i in 0..n {
            for j in 0..i {
                let mut r = vec![field.zero(); nv * nv];
                r[pair(nv, i, j)] = field.one();
                r[pair(nv, j, i)] = -pres.b(i, j);
                for (k, c) in pres.linear_terms(i, j) {
                    r[pair(nv, z, k)] = &r[pair(nv, z, k)] + c;
                }
                r[pair(nv, z, z)] = pres.d(i, j);
                relations.push(r);
            }
        }
        for i in 0..n {
            let mut r = vec![field.zero(); nv * nv];
            r[pair(nv, i, z)] = field.one();
            r[pair(nv, z, i)] = -field.one();
            relations.push(r);
        }
        let rel = Matrix::from_rows(field, nv * nv, relations);
        let relation_dim = rel.rank();
        let dual_relations: Vec<Vec<(usize, usize, Scalar)>> = rel
            .kernel()
            .basis
            .into_iter()
            .map(|v| {
                v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p / nv, p % nv, c)).collect()
            })
            .collect();
        let dual_relation_dim = dual_relations.len();

        let (words, reductions) = quadratic_dual_pieces(field, nv, &dual_relations, n + 2);
        for (d, ws) in words.iter().enumerate() {
            let expected = binomial(n as u64, d as u64) + if d == 0 { 0 } else { binomial(n as u64, d as u64 - 1) };
            if ws.len() as u64 != expected {
                return Err(ShriekError::DimensionMismatch { degree: d, expected, found: ws.len() });
            }
        }

        // global basis and structure constants
        let top = n + 1;
        let mut offsets = vec![0; top + 2];
        for d in 0..=top {
            offsets[d + 1] = offsets[d] + words[d].len();
        }
        let basis: Vec<Vec<usize>> = words[..=top].iter().flatten().cloned().collect();
        let degree_of: Vec<usize> = basis.iter().map(Vec::len).collect();
        let dim = basis.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut deg = degree_of[a];
                let mut cur: Vec<(usize, Scalar)> = vec![(a - offsets[deg], field.one())];
                for &letter in &basis[b] {
                    if deg + 1 > top {
                        cur.clear();
                        break;
                    }
                    let mut next = vec![field.zero(); words[deg + 1].len()];
                    for (w, c) in &cur {
                        for (t, x) in &reductions[deg + 1][&(*w, letter)] {
                            next[*t] = &next[*t] + &(c * x);
                        }
                    }
                    deg += 1;
                    cur = next.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                }
                table[a][b] = cur.into_iter().map(|(i, c)| (offsets[deg] + i, c)).collect();
            }
        }
        let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        names.push("z".into());
        let full = GradedAlgebra::from_table(field, names.clone(), basis.clone(), table.clone())?;

        // C^!: z-free words
        let in_sub: Vec<bool> = basis.iter().map(|w| !w.contains(&z)).collect();
        let sub_embedding: Vec<usize> = (0..dim).filter(|&i| in_sub[i]).collect();
        let mut sub_index = HashMap::new();
        for (si, &fi) in sub_embedding.iter().enumerate() {
            sub_index.insert(fi, si);
        }
        let mut sub_table = Vec::with_capacity(sub_embedding.len());
        for &a in &sub_embedding {
            let mut row = Vec::with_capacity(sub_embedding.len());
            for &b in &sub_embedding {
                let mut prod = Vec::new();
                for (k, c) in &table[a][b] {
                    match sub_index.get(k) {
                        Some(&sk) => prod.push((sk, c.clone())),
                        None => return Err(ShriekError::SubalgebraNotClosed),
                    }
                }
                row.push(prod);
            }
            sub_table.push(row);
        }
        let sub_basis = sub_embedding.iter().map(|&i| basis[i].clone()).collect();
        let sub = GradedAlgebra::from_table(field, names[..n].to_vec(), sub_basis, sub_table)?;

        let socle = dim - 1;
        // normalize so that x1 x2 ... xn z pairs to one
        let rho: Vec<usize> = (0..=n).collect();
        let mut rho_vec = full.one();
        for &l in &rho {
            rho_vec = full.mul(&rho_vec, &full.basis_vector(full.gen_basis_index(l)))?;
        }
        let socle_scale = if rho_vec[socle].is_zero() { field.one() } else { rho_vec[socle].inv() };

        Ok(ShriekAlgebra {
            pres: pres.clone(),
            full: Arc::new(full),
            sub: Arc::new(sub),
            sub_embedding,
            in_sub,
            socle,
            socle_scale,
            relation_dim,
            dual_relation_dim,
        })
    }

    pub fn presentation(&self) -> &Arc<GPresentation> {
        &self.pres
    }

    pub fn n(&self) -> usize {
        self.pres.n()
    }

    /// `B_n^!`
    pub fn full(&self) -> &Arc<GradedAlgebra> {
        &self.full
    }

    /// `C_n^!`
    pub fn sub(&self) -> &Arc<GradedAlgebra> {
        &self.sub
    }

    pub fn field(&self) -> Field {
        self.pres.field()
    }

    /// Generator index of `z` in `B_n^!`.
    pub fn z_gen(&self) -> usize {
        self.n()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.full.dims()
    }

    /// `(dim R, dim R^⊥)`
    pub fn relation_dims(&self) -> (usize, usize) {
        (self.relation_dim, self.dual_relation_dim)
    }

    /// Per degree, the dimensions of the z-free part and of its complement.
    pub fn split_dims(&self) -> Vec<(usize, usize)> {
        (0..=self.n() + 1)
            .map(|d| {
                let (s, e) = self.full.degree_range(d);
                let c = (s..e).filter(|&i| self.in_sub[i]).count();
                (c, e - s - c)
            })
            .collect()
    }

    /// Basis indices of `B_n^!` spanning `(C_n^!)_d`.
    pub fn c_sub_indices(&self, d: usize) -> Vec<usize> {
        let (s, e) = self.full.degree_range(d);
        (s..e).filter(|&i| self.in_sub[i]).collect()
    }

    pub fn is_c_sub(&self, idx: usize) -> bool {
        self.in_sub[idx]
    }

    pub fn sub_embedding(&self) -> &[usize] {
        &self.sub_embedding
    }

    /// Image of a `C_n^!` element in `B_n^!`.
    pub fn embed_sub(&self, c: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.full.zero();
        for (si, &fi) in self.sub_embedding.iter().enumerate() {
            out[fi] = c[si].clone();
        }
        out
    }

    /// Splits `a` along `B_n^! = C_n^! ⊕ C_n^! z`.
    pub fn c_sub_projection(&self, a: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Scalar>), ShriekError> {
        self.check_len(a)?;
        let mut c = self.full.zero();
        let mut zc = self.full.zero();
        for (i, x) in a.iter().enumerate() {
            if self.in_sub[i] {
                c[i] = x.clone();
            } else {
                zc[i] = x.clone();
            }
        }
        Ok((c, zc))
    }

    fn check_len(&self, a: &[Scalar]) -> Result<(), ShriekError> {
        if a.len() != self.full.dim() {
            return Err(ShriekError::BasisMismatch { expected: self.full.dim(), found: a.len() });
        }
        Ok(())
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>, ShriekError> {
        self.full.mul(a, b)
    }

    /// Basis index of the top-degree element.
    pub fn socle_index(&self) -> usize {
        self.socle
    }

    pub fn socle_label(&self) -> String {
        self.full.label(self.socle)
    }

    /// Copy whose socle functional is multiplied by `lambda`.
    pub fn with_socle_scale(&self, lambda: &Scalar) -> ShriekAlgebra {
        assert!(!lambda.is_zero(), "socle scale must be nonzero");
        ShriekAlgebra { socle_scale: &self.socle_scale * lambda, ..self.clone() }
    }

    /// `β(a, b)`: the socle coefficient of `a * b`, for `a` homogeneous of
    /// degree `j` and `b` of degree `n + 1 - j`.
    pub fn socle_pairing(&self, a: &[Scalar], b: &[Scalar]) -> Result<Scalar, ShriekError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let (da, db) = (self.homogeneous_degree(a)?, self.homogeneous_degree(b)?);
        let top = self.n() + 1;
        match (da, db) {
            (Some(x), Some(y)) if x + y != top => return Err(ShriekError::DegreeMismatch(x, y)),
            _ => {}
        }
        let p = self.full.mul(a, b)?;
        Ok(&p[self.socle] * &self.socle_scale)
    }

    fn homogeneous_degree(&self, a: &[Scalar]) -> Result<Option<usize>, ShriekError> {
        let mut deg = None;
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let d = self.full.degree_of(i);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(ShriekError::DegreeMismatch(e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Gram matrix of `β` with rows indexed by degree `j` and columns by
    /// degree `n + 1 - j`.
    pub fn gram(&self, j: usize) -> Matrix {
        let top = self.n() + 1;
        assert!(j <= top);
        let (rs, re) = self.full.degree_range(j);
        let (cs, ce) = self.full.degree_range(top - j);
        let mut g = Matrix::zeros(self.field(), re - rs, ce - cs);
        for a in rs..re {
            for b in cs..ce {
                let v = self
                    .full
                    .product_of_basis(a, b)
                    .iter()
                    .find(|(k, _)| *k == self.socle)
                    .map(|(_, c)| c * &self.socle_scale)
                    .unwrap_or_else(|| self.field().zero());
                g.set(a - rs, b - cs, v);
            }
        }
        g
    }

    /// Human-readable description: dimensions, decomposition, socle and
    /// optionally the structure constants.
    pub fn dump(&self, constants: bool) -> String {
        let mut s = String::new();
        let dims: Vec<String> = self.dims().iter().map(ToString::to_string).collect();
        let split = self.split_dims();
        let cs: Vec<String> = split.iter().map(|p| p.0.to_string()).collect();
        let zs: Vec<String> = split.iter().map(|p| p.1.to_string()).collect();
        let _ = writeln!(s, "fingerprint: {}", self.full.fingerprint());
        let _ = writeln!(s, "relations: dim R = {}, dim R_perp = {}", self.relation_dim, self.dual_relation_dim);
        let _ = writeln!(s, "dims: {}", dims.join(" "));
        let _ = writeln!(s, "C! part: {}", cs.join(" "));
        let _ = writeln!(s, "C!z part: {}", zs.join(" "));
        let _ = writeln!(s, "total: {}", self.full.dim());
        let _ = writeln!(s, "socle: {}", self.socle_label());
        if constants {
            s.push_str(&self.full.constants_text());
        }
        s
    }
}

/// Builds `T(V*)/⟨R^⊥⟩` up to `max_degree`: for each degree the surviving
/// basis words (ascending lex) and the reduction of every `w * letter` with
/// `w` a basis word of the previous degree.
#[allow(clippy::type_complexity)]
fn quadratic_dual_pieces(
    field: Field,
    nv: usize,
    dual_relations: &[Vec<(usize, usize, Scalar)>],
    max_degree: usize,
) -> (Vec<Vec<Vec<usize>>>, Vec<HashMap<(usize, usize), Vec<(usize, Scalar)>>>) {
    let mut words: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    let mut reductions: Vec<HashMap<(usize, usize), Vec<(usize, Scalar)>>> = vec![HashMap::new()];
    words.push((0..nv).map(|l| vec![l]).collect());
    reductions.push((0..nv).map(|l| ((0, l), vec![(l, field.one())])).collect());

    for d in 2..=max_degree {
        // candidate words w*letter, columns sorted descending lex
        let prev = &words[d - 1];
        let mut cands: Vec<(Vec<usize>, usize, usize)> = Vec::new();
        for (wi, w) in prev.iter().enumerate() {
            for l in 0..nv {
                let mut word = w.clone();
                word.push(l);
                cands.push((word, wi, l));
            }
        }
        cands.sort_by(|a, b| b.0.cmp(&a.0));
        let col_of: HashMap<(usize, usize), usize> =
            cands.iter().enumerate().map(|(c, (_, wi, l))| ((*wi, *l), c)).collect();

        let mut rows = Vec::new();
        for ui in 0..words[d - 2].len() {
            for rel in dual_relations {
                let mut row = vec![field.zero(); cands.len()];
                for (a, b, coeff) in rel {
                    if let Some(red) = reductions[d - 1].get(&(ui, *a)) {
                        for (w, x) in red {
                            let c = col_of[&(*w, *b)];
                            row[c] = &row[c] + &(coeff * x);
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let mut m = Matrix::from_rows(field, cands.len(), rows);
        let pivots = m.rref();
        let mut is_pivot = vec![false; cands.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut surviving: Vec<usize> = (0..cands.len()).filter(|&c| !is_pivot[c]).collect();
        surviving.sort_by(|&a, &b| cands[a].0.cmp(&cands[b].0));
        let new_index: HashMap<usize, usize> = surviving.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        let mut red = HashMap::new();
        for (c, (_, wi, l)) in cands.iter().enumerate() {
            let v = if let Some(&i) = new_index.get(&c) {
                vec![(i, field.one())]
            } else {
                let r = pivots.iter().position(|&p| p == c).expect("pivot row");
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(q, x)| !is_pivot[*q] && !x.is_zero())
                    .map(|(q, x)| (new_index[&q], -x))
                    .collect()
            };
            red.insert((*wi, *l), v);
        }
        words.push(surviving.iter().map(|&c| cands[c].0.clone()).collect());
        reductions.push(red);
    }
    (words, reductions)
}
