use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::ShriekError;
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, Matrix};

/// A finite-dimensional connected graded algebra generated in degree one,
/// stored by structure constants.
///
/// Every basis element is a word in the generators and equals the product of
/// its letters; the set of basis words is closed under dropping the first
/// letter, which lets module code evaluate basis elements letter by letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: Field,
    gen_names: Vec<String>,
    basis: Vec<Vec<usize>>,
    degree_start: Vec<usize>,
    /// `table[a][b]` = sparse product of basis elements `a` and `b`
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// for degree >= 1: first letter and the basis index of the remaining word
    split: Vec<Option<(usize, usize)>>,
    relations: Vec<Vec<(usize, usize, Scalar)>>,
    fingerprint: String,
}

impl GradedAlgebra {
    /// `basis` must be sorted by word length, start with the empty word and
    /// list the generators (as one-letter words, in order) in degree one.
    pub fn from_table(
        field: Field,
        gen_names: Vec<String>,
        basis: Vec<Vec<usize>>,
        table: Vec<Vec<Vec<(usize, Scalar)>>>,
    ) -> Result<Self, ShriekError> {
        let g = gen_names.len();
        let bad = |msg: String| Err(ShriekError::Malformed(msg));
        if basis.first().map(Vec::len) != Some(0) {
            return bad("basis must start with the unit".into());
        }
        if basis.windows(2).any(|w| w[0].len() > w[1].len()) {
            return bad("basis not sorted by degree".into());
        }
        for i in 0..g {
            if basis.get(1 + i) != Some(&vec![i]) {
                return bad(format!("generator {i} missing from degree one"));
            }
        }
        let top = basis.last().map_or(0, Vec::len);
        let degree_start: Vec<usize> =
            (0..=top + 1).map(|d| basis.iter().position(|w| w.len() >= d).unwrap_or(basis.len())).collect();
        let mut split = vec![None; basis.len()];
        for (idx, w) in basis.iter().enumerate().skip(1) {
            let rest = &w[1..];
            match basis.iter().position(|v| v == rest) {
                Some(r) => split[idx] = Some((w[0], r)),
                None => return bad(format!("basis word {w:?} has a non-basis suffix")),
            }
        }
        let mut alg = GradedAlgebra {
            field,
            gen_names,
            basis,
            degree_start,
            table,
            split,
            relations: Vec::new(),
            fingerprint: String::new(),
        };
        alg.relations = alg.compute_relations();
        alg.fingerprint = alg.compute_fingerprint();
        Ok(alg)
    }

    /// Kernel of `gens ⊗ gens -> A_2`.
    fn compute_relations(&self) -> Vec<Vec<(usize, usize, Scalar)>> {
        let g = self.num_gens();
        let (s2, e2) = self.degree_range(2);
        let mut m = Matrix::zeros(self.field, e2 - s2, g * g);
        for u in 0..g {
            for v in 0..g {
                for (idx, c) in &self.table[1 + u][1 + v] {
                    m.set(idx - s2, u * g + v, c.clone());
                }
            }
        }
        m.kernel()
            .basis
            .into_iter()
            .map(|vec| {
                vec.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(pos, c)| (pos / g, pos % g, c))
                    .collect()
            })
            .collect()
    }

    fn compute_fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.field.to_string());
        h.update(self.constants_text());
        let digest = h.finalize();
        digest[..8].iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_gens(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn top_degree(&self) -> usize {
        self.degree_start.len() - 2
    }

    /// Basis index range of degree `d` (empty beyond the top).
    pub fn degree_range(&self, d: usize) -> (usize, usize) {
        if d + 1 >= self.degree_start.len() {
            return (self.dim(), self.dim());
        }
        (self.degree_start[d], self.degree_start[d + 1])
    }

    pub fn degree_dim(&self, d: usize) -> usize {
        let (s, e) = self.degree_range(d);
        e - s
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.degree_dim(d)).collect()
    }

    pub fn degree_of(&self, idx: usize) -> usize {
        self.basis[idx].len()
    }

    pub fn word(&self, idx: usize) -> &[usize] {
        &self.basis[idx]
    }

    /// First letter and remaining basis word of a positive-degree basis element.
    pub fn split(&self, idx: usize) -> Option<(usize, usize)> {
        self.split[idx]
    }

    /// Basis index of generator `g`.
    pub fn gen_basis_index(&self, g: usize) -> usize {
        1 + g
    }

    pub fn label(&self, idx: usize) -> String {
        let w = &self.basis[idx];
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&g| self.gen_names[g].as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn basis_index(&self, word: &[usize]) -> Option<usize> {
        self.basis.iter().position(|w| w == word)
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Degree-two relations `sum λ g_u g_v = 0` as `(u, v, λ)` lists.
    pub fn relations(&self) -> &[Vec<(usize, usize, Scalar)>] {
        &self.relations
    }

    pub fn product_of_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a][b]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, idx: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[idx] = self.field.one();
        v
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.basis_vector(0)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>, ShriekError> {
        if a.len() != self.dim() || b.len() != self.dim() {
            return Err(ShriekError::BasisMismatch {
                expected: self.dim(),
                found: if a.len() != self.dim() { a.len() } else { b.len() },
            });
        }
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let s = x * y;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&s * c);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of left multiplication by basis element `a`, restricted to
    /// degree `d` (columns) with values in degree `d + deg a` (rows).
    pub fn left_mul_matrix(&self, a: usize, d: usize) -> Matrix {
        let (s, e) = self.degree_range(d);
        let (ts, te) = self.degree_range(d + self.degree_of(a));
        let mut m = Matrix::zeros(self.field, te - ts, e - s);
        for b in s..e {
            for (k, c) in &self.table[a][b] {
                m.set(k - ts, b - s, c.clone());
            }
        }
        m
    }

    /// Degree-zero coefficient.
    pub fn scalar_part<'a>(&self, a: &'a [Scalar]) -> &'a Scalar {
        &a[0]
    }

    pub fn is_zero_element(a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    /// Renders an element as `c1*label1 + c2*label2`.
    pub fn render(&self, a: &[Scalar]) -> String {
        let mut out = String::new();
        for (idx, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let label = self.label(idx);
            match (abs.is_one(), label == "1") {
                (_, true) => out.push_str(&abs.to_string()),
                (true, false) => out.push_str(&label),
                (false, false) => {
                    let _ = write!(out, "{abs}*{label}");
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Renders quadratic relation `r` as a sum of generator products.
    pub fn render_relation(&self, r: usize) -> String {
        let mut out = String::new();
        for (u, w, c) in &self.relations()[r] {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                let _ = write!(out, "{abs}*");
            }
            let _ = write!(out, "{}*{}", self.gen_names()[*u], self.gen_names()[*w]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Per-degree basis lines followed by every nonzero product of basis
    /// elements of positive degree.
    pub fn constants_text(&self) -> String {
        let mut s = String::new();
        for d in 0..=self.top_degree() {
            let (a, b) = self.degree_range(d);
            let labels: Vec<String> = (a..b).map(|i| self.label(i)).collect();
            let _ = writeln!(s, "degree {d}: {}", labels.join(" "));
        }
        for a in 1..self.dim() {
            for b in 1..self.dim() {
                if self.table[a][b].is_empty() {
                    continue;
                }
                let mut v = self.zero();
                for (k, c) in &self.table[a][b] {
                    v[*k] = c.clone();
                }
                let _ = writeln!(s, "{} * {} = {}", self.label(a), self.label(b), self.render(&v));
            }
        }
        s
    }

    /// `acc += c * (basis a) * (basis b)`
    pub(crate) fn accumulate_product(&self, acc: &mut [Scalar], c: &Scalar, a: usize, b: usize) {
        for (k, x) in &self.table[a][b] {
            axpy(&mut acc[*k..=*k], c, std::slice::from_ref(x));
        }
    }
}
