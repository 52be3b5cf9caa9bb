use std::fmt;
use std::sync::Arc;

use super::{GradedAlgebra, ShriekAlgebra, ShriekError};
use crate::field::Scalar;
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NakayamaFlags {
    /// multiplicative on all basis pairs and invertible in every degree
    pub is_automorphism: bool,
    /// maps the z-free span `C_n^!` into itself
    pub preserves_c_sub: bool,
    /// `σ(z) = k z` with `k != 0`
    pub scales_z: bool,
}

impl NakayamaFlags {
    pub fn all(&self) -> bool {
        self.is_automorphism && self.preserves_c_sub && self.scales_z
    }
}

impl fmt::Display for NakayamaFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "automorphism: {}, preserves C!: {}, sigma(z)=k*z: {}",
            yn(self.is_automorphism),
            yn(self.preserves_c_sub),
            yn(self.scales_z)
        )
    }
}

/// The graded automorphism `σ` of `B_n^!` with `β(σ(y), x) = β(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NakayamaMap {
    algebra: Arc<GradedAlgebra>,
    /// `blocks[d]` acts on degree `d` coordinates (columns are images)
    blocks: Vec<Matrix>,
    k: Option<Scalar>,
    flags: NakayamaFlags,
}

impl NakayamaMap {
    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, d: usize) -> &Matrix {
        &self.blocks[d]
    }

    /// The scalar with `σ(z) = k z`, when `σ(z)` is a multiple of `z`.
    pub fn k(&self) -> Option<&Scalar> {
        self.k.as_ref()
    }

    pub fn flags(&self) -> NakayamaFlags {
        self.flags
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| *b == Matrix::identity(b.field(), b.nrows()))
    }

    pub fn apply(&self, a: &[Scalar]) -> Vec<Scalar> {
        let alg = &self.algebra;
        let mut out = alg.zero();
        for (d, block) in self.blocks.iter().enumerate() {
            let (s, e) = alg.degree_range(d);
            let image = block.mul_vec(&a[s..e]);
            out[s..e].clone_from_slice(&image);
        }
        out
    }

    /// Image of generator `g` as a vector over the generators.
    pub fn on_generators(&self) -> &Matrix {
        &self.blocks[1]
    }

    pub fn inverse(&self) -> NakayamaMap {
        NakayamaMap {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b.inverse().expect("certified blocks are invertible")).collect(),
            k: self.k.as_ref().map(Scalar::inv),
            flags: self.flags,
        }
    }

    pub fn report(&self) -> String {
        let mut s = String::new();
        for (d, b) in self.blocks.iter().enumerate() {
            s.push_str(&format!("degree {d}: {}\n", crate::linalg::format_matrix(b)));
        }
        match &self.k {
            Some(k) => s.push_str(&format!("k: {k}\n")),
            None => s.push_str("k: none\n"),
        }
        s.push_str(&format!("{}\n", self.flags));
        s
    }
}

impl ShriekAlgebra {
    /// Solves `β(σ(y), x) = β(x, y)` degree by degree and certifies the
    /// result. Fails only if the pairing is degenerate.
    pub fn nakayama_unchecked(&self) -> Result<NakayamaMap, ShriekError> {
        let top = self.n() + 1;
        let alg = self.full().clone();
        let mut blocks = Vec::with_capacity(top + 1);
        for j in 0..=top {
            // S^T G_j = G_{top-j}^T  =>  S = (G_j^T)^{-1} G_{top-j}
            let g = self.gram(j);
            let inv = g.transpose().inverse().ok_or(ShriekError::Degenerate(j))?;
            blocks.push(inv.mul(&self.gram(top - j)));
        }
        let mut map = NakayamaMap {
            algebra: alg.clone(),
            blocks,
            k: None,
            flags: NakayamaFlags { is_automorphism: false, preserves_c_sub: false, scales_z: false },
        };

        let invertible = map.blocks.iter().all(|b| b.inverse().is_some());
        let images: Vec<Vec<Scalar>> = (0..alg.dim()).map(|i| map.apply(&alg.basis_vector(i))).collect();
        let mut multiplicative = true;
        'pairs: for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let mut prod = alg.zero();
                alg.accumulate_product(&mut prod, &alg.field().one(), a, b);
                if map.apply(&prod) != alg.mul(&images[a], &images[b])? {
                    multiplicative = false;
                    break 'pairs;
                }
            }
        }
        let preserves = (0..alg.dim())
            .filter(|&i| self.is_c_sub(i))
            .all(|i| images[i].iter().enumerate().all(|(j, x)| x.is_zero() || self.is_c_sub(j)));
        let zi = alg.gen_basis_index(self.z_gen());
        let z_image = &images[zi];
        let k = z_image[zi].clone();
        let scales_z = !k.is_zero() && z_image.iter().enumerate().all(|(j, x)| j == zi || x.is_zero());
        if scales_z {
            map.k = Some(k);
        }
        map.flags =
            NakayamaFlags { is_automorphism: invertible && multiplicative, preserves_c_sub: preserves, scales_z };
        Ok(map)
    }

    /// Like [`nakayama_unchecked`](Self::nakayama_unchecked) but fails unless
    /// every certificate holds.
    pub fn nakayama(&self) -> Result<NakayamaMap, ShriekError> {
        let map = self.nakayama_unchecked()?;
        if !map.flags.all() {
            return Err(ShriekError::Certification(map.flags));
        }
        Ok(map)
    }
}
