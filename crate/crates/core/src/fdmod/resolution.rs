use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::{GradedModule, ModuleError};
use crate::field::{Field, Scalar};
use crate::linalg::{Kernel, Matrix};
use crate::shriek::GradedAlgebra;

/// A free module `⊕ A[-d_i]` with basis `(i, e)`: generator `i` times the
/// algebra basis element `e`, living in degree `d_i + deg e`.
#[derive(Debug, Clone)]
pub struct FreeModule {
    algebra: Arc<GradedAlgebra>,
    gen_degrees: Vec<i32>,
    min_degree: i32,
    layout: Vec<Vec<(usize, usize)>>,
    position: HashMap<(usize, usize), usize>,
}

impl FreeModule {
    pub fn new(algebra: Arc<GradedAlgebra>, gen_degrees: Vec<i32>) -> Self {
        let (min_degree, end) = match (gen_degrees.iter().min(), gen_degrees.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi + algebra.top_degree() as i32 + 1),
            _ => (0, 0),
        };
        let mut layout = vec![Vec::new(); (end - min_degree) as usize];
        let mut position = HashMap::new();
        for (t, slot) in (min_degree..end).zip(layout.iter_mut()) {
            for (i, &d) in gen_degrees.iter().enumerate() {
                let k = t - d;
                if k < 0 {
                    continue;
                }
                let (s, e) = algebra.degree_range(k as usize);
                for b in s..e {
                    position.insert((i, b), slot.len());
                    slot.push((i, b));
                }
            }
        }
        FreeModule { algebra, gen_degrees, min_degree, layout, position }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[i32] {
        &self.gen_degrees
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.min_degree..self.min_degree + self.layout.len() as i32
    }

    pub fn dim(&self, t: i32) -> usize {
        self.slot(t).map_or(0, Vec::len)
    }

    fn slot(&self, t: i32) -> Option<&Vec<(usize, usize)>> {
        let k = t - self.min_degree;
        if k < 0 {
            return None;
        }
        self.layout.get(k as usize)
    }

    /// Basis of degree `t` as `(generator, algebra basis index)` pairs.
    pub fn basis(&self, t: i32) -> &[(usize, usize)] {
        self.slot(t).map_or(&[], Vec::as_slice)
    }

    /// `g * v` for `v` in degree `t`, computed from the structure constants.
    pub fn act_vec(&self, g: usize, t: i32, v: &[Scalar]) -> Vec<Scalar> {
        let field = self.algebra.field();
        let mut out = vec![field.zero(); self.dim(t + 1)];
        let gi = self.algebra.gen_basis_index(g);
        for (x, &(i, e)) in v.iter().zip(self.basis(t)) {
            if x.is_zero() {
                continue;
            }
            for (f, c) in self.algebra.product_of_basis(gi, e) {
                let p = self.position[&(i, *f)];
                out[p] = &out[p] + &(x * c);
            }
        }
        out
    }

    /// Splits a degree-`t` vector into one algebra element per generator.
    pub fn decompose(&self, t: i32, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut out = vec![self.algebra.zero(); self.rank()];
        for (x, &(i, e)) in v.iter().zip(self.basis(t)) {
            out[i][e] = x.clone();
        }
        out
    }

    pub fn to_module(&self) -> GradedModule {
        let field = self.algebra.field();
        let actions = (0..self.algebra.num_gens())
            .map(|g| {
                self.degrees()
                    .map(|t| {
                        let cols: Vec<Vec<Scalar>> = (0..self.dim(t))
                            .map(|j| {
                                let mut e = vec![field.zero(); self.dim(t)];
                                e[j] = field.one();
                                self.act_vec(g, t, &e)
                            })
                            .collect();
                        Matrix::from_columns(field, self.dim(t + 1), &cols)
                    })
                    .collect()
            })
            .collect();
        let dims = self.layout.iter().map(Vec::len).collect();
        GradedModule::new(self.algebra.clone(), self.min_degree, dims, actions).expect("free module shapes")
    }
}

/// Minimal projective cover `P -> M`.
#[derive(Debug, Clone)]
pub struct ProjectiveCover {
    pub free: FreeModule,
    /// images of the free generators in `M`, as `(degree, vector)`
    pub generators: Vec<(i32, Vec<Scalar>)>,
    /// per degree of `P`, the map `P_t -> M_t`
    pub maps: Vec<Matrix>,
}

impl ProjectiveCover {
    pub fn map(&self, t: i32) -> &Matrix {
        &self.maps[(t - self.free.min_degree) as usize]
    }
}

pub fn projective_cover(m: &GradedModule) -> ProjectiveCover {
    let generators = m.top();
    let free = FreeModule::new(m.algebra().clone(), generators.iter().map(|(d, _)| *d).collect());
    let orbits: Vec<Vec<Vec<Scalar>>> = generators.iter().map(|(d, v)| m.orbit(*d, v)).collect();
    let maps = free
        .degrees()
        .map(|t| {
            let cols: Vec<Vec<Scalar>> = free.basis(t).iter().map(|&(i, e)| orbits[i][e].clone()).collect();
            Matrix::from_columns(m.field(), m.dim(t), &cols)
        })
        .collect();
    ProjectiveCover { free, generators, maps }
}

/// `Ω(M)` with the data needed to embed it into the cover.
#[derive(Debug, Clone)]
pub struct Syzygy {
    pub cover: ProjectiveCover,
    /// per degree of `P`, the kernel of the cover map
    pub kernels: Vec<Kernel>,
    pub module: GradedModule,
}

impl Syzygy {
    fn of_cover(cover: ProjectiveCover) -> Syzygy {
        let free = &cover.free;
        let alg = free.algebra().clone();
        let field = alg.field();
        let kernels: Vec<Kernel> = cover.maps.iter().map(Matrix::kernel).collect();
        let dims: Vec<usize> = kernels.iter().map(Kernel::dim).collect();
        let actions = (0..alg.num_gens())
            .map(|g| {
                free.degrees()
                    .enumerate()
                    .map(|(k, t)| {
                        let rows = kernels.get(k + 1).map_or(0, Kernel::dim);
                        let cols: Vec<Vec<Scalar>> = kernels[k]
                            .basis
                            .iter()
                            .map(|v| match kernels.get(k + 1) {
                                Some(next) => next.coordinates(&free.act_vec(g, t, v)),
                                None => Vec::new(),
                            })
                            .collect();
                        Matrix::from_columns(field, rows, &cols)
                    })
                    .collect()
            })
            .collect();
        let module = GradedModule::new(alg, free.min_degree, dims, actions).expect("syzygy shapes are consistent");
        Syzygy { cover, kernels, module }
    }

    /// Image in `P` of a degree-`t` vector of `Ω(M)`.
    pub fn embed(&self, t: i32, coords: &[Scalar]) -> Vec<Scalar> {
        let free = &self.cover.free;
        let field = free.algebra().field();
        let mut out = vec![field.zero(); free.dim(t)];
        let kernel = &self.kernels[(t - free.min_degree) as usize];
        for (c, v) in coords.iter().zip(&kernel.basis) {
            crate::linalg::axpy(&mut out, c, v);
        }
        out
    }
}

pub fn syzygy(m: &GradedModule) -> Syzygy {
    Syzygy::of_cover(projective_cover(m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionStep {
    pub rank: usize,
    pub degrees: Vec<i32>,
    /// `boundary[j][i]`: the algebra element sending generator `j` of this
    /// step to generator `i` of the previous one (empty at step 0)
    pub boundary: Vec<Vec<Vec<Scalar>>>,
}

/// A minimal free resolution truncated at a fixed step.
#[derive(Debug, Clone)]
pub struct ResolutionData {
    pub algebra: Arc<GradedAlgebra>,
    pub steps: Vec<ResolutionStep>,
}

impl ResolutionData {
    /// Every boundary entry lies in the radical.
    pub fn is_minimal(&self) -> bool {
        self.steps.iter().flat_map(|s| s.boundary.iter().flatten()).all(|a| self.algebra.scalar_part(a).is_zero())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.rank).collect()
    }
}

pub fn resolve(m: &GradedModule, max_step: usize) -> ResolutionData {
    let mut steps = Vec::with_capacity(max_step + 1);
    let mut cur = m.clone();
    let mut prev: Option<Syzygy> = None;
    for s in 0..=max_step {
        let cover = projective_cover(&cur);
        let boundary = match &prev {
            None => Vec::new(),
            Some(syz) => {
                cover.generators.iter().map(|(t, v)| syz.cover.free.decompose(*t, &syz.embed(*t, v))).collect()
            }
        };
        steps.push(ResolutionStep { rank: cover.free.rank(), degrees: cover.free.gen_degrees().to_vec(), boundary });
        if s < max_step {
            let syz = Syzygy::of_cover(cover);
            cur = syz.module.clone();
            prev = Some(syz);
        }
    }
    ResolutionData { algebra: m.algebra().clone(), steps }
}

/// `dim Ext^i(M, k)` and the internal degrees of its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtRow {
    pub step: usize,
    pub dim: usize,
    pub degrees: Vec<i32>,
}

pub fn ext_dims(m: &GradedModule, max_step: usize) -> Vec<ExtRow> {
    resolve(m, max_step)
        .steps
        .into_iter()
        .enumerate()
        .map(|(step, s)| ExtRow { step, dim: s.rank, degrees: s.degrees })
        .collect()
}

/// Whether the resolution is linear through `max_step`: the `i`-th syzygy is
/// generated purely in degree `d + i` where `d` generates `M`.
pub fn is_koszul(m: &GradedModule, max_step: usize) -> Result<bool, ModuleError> {
    let mut degs = m.generator_degrees();
    degs.dedup();
    let d0 = match degs.as_slice() {
        [] => return Ok(true),
        [d] => *d,
        _ => return Err(ModuleError::NotGeneratedInOneDegree(degs)),
    };
    Ok(ext_dims(m, max_step).iter().all(|row| row.degrees.iter().all(|&d| d == d0 + row.step as i32)))
}

/// A random quotient of a free module of rank `1..=max_rank` with generators
/// in degrees 0 and 1, by the submodule spanned by a few random vectors.
pub fn random_module<R: Rng>(algebra: &Arc<GradedAlgebra>, max_rank: usize, rng: &mut R) -> GradedModule {
    let field = algebra.field();
    let rank = rng.gen_range(1..=max_rank.max(1));
    let degrees: Vec<i32> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
    let free = FreeModule::new(algebra.clone(), degrees).to_module();
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let t = rng.gen_range(free.min_degree()..free.end_degree());
        let v: Vec<Scalar> = (0..free.dim(t)).map(|_| small(field, rng)).collect();
        gens.push((t, v));
    }
    free.quotient(&free.submodule(&gens))
}

fn small<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}
