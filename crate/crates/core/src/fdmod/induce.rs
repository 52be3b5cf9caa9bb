use super::{check_same_algebra, syzygy, GradedModule, ModuleError};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::shriek::{NakayamaMap, ShriekAlgebra};

/// `B^! ⊗_{C^!} M`, with `(B^! ⊗ M)_d = 1 ⊗ M_d ⊕ z ⊗ M_{d-1}` in that order.
pub fn induce(a: &ShriekAlgebra, m: &GradedModule) -> Result<GradedModule, ModuleError> {
    check_same_algebra(m.algebra(), a.sub())?;
    let full = a.full();
    let sub = a.sub();
    let field = a.field();
    let dc = sub.dim();

    // columns: c, then z*c, for each basis element c of C^!
    let z = full.basis_vector(full.gen_basis_index(a.z_gen()));
    let mut cols = Vec::with_capacity(2 * dc);
    for e in 0..dc {
        cols.push(a.embed_sub(&sub.basis_vector(e)));
    }
    for e in 0..dc {
        let c = a.embed_sub(&sub.basis_vector(e));
        cols.push(full.mul(&z, &c)?);
    }
    let phi = Matrix::from_columns(field, full.dim(), &cols);
    let phi_inv = phi.inverse().ok_or(ModuleError::NotFree)?;
    let split = |b: &[Scalar]| -> (Vec<Scalar>, Vec<Scalar>) {
        let mut coords = phi_inv.mul_vec(b);
        let c1 = coords.split_off(dc);
        (coords, c1)
    };

    let lo = m.min_degree();
    let hi = m.end_degree() + 1;
    let dims: Vec<usize> = (lo..hi).map(|d| m.dim(d) + m.dim(d - 1)).collect();
    let mut actions = Vec::with_capacity(full.num_gens());
    for g in 0..full.num_gens() {
        let gv = full.basis_vector(full.gen_basis_index(g));
        let (c0, c1) = split(&gv);
        let (c0z, c1z) = split(&full.mul(&gv, &z)?);
        let per_degree = (lo..hi)
            .map(|d| {
                let blocks = [
                    [m.element_action(&c0, 1, d), m.element_action(&c0z, 2, d - 1)],
                    [m.element_action(&c1, 0, d), m.element_action(&c1z, 1, d - 1)],
                ];
                block_matrix(field, &blocks)
            })
            .collect();
        actions.push(per_degree);
    }
    GradedModule::new(full.clone(), lo, dims, actions)
}

fn block_matrix(field: crate::field::Field, blocks: &[[Matrix; 2]; 2]) -> Matrix {
    let top = blocks[0][0].nrows();
    let left = blocks[0][0].ncols();
    let rows = top + blocks[1][0].nrows();
    let cols = left + blocks[0][1].ncols();
    let mut out = Matrix::zeros(field, rows, cols);
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, b) in row.iter().enumerate() {
            let (r0, c0) = (if bi == 0 { 0 } else { top }, if bj == 0 { 0 } else { left });
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    if !b.get(i, j).is_zero() {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
            }
        }
    }
    out
}

/// Forgets the action of `z`.
pub fn restrict(a: &ShriekAlgebra, m: &GradedModule) -> Result<GradedModule, ModuleError> {
    check_same_algebra(m.algebra(), a.full())?;
    let actions = m.raw_actions()[..a.n()].to_vec();
    Ok(m.with_actions(a.sub().clone(), actions))
}

/// Whether the restriction to `C^!` is free (equivalently injective).
pub fn is_f_local(a: &ShriekAlgebra, m: &GradedModule) -> Result<bool, ModuleError> {
    Ok(syzygy(&restrict(a, m)?).module.is_zero())
}

/// `σM`: the same spaces with `g` acting as `σ(g)`.
pub fn twist_by_nakayama(m: &GradedModule, s: &NakayamaMap) -> Result<GradedModule, ModuleError> {
    check_same_algebra(m.algebra(), s.algebra())?;
    let sigma = s.on_generators();
    let g = m.algebra().num_gens();
    let raw = m.raw_actions();
    let actions = (0..g)
        .map(|target| {
            (0..raw[target].len())
                .map(|k| {
                    let mut acc = Matrix::zeros(m.field(), raw[target][k].nrows(), raw[target][k].ncols());
                    for (h, per_degree) in raw.iter().enumerate() {
                        let c = sigma.get(h, target);
                        if !c.is_zero() {
                            acc = acc.add(&per_degree[k].scale(c));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(m.with_actions(m.algebra().clone(), actions))
}

/// Left end `σΩ²M` of the almost split sequence ending in `M`. Only
/// non-projectivity is checked, not indecomposability.
pub fn ar_translate_endpoint(m: &GradedModule, s: &NakayamaMap) -> Result<GradedModule, ModuleError> {
    let om = syzygy(m).module;
    if om.is_zero() {
        return Err(ModuleError::Projective);
    }
    twist_by_nakayama(&syzygy(&om).module, s)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fdmod::ext_dims;
    use crate::field::Field;
    use crate::presentation::GPresentation;

    fn qplane() -> ShriekAlgebra {
        let p = GPresentation::parse("gens = X, Y\nb 2 1 = 2\n", Field::Rational).unwrap();
        ShriekAlgebra::build(&Arc::new(p.homogenize().unwrap())).unwrap()
    }

    #[test]
    fn induce_simple() {
        let a = qplane();
        let k = GradedModule::simple(a.sub().clone(), 0);
        let ik = induce(&a, &k).unwrap();
        assert_eq!(ik.dimension_vector(), vec![(0, 1), (1, 1)]);
        assert!(ik.check().is_empty());
        assert_eq!(ik.generator_degrees(), vec![0]);
        let r = restrict(&a, &ik).unwrap();
        assert_eq!(
            r,
            GradedModule::simple(a.sub().clone(), 0).direct_sum(&GradedModule::simple(a.sub().clone(), 1)).unwrap()
        );
    }

    #[test]
    fn induce_regular_is_regular() {
        let a = qplane();
        let ic = induce(&a, &GradedModule::regular(a.sub().clone())).unwrap();
        assert!(ic.check().is_empty());
        assert_eq!(ic.dimension_vector(), GradedModule::regular(a.full().clone()).dimension_vector());
        assert!(crate::fdmod::syzygy(&ic).module.is_zero());
    }

    #[test]
    fn f_local_examples() {
        let a = qplane();
        let reg = GradedModule::regular(a.full().clone());
        let k = GradedModule::simple(a.full().clone(), 0);
        let ik = induce(&a, &GradedModule::simple(a.sub().clone(), 0)).unwrap();
        assert!(is_f_local(&a, &reg).unwrap());
        assert!(!is_f_local(&a, &k).unwrap());
        assert!(!is_f_local(&a, &ik).unwrap());
        let rr = restrict(&a, &reg).unwrap();
        assert_eq!(rr.generator_degrees(), vec![0, 1]);
    }

    #[test]
    fn twist_round_trip_and_endpoint() {
        let a = qplane();
        let s = a.nakayama().unwrap();
        let reg = GradedModule::regular(a.full().clone());
        let back = twist_by_nakayama(&twist_by_nakayama(&reg, &s).unwrap(), &s.inverse()).unwrap();
        assert_eq!(back, reg);
        assert!(twist_by_nakayama(&reg, &s).unwrap().check().is_empty());
        assert_eq!(ar_translate_endpoint(&reg, &s), Err(ModuleError::Projective));
        let k = GradedModule::simple(a.full().clone(), 0);
        let tau = ar_translate_endpoint(&k, &s).unwrap();
        assert_eq!(tau.total_dim(), syzygy(&syzygy(&k).module).module.total_dim());
        assert!(tau.check().is_empty());
    }

    #[test]
    fn ext_transfers_along_induction() {
        let a = qplane();
        let k = GradedModule::simple(a.sub().clone(), 0);
        let ik = induce(&a, &k).unwrap();
        let lhs: Vec<usize> = ext_dims(&ik, 3).iter().map(|r| r.dim).collect();
        let rhs: Vec<usize> = ext_dims(&k, 3).iter().map(|r| r.dim).collect();
        assert_eq!(lhs, rhs);
    }
}
