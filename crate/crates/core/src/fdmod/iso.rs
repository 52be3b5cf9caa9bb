use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{check_same_algebra, projective_cover, GradedModule, ModuleError};
use crate::field::Scalar;
use crate::linalg::Matrix;

const ATTEMPTS: usize = 64;

/// Whether the per-degree maps `f` (indexed from `m.min_degree()`) commute
/// with every generator action.
pub fn is_module_map(m: &GradedModule, n: &GradedModule, f: &[Matrix]) -> bool {
    let block = |d: i32| -> Matrix {
        let k = d - m.min_degree();
        if k >= 0 && (k as usize) < f.len() {
            f[k as usize].clone()
        } else {
            Matrix::zeros(m.field(), n.dim(d), m.dim(d))
        }
    };
    if f.len() != m.dimension_vector().len() {
        return false;
    }
    for d in m.degrees() {
        let fd = block(d);
        if (fd.nrows(), fd.ncols()) != (n.dim(d), m.dim(d)) {
            return false;
        }
        for g in 0..m.algebra().num_gens() {
            if block(d + 1).mul(&m.action(g, d)) != n.action(g, d).mul(&fd) {
                return false;
            }
        }
    }
    true
}

/// Searches for a graded isomorphism `M -> N` of degree zero.
///
/// The homomorphisms are parametrized by the images of the minimal generators
/// of `M`, subject to the relations of `M`; random combinations of a basis of
/// that space are tried until one is invertible in every degree. `None` means
/// no isomorphism was found (always the case when the dimension vectors
/// differ).
pub fn find_isomorphism(m: &GradedModule, n: &GradedModule) -> Result<Option<Vec<Matrix>>, ModuleError> {
    check_same_algebra(m.algebra(), n.algebra())?;
    if m.dimension_vector() != n.dimension_vector() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Vec::new()));
    }
    let field = m.field();
    let cover = projective_cover(m);
    let free = &cover.free;
    let gens = free.gen_degrees();

    // unknowns: the image of generator i in N_{d_i}
    let mut offset = Vec::with_capacity(gens.len());
    let mut unknowns = 0;
    for &d in gens {
        offset.push(unknowns);
        unknowns += n.dim(d);
    }
    // orbits[i][c][e] = e * (basis vector c of N_{d_i})
    let orbits: Vec<Vec<Vec<Vec<Scalar>>>> = gens
        .iter()
        .map(|&d| {
            (0..n.dim(d))
                .map(|c| {
                    let mut v = vec![field.zero(); n.dim(d)];
                    v[c] = field.one();
                    n.orbit(d, &v)
                })
                .collect()
        })
        .collect();

    // linear map: unknowns -> N_t, image of a vector x in P_t
    let image_matrix = |t: i32, x: &[Scalar]| -> Matrix {
        let mut out = Matrix::zeros(field, n.dim(t), unknowns);
        for (xj, &(i, e)) in x.iter().zip(free.basis(t)) {
            if xj.is_zero() {
                continue;
            }
            for (c, orbit) in orbits[i].iter().enumerate() {
                for (r, y) in orbit[e].iter().enumerate() {
                    if !y.is_zero() {
                        let col = offset[i] + c;
                        out.set(r, col, out.get(r, col) + &(xj * y));
                    }
                }
            }
        }
        out
    };

    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for (k, t) in free.degrees().enumerate() {
        for v in cover.maps[k].kernel().basis {
            equations.extend(image_matrix(t, &v).rows().iter().cloned());
        }
    }
    let hom = Matrix::from_rows(field, unknowns, equations).kernel().basis;
    if hom.is_empty() {
        return Ok(None);
    }

    // per degree: columns of P_t that map onto a basis of M_t, and the inverse
    // of that square block
    let mut sections = Vec::new();
    for (k, t) in free.degrees().enumerate() {
        if m.dim(t) == 0 {
            continue;
        }
        let mut r = cover.maps[k].clone();
        let pivots = r.rref();
        let cols: Vec<Vec<Scalar>> = pivots.iter().map(|&p| cover.maps[k].column(p)).collect();
        let inv = Matrix::from_columns(field, m.dim(t), &cols).inverse().expect("cover is surjective");
        sections.push((t, pivots, inv));
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    for attempt in 0..ATTEMPTS {
        let mut u = vec![field.zero(); unknowns];
        for (idx, h) in hom.iter().enumerate() {
            let c = if attempt == 0 { field.from_i64(idx as i64 + 1) } else { field.from_i64(rng.gen_range(-5..=5)) };
            crate::linalg::axpy(&mut u, &c, h);
        }
        let mut blocks = Vec::new();
        let mut ok = true;
        for d in m.degrees() {
            let Some((_, pivots, inv)) = sections.iter().find(|(t, _, _)| *t == d) else {
                blocks.push(Matrix::zeros(field, 0, 0));
                continue;
            };
            let cols: Vec<Vec<Scalar>> = pivots
                .iter()
                .map(|&p| {
                    let mut x = vec![field.zero(); free.dim(d)];
                    x[p] = field.one();
                    image_matrix(d, &x).mul_vec(&u)
                })
                .collect();
            let f = Matrix::from_columns(field, n.dim(d), &cols).mul(inv);
            if f.determinant().is_zero() {
                ok = false;
                break;
            }
            blocks.push(f);
        }
        if ok {
            debug_assert!(is_module_map(m, n, &blocks));
            return Ok(Some(blocks));
        }
    }
    Ok(None)
}
