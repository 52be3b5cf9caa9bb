//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use galg::fdmod::{
    ext_dims, find_isomorphism, induce, is_f_local, random_module, resolve, syzygy, twist_by_nakayama, GradedModule,
};
use galg::rewrite::normal_form;
use galg::shriek::ShriekAlgebra;
use galg::{certify_confluence, graded_dim, Field, Flavor, GPresentation, Letter, NCElement, Scalar};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{binomial, load, load_h, shriek, ALGEBRAS};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    let q = Field::Rational;
    let num = rng.gen_range(-9..=9);
    let den = rng.gen_range(1..=4);
    q.from_i64(num).try_div(&q.from_i64(den)).unwrap()
}

fn random_word(p: &GPresentation, rng: &mut StdRng, len: usize) -> Vec<Letter> {
    let z = p.flavor() == Flavor::Homogenized;
    let letters = p.n() + usize::from(z);
    (0..len)
        .map(|_| match rng.gen_range(0..letters) {
            i if i < p.n() => Letter::X(i),
            _ => Letter::Z,
        })
        .collect()
}

/// Sum of up to `terms` random multiples of random words of length at most
/// `max_len`, each reduced.
fn random_element(p: &Arc<GPresentation>, rng: &mut StdRng, max_len: usize, terms: usize) -> NCElement {
    let mut e = NCElement::zero(p);
    for _ in 0..rng.gen_range(1..=terms) {
        let len = rng.gen_range(0..=max_len);
        let w = random_word(p, rng, len);
        e = e.add(&normal_form(p, random_scalar(rng), &w).unwrap()).unwrap();
    }
    e
}

fn criterion_1() -> Outcome {
    for &(name, n) in ALGEBRAS {
        let a = shriek(name);
        let dims = a.dims();
        ensure!(dims.len() == n + 2, "{name}: top degree {}", dims.len() - 1);
        for (j, &d) in dims.iter().enumerate() {
            let expected = binomial(n as i64, j as i64) + binomial(n as i64, j as i64 - 1);
            ensure!(d as u64 == expected, "{name}: degree {j} has dim {d}, expected {expected}");
        }
        ensure!(a.full().dim() == 1 << (n + 1), "{name}: total {}", a.full().dim());
        ensure!(a.full().degree_dim(n + 2) == 0, "{name}: nonzero beyond n+1");
    }
    Ok(format!("{} algebras, n = 1, 2, 3", ALGEBRAS.len()))
}

fn criterion_2() -> Outcome {
    for &(name, n) in ALGEBRAS {
        let a = shriek(name);
        for (j, (c, zc)) in a.split_dims().into_iter().enumerate() {
            let (ec, ez) = (binomial(n as i64, j as i64), binomial(n as i64, j as i64 - 1));
            ensure!((c as u64, zc as u64) == (ec, ez), "{name}: degree {j} split ({c}, {zc}), expected ({ec}, {ez})");
        }
        ensure!(a.sub().dim() == 1 << n, "{name}: C! has dim {}", a.sub().dim());
    }
    Ok("z-free part C(n,j), complement C(n,j-1)".into())
}

fn criterion_3() -> Outcome {
    let mut ks = Vec::new();
    for &(name, _) in ALGEBRAS {
        let a = shriek(name);
        let s = a.nakayama_unchecked().map_err(|e| format!("{name}: {e}"))?;
        ensure!(s.flags().all(), "{name}: {}", s.flags());
        ks.push(format!("{}={}", name.trim_end_matches(".galg"), s.k().unwrap()));
    }
    Ok(format!("k: {}", ks.join(", ")))
}

fn criterion_4() -> Outcome {
    let a = load("weyl.galg");
    let b = Arc::new(a.homogenize().unwrap());
    let dx = NCElement::parse(&b, "D*X").unwrap();
    ensure!(dx.to_string() == "X*D - Z^2", "D*X reduced to {dx}");
    let back = dx.dehomogenize().unwrap();
    ensure!(back.to_string() == "-1 + X*D", "dehomogenized to {back}");
    ensure!(back == NCElement::parse(&a, "X*D - 1").unwrap(), "dehomogenized element differs from X*D - 1");

    let mut rng = StdRng::seed_from_u64(4);
    for case in 0..200 {
        let e = random_element(&a, &mut rng, 5, 6);
        let deg = e.degree().unwrap_or(0);
        ensure!(deg <= 5, "case {case}: degree {deg}");
        let round = e.homogenize(5).unwrap().dehomogenize().unwrap();
        ensure!(round == e, "case {case}: {e} came back as {round}");
    }
    Ok("200 random elements of degree <= 5".into())
}

fn criterion_5() -> Outcome {
    for name in ["weyl.galg", "sl2.galg", "qplane.galg"] {
        for p in [load(name), load_h(name)] {
            let r = certify_confluence(&p).unwrap();
            ensure!(r.certified, "{name} ({}) failed: {:?}", p.flavor(), r.failures);
        }
    }
    let bad = certify_confluence(&load("sl2_bad.galg")).unwrap();
    ensure!(!bad.certified && bad.failures.len() == 1, "corrupted sl2 gave {:?}", bad.failures);
    let w = &bad.failures[0];
    ensure!(w.word == vec![Letter::X(2), Letter::X(1), Letter::X(0)], "witness {:?}", w.word);
    ensure!(w.left != w.right, "witness routes agree");
    Ok(format!("witness h*f*e: {} != {}", w.left, w.right))
}

fn criterion_6() -> Outcome {
    for name in ["comm2.galg", "qplane.galg", "weyl.galg", "comm3.galg", "qspace.galg", "sl2.galg"] {
        let a = shriek(name);
        let bn = a.presentation().clone();
        let cn = bn.quantum_poly().unwrap();
        let over_b: Vec<usize> =
            ext_dims(&GradedModule::simple(a.full().clone(), 0), 5).iter().map(|r| r.dim).collect();
        let over_c: Vec<usize> = ext_dims(&GradedModule::simple(a.sub().clone(), 0), 5).iter().map(|r| r.dim).collect();
        for i in 0..=5 {
            ensure!(over_b[i] as u64 == graded_dim(&bn, i), "{name}: Ext^{i} over B! is {}", over_b[i]);
            ensure!(over_c[i] as u64 == graded_dim(&cn, i), "{name}: Ext^{i} over C! is {}", over_c[i]);
            if i > 0 {
                let kernel = (over_b[i] - over_c[i]) as u64;
                ensure!(kernel == graded_dim(&bn, i - 1), "{name}: kernel in degree {i} is {kernel}");
            }
        }
    }
    Ok("n = 2, 3 through step 5".into())
}

fn criterion_7() -> Outcome {
    let algebras = [shriek("qplane.galg"), shriek("weyl.galg"), shriek("comm2.galg")];
    let mut rng = StdRng::seed_from_u64(7);
    let mut sizes = Vec::new();
    let mut non_projective = 0;
    let mut case = 0;
    while case < 10 {
        let a = &algebras[case % algebras.len()];
        let m = random_module(a.sub(), 2, &mut rng);
        if m.is_zero() {
            continue;
        }
        ensure!(m.total_dim() <= 8 && m.check().is_empty(), "case {case}: bad random module");
        let lhs = syzygy(&induce(a, &m).unwrap()).module;
        non_projective += usize::from(!lhs.is_zero());
        let rhs = induce(a, &syzygy(&m).module).unwrap();
        ensure!(
            lhs.dimension_vector() == rhs.dimension_vector(),
            "case {case}: dims {:?} vs {:?}",
            lhs.dimension_vector(),
            rhs.dimension_vector()
        );
        ensure!(find_isomorphism(&lhs, &rhs).unwrap().is_some(), "case {case}: no isomorphism found");
        let e_ind: Vec<_> = ext_dims(&induce(a, &m).unwrap(), 4).into_iter().map(|r| (r.dim, r.degrees)).collect();
        let e_m: Vec<_> = ext_dims(&m, 4).into_iter().map(|r| (r.dim, r.degrees)).collect();
        ensure!(e_ind == e_m, "case {case}: ext {e_ind:?} vs {e_m:?}");
        sizes.push(m.total_dim().to_string());
        case += 1;
    }
    ensure!(non_projective >= 5, "only {non_projective} non-projective modules drawn");
    Ok(format!("10 random modules of dims {} ({non_projective} non-projective)", sizes.join(",")))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for name in ["qplane.galg", "weyl.galg", "comm2.galg", "qspace.galg", "sl2.galg"] {
        let a = shriek(name);
        let s = a.nakayama().unwrap();
        let reg = GradedModule::regular(a.full().clone());
        let k = GradedModule::simple(a.full().clone(), 0);
        let ik = induce(&a, &GradedModule::simple(a.sub().clone(), 0)).unwrap();
        ensure!(is_f_local(&a, &reg).unwrap(), "{name}: B! not F-local");
        ensure!(!is_f_local(&a, &k).unwrap(), "{name}: k F-local");
        ensure!(!is_f_local(&a, &ik).unwrap(), "{name}: induced k F-local");
        let mut modules = vec![reg.clone(), k.clone(), ik, syzygy(&k).module, reg.shifted(2).direct_sum(&k).unwrap()];
        modules.push(induce(&a, &GradedModule::regular(a.sub().clone())).unwrap());
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..4 {
            modules.push(random_module(a.full(), 2, &mut rng));
        }
        for (i, m) in modules.iter().enumerate() {
            let t = twist_by_nakayama(m, &s).unwrap();
            ensure!(t.check().is_empty(), "{name}: twist of module {i} is not a module");
            let (before, after) = (is_f_local(&a, m).unwrap(), is_f_local(&a, &t).unwrap());
            ensure!(before == after, "{name}: module {i} F-local {before} but twist {after}");
            checked += 1;
        }
    }
    Ok(format!("{checked} module twists"))
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let homogenized: Vec<Arc<GPresentation>> =
        ["weyl.galg", "sl2.galg", "qspace.galg"].iter().map(|n| load_h(n)).collect();
    let plain: Vec<Arc<GPresentation>> = ["weyl.galg", "sl2.galg", "qspace.galg"].iter().map(|n| load(n)).collect();
    let all: Vec<&Arc<GPresentation>> = homogenized.iter().chain(plain.iter()).collect();

    // normal-form idempotence: reducing printed normal forms and the
    // monomials themselves changes nothing
    for case in 0..500 {
        let p = all[case % all.len()];
        let e = random_element(p, &mut rng, 6, 4);
        let again = NCElement::parse(p, &e.to_string()).map_err(|err| format!("reparse of {e}: {err}"))?;
        ensure!(again == e, "case {case}: {e} re-reduced to {again}");
        for (m, c) in e.terms() {
            let single = normal_form(p, c.clone(), &m.word()).unwrap();
            ensure!(single.terms().len() == 1 && single.coefficient(m) == *c, "monomial {m:?} not normal");
        }
    }

    // associativity of the PBW product
    for case in 0..500 {
        let p = all[case % all.len()];
        let (x, y, z) =
            (random_element(p, &mut rng, 2, 3), random_element(p, &mut rng, 2, 3), random_element(p, &mut rng, 2, 3));
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        ensure!(l == r, "case {case}: ({x})({y})({z}) not associative");
    }

    let mut triples = 0;
    let mut resolutions = 0;
    for &(name, n) in ALGEBRAS {
        let a = shriek(name);
        let alg = a.full();
        // associativity of the dual, exhaustive on basis triples
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let ij = alg.mul(&alg.basis_vector(i), &alg.basis_vector(j)).unwrap();
                for k in 0..alg.dim() {
                    let ek = alg.basis_vector(k);
                    let l = alg.mul(&ij, &ek).unwrap();
                    let r = alg.mul(&alg.basis_vector(i), &alg.mul(&alg.basis_vector(j), &ek).unwrap()).unwrap();
                    ensure!(l == r, "{name}: basis triple ({i},{j},{k}) not associative");
                    triples += 1;
                }
            }
        }
        // Gram nondegeneracy in every degree
        for j in 0..=n + 1 {
            ensure!(a.gram(j).inverse().is_some(), "{name}: Gram matrix in degree {j} is singular");
        }
        // σ does not depend on the scale of the socle functional
        let s = a.nakayama().unwrap();
        for lambda in [2, -3, 7] {
            let scaled: ShriekAlgebra = a.with_socle_scale(&Field::Rational.from_i64(lambda));
            ensure!(scaled.nakayama().unwrap().blocks() == s.blocks(), "{name}: σ changed under scale {lambda}");
        }
        let scaled = a.with_socle_scale(&Field::Rational.from_i64(1).try_div(&Field::Rational.from_i64(5)).unwrap());
        ensure!(scaled.nakayama().unwrap().blocks() == s.blocks(), "{name}: σ changed under scale 1/5");
        // minimality certificates
        let mut modules = vec![
            GradedModule::simple(alg.clone(), 0),
            GradedModule::regular(alg.clone()),
            induce(&a, &GradedModule::simple(a.sub().clone(), 0)).unwrap(),
            GradedModule::simple(a.sub().clone(), 0),
        ];
        for _ in 0..3 {
            modules.push(random_module(alg, 2, &mut rng));
            modules.push(random_module(a.sub(), 2, &mut rng));
        }
        for m in &modules {
            ensure!(resolve(m, 3).is_minimal(), "{name}: resolution not minimal");
            resolutions += 1;
        }
    }
    Ok(format!("500 nf + 500 product cases, {triples} basis triples, {resolutions} resolutions"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "dual dimension formula", criterion_1),
        (2, "C! / C!z decomposition", criterion_2),
        (3, "Nakayama certification", criterion_3),
        (4, "Weyl homogenization round trip", criterion_4),
        (5, "confluence certification", criterion_5),
        (6, "Koszul double-dual dimension law", criterion_6),
        (7, "induction vs syzygy and Ext", criterion_7),
        (8, "F-local membership", criterion_8),
        (9, "property suites", criterion_9),
    ];
    let mut failed = 0;
    for (n, title, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {n} PASS {title}: {detail} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL {title}: {why} ({ms} ms)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
