mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use galg::fdmod::{
    find_isomorphism, induce, random_module, resolve, restrict, syzygy, twist_by_nakayama, write_module, GradedModule,
    ModuleFile, Over,
};
use galg::rewrite::normal_form;
use galg::shriek::ShriekAlgebra;
use galg::{graded_dim, Field, Flavor, GPresentation, Letter, Monomial, NCElement, Scalar};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{load, load_h, shriek, ALGEBRAS};

const P: u64 = 101;

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=12)
        .prop_map(|(n, d)| Field::Rational.from_i64(n).try_div(&Field::Rational.from_i64(d)).unwrap())
}

fn modp() -> impl Strategy<Value = Scalar> {
    (0i64..P as i64).prop_map(|n| Field::prime(P).unwrap().from_i64(n))
}

fn field_axioms(a: Scalar, b: Scalar, c: Scalar) -> Result<(), TestCaseError> {
    let f = a.field();
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a + &f.zero(), a.clone());
    prop_assert_eq!(&a * &f.one(), a.clone());
    prop_assert!((&a + &(-&a)).is_zero());
    if !a.is_zero() {
        prop_assert!((&a * &a.inv()).is_one());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        field_axioms(a, b, c)?;
    }

    #[test]
    fn prime_field_axioms(a in modp(), b in modp(), c in modp()) {
        field_axioms(a, b, c)?;
    }

    #[test]
    fn rational_parse_display_round_trip(a in rational()) {
        prop_assert_eq!(Field::Rational.parse(&a.to_string()).unwrap(), a);
    }
}

/// A random presentation on up to four generators with arbitrary nonzero
/// `b` and sparse `c`, `d` (not necessarily confluent).
fn presentation() -> impl Strategy<Value = GPresentation> {
    (1usize..=4, any::<u64>(), prop_oneof![Just(Flavor::Plain), Just(Flavor::Homogenized), Just(Flavor::QuantumPoly)])
        .prop_map(|(n, seed, flavor)| {
            use rand::Rng;
            let mut rng = StdRng::seed_from_u64(seed);
            let q = Field::Rational;
            let nonzero = |rng: &mut StdRng| loop {
                let v = q.from_i64(rng.gen_range(-6..=6)).try_div(&q.from_i64(rng.gen_range(1..=5))).unwrap();
                if !v.is_zero() {
                    return v;
                }
            };
            let mut b = BTreeMap::new();
            let mut c = BTreeMap::new();
            let mut d = BTreeMap::new();
            for i in 0..n {
                for j in 0..i {
                    b.insert((i, j), nonzero(&mut rng));
                    if flavor != Flavor::QuantumPoly {
                        for k in 0..n {
                            if rng.gen_bool(0.2) {
                                c.insert((i, j, k), nonzero(&mut rng));
                            }
                        }
                        if rng.gen_bool(0.3) {
                            d.insert((i, j), nonzero(&mut rng));
                        }
                    }
                }
            }
            let names = ["X", "Y", "W", "V"][..n].iter().map(|s| s.to_string()).collect();
            GPresentation::new(q, names, b, c, d, flavor).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn presentation_print_parse_round_trip(p in presentation()) {
        let text = p.to_string();
        prop_assert_eq!(GPresentation::parse(&text, Field::Rational).unwrap(), p);
    }

    #[test]
    fn homogenize_then_quantum_keeps_b(p in presentation()) {
        prop_assume!(p.flavor() == Flavor::Plain);
        let c = p.homogenize().unwrap().quantum_poly().unwrap();
        prop_assert_eq!(c.n(), p.n());
        for i in 0..p.n() {
            for j in 0..i {
                prop_assert_eq!(c.b(i, j), p.b(i, j));
            }
        }
    }

    #[test]
    fn zero_b_is_rejected(n in 2usize..=4, i in 1usize..4, j in 0usize..3) {
        prop_assume!(i < n && j < i);
        let mut text = String::from("gens = ");
        text.push_str(&["X", "Y", "W", "V"][..n].join(", "));
        text.push('\n');
        for a in 1..n {
            for b in 0..a {
                let v = if (a, b) == (i, j) { 0 } else { 1 };
                text.push_str(&format!("b {} {} = {v}\n", a + 1, b + 1));
            }
        }
        prop_assert!(GPresentation::parse(&text, Field::Rational).is_err());
    }
}

fn certified() -> &'static Vec<Arc<GPresentation>> {
    static CELL: OnceLock<Vec<Arc<GPresentation>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v = Vec::new();
        for name in ["weyl.galg", "sl2.galg", "qspace.galg", "qplane.galg"] {
            v.push(load(name));
            v.push(load_h(name));
        }
        v
    })
}

fn word_for(p: &GPresentation, raw: &[u8]) -> Vec<Letter> {
    let z = p.flavor() == Flavor::Homogenized;
    let letters = p.n() + usize::from(z);
    raw.iter()
        .map(|&r| match (r as usize) % letters {
            i if i < p.n() => Letter::X(i),
            _ => Letter::Z,
        })
        .collect()
}

fn element(p: &Arc<GPresentation>, words: &[(i8, Vec<u8>)]) -> NCElement {
    let mut e = NCElement::zero(p);
    for (c, w) in words {
        let t = normal_form(p, p.field().from_i64(*c as i64), &word_for(p, w)).unwrap();
        e = e.add(&t).unwrap();
    }
    e
}

fn words(max_len: usize) -> impl Strategy<Value = Vec<(i8, Vec<u8>)>> {
    prop::collection::vec((-5i8..=5, prop::collection::vec(any::<u8>(), 0..=max_len)), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_is_idempotent(which in 0usize..8, w in words(6)) {
        let p = &certified()[which];
        let e = element(p, &w);
        prop_assert_eq!(NCElement::parse(p, &e.to_string()).unwrap(), e.clone());
        for (m, c) in e.terms() {
            let again = normal_form(p, c.clone(), &m.word()).unwrap();
            prop_assert_eq!(again.terms().len(), 1);
            prop_assert_eq!(again.coefficient(m), c.clone());
        }
    }

    #[test]
    fn product_is_associative(which in 0usize..8, a in words(3), b in words(3), c in words(3)) {
        let p = &certified()[which];
        let (x, y, z) = (element(p, &a), element(p, &b), element(p, &c));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn z_is_central(which in 0usize..4, a in words(4)) {
        let p = &certified()[2 * which + 1];
        let x = element(p, &a);
        let z = NCElement::letter(p, Letter::Z).unwrap();
        prop_assert_eq!(x.mul(&z).unwrap(), z.mul(&x).unwrap());
    }

    #[test]
    fn dehomogenization_is_a_homomorphism(which in 0usize..4, a in words(3), b in words(3)) {
        let p = &certified()[2 * which + 1];
        let (x, y) = (element(p, &a), element(p, &b));
        let lhs = x.mul(&y).unwrap().dehomogenize().unwrap();
        let rhs = x.dehomogenize().unwrap().mul(&y.dehomogenize().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// The monomials appearing in normal forms of all words of degree `d` are
/// exactly the PBW monomials of that degree.
#[test]
fn normal_forms_span_graded_pieces() {
    for p in certified().iter().filter(|p| p.flavor() == Flavor::Homogenized) {
        let letters: Vec<Letter> = (0..p.n()).map(Letter::X).chain([Letter::Z]).collect();
        for d in 0..=4usize {
            let mut seen: BTreeSet<Monomial> = BTreeSet::new();
            let total = letters.len().pow(d as u32);
            for mut idx in 0..total {
                let mut w = Vec::with_capacity(d);
                for _ in 0..d {
                    w.push(letters[idx % letters.len()]);
                    idx /= letters.len();
                }
                let e = normal_form(p, p.field().one(), &w).unwrap();
                seen.extend(e.terms().keys().cloned());
            }
            assert!(seen.iter().all(|m| m.degree() as usize == d));
            assert_eq!(seen.len() as u64, graded_dim(p, d), "degree {d}");
        }
    }
}

fn algebras() -> &'static Vec<ShriekAlgebra> {
    static CELL: OnceLock<Vec<ShriekAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| ALGEBRAS.iter().map(|(name, _)| shriek(name)).collect())
}

#[test]
fn relation_dimensions_add_up() {
    for (a, &(name, n)) in algebras().iter().zip(ALGEBRAS) {
        let (r, rp) = a.relation_dims();
        assert_eq!(r + rp, (n + 1) * (n + 1), "{name}");
        assert_eq!(r, n * (n + 1) / 2, "{name}");
    }
}

#[test]
fn dual_is_associative_on_all_basis_triples() {
    for a in algebras() {
        let alg = a.full();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                for k in 0..alg.dim() {
                    let (x, y, z) = (alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k));
                    let l = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
                    let r = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn gram_matrices_are_nondegenerate() {
    for a in algebras() {
        for j in 0..=a.n() + 1 {
            assert!(!a.gram(j).determinant().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn nakayama_ignores_socle_scale(which in 0usize..7, num in -9i64..=9, den in 1i64..=9) {
        prop_assume!(num != 0);
        let a = &algebras()[which];
        let q = Field::Rational;
        let lambda = q.from_i64(num).try_div(&q.from_i64(den)).unwrap();
        let s = a.nakayama().unwrap();
        let scaled = a.with_socle_scale(&lambda).nakayama().unwrap();
        prop_assert_eq!(scaled.blocks(), s.blocks());
    }

    #[test]
    fn nakayama_is_determined_by_pairing(which in 0usize..7, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let a = &algebras()[which];
        let alg = a.full();
        let s = a.nakayama().unwrap();
        let top = a.n() + 1;
        let (xi, yi) = (i.index(alg.dim()), j.index(alg.dim()));
        prop_assume!(alg.degree_of(xi) + alg.degree_of(yi) == top);
        let (x, y) = (alg.basis_vector(xi), alg.basis_vector(yi));
        prop_assert_eq!(a.socle_pairing(&s.apply(&y), &x).unwrap(), a.socle_pairing(&x, &y).unwrap());
    }

    #[test]
    fn random_modules_resolve_minimally(which in 0usize..7, seed in any::<u64>(), over_sub in any::<bool>()) {
        let a = &algebras()[which];
        let alg = if over_sub { a.sub() } else { a.full() };
        let m = random_module(alg, 2, &mut StdRng::seed_from_u64(seed));
        prop_assert!(m.check().is_empty());
        let res = resolve(&m, 3);
        prop_assert!(res.is_minimal());
        // Ω of a module is never larger than its projective cover
        prop_assert!(syzygy(&m).module.total_dim() <= res.steps[0].rank * alg.dim());
    }

    #[test]
    fn twist_round_trips(which in 0usize..7, seed in any::<u64>()) {
        let a = &algebras()[which];
        let s = a.nakayama().unwrap();
        let m = random_module(a.full(), 2, &mut StdRng::seed_from_u64(seed));
        let t = twist_by_nakayama(&m, &s).unwrap();
        prop_assert!(t.check().is_empty());
        prop_assert_eq!(twist_by_nakayama(&t, &s.inverse()).unwrap(), m);
    }

    #[test]
    fn module_files_round_trip(which in 0usize..7, seed in any::<u64>(), over_sub in any::<bool>()) {
        let a = &algebras()[which];
        let (alg, over) = if over_sub { (a.sub(), Over::Sub) } else { (a.full(), Over::Full) };
        let m = random_module(alg, 2, &mut StdRng::seed_from_u64(seed));
        let text = write_module(&m, "a.galg", over);
        prop_assert_eq!(ModuleFile::parse(&text).unwrap().to_module(a).unwrap(), m);
    }

    #[test]
    fn induction_commutes_with_syzygy(which in 0usize..7, seed in any::<u64>()) {
        let a = &algebras()[which];
        let m = random_module(a.sub(), 2, &mut StdRng::seed_from_u64(seed));
        let ind = induce(a, &m).unwrap();
        prop_assert!(ind.check().is_empty());
        prop_assert_eq!(ind.total_dim(), 2 * m.total_dim());
        // the restriction of the induced module contains M in the z-free part
        let r = restrict(a, &ind).unwrap();
        prop_assert_eq!(r.total_dim(), 2 * m.total_dim());
        let lhs = syzygy(&ind).module;
        let rhs = induce(a, &syzygy(&m).module).unwrap();
        prop_assert!(find_isomorphism(&lhs, &rhs).unwrap().is_some());
    }
}

#[test]
fn twisted_regular_module_is_isomorphic_to_regular() {
    for a in algebras() {
        let reg = GradedModule::regular(a.full().clone());
        let tw = twist_by_nakayama(&reg, &a.nakayama().unwrap()).unwrap();
        assert!(find_isomorphism(&reg, &tw).unwrap().is_some());
    }
}
