use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wflag_core::convolution::{
    orbit_dimension, orbit_dimension_by_roots, star, star_projection_identity, twisted_product_poincare,
    ih_poincare_schubert, is_q_maximal, is_q_type,
};
use wflag_core::fibers::{
    euler_table_bruteforce, fiber_table, multiplicities, multiplicities_via_inverse_kl,
};
use wflag_core::{
    demazure_product, DemazureMapSpec, KlTable, OrbitClass, ParabolicSubset, PolyZ, WeylElement, WeylGroup,
};

fn group(name: &str) -> WeylGroup {
    WeylGroup::new(name).unwrap()
}

fn all_up_to(g: &WeylGroup, len: usize) -> Vec<WeylElement> {
    g.elements_by_length(len).into_iter().flatten().collect()
}

fn all_words(gens: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                gens.iter().map(move |&g| {
                    let mut w2 = w.clone();
                    w2.push(g);
                    w2
                })
            })
            .collect();
    }
    out
}

fn proper_parabolics(g: &WeylGroup) -> Vec<ParabolicSubset> {
    let gens = g.generators();
    (0u32..(1 << gens.len()))
        .filter_map(|mask| g.parabolic(gens.iter().copied().filter(|i| mask >> i & 1 == 1)).ok())
        .collect()
}

#[test]
fn kl_routes_agree_on_small_intervals() {
    for name in ["B2", "A3", "A2~", "G2"] {
        let g = group(name);
        let t = KlTable::new(&g);
        let elems = all_up_to(&g, 6);
        for w in &elems {
            for u in &elems {
                let p = t.kl_polynomial(u, w).unwrap();
                assert_eq!(p, t.kl_polynomial_via_r(u, w).unwrap(), "{name}");
                if g.bruhat_leq(u, w) {
                    assert_eq!(p.coeff(0), 1);
                    if u != w {
                        let gap = g.length(w) - g.length(u);
                        assert!(p.degree().unwrap() <= (gap - 1) / 2);
                        if gap <= 2 {
                            assert_eq!(p, PolyZ::one());
                        }
                    }
                    assert!(p.is_nonnegative());
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }
}

#[test]
fn dihedral_kl_polynomials_are_trivial() {
    let g = group("A1~");
    let t = KlTable::new(&g);
    let elems = all_up_to(&g, 10);
    for w in &elems {
        for u in g.elements_below(w).unwrap() {
            assert_eq!(t.kl_polynomial(&u, w).unwrap(), PolyZ::one());
            assert_eq!(t.kl_polynomial_via_r(&u, w).unwrap(), PolyZ::one());
        }
    }
}

#[test]
fn inverse_kl_inverts_kl() {
    for name in ["A3", "A2~", "B2~"] {
        let g = group(name);
        let t = KlTable::new(&g);
        for w in all_up_to(&g, 5) {
            let inv = t.inverse_kl_column(&w).unwrap();
            for u in g.elements_below(&w).unwrap() {
                let mut sum = PolyZ::zero();
                for (x, ptilde) in &inv {
                    sum += &(&t.kl_polynomial(&u, x).unwrap() * ptilde);
                }
                let expected = if u == w { PolyZ::one() } else { PolyZ::zero() };
                assert_eq!(sum, expected, "{name}");
                assert!(t.inverse_kl_q(&u, &w, &w).unwrap().is_nonnegative());
            }
        }
    }
}

#[test]
fn demazure_product_monoid_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["A2", "B2", "A2~", "G2~"] {
        let g = group(name);
        let elems = all_up_to(&g, 6);
        for _ in 0..1000 {
            let pick = |rng: &mut ChaCha8Rng| elems[rng.gen_range(0..elems.len())].clone();
            let (u, v, w) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let left = demazure_product(&g, &demazure_product(&g, &u, &v).unwrap(), &w).unwrap();
            let right = demazure_product(&g, &u, &demazure_product(&g, &v, &w).unwrap()).unwrap();
            assert_eq!(left, right);
            let uv = demazure_product(&g, &u, &v).unwrap();
            assert!(g.bruhat_leq(&u, &uv) && g.bruhat_leq(&v, &uv));
            let plain = g.multiply(&u, &v).unwrap();
            if g.length(&plain) == g.length(&u) + g.length(&v) {
                assert_eq!(uv, plain);
            }
            assert_eq!(demazure_product(&g, &u, &g.identity()).unwrap(), u);
            assert_eq!(demazure_product(&g, &g.identity(), &u).unwrap(), u);
        }
    }
}

#[test]
fn star_is_associative_with_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["A2", "B2", "A2~"] {
        let g = group(name);
        let elems = all_up_to(&g, 5);
        for p in proper_parabolics(&g) {
            let unit = OrbitClass::new(&g, &p, &g.identity()).unwrap();
            for _ in 0..100 {
                let mut pick = || {
                    OrbitClass::new(&g, &p, &elems[rng.gen_range(0..elems.len())]).unwrap()
                };
                let (a, b, c) = (pick(), pick(), pick());
                let left = star(&g, &p, &star(&g, &p, &a, &b).unwrap(), &c).unwrap();
                let right = star(&g, &p, &a, &star(&g, &p, &b, &c).unwrap()).unwrap();
                assert_eq!(left, right);
                assert_eq!(star(&g, &p, &a, &unit).unwrap(), a);
                assert_eq!(star(&g, &p, &unit, &a).unwrap(), a);
                // the lifted product of maximal representatives is maximal again
                let prod = demazure_product(&g, &a.max_rep(&g).unwrap(), &b.max_rep(&g).unwrap()).unwrap();
                assert!(p.iter().all(|i| g.is_left_descent(&prod, i) && g.is_right_descent(&prod, i)));
            }
        }
    }
}

#[test]
fn q_type_degenerates_when_p_equals_q() {
    for name in ["A2", "B2~"] {
        let g = group(name);
        for p in proper_parabolics(&g) {
            for w in all_up_to(&g, 4) {
                let c = OrbitClass::new(&g, &p, &w).unwrap();
                assert!(is_q_type(&g, &p, &p, &c).unwrap());
                assert!(is_q_maximal(&g, &p, &p, &c).unwrap());
            }
        }
    }
}

#[test]
fn projection_identity_on_small_tuples() {
    for name in ["B2", "A2~"] {
        let g = group(name);
        let b = ParabolicSubset::empty();
        for q in proper_parabolics(&g).into_iter().filter(|q| q.len() == 1) {
            let qtype: Vec<OrbitClass> = all_up_to(&g, 4)
                .into_iter()
                .map(|w| OrbitClass::new(&g, &b, &w).unwrap())
                .filter(|c| is_q_type(&g, &b, &q, c).unwrap())
                .collect();
            for x in &qtype {
                for y in &qtype {
                    assert!(star_projection_identity(&g, &b, &q, &[x.clone(), y.clone()]).unwrap());
                }
            }
        }
    }
}

#[test]
fn orbit_dimensions_agree_and_respect_closure() {
    let g = group("A2~");
    let elems = all_up_to(&g, 6);
    let empty = ParabolicSubset::empty();
    for p in proper_parabolics(&g) {
        let mut mins: Vec<WeylElement> = elems
            .iter()
            .map(|w| g.min_double_coset_rep(&empty, w, &p).unwrap())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        g.sort_elements(&mut mins);
        for v in &mins {
            assert_eq!(orbit_dimension(&g, &p, v).unwrap(), orbit_dimension_by_roots(&g, &p, v).unwrap());
        }
        for v in &mins {
            for w in &mins {
                if g.bruhat_leq(v, w) {
                    let (dv, dw) = (orbit_dimension(&g, &p, v).unwrap(), orbit_dimension(&g, &p, w).unwrap());
                    assert!(dv <= dw);
                    assert_eq!(dv == dw, v == w);
                }
            }
        }
    }
}

#[test]
fn twisted_product_counts_cells() {
    let g = group("A2");
    for p in proper_parabolics(&g) {
        let classes: Vec<OrbitClass> = all_up_to(&g, 3)
            .iter()
            .map(|w| OrbitClass::new(&g, &p, w).unwrap())
            .collect();
        for a in &classes {
            for b in &classes {
                let poly = twisted_product_poincare(&g, &p, &[a.clone(), b.clone()]).unwrap();
                let cells = |c: &OrbitClass| {
                    let top = c.max_rep(&g).unwrap();
                    g.elements_below(&top)
                        .unwrap()
                        .iter()
                        .map(|x| g.min_double_coset_rep(&ParabolicSubset::empty(), x, &p).unwrap())
                        .collect::<HashSet<_>>()
                        .len() as i64
                };
                assert_eq!(poly.eval(1), cells(a) * cells(b));
            }
        }
    }
}

#[test]
fn ih_poincare_is_palindromic() {
    let g = group("A3");
    let t = KlTable::new(&g);
    let b = ParabolicSubset::empty();
    for w in all_up_to(&g, 6) {
        let ih = ih_poincare_schubert(&t, &b, &OrbitClass::new(&g, &b, &w).unwrap()).unwrap();
        assert_eq!(ih.bar_shift(g.length(&w)), ih);
    }
}

#[test]
fn fiber_polynomials_match_subword_counts() {
    for (name, max_len) in [("A1", 6), ("A2", 6), ("B2", 6), ("A1~", 5), ("A2~", 4)] {
        let g = group(name);
        for len in 0..=max_len {
            for word in all_words(&g.generators(), len) {
                let spec = DemazureMapSpec::new(&g, &word).unwrap();
                let fibers = fiber_table(&g, &spec).unwrap();
                let euler = euler_table_bruteforce(&g, &spec).unwrap();
                assert_eq!(fibers.len(), euler.len());
                let mut total = PolyZ::zero();
                for (v, f) in &fibers {
                    assert_eq!(f.eval(1) as u64, euler[v]);
                    assert_eq!(f.coeff(0), 1, "one zero-dimensional cell");
                    assert!(g.bruhat_leq(v, spec.target()));
                    total += &f.shift(g.length(v));
                }
                assert_eq!(total, (&PolyZ::one() + &PolyZ::q()).pow(len as u32));
                if g.length(spec.target()) == len {
                    assert_eq!(fibers[spec.target()], PolyZ::one());
                }
            }
        }
    }
}

#[test]
fn decomposition_checks_hold() {
    for (name, max_len) in [("A2", 5), ("B2", 5), ("A3", 4), ("A2~", 4)] {
        let g = group(name);
        let t = KlTable::new(&g);
        for len in 1..=max_len {
            for word in all_words(&g.generators(), len) {
                let spec = DemazureMapSpec::new(&g, &word).unwrap();
                let rep = multiplicities(&t, &spec).unwrap();
                assert!(rep.checks.all(), "{name} {word:?} {:?}", rep.checks);
                assert_eq!(rep.multiplicity(spec.target()), rep.fiber(spec.target()));
                if g.length(spec.target()) == len {
                    assert_eq!(rep.multiplicity(spec.target()), PolyZ::one());
                }
                assert!(rep.supports.contains(spec.target()));
                let other = multiplicities_via_inverse_kl(&t, &spec).unwrap();
                for row in &rep.rows {
                    assert_eq!(other[&row.v], row.multiplicity);
                }
            }
        }
    }
}

#[test]
fn concurrent_queries_agree() {
    let g = group("A2~");
    let t = KlTable::new(&g);
    let elems = all_up_to(&g, 6);
    let results: Vec<Vec<PolyZ>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                scope.spawn(|| {
                    elems
                        .iter()
                        .map(|w| t.kl_polynomial(&g.identity(), w).unwrap())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for r in &results[1..] {
        assert_eq!(r, &results[0]);
    }
    let fresh = KlTable::new(&g);
    let serial: Vec<PolyZ> = elems.iter().map(|w| fresh.kl_polynomial(&g.identity(), w).unwrap()).collect();
    assert_eq!(results[0], serial);
}
