use std::collections::HashSet;

use proptest::prelude::*;
use wflag_core::{AffineRoot, ParabolicSubset, Side, Sign, WeylElement, WeylGroup};

fn group(name: &str) -> WeylGroup {
    WeylGroup::new(name).unwrap()
}

fn all_up_to(g: &WeylGroup, len: usize) -> Vec<WeylElement> {
    g.elements_by_length(len).into_iter().flatten().collect()
}

/// Every subword product of `word`, by plain 2^r enumeration.
fn subword_oracle(g: &WeylGroup, word: &[usize]) -> HashSet<WeylElement> {
    let mut out = HashSet::new();
    for mask in 0u32..(1 << word.len()) {
        let sub: Vec<usize> = word
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        out.insert(g.from_word(&sub).unwrap());
    }
    out
}

/// Shortest-word length by breadth-first search over the Cayley graph.
fn bfs_length(g: &WeylGroup, target: &WeylElement, max: usize) -> Option<usize> {
    let mut frontier = vec![g.identity()];
    let mut seen: HashSet<WeylElement> = HashSet::from([g.identity()]);
    for d in 0..=max {
        if frontier.contains(target) {
            return Some(d);
        }
        let mut next = Vec::new();
        for x in &frontier {
            for i in g.generators() {
                let y = g.multiply(x, &g.simple_reflection(i).unwrap()).unwrap();
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    None
}

#[test]
fn length_matches_cayley_graph_distance() {
    for name in ["A2", "B2", "G2", "A1~", "A2~", "C2~"] {
        let g = group(name);
        for w in all_up_to(&g, 5) {
            assert_eq!(bfs_length(&g, &w, 6), Some(g.length(&w)), "{name}");
            assert_eq!(g.reduced_word(&w).unwrap().len(), g.length(&w));
        }
    }
    let a1 = group("A1~");
    let t = a1.coroot_translation(0).unwrap();
    assert_eq!(bfs_length(&a1, &t, 4), Some(2));
}

#[test]
fn root_flip_count_equals_length() {
    for name in ["A2~", "B2~", "G2~", "A3~"] {
        let g = group(name);
        let d = g.datum();
        for w in all_up_to(&g, 10) {
            if g.length(&w) > 10 {
                continue;
            }
            let winv = g.invert(&w).unwrap();
            let bound = 2 + 2 * w.translation().iter().map(|x| x.abs()).sum::<i64>() * 3;
            let mut flips = 0;
            for root in 0..d.roots().len() {
                for n in -bound..=bound {
                    let a = AffineRoot::new(root, n);
                    if d.is_positive_affine(a) && !d.is_positive_affine(d.act(&winv, a).unwrap()) {
                        flips += 1;
                    }
                }
            }
            assert_eq!(flips, g.length(&w), "{name}");
        }
    }
}

#[test]
fn bruhat_order_matches_subword_property() {
    for name in ["A2", "B2", "A1~", "A2~"] {
        let g = group(name);
        let elems = all_up_to(&g, 7);
        for w in &elems {
            let below = subword_oracle(&g, &g.reduced_word(w).unwrap());
            for u in &elems {
                assert_eq!(g.bruhat_leq(u, w), below.contains(u), "{name}");
            }
            let interval: HashSet<_> = g.elements_below(w).unwrap().into_iter().collect();
            assert_eq!(interval, below);
        }
    }
}

#[test]
fn exchange_property() {
    for name in ["B2", "G2~", "A3"] {
        let g = group(name);
        for w in all_up_to(&g, 6) {
            for i in g.generators() {
                let ws = g.multiply(&w, &g.simple_reflection(i).unwrap()).unwrap();
                assert!(g.bruhat_leq(&ws, &w) ^ g.bruhat_leq(&w, &ws));
                let (lw, lws) = (g.length(&w) as i64, g.length(&ws) as i64);
                assert_eq!((lw - lws).abs(), 1);
                assert_eq!(lws < lw, g.descents(&w, Side::Right).contains(&i));
            }
        }
    }
}

#[test]
fn double_coset_representatives_bound_their_cosets() {
    for name in ["A2", "B2", "A2~"] {
        let g = group(name);
        let gens = g.generators();
        let subsets: Vec<ParabolicSubset> = (0u32..(1 << gens.len()))
            .filter_map(|mask| g.parabolic(gens.iter().copied().filter(|i| mask >> i & 1 == 1)).ok())
            .collect();
        for j in &subsets {
            let wj = g.parabolic_elements(j).unwrap();
            for k in &subsets {
                let wk = g.parabolic_elements(k).unwrap();
                for w in all_up_to(&g, 3) {
                    let min = g.min_double_coset_rep(j, &w, k).unwrap();
                    let max = g.max_double_coset_rep(j, &w, k).unwrap();
                    assert!(j.iter().all(|i| g.is_left_descent(&max, i)));
                    assert!(k.iter().all(|i| g.is_right_descent(&max, i)));
                    for a in &wj {
                        for b in &wk {
                            let x = g.multiply(&g.multiply(a, &w).unwrap(), b).unwrap();
                            assert!(g.bruhat_leq(&min, &x) && g.bruhat_leq(&x, &max));
                            assert_eq!(g.min_double_coset_rep(j, &x, k).unwrap(), min);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn double_coset_order_via_min_and_max_reps_agree() {
    let g = group("A2");
    let elems = all_up_to(&g, 3);
    let subsets: Vec<ParabolicSubset> =
        [vec![], vec![1], vec![2], vec![1, 2]].into_iter().map(|s| g.parabolic(s).unwrap()).collect();
    for j in &subsets {
        for k in &subsets {
            let mut classes: Vec<(WeylElement, WeylElement)> = elems
                .iter()
                .map(|w| (g.min_double_coset_rep(j, w, k).unwrap(), g.max_double_coset_rep(j, w, k).unwrap()))
                .collect();
            classes.sort();
            classes.dedup();
            for (amin, amax) in &classes {
                for (bmin, bmax) in &classes {
                    let by_min = g.bruhat_leq(amin, bmin);
                    assert_eq!(by_min, g.bruhat_leq(amax, bmax));
                    if by_min && g.bruhat_leq(bmin, amin) {
                        assert_eq!(amin, bmin);
                    }
                }
            }
        }
    }
}

#[test]
fn omega_components_in_extended_a2() {
    let g = group("A2~");
    // varpi_1^vee generates P^vee / Q^vee of order 3.
    let t = g.translation(&[1, 0]).unwrap();
    let tau = g.omega_part(&t).unwrap();
    assert_eq!(g.length(&tau), 0);
    let tau3 = g.multiply(&g.multiply(&tau, &tau).unwrap(), &tau).unwrap();
    assert!(g.is_identity(&tau3));
    // Length is unchanged by right multiplication by tau, and Bruhat order
    // separates different components.
    for w in all_up_to(&g, 4) {
        let wt = g.multiply(&w, &tau).unwrap();
        assert_eq!(g.length(&wt), g.length(&w));
        assert!(!g.bruhat_leq(&w, &wt));
        for u in g.elements_below(&w).unwrap() {
            assert!(g.bruhat_leq(&g.multiply(&u, &tau).unwrap(), &wt));
        }
    }
}

#[test]
fn sign_at_alcove_is_ordinary_positivity() {
    for name in ["A2~", "B2~", "G2~"] {
        let g = group(name);
        let d = g.datum();
        for root in 0..d.roots().len() {
            for n in -3..=3 {
                let a = AffineRoot::new(root, n);
                let s = d.sign_at_facet(a, &ParabolicSubset::empty()).unwrap();
                assert_ne!(s, Sign::Zero);
                assert_eq!(s == Sign::Negative, !d.is_positive_affine(a));
            }
        }
    }
}

#[test]
fn i_alpha_f_small_rank_bounds() {
    for name in ["A1~", "A2~", "B2~", "C2~", "G2~"] {
        let g = group(name);
        let d = g.datum();
        let gens = g.generators();
        for mask in 0u32..(1 << gens.len()) - 1 {
            let j = g.parabolic(gens.iter().copied().filter(|i| mask >> i & 1 == 1)).unwrap();
            let x = d.facet_point(&j).unwrap();
            for root in 0..d.roots().len() {
                let i = d.i_alpha_f(root, &j).unwrap();
                assert!(i <= 2, "{name}");
                if d.is_positive_root(root) {
                    assert!(i >= 1);
                }
                // minimality, by direct evaluation
                let zero = wflag_core::root_data::Rational::from_integer(0);
                assert!(d.evaluate(AffineRoot::new(root, -(i as i64)), &x) < zero);
                if i > 0 {
                    assert!(d.evaluate(AffineRoot::new(root, 1 - i as i64), &x) >= zero);
                }
                if j.is_empty() {
                    assert!(i <= 1);
                }
            }
        }
    }
}

#[test]
fn intersection_dimension_examples() {
    let g = group("A1~");
    let d = g.datum();
    let empty = ParabolicSubset::empty();
    let vertex = g.parabolic([1]).unwrap();
    assert_eq!(d.count_intersection_dim(&vertex, &vertex, &g.identity()).unwrap(), 0);
    assert_eq!(d.count_intersection_dim(&empty, &vertex, &g.identity()).unwrap(), 1);
    assert_eq!(d.count_intersection_dim(&empty, &empty, &g.parse("1").unwrap()).unwrap(), 1);
    for name in ["A2~", "B2~"] {
        let g = group(name);
        for w in all_up_to(&g, 6) {
            assert_eq!(g.datum().count_intersection_dim(&empty, &empty, &w).unwrap(), g.length(&w));
        }
    }
}

#[test]
fn affine_action_examples() {
    let g = group("A1~");
    let d = g.datum();
    let alpha = d.simple_root(1);
    let neg = d.negate(alpha);
    let a = AffineRoot::new(alpha, 1);
    assert_eq!(d.act(&g.identity(), a).unwrap(), a);
    let t = g.coroot_translation(alpha).unwrap();
    assert_eq!(d.act(&t, AffineRoot::new(alpha, 0)).unwrap(), AffineRoot::new(alpha, -2));
    assert_eq!(d.act(&g.parse("1").unwrap(), a).unwrap(), AffineRoot::new(neg, 1));
    let other = group("A2~");
    assert!(d.act(&other.identity(), a).is_err());
}

fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..gens, 0..max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn affine_action_is_a_group_action(
        w1 in word_strategy(3, 8),
        w2 in word_strategy(3, 8),
        root in 0usize..6,
        level in -4i64..4,
    ) {
        let g = group("A2~");
        let d = g.datum();
        let (x, y) = (g.from_word(&w1).unwrap(), g.from_word(&w2).unwrap());
        let a = AffineRoot::new(root, level);
        let lhs = d.act(&x, d.act(&y, a).unwrap()).unwrap();
        let rhs = d.act(&g.multiply(&x, &y).unwrap(), a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_laws(w1 in word_strategy(3, 10), w2 in word_strategy(3, 10), w3 in word_strategy(3, 10)) {
        let g = group("B2~");
        let (x, y, z) = (g.from_word(&w1).unwrap(), g.from_word(&w2).unwrap(), g.from_word(&w3).unwrap());
        let xy_z = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let x_yz = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&xy_z, &x_yz);
        let inv = g.invert(&x).unwrap();
        prop_assert!(g.is_identity(&g.multiply(&x, &inv).unwrap()));
        prop_assert_eq!(g.length(&inv), g.length(&x));
    }

    #[test]
    fn reduced_word_round_trip(w in word_strategy(3, 12)) {
        let g = group("A2~");
        let x = g.from_word(&w).unwrap();
        let red = g.reduced_word(&x).unwrap();
        prop_assert_eq!(red.len(), g.length(&x));
        prop_assert_eq!(g.from_word(&red).unwrap(), x.clone());
        let text = wflag_core::format_word(&red);
        prop_assert_eq!(g.parse(&text).unwrap(), x);
    }
}

#[test]
fn proper_affine_parabolics_are_finite() {
    for name in ["A1~", "A2~", "B2~", "G2~", "A3~", "C3~"] {
        let g = WeylGroup::new(name).unwrap();
        let gens = g.generators();
        for mask in 0u32..(1 << gens.len()) - 1 {
            let j: Vec<usize> = gens.iter().copied().filter(|i| mask >> i & 1 == 1).collect();
            let p = g.parabolic(j.clone()).unwrap();
            // closure under right multiplication by J, bailing out if it runs away
            let mut seen = HashSet::from([g.identity()]);
            let mut frontier = vec![g.identity()];
            while let Some(w) = frontier.pop() {
                for &s in &j {
                    let ws = g.multiply(&w, &g.simple_reflection(s).unwrap()).unwrap();
                    if seen.insert(ws.clone()) {
                        frontier.push(ws);
                    }
                }
                assert!(seen.len() <= 5000, "{name} {j:?} looks infinite");
            }
            assert_eq!(g.parabolic_elements(&p).unwrap().len(), seen.len(), "{name} {j:?}");
        }
        assert!(g.parabolic(gens.clone()).is_err());
    }
}
