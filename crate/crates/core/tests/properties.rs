//! Cross-module properties on seeded random inputs, each checked against an
//! oracle that shares no code with the library routine it tests.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use dehnsom::generators::{face_poset, random_graded_poset, random_pure_complex};
use dehnsom::poset::GradedPoset;
use dehnsom::toric::{defect_sequence, verify_generalized_at};
use dehnsom::{ColorSet, SimplicialComplex};

/// Möbius function by counting chains: `μ(s,t) = Σ_k (-1)^k c_k`, where
/// `c_k` is the number of chains `s = x_0 < … < x_k = t`.
fn hall_mobius(p: &GradedPoset, s: usize, t: usize) -> BigInt {
    fn walk(p: &GradedPoset, x: usize, t: usize, len: i64, total: &mut BigInt) {
        if x == t {
            *total += if len % 2 == 0 { 1 } else { -1 };
            return;
        }
        for y in (0..p.len()).filter(|&y| y != x && p.leq(x, y) && p.leq(y, t)) {
            walk(p, y, t, len + 1, total);
        }
    }
    let mut total = BigInt::from(0);
    walk(p, s, t, 0, &mut total);
    total
}

/// Faces of a complex as label sets, straight from the facet list.
fn faces_from_facets(facets: &[BTreeSet<String>]) -> BTreeSet<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for facet in facets {
        let items: Vec<&String> = facet.iter().collect();
        for mask in 0..1u32 << items.len() {
            out.insert(
                (0..items.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| items[i].clone())
                    .collect(),
            );
        }
    }
    out
}

fn label_facets(c: &SimplicialComplex) -> Vec<BTreeSet<String>> {
    c.canonical_facets()
        .iter()
        .map(|f| f.iter().map(|l| l.as_str().to_owned()).collect())
        .collect()
}

/// `Σ_{G ⊇ F} (-1)^{|G|-|F|-1}`, the reduced Euler characteristic of the link.
fn brute_link_euler(faces: &BTreeSet<BTreeSet<String>>, face: &BTreeSet<String>) -> i64 {
    faces
        .iter()
        .filter(|g| face.is_subset(g))
        .map(|g| if (g.len() - face.len()) % 2 == 0 { -1 } else { 1 })
        .sum()
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=4, 0usize..6, 0.15f64..0.8, any::<u64>()).prop_map(|(d, extra, density, seed)| {
        random_pure_complex(d, (d + 1 + extra).min(10), density, seed).expect("valid parameters")
    })
}

fn poset_strategy() -> impl Strategy<Value = GradedPoset> {
    (1usize..=5, 0.2f64..0.9, any::<u64>())
        .prop_map(|(rank, density, seed)| random_graded_poset(rank, density, seed).expect("valid parameters"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mobius_matches_chain_counting(p in poset_strategy()) {
        for s in 0..p.len() {
            for t in (0..p.len()).filter(|&t| p.leq(s, t)) {
                prop_assert_eq!(p.mobius(s, t).unwrap(), hall_mobius(&p, s, t));
            }
        }
    }

    #[test]
    fn order_complex_euler_is_mobius(p in poset_strategy()) {
        let oc = p.order_complex().unwrap();
        let mu = p.mobius(p.bottom(), p.top()).unwrap();
        prop_assert_eq!(oc.complex().reduced_euler_characteristic(), mu);
    }

    #[test]
    fn face_errors_match_brute_force_links(c in complex_strategy()) {
        let faces = faces_from_facets(&label_facets(&c));
        let d = c.d() as i64;
        for face in c.faces() {
            let labels: BTreeSet<String> = c.face_labels(face).iter().map(|l| l.as_str().to_owned()).collect();
            let expected = brute_link_euler(&faces, &labels) - if (d - 1 - labels.len() as i64) % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(c.face_error(face).unwrap(), BigInt::from(expected));
        }
    }

    #[test]
    fn h_vector_matches_binomial_transform(c in complex_strategy()) {
        let f: Vec<i64> = c.f_vector().entries().iter().map(|x| i64::try_from(x).unwrap()).collect();
        let d = f.len() as i64 - 1;
        let h = c.h_vector();
        for k in 0..=d {
            let expected: i64 = (0..=k)
                .map(|i| (if (k - i) % 2 == 0 { 1 } else { -1 }) * binomial(d - i, k - i) * f[i as usize])
                .sum();
            prop_assert_eq!(h.get(k), BigInt::from(expected));
        }
    }

    #[test]
    fn dehn_sommerville_holds(c in complex_strategy()) {
        prop_assert!(c.verify_pure_ds().unwrap().pass);
        prop_assert!(c.verify_short_h().unwrap().pass);
    }

    #[test]
    fn join_multiplies_euler_characteristics(a in complex_strategy(), b in complex_strategy()) {
        let joined = a.join(&b).complex;
        let expected = -(a.reduced_euler_characteristic() * b.reduced_euler_characteristic());
        prop_assert_eq!(joined.reduced_euler_characteristic(), expected);
    }

    #[test]
    fn face_poset_h_matches_complex_h(c in complex_strategy()) {
        let p = face_poset(&c, true).unwrap();
        prop_assert!(p.is_simplicial());
        prop_assert_eq!(p.simplicial_poset_h().unwrap().entries, c.h_vector().entries);
        prop_assert!(p.verify_simplicial_ds().unwrap().pass);
    }

    #[test]
    fn flag_h_refines_h(p in poset_strategy().prop_filter("rank >= 2", |p| p.rho() >= 2)) {
        let b = p.order_complex().unwrap();
        let d = b.d();
        let flag = b.flag_h_vector();
        let h = b.complex().h_vector();
        for i in 0..=d {
            let summed: BigInt = ColorSet::all(d).filter(|s| s.len() == i).map(|s| flag.get(s).clone()).sum();
            prop_assert_eq!(summed, h.get(i as i64));
        }
        prop_assert!(b.verify_flag_ds().unwrap().pass);
        prop_assert!(p.verify_flag_poset().unwrap().pass);
    }

    #[test]
    fn generalized_identity_for_every_admissible_j(p in poset_strategy()) {
        let d = p.d();
        for j in p.min_j_sing().max(-1)..=d {
            prop_assert!(verify_generalized_at(&p, j).unwrap().pass, "j = {}", j);
        }
    }

    #[test]
    fn constant_defect_sign(p in poset_strategy()) {
        let seq = defect_sequence(&p).unwrap();
        let e = p.interval_error(p.bottom(), p.top()).unwrap();
        let sign = if (seq.d + 1) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(seq.get(0), BigInt::from(sign) * e);
    }

    #[test]
    fn duality_is_an_involution(p in poset_strategy()) {
        let dual = p.dual();
        prop_assert_eq!(dual.dual(), p.clone());
        prop_assert_eq!(dual.min_j_sing(), p.min_j_sing());
        let c = p.j_sing_criteria().unwrap();
        prop_assert_eq!(c.recursive, c.flat);
        prop_assert_eq!(c.flat, c.order_complex);
    }
}
