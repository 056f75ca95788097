//! Property tests over small constructed instances.

use std::sync::Arc;

use proptest::prelude::*;

use twofusion::classical::{make_group, sylow2, GroupSpec};
use twofusion::cli::cache::{load, store, Decoded};
use twofusion::cli::manifest::parse_manifest;
use twofusion::fusion::{build_fusion, inner_fusion, is_isomorphic, FusionSystem};
use twofusion::gf::Field;
use twofusion::grp::{
    elementary_abelian_subgroups, normalizer, subgroups_of_2_group, Ambient, Element, Group, Perm, Subgroup,
    DEFAULT_CAP,
};
use twofusion::local2::{delta_e, gamma_sk, is_k_balanced, w_closure};

const SMALL: &[&str] = &[
    "SL(2,3)", "GL(2,3)", "SL(2,5)", "PSL(2,7)", "Alt(6)", "Sym(4)", "SL(2,7)", "PSL(2,9)", "GU(2,3)", "Alt(5)",
];

fn fusion(s: &str) -> FusionSystem {
    let (g, p) = sylow2(&s.parse().unwrap()).unwrap();
    build_fusion(&g, Some(&p)).unwrap()
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Right action of `SL(2,3)` on the eight nonzero vectors of `GF(3)^2`,
/// placed on points `offset..offset + 8` of a permutation domain of size
/// `degree`.
fn sl23_on_vectors(degree: usize, offset: usize) -> Vec<Element> {
    let vecs: Vec<(u8, u8)> = (0..9u8).map(|i| (i / 3, i % 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[u8; 2]; 2]| {
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, &(a, b)) in vecs.iter().enumerate() {
            let w = ((a * m[0][0] + b * m[1][0]) % 3, (a * m[0][1] + b * m[1][1]) % 3);
            images[offset + i] = offset + vecs.iter().position(|&v| v == w).unwrap();
        }
        Element::Perm(Perm::from_images(&images).unwrap())
    };
    vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])]
}

/// 2-groups `B` as permutation generators on points `offset..`.
fn b_factor(choice: usize, degree: usize, offset: usize) -> Vec<Element> {
    let cycles: Vec<Vec<Vec<usize>>> = match choice {
        0 => vec![vec![vec![1, 2]]],
        1 => vec![vec![vec![1, 2, 3, 4]]],
        2 => vec![vec![vec![1, 2]], vec![vec![3, 4]]],
        3 => vec![vec![vec![1, 2, 3, 4]], vec![vec![1, 3]]],
        _ => vec![vec![vec![1, 2, 3, 4]], vec![vec![5, 6]]],
    };
    cycles
        .iter()
        .map(|g| {
            let shifted: Vec<Vec<usize>> = g.iter().map(|c| c.iter().map(|&p| p + offset).collect()).collect();
            let refs: Vec<&[usize]> = shifted.iter().map(|c| c.as_slice()).collect();
            Element::Perm(Perm::from_cycles(degree, &refs).unwrap())
        })
        .collect()
}

fn perm_group(amb: &Arc<Ambient>, gens: Vec<Element>) -> Group {
    let g = Group::new(amb.clone(), gens, "G").unwrap();
    g.enumerate().unwrap();
    g
}

/// Balanced-ish test groups: products of `S3`, `C3` and `C2` factors.
fn small_perm_group(choice: usize) -> (Arc<Ambient>, Group) {
    let cycles: &[&[&[usize]]] = match choice {
        0 => &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5, 6]], &[&[4, 5]], &[&[7, 8]]],
        1 => &[&[&[1, 2, 3]], &[&[4, 5]], &[&[6, 7]], &[&[8, 9]]],
        2 => &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5]], &[&[6, 7]], &[&[8, 9]]],
        _ => &[&[&[1, 2, 3, 4], &[5, 6]], &[&[1, 2]], &[&[7, 8]], &[&[9, 10]]],
    };
    let degree = cycles.iter().flat_map(|c| c.iter()).flat_map(|c| c.iter()).copied().max().unwrap();
    let amb = Ambient::permutations(degree);
    let gens = cycles.iter().map(|c| amb.perm(c).unwrap()).collect();
    let g = perm_group(&amb, gens);
    (amb, g)
}

fn rank_two_or_more(g: &Group) -> Vec<Subgroup> {
    let s = twofusion::grp::pgroup::sylow2_search(g).unwrap();
    elementary_abelian_subgroups(&s, 2).unwrap()
}

fn conj_subgroup(g: &Group, h: &Subgroup, x: &Element) -> Vec<Element> {
    let mut v: Vec<Element> = h.elements().iter().map(|y| g.conj(y, x)).collect();
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(cfg(24))]

    #[test]
    fn field_axioms_hold(pf in prop::sample::select(vec![(3u32, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (3, 3), (11, 1)]),
                         a in 0u32..1331, b in 0u32..1331, c in 0u32..1331) {
        let f = Field::new(pf.0, pf.1).unwrap();
        let q = f.order();
        let (a, b, c) = (f.exp(a as u64), twofusion::gf::FieldElement(b % q), twofusion::gf::FieldElement(c % q));
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    }

    #[test]
    fn inner_fusion_is_nilpotent(i in 0..SMALL.len()) {
        let (_, s) = sylow2(&SMALL[i].parse().unwrap()).unwrap();
        let f = inner_fusion(&s).unwrap();
        prop_assert!(f.is_nilpotent().unwrap());
        let center = f.sylow().center();
        prop_assert_eq!(f.center(), center);
        prop_assert_eq!(f.focal_subgroup().len(), f.sylow().closure(&commutators(&f)).len());
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(i in 0..SMALL.len(), j in 0..SMALL.len()) {
        let (f1, f2) = (fusion(SMALL[i]), fusion(SMALL[j]));
        prop_assert_eq!(is_isomorphic(&f1, &f1).unwrap().decided(), Some(true));
        let ab = is_isomorphic(&f1, &f2).unwrap().decided();
        let ba = is_isomorphic(&f2, &f1).unwrap().decided();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn strongly_closed_subgroups_contain_or_centralize_q8(b in 0usize..5) {
        let degree = 8 + 6;
        let amb = Ambient::permutations(degree);
        let mut gens = sl23_on_vectors(degree, 0);
        gens.extend(b_factor(b, degree, 8));
        let g = perm_group(&amb, gens);
        let s = twofusion::grp::pgroup::sylow2_search(&g).unwrap();
        let f = build_fusion(&g, Some(&s)).unwrap();
        let on_first = |x: &Element, inside: bool| {
            let p = x.as_perm().unwrap();
            (0..degree).all(|i| (i < 8) == inside || p.apply(i) == i)
        };
        let sg = f.sylow();
        let a: Vec<u16> = (0..sg.order() as u16).filter(|&i| on_first(sg.element(i).unwrap(), true)).collect();
        let bb: Vec<u16> = (0..sg.order() as u16).filter(|&i| on_first(sg.element(i).unwrap(), false)).collect();
        prop_assert_eq!(a.len(), 8);
        prop_assert!(f.is_strongly_closed(&a));
        prop_assert!(f.is_strongly_closed(&bb));
        for t in subgroups_of_2_group(&s).unwrap() {
            let t = f.indices_of(&t).unwrap();
            if !f.is_strongly_closed(&t) {
                continue;
            }
            let contains = a.iter().all(|x| t.contains(x));
            let centralizes = a.iter().all(|&x| t.iter().all(|&y| sg.commutes(x, y)));
            prop_assert!(contains || centralizes);
        }
    }

    #[test]
    fn w_closure_is_conjugation_equivariant(choice in 0usize..4, pick in any::<prop::sample::Index>(), gi in any::<prop::sample::Index>()) {
        let (_, g) = small_perm_group(choice);
        let cands = rank_two_or_more(&g);
        let a = &cands[pick.index(cands.len())];
        let e = g.enumeration().unwrap();
        let x = e.get(gi.index(e.len())).clone();
        let ag = Subgroup::from_elements(g.ambient(), conj_subgroup(&g, a, &x)).unwrap();
        let w = w_closure(&g, a, 1).unwrap();
        let wg = w_closure(&g, &ag, 1).unwrap();
        prop_assert_eq!(conj_subgroup(&g, &w, &x), wg.elements().to_vec());
    }

    #[test]
    fn w_closure_is_odd_when_balanced(choice in 0usize..4, pick in any::<prop::sample::Index>()) {
        let (_, g) = small_perm_group(choice);
        let cands: Vec<Subgroup> = rank_two_or_more(&g).into_iter().filter(|a| a.order() >= 8).collect();
        prop_assume!(!cands.is_empty());
        let a = &cands[pick.index(cands.len())];
        if is_k_balanced(&g, a, 1).unwrap().is_balanced() {
            prop_assert_eq!(w_closure(&g, a, 1).unwrap().order() % 2, 1);
        }
    }

    #[test]
    fn delta_is_normalized_by_the_normalizer(choice in 0usize..4, pick in any::<prop::sample::Index>()) {
        let (_, g) = small_perm_group(choice);
        let cands = rank_two_or_more(&g);
        let e = &cands[pick.index(cands.len())];
        let d = delta_e(&g, e).unwrap();
        for x in normalizer(&g, e).unwrap().gens() {
            prop_assert_eq!(conj_subgroup(&g, &d, x), d.elements().to_vec());
        }
    }
}

fn commutators(f: &FusionSystem) -> Vec<u16> {
    let s = f.sylow();
    let mut out = Vec::new();
    for a in 0..s.order() as u16 {
        for b in 0..s.order() as u16 {
            out.push(s.mul(s.mul(s.inv(a), s.inv(b)), s.mul(a, b)));
        }
    }
    out
}

proptest! {
    #![proptest_config(cfg(8))]

    #[test]
    fn gamma_shrinks_as_k_grows(i in 0..4usize) {
        let spec = ["GL(2,3)", "Sym(6)", "SL(3,3)", "PSL(2,9)"][i];
        let (g, s) = sylow2(&spec.parse().unwrap()).unwrap();
        g.enumerate_with_cap(DEFAULT_CAP).unwrap();
        let g1 = gamma_sk(&g, &s, 1).unwrap();
        let g2 = gamma_sk(&g, &s, 2).unwrap();
        prop_assert!(g2.is_subgroup_of(&g1));
    }

    #[test]
    fn cache_round_trip(i in 0..SMALL.len()) {
        let dir = tempfile::tempdir().unwrap();
        let spec: GroupSpec = SMALL[i].parse().unwrap();
        let g = make_group(&spec).unwrap();
        g.enumerate().unwrap();
        store(&g, &spec, dir.path()).unwrap();
        let Some(Decoded::Group(h)) = load(&spec, dir.path()).unwrap() else {
            panic!("no group loaded")
        };
        let a: Vec<&Element> = g.enumeration().unwrap().iter().collect();
        let b: Vec<&Element> = h.enumeration().unwrap().iter().collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(g.order().unwrap(), h.order().unwrap());
    }

    #[test]
    fn manifest_round_trip(ids in prop::collection::btree_set("[a-z]{1,6}(\\.[a-z0-9]{1,4}){0,2}", 0..6),
                           n in 1i64..1000) {
        let mut text = String::new();
        for id in &ids {
            text += &format!("check {id}\n  op: gf.two_part\n  n: {n}\n  expect: {n}\n  source: trivial\n  anchor: a b c\n  tier: standard\n\n");
        }
        let m = parse_manifest(&text).unwrap();
        let got: Vec<&str> = m.sorted().iter().map(|c| c.id.as_str()).collect();
        let want: Vec<&str> = ids.iter().map(String::as_str).collect();
        prop_assert_eq!(got, want);
        prop_assert!(m.checks.iter().all(|c| c.params["n"] == n.to_string()));
    }
}
