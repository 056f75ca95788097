//! Acceptance criteria 1 to 10. Each test prints one PASS/FAIL line.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::Instant;

use twofusion::classical::{
    diagonal_two_torus, eigenvalues_in_field, explicit_sylow_a10, generation_subgroups, lifted_involutions,
    make_group, sylow2, GroupSpec, InvolutionLabel, Sign,
};
use twofusion::classical::special::order_four_block_matrix;
use twofusion::fusion::{build_fusion, inner_fusion, is_isomorphic, FusionSystem, IsoCertificate, IsoOutcome};
use twofusion::gf::{two_part, Field, FieldElement};
use twofusion::grp::cores::image_in;
use twofusion::grp::{
    center, conjugacy_classes, derived_subgroup, o2, recognize_2_group, Element, Group, Matrix, Subgroup,
    TwoGroupType,
};
use twofusion::local2::{k_connected, k_connected_small, normal_ea_test_small, two_group_library};

fn report(n: u32, what: &str, start: Instant, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "acceptance criterion {n:>2} [{status}] {what} ({:.2} s)",
        start.elapsed().as_secs_f64()
    );
    assert!(failures.is_empty(), "criterion {n}: {failures:?}");
}

fn spec(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

fn fusion(s: &str) -> FusionSystem {
    let (g, p) = sylow2(&spec(s)).unwrap();
    build_fusion(&g, Some(&p)).unwrap()
}

macro_rules! expect {
    ($fails:ident, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $fails.push(format!($($msg)+));
        }
    };
}

#[test]
fn criterion_01_sylow_types() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for q in [3u32, 5, 7, 9, 11, 13] {
        let (_, s) = sylow2(&spec(&format!("SL(2,{q})"))).unwrap();
        let order = two_part((q * q - 1) as i64).unwrap() as usize;
        let t = recognize_2_group(&s).unwrap();
        expect!(fails, t == TwoGroupType::GeneralizedQuaternion(order), "SL(2,{q}): {t}");
        expect!(fails, s.order() == order, "SL(2,{q}) order {}", s.order());
    }
    for (g, want) in [
        ("GL(2,7)", TwoGroupType::Semidihedral(32)),
        ("GL(2,5)", TwoGroupType::Wreathed(2)),
        ("GU(2,3)", TwoGroupType::Wreathed(2)),
        ("PSL(2,9)", TwoGroupType::Dihedral(8)),
    ] {
        let (_, s) = sylow2(&spec(g)).unwrap();
        let t = recognize_2_group(&s).unwrap();
        expect!(fails, t == want && s.order() == want.order(), "{g}: {t} of order {}", s.order());
    }
    report(1, "Sylow 2-subgroup types", start, &fails);
}

/// Number of points moved by a permutation.
fn moved(x: &Element) -> usize {
    let p = x.as_perm().unwrap();
    p.images().enumerate().filter(|&(i, j)| i != j).count()
}

fn is_involution(x: &Element) -> bool {
    let p = x.as_perm().unwrap();
    moved(x) > 0 && (0..p.degree()).all(|i| p.apply(p.apply(i)) == i)
}

#[test]
fn criterion_02_alternating_counts() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let s = explicit_sylow_a10().unwrap();
    expect!(fails, s.order() == 128, "order {}", s.order());
    let type22: BTreeSet<&Element> = s.elements().iter().filter(|x| is_involution(x) && moved(x) == 4).collect();
    let type24: BTreeSet<&Element> = s.elements().iter().filter(|x| is_involution(x) && moved(x) == 8).collect();
    expect!(fails, type22.len() == 14, "{} involutions of type 2^2", type22.len());
    expect!(fails, type24.len() == 29, "{} involutions of type 2^4", type24.len());
    let g = make_group(&spec("Alt(10)")).unwrap();
    let f = build_fusion(&g, Some(&s)).unwrap();
    let mut found: Vec<BTreeSet<&Element>> = f
        .involution_classes()
        .iter()
        .map(|&(rep, _)| {
            f.element_classes()[f.element_class_of(rep)]
                .iter()
                .map(|&i| f.sylow().element(i).unwrap())
                .collect()
        })
        .collect();
    found.sort_by_key(|c| c.len());
    // in A10 the involutions of each cycle type form one class
    let sizes: Vec<usize> = found.iter().map(|c| c.len()).collect();
    expect!(fails, found == vec![type22, type24], "F-classes of sizes {sizes:?}");
    report(2, "A10: |S| = 128, involution counts 14 and 29, F-classes {14, 29}", start, &fails);
}

#[test]
fn criterion_03_psl43_class_of_17() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let l = lifted_involutions(4, 3).unwrap();
    let field = Field::new(3, 1).unwrap();
    // oracle: square each lift entrywise
    for x in &l.lifts {
        let m = x.as_matrix().unwrap();
        let sq = (0..4).all(|i| {
            (0..4).all(|j| {
                let v = (0..4).fold(FieldElement::ZERO, |acc, k| {
                    field.add(acc, field.mul(m.entry(i, k), m.entry(k, j)))
                });
                v == if i == j { field.one() } else { FieldElement::ZERO }
            })
        });
        expect!(fails, sq, "a lift does not square to 1");
    }
    expect!(fails, l.sylow_order == 512, "|W| = {}", l.sylow_order);
    expect!(fails, l.lifts.len() == 35, "{} involutions in W ∩ SL(4,3)", l.lifts.len());
    expect!(fails, l.images.len() == 17, "{} projective images", l.images.len());
    expect!(fails, l.labels.iter().all(|&t| t == InvolutionLabel::T(2)), "labels {:?}", l.labels);
    report(3, "PSL(4,3): 35 lifts, 17 images in one class", start, &fails);
}

#[test]
fn criterion_04_flagship_isomorphisms() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for (a, b) in [
        ("Alt(7)", "PSL(2,9)"),
        ("M11", "PSL(3,3)"),
        ("SU(3,3)", "SL(3,5)"),
        ("PSL(3,3)", "PSU(3,5)"),
    ] {
        let (f1, f2) = (fusion(a), fusion(b));
        match is_isomorphic(&f1, &f2).unwrap() {
            IsoOutcome::Isomorphic(cert) => {
                let again = IsoCertificate::from_json(&cert.to_json().unwrap()).unwrap();
                expect!(fails, again.verify(&f1, &f2).unwrap(), "{a} ~ {b}: certificate does not re-verify");
                expect!(fails, cert.subgroup_pairs_checked > 0, "{a} ~ {b}: no pairs checked");
            }
            other => fails.push(format!("{a} vs {b}: {other:?}")),
        }
    }
    report(4, "flagship fusion isomorphisms with re-verified certificates", start, &fails);
}

#[test]
fn criterion_05_negative_control() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let f = fusion("PSL(2,9)");
    let (_, d8) = sylow2(&spec("PSL(2,7)")).unwrap();
    expect!(fails, recognize_2_group(&d8).unwrap() == TwoGroupType::Dihedral(8), "not D8");
    let inner = inner_fusion(&d8).unwrap();
    let out = is_isomorphic(&f, &inner).unwrap();
    expect!(fails, out.decided() == Some(false), "{out:?}");
    report(5, "F(PSL(2,9)) is not F_D8(D8)", start, &fails);
}

fn meets_center(f: &FusionSystem, g: &Group) -> Vec<u16> {
    f.meet(&center(g).unwrap())
}

#[test]
fn criterion_06_fusion_center() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let f = fusion("SL(2,5)");
    let z = f.fusion_center().unwrap();
    let g = f.group().unwrap();
    let minus = g.ambient().matrix(&[&[-1, 0], &[0, -1]]).unwrap();
    let zi: Vec<&Element> = z.iter().map(|&i| f.sylow().element(i).unwrap()).collect();
    expect!(fails, zi.len() == 2 && zi.contains(&&minus), "Z(F(SL(2,5))) = {zi:?}");
    expect!(fails, z == meets_center(&f, g), "SL(2,5): Z(F) differs from S ∩ Z(G)");
    let f = fusion("SL(3,5)");
    let z = f.fusion_center().unwrap();
    expect!(fails, z.len() == 1, "|Z(F(SL(3,5)))| = {}", z.len());
    expect!(fails, z == meets_center(&f, f.group().unwrap()), "SL(3,5): Z(F) differs from S ∩ Z(G)");
    report(6, "fusion centers of SL(2,5) and SL(3,5)", start, &fails);
}

#[test]
fn criterion_07_generation() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for g in ["SL(3,3)", "SU(3,3)"] {
        let (grp, s) = sylow2(&spec(g)).unwrap();
        expect!(fails, twofusion::local2::is_k_generated(&grp, &s, 2).unwrap(), "{g} not 2-generated");
    }
    let d = generation_subgroups(3, 3, Sign::Plus).unwrap();
    let join = d.blocks[0].join(&d.blocks[1]).unwrap();
    expect!(fails, join.order() as u128 == d.group.order().unwrap(), "join has order {}", join.order());
    expect!(fails, join.order() == 5616, "join has order {}", join.order());
    let amb = d.group.ambient();
    let m = &d.conjugators[0];
    let conj: BTreeSet<Element> = d.blocks[0].elements().iter().map(|u| amb.conj(u, m)).collect();
    let target: BTreeSet<Element> = d.blocks[1].elements().iter().cloned().collect();
    expect!(fails, conj == target, "U1^m1 differs from U2");
    report(7, "SL(3,3) and SU(3,3) are 2-generated; <U1, U2> = SL(3,3); U1^m1 = U2", start, &fails);
}

#[test]
fn criterion_08_connectivity() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let (_, s) = sylow2(&spec("SL(6,3)")).unwrap();
    let r = k_connected(&s, 3).unwrap();
    expect!(fails, r.is_connected(), "Syl2(SL(6,3)) has {} components", r.components);
    let mut checked = 0;
    for (name, sg) in two_group_library(64).unwrap() {
        for k in 1..=3 {
            if normal_ea_test_small(&sg, k).unwrap() {
                checked += 1;
                expect!(fails, k_connected_small(&sg, k).unwrap().is_connected(), "{name}, k = {k}");
            }
        }
    }
    expect!(fails, checked > 0, "the sweep tested nothing");
    report(8, "Syl2(SL(6,3)) is 3-connected; normal EA criterion sweep", start, &fails);
}

fn det4(f: &Field, m: &[[FieldElement; 4]; 4]) -> FieldElement {
    fn minor(f: &Field, m: &[Vec<FieldElement>]) -> FieldElement {
        if m.len() == 1 {
            return m[0][0];
        }
        let mut acc = FieldElement::ZERO;
        for c in 0..m.len() {
            let sub: Vec<Vec<FieldElement>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                .collect();
            let t = f.mul(m[0][c], minor(f, &sub));
            acc = if c % 2 == 0 { f.add(acc, t) } else { f.sub(acc, t) };
        }
        acc
    }
    let rows: Vec<Vec<FieldElement>> = m.iter().map(|r| r.to_vec()).collect();
    minor(f, &rows)
}

#[test]
fn criterion_09_no_eigenvalue_matrix() {
    let start = Instant::now();
    let mut fails = Vec::new();
    let (amb, x) = order_four_block_matrix(5).unwrap();
    let field = amb.field().unwrap().clone();
    let m: &Matrix = x.as_matrix().unwrap();
    expect!(fails, eigenvalues_in_field(&amb, &x).unwrap().is_empty(), "eigenvalues found");
    for l in field.elements() {
        let mut a = [[FieldElement::ZERO; 4]; 4];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = if i == j { field.sub(m.entry(i, j), l) } else { m.entry(i, j) };
            }
        }
        expect!(fails, det4(&field, &a) != FieldElement::ZERO, "{l:?} is a root of the characteristic polynomial");
    }
    let psl = twofusion::classical::ambient(&spec("PSL(4,5)")).unwrap();
    let img = image_in(&psl, &Subgroup::generated(&amb, &[x], 64).unwrap());
    expect!(fails, img.order() == 4, "projective image has order {}", img.order());
    report(9, "4x4 matrix over GF(5) without eigenvalues, projective order 4", start, &fails);
}

const SMALL_GROUPS: &[&str] = &[
    "SL(2,3)", "GL(2,3)", "SL(2,5)", "GL(2,5)", "SL(2,7)", "SL(2,9)", "PSL(2,7)", "PSL(2,9)", "PSL(2,11)",
    "PSL(2,13)", "PGL(2,5)", "PGL(2,7)", "GU(2,3)", "SU(2,5)", "Alt(5)", "Alt(6)", "Alt(7)", "Sym(4)", "Sym(5)",
    "Sym(6)",
];

fn alperin_consistent(f: &FusionSystem, g: &Group) -> bool {
    let e = g.enumerate().unwrap();
    let classes = conjugacy_classes(g).unwrap();
    let mut from_g: BTreeSet<Vec<u16>> = BTreeSet::new();
    for c in &classes.classes {
        let mut meet: Vec<u16> = c
            .members
            .iter()
            .filter_map(|&i| f.sylow().index_of(e.get(i as usize)))
            .collect();
        meet.sort_unstable();
        if !meet.is_empty() {
            from_g.insert(meet);
        }
    }
    let from_f: BTreeSet<Vec<u16>> = f.element_classes().iter().cloned().collect();
    from_g == from_f && f.element_classes_via_subgroups().unwrap() == f.element_classes()
}

#[test]
fn criterion_10_property_suites() {
    let start = Instant::now();
    let mut fails = Vec::new();
    for name in SMALL_GROUPS {
        let sp = spec(name);
        expect!(fails, sp.order() <= 5000, "{name} is too large");
        let (g, s) = sylow2(&sp).unwrap();
        let f = build_fusion(&g, Some(&s)).unwrap();
        if let Err(e) = f.verify_realization() {
            fails.push(format!("{name}: realization {e}"));
        }
        expect!(fails, alperin_consistent(&f, &g), "{name}: F-classes differ from G-classes on S");
        expect!(fails, f.focal_subgroup() == f.meet(&derived_subgroup(&g).unwrap()), "{name}: focal");
        expect!(fails, f.hyperfocal_subgroup().unwrap() == f.meet(&o2(&g).unwrap()), "{name}: hyperfocal");
    }
    // |E| = 2^(n-1), counted against the determinant condition on +-1 diagonals
    for n in 2..=6usize {
        for (q, sign) in [(3, Sign::Plus), (5, Sign::Plus), (3, Sign::Minus)] {
            let e = diagonal_two_torus(n, q, sign).unwrap();
            let brute = (0..1usize << n).filter(|m| m.count_ones() % 2 == 0).count();
            expect!(fails, e.order() == brute && brute == 1 << (n - 1), "n = {n}, q = {q}: |E| = {}", e.order());
        }
    }
    // the strongly closed and W_A properties also run as proptests in
    // tests/properties.rs
    properties_spot_checks(&mut fails);
    report(10, "realization, Alperin consistency, focal/hyperfocal, |E|, spot properties", start, &fails);
}

fn properties_spot_checks(fails: &mut Vec<String>) {
    use twofusion::grp::Ambient;
    use twofusion::local2::{is_k_balanced, w_closure};
    // C3 x E8: balanced, m(A) = 3 >= k + 2, W_A = C3
    let amb = Ambient::permutations(9);
    let gens: Vec<Element> = [&[&[1usize, 2, 3][..]][..], &[&[4, 5]], &[&[6, 7]], &[&[8, 9]]]
        .iter()
        .map(|c| amb.perm(c).unwrap())
        .collect();
    let g = Group::new(amb.clone(), gens.clone(), "C3xE8").unwrap();
    g.enumerate().unwrap();
    let a = Subgroup::generated(&amb, &gens[1..], 64).unwrap();
    let balanced = is_k_balanced(&g, &a, 1).unwrap().is_balanced();
    let w = w_closure(&g, &a, 1).unwrap();
    if !balanced || w.order() != 3 {
        fails.push(format!("C3 x E8: balanced {balanced}, |W_A| = {}", w.order()));
    }
}
