use super::*;
use crate::classical::{make_group, sylow2, Family, GroupSpec};

fn fusion_of(family: Family, n: usize, q: u32) -> FusionSystem {
    let spec = GroupSpec::new(family, n, q).unwrap();
    let (g, s) = sylow2(&spec).unwrap();
    build_fusion(&g, Some(&s)).unwrap()
}

#[test]
fn psl27_has_one_involution_class() {
    let f = fusion_of(Family::PSL, 2, 7);
    assert_eq!(f.involution_classes().len(), 1);
    assert_eq!(f.involution_classes()[0].1, 5);
}

#[test]
fn sl23_automorphisms_of_s() {
    let f = fusion_of(Family::SL, 2, 3);
    let d = f.subgroup_data().unwrap();
    let top = d.len() - 1;
    assert_eq!(d.subgroups[top].len(), 8);
    let auts = f.hom_set(top, top).unwrap();
    assert_eq!(auts.len(), 12);
    assert!(auts.maps.iter().any(|m| {
        let perm: Vec<u16> = m.images.iter().map(|&y| d.subgroups[top].binary_search(&y).unwrap() as u16).collect();
        perm_order(&perm) == 3
    }));
    assert!(!f.is_nilpotent().unwrap());
    f.verify_realization().unwrap();
}

#[test]
fn inner_fusion_is_nilpotent() {
    let (_, s) = sylow2(&GroupSpec::new(Family::PSL, 2, 7).unwrap()).unwrap();
    let f = inner_fusion(&s).unwrap();
    assert!(f.is_nilpotent().unwrap());
    assert_eq!(f.center().len(), 2);
}

#[test]
fn trivial_hom_set_has_one_map() {
    let f = fusion_of(Family::PSL, 2, 7);
    let h = f.hom_set(0, 0).unwrap();
    assert_eq!(h.len(), 1);
}

#[test]
fn a10_involution_classes() {
    let s = crate::classical::explicit_sylow_a10().unwrap();
    let g = make_group(&GroupSpec::new(Family::Alt, 10, 0).unwrap()).unwrap();
    let f = build_fusion(&g, Some(&s)).unwrap();
    let mut sizes: Vec<usize> = f.involution_classes().iter().map(|c| c.1).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [14, 29]);
}

#[test]
fn invariants_cross_check() {
    for (fam, n, q) in [(Family::SL, 2, 3), (Family::PSL, 2, 7), (Family::SL, 2, 5), (Family::Alt, 6, 0)] {
        let f = fusion_of(fam, n, q);
        let foc = f.focal().unwrap();
        let hyp = f.hyperfocal().unwrap();
        let z = f.fusion_center().unwrap();
        if (fam, n, q) == (Family::SL, 2, 3) {
            assert_eq!(foc.len(), 8);
            assert_eq!(hyp.len(), 8);
        }
        if (fam, n, q) == (Family::SL, 2, 5) {
            assert_eq!(z.len(), 2);
        }
    }
}

#[test]
fn element_classes_agree_with_subgroup_data() {
    for (fam, n, q) in [(Family::SL, 2, 3), (Family::PSL, 3, 3), (Family::Alt, 6, 0)] {
        let f = fusion_of(fam, n, q);
        assert_eq!(f.element_classes_via_subgroups().unwrap(), f.element_classes());
    }
}

#[test]
fn factor_of_sl25_matches_psl25() {
    let f = Arc::new(fusion_of(Family::SL, 2, 5));
    let z = f.fusion_center().unwrap();
    let fq = FusionSystem::factor_system(&f, &z).unwrap();
    assert_eq!(fq.sylow().order(), 4);
    let p = fusion_of(Family::PSL, 2, 5);
    let out = is_isomorphic(&fq, &p).unwrap();
    assert_eq!(out.decided(), Some(true));
    assert!(FusionSystem::factor_system(&f, &f.sylow().all()).unwrap().sylow().order() == 1);
}

#[test]
fn isomorphism_small_cases() {
    let a = fusion_of(Family::PSL, 2, 7);
    let b = fusion_of(Family::Alt, 6, 0);
    let IsoOutcome::Isomorphic(cert) = is_isomorphic(&a, &b).unwrap() else {
        panic!("expected isomorphic")
    };
    let back = IsoCertificate::from_json(&cert.to_json().unwrap()).unwrap();
    assert!(back.verify(&a, &b).unwrap());
    let (_, s) = sylow2(&GroupSpec::new(Family::PSL, 2, 9).unwrap()).unwrap();
    let d8 = inner_fusion(&s).unwrap();
    let c = fusion_of(Family::PSL, 2, 9);
    assert_eq!(is_isomorphic(&c, &d8).unwrap().decided(), Some(false));
}
