// The fusion system of SL(2,3) on Q8: automizers, hom sets and invariants.

use twofusion::classical::sylow2;
use twofusion::fusion::build_fusion;

pub fn run_example() -> twofusion::Result<()> {
    let (g, s) = sylow2(&"SL(2,3)".parse()?)?;
    let f = build_fusion(&g, Some(&s))?;
    println!("{}: |S| = {}", f.label(), f.sylow().order());
    let classes: Vec<usize> = f.element_classes().iter().map(Vec::len).collect();
    println!("element classes {classes:?}");

    let d = f.subgroup_data()?;
    println!("{} subgroups in {} classes", d.len(), d.classes.len());
    let top = d.len() - 1;
    let aut = &d.classes[d.class_of[top]].automorphisms;
    println!("|Aut_F(S)| = {}", aut.len());

    let homs = f.hom_set(top, top)?;
    f.verify_hom_set(&homs)?;
    println!("|Hom_F(S, S)| = {}", homs.len());

    println!("nilpotent: {}", f.is_nilpotent()?);
    println!("|Z(F)| = {}", f.fusion_center()?.len());
    println!("|focal| = {}, |hyperfocal| = {}", f.focal()?.len(), f.hyperfocal()?.len());
    println!("{} stored maps re-derived from witnesses", f.verify_realization()?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
