// Factoring F(SL(2,5)) by its center gives the fusion system of PSL(2,5).

use std::sync::Arc;

use twofusion::classical::sylow2;
use twofusion::fusion::{build_fusion, is_isomorphic, FusionSystem};

pub fn run_example() -> twofusion::Result<()> {
    let (g, s) = sylow2(&"SL(2,5)".parse()?)?;
    let f = Arc::new(build_fusion(&g, Some(&s))?);
    let z = f.fusion_center()?;
    println!("|Z(F(SL(2,5)))| = {}", z.len());
    let quotient = FusionSystem::factor_system(&f, &z)?;
    println!("factor system on a group of order {}", quotient.sylow().order());

    let (h, t) = sylow2(&"PSL(2,5)".parse()?)?;
    let target = build_fusion(&h, Some(&t))?;
    println!("F/Z(F) ~ F(PSL(2,5)): {:?}", is_isomorphic(&quotient, &target)?.decided());
    println!("Z(F) strongly closed: {}", f.is_strongly_closed(&z));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
