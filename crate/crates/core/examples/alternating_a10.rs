// The explicit Sylow 2-subgroup of A10 and the fusion of its involutions.

use twofusion::classical::{explicit_sylow_a10, make_group};
use twofusion::fusion::build_fusion;

pub fn run_example() -> twofusion::Result<()> {
    let s = explicit_sylow_a10()?;
    let count = |k: usize| {
        s.elements()
            .iter()
            .filter(|x| x.as_perm().is_some_and(|p| p.cycle_type() == vec![2; k]))
            .count()
    };
    println!("|S| = {}, {} involutions of type 2^2, {} of type 2^4", s.order(), count(2), count(4));
    let g = make_group(&"Alt(10)".parse()?)?;
    let f = build_fusion(&g, Some(&s))?;
    let sizes: Vec<usize> = f.involution_classes().iter().map(|c| c.1).collect();
    println!("fusion classes of involutions: {sizes:?}");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
