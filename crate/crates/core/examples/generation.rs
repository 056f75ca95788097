// 2-generation of SL(3,3) and SU(3,3), and the block SL(2,3) subgroups.

use twofusion::classical::{generation_subgroups, sylow2, Sign};
use twofusion::local2::{gamma_sk, is_k_generated};

pub fn run_example() -> twofusion::Result<()> {
    for name in ["SL(3,3)", "SU(3,3)"] {
        let (g, s) = sylow2(&name.parse()?)?;
        let gamma = gamma_sk(&g, &s, 2)?;
        println!("{name}: |Gamma_2| = {}, 2-generated: {}", gamma.order(), is_k_generated(&g, &s, 2)?);
    }
    let d = generation_subgroups(3, 3, Sign::Plus)?;
    let join = d.blocks[0].join(&d.blocks[1])?;
    println!("|U1| = {}, |<U1, U2>| = {}", d.blocks[0].order(), join.order());
    println!("U1^m1 = U2: {}", d.blocks[0].conjugate(&d.conjugators[0]).elements() == d.blocks[1].elements());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
