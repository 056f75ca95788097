// Sylow 2-subgroups of small classical groups and their isomorphism types.

use twofusion::classical::{sylow2, GroupSpec};
use twofusion::grp::{recognize_2_group, two_rank};

pub fn run_example() -> twofusion::Result<()> {
    for name in ["SL(2,3)", "SL(2,7)", "GL(2,3)", "GL(2,7)", "GL(2,5)", "GU(2,3)", "PSL(2,9)", "PSL(3,3)", "Alt(8)"] {
        let spec: GroupSpec = name.parse()?;
        let (_, s) = sylow2(&spec)?;
        println!(
            "{name:>9}: |S| = {:>3}, type {}, 2-rank {}",
            s.order(),
            recognize_2_group(&s)?,
            two_rank(&s)?
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
