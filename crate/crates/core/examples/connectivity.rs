// k-connectivity of the poset of elementary abelian subgroups.

use twofusion::classical::sylow2;
use twofusion::local2::{k_connected, normal_ea_test, two_group_library, k_connected_small};

pub fn run_example() -> twofusion::Result<()> {
    for (name, k) in [("SL(4,3)", 2), ("SL(4,3)", 3), ("PSL(4,3)", 2), ("Alt(8)", 2)] {
        let (_, s) = sylow2(&name.parse()?)?;
        let r = k_connected(&s, k)?;
        println!(
            "Syl2({name}), k = {k}: {} vertices, {} components, normal EA test {}",
            r.vertices,
            r.components,
            normal_ea_test(&s, k)?
        );
        if let Some(path) = &r.witness {
            println!("  path of length {} between the first and last vertex", path.len());
        }
    }
    let lib = two_group_library(32)?;
    let connected = lib.iter().filter(|(_, g)| k_connected_small(g, 2).map(|r| r.is_connected()).unwrap_or(false)).count();
    println!("{connected} of {} library groups are 2-connected", lib.len());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
