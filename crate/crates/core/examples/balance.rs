// Delta_G(E), k-balance and the W_A closure in S3 x E8.

use twofusion::grp::{Ambient, Group, Subgroup};
use twofusion::local2::{delta_e, is_k_balanced, w_closure};

pub fn run_example() -> twofusion::Result<()> {
    let amb = Ambient::permutations(9);
    let gens = vec![
        amb.perm(&[&[1, 2, 3]])?,
        amb.perm(&[&[1, 2]])?,
        amb.perm(&[&[4, 5]])?,
        amb.perm(&[&[6, 7]])?,
        amb.perm(&[&[8, 9]])?,
    ];
    let g = Group::new(amb.clone(), gens.clone(), "S3xE8")?;
    g.enumerate()?;
    let a = Subgroup::generated(&amb, &gens[2..], 64)?;
    let e = Subgroup::generated(&amb, &gens[2..4], 64)?;
    println!("|Delta(E)| = {}", delta_e(&g, &e)?.order());
    let r = is_k_balanced(&g, &a, 1)?;
    println!("1-balanced on A: {} ({} pairs checked)", r.is_balanced(), r.checked);
    println!("|W_A| = {}", w_closure(&g, &a, 1)?.order());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
