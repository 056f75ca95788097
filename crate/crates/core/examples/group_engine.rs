// Enumeration, conjugacy classes, centralizers and transporters in PSL(3,3).

use twofusion::classical::{make_group, GroupSpec};
use twofusion::grp::{centralizer, conjugacy_classes, predicates, transporter};

pub fn run_example() -> twofusion::Result<()> {
    let spec: GroupSpec = "PSL(3,3)".parse()?;
    let g = make_group(&spec)?;
    let e = g.enumerate()?;
    println!("|{}| = {}", g.descriptor(), e.len());

    let classes = conjugacy_classes(&g)?;
    let sizes: Vec<usize> = classes.classes.iter().map(|c| c.size()).collect();
    println!("{} classes, sizes {sizes:?}", sizes.len());

    // an involution and one of its conjugates
    let t = classes
        .classes
        .iter()
        .find(|c| g.element_order(&c.rep) == 2)
        .expect("PSL(3,3) has involutions");
    let x = t.rep.clone();
    let y = e.get(*t.members.last().unwrap() as usize).clone();
    let c = centralizer(&g, std::slice::from_ref(&x))?;
    println!("|C_G(t)| = {}", c.order());
    let tr = transporter(&g, &[x.clone()], &[y.clone()])?.expect("same class");
    assert_eq!(g.conj(&x, &tr.witness), y);
    println!("transporter coset has {} elements", tr.solutions().len());

    let p = predicates(&g)?;
    println!("simple: {}, perfect: {}", p.simple, p.perfect);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
