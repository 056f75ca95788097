// Involution classes of PSL(n, q) read off eigenspaces of a lift.

use twofusion::classical::{involution_reps, lifted_involutions, make_group, match_involution_class};

pub fn run_example() -> twofusion::Result<()> {
    for (n, q) in [(4, 3), (4, 5), (5, 3), (2, 3)] {
        let labels: Vec<String> = involution_reps(n, q)?.iter().map(|r| r.label.to_string()).collect();
        println!("PSL({n},{q}): {}", labels.join(", "));
    }

    let g = make_group(&"PSL(4,3)".parse()?)?;
    for r in involution_reps(4, 3)? {
        assert_eq!(match_involution_class(&g, &r.element)?, r.label);
    }

    let l = lifted_involutions(4, 3)?;
    println!(
        "W in GL(4,3) has order {}; {} involutions lie in SL(4,3), with {} images in PSL(4,3), all labelled {}",
        l.sylow_order,
        l.lifts.len(),
        l.images.len(),
        l.labels[0]
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
