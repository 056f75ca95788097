// Arithmetic in GF(9) and GF(25), the Frobenius map and 2-parts.

use twofusion::gf::{tilde_related, two_part, Field};

pub fn run_example() -> twofusion::Result<()> {
    let f = Field::new(3, 2)?;
    let g = f.primitive();
    println!("GF(9): primitive element has order {:?}", f.element_order(g));
    let fg = f.frobenius(g)?;
    assert_eq!(fg, f.pow(g, 3));
    assert_eq!(f.frobenius(fg)?, g);
    println!("frobenius(g) = g^3 = {}", f.format(fg));

    let f25 = Field::new(5, 2)?;
    let mut fixed = 0;
    for x in f25.elements() {
        if f25.frobenius(x)? == x {
            fixed += 1;
        }
    }
    println!("Frobenius on GF(25) fixes {fixed} elements");

    println!("2-part of 80 is {}", two_part(80)?);
    println!("9 ~ -7: {}, 7 ~ 9: {}", tilde_related(9, -7)?, tilde_related(7, 9)?);
    assert!(Field::new(2, 1).is_err());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
