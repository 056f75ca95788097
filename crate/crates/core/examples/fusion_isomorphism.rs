// F(M11) and F(PSL(3,3)) are isomorphic; the certificate survives JSON.

use twofusion::classical::sylow2;
use twofusion::fusion::{build_fusion, is_isomorphic, FusionSystem, IsoCertificate, IsoOutcome};

fn fusion(name: &str) -> twofusion::Result<FusionSystem> {
    let (g, s) = sylow2(&name.parse()?)?;
    build_fusion(&g, Some(&s))
}

pub fn run_example() -> twofusion::Result<()> {
    let (a, b) = (fusion("M11")?, fusion("PSL(3,3)")?);
    match is_isomorphic(&a, &b)? {
        IsoOutcome::Isomorphic(cert) => {
            println!("isomorphic, {} subgroup pairs compared", cert.subgroup_pairs_checked);
            let json = cert.to_json()?;
            let back = IsoCertificate::from_json(&json)?;
            println!("certificate re-verifies: {}", back.verify(&a, &b)?);
        }
        other => println!("unexpected: {other:?}"),
    }

    let c = fusion("PSL(2,9)")?;
    let (_, d8) = sylow2(&"PSL(2,7)".parse()?)?;
    let inner = twofusion::fusion::inner_fusion(&d8)?;
    println!("F(PSL(2,9)) vs F_D8(D8): {:?}", is_isomorphic(&c, &inner)?.decided());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
