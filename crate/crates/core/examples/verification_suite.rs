// A manifest run in-process, and the enumeration cache.

use twofusion::cli::cache::{load_or_build, CacheStatus};
use twofusion::cli::manifest::{parse_manifest, Tier};
use twofusion::cli::runner::{run_suite, RunOptions};

const MANIFEST: &str = "\
check sylow.sl2.q7
  op: sylow.type
  group: SL(2,7)
  expect: generalized-quaternion(16)
  source: derived
  anchor: Sylow subgroup of SL(2,7)
  tier: fast

check fusion.m11
  op: fusion.isomorphic
  a: M11
  b: PSL(3,3)
  expect: isomorphic
  source: derived
  anchor: M11 against PSL(3,3)
  tier: standard
";

pub fn run_example() -> twofusion::Result<()> {
    let m = parse_manifest(MANIFEST)?;
    let dir = std::env::temp_dir().join(format!("twofusion-example-{}", std::process::id()));
    let mut opts = RunOptions::new("inline.manifest");
    opts.tier = Tier::Standard;
    opts.workers = 2;
    opts.cache_dir = Some(dir.clone());
    let report = run_suite(&m, &opts)?;
    print!("{}", report.summary());

    let spec = "PSL(3,3)".parse()?;
    let (g, status) = load_or_build(&spec, Some(&dir), 1 << 20)?;
    println!("PSL(3,3) from cache: {} (order {})", status == CacheStatus::Hit, g.order()?);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
