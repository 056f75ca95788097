#[allow(dead_code)]
mod alternating_a10 {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/alternating_a10.rs"));
}

#[allow(dead_code)]
mod balance {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/balance.rs"));
}

#[allow(dead_code)]
mod connectivity {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/connectivity.rs"));
}

#[allow(dead_code)]
mod factor_systems {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factor_systems.rs"));
}

#[allow(dead_code)]
mod finite_fields {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/finite_fields.rs"));
}

#[allow(dead_code)]
mod fusion_isomorphism {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fusion_isomorphism.rs"));
}

#[allow(dead_code)]
mod fusion_system {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fusion_system.rs"));
}

#[allow(dead_code)]
mod generation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generation.rs"));
}

#[allow(dead_code)]
mod group_engine {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/group_engine.rs"));
}

#[allow(dead_code)]
mod involutions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/involutions.rs"));
}

#[allow(dead_code)]
mod sylow_subgroups {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sylow_subgroups.rs"));
}

#[allow(dead_code)]
mod verification_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verification_suite.rs"));
}

#[test]
fn alternating_a10_runs() {
    alternating_a10::run_example().expect("alternating_a10 example");
}

#[test]
fn balance_runs() {
    balance::run_example().expect("balance example");
}

#[test]
fn connectivity_runs() {
    connectivity::run_example().expect("connectivity example");
}

#[test]
fn factor_systems_runs() {
    factor_systems::run_example().expect("factor_systems example");
}

#[test]
fn finite_fields_runs() {
    finite_fields::run_example().expect("finite_fields example");
}

#[test]
fn fusion_isomorphism_runs() {
    fusion_isomorphism::run_example().expect("fusion_isomorphism example");
}

#[test]
fn fusion_system_runs() {
    fusion_system::run_example().expect("fusion_system example");
}

#[test]
fn generation_runs() {
    generation::run_example().expect("generation example");
}

#[test]
fn group_engine_runs() {
    group_engine::run_example().expect("group_engine example");
}

#[test]
fn involutions_runs() {
    involutions::run_example().expect("involutions example");
}

#[test]
fn sylow_subgroups_runs() {
    sylow_subgroups::run_example().expect("sylow_subgroups example");
}

#[test]
fn verification_suite_runs() {
    verification_suite::run_example().expect("verification_suite example");
}
