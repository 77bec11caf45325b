use fourient_core::selftest::{self, Scope};

#[test]
fn quick_selftest_passes_on_builtin_catalog() {
    let report = selftest::run_builtin(Scope::Quick);
    println!("{report}");
    assert!(report.passed(), "{report}");
}

#[test]
fn full_selftest_passes_on_builtin_catalog() {
    let report = selftest::run_builtin(Scope::Full);
    assert!(report.passed(), "{report}");
}
