//! Runs without the libtest harness so the table is printed on success too.

use std::process::ExitCode;

use fbmh_core::verify::Verifier;

fn main() -> ExitCode {
    // `cargo test -- <filter>` for some other target passes args here too
    if std::env::args().skip(1).any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let reports = Verifier::default().run_all();
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} passed", reports.len(), reports.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
