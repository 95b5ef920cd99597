//! One line per acceptance criterion; exits non-zero if any fails.

fn main() {
    let results = kzlab::suite::run(&[]);
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
