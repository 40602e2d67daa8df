//! Failure rate of the single-vertex event against the bound for a range of
//! dimensions, written as CSV to standard output.

use hyperlens::report::run;

fn main() {
    let code = run(
        [
            "hyperlens",
            "sweep",
            "--id",
            "V1",
            "--d-list",
            "10,50,200,800,3200",
            "--eta-list",
            "0.25,0.4,0.49",
            "--samples",
            "50000",
            "--seed",
            "5",
        ],
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
