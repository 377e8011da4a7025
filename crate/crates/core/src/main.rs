use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("L2BETTI_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // an already-initialized pool is not an error worth reporting
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = l2betti::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
