use clap::Parser;
use insideout::cli::{run, Cli};

fn main() {
    if let Some(n) = std::env::var("INSIDEOUT_THREADS").ok().and_then(|v| v.parse().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    let (text, code) = run(&cli);
    if code == 0 || code == 3 {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    std::process::exit(code);
}
