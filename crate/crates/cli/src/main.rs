use clap::Parser;

fn main() {
    // Worker-pool capping must precede any parallel region.
    if let Err(msg) = tanlab_cli::configure_threads() {
        eprintln!("error: {msg}");
        std::process::exit(2);
    }
    let cli = tanlab_cli::Cli::parse();
    std::process::exit(tanlab_cli::run(cli));
}
