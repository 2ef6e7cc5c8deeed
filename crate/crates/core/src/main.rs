use std::io;

use clap::Parser;

use berge_core::cli::{init_thread_pool, run, Cli};

fn main() {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    init_thread_pool();
    let status = run(cli, &mut io::stdout().lock());
    std::process::exit(status);
}
