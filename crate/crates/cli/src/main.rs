use clap::Parser;

fn main() {
    let cli = klcells_cli::Cli::parse();
    std::process::exit(klcells_cli::run(cli));
}
