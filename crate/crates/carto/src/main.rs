use clap::Parser;

fn main() {
    let cli = carto::cli::Cli::parse();
    std::process::exit(carto::cli::run(cli));
}
