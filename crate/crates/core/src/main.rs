use clap::Parser;

fn main() {
    let cli = infconv::cli::Cli::parse();
    std::process::exit(infconv::cli::run(&cli));
}
