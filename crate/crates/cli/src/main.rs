use clap::Parser;

fn main() {
    let cli = hsx_cli::Cli::parse();
    std::process::exit(hsx_cli::run(&cli));
}
