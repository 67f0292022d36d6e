use clap::Parser;
use mongeampere_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (code, text) = run(&cli);
    if code == 2 {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    std::process::exit(code);
}
