use std::io::Write;

use clap::Parser;
use relmonad_lab::{run, Format, Options, Suite};

#[derive(Debug, Parser)]
#[command(name = "relmonad-lab", version, about = "Verification suites for relative monads on finite categories")]
struct Cli {
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    options: Options,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.suite, &cli.options) {
        Ok(report) => {
            let text = match cli.options.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            };
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
