use std::io::IsTerminal;

fn main() {
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = inscribed_core::cli::run_with_color(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        color,
    );
    std::process::exit(code);
}
