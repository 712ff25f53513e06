//! Command-line entry point; see [`galilean_line::cli`].

fn main() {
    std::process::exit(galilean_line::cli::main_exit_code());
}
