fn main() {
    std::process::exit(stancecue_cli::main_with(std::env::args_os()));
}
