fn main() {
    std::process::exit(pathloss::cli::main_with(std::env::args_os()));
}
