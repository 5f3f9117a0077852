fn main() {
    std::process::exit(fanobound::cli::run(std::env::args_os()));
}
