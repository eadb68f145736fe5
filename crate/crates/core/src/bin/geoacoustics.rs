fn main() {
    std::process::exit(geoacoustics::cli::run(std::env::args_os()));
}
