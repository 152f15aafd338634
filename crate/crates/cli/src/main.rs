fn main() {
    std::process::exit(df_cli::run(std::env::args_os()));
}
