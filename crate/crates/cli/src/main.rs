fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(molcodec_cli::run(&argv));
}
