fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(pvc::cli::main_with_args(&args));
}
