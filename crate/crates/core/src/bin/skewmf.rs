fn main() {
    let code = skewmf::cli::main_with_env();
    std::process::exit(code);
}
