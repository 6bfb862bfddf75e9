fn main() {
    std::process::exit(stoint::cli::main_with_env());
}
