fn main() {
    std::process::exit(rn_arith::cli::main_exit());
}
