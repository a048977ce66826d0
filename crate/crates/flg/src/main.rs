fn main() {
    std::process::exit(flg::cli::main());
}
