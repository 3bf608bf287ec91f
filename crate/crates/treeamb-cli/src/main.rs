fn main() {
    std::process::exit(treeamb_cli::run(std::env::args_os()));
}
