fn main() {
    std::process::exit(finite_type_lindelof::cli::main_with_args(
        std::env::args_os(),
    ));
}
