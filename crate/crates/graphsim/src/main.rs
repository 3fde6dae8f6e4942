fn main() { std::process::exit(graphsim::cli::main()); }
