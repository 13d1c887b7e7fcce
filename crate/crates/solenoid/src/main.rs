fn main() {
    std::process::exit(solenoid::cli::main());
}
