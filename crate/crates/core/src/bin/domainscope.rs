fn main() {
    std::process::exit(domainscope::cli::run(std::env::args_os()));
}
