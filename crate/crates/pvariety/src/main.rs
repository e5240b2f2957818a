fn main() {
    let mut out = String::new();
    let code = pvariety::cli::run(std::env::args_os(), &mut out);
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
