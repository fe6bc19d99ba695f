use reciprosim::io::{cli_dispatch, SEED_ENV};

fn main() {
    let seed = std::env::var(SEED_ENV).ok();
    let code = cli_dispatch(std::env::args_os(), seed.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
