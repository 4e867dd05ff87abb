#[global_allocator]
static ALLOC: lzsix_cli::mem::Counting = lzsix_cli::mem::Counting;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = lzsix_cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
