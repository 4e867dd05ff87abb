//! The `lzsix` command line: build and query indexes, inspect parsings,
//! print text statistics and generate test corpora.
//!
//! Exit codes: 0 success, 1 failure (or `exists` found nothing), 2 missing
//! file, 3 unreadable index file, 4 reserved byte in a pattern or text,
//! 64 bad usage.

pub mod mem;

use clap::{Args, Parser, Subcommand};
use lzsix::corpus::{Generator, Scheme};
use lzsix::parsing::compute_height;
use lzsix::text::stats::{entropy_table, inverse_match_probability};
use lzsix::{build_index, parse, Error, ParseKind, SelfIndex, Text};
use std::ffi::{OsStr, OsString};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_MISSING_FILE: i32 = 2;
pub const EXIT_BAD_INDEX: i32 = 3;
pub const EXIT_RESERVED_BYTE: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "lzsix", version, about = "LZ77 / LZ-End self-index for repetitive texts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a text and write its index
    Build {
        #[arg(long, value_parser = index_kind)]
        parser: ParseKind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Print size, timing and memory figures as key=value lines
        #[arg(long)]
        report: bool,
    },
    /// Print the 1-based start of every occurrence
    Locate {
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        sorted: bool,
        /// Append the occurrence kind after a tab
        #[arg(long)]
        kinds: bool,
    },
    /// Print true or false; exit status 0 or 1
    Exists {
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Write T[start, start+len-1] as raw bytes
    Extract {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        start: usize,
        #[arg(long)]
        len: usize,
    },
    /// Print parsing statistics as key=value lines
    Parse {
        #[arg(long, value_parser = any_kind)]
        parser: ParseKind,
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the empirical entropy table, one tab-separated line per k
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Also print the inverse probability of match
        #[arg(long)]
        ipm: bool,
    },
    /// Generate a corpus file and a .meta sidecar describing it
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Check the parsers and the index on the running example
    Selftest,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PatternArg {
    #[arg(long)]
    pattern: Option<OsString>,
    #[arg(long)]
    pattern_hex: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Family {
    Fib {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        output: PathBuf,
    },
    ThueMorse {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Concatenated mutated copies of a base text
    Mutate {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        rate: f64,
        /// 1: every copy mutates the base; 2: every copy mutates the previous one
        #[arg(long, default_value_t = 1)]
        scheme: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// English-like word text
    Words {
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

fn any_kind(s: &str) -> Result<ParseKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn index_kind(s: &str) -> Result<ParseKind, String> {
    match any_kind(s)? {
        ParseKind::Lz78 => Err("indexes support lz77 and lzend".into()),
        k => Ok(k),
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    fn lib(e: Error, path: Option<&Path>) -> Self {
        let code = match &e {
            Error::Io(io) if io.kind() == std::io::ErrorKind::NotFound => EXIT_MISSING_FILE,
            Error::BadMagic | Error::BadVersion(_) | Error::Malformed(_) => EXIT_BAD_INDEX,
            Error::ReservedByte(_) | Error::ReservedInPattern => EXIT_RESERVED_BYTE,
            _ => EXIT_FAILURE,
        };
        let message = match path {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        Failure { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = dispatch(cli.command, out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "lzsix: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Build { parser, input, output, report } => build(parser, &input, &output, report, out),
        Command::Locate { index, pattern, max, sorted, kinds } => {
            let pat = pattern_bytes(&pattern)?;
            let idx = load(&index)?;
            let mut occs = idx.locate_capped(&pat, max).map_err(|e| Failure::lib(e, None))?;
            if sorted {
                occs.sort_unstable_by_key(|o| o.pos);
            }
            for o in occs {
                if kinds {
                    writeln!(out, "{}\t{}", o.pos, o.kind)?;
                } else {
                    writeln!(out, "{}", o.pos)?;
                }
            }
            Ok(0)
        }
        Command::Exists { index, pattern } => {
            let pat = pattern_bytes(&pattern)?;
            let idx = load(&index)?;
            let found = idx.exists(&pat).map_err(|e| Failure::lib(e, None))?;
            writeln!(out, "{found}")?;
            Ok(if found { 0 } else { EXIT_FAILURE })
        }
        Command::Extract { index, start, len } => {
            let idx = load(&index)?;
            out.write_all(&idx.extract(start, len).map_err(|e| Failure::lib(e, None))?)?;
            Ok(0)
        }
        Command::Parse { parser, input } => {
            let text = read_text(&input)?;
            let p = parse(&text, parser);
            let h = compute_height(&p);
            writeln!(out, "kind={parser}")?;
            writeln!(out, "n={}", p.n)?;
            writeln!(out, "phrases={}", p.phrase_count())?;
            writeln!(out, "max_phrase={}", h.max_phrase_len)?;
            writeln!(out, "height={}", h.height)?;
            writeln!(out, "mean_height={:.4}", h.mean)?;
            writeln!(out, "work_ratio={:.4}", p.symbols_processed as f64 / p.n as f64)?;
            Ok(0)
        }
        Command::Stats { input, kmax, ipm } => {
            let data = read_file(&input)?;
            for row in entropy_table(&data, kmax) {
                writeln!(out, "{}\t{:.4}\t{:.2}\t{}", row.k, row.h, row.percent, row.contexts)?;
            }
            if ipm {
                writeln!(out, "ipm\t{:.4}", inverse_match_probability(&data))?;
            }
            Ok(0)
        }
        Command::Gen { family } => generate(family),
        Command::Selftest => selftest(out),
    }
}

fn pattern_bytes(p: &PatternArg) -> Result<Vec<u8>, Failure> {
    let bytes = match (&p.pattern, &p.pattern_hex) {
        (Some(s), _) => os_bytes(s),
        (None, Some(h)) => hex::decode(h).map_err(|e| Failure::new(EXIT_USAGE, format!("--pattern-hex: {e}")))?,
        (None, None) => unreachable!("clap requires one pattern flag"),
    };
    if bytes.is_empty() {
        return Err(Failure::new(EXIT_USAGE, "empty pattern"));
    }
    if bytes.contains(&0) {
        return Err(Failure::lib(Error::ReservedInPattern, None));
    }
    Ok(bytes)
}

#[cfg(unix)]
fn os_bytes(s: &OsStr) -> Vec<u8> {
    use std::os::unix::ffi::OsStrExt;
    s.as_bytes().to_vec()
}

#[cfg(not(unix))]
fn os_bytes(s: &OsStr) -> Vec<u8> {
    s.to_string_lossy().into_owned().into_bytes()
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::lib(e.into(), Some(path)))
}

fn read_text(path: &Path) -> Result<Text, Failure> {
    Text::new(&read_file(path)?).map_err(|e| Failure::lib(e, Some(path)))
}

fn load(path: &Path) -> Result<SelfIndex, Failure> {
    SelfIndex::load(path).map_err(|e| Failure::lib(e, Some(path)))
}

fn build(kind: ParseKind, input: &Path, output: &Path, report: bool, out: &mut dyn Write) -> Outcome {
    let data = read_file(input)?;
    mem::reset_peak();
    let t0 = Instant::now();
    let text = Text::new(&data).map_err(|e| Failure::lib(e, Some(input)))?;
    let idx = build_index(&text, kind).map_err(|e| Failure::lib(e, None))?;
    let elapsed = t0.elapsed();
    let bytes = idx.to_bytes();
    std::fs::write(output, &bytes).map_err(|e| Failure::lib(e.into(), Some(output)))?;
    if report {
        writeln!(out, "kind={kind}")?;
        writeln!(out, "text_bytes={}", data.len())?;
        writeln!(out, "phrases={}", idx.phrase_count())?;
        writeln!(out, "max_depth={}", idx.max_depth())?;
        writeln!(out, "index_bytes={}", bytes.len())?;
        writeln!(out, "ratio={:.4}", bytes.len() as f64 / data.len() as f64)?;
        writeln!(out, "build_secs={:.3}", elapsed.as_secs_f64())?;
        if mem::peak() > 0 {
            writeln!(out, "peak_heap_bytes={}", mem::peak())?;
        }
        for (name, size) in idx.component_sizes() {
            writeln!(out, "size.{name}={size}")?;
        }
    }
    Ok(0)
}

fn generate(family: Family) -> Outcome {
    let (gen, output, base_path) = match family {
        Family::Fib { order, output } => (Generator::Fibonacci { order }, output, None),
        Family::ThueMorse { order, output } => (Generator::ThueMorse { order }, output, None),
        Family::Mutate { base, copies, rate, scheme, seed, output } => {
            let scheme = Scheme::from_number(scheme).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            (Generator::Mutated { copies, rate, scheme, seed }, output, Some(base))
        }
        Family::Words { len, seed, output } => (Generator::Words { len, seed }, output, None),
    };
    let base = base_path.as_deref().map(read_file).transpose()?;
    let data = gen.generate(base.as_deref()).map_err(|e| Failure::lib(e, None))?;
    std::fs::write(&output, &data).map_err(|e| Failure::lib(e.into(), Some(&output)))?;
    let mut meta = format!("{gen} bytes={}", data.len());
    if let (Some(p), Some(b)) = (&base_path, &base) {
        meta.push_str(&format!(" base={} base_bytes={}", p.display(), b.len()));
    }
    let mut meta_path = output.into_os_string();
    meta_path.push(".meta");
    std::fs::write(&meta_path, meta + "\n")?;
    Ok(0)
}

const EXAMPLE: &[u8] = b"alabar_a_la_alabarda";

fn selftest(out: &mut dyn Write) -> Outcome {
    let text = Text::new(EXAMPLE).expect("example text is valid");
    let goldens: [(ParseKind, &str); 3] = [
        (ParseKind::Lz77, "a|l|ab|ar|_|a_|la_|alabard|a$"),
        (ParseKind::LzEnd, "a|l|ab|ar|_|a_|la|_a|labard|a$"),
        (ParseKind::Lz78, "a|l|ab|ar|_|a_|la|_a|lab|ard|a$"),
    ];
    let mut failed = 0;
    let mut check = |out: &mut dyn Write, name: String, ok: bool, got: String| -> std::io::Result<()> {
        if ok {
            writeln!(out, "PASS {name}")
        } else {
            failed += 1;
            writeln!(out, "FAIL {name}: got {got}")
        }
    };
    for (kind, want) in goldens {
        let p = parse(&text, kind);
        let got = p.render(text.alphabet()).map(|v| v.join("|")).unwrap_or_else(|e| e.to_string());
        let count = want.split('|').count();
        check(out, format!("{kind} parsing ({count} phrases)"), got == want, got)?;
    }
    for kind in [ParseKind::Lz77, ParseKind::LzEnd] {
        let idx = build_index(&text, kind).map_err(|e| Failure::lib(e, None))?;
        let idx = SelfIndex::from_bytes(&idx.to_bytes()).map_err(|e| Failure::lib(e, None))?;
        for (pat, want) in [("la", vec![2, 10, 14]), ("ala", vec![1, 13]), ("rd", vec![18]), ("x", vec![])] {
            let got = idx.locate_positions(pat.as_bytes()).map_err(|e| Failure::lib(e, None))?;
            check(out, format!("{kind} locate {pat}"), got == want, format!("{got:?}"))?;
        }
        let back = idx.extract(1, EXAMPLE.len()).map_err(|e| Failure::lib(e, None))?;
        check(out, format!("{kind} extract"), back == EXAMPLE, String::from_utf8_lossy(&back).into_owned())?;
    }
    Ok(if failed == 0 { 0 } else { EXIT_FAILURE })
}

