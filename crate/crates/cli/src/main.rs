use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use dna_labeling::bounds::{bound_row, log_rational, rational_to_f64, render_rational};
use dna_labeling::codes::{
    coset_field_size, e1_decode, e1_encode, e2_decode, e2_encode, search_hamming_coset,
    search_tenengolts_labeling_code, AllLabelsCode, E1Layout, E2Layout,
};
use dna_labeling::labeling::{parse_labeling, render_labeling, DEFAULT_ENUMERATION_CAP};
use dna_labeling::oracle::{
    channel_rng, exhaustive_decoder_check, simulate_channel_with, ErrorSpec, Scheme,
};
use dna_labeling::{
    invert_labeling, label_framed, label_word, Alphabet, Error, FlankConvention, LabelSet,
};

const DECODE_FAIL: &str = "!DECODE_FAIL";
/// Lines handled per parallel batch.
const CHUNK: usize = 4096;

#[derive(Parser)]
#[command(
    name = "dnalabel",
    version,
    about = "Labeling codes for DNA symbol-pair reads"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Io {
    /// Input file, one word per line (default: stdin)
    #[arg(long = "in", value_name = "PATH", global = true)]
    input: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long = "out", value_name = "PATH", global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SetKind {
    Minimal,
    All,
}

#[derive(Args, Clone)]
struct SetArgs {
    #[arg(long, value_enum, default_value_t = SetKind::Minimal)]
    set: SetKind,
    /// Alphabet size for `--set all`
    #[arg(long, default_value_t = 4)]
    q: usize,
    /// Flank symbols, `X` or `X,Y`
    #[arg(long, default_value = "A", conflicts_with = "standalone")]
    flank: String,
    /// Label without flanks
    #[arg(long)]
    standalone: bool,
}

impl SetArgs {
    fn build(&self) -> anyhow::Result<(LabelSet, Option<FlankConvention>)> {
        let set = match self.set {
            SetKind::Minimal => {
                if self.q != 4 {
                    bail!("--set minimal is defined over DNA only, got --q {}", self.q);
                }
                LabelSet::minimal_dna()
            }
            SetKind::All => LabelSet::all_labels(Alphabet::new(self.q)?),
        };
        if self.standalone {
            return Ok((set, None));
        }
        let alphabet = set.alphabet();
        let flanks: Vec<u8> = self
            .flank
            .split(',')
            .map(|f| {
                let mut chars = f.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(alphabet.parse_symbol(c)?),
                    _ => Err(anyhow!("bad flank {f:?}")),
                }
            })
            .collect::<anyhow::Result<_>>()?;
        let flanks = match flanks[..] {
            [s] => FlankConvention::uniform(s),
            [l, r] => FlankConvention::new(l, r),
            _ => bail!("--flank takes one or two symbols, got {:?}", self.flank),
        };
        Ok((set, Some(flanks)))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EncScheme {
    E1,
    E2,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DecScheme {
    E1,
    E2,
    AllLabelsDel,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Tenengolts,
    HammingCoset,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Target {
    E1,
    E2,
    AllLabelsDel,
    Tenengolts,
    Coset,
}

#[derive(Subcommand)]
enum Command {
    /// Framed labeling of each word, as base-36 digits
    Label {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        io: Io,
    },
    /// Reconstruct words from framed labelings
    Unlabel {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        io: Io,
    },
    /// Systematic encoding of DNA words
    Encode {
        #[arg(long, value_enum)]
        scheme: EncScheme,
        /// Also emit the framed labeling of each codeword
        #[arg(long)]
        labeling: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Decode corrupted framed labelings back to data words
    Decode {
        #[arg(long, value_enum)]
        scheme: DecScheme,
        /// Data length, required for e1 and e2
        #[arg(long)]
        k: Option<usize>,
        /// Word length for all-labels-del
        #[arg(long)]
        n: Option<usize>,
        /// Alphabet size for all-labels-del
        #[arg(long, default_value_t = 4)]
        q: usize,
        /// Stop at the first failure
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Lower and upper bounds for all-labels single-deletion codes
    Bounds {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Best labeling code in a classical family
    Search {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Field size for hamming-coset (default: smallest suitable prime)
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Exhaustive decoder check for lengths up to `--k-max`
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        k_max: usize,
        /// Alphabet size for all-labels-del
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Pass labelings through a seeded error channel
    Simulate {
        /// Exact counts `substitutions,insertions,deletions`
        #[arg(long)]
        errors: ErrorSpec,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        io: Io,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    Decode(anyhow::Error),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn open_input(io: &Io) -> anyhow::Result<Box<dyn BufRead>> {
    Ok(match &io.input {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("opening {}", p.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn open_output(io: &Io) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &io.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Result of one input line.
enum Line {
    Out(String),
    Fail(anyhow::Error),
}

/// Maps `f` over input lines in parallel batches, writing results in input
/// order. Returns the number of failed lines.
fn stream<F>(io: &Io, strict: bool, f: F) -> Result<usize, Failure>
where
    F: Fn(u64, &str) -> Result<Line, anyhow::Error> + Sync,
{
    let input = open_input(io)?;
    let mut out = open_output(io)?;
    let mut lines = input.lines().enumerate();
    let mut failures = 0;
    let mut json = Vec::new();
    loop {
        let batch: Vec<(usize, String)> = lines
            .by_ref()
            .take(CHUNK)
            .map(|(i, l)| l.map(|l| (i, l)))
            .collect::<io::Result<_>>()?;
        if batch.is_empty() {
            break;
        }
        let results: Vec<Result<Line, anyhow::Error>> = batch
            .par_iter()
            .map(|(i, l)| f(*i as u64, l.trim_end_matches('\r')))
            .collect();
        for ((i, _), r) in batch.iter().zip(results) {
            match r.map_err(|e| Failure::Input(e.context(format!("line {}", i + 1))))? {
                Line::Out(s) => {
                    if io.format == Format::Json {
                        json.push(Some(s));
                    } else {
                        writeln!(out, "{s}")?;
                    }
                }
                Line::Fail(e) => {
                    if strict {
                        out.flush()?;
                        return Err(Failure::Decode(e.context(format!("line {}", i + 1))));
                    }
                    failures += 1;
                    if io.format == Format::Json {
                        json.push(None);
                    } else {
                        writeln!(out, "{DECODE_FAIL}")?;
                    }
                }
            }
        }
    }
    if io.format == Format::Json {
        serde_json::to_writer(&mut out, &json).map_err(anyhow::Error::from)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(failures)
}

fn dna_word(line: &str) -> anyhow::Result<Vec<u8>> {
    Ok(Alphabet::dna().parse(line)?)
}

fn cmd_label(set: &SetArgs, io: &Io) -> Result<usize, Failure> {
    let (set, flanks) = set.build()?;
    let alphabet = set.alphabet();
    stream(io, false, |_, line| {
        let x = alphabet.parse(line)?;
        let u = match flanks {
            Some(f) => label_framed(&x, &set, f)?,
            None => label_word(&x, &set)?,
        };
        Ok(Line::Out(render_labeling(&u)))
    })
}

fn cmd_unlabel(set: &SetArgs, io: &Io) -> Result<usize, Failure> {
    let (set, flanks) = set.build()?;
    let flanks = flanks.ok_or_else(|| anyhow!("unlabel needs flanks"))?;
    let alphabet = set.alphabet();
    stream(io, false, |_, line| {
        let u = parse_labeling(line)?;
        Ok(Line::Out(
            alphabet.render(&invert_labeling(&u, &set, flanks)?),
        ))
    })
}

fn cmd_encode(scheme: EncScheme, labeling: bool, io: &Io) -> Result<usize, Failure> {
    let dna = Alphabet::dna();
    let minimal = LabelSet::minimal_dna_static();
    stream(io, false, |_, line| {
        let x = dna_word(line)?;
        let c = match scheme {
            EncScheme::E1 => e1_encode(&x)?,
            EncScheme::E2 => e2_encode(&x)?,
        };
        let mut s = dna.render(&c);
        if labeling {
            s.push('\t');
            s.push_str(&render_labeling(&label_framed(
                &c,
                minimal,
                FlankConvention::default(),
            )?));
        }
        Ok(Line::Out(s))
    })
}

fn cmd_decode(
    scheme: DecScheme,
    k: Option<usize>,
    n: Option<usize>,
    q: usize,
    strict: bool,
    io: &Io,
) -> Result<usize, Failure> {
    enum Decoder {
        E1(E1Layout),
        E2(E2Layout),
        All(Box<AllLabelsCode>),
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("--scheme needs {flag}"));
    let decoder = match scheme {
        DecScheme::E1 => Decoder::E1(E1Layout::new(need(k, "--k")?).map_err(anyhow::Error::from)?),
        DecScheme::E2 => Decoder::E2(E2Layout::new(need(k, "--k")?).map_err(anyhow::Error::from)?),
        DecScheme::AllLabelsDel => Decoder::All(Box::new(
            AllLabelsCode::build(q, need(n, "--n")?, 0).map_err(anyhow::Error::from)?,
        )),
    };
    let render = match &decoder {
        Decoder::All(code) => Alphabet::new(code.q).map_err(anyhow::Error::from)?,
        _ => Alphabet::dna(),
    };
    stream(io, strict, |_, line| {
        let u = parse_labeling(line)?;
        let got = match &decoder {
            Decoder::E1(l) => e1_decode(&u, *l),
            Decoder::E2(l) => e2_decode(&u, *l),
            Decoder::All(code) => code.decode(&u),
        };
        match got {
            Ok(x) => Ok(Line::Out(render.render(&x))),
            Err(e @ Error::AlphabetMismatch { .. }) => Err(e.into()),
            Err(e) => Ok(Line::Fail(e.into())),
        }
    })
}

#[derive(Serialize)]
struct BoundOut {
    q: usize,
    n: usize,
    lower: String,
    lower_decimal: f64,
    upper: String,
    upper_decimal: f64,
    log_lower: f64,
    log_upper: f64,
    gap: f64,
}

fn cmd_bounds(q: usize, n_min: usize, n_max: usize, io: &Io) -> Result<usize, Failure> {
    if n_min == 0 || n_min > n_max {
        return Err(anyhow!("need 1 <= --n-min <= --n-max").into());
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    let rows: Vec<BoundOut> = ns
        .par_iter()
        .map(|&n| {
            let r = bound_row(q, n)?;
            Ok(BoundOut {
                q,
                n,
                lower: render_rational(&r.lower),
                lower_decimal: rational_to_f64(&r.lower),
                upper: render_rational(&r.upper),
                upper_decimal: rational_to_f64(&r.upper),
                log_lower: log_rational(&r.lower, q),
                log_upper: log_rational(&r.upper, q),
                gap: r.gap,
            })
        })
        .collect::<Result<_, Error>>()
        .map_err(anyhow::Error::from)?;
    let mut out = open_output(io)?;
    match io.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &rows).map_err(anyhow::Error::from)?;
            writeln!(out)?;
        }
        Format::Tsv => {
            writeln!(
                out,
                "q\tn\tlower\tlower_decimal\tupper\tupper_decimal\tlog_lower\tlog_upper\tgap"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{:.6e}\t{}\t{:.6e}\t{:.6}\t{:.6}\t{:.6}",
                    r.q,
                    r.n,
                    r.lower,
                    r.lower_decimal,
                    r.upper,
                    r.upper_decimal,
                    r.log_lower,
                    r.log_upper,
                    r.gap
                )?;
            }
        }
        Format::Text => {
            for r in &rows {
                writeln!(
                    out,
                    "q={} n={} lower={} upper={} gap={:.4}",
                    r.q, r.n, r.lower, r.upper, r.gap
                )?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn write_record<T: Serialize>(io: &Io, value: &T, text: String) -> Result<(), Failure> {
    let mut out = open_output(io)?;
    if io.format == Format::Json {
        serde_json::to_writer_pretty(&mut out, value).map_err(anyhow::Error::from)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{text}")?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_search(
    family: Family,
    n: usize,
    p: Option<usize>,
    cap: u64,
    io: &Io,
) -> Result<usize, Failure> {
    let set = LabelSet::minimal_dna();
    match family {
        Family::Tenengolts => {
            let code =
                search_tenengolts_labeling_code(n, &set, cap).map_err(anyhow::Error::from)?;
            let text = format!(
                "tenengolts n={} a={} b={} size={} labelings={} floor={:.2}",
                code.n,
                code.a,
                code.b,
                code.size,
                code.labelings,
                code.floor()
            );
            write_record(io, &code, text)?;
        }
        Family::HammingCoset => {
            let p = match p {
                Some(p) => p,
                None => coset_field_size(&set).map_err(anyhow::Error::from)?,
            };
            let code = search_hamming_coset(n, &set, p, cap).map_err(anyhow::Error::from)?;
            let syndrome: Vec<String> = code.syndrome.iter().map(u8::to_string).collect();
            let text = format!(
                "hamming-coset n={} p={} r={} syndrome={} size={} labelings={} floor={:.2}",
                code.n,
                code.p,
                code.r,
                syndrome.join(","),
                code.size,
                code.labelings,
                code.floor()
            );
            write_record(io, &code, text)?;
        }
    }
    Ok(0)
}

fn cmd_verify(target: Target, k_max: usize, q: usize, cap: u64, io: &Io) -> Result<usize, Failure> {
    let first = match target {
        Target::E1 | Target::E2 => 2,
        _ => 1,
    };
    if k_max < first {
        return Err(anyhow!("--k-max must be at least {first}").into());
    }
    let mut reports = Vec::new();
    for k in first..=k_max {
        let scheme = match target {
            Target::E1 => Scheme::E1 { k },
            Target::E2 => Scheme::E2 { k },
            Target::AllLabelsDel => Scheme::AllLabelsDel { q, n: k },
            Target::Tenengolts => Scheme::Tenengolts { n: k },
            Target::Coset => Scheme::Coset { n: k },
        };
        reports.push(exhaustive_decoder_check(scheme, cap).map_err(anyhow::Error::from)?);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let mut out = open_output(io)?;
    match io.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &reports).map_err(anyhow::Error::from)?;
            writeln!(out)?;
        }
        Format::Tsv => {
            writeln!(
                out,
                "target\tparams\twords\tinputs\tviolations\ttime_ms\tpassed"
            )?;
            for r in &reports {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.target,
                    r.params,
                    r.words_checked,
                    r.inputs_checked,
                    r.violation_count,
                    r.wall_time_ms,
                    r.passed
                )?;
            }
        }
        Format::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
    }
    out.flush()?;
    if failed > 0 {
        return Err(Failure::Decode(anyhow!(
            "{failed} of {} checks failed",
            reports.len()
        )));
    }
    Ok(0)
}

fn cmd_simulate(errors: ErrorSpec, seed: u64, set: &SetArgs, io: &Io) -> Result<usize, Failure> {
    let (set, flanks) = set.build()?;
    let sigma = set.labeling_alphabet_size();
    let alphabet = set.alphabet();
    stream(io, false, |i, line| {
        // Lines over the word alphabet are labeled first; anything else is
        // read as a labeling.
        let u = match alphabet.parse(line) {
            Ok(x) => match flanks {
                Some(f) => label_framed(&x, &set, f)?,
                None => label_word(&x, &set)?,
            },
            Err(_) => parse_labeling(line)?,
        };
        let mut rng = channel_rng(seed, i);
        let w = simulate_channel_with(&u, errors, sigma, &mut rng)?;
        Ok(Line::Out(render_labeling(&w)))
    })
}

fn run(cli: Cli) -> Result<usize, Failure> {
    match &cli.command {
        Command::Label { set, io } => cmd_label(set, io),
        Command::Unlabel { set, io } => cmd_unlabel(set, io),
        Command::Encode {
            scheme,
            labeling,
            io,
        } => cmd_encode(*scheme, *labeling, io),
        Command::Decode {
            scheme,
            k,
            n,
            q,
            strict,
            io,
        } => cmd_decode(*scheme, *k, *n, *q, *strict, io),
        Command::Bounds {
            q,
            n_min,
            n_max,
            io,
        } => cmd_bounds(*q, *n_min, *n_max, io),
        Command::Search {
            family,
            n,
            p,
            cap,
            io,
        } => cmd_search(*family, *n, *p, *cap, io),
        Command::Verify {
            target,
            k_max,
            q,
            cap,
            io,
        } => cmd_verify(*target, *k_max, *q, *cap, io),
        Command::Simulate {
            errors,
            seed,
            set,
            io,
        } => cmd_simulate(*errors, *seed, set, io),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failed) => {
            eprintln!("dnalabel: {failed} line(s) could not be decoded");
            ExitCode::from(1)
        }
        Err(Failure::Decode(e)) => {
            eprintln!("dnalabel: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("dnalabel: {e:#}");
            ExitCode::from(2)
        }
    }
}
