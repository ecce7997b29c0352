use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use alphacode::codebook::{CodebookFormat, LetterRepr};
use alphacode::container::{compress_normalized, decompress_bytes, ContainerConfig};
use alphacode::harness::{self, CorpusOptions};
use alphacode::metrics::{analyze_normalized, compressibility_of};
use alphacode::text::{normalize, AlphabetSpec, Syllabifier};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

/// Huffman text compression over letters, n-grams, syllables, words or
/// word pairs, with per-text and corpus-level length reports.
#[derive(Parser, Debug)]
#[command(name = "alphc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compress a UTF-8 text file into a container.
    Compress(CompressArgs),
    /// Recover the normalized letter sequence from a container.
    Decompress(DecompressArgs),
    /// Print one CSV row per alphabet / letter representation / codebook format.
    Analyze(AnalyzeArgs),
    /// Analyze a directory of texts and write win fractions, rank curves and per-book reports.
    Corpus(CorpusArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AlphabetArg {
    Letters,
    Ngram,
    Syllables,
    Words,
    Wordpairs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReprArg {
    L8,
    L5,
    Lvar,
}

impl From<ReprArg> for LetterRepr {
    fn from(r: ReprArg) -> Self {
        match r {
            ReprArg::L8 => LetterRepr::L8,
            ReprArg::L5 => LetterRepr::L5,
            ReprArg::Lvar => LetterRepr::Lvariable,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CodebookArg {
    Blocks,
    Flat,
}

impl From<CodebookArg> for CodebookFormat {
    fn from(c: CodebookArg) -> Self {
        match c {
            CodebookArg::Blocks => CodebookFormat::Blocks,
            CodebookArg::Flat => CodebookFormat::Flat,
        }
    }
}

#[derive(Args, Debug)]
struct SyllabifierArg {
    /// `ssp`, `ssp-y`, `ssp-noy` or `patterns:<path>`.
    #[arg(long, default_value = "ssp")]
    syllabifier: String,
}

impl SyllabifierArg {
    fn build(&self) -> Result<Syllabifier> {
        Syllabifier::from_id(&self.syllabifier)
            .with_context(|| format!("invalid syllabifier {:?}", self.syllabifier))
    }
}

#[derive(Args, Debug)]
struct CompressArgs {
    /// Input text, `-` for standard input.
    input: PathBuf,
    /// Output container, `-` for standard output.
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = AlphabetArg::Words)]
    alphabet: AlphabetArg,
    /// Letters per n-gram for `--alphabet ngram`.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ReprArg::L8)]
    repr: ReprArg,
    #[arg(long, value_enum, default_value_t = CodebookArg::Blocks)]
    codebook: CodebookArg,
    #[command(flatten)]
    syllabifier: SyllabifierArg,
    /// Bits per letter of the uncompressed text in the reported ratio.
    #[arg(long, default_value_t = 8)]
    denominator_l: u32,
    /// Also write the token stream, one token per line, to this file.
    #[arg(long)]
    dump_tokens: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecompressArgs {
    /// Container file, `-` for standard input.
    input: PathBuf,
    /// Output file for the letters, `-` for standard output.
    output: PathBuf,
    /// Write tokens separated by spaces instead of the bare letter sequence.
    #[arg(long)]
    tokens: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Input text, `-` for standard input.
    input: PathBuf,
    /// Alphabets to report; all of them by default.
    #[arg(long, value_enum, num_args = 1..)]
    alphabet: Vec<AlphabetArg>,
    /// n-gram sizes used when `ngram` is among the alphabets.
    #[arg(long, num_args = 1.., default_values_t = [2usize, 3, 4])]
    n: Vec<usize>,
    #[arg(long, value_enum, num_args = 1..)]
    repr: Vec<ReprArg>,
    #[arg(long, value_enum, num_args = 1..)]
    codebook: Vec<CodebookArg>,
    #[command(flatten)]
    syllabifier: SyllabifierArg,
    #[arg(long, default_value_t = 8)]
    denominator_l: u32,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Directory of plain-text files.
    dir: PathBuf,
    /// Fraction of the files to analyze, chosen with `--seed`.
    #[arg(long, default_value_t = 1.0)]
    sample: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Leave out this many shortest and this many longest books.
    #[arg(long, default_value_t = 0)]
    drop_extremes: usize,
    #[arg(long, value_enum, num_args = 1..)]
    repr: Vec<ReprArg>,
    #[arg(long, value_enum, default_value_t = CodebookArg::Blocks)]
    codebook: CodebookArg,
    #[command(flatten)]
    syllabifier: SyllabifierArg,
    #[arg(long, default_value_t = 8)]
    denominator_l: u32,
    /// Output directory for the CSV files.
    #[arg(long, default_value = "corpus-out")]
    out: PathBuf,
}

fn alphabet_spec(kind: AlphabetArg, n: usize, syllabifier: &Syllabifier) -> Result<AlphabetSpec> {
    Ok(match kind {
        AlphabetArg::Letters => AlphabetSpec::Letters,
        AlphabetArg::Ngram => AlphabetSpec::ngram(n)?,
        AlphabetArg::Syllables => AlphabetSpec::Syllables(syllabifier.clone()),
        AlphabetArg::Words => AlphabetSpec::Words,
        AlphabetArg::Wordpairs => AlphabetSpec::WordPairs,
    })
}

fn is_stdio(p: &Path) -> bool {
    p.as_os_str() == "-"
}

fn read_input(p: &Path) -> Result<Vec<u8>> {
    if is_stdio(p) {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        fs::read(p).with_context(|| format!("reading {}", p.display()))
    }
}

fn read_text(p: &Path) -> Result<String> {
    String::from_utf8(read_input(p)?).with_context(|| format!("{} is not UTF-8 text", p.display()))
}

fn write_output(p: &Path, data: &[u8]) -> Result<()> {
    if is_stdio(p) {
        let mut out = io::stdout().lock();
        out.write_all(data)?;
        out.flush()?;
        Ok(())
    } else {
        fs::write(p, data).with_context(|| format!("writing {}", p.display()))
    }
}

fn cmd_compress(a: CompressArgs) -> Result<()> {
    let syllabifier = a.syllabifier.build()?;
    let cfg = ContainerConfig::new(
        alphabet_spec(a.alphabet, a.n, &syllabifier)?,
        a.repr.into(),
        a.codebook.into(),
    )?;
    let text = normalize(&read_text(&a.input)?)?;
    if let Some(path) = &a.dump_tokens {
        let tokens = alphacode::tokenize(&text, &cfg.alphabet)?;
        let mut dump = tokens.tokens().join("\n");
        dump.push('\n');
        fs::write(path, dump).with_context(|| format!("writing {}", path.display()))?;
    }
    let container = compress_normalized(&text, &cfg)?;
    write_output(&a.output, &container.to_bytes())?;
    let total = container.codebook_bits() + container.code_only_bits();
    eprintln!(
        "{}: tokens={} symbols={} code_only_bits={} codebook_bits={} total_bits={} eta={:.6}",
        cfg.label(),
        container.token_count,
        container.symbol_count,
        container.code_only_bits(),
        container.codebook_bits(),
        total,
        compressibility_of(total, text.letter_count() as u64, a.denominator_l)
    );
    Ok(())
}

fn cmd_decompress(a: DecompressArgs) -> Result<()> {
    let bytes = read_input(&a.input)?;
    if bytes.is_empty() {
        bail!("{} is empty", a.input.display());
    }
    let d = decompress_bytes(&bytes).with_context(|| format!("decoding {}", a.input.display()))?;
    let out = if a.tokens {
        d.tokens.join(" ")
    } else {
        d.letters
    };
    write_output(&a.output, out.as_bytes())
}

fn analyze_configs(a: &AnalyzeArgs, syllabifier: &Syllabifier) -> Result<Vec<ContainerConfig>> {
    let alphabets = if a.alphabet.is_empty() {
        vec![
            AlphabetArg::Letters,
            AlphabetArg::Ngram,
            AlphabetArg::Syllables,
            AlphabetArg::Words,
            AlphabetArg::Wordpairs,
        ]
    } else {
        a.alphabet.clone()
    };
    let reprs = if a.repr.is_empty() {
        vec![ReprArg::L8, ReprArg::L5, ReprArg::Lvar]
    } else {
        a.repr.clone()
    };
    let formats = if a.codebook.is_empty() {
        vec![CodebookArg::Blocks, CodebookArg::Flat]
    } else {
        a.codebook.clone()
    };
    let mut specs = Vec::new();
    for kind in alphabets {
        if kind == AlphabetArg::Ngram {
            for &n in &a.n {
                specs.push(alphabet_spec(kind, n, syllabifier)?);
            }
        } else {
            specs.push(alphabet_spec(kind, 0, syllabifier)?);
        }
    }
    let mut configs = Vec::new();
    for spec in &specs {
        for &r in &reprs {
            for &f in &formats {
                let format: CodebookFormat = f.into();
                // an explicitly requested flat + lvar is reported as an error row
                if !format.supports(r.into()) && a.codebook.is_empty() {
                    continue;
                }
                configs.push(ContainerConfig {
                    alphabet: spec.clone(),
                    repr: r.into(),
                    codebook_format: format,
                });
            }
        }
    }
    Ok(configs)
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<()> {
    let syllabifier = a.syllabifier.build()?;
    let configs = analyze_configs(&a, &syllabifier)?;
    let text = normalize(&read_text(&a.input)?)?;
    let id = if is_stdio(&a.input) {
        "-".to_string()
    } else {
        a.input.display().to_string()
    };
    let rows = analyze_normalized(&id, &text, &configs, a.denominator_l);
    let mut buf = Vec::new();
    harness::write_analysis_csv(&mut buf, &id, &rows)?;
    match &a.out {
        Some(p) => write_output(p, &buf),
        None => write_output(Path::new("-"), &buf),
    }
}

fn cmd_corpus(a: CorpusArgs) -> Result<()> {
    let (texts, skipped) = harness::load_corpus(&a.dir)?;
    if texts.is_empty() {
        bail!("no readable texts in {}", a.dir.display());
    }
    let texts = harness::sample_texts(texts, a.sample, a.seed)?;
    info!("{} texts selected, {} skipped", texts.len(), skipped);
    let opts = CorpusOptions {
        reprs: if a.repr.is_empty() {
            LetterRepr::ALL.to_vec()
        } else {
            a.repr.iter().map(|&r| r.into()).collect()
        },
        format: a.codebook.into(),
        syllabifier: a.syllabifier.build()?,
        denominator_l: a.denominator_l,
        drop_extremes: a.drop_extremes,
    };
    let study = harness::run_corpus(&texts, &opts)?;
    let written = harness::write_study(&a.out, &study)?;
    for (label, n) in &study.incomplete {
        eprintln!("{label}: {n} book(s) left out after a failed report");
    }
    eprintln!(
        "{} books analyzed, {} file(s) skipped; wrote {}",
        study.books.len(),
        skipped,
        written
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Compress(a) => cmd_compress(a),
        Command::Decompress(a) => cmd_decompress(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Corpus(a) => cmd_corpus(a),
    }
}
