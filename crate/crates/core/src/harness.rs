//! Corpus study: per-book reports fanned out over a worker pool, pairwise
//! "alphabet X beats alphabet Y" fractions, rank-prefix curves and CSV output.
//!
//! Books are ranked by word count, shortest first. A book beats another
//! alphabet only with strictly fewer total bits; equal totals are counted as
//! ties and go to neither side.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codebook::{CodebookFormat, LetterRepr};
use crate::container::ContainerConfig;
use crate::error::{Error, Result};
use crate::metrics::{analyze_normalized, AnalysisRow, CompressionReport};
use crate::text::{normalize, AlphabetSpec, NormalizedText, Syllabifier};

/// Version tag written in the first line of every CSV file.
pub const CSV_SCHEMA: &str = "alphacode-csv v1";

/// A readable text in the corpus.
#[derive(Debug, Clone)]
pub struct CorpusText {
    pub path: PathBuf,
    pub text: NormalizedText,
}

impl CorpusText {
    pub fn id(&self) -> String {
        self.path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.path.display().to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub path: PathBuf,
    pub letters_count: u64,
    pub words_count: u64,
    /// 1-based, by word count ascending, ties by path.
    pub rank: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusIndex {
    pub entries: Vec<CorpusEntry>,
}

impl CorpusIndex {
    pub fn build(texts: &[CorpusText]) -> Self {
        let mut entries: Vec<CorpusEntry> = texts
            .iter()
            .map(|t| CorpusEntry {
                path: t.path.clone(),
                letters_count: t.text.letter_count() as u64,
                words_count: t.text.word_count() as u64,
                rank: 0,
            })
            .collect();
        entries.sort_by(|a, b| {
            a.words_count
                .cmp(&b.words_count)
                .then_with(|| a.path.cmp(&b.path))
        });
        for (i, e) in entries.iter_mut().enumerate() {
            e.rank = i + 1;
        }
        CorpusIndex { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Reads every regular file of `dir` in path order. Files that cannot be
/// read as UTF-8 or contain no letters are skipped and counted.
pub fn load_corpus<P: AsRef<Path>>(dir: P) -> Result<(Vec<CorpusText>, usize)> {
    let dir = dir.as_ref();
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let loaded: Vec<Option<CorpusText>> = paths
        .par_iter()
        .map(|p| {
            let raw = match fs::read_to_string(p) {
                Ok(raw) => raw,
                Err(e) => {
                    warn!("skipping {}: {e}", p.display());
                    return None;
                }
            };
            match normalize(&raw) {
                Ok(text) => Some(CorpusText {
                    path: p.clone(),
                    text,
                }),
                Err(e) => {
                    warn!("skipping {}: {e}", p.display());
                    None
                }
            }
        })
        .collect();
    let skipped = loaded.iter().filter(|t| t.is_none()).count();
    if skipped > 0 {
        warn!("skipped {skipped} unreadable file(s) in {}", dir.display());
    }
    Ok((loaded.into_iter().flatten().collect(), skipped))
}

/// Keeps `round(fraction · K)` texts (at least one when `fraction > 0`)
/// chosen with a seeded generator, returned in their original order.
pub fn sample_texts(texts: Vec<CorpusText>, fraction: f64, seed: u64) -> Result<Vec<CorpusText>> {
    if !(0.0..=1.0).contains(&fraction) || fraction == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "sample fraction must be in (0, 1], got {fraction}"
        )));
    }
    if fraction == 1.0 {
        return Ok(texts);
    }
    let k = ((texts.len() as f64 * fraction).round() as usize).clamp(1, texts.len().max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = (0..texts.len()).collect::<Vec<_>>();
    picked.shuffle(&mut rng);
    picked.truncate(k);
    picked.sort_unstable();
    let mut keep = vec![false; texts.len()];
    for i in picked {
        keep[i] = true;
    }
    Ok(texts
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect())
}

/// The four alphabets compared across a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Contender {
    Syllables,
    Words,
    Letters,
    Letters2,
}

impl Contender {
    pub const ALL: [Contender; 4] = [
        Contender::Syllables,
        Contender::Words,
        Contender::Letters,
        Contender::Letters2,
    ];

    pub fn short(self) -> &'static str {
        match self {
            Contender::Syllables => "s",
            Contender::Words => "w",
            Contender::Letters => "lett",
            Contender::Letters2 => "lett2",
        }
    }

    pub fn alphabet(self, syllabifier: &Syllabifier) -> AlphabetSpec {
        match self {
            Contender::Syllables => AlphabetSpec::Syllables(syllabifier.clone()),
            Contender::Words => AlphabetSpec::Words,
            Contender::Letters => AlphabetSpec::Letters,
            Contender::Letters2 => AlphabetSpec::LetterNgram(2),
        }
    }

    /// Matches an alphabet label as written in reports.
    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "syllables" => Some(Contender::Syllables),
            "words" => Some(Contender::Words),
            "letters" => Some(Contender::Letters),
            "ngram2" => Some(Contender::Letters2),
            _ => None,
        }
    }
}

/// `X < Y` or `X < all others`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    BeatsAll(Contender),
    Beats(Contender, Contender),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Win,
    Tie,
    Loss,
}

impl Comparison {
    /// Columns in output order.
    pub const COLUMNS: [Comparison; 8] = [
        Comparison::BeatsAll(Contender::Syllables),
        Comparison::BeatsAll(Contender::Words),
        Comparison::BeatsAll(Contender::Letters2),
        Comparison::BeatsAll(Contender::Letters),
        Comparison::Beats(Contender::Syllables, Contender::Words),
        Comparison::Beats(Contender::Letters, Contender::Words),
        Comparison::Beats(Contender::Letters2, Contender::Words),
        Comparison::Beats(Contender::Words, Contender::Letters2),
    ];

    pub fn label(self) -> String {
        match self {
            Comparison::BeatsAll(x) => format!("{}<all", x.short()),
            Comparison::Beats(x, y) => format!("{}<{}", x.short(), y.short()),
        }
    }

    pub fn outcome(self, totals: &BookTotals) -> Outcome {
        match self {
            Comparison::Beats(x, y) => match totals.get(x).cmp(&totals.get(y)) {
                std::cmp::Ordering::Less => Outcome::Win,
                std::cmp::Ordering::Equal => Outcome::Tie,
                std::cmp::Ordering::Greater => Outcome::Loss,
            },
            Comparison::BeatsAll(x) => {
                let mine = totals.get(x);
                let best_other = Contender::ALL
                    .iter()
                    .filter(|&&c| c != x)
                    .map(|&c| totals.get(c))
                    .min()
                    .unwrap();
                match mine.cmp(&best_other) {
                    std::cmp::Ordering::Less => Outcome::Win,
                    std::cmp::Ordering::Equal => Outcome::Tie,
                    std::cmp::Ordering::Greater => Outcome::Loss,
                }
            }
        }
    }
}

/// Total bits of one book under each contender, for one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BookTotals {
    pub syllables: u64,
    pub words: u64,
    pub letters: u64,
    pub letters2: u64,
}

impl BookTotals {
    pub fn get(&self, c: Contender) -> u64 {
        match c {
            Contender::Syllables => self.syllables,
            Contender::Words => self.words,
            Contender::Letters => self.letters,
            Contender::Letters2 => self.letters2,
        }
    }

    fn set(&mut self, c: Contender, v: u64) {
        match c {
            Contender::Syllables => self.syllables = v,
            Contender::Words => self.words = v,
            Contender::Letters => self.letters = v,
            Contender::Letters2 => self.letters2 = v,
        }
    }

    /// Collects totals from report rows; `None` unless all four contenders
    /// are present.
    pub fn from_reports<'a, I>(reports: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a CompressionReport>,
    {
        let mut t = BookTotals {
            syllables: 0,
            words: 0,
            letters: 0,
            letters2: 0,
        };
        let mut seen = [false; 4];
        for r in reports {
            if let Some(c) = Contender::from_label(&r.alphabet) {
                t.set(c, r.total_bits);
                seen[c as usize] = true;
            }
        }
        seen.iter().all(|&s| s).then_some(t)
    }
}

/// Representation key of a group of comparable reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepKey {
    pub repr: LetterRepr,
    pub format: CodebookFormat,
}

impl RepKey {
    pub fn label(&self) -> String {
        format!("{}/{}", self.repr.label(), self.format.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WinFractionRow {
    pub representation: String,
    pub books: usize,
    pub fractions: Vec<f64>,
    pub tie_fractions: Vec<f64>,
}

impl WinFractionRow {
    pub fn fraction(&self, c: Comparison) -> Option<f64> {
        Comparison::COLUMNS
            .iter()
            .position(|&x| x == c)
            .map(|i| self.fractions[i])
    }
}

/// Win fractions over the given books, which must be in rank order.
pub fn win_fractions(representation: &str, books: &[BookTotals]) -> WinFractionRow {
    let n = books.len();
    let mut wins = vec![0usize; Comparison::COLUMNS.len()];
    let mut ties = vec![0usize; Comparison::COLUMNS.len()];
    for b in books {
        for (i, c) in Comparison::COLUMNS.iter().enumerate() {
            match c.outcome(b) {
                Outcome::Win => wins[i] += 1,
                Outcome::Tie => ties[i] += 1,
                Outcome::Loss => {}
            }
        }
    }
    let frac = |k: usize| if n == 0 { 0.0 } else { k as f64 / n as f64 };
    WinFractionRow {
        representation: representation.to_string(),
        books: n,
        fractions: wins.into_iter().map(frac).collect(),
        tie_fractions: ties.into_iter().map(frac).collect(),
    }
}

/// `(rank, win fractions over books up to that rank)` pairs.
pub type RankCurve = Vec<(usize, Vec<f64>)>;

/// For each rank `x`, the win fractions over books with rank ≤ `x`.
/// `ranked` pairs each book's rank with its totals, in rank order.
pub fn rank_prefix_curve(ranked: &[(usize, BookTotals)]) -> RankCurve {
    let mut wins = vec![0usize; Comparison::COLUMNS.len()];
    ranked
        .iter()
        .enumerate()
        .map(|(i, (rank, totals))| {
            for (k, c) in Comparison::COLUMNS.iter().enumerate() {
                if c.outcome(totals) == Outcome::Win {
                    wins[k] += 1;
                }
            }
            let seen = (i + 1) as f64;
            (*rank, wins.iter().map(|&w| w as f64 / seen).collect())
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CorpusOptions {
    pub reprs: Vec<LetterRepr>,
    pub format: CodebookFormat,
    pub syllabifier: Syllabifier,
    pub denominator_l: u32,
    /// Drop this many shortest and this many longest books.
    pub drop_extremes: usize,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            reprs: LetterRepr::ALL.to_vec(),
            format: CodebookFormat::Blocks,
            syllabifier: Syllabifier::default(),
            denominator_l: 8,
            drop_extremes: 0,
        }
    }
}

impl CorpusOptions {
    pub fn configs(&self) -> Result<Vec<ContainerConfig>> {
        let mut out = Vec::new();
        for &repr in &self.reprs {
            for c in Contender::ALL {
                out.push(ContainerConfig::new(
                    c.alphabet(&self.syllabifier),
                    repr,
                    self.format,
                )?);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct BookResult {
    pub entry: CorpusEntry,
    pub id: String,
    pub rows: Vec<AnalysisRow>,
}

#[derive(Debug, Clone)]
pub struct CorpusStudy {
    /// In rank order, after dropping extremes.
    pub books: Vec<BookResult>,
    pub win_rows: Vec<WinFractionRow>,
    pub curves: Vec<(String, RankCurve)>,
    /// Books left out of a representation because a report failed.
    pub incomplete: BTreeMap<String, usize>,
}

/// Analyzes every text and aggregates. Output order depends only on ranks.
pub fn run_corpus(texts: &[CorpusText], opts: &CorpusOptions) -> Result<CorpusStudy> {
    let configs = opts.configs()?;
    let index = CorpusIndex::build(texts);
    let keep = if 2 * opts.drop_extremes >= index.len() {
        if opts.drop_extremes > 0 {
            warn!(
                "dropping {} books at each end leaves nothing of {}",
                opts.drop_extremes,
                index.len()
            );
        }
        if opts.drop_extremes > 0 {
            0..0
        } else {
            0..index.len()
        }
    } else {
        opts.drop_extremes..index.len() - opts.drop_extremes
    };
    let by_path: BTreeMap<&Path, &CorpusText> =
        texts.iter().map(|t| (t.path.as_path(), t)).collect();
    let entries = &index.entries[keep];
    info!(
        "analyzing {} books with {} configurations",
        entries.len(),
        configs.len()
    );

    let books: Vec<BookResult> = entries
        .par_iter()
        .map(|e| {
            let t = by_path[e.path.as_path()];
            let id = t.id();
            let rows = analyze_normalized(&id, &t.text, &configs, opts.denominator_l);
            BookResult {
                entry: e.clone(),
                id,
                rows,
            }
        })
        .collect();

    let (win_rows, curves, incomplete) = aggregate(&books, opts);
    Ok(CorpusStudy {
        books,
        win_rows,
        curves,
        incomplete,
    })
}

type Aggregates = (
    Vec<WinFractionRow>,
    Vec<(String, RankCurve)>,
    BTreeMap<String, usize>,
);

fn aggregate(books: &[BookResult], opts: &CorpusOptions) -> Aggregates {
    let mut win_rows = Vec::new();
    let mut curves = Vec::new();
    let mut incomplete = BTreeMap::new();
    for &repr in &opts.reprs {
        let key = RepKey {
            repr,
            format: opts.format,
        };
        let mut ranked = Vec::new();
        for b in books {
            let reports = b
                .rows
                .iter()
                .filter(|r| r.config.repr == repr && r.config.codebook_format == opts.format)
                .filter_map(|r| r.report.as_ref().ok());
            match BookTotals::from_reports(reports) {
                Some(t) => ranked.push((b.entry.rank, t)),
                None => *incomplete.entry(key.label()).or_insert(0) += 1,
            }
        }
        let totals: Vec<BookTotals> = ranked.iter().map(|(_, t)| *t).collect();
        win_rows.push(win_fractions(&key.label(), &totals));
        curves.push((key.label(), rank_prefix_curve(&ranked)));
    }
    (win_rows, curves, incomplete)
}

fn ratio(x: f64) -> String {
    format!("{x:.6}")
}

fn with_schema<W: Write>(mut out: W, kind: &str, body: Vec<u8>) -> Result<()> {
    writeln!(out, "# {CSV_SCHEMA} {kind}")?;
    out.write_all(&body)?;
    out.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Column names of the per-report CSV.
pub const REPORT_COLUMNS: [&str; 21] = [
    "rank",
    "text",
    "alphabet",
    "repr",
    "format",
    "letters",
    "words",
    "tokens",
    "symbols",
    "entropy_bits",
    "code_only_bits",
    "codebook_bits",
    "total_bits",
    "denominator_l",
    "eta",
    "code_to_codebook",
    "bits_per_word",
    "kolmogorov_bound_bits",
    "config",
    "status",
    "error",
];

fn report_record(rank: &str, text_id: &str, row: &AnalysisRow) -> Vec<String> {
    let cfg = &row.config;
    match &row.report {
        Ok(r) => vec![
            rank.to_string(),
            text_id.to_string(),
            r.alphabet.clone(),
            r.repr.clone(),
            r.format.clone(),
            r.letters_count.to_string(),
            r.words_count.to_string(),
            r.tokens.to_string(),
            r.symbols.to_string(),
            ratio(r.entropy_bits),
            r.code_only_bits.to_string(),
            r.codebook_bits.to_string(),
            r.total_bits.to_string(),
            r.denominator_l.to_string(),
            ratio(r.eta),
            ratio(r.code_to_codebook_ratio()),
            ratio(r.bits_per_word()),
            r.kolmogorov_bound_bits.to_string(),
            cfg.label(),
            "ok".into(),
            String::new(),
        ],
        Err(e) => {
            let mut rec = vec![String::new(); REPORT_COLUMNS.len()];
            rec[0] = rank.to_string();
            rec[1] = text_id.to_string();
            rec[2] = cfg.alphabet.label();
            rec[3] = cfg.repr.label().into();
            rec[4] = cfg.codebook_format.label().into();
            rec[18] = cfg.label();
            rec[19] = "error".into();
            rec[20] = e.to_string();
            rec
        }
    }
}

/// One row per configuration for a single text.
pub fn write_analysis_csv<W: Write>(out: W, text_id: &str, rows: &[AnalysisRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_COLUMNS).map_err(csv_err)?;
    for row in rows {
        w.write_record(report_record("", text_id, row))
            .map_err(csv_err)?;
    }
    let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    with_schema(out, "analysis", body)
}

/// Every report of every book, in rank order.
pub fn write_books_csv<W: Write>(out: W, study: &CorpusStudy) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_COLUMNS).map_err(csv_err)?;
    for b in &study.books {
        let rank = b.entry.rank.to_string();
        for row in &b.rows {
            w.write_record(report_record(&rank, &b.id, row))
                .map_err(csv_err)?;
        }
    }
    let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    with_schema(out, "books", body)
}

pub fn write_win_fractions_csv<W: Write>(out: W, rows: &[WinFractionRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["representation".to_string(), "books".to_string()];
    header.extend(Comparison::COLUMNS.iter().map(|c| c.label()));
    header.extend(
        Comparison::COLUMNS
            .iter()
            .map(|c| format!("ties:{}", c.label())),
    );
    w.write_record(&header).map_err(csv_err)?;
    for r in rows {
        let mut rec = vec![r.representation.clone(), r.books.to_string()];
        rec.extend(r.fractions.iter().map(|&x| ratio(x)));
        rec.extend(r.tie_fractions.iter().map(|&x| ratio(x)));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    with_schema(out, "win-fractions", body)
}

pub fn write_rank_curves_csv<W: Write>(out: W, study: &CorpusStudy) -> Result<()> {
    let words: BTreeMap<usize, u64> = study
        .books
        .iter()
        .map(|b| (b.entry.rank, b.entry.words_count))
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["representation".to_string(), "rank".into(), "words".into()];
    header.extend(Comparison::COLUMNS.iter().map(|c| c.label()));
    w.write_record(&header).map_err(csv_err)?;
    for (label, curve) in &study.curves {
        for (rank, fr) in curve {
            let mut rec = vec![label.clone(), rank.to_string(), words[rank].to_string()];
            rec.extend(fr.iter().map(|&x| ratio(x)));
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    with_schema(out, "rank-curves", body)
}

/// Writes `books.csv`, `win_fractions.csv` and `rank_curves.csv` into `dir`.
pub fn write_study<P: AsRef<Path>>(dir: P, study: &CorpusStudy) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let books = dir.join("books.csv");
    let wins = dir.join("win_fractions.csv");
    let curves = dir.join("rank_curves.csv");
    write_books_csv(fs::File::create(&books)?, study)?;
    write_win_fractions_csv(fs::File::create(&wins)?, &study.win_rows)?;
    write_rank_curves_csv(fs::File::create(&curves)?, study)?;
    Ok(vec![books, wins, curves])
}
