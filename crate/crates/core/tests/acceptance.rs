//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use alphacode::bitio::BitString;
use alphacode::codebook::{
    codebook_length, serialize_blocks, serialize_flat_code, shannon_letter_cost, CodebookFormat,
    LetterRepr, ENGLISH_LETTER_FREQUENCIES, VARIABLE_LETTER_CODES,
};
use alphacode::container::{compress_normalized, decompress_bytes, ContainerConfig};
use alphacode::gamma::{gamma_decode, gamma_encode};
use alphacode::harness::{self, Comparison, Contender, CorpusOptions, CorpusText};
use alphacode::huffman::{build_canonical_code, count_symbols, entropy, is_dyadic, FrequencyTable};
use alphacode::metrics::{concat_check_from_parts, measure, zipf_estimates};
use alphacode::text::{normalize, tokenize, AlphabetSpec, NormalizedText};
use rand::seq::SliceRandom;
use rand::Rng;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn alphabets() -> Vec<AlphabetSpec> {
    vec![
        AlphabetSpec::Letters,
        AlphabetSpec::LetterNgram(2),
        AlphabetSpec::LetterNgram(3),
        AlphabetSpec::syllables(),
        AlphabetSpec::Words,
        AlphabetSpec::WordPairs,
    ]
}

fn configs() -> Vec<ContainerConfig> {
    let mut out = Vec::new();
    for a in alphabets() {
        for repr in LetterRepr::ALL {
            for format in [CodebookFormat::Blocks, CodebookFormat::Flat] {
                if let Ok(c) = ContainerConfig::new(a.clone(), repr, format) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn bits_of_len(len: u32, value: u64) -> BitString {
    BitString::from_value(value, len)
}

// 1. γ round trip over every bitstring of length 1..=16 and the worked example.
fn gamma_exhaustive() -> Verdict {
    let start = Instant::now();
    let example = gamma_encode(&"1001101".parse().unwrap()).unwrap();
    let example_ok = example.to_string() == "0001111001101";
    let mut failures = 0u64;
    let mut checked = 0u64;
    for len in 1..=16u32 {
        let expected_len = len as usize + 2 * (32 - len.leading_zeros()) as usize;
        for value in 0..(1u64 << len) {
            let b = bits_of_len(len, value);
            let g = gamma_encode(&b).unwrap();
            let mut r = g.reader();
            let back = gamma_decode(&mut r).unwrap();
            if back != b || !r.is_at_end() || g.len() != expected_len {
                failures += 1;
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        example_ok && failures == 0 && checked == 131_070 && elapsed < Duration::from_secs(5),
        format!(
            "{checked} bitstrings, {failures} failures, example {} ({example}), {:.2?}",
            if example_ok { "ok" } else { "WRONG" },
            elapsed
        ),
    )
}

/// Least `Σ m_k ℓ_k` over all length vectors with lengths in `1..=M-1`
/// satisfying Kraft's inequality.
fn brute_force_min_cost(counts: &[u64]) -> u64 {
    let m = counts.len();
    if m == 1 {
        return counts[0];
    }
    let max = (m - 1) as u32;
    let mut lens = vec![1u32; m];
    let mut best = u64::MAX;
    loop {
        let kraft: u128 = lens.iter().map(|&l| 1u128 << (max - l)).sum();
        if kraft <= 1u128 << max {
            let cost: u64 = lens.iter().zip(counts).map(|(&l, &c)| l as u64 * c).sum();
            best = best.min(cost);
        }
        let mut i = 0;
        loop {
            if i == m {
                return best;
            }
            if lens[i] < max {
                lens[i] += 1;
                break;
            }
            lens[i] = 1;
            i += 1;
        }
    }
}

// 2. Huffman against the brute-force optimum for every table with M ≤ 6, counts ≤ 8.
fn huffman_optimality() -> Verdict {
    let start = Instant::now();
    let names = ["a", "b", "c", "d", "e", "f"];
    let mut oracle: HashMap<Vec<u64>, u64> = HashMap::new();
    let (mut tables, mut cost_mismatch, mut kraft_bad) = (0u64, 0u64, 0u64);
    for m in 1..=6usize {
        let mut counts = vec![1u64; m];
        loop {
            let mut key = counts.clone();
            key.sort_unstable();
            let best = *oracle
                .entry(key.clone())
                .or_insert_with(|| brute_force_min_cost(&key));
            let freqs =
                FrequencyTable::from_counts(names[..m].iter().copied().zip(counts.iter().copied()))
                    .unwrap();
            let code = build_canonical_code(&freqs);
            if code.encoded_len(&freqs).unwrap() != best {
                cost_mismatch += 1;
            }
            if m >= 2 {
                let max = code.max_len();
                let kraft: u128 = code.lengths().map(|(_, l)| 1u128 << (max - l)).sum();
                if kraft != 1u128 << max {
                    kraft_bad += 1;
                }
            }
            tables += 1;

            let mut i = 0;
            while i < m && counts[i] == 8 {
                counts[i] = 1;
                i += 1;
            }
            if i == m {
                break;
            }
            counts[i] += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        cost_mismatch == 0 && kraft_bad == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{tables} tables, {cost_mismatch} non-optimal, {kraft_bad} Kraft violations, {:.2?}",
            elapsed
        ),
    )
}

// 3. N·S ≤ ℓ[enc] ≤ N·S + N, strict on the left for non-dyadic frequencies.
fn entropy_sandwich() -> Verdict {
    let tol = 1e-9;
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut strict_cases = 0;
    let five = [
        AlphabetSpec::Letters,
        AlphabetSpec::LetterNgram(2),
        AlphabetSpec::syllables(),
        AlphabetSpec::Words,
        AlphabetSpec::WordPairs,
    ];
    for seed in 0..200u64 {
        let mut rng = common::rng(10_000 + seed);
        let raw = common::random_text(seed, rng.gen_range(20..1500));
        let text = normalize(&raw).unwrap();
        for a in &five {
            let tokens = tokenize(&text, a).unwrap();
            let freqs = count_symbols(tokens.tokens()).unwrap();
            let code = build_canonical_code(&freqs);
            let len = code.encoded_len(&freqs).unwrap() as f64;
            let n = freqs.total() as f64;
            let ns = n * entropy(&freqs);
            let mut ok = ns <= len + tol && len <= ns + n + tol;
            if !is_dyadic(&freqs) {
                strict_cases += 1;
                ok &= ns < len - tol;
            }
            if !ok {
                failures.push(format!("seed {seed} {a}: N·S={ns} len={len} N={n}"));
            }
            cases += 1;
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "{cases} cases ({strict_cases} non-dyadic), {} failures{}",
            failures.len(),
            failures
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn roundtrip_one(text: &NormalizedText, cfg: &ContainerConfig) -> Result<(), String> {
    let c = compress_normalized(text, cfg).map_err(|e| e.to_string())?;
    let d = decompress_bytes(&c.to_bytes()).map_err(|e| e.to_string())?;
    let tokens = tokenize(text, &cfg.alphabet).map_err(|e| e.to_string())?;
    if d.letters != text.letters() {
        return Err("letters differ".into());
    }
    if d.tokens != tokens.tokens() {
        return Err("tokens differ".into());
    }
    Ok(())
}

// 4. Bit-exact round trip on random texts and real books for every supported configuration.
fn roundtrips(books: &[(String, NormalizedText)]) -> Verdict {
    let configs = configs();
    let mut runs = 0;
    let mut mismatches = Vec::new();
    let random: Vec<(String, NormalizedText)> = (0..50u64)
        .map(|s| {
            let words = common::rng(20_000 + s).gen_range(1..3000);
            (
                format!("random-{s}"),
                normalize(&common::random_text(500 + s, words)).unwrap(),
            )
        })
        .collect();
    for (id, text) in random.iter().chain(books) {
        for cfg in &configs {
            runs += 1;
            if let Err(e) = roundtrip_one(text, cfg) {
                mismatches.push(format!("{id} {}: {e}", cfg.label()));
            }
        }
    }
    verdict(
        mismatches.is_empty() && books.len() >= 3,
        format!(
            "{runs} round trips over {} configurations, {} random texts and {} books, {} mismatches{}",
            configs.len(),
            random.len(),
            books.len(),
            mismatches.len(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

// 5. Letter cost constant and prefix-freeness of the variable letter table.
fn letter_constant() -> Verdict {
    let cost = shannon_letter_cost(&ENGLISH_LETTER_FREQUENCIES);
    let mut clashes = 0;
    for (i, (_, a)) in VARIABLE_LETTER_CODES.iter().enumerate() {
        for (j, (_, b)) in VARIABLE_LETTER_CODES.iter().enumerate() {
            if i != j && b.starts_with(a) {
                clashes += 1;
            }
        }
    }
    verdict(
        (cost - 4.5766).abs() <= 1e-4 && clashes == 0,
        format!("Σθ⌈log₂1/θ⌉ = {cost:.6}, {clashes} prefix clashes among 26 codewords"),
    )
}

// 6. Zipf estimate.
fn zipf() -> Verdict {
    let z = zipf_estimates(10_000, 180_000, 8).unwrap();
    verdict(
        z.ratio < 4.72 && z.ratio >= 4.70,
        format!(
            "ratio {:.6}, codebook {:.1} bits, code {:.4e} bits",
            z.ratio, z.codebook_bits, z.code_bits
        ),
    )
}

fn entropy_of<K: std::hash::Hash + Eq>(counts: &HashMap<K, u64>) -> f64 {
    let total: u64 = counts.values().sum();
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * p.log2()
        })
        .sum()
}

/// Pads each word to `z` syllables with an empty syllable and returns
/// `(S_joint, Σ_i S(position i), z·S(g), S_words)` where `g` is the
/// syllable distribution of the padded sequence.
fn padded_construction(words: &[Vec<String>]) -> (f64, f64, f64, f64) {
    const THETA: &str = "\u{0398}";
    let z = words.iter().map(Vec::len).max().unwrap();
    let padded: Vec<Vec<&str>> = words
        .iter()
        .map(|w| {
            let mut p: Vec<&str> = w.iter().map(String::as_str).collect();
            p.resize(z, THETA);
            p
        })
        .collect();
    let mut joint: HashMap<Vec<&str>, u64> = HashMap::new();
    let mut positions: Vec<HashMap<&str, u64>> = vec![HashMap::new(); z];
    let mut pooled: HashMap<&str, u64> = HashMap::new();
    let mut strings: HashMap<String, u64> = HashMap::new();
    for p in &padded {
        *joint.entry(p.clone()).or_default() += 1;
        for (i, s) in p.iter().enumerate() {
            *positions[i].entry(s).or_default() += 1;
            *pooled.entry(s).or_default() += 1;
        }
    }
    for w in words {
        *strings.entry(w.concat()).or_default() += 1;
    }
    (
        entropy_of(&joint),
        positions.iter().map(entropy_of).sum(),
        z as f64 * entropy_of(&pooled),
        entropy_of(&strings),
    )
}

fn random_decomposition(
    rng: &mut impl Rng,
    kind: usize,
    max_words: usize,
    max_syll: usize,
) -> Vec<Vec<String>> {
    let pool: Vec<String> = ["a", "b", "ab", "ba", "c", "abc", "ca", "bc", "d", "da"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let pool_size = rng.gen_range(1..=pool.len());
    let n = rng.gen_range(1..=max_words);
    let mut words: Vec<Vec<String>> = Vec::with_capacity(n);
    for i in 0..n {
        let len = match kind {
            // every word has the same number of parts
            0 => max_syll,
            // one long word among monosyllables
            1 => {
                if i == 0 {
                    max_syll
                } else {
                    1
                }
            }
            _ => rng.gen_range(1..=max_syll),
        };
        let w = (0..len)
            .map(|_| pool[..pool_size].choose(rng).unwrap().clone())
            .collect();
        words.push(w);
    }
    if kind == 3 && n >= 2 {
        // the same string split two different ways
        words[0] = vec!["ab".into(), "c".into()];
        words[1] = vec!["a".into(), "bc".into()];
    }
    if kind == 4 {
        // a single word repeated
        let w = words[0].clone();
        words.iter_mut().for_each(|x| *x = w.clone());
    }
    words
}

// 7. The concatenation inequality with the padded-distribution cross-check,
//    and N₁S₁ ≥ N₂S₂ for n-grams versus 2n-grams.
fn concat_inequality() -> Verdict {
    let tol = 1e-9;
    let mut rng = common::rng(7);
    let mut violations = 0;
    let mut oracle_checked = 0;
    let mut oracle_mismatch = Vec::new();
    for case in 0..500 {
        let kind = case % 5;
        let small = case % 2 == 0;
        let (max_words, max_syll) = if small { (4, 3) } else { (60, 6) };
        let words = random_decomposition(&mut rng, kind, max_words, max_syll);
        let check = concat_check_from_parts(&words).unwrap();
        if !check.holds(tol) {
            violations += 1;
        }
        if small {
            oracle_checked += 1;
            let (s_joint, s_positions, z_s_pooled, s_words) = padded_construction(&words);
            let chain = s_words <= s_joint + tol
                && s_joint <= s_positions + tol
                && s_positions <= z_s_pooled + tol;
            let identity = (z_s_pooled - (check.rhs + check.z as f64 * check.h2)).abs() < 1e-9;
            let slack_matches = (check.slack - (z_s_pooled - s_words)).abs() < 1e-9;
            if !(chain && identity && slack_matches) {
                oracle_mismatch.push(format!("{words:?}"));
            }
        }
    }

    let mut product_failures = 0;
    for seed in 0..100u64 {
        let mut rng = common::rng(30_000 + seed);
        let n = rng.gen_range(1..=4usize);
        let text = normalize(&common::random_text(900 + seed, rng.gen_range(5..800))).unwrap();
        let keep = text.letter_count() / (2 * n) * (2 * n);
        if keep == 0 {
            continue;
        }
        let text = NormalizedText::from_words(&[&text.letters()[..keep]]).unwrap();
        let fine_spec = if n == 1 {
            AlphabetSpec::Letters
        } else {
            AlphabetSpec::LetterNgram(n)
        };
        let fine = tokenize(&text, &fine_spec).unwrap();
        let coarse = tokenize(&text, &AlphabetSpec::LetterNgram(2 * n)).unwrap();
        let f_fine = count_symbols(fine.tokens()).unwrap();
        let f_coarse = count_symbols(coarse.tokens()).unwrap();
        let fine_product = f_fine.total() as f64 * entropy(&f_fine);
        let coarse_product = f_coarse.total() as f64 * entropy(&f_coarse);
        let parts: Vec<Vec<&str>> = fine
            .tokens()
            .chunks(2)
            .map(|c| c.iter().map(String::as_str).collect())
            .collect();
        let check = concat_check_from_parts(&parts).unwrap();
        let consistent = (check.words_product - coarse_product).abs() < 1e-6
            && (check.syllab_product - fine_product).abs() < 1e-6
            && check.z as f64 == check.z_bar;
        if coarse_product > fine_product + tol || !consistent {
            product_failures += 1;
        }
    }
    verdict(
        violations == 0 && oracle_mismatch.is_empty() && product_failures == 0,
        format!(
            "500 decompositions, {violations} violations, padded oracle on {oracle_checked} small cases with {} mismatches; 100 n-gram/2n-gram texts, {product_failures} product failures{}",
            oracle_mismatch.len(),
            oracle_mismatch.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

/// `(L+1)` bits per letter, plus `γ(codeword)` per symbol.
fn flat_oracle(code: &alphacode::CanonicalCode, width: u64) -> u64 {
    code.lengths()
        .map(|(s, l)| {
            let l = l as u64;
            (width + 1) * s.len() as u64 + l + 2 * (64 - l.leading_zeros() as u64)
        })
        .sum()
}

// 8. Block codebooks are never longer than flat ones; flat length matches its formula.
fn codebook_economy(books: &[(String, NormalizedText)]) -> Verdict {
    let mut codes = 0;
    let mut blocks_longer = Vec::new();
    let mut formula_mismatch = 0;
    let mut by_config = BTreeMap::new();
    let random: Vec<(String, NormalizedText)> = (0..60u64)
        .map(|s| {
            let words = common::rng(40_000 + s).gen_range(50..3000);
            (
                format!("random-{s}"),
                normalize(&common::random_text(700 + s, words)).unwrap(),
            )
        })
        .collect();
    for (id, text) in random.iter().chain(books) {
        for a in alphabets() {
            let tokens = tokenize(text, &a).unwrap();
            let freqs = count_symbols(tokens.tokens()).unwrap();
            let code = build_canonical_code(&freqs);
            for repr in [LetterRepr::L8, LetterRepr::L5] {
                codes += 1;
                let width = repr.width().unwrap() as u64;
                let blocks = serialize_blocks(&code, repr).unwrap().len() as u64;
                let flat = serialize_flat_code(&code, repr).unwrap().len() as u64;
                if flat != flat_oracle(&code, width)
                    || codebook_length(&code, repr, CodebookFormat::Flat).unwrap() != flat
                    || codebook_length(&code, repr, CodebookFormat::Blocks).unwrap() != blocks
                {
                    formula_mismatch += 1;
                }
                if blocks > flat {
                    *by_config.entry(format!("{a}/{repr}")).or_insert(0usize) += 1;
                    blocks_longer.push(format!("{id} {a} {repr}: {blocks} > {flat}"));
                }
            }
        }
    }
    verdict(
        blocks_longer.is_empty() && formula_mismatch == 0,
        format!(
            "{codes} codes, {} with blocks > flat {by_config:?}, {formula_mismatch} flat-formula mismatches{}",
            blocks_longer.len(),
            blocks_longer.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

// 9. Directional claims on real books.
fn book_directions(books: &[(String, NormalizedText)]) -> Verdict {
    let l8 =
        |a: AlphabetSpec| ContainerConfig::new(a, LetterRepr::L8, CodebookFormat::Blocks).unwrap();
    let mut lines = Vec::new();
    let mut ok = books.len() >= 3;
    for (id, text) in books {
        let report = |a: AlphabetSpec| {
            let cfg = l8(a);
            let tokens = tokenize(text, &cfg.alphabet).unwrap();
            measure(id, text, &tokens, &cfg, 8).unwrap()
        };
        let words = report(AlphabetSpec::Words);
        let syll = report(AlphabetSpec::syllables());
        let g2 = report(AlphabetSpec::LetterNgram(2));
        let g3 = report(AlphabetSpec::LetterNgram(3));
        let pass = words.code_only_bits < syll.code_only_bits && g3.total_bits > g2.total_bits;
        ok &= pass;
        lines.push(format!(
            "{id}: words {} < syllables {} code-only, 3-gram {} > 2-gram {} total{}",
            words.code_only_bits,
            syll.code_only_bits,
            g3.total_bits,
            g2.total_bits,
            if pass { "" } else { " [violated]" }
        ));
    }
    verdict(ok, format!("{} books; {}", books.len(), lines.join("; ")))
}

// 10. Five-text corpus against totals compared by brute force.
fn small_corpus() -> Verdict {
    let raws = [
        ("a.txt", "the cat sat on the mat and the cat sat on the hat"),
        ("b.txt", "banana bandana cabana banana bandana"),
        (
            "c.txt",
            "to be or not to be that is the question whether tis nobler in the mind to suffer",
        ),
        ("d.txt", "aaaa aaaa aaaa aaaa"),
        (
            "e.txt",
            "happen happen letter letter dinner admit constant happen letter dinner admit",
        ),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (name, raw) in raws {
        std::fs::write(dir.path().join(name), raw).unwrap();
    }
    std::fs::write(dir.path().join("skip.bin"), [0xffu8, 0xfe, 0x00]).unwrap();
    let (texts, skipped) = harness::load_corpus(dir.path()).unwrap();
    let opts = CorpusOptions::default();
    let study = harness::run_corpus(&texts, &opts).unwrap();
    let again = harness::run_corpus(&texts, &opts).unwrap();

    let mut problems = Vec::new();
    if skipped != 1 || texts.len() != 5 {
        problems.push(format!("loaded {} texts, skipped {skipped}", texts.len()));
    }

    // ranks by word count, ties by file name
    let mut expected: Vec<(usize, &str)> = raws
        .iter()
        .map(|(n, r)| (r.split_whitespace().count(), *n))
        .collect();
    expected.sort();
    let got: Vec<&str> = study.books.iter().map(|b| b.id.as_str()).collect();
    let want: Vec<&str> = expected.iter().map(|(_, n)| *n).collect();
    if got != want {
        problems.push(format!("rank order {got:?} != {want:?}"));
    }

    let by_name: BTreeMap<&str, &CorpusText> = texts
        .iter()
        .map(|t| (t.path.file_name().unwrap().to_str().unwrap(), t))
        .collect();
    for (row_idx, repr) in LetterRepr::ALL.iter().enumerate() {
        // totals from real containers, independent of the report arithmetic
        let mut wins = [0usize; 8];
        let mut ties = [0usize; 8];
        let mut curve = Vec::new();
        for (i, name) in want.iter().enumerate() {
            let text = &by_name[name].text;
            let total = |c: Contender| {
                let cfg = ContainerConfig::new(
                    c.alphabet(&opts.syllabifier),
                    *repr,
                    CodebookFormat::Blocks,
                )
                .unwrap();
                let cont = compress_normalized(text, &cfg).unwrap();
                cont.codebook_bits() + cont.code_only_bits()
            };
            let t: BTreeMap<Contender, u64> =
                Contender::ALL.iter().map(|&c| (c, total(c))).collect();
            let less_all =
                |x: Contender| t.iter().filter(|(&c, _)| c != x).all(|(_, &v)| t[&x] < v);
            let le_all = |x: Contender| t.iter().filter(|(&c, _)| c != x).all(|(_, &v)| t[&x] <= v);
            let pairs = [
                (Contender::Syllables, Contender::Words),
                (Contender::Letters, Contender::Words),
                (Contender::Letters2, Contender::Words),
                (Contender::Words, Contender::Letters2),
            ];
            let all = [
                Contender::Syllables,
                Contender::Words,
                Contender::Letters2,
                Contender::Letters,
            ];
            for (k, &x) in all.iter().enumerate() {
                if less_all(x) {
                    wins[k] += 1;
                } else if le_all(x) {
                    ties[k] += 1;
                }
            }
            for (k, (x, y)) in pairs.iter().enumerate() {
                if t[x] < t[y] {
                    wins[4 + k] += 1;
                } else if t[x] == t[y] {
                    ties[4 + k] += 1;
                }
            }
            curve.push(wins.map(|w| w as f64 / (i + 1) as f64).to_vec());
        }
        let row = &study.win_rows[row_idx];
        let expect: Vec<f64> = wins.iter().map(|&w| w as f64 / 5.0).collect();
        let expect_ties: Vec<f64> = ties.iter().map(|&w| w as f64 / 5.0).collect();
        if row.fractions != expect || row.tie_fractions != expect_ties || row.books != 5 {
            problems.push(format!(
                "{}: fractions {:?} != {:?}",
                row.representation, row.fractions, expect
            ));
        }
        let emitted: Vec<Vec<f64>> = study.curves[row_idx]
            .1
            .iter()
            .map(|(_, f)| f.clone())
            .collect();
        if emitted != curve {
            problems.push(format!("{}: rank curve differs", row.representation));
        }
        let labels: Vec<String> = Comparison::COLUMNS.iter().map(|c| c.label()).collect();
        if labels
            != [
                "s<all",
                "w<all",
                "lett2<all",
                "lett<all",
                "s<w",
                "lett<w",
                "lett2<w",
                "w<lett2",
            ]
        {
            problems.push("column order".into());
        }
    }

    // the books dump reproduces the table
    let mut dump = Vec::new();
    harness::write_books_csv(&mut dump, &study).unwrap();
    let dump = String::from_utf8(dump).unwrap();
    let mut totals: BTreeMap<(String, String), BTreeMap<String, u64>> = BTreeMap::new();
    for line in dump.lines().skip(2) {
        let f: Vec<&str> = line.split(',').collect();
        totals
            .entry((f[3].to_string(), f[0].to_string()))
            .or_default()
            .insert(f[2].to_string(), f[12].parse().unwrap());
    }
    for row in &study.win_rows {
        let repr = row.representation.split('/').next().unwrap();
        let books: Vec<harness::BookTotals> = totals
            .iter()
            .filter(|((r, _), _)| r == repr)
            .map(|(_, m)| harness::BookTotals {
                syllables: m["syllables"],
                words: m["words"],
                letters: m["letters"],
                letters2: m["ngram2"],
            })
            .collect();
        if harness::win_fractions(&row.representation, &books) != *row {
            problems.push(format!(
                "{}: dump does not reproduce the table",
                row.representation
            ));
        }
    }

    let deterministic = study.win_rows == again.win_rows
        && study
            .books
            .iter()
            .map(|b| &b.id)
            .eq(again.books.iter().map(|b| &b.id));
    if !deterministic {
        problems.push("repeated run differs".into());
    }
    let headline: Vec<String> = study
        .win_rows
        .iter()
        .map(|r| {
            format!(
                "{} s<w={:.3} w<all={:.3}",
                r.representation, r.fractions[4], r.fractions[1]
            )
        })
        .collect();
    verdict(
        problems.is_empty(),
        format!(
            "5 texts, 3 representations checked against container totals, dump and rank curves ({}){}",
            headline.join(", "),
            if problems.is_empty() { String::new() } else { format!("; problems: {}", problems.join("; ")) }
        ),
    )
}

fn main() {
    let books: Vec<(String, NormalizedText)> = common::books()
        .into_iter()
        .map(|(id, raw)| (id, normalize(&raw).unwrap()))
        .collect();
    let criteria: Vec<Criterion> = vec![
        (
            "gamma codec, exhaustive to length 16",
            Box::new(gamma_exhaustive),
        ),
        (
            "huffman optimality, M<=6, counts<=8",
            Box::new(huffman_optimality),
        ),
        (
            "entropy sandwich, 200 texts x 5 alphabets",
            Box::new(entropy_sandwich),
        ),
        ("bit-exact round trip", Box::new(|| roundtrips(&books))),
        (
            "letter cost constant and prefix-free letter table",
            Box::new(letter_constant),
        ),
        ("zipf estimate ratio", Box::new(zipf)),
        (
            "concatenation entropy inequality",
            Box::new(concat_inequality),
        ),
        ("codebook economy", Box::new(|| codebook_economy(&books))),
        (
            "directional claims on real books",
            Box::new(|| book_directions(&books)),
        ),
        ("corpus harness on a 5-text oracle", Box::new(small_corpus)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} [{:.1?}] {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            name,
            start.elapsed(),
            v.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
