#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ONSETS: [&str; 16] = [
    "", "b", "c", "d", "f", "g", "h", "l", "m", "n", "p", "r", "s", "t", "st", "th",
];
const VOWELS: [&str; 7] = ["a", "e", "i", "o", "u", "ea", "ou"];
const CODAS: [&str; 8] = ["", "", "n", "r", "s", "t", "ll", "nd"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word(rng: &mut ChaCha8Rng) -> String {
    let syllables = rng.gen_range(1..=4);
    let mut w = String::new();
    for _ in 0..syllables {
        w.push_str(ONSETS.choose(rng).unwrap());
        w.push_str(VOWELS.choose(rng).unwrap());
        w.push_str(CODAS.choose(rng).unwrap());
    }
    w
}

/// A text of `words` words drawn with Zipf-like weights from a random
/// vocabulary, with occasional punctuation and capitals.
pub fn random_text(seed: u64, words: usize) -> String {
    let mut rng = rng(seed);
    let vocab_size = rng.gen_range(5..400);
    let vocab: Vec<String> = (0..vocab_size).map(|_| random_word(&mut rng)).collect();
    let weights: Vec<f64> = (1..=vocab_size).map(|r| 1.0 / r as f64).collect();
    let dist = WeightedIndex::new(&weights).unwrap();
    let mut out = String::new();
    for i in 0..words {
        let w = &vocab[dist.sample(&mut rng)];
        if i % 11 == 0 {
            let mut c = w.chars();
            let first = c.next().unwrap().to_ascii_uppercase();
            out.push(first);
            out.extend(c);
        } else {
            out.push_str(w);
        }
        out.push_str(match rng.gen_range(0..20) {
            0 => ", ",
            1 => ". ",
            2 => "\n",
            _ => " ",
        });
    }
    out
}

pub fn books_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/books")
}

pub fn books() -> Vec<(String, String)> {
    let mut paths: Vec<_> = fs::read_dir(books_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let bytes = fs::read(&p).unwrap();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                String::from_utf8_lossy(&bytes).into_owned(),
            )
        })
        .collect()
}
