//! Letter-level syllabifier following the sonority sequencing principle.
//!
//! Nuclei are maximal vowel runs. Each consonant cluster between two nuclei
//! is split so the following syllable gets the longest onset that is both a
//! legal English word onset and rising in sonority (s-clusters such as
//! `st`, `spr` are admitted by legality). The digraphs `th sh ph ch wh` and
//! the doubles `ss ll` are never split. A word-final `e` after a consonant
//! is mute unless it closes a consonant + `le` ending.

/// Letter → sonority class, higher is more sonorous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SonorityScale {
    rank: [u8; 26],
}

impl SonorityScale {
    pub fn rank(&self, letter: u8) -> u8 {
        self.rank[(letter - b'a') as usize]
    }

    /// Sonority of a letter group; digraphs rank by the sound they spell.
    pub fn unit_rank(&self, unit: &[u8]) -> u8 {
        match unit {
            b"th" | b"sh" | b"ph" | b"ss" => self.rank(b's'),
            b"ch" => self.rank(b't'),
            b"wh" => self.rank(b'w'),
            b"ll" => self.rank(b'l'),
            _ => self.rank(unit[0]),
        }
    }
}

impl Default for SonorityScale {
    /// `[a] > [e o] > [i u y w] > [l r] > [m n] > [z v] > [f s h x] >
    /// [b d g j] > [p t k c q]`. Letter `y` takes the glide slot; `r`, `h`,
    /// `x`, `c`, `q` and letter `j` are placed by the sound they usually spell.
    fn default() -> Self {
        let mut rank = [0u8; 26];
        let classes: [(&[u8], u8); 9] = [
            (b"a", 9),
            (b"eo", 8),
            (b"iuyw", 7),
            (b"lr", 6),
            (b"mn", 5),
            (b"zv", 4),
            (b"fshx", 3),
            (b"bdgj", 2),
            (b"ptkcq", 1),
        ];
        for (letters, r) in classes {
            for &l in letters {
                rank[(l - b'a') as usize] = r;
            }
        }
        SonorityScale { rank }
    }
}

/// When `y` counts as a vowel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum YPolicy {
    #[default]
    WhenNoOtherVowel,
    Always,
    Never,
}

const PROTECTED: [&[u8]; 7] = [b"th", b"sh", b"ph", b"ch", b"wh", b"ss", b"ll"];

/// Multi-letter onsets that may begin an English word.
pub(crate) const LEGAL_CLUSTERS: [&str; 35] = [
    "bl", "br", "cl", "cr", "dr", "dw", "fl", "fr", "gl", "gr", "kl", "kn", "kr", "pl", "pr", "tr",
    "tw", "sl", "sm", "sn", "sw", "thr", "shr", "phr", "chr", "sc", "sk", "sp", "sq", "st", "scr",
    "spl", "spr", "str", "sch",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SspSyllabifier {
    scale: SonorityScale,
    y_policy: YPolicy,
}

impl SspSyllabifier {
    pub fn new(scale: SonorityScale, y_policy: YPolicy) -> Self {
        SspSyllabifier { scale, y_policy }
    }

    pub fn with_y_policy(y_policy: YPolicy) -> Self {
        SspSyllabifier {
            scale: SonorityScale::default(),
            y_policy,
        }
    }

    pub fn scale(&self) -> &SonorityScale {
        &self.scale
    }

    pub fn y_policy(&self) -> YPolicy {
        self.y_policy
    }

    fn vowel_mask(&self, w: &[u8]) -> Vec<bool> {
        let plain = |b: u8| matches!(b, b'a' | b'e' | b'i' | b'o' | b'u');
        let has_plain = w.iter().any(|&b| plain(b));
        let y_vowel = match self.y_policy {
            YPolicy::Always => true,
            YPolicy::Never => false,
            YPolicy::WhenNoOtherVowel => !has_plain,
        };
        w.iter()
            .map(|&b| plain(b) || (y_vowel && b == b'y'))
            .collect()
    }

    /// Splits a lowercase a–z word into syllables whose concatenation is the
    /// word. A word without any vowel is a single syllable.
    pub fn syllabify(&self, word: &str) -> Vec<String> {
        let w = word.as_bytes();
        if w.is_empty() || !w.iter().all(u8::is_ascii_lowercase) {
            return vec![word.to_string()];
        }
        let vowel = self.vowel_mask(w);

        let mut nuclei: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            if vowel[i] {
                let s = i;
                while i < w.len() && vowel[i] {
                    i += 1;
                }
                nuclei.push((s, i));
            } else {
                i += 1;
            }
        }
        if nuclei.len() >= 2 && self.final_e_is_mute(w, &vowel, *nuclei.last().unwrap()) {
            nuclei.pop();
        }
        if nuclei.len() < 2 {
            return vec![word.to_string()];
        }

        let syllabic_le = self.ends_in_syllabic_le(w, &vowel);
        let mut cuts = Vec::with_capacity(nuclei.len() - 1);
        for (k, pair) in nuclei.windows(2).enumerate() {
            let (start, end) = (pair[0].1, pair[1].0);
            if syllabic_le && k == nuclei.len() - 2 {
                // the consonant before "le" opens the last syllable
                cuts.push(w.len() - 3);
            } else {
                cuts.push(start + self.coda_len(&w[start..end]));
            }
        }

        let mut out = Vec::with_capacity(cuts.len() + 1);
        let mut prev = 0;
        for c in cuts {
            out.push(word[prev..c].to_string());
            prev = c;
        }
        out.push(word[prev..].to_string());
        out
    }

    fn final_e_is_mute(&self, w: &[u8], vowel: &[bool], last: (usize, usize)) -> bool {
        let n = w.len();
        if last != (n - 1, n) || w[n - 1] != b'e' || n < 2 || vowel[n - 2] {
            return false;
        }
        // consonant + "le" keeps its own syllable: ta-ble, lit-tle
        !self.ends_in_syllabic_le(w, vowel)
    }

    fn ends_in_syllabic_le(&self, w: &[u8], vowel: &[bool]) -> bool {
        let n = w.len();
        n >= 4 && w.ends_with(b"le") && !vowel[n - 3] && vowel[..n - 3].iter().any(|&v| v)
    }

    /// Number of letters of `cluster` that stay in the coda of the left
    /// syllable; the rest become the onset of the right one.
    fn coda_len(&self, cluster: &[u8]) -> usize {
        let units = split_units(cluster);
        let mut offset = 0;
        for unit in units {
            if self.is_legal_onset(&cluster[offset..]) {
                return offset;
            }
            offset += unit.len();
        }
        cluster.len()
    }

    fn is_legal_onset(&self, onset: &[u8]) -> bool {
        match onset.len() {
            0 => true,
            1 => true,
            2 if PROTECTED[..5].contains(&onset) => true,
            _ => LEGAL_CLUSTERS.iter().any(|c| c.as_bytes() == onset),
        }
    }
}

fn split_units(cluster: &[u8]) -> Vec<&[u8]> {
    let mut units = Vec::new();
    let mut i = 0;
    while i < cluster.len() {
        if i + 1 < cluster.len() && PROTECTED.contains(&&cluster[i..i + 2]) {
            units.push(&cluster[i..i + 2]);
            i += 2;
        } else {
            units.push(&cluster[i..i + 1]);
            i += 1;
        }
    }
    units
}
