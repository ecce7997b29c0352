use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("bit stream truncated: needed {needed} more bit(s) at offset {offset}")]
    Truncated { offset: usize, needed: usize },

    #[error("malformed gamma codeword at offset {0}: length field is zero")]
    MalformedGamma(usize),

    #[error("gamma code of an empty bit string is undefined")]
    EmptyGammaPayload,

    #[error("gamma code of zero is undefined")]
    GammaZero,

    #[error("empty text: input contains no letters")]
    EmptyText,

    #[error("empty token stream")]
    EmptyStream,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("symbol {0:?} is not in the codebook")]
    UnknownSymbol(String),

    #[error("character {ch:?} in symbol {symbol:?} has no letter code")]
    UnmappedLetter { ch: char, symbol: String },

    #[error("corrupt data: {0}")]
    Corrupt(String),

    #[error("codebook integrity check failed: {0}")]
    Integrity(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hyphenation pattern file, line {line}: {msg}")]
    PatternLoad { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
