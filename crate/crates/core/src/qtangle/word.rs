//! Text form of q-tangle words.
//!
//! A word is a list of slices read bottom to top, separated by `;` or
//! newlines. Each slice is `generator@position` with a 1-based position.
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Direction pattern of a cup or cap, read left to right. The unprimed
/// generators are `DownUp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    DownUp,
    UpDown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Identity,
    Cross(Sign),
    Cup(Turn),
    Cap(Turn),
    Assoc(Sign),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = |t: &Turn| if *t == Turn::UpDown { "'" } else { "" };
        match self {
            Generator::Identity => write!(f, "i"),
            Generator::Cross(s) => write!(f, "x{}", s.symbol()),
            Generator::Cup(t) => write!(f, "cup{}", prime(t)),
            Generator::Cap(t) => write!(f, "cap{}", prime(t)),
            Generator::Assoc(s) => write!(f, "assoc{}", s.symbol()),
        }
    }
}

impl std::str::FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "i" | "id" => Generator::Identity,
            "x+" => Generator::Cross(Sign::Plus),
            "x-" => Generator::Cross(Sign::Minus),
            "cup" => Generator::Cup(Turn::DownUp),
            "cup'" => Generator::Cup(Turn::UpDown),
            "cap" => Generator::Cap(Turn::DownUp),
            "cap'" => Generator::Cap(Turn::UpDown),
            "assoc+" => Generator::Assoc(Sign::Plus),
            "assoc-" => Generator::Assoc(Sign::Minus),
            other => return Err(format!("unknown generator `{other}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slice {
    pub generator: Generator,
    /// 1-based.
    pub position: usize,
}

impl Slice {
    pub fn new(generator: Generator, position: usize) -> Self {
        Self { generator, position }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.generator, self.position)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QTangleWord {
    pub slices: Vec<Slice>,
}

impl QTangleWord {
    pub fn new(slices: Vec<Slice>) -> Self {
        Self { slices }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut slices = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let code = line.split('#').next().unwrap_or("");
            let mut col = 0;
            for piece in code.split(';') {
                let lead = piece.len() - piece.trim_start().len();
                let tok = piece.trim();
                let column = col + lead + 1;
                col += piece.len() + 1;
                if tok.is_empty() {
                    continue;
                }
                let err = |message: String| Error::Parse { line: ln + 1, column, message };
                let (g, p) = tok
                    .split_once('@')
                    .ok_or_else(|| err(format!("expected `generator@position`, found `{tok}`")))?;
                let generator: Generator = g.trim().parse().map_err(err)?;
                let position: usize = p
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad position `{}`", p.trim())))?;
                if position == 0 {
                    return Err(err("positions start at 1".into()));
                }
                slices.push(Slice { generator, position });
            }
        }
        Ok(Self { slices })
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn has_associators(&self) -> bool {
        self.slices.iter().any(|s| matches!(s.generator, Generator::Assoc(_)))
    }
}

impl fmt::Display for QTangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slices.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for QTangleWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
