//! Shipped link words, addressed by name. Setting `KZLAB_CORPUS_DIR` makes
//! lookups read `<dir>/<name>.qtw` instead of the embedded copies.

use std::path::PathBuf;

use super::link::LinkPresentation;
use crate::error::{Error, Result};

pub const CORPUS_ENV: &str = "KZLAB_CORPUS_DIR";

const EMBEDDED: [(&str, &str); 9] = [
    ("u0", include_str!("../../corpus/u0.qtw")),
    ("u1", include_str!("../../corpus/u1.qtw")),
    ("hopf+", include_str!("../../corpus/hopf+.qtw")),
    ("hopf-", include_str!("../../corpus/hopf-.qtw")),
    ("trefoil", include_str!("../../corpus/trefoil.qtw")),
    ("chain2", include_str!("../../corpus/chain2.qtw")),
    ("chain3", include_str!("../../corpus/chain3.qtw")),
    ("unlink2", include_str!("../../corpus/unlink2.qtw")),
    ("zigzag", include_str!("../../corpus/zigzag.qtw")),
];

pub fn names() -> Vec<&'static str> {
    EMBEDDED.iter().map(|(n, _)| *n).collect()
}

/// Source text of a corpus word.
pub fn source(name: &str) -> Result<String> {
    let name = name.strip_suffix(".qtw").unwrap_or(name);
    if let Some(dir) = std::env::var_os(CORPUS_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.qtw"));
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| Error::Invalid(format!("no corpus word named `{name}`")))
}

pub fn load(name: &str) -> Result<LinkPresentation> {
    let name = name.strip_suffix(".qtw").unwrap_or(name);
    LinkPresentation::parse(name, &source(name)?)
}

/// Every embedded word, ignoring the directory override.
pub fn embedded() -> Vec<LinkPresentation> {
    EMBEDDED
        .iter()
        .map(|(n, t)| LinkPresentation::parse(*n, t).expect("shipped words validate"))
        .collect()
}
