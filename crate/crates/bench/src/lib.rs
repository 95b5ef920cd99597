//! Shared workloads for the `engine` benchmarks.

use kzlab::qtangle::{corpus, LinkPresentation};

/// Corpus words worth timing, paired with the truncation to integrate at.
pub fn corpus_workloads() -> Vec<(LinkPresentation, usize)> {
    ["u0", "u1", "hopf+", "trefoil", "chain2", "chain3"]
        .iter()
        .map(|name| {
            let link = corpus::load(name).expect("embedded corpus word");
            let n = if link.word().has_associators() { 3 } else { 4 };
            (link, n)
        })
        .collect()
}
