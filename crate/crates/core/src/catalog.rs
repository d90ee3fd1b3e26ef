//! Bundled diagrams, plus a builder for closures of marked braids.
//!
//! Surface-links are named `I_k^{g_1,...,g_c}`: ch-index `I`, a serial
//! number `k`, and the signed genus of each component (negative for
//! non-orientable components, counting cross-caps). A trailing `*` marks
//! a mirror image.

use std::path::Path;

use thiserror::Error;

use crate::diagram::{parse_chd, ChDiagram, DiagramError, EdgeLabel, Node};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error("catalog entry {name:?}: {source}")]
    Invalid { name: String, source: DiagramError },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub file: &'static str,
    pub chd: &'static str,
    pub ch_index: usize,
    /// `None` for classical links (no marked vertices).
    pub euler_characteristic: Option<i64>,
    /// Signed genus of each surface component, sorted.
    pub signed_genera: Vec<i64>,
    /// Move budget at which the admissibility check settles (yes for
    /// surface-links, no for the classical entries).
    pub budget: usize,
    pub provenance: &'static str,
}

macro_rules! chd {
    ($f:literal) => {
        ($f, include_str!(concat!("../catalog/", $f)))
    };
}

pub fn entries() -> Vec<CatalogEntry> {
    let e = |name, (file, chd): (&'static str, &'static str), ch_index, chi, genera: &[i64], budget, provenance| {
        CatalogEntry { name, file, chd, ch_index, euler_characteristic: chi, signed_genera: genera.to_vec(), budget, provenance }
    };
    vec![
        e("0_1", chd!("0_1.chd"), 0, Some(2), &[0], 1, "trivial 2-knot: one circle"),
        e(
            "2_1^{-1}",
            chd!("2_1_m1.chd"),
            2,
            Some(1),
            &[-1],
            10,
            "unknotted projective plane: a kinked circle with its crossing replaced by a marker",
        ),
        e("2_1^{-1}*", chd!("2_1_m1_mirror.chd"), 2, Some(1), &[-1], 10, "mirror image of 2_1^{-1}"),
        e(
            "8_1^{-1,-1}",
            chd!("8_1_m1m1.chd"),
            8,
            Some(2),
            &[-1, -1],
            50,
            "reconstructed; see docs/transcriptions.md",
        ),
        e(
            "10_1^{-1,-1}",
            chd!("10_1_m1m1.chd"),
            10,
            Some(2),
            &[-1, -1],
            5_000,
            "reconstructed; see docs/transcriptions.md",
        ),
        e("trefoil", chd!("trefoil.chd"), 3, None, &[], 1, "classical trefoil"),
        e("hopf", chd!("hopf.chd"), 2, None, &[], 1, "classical Hopf link"),
    ]
}

pub fn entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    entries().into_iter().find(|e| e.name == name).ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

/// Parsed bundled diagram, named after its entry.
pub fn load(name: &str) -> Result<ChDiagram, CatalogError> {
    let e = entry(name)?;
    parse_chd(e.chd)
        .map(|d| d.with_name(e.name))
        .map_err(|source| CatalogError::Invalid { name: name.to_string(), source })
}

/// Loads `name` from `dir`, trying the bundled file name first and then
/// `<name>.chd`.
pub fn load_from_dir(dir: &Path, name: &str) -> Result<ChDiagram, CatalogError> {
    let mut candidates = Vec::new();
    if let Ok(e) = entry(name) {
        candidates.push(dir.join(e.file));
    }
    candidates.push(dir.join(format!("{name}.chd")));
    for path in candidates {
        if path.is_file() {
            let text = std::fs::read_to_string(&path)
                .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
            return parse_chd(&text)
                .map(|d| if d.name().is_some() { d } else { d.with_name(name) })
                .map_err(|source| CatalogError::Invalid { name: name.to_string(), source });
        }
    }
    Err(CatalogError::Unknown(name.to_string()))
}

/// A letter of a marked braid word on strands `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidLetter {
    /// `σ_i` (`true`) or its inverse.
    Sigma(usize, bool),
    /// Marked vertex between strands `i`, `i+1`; the marker joins the two
    /// incoming ends (and the two outgoing ends).
    Saddle(usize),
    /// Marked vertex whose marker joins the two right-hand ends (and the
    /// two left-hand ends).
    SideSaddle(usize),
}

impl BraidLetter {
    fn index(self) -> usize {
        match self {
            BraidLetter::Sigma(i, _) | BraidLetter::Saddle(i) | BraidLetter::SideSaddle(i) => i,
        }
    }

    /// Parses `s2` (σ₂), `S2` (σ₂⁻¹), `v2` or `h2`.
    pub fn parse(token: &str) -> Option<Self> {
        let mut chars = token.chars();
        let head = chars.next()?;
        let i: usize = chars.as_str().parse().ok().filter(|&i| i >= 1)?;
        match head {
            's' => Some(BraidLetter::Sigma(i, true)),
            'S' => Some(BraidLetter::Sigma(i, false)),
            'v' => Some(BraidLetter::Saddle(i)),
            'h' => Some(BraidLetter::SideSaddle(i)),
            _ => None,
        }
    }
}

/// Closure of a marked braid on `strands` strands. Strands that no letter
/// touches close up to circles.
pub fn braid_closure(strands: usize, word: &[BraidLetter]) -> Result<ChDiagram, DiagramError> {
    let mut next: EdgeLabel = 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let initial: Vec<EdgeLabel> = (0..strands).map(|_| fresh()).collect();
    let mut cur = initial.clone();
    let mut nodes = Vec::new();
    for &letter in word {
        let i = letter.index();
        if i == 0 || i >= strands {
            return Err(DiagramError::BadBraid(format!("braid letter index {i} on {strands} strands")));
        }
        let (a, b) = (cur[i - 1], cur[i]);
        let (oa, ob) = (fresh(), fresh());
        nodes.push(match letter {
            BraidLetter::Sigma(_, true) => Node::crossing([a, b, ob, oa]),
            BraidLetter::Sigma(_, false) => Node::crossing([b, ob, oa, a]),
            BraidLetter::Saddle(_) => Node::vertex([a, b, ob, oa]),
            BraidLetter::SideSaddle(_) => Node::vertex([b, ob, oa, a]),
        });
        cur[i - 1] = oa;
        cur[i] = ob;
    }
    let mut circles = 0;
    for (&first, &last) in initial.iter().zip(&cur) {
        if first == last {
            circles += 1;
            continue;
        }
        for n in nodes.iter_mut() {
            for s in n.slots.iter_mut() {
                if *s == last {
                    *s = first;
                }
            }
        }
    }
    ChDiagram::new(nodes, circles)
}

/// Closure of a word given as space-separated tokens (see
/// [`BraidLetter::parse`]).
pub fn braid_closure_str(strands: usize, word: &str) -> Result<ChDiagram, DiagramError> {
    let letters = word
        .split_whitespace()
        .map(|t| BraidLetter::parse(t).ok_or_else(|| DiagramError::BadBraid(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    braid_closure(strands, &letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{count_components, euler_characteristic, surface_components, LinkDiagram};

    #[test]
    fn every_entry_parses_with_expected_index() {
        for e in entries() {
            let d = load(e.name).unwrap();
            assert_eq!(d.ch_index(), e.ch_index, "{}", e.name);
            assert_eq!(d.name(), Some(e.name));
            if let Some(chi) = e.euler_characteristic {
                assert_eq!(euler_characteristic(&d), chi, "{}", e.name);
                let mut g: Vec<i64> = surface_components(&d).iter().map(|s| s.signed_genus()).collect();
                g.sort_unstable();
                assert_eq!(g, e.signed_genera, "{}", e.name);
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(load("3_1"), Err(CatalogError::Unknown(_))));
    }

    #[test]
    fn circle_entry() {
        assert_eq!(load("0_1").unwrap().circles(), 1);
    }

    #[test]
    fn trefoil_closure() {
        let d = braid_closure_str(2, "s1 s1 s1").unwrap();
        let l = LinkDiagram::from_ch(d).unwrap();
        assert_eq!(l.crossing_count(), 3);
        assert_eq!(count_components(&l), 1);
    }

    #[test]
    fn untouched_strands_are_circles() {
        let d = braid_closure_str(3, "s1").unwrap();
        assert_eq!((d.crossing_count(), d.circles()), (1, 1));
    }

    #[test]
    fn bad_letters_rejected() {
        assert!(braid_closure_str(2, "s2").is_err());
        assert!(braid_closure_str(2, "x1").is_err());
        assert!(BraidLetter::parse("s0").is_none());
    }
}
