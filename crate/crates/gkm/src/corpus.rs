//! Embedded example spaces with their expected dimension data: the
//! Hamiltonian two-sphere at ranks 1 and 2, a circle action on CP^2, a
//! 2-torus action on CP^3, and the reduced SU(3) coadjoint orbit.

use crate::model::GkmSpace;

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub document: &'static str,
    /// Expected dim of the degree-2k equivariant piece, k = 0..=5.
    pub expected_hilbert: &'static [usize],
    /// Expected ordinary Betti vector.
    pub expected_betti: &'static [i64],
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "s2_s1",
        document: include_str!("../corpus/s2_s1.json"),
        expected_hilbert: &[1, 2, 2, 2, 2, 2],
        expected_betti: &[1, 1],
    },
    CorpusEntry {
        name: "s2_t2",
        document: include_str!("../corpus/s2_t2.json"),
        expected_hilbert: &[1, 3, 5, 7, 9, 11],
        expected_betti: &[1, 1],
    },
    CorpusEntry {
        name: "cp2_s1",
        document: include_str!("../corpus/cp2_s1.json"),
        expected_hilbert: &[1, 2, 3, 3, 3, 3],
        expected_betti: &[1, 1, 1],
    },
    CorpusEntry {
        name: "cp3_t2",
        document: include_str!("../corpus/cp3_t2.json"),
        expected_hilbert: &[1, 3, 6, 10, 14, 18],
        expected_betti: &[1, 1, 1, 1],
    },
    CorpusEntry {
        name: "su3_reduced",
        document: include_str!("../corpus/su3_reduced.json"),
        expected_hilbert: &[1, 3, 4, 4, 4, 4],
        expected_betti: &[1, 2, 1],
    },
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// Parses the named corpus document; panics on unknown names (the
/// corpus is compiled in and covered by tests).
pub fn space(name: &str) -> GkmSpace {
    let entry = get(name).unwrap_or_else(|| panic!("unknown corpus entry `{}`", name));
    GkmSpace::parse(entry.document).expect("corpus documents parse")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_parse_and_validate() {
        for entry in ENTRIES {
            let space = space(entry.name);
            let report = space.validate();
            assert!(report.is_valid(), "{} failed validation", entry.name);
            assert_eq!(report.warnings().count(), 0, "{} has warnings", entry.name);
        }
    }

    #[test]
    fn round_trip_every_entry() {
        for entry in ENTRIES {
            let s = space(entry.name);
            assert_eq!(GkmSpace::parse(&s.serialize()).unwrap(), s, "{}", entry.name);
        }
    }
}
