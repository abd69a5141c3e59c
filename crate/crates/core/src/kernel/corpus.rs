//! Bundled proof scripts.

use super::script::{parse_script, ProofScript};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn script(&self) -> ProofScript {
        parse_script(self.text).expect("bundled proof parses")
    }
}

pub const GOLDEN: CorpusEntry = CorpusEntry {
    name: "blackswan-thm-73",
    text: include_str!("../../corpus/blackswan-thm-73.proof"),
};

pub const MURPHY_IMPLIES_AX2: CorpusEntry = CorpusEntry {
    name: "murphy-implies-ax2",
    text: include_str!("../../corpus/murphy-implies-ax2.proof"),
};

pub fn list_corpus() -> &'static [CorpusEntry] {
    &[GOLDEN, MURPHY_IMPLIES_AX2]
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    list_corpus().iter().copied().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_proof, Theory};

    #[test]
    fn every_entry_is_accepted() {
        for entry in list_corpus() {
            let script = entry.script();
            let theory = Theory::builtin(&script.theory).unwrap();
            let report = check_proof(&script, &theory).unwrap();
            assert!(
                report.accepted(),
                "{}: {:?}",
                entry.name,
                report.first_failure()
            );
        }
    }

    #[test]
    fn golden_has_73_lines() {
        assert_eq!(GOLDEN.script().lines.len(), 73);
        assert!(corpus_entry("nope").is_none());
    }
}
