use alloc::string::String;
use alloc::vec::Vec;

use crate::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The hypothesis of the statement is not satisfied by the instance.
    Vacuous,
    /// A search exhausted its node budget before deciding.
    Unknown {
        budget: u64,
    },
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

/// Evidence attached to a report. Indices refer to the instance poset (or
/// the family named in the variant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    None,
    /// A map given by its images, indexed by source element.
    Map {
        image: Vec<usize>,
    },
    /// A homomorphism out of the subsemilattice `subset`, indexed by the
    /// members of `subset` in ascending order.
    SubsetMap {
        subset: ElemSet,
        image: Vec<usize>,
    },
    /// A strictly isotone map into the principal up-set of `x`, images in
    /// the instance poset.
    UpsetMap {
        x: usize,
        image: Vec<usize>,
    },
    /// A downset of `instance` that is not an ideal.
    NonIdeal {
        instance: String,
        set: ElemSet,
    },
    /// Index of a member of the class `X` that is not upward directed.
    NotDirected {
        member: usize,
    },
    /// Two members of a family whose meet or join leaves the family.
    Pair {
        instance: String,
        a: ElemSet,
        b: ElemSet,
    },
    /// Indices of a pair of members of `X` with no cofinal map.
    NoCofinalMap {
        first: usize,
        second: usize,
    },
    /// A rendered sequence of values.
    Trace(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witness: Witness,
    pub note: String,
}

impl CheckReport {
    pub fn new(check: &str, instance: &str, verdict: Verdict) -> Self {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            verdict,
            witness: Witness::None,
            note: String::new(),
        }
    }

    /// A failing report. Panics if `witness` is [`Witness::None`]: a failure
    /// must be replayable.
    pub fn fails(check: &str, instance: &str, witness: Witness) -> Self {
        assert!(witness != Witness::None, "a failing report needs a witness");
        CheckReport {
            witness,
            ..CheckReport::new(check, instance, Verdict::Fails)
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn is_ok(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::Vacuous)
    }
}
