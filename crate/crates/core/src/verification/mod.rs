//! Corpus generation and the exhaustive checkers.
//!
//! Each checker turns one finite instance of a statement about ideal
//! completions into a [`CheckReport`]. Verdicts distinguish a statement that
//! holds, one that fails (always with a replayable witness), one whose
//! hypothesis is never met on the instance, and a search that ran out of
//! budget.

mod checks;
mod constructions;
mod corpus;
mod report;

pub use checks::{
    check_acc, check_down_vs_ideals_of_fdown, check_no_hom_onto_ideals, check_no_map_onto_downsets,
    check_no_strict_map_from_chain_ideals, check_strict_map_into_upset, check_xdown_closure,
    XDownOutcome, ONTO_DOWNSETS_EXHAUSTIVE_MAX_N,
};
pub use constructions::{
    atoms_non_ideal_preimage, build_atoms_lattice, build_chain_bundle, build_idemb_tower,
    check_atoms_lattice, check_idemb_tower, replay_atoms_kurepa, xdown_preset, AtomsLattice,
    AtomsReplay,
};
pub use corpus::{Corpus, DEFAULT_CORPUS_CEILING};
pub use report::{CheckReport, Verdict, Witness};
