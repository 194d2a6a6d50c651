//! The transfinite recursion `x_a = f(P↓{x_b | b < a})`, run on a finite
//! poset until it breaks.
//!
//! For a strictly isotone `f` from chain-generated ideals into `P`, every
//! step would produce an element strictly above all earlier ones, which a
//! finite poset cannot sustain. The trace records where an assignment stops
//! behaving like such a map.

use alloc::vec::Vec;

use crate::{ElemSet, Error, Poset, Result};

/// Value produced by the assignment at one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assigned {
    Element(usize),
    /// The value lies outside the poset (for example a downset that is not
    /// an ideal, when the poset is an ideal family).
    NotAnElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KurepaStep {
    /// `P↓{x_b | b < step}`.
    pub ideal: ElemSet,
    pub value: Assigned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KurepaFailure {
    /// The produced value (or the downset of the chain so far) is not a
    /// chain-generated ideal.
    NotAnIdealOfChains { step: usize },
    /// The produced element is not strictly above every earlier one.
    NotStrictlyAbove { step: usize },
    /// More strictly increasing values than the poset has elements.
    ChainExceedsPoset,
}

impl KurepaFailure {
    pub fn step(self) -> Option<usize> {
        match self {
            KurepaFailure::NotAnIdealOfChains { step }
            | KurepaFailure::NotStrictlyAbove { step } => Some(step),
            KurepaFailure::ChainExceedsPoset => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KurepaFailure::NotAnIdealOfChains { .. } => "NotAnIdealOfChains",
            KurepaFailure::NotStrictlyAbove { .. } => "NotStrictlyAbove",
            KurepaFailure::ChainExceedsPoset => "ChainExceedsPoset",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KurepaTrace {
    pub steps: Vec<KurepaStep>,
    pub failure: KurepaFailure,
}

/// Runs the recursion with steps numbered from 0. `assign` receives the
/// chain-generated ideal reached so far and returns `None` where it is
/// undefined, which is reported as [`Error::AssignUndefined`].
pub fn kurepa_chain<F>(p: &Poset, mut assign: F) -> Result<KurepaTrace>
where
    F: FnMut(ElemSet) -> Option<Assigned>,
{
    let mut chain = ElemSet::EMPTY;
    let mut steps = Vec::new();
    for step in 0.. {
        if chain.len() > p.len() {
            return Ok(KurepaTrace {
                steps,
                failure: KurepaFailure::ChainExceedsPoset,
            });
        }
        let ideal = p.down_closure(chain);
        if !p.is_chain(chain) || !p.is_directed(ideal) {
            return Ok(KurepaTrace {
                steps,
                failure: KurepaFailure::NotAnIdealOfChains { step },
            });
        }
        let value = assign(ideal).ok_or(Error::AssignUndefined {
            step,
            ideal: ideal.bits(),
        })?;
        steps.push(KurepaStep { ideal, value });
        match value {
            Assigned::NotAnElement => {
                return Ok(KurepaTrace {
                    steps,
                    failure: KurepaFailure::NotAnIdealOfChains { step },
                })
            }
            Assigned::Element(x) => {
                p.check_index(x)?;
                if !chain.is_subset(p.strict_down(x)) {
                    return Ok(KurepaTrace {
                        steps,
                        failure: KurepaFailure::NotStrictlyAbove { step },
                    });
                }
                chain.insert(x);
            }
        }
    }
    unreachable!("the step counter is unbounded")
}
