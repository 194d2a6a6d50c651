//! Ordinals below ε₀ in Cantor normal form, and a symbolic calculus of
//! chain cofinalities that also covers uncountable regular cardinals.
//!
//! Uncountable cofinalities (`ω₁`, `ω₂`, …) exist only as
//! [`Cofinality::Regular`] symbols; they never enter CNF arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// `ω^e₁·c₁ + … + ω^eₖ·cₖ` with `e₁ > … > eₖ` and every `cᵢ ≥ 1`; zero
/// has no terms. The derived ordering is the ordinal ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CnfOrdinal {
    terms: Vec<(CnfOrdinal, u64)>,
}

impl CnfOrdinal {
    pub fn zero() -> Self {
        CnfOrdinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            CnfOrdinal {
                terms: alloc::vec![(Self::zero(), n)],
            }
        }
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    /// `ω^e · c`.
    pub fn term(e: CnfOrdinal, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            CnfOrdinal {
                terms: alloc::vec![(e, c)],
            }
        }
    }

    pub fn omega() -> Self {
        Self::term(Self::one(), 1)
    }

    /// Builds from terms, rejecting non-descending exponents or zero
    /// coefficients.
    pub fn from_terms(terms: Vec<(CnfOrdinal, u64)>) -> Result<Self> {
        if terms.iter().any(|&(_, c)| c == 0) {
            return Err(Error::InvalidArgument("CNF coefficients must be positive"));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::InvalidArgument(
                "CNF exponents must strictly descend",
            ));
        }
        Ok(CnfOrdinal { terms })
    }

    pub fn terms(&self) -> &[(CnfOrdinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| !e.is_zero())
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    pub fn cofinality(&self) -> Cofinality {
        if self.is_zero() {
            Cofinality::Empty
        } else if self.is_successor() {
            Cofinality::HasMax
        } else {
            Cofinality::Regular(0)
        }
    }

    fn leading_exponent(&self) -> Option<&CnfOrdinal> {
        self.terms.first().map(|(e, _)| e)
    }
}

/// Ordinal sum. Terms of `a` below the leading exponent of `b` are
/// absorbed.
///
/// # Panics
/// If a coefficient overflows `u64`.
pub fn cnf_add(a: &CnfOrdinal, b: &CnfOrdinal) -> CnfOrdinal {
    let Some((e0, c0)) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<(CnfOrdinal, u64)> =
        a.terms.iter().filter(|(e, _)| e > e0).cloned().collect();
    let merged = match a.terms.iter().find(|(e, _)| e == e0) {
        Some((_, c)) => c.checked_add(*c0).expect("CNF coefficient overflow"),
        None => *c0,
    };
    terms.push((e0.clone(), merged));
    terms.extend(b.terms[1..].iter().cloned());
    CnfOrdinal { terms }
}

/// Ordinal product, distributing on the left over the terms of `b`:
/// `a·ω^e = ω^(e₁+e)` for `e > 0`, and `a·n` multiplies only the leading
/// coefficient.
///
/// # Panics
/// If a coefficient overflows `u64`.
pub fn cnf_mul(a: &CnfOrdinal, b: &CnfOrdinal) -> CnfOrdinal {
    let Some(lead) = a.leading_exponent() else {
        return CnfOrdinal::zero();
    };
    let mut out = CnfOrdinal::zero();
    for (e, c) in &b.terms {
        let piece = if e.is_zero() {
            let mut terms = a.terms.clone();
            terms[0].1 = terms[0]
                .1
                .checked_mul(*c)
                .expect("CNF coefficient overflow");
            CnfOrdinal { terms }
        } else {
            CnfOrdinal::term(cnf_add(lead, e), *c)
        };
        out = cnf_add(&out, &piece);
    }
    out
}

/// Order type of the nonempty initial segments of the chain `a`: `a` for
/// finite `a`, `a + 1` otherwise.
pub fn id_order_type(a: &CnfOrdinal) -> CnfOrdinal {
    if a.is_finite() {
        a.clone()
    } else {
        cnf_add(a, &CnfOrdinal::one())
    }
}

impl fmt::Display for CnfOrdinal {
    /// `w^2*3+w+5`; compound exponents are parenthesised, `w^(w+1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            match e.as_finite() {
                Some(1) => {}
                Some(k) => write!(f, "^{k}")?,
                None if e.terms.len() == 1 && e.terms[0].1 == 1 => write!(f, "^{e}")?,
                None => write!(f, "^({e})")?,
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

/// Cofinality class of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cofinality {
    Empty,
    HasMax,
    /// The regular cardinal `ω_i`.
    Regular(u32),
}

impl Cofinality {
    pub fn name(self) -> String {
        match self {
            Cofinality::Empty => "empty".into(),
            Cofinality::HasMax => "max".into(),
            Cofinality::Regular(0) => "w".into(),
            Cofinality::Regular(i) => format!("w{i}"),
        }
    }

    /// Inverse of [`Cofinality::name`].
    pub fn from_name(s: &str) -> Option<Cofinality> {
        match s {
            "empty" => Some(Cofinality::Empty),
            "max" => Some(Cofinality::HasMax),
            "w" => Some(Cofinality::Regular(0)),
            _ => {
                let digits = s.strip_prefix('w')?;
                if digits.starts_with('0') || digits.starts_with('+') {
                    return None;
                }
                digits.parse().ok().map(Cofinality::Regular)
            }
        }
    }
}

/// An abstract chain, known only through its cofinality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainDescriptor {
    pub cof: Cofinality,
    pub label: String,
}

impl ChainDescriptor {
    pub fn new(cof: Cofinality) -> Self {
        ChainDescriptor {
            cof,
            label: cof.name(),
        }
    }

    pub fn of_ordinal(a: &CnfOrdinal) -> Self {
        ChainDescriptor {
            cof: a.cofinality(),
            label: format!("{a}"),
        }
    }
}

/// Whether the product of the given chains has a cofinal subchain: no
/// factor may be empty, and the factors without a maximum must all share
/// one regular cofinality.
pub fn product_has_cofinal_chain(chains: &[ChainDescriptor]) -> Result<bool> {
    if chains.is_empty() {
        return Err(Error::InvalidArgument("empty list of chains"));
    }
    if chains.iter().any(|c| c.cof == Cofinality::Empty) {
        return Ok(false);
    }
    let mut regular = chains.iter().filter_map(|c| match c.cof {
        Cofinality::Regular(i) => Some(i),
        _ => None,
    });
    Ok(match regular.next() {
        None => true,
        Some(first) => regular.all(|i| i == first),
    })
}
