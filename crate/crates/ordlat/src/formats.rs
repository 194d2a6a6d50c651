//! JSON file formats for posets, families and check reports.

use ordlat_core::completions::FamilyPoset;
use ordlat_core::morphisms::canonical_form;
use ordlat_core::verification::{CheckReport, Verdict, Witness};
use ordlat_core::{ElemSet, Poset};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid poset: {0}")]
    Poset(#[from] ordlat_core::Error),
    #[error("{0}")]
    Invalid(String),
}

/// `{"n": int, "leq": [[i, j], ...], "labels": [...]}`. `leq` may be any
/// generating relation; the reader closes it reflexively and transitively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub leq: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl PosetJson {
    /// Writes the Hasse covers as the generating relation.
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson {
            n: p.len(),
            leq: p.hasse_covers().into_iter().map(|(i, j)| [i, j]).collect(),
            labels: p.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, FormatError> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[i, j]| (i, j)).collect();
        let p = Poset::from_generators(self.n, &pairs)?;
        Ok(match &self.labels {
            Some(l) => p.with_labels(l.clone())?,
            None => p,
        })
    }
}

pub fn read_poset(text: &str) -> Result<Poset, FormatError> {
    serde_json::from_str::<PosetJson>(text)?.to_poset()
}

pub fn poset_to_json(p: &Poset) -> String {
    serde_json::to_string(&PosetJson::from_poset(p)).expect("plain data serializes")
}

/// `{"kind": str, "base_n": int, "sets": [bitmask, ...], "leq": [[i, j], ...]}`
/// where `leq` lists the covers of the inclusion order on `sets`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub kind: String,
    pub base_n: usize,
    pub sets: Vec<u64>,
    pub leq: Vec<[usize; 2]>,
}

impl FamilyJson {
    pub fn from_family(f: &FamilyPoset) -> Self {
        FamilyJson {
            kind: f.kind().name().into(),
            base_n: f.base().len(),
            sets: f.sets().iter().map(|s| s.bits()).collect(),
            leq: f
                .order()
                .hasse_covers()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
        }
    }

    /// The inclusion order, labelled by the member bitmasks.
    pub fn order(&self) -> Result<Poset, FormatError> {
        if self
            .sets
            .iter()
            .any(|&s| self.base_n < 64 && s >> self.base_n != 0)
        {
            return Err(FormatError::Invalid(
                "set mentions an element beyond base_n".into(),
            ));
        }
        let n = self.sets.len();
        let p = Poset::from_fn(n, |i, j| {
            let (a, b) = (
                ElemSet::from_bits(self.sets[i]),
                ElemSet::from_bits(self.sets[j]),
            );
            a.is_subset(b)
        })?;
        Ok(p.with_labels(
            self.sets
                .iter()
                .map(|&s| ElemSet::from_bits(s).to_string())
                .collect(),
        )?)
    }
}

pub fn family_to_json(f: &FamilyPoset) -> String {
    serde_json::to_string(&FamilyJson::from_family(f)).expect("plain data serializes")
}

/// Hex FNV-1a digest of the canonical code: equal for isomorphic posets.
pub fn canonical_hash(p: &Poset) -> String {
    let code = canonical_form(p).code;
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for word in std::iter::once(code.len() as u64).chain(code) {
        for byte in word.to_le_bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

fn members(s: ElemSet) -> Vec<usize> {
    s.iter().collect()
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::None => Value::Null,
        Witness::Map { image } => json!({"kind": "map", "image": image}),
        Witness::SubsetMap { subset, image } => {
            json!({"kind": "subset_map", "subset": members(*subset), "image": image})
        }
        Witness::UpsetMap { x, image } => json!({"kind": "upset_map", "x": x, "image": image}),
        Witness::NonIdeal { instance, set } => {
            json!({"kind": "non_ideal", "instance": instance, "set": members(*set)})
        }
        Witness::NotDirected { member } => json!({"kind": "not_directed", "member": member}),
        Witness::Pair { instance, a, b } => {
            json!({"kind": "pair", "instance": instance, "a": members(*a), "b": members(*b)})
        }
        Witness::NoCofinalMap { first, second } => {
            json!({"kind": "no_cofinal_map", "first": first, "second": second})
        }
        Witness::Trace(values) => json!({"kind": "trace", "values": values}),
    }
}

/// One JSON object per report. `hash` is the canonical hash of the
/// instance poset when there is one.
pub fn report_to_json(r: &CheckReport, hash: Option<&str>) -> String {
    let mut v = json!({
        "check": r.check,
        "instance": r.instance,
        "verdict": r.verdict.name(),
        "witness": witness_to_json(&r.witness),
        "note": r.note,
    });
    if let Verdict::Unknown { budget } = r.verdict {
        v["budget"] = json!(budget);
    }
    if let Some(h) = hash {
        v["instance_hash"] = json!(h);
    }
    v.to_string()
}
