//! Surface specs, the piece catalogue and the Cantor chunk registry.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("stale chunk {0}")]
    StaleChunk(ChunkKey),
    #[error("malformed spec json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusMode {
    Zero,
    Finite(u32),
    Infinite,
}

impl Serialize for GenusMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GenusMode::Zero => s.serialize_str("zero"),
            GenusMode::Infinite => s.serialize_str("infinite"),
            GenusMode::Finite(g) => s.serialize_u32(*g),
        }
    }
}

impl<'de> Deserialize<'de> for GenusMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) if s == "zero" => Ok(GenusMode::Zero),
            serde_json::Value::String(s) if s == "infinite" => Ok(GenusMode::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .and_then(|g| u32::try_from(g).ok())
                .map(GenusMode::Finite)
                .ok_or_else(|| serde::de::Error::custom("genus must be a non-negative integer")),
            _ => Err(serde::de::Error::custom("genus must be \"zero\", \"infinite\" or an integer")),
        }
    }
}

/// End class identifier: `f<i>` for discrete classes, `c<j>` for Cantor classes (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndClass {
    Discrete(u32),
    Cantor(u32),
}

impl fmt::Display for EndClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndClass::Discrete(i) => write!(f, "f{i}"),
            EndClass::Cantor(j) => write!(f, "c{j}"),
        }
    }
}

impl std::str::FromStr for EndClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_at(s.len().min(1));
        let idx: u32 = rest.parse().map_err(|_| format!("bad end class id {s:?}"))?;
        match kind {
            "f" => Ok(EndClass::Discrete(idx)),
            "c" => Ok(EndClass::Cantor(idx)),
            _ => Err(format!("bad end class id {s:?}")),
        }
    }
}

impl Serialize for EndClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EndClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub n_discrete: u32,
    pub n_cantor: u32,
    pub genus: GenusMode,
    #[serde(default)]
    pub accumulated: BTreeSet<EndClass>,
}

impl SurfaceSpec {
    pub fn new(n_discrete: u32, n_cantor: u32, genus: GenusMode) -> Self {
        SurfaceSpec { n_discrete, n_cantor, genus, accumulated: BTreeSet::new() }
    }

    pub fn flute() -> Self {
        SurfaceSpec::new(1, 0, GenusMode::Zero)
    }

    pub fn with_accumulated(mut self, c: EndClass) -> Self {
        self.accumulated.insert(c);
        self
    }

    pub fn from_json(s: &str) -> Result<Self, SurfaceError> {
        serde_json::from_str(s).map_err(|e| SurfaceError::Json(e.to_string()))
    }
}

/// A spec that passed [`validate_spec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SurfaceSpec")]
pub struct ValidatedSpec(SurfaceSpec);

impl TryFrom<SurfaceSpec> for ValidatedSpec {
    type Error = SurfaceError;
    fn try_from(s: SurfaceSpec) -> Result<Self, SurfaceError> {
        validate_spec(s)
    }
}

impl ValidatedSpec {
    pub fn spec(&self) -> &SurfaceSpec {
        &self.0
    }
    pub fn n(&self) -> u32 {
        self.0.n_discrete
    }
    pub fn m(&self) -> u32 {
        self.0.n_cantor
    }
    pub fn genus(&self) -> GenusMode {
        self.0.genus
    }
    /// Handles per copy of `S` when the genus is finite, otherwise 0.
    pub fn genus_per_copy(&self) -> i64 {
        match self.0.genus {
            GenusMode::Finite(g) => g as i64,
            _ => 0,
        }
    }
    pub fn is_flute(&self) -> bool {
        self.0.n_discrete == 1 && self.0.n_cantor == 0 && self.0.genus == GenusMode::Zero
    }
}

pub fn validate_spec(spec: SurfaceSpec) -> Result<ValidatedSpec, SurfaceError> {
    let invalid = |r: &str| Err(SurfaceError::InvalidSpec(r.to_string()));
    if spec.n_discrete + spec.n_cantor == 0 {
        return invalid("at least one maximal end class is required (N + M >= 1)");
    }
    if spec.genus == GenusMode::Finite(0) {
        return invalid("finite genus must be at least 1; use \"zero\"");
    }
    if spec.n_discrete == 0 && !matches!(spec.genus, GenusMode::Finite(_)) {
        return invalid("bounded graph: N = 0 needs finite positive genus, otherwise the curve graph is bounded");
    }
    for c in &spec.accumulated {
        let ok = match *c {
            EndClass::Discrete(i) => (1..=spec.n_discrete).contains(&i),
            EndClass::Cantor(j) => (1..=spec.n_cantor).contains(&j),
        };
        if !ok {
            return Err(SurfaceError::InvalidSpec(format!("unknown end class {c}")));
        }
    }
    if !spec.accumulated.is_empty() && spec.genus != GenusMode::Infinite {
        return invalid("an end accumulated by genus requires infinite genus");
    }
    Ok(ValidatedSpec(spec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenusToken {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PieceType {
    pub id: u32,
    pub has_discrete_end: bool,
    pub discrete_class: Option<u32>,
    pub genus: GenusToken,
}

pub fn piece_catalogue(spec: &ValidatedSpec) -> Vec<PieceType> {
    let s = spec.spec();
    let cantor_acc = (1..=s.n_cantor).any(|j| s.accumulated.contains(&EndClass::Cantor(j)));
    let mut out: Vec<PieceType> = (1..=s.n_discrete)
        .map(|i| PieceType {
            id: i,
            has_discrete_end: true,
            discrete_class: Some(i),
            genus: if cantor_acc || s.accumulated.contains(&EndClass::Discrete(i)) {
                GenusToken::Infinite
            } else {
                GenusToken::Zero
            },
        })
        .collect();
    if let GenusMode::Finite(_) = s.genus {
        out.push(PieceType {
            id: s.n_discrete + 1,
            has_discrete_end: false,
            discrete_class: None,
            genus: GenusToken::One,
        });
    }
    out
}

/// A node of the splitting tree of the `(class, copy)` cell. `path` is a bit string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChunkKey {
    pub class: u32,
    pub copy: i64,
    #[serde(default)]
    pub path: String,
}

impl ChunkKey {
    pub fn root(class: u32, copy: i64) -> Self {
        ChunkKey { class, copy, path: String::new() }
    }

    pub fn child(&self, bit: char) -> Self {
        let mut path = self.path.clone();
        path.push(bit);
        ChunkKey { class: self.class, copy: self.copy, path }
    }

    pub fn parent(&self) -> Option<Self> {
        if self.path.is_empty() {
            return None;
        }
        let mut path = self.path.clone();
        path.pop();
        Some(ChunkKey { class: self.class, copy: self.copy, path })
    }

    pub fn sibling(&self) -> Option<Self> {
        let last = self.path.chars().last()?;
        let p = self.parent()?;
        Some(p.child(if last == '0' { '1' } else { '0' }))
    }

    /// True when `self` is `other` or lies below it.
    pub fn is_within(&self, other: &ChunkKey) -> bool {
        self.class == other.class && self.copy == other.copy && self.path.starts_with(&other.path)
    }

    pub fn shift(&self, k: i64) -> Self {
        ChunkKey { class: self.class, copy: self.copy + k, path: self.path.clone() }
    }
}

impl fmt::Display for ChunkKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}@{}:{}", self.class, self.copy, if self.path.is_empty() { "ε" } else { &self.path })
    }
}

/// Live leaves per `(class, copy)` cell. Untouched cells hold their root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkRegistry {
    cells: BTreeMap<(u32, i64), BTreeSet<String>>,
}

impl ChunkRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn live_leaves(&self, class: u32, copy: i64) -> Vec<ChunkKey> {
        match self.cells.get(&(class, copy)) {
            None => vec![ChunkKey::root(class, copy)],
            Some(set) => set.iter().map(|p| ChunkKey { class, copy, path: p.clone() }).collect(),
        }
    }

    pub fn is_live(&self, c: &ChunkKey) -> bool {
        match self.cells.get(&(c.class, c.copy)) {
            None => c.path.is_empty(),
            Some(set) => set.contains(&c.path),
        }
    }

    /// Live leaves lying inside `c` (which need not be live itself).
    pub fn leaves_within(&self, c: &ChunkKey) -> Vec<ChunkKey> {
        self.live_leaves(c.class, c.copy).into_iter().filter(|l| l.is_within(c)).collect()
    }
}

pub fn split_chunk(reg: &mut ChunkRegistry, chunk: &ChunkKey) -> Result<(ChunkKey, ChunkKey), SurfaceError> {
    if !reg.is_live(chunk) {
        return Err(SurfaceError::StaleChunk(chunk.clone()));
    }
    let cell = reg
        .cells
        .entry((chunk.class, chunk.copy))
        .or_insert_with(|| [String::new()].into_iter().collect());
    cell.remove(&chunk.path);
    let (a, b) = (chunk.child('0'), chunk.child('1'));
    cell.insert(a.path.clone());
    cell.insert(b.path.clone());
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let f = validate_spec(SurfaceSpec::flute()).unwrap();
        let cat = piece_catalogue(&f);
        assert_eq!(cat.len(), 1);
        assert_eq!(cat[0].genus, GenusToken::Zero);

        let g = validate_spec(SurfaceSpec::new(0, 1, GenusMode::Finite(1))).unwrap();
        let cat = piece_catalogue(&g);
        assert_eq!(cat.len(), 1);
        assert_eq!((cat[0].id, cat[0].genus, cat[0].has_discrete_end), (1, GenusToken::One, false));

        let e = validate_spec(SurfaceSpec::new(0, 1, GenusMode::Infinite)).unwrap_err();
        assert!(matches!(e, SurfaceError::InvalidSpec(r) if r.contains("bounded")));

        let cat = piece_catalogue(&validate_spec(SurfaceSpec::new(2, 1, GenusMode::Finite(3))).unwrap());
        assert_eq!(cat.iter().map(|p| p.genus).collect::<Vec<_>>(), [GenusToken::Zero, GenusToken::Zero, GenusToken::One]);

        let acc = SurfaceSpec::new(1, 1, GenusMode::Infinite).with_accumulated(EndClass::Cantor(1));
        let cat = piece_catalogue(&validate_spec(acc).unwrap());
        assert_eq!(cat.len(), 1);
        assert_eq!(cat[0].genus, GenusToken::Infinite);
    }

    #[test]
    fn invalid_specs() {
        assert!(validate_spec(SurfaceSpec::new(0, 0, GenusMode::Finite(1))).is_err());
        assert!(validate_spec(SurfaceSpec::new(1, 0, GenusMode::Zero).with_accumulated(EndClass::Discrete(1))).is_err());
        assert!(validate_spec(SurfaceSpec::new(1, 0, GenusMode::Infinite).with_accumulated(EndClass::Cantor(1))).is_err());
    }

    #[test]
    fn spec_json_roundtrip() {
        let s = SurfaceSpec::from_json(r#"{"n_discrete":1,"n_cantor":1,"genus":"infinite","accumulated":["c1"]}"#).unwrap();
        assert_eq!(s.genus, GenusMode::Infinite);
        assert!(s.accumulated.contains(&EndClass::Cantor(1)));
        let back = SurfaceSpec::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(s, back);
        let f = SurfaceSpec::from_json(r#"{"n_discrete":2,"n_cantor":0,"genus":3}"#).unwrap();
        assert_eq!(f.genus, GenusMode::Finite(3));
    }

    #[test]
    fn chunk_splitting() {
        let mut reg = ChunkRegistry::new();
        let root = ChunkKey::root(1, 0);
        let (a, b) = split_chunk(&mut reg, &root).unwrap();
        assert_eq!(reg.live_leaves(1, 0), vec![a.clone(), b.clone()]);
        split_chunk(&mut reg, &a).unwrap();
        assert_eq!(reg.live_leaves(1, 0).len(), 3);
        assert_eq!(split_chunk(&mut reg, &root), Err(SurfaceError::StaleChunk(root)));
    }
}
