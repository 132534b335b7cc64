//! Expansion cache: one JSON object per line, append-only.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cfrac::{expand, CfExpansion};
use crate::error::{Error, Result};
use crate::surd::{canonicalize_big, QuadraticIrrational};

pub const SCHEMA_VERSION: u32 = 1;

/// Anything that can remember expansions between runs.
pub trait ExpansionStore {
    fn lookup(&mut self, key: &QuadraticIrrational) -> Option<CfExpansion>;
    fn record(&mut self, key: &QuadraticIrrational, exp: &CfExpansion);
}

/// A store that never remembers anything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoCache;

impl ExpansionStore for NoCache {
    fn lookup(&mut self, _: &QuadraticIrrational) -> Option<CfExpansion> {
        None
    }
    fn record(&mut self, _: &QuadraticIrrational, _: &CfExpansion) {}
}

/// Expansion of `theta`, read from `store` when present and recorded otherwise.
pub fn expand_through(theta: &QuadraticIrrational, store: &mut dyn ExpansionStore) -> CfExpansion {
    if let Some(e) = store.lookup(theta) {
        return e;
    }
    let e = expand(theta);
    store.record(theta, &e);
    e
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema_version: u32,
    #[serde(with = "bigint_seq")]
    pub key: Vec<BigInt>,
    #[serde(with = "bigint_seq")]
    pub preperiod: Vec<BigInt>,
    #[serde(with = "bigint_seq")]
    pub period: Vec<BigInt>,
}

impl CacheRecord {
    pub fn new(key: &QuadraticIrrational, exp: &CfExpansion) -> Self {
        CacheRecord {
            schema_version: SCHEMA_VERSION,
            key: key.key().to_vec(),
            preperiod: exp.preperiod().to_vec(),
            period: exp.period().to_vec(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("cache records always serialize")
    }

    pub fn from_line(line: &str) -> Result<Self> {
        let rec: CacheRecord = serde_json::from_str(line)?;
        if rec.key.len() != 4 {
            return Err(Error::InvalidConfig(
                "cache key must have four entries".into(),
            ));
        }
        let [a, b, c, d] = [0, 1, 2, 3].map(|i| rec.key[i].clone());
        let canon = canonicalize_big(a, b, c, d)?;
        if canon.key().as_slice() != rec.key.as_slice() {
            return Err(Error::InvalidConfig(format!(
                "cache key {:?} is not canonical",
                rec.key.iter().map(|k| k.to_string()).collect::<Vec<_>>()
            )));
        }
        if rec.period.is_empty() {
            return Err(Error::InvalidConfig(
                "cache record with empty period".into(),
            ));
        }
        Ok(rec)
    }
}

/// JSONL-backed cache. Reads the whole file on open; new records are held
/// until [`ExpansionCache::flush`] appends them.
#[derive(Debug, Default)]
pub struct ExpansionCache {
    path: Option<PathBuf>,
    map: HashMap<Vec<BigInt>, (Vec<BigInt>, Vec<BigInt>)>,
    pending: Vec<CacheRecord>,
    hits: usize,
    misses: usize,
}

impl ExpansionCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (or prepares to create) the cache at `path`. Records with an
    /// unknown schema version are ignored.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = ExpansionCache {
            path: Some(path.clone()),
            ..Default::default()
        };
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let at = |e: &dyn std::fmt::Display| {
                Error::InvalidConfig(format!("{}:{}: {e}", path.display(), i + 1))
            };
            let probe: serde_json::Value = serde_json::from_str(&line).map_err(|e| at(&e))?;
            if probe.get("schema_version").and_then(|v| v.as_u64())
                != Some(u64::from(SCHEMA_VERSION))
            {
                continue;
            }
            let rec = CacheRecord::from_line(&line).map_err(|e| at(&e))?;
            cache.map.insert(rec.key, (rec.preperiod, rec.period));
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn misses(&self) -> usize {
        self.misses
    }

    /// Appends pending records to the backing file.
    pub fn flush(&mut self) -> Result<()> {
        let Some(path) = &self.path else {
            self.pending.clear();
            return Ok(());
        };
        if self.pending.is_empty() {
            return Ok(());
        }
        let mut out = String::new();
        for rec in self.pending.drain(..) {
            out.push_str(&rec.to_line());
            out.push('\n');
        }
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        f.write_all(out.as_bytes())?;
        Ok(())
    }
}

impl ExpansionStore for ExpansionCache {
    fn lookup(&mut self, key: &QuadraticIrrational) -> Option<CfExpansion> {
        match self.map.get(key.key().as_slice()) {
            Some((pre, per)) => {
                self.hits += 1;
                Some(CfExpansion::from_entries(pre.clone(), per.clone()))
            }
            None => {
                self.misses += 1;
                None
            }
        }
    }

    fn record(&mut self, key: &QuadraticIrrational, exp: &CfExpansion) {
        let k = key.key().to_vec();
        if self.map.contains_key(&k) {
            return;
        }
        self.map
            .insert(k, (exp.preperiod().to_vec(), exp.period().to_vec()));
        self.pending.push(CacheRecord::new(key, exp));
    }
}

pub mod bigint_json {
    //! Big integers as plain JSON numbers of any length.

    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}

pub mod bigint_seq {
    //! Lists of big integers as JSON arrays of plain numbers.

    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            let n =
                serde_json::Number::from_str(&x.to_string()).map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<serde_json::Number>::deserialize(d)?;
        v.iter()
            .map(|n| BigInt::from_str(&n.to_string()).map_err(D::Error::custom))
            .collect()
    }
}

/// Numbers as JSON values, for hand-built output documents.
pub fn json_int(v: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        v.to_string()
            .parse()
            .expect("integers are valid JSON numbers"),
    )
}

pub fn json_ints<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> serde_json::Value {
    serde_json::Value::Array(v.into_iter().map(json_int).collect())
}
