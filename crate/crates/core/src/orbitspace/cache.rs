use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::error::Result;
use crate::poly::PoincarePoly;

/// Memo of computed polynomials keyed by canonical descriptor string plus
/// engine and cutoff. Concurrent readers, serialized writers.
#[derive(Debug, Default)]
pub struct PoincareCache {
    entries: RwLock<HashMap<String, PoincarePoly>>,
}

impl PoincareCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn key(descriptor: &str, engine: &str, cutoff: Option<u32>) -> String {
        match cutoff {
            Some(c) => format!("{descriptor}|{engine}|{c}"),
            None => format!("{descriptor}|{engine}|exact"),
        }
    }

    pub fn get(&self, key: &str) -> Option<PoincarePoly> {
        self.entries.read().unwrap().get(key).cloned()
    }

    pub fn insert(&self, key: String, value: PoincarePoly) {
        self.entries.write().unwrap().insert(key, value);
    }

    /// Looks `key` up, computing and storing it on a miss. Two threads may
    /// compute the same entry; both results are identical.
    pub fn get_or_compute(
        &self,
        key: String,
        compute: impl FnOnce() -> Result<PoincarePoly>,
    ) -> Result<PoincarePoly> {
        if let Some(hit) = self.get(&key) {
            return Ok(hit);
        }
        let value = compute()?;
        self.insert(key, value.clone());
        Ok(value)
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted copy of all entries.
    pub fn snapshot(&self) -> BTreeMap<String, PoincarePoly> {
        self.entries
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}
