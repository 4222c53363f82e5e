//! Named strategy registries: variants behind a common trait, looked up by
//! id at run time. Used for family constructions, the bound catalog and
//! search instances.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingSpec};

/// Something that can be registered under a stable id.
pub trait Named {
    fn id(&self) -> &'static str;

    /// One-line description for listings.
    fn summary(&self) -> &'static str;
}

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    /// Adds `entry`; ids must be unique.
    pub fn register(&mut self, entry: Box<T>) -> Result<()> {
        if self.entries.iter().any(|e| e.id() == entry.id()) {
            return Err(Error::InvalidParameters(format!("duplicate {} id `{}`", self.kind, entry.id())));
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.id() == id)
            .map(|e| e.as_ref())
            .ok_or_else(|| Error::Unknown { kind: self.kind, name: id.to_string() })
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.id()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| e.as_ref())
    }
}

/// Parameter bag shared by registry entries: named non-negative integers,
/// an optional ring and boolean flags. Parsed from `key=value,...`, where a
/// bare key is a flag and `ring=` takes a ring spec, e.g.
/// `ring=gr:p=2,r=1;n=4;k=2` (use `;` when the ring spec contains commas).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    ring: Option<RingSpec>,
    values: BTreeMap<String, u64>,
    flags: Vec<String>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: u64) -> Self {
        self.set(key, value);
        self
    }

    pub fn with_ring(mut self, spec: RingSpec) -> Self {
        self.ring = Some(spec);
        self
    }

    pub fn with_flag(mut self, flag: &str) -> Self {
        self.set_flag(flag);
        self
    }

    pub fn set(&mut self, key: &str, value: u64) {
        self.values.insert(key.to_string(), value);
    }

    pub fn set_ring(&mut self, spec: RingSpec) {
        self.ring = Some(spec);
    }

    pub fn set_flag(&mut self, flag: &str) {
        if !self.flag(flag) {
            self.flags.push(flag.to_string());
        }
    }

    pub fn get(&self, key: &str) -> Result<u64> {
        self.values
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidParameters(format!("missing parameter `{key}`")))
    }

    pub fn get_or(&self, key: &str, default: u64) -> u64 {
        self.values.get(key).copied().unwrap_or(default)
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        self.get(key).map(|v| v as usize)
    }

    pub fn flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn ring_spec(&self) -> Result<&RingSpec> {
        self.ring.as_ref().ok_or_else(|| Error::InvalidParameters("missing parameter `ring`".into()))
    }

    pub fn ring(&self) -> Result<Ring> {
        Ring::new(self.ring_spec()?)
    }

    pub fn values(&self) -> &BTreeMap<String, u64> {
        &self.values
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(r) = &self.ring {
            parts.push(format!("ring={r}"));
        }
        parts.extend(self.values.iter().map(|(k, v)| format!("{k}={v}")));
        parts.extend(self.flags.iter().cloned());
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Params::new();
        let sep = if s.contains(';') { ';' } else { ',' };
        for item in s.split(sep).map(str::trim).filter(|x| !x.is_empty()) {
            match item.split_once('=') {
                Some(("ring", spec)) => p.ring = Some(spec.parse()?),
                Some((k, v)) => {
                    let v = v.trim().parse().map_err(|_| Error::Parse(format!("parameter `{item}`")))?;
                    p.set(k.trim(), v);
                }
                None => p.set_flag(item),
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct A;
    impl Named for A {
        fn id(&self) -> &'static str {
            "a"
        }
        fn summary(&self) -> &'static str {
            "first"
        }
    }

    #[test]
    fn lookup_and_duplicates() {
        let mut r: Registry<dyn Named> = Registry::new("thing");
        r.register(Box::new(A)).unwrap();
        assert!(r.register(Box::new(A)).is_err());
        assert_eq!(r.get("a").unwrap().summary(), "first");
        assert_eq!(r.get("b").err(), Some(Error::Unknown { kind: "thing", name: "b".into() }));
        assert_eq!(r.ids(), vec!["a"]);
    }

    #[test]
    fn params_round_trip() {
        let p: Params = "ring=gr:p=2,r=1;n=4;k=2;non-star".parse().unwrap();
        assert_eq!(p.get("n").unwrap(), 4);
        assert!(p.flag("non-star"));
        assert_eq!(p.ring_spec().unwrap().to_string(), "gr:p=2,r=1");
        assert_eq!(p.to_string().parse::<Params>().unwrap(), p);
        let q: Params = "n=6,k=3".parse().unwrap();
        assert_eq!(q.get_or("t", 1), 1);
        assert!(q.get("t").is_err());
    }
}
