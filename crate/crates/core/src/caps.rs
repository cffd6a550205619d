//! Enumeration limits shared by every module.
//!
//! Exceeding a limit is always reported as an error; nothing falls back to
//! sampling or guessing. The defaults can be overridden through the
//! `MIPKIT_CAPS` environment variable, e.g.
//! `MIPKIT_CAPS="enumerate=65536,orbit=1000000"`.

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "MIPKIT_CAPS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order that may be enumerated element by element
    /// (conjugacy classes, centralizers, agemos, subgroup searches).
    pub enumerate: u64,
    /// Largest group order accepted by the isomorphism test.
    pub isomorphism: u64,
    /// Largest number of algebra elements enumerated by the counting maps.
    pub counting: u64,
    /// Per-level state budget of the canonical form search.
    pub orbit: u64,
    /// Largest algebra dimension accepted by the brute-force isomorphism oracle.
    pub oracle_dim: usize,
    /// Largest number of elementary abelian subgroups tracked by the Quillen
    /// invariant.
    pub subgroups: usize,
    /// Node budget of the normal-copy search in the small group ring.
    pub search: u64,
    /// Largest group order whose group algebra is built densely.
    pub ring: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumerate: 1 << 14,
            isomorphism: 1 << 10,
            counting: 1 << 24,
            orbit: 10_000_000,
            oracle_dim: 6,
            subgroups: 100_000,
            search: 1_000_000,
            ring: 1024,
        }
    }
}

impl Caps {
    /// Defaults with `MIPKIT_CAPS` applied on top.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Applies a comma-separated `key=value` override list.
    pub fn with_overrides(mut self, spec: &str) -> Result<Caps> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got `{item}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad number in `{item}`")))?;
            match key.trim() {
                "enumerate" => self.enumerate = value,
                "isomorphism" | "iso" => self.isomorphism = value,
                "counting" => self.counting = value,
                "orbit" => self.orbit = value,
                "oracle_dim" | "oracle" => self.oracle_dim = value as usize,
                "subgroups" => self.subgroups = value as usize,
                "search" => self.search = value,
                "ring" => self.ring = value,
                other => return Err(Error::Config(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }

    pub(crate) fn check(&self, what: &'static str, size: u128, cap: u64) -> Result<()> {
        if size > cap as u128 {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }
}
