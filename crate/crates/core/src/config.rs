use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::DEFAULT_DEGREE_LIMIT;

/// Size limits for every exhaustive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest `n` for which group elements are enumerated.
    pub enumeration_cap: usize,
    /// Largest `n` for which normalizers are found by scanning the group.
    pub scan_cap: usize,
    /// Largest group order for which overgroup lattices are saturated.
    pub lattice_cap: u128,
    /// Largest `n` for which connectivity of the generating graph is searched.
    pub connectivity_cap: usize,
    /// Largest `n` for which an Euler circuit is constructed.
    pub circuit_cap: usize,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    /// Largest accepted degree.
    pub degree_limit: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration_cap: 9,
            scan_cap: 8,
            lattice_cap: 10_000,
            connectivity_cap: 7,
            circuit_cap: 5,
            threads: 0,
            degree_limit: DEFAULT_DEGREE_LIMIT,
        }
    }
}

impl Caps {
    pub fn from_toml_str(text: &str) -> Result<Caps> {
        let caps: Caps =
            toml::from_str(text).map_err(|e| Error::input(format!("caps config: {e}")))?;
        caps.validate()?;
        Ok(caps)
    }

    pub fn from_file(path: &Path) -> Result<Caps> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Rejects caps that the in-memory representations cannot honour.
    pub fn validate(&self) -> Result<()> {
        // bitsets over Sym_n are indexed by rank
        if self.enumeration_cap > 11 {
            return Err(Error::input("enumeration_cap above 11 is unsupported"));
        }
        if self.scan_cap > self.enumeration_cap {
            return Err(Error::input("scan_cap may not exceed enumeration_cap"));
        }
        if self.connectivity_cap > self.enumeration_cap || self.circuit_cap > self.enumeration_cap {
            return Err(Error::input(
                "connectivity_cap and circuit_cap may not exceed enumeration_cap",
            ));
        }
        if self.lattice_cap > 1_000_000 {
            return Err(Error::input("lattice_cap above 10^6 is unsupported"));
        }
        if self.degree_limit < 3 || self.degree_limit > crate::perm::MAX_DEGREE {
            return Err(Error::input(format!(
                "degree_limit must be in 3..={}",
                crate::perm::MAX_DEGREE
            )));
        }
        Ok(())
    }
}
