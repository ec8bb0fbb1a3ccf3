//! Limits that keep exhaustive searches at desk scale.

use crate::error::{Error, Result};

/// Name of the environment variable read by [`AuditCaps::from_env`].
pub const AUDIT_CAP_VAR: &str = "ZONOFORGE_AUDIT_CAP";

/// Caps on exhaustive audits. These are separate from the representational
/// ground-set limit ([`crate::MAX_GROUND`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditCaps {
    /// Largest `n` for maximal-collection census and purity audits.
    pub census_ground: usize,
    /// Largest `n` for extension searches.
    pub search_ground: usize,
    /// Largest number of cube types `C(n,d)` for cubillage enumeration.
    pub enumerate_types: u64,
    /// Largest predicted cubillage count for enumeration.
    pub enumerate_count: u128,
}

impl Default for AuditCaps {
    fn default() -> Self {
        AuditCaps {
            census_ground: 7,
            search_ground: 8,
            enumerate_types: 20,
            enumerate_count: 1_000_000,
        }
    }
}

impl AuditCaps {
    /// Caps with no practical limit. Useful in tests that know what they ask for.
    pub fn unlimited() -> Self {
        AuditCaps {
            census_ground: crate::MAX_GROUND,
            search_ground: crate::MAX_GROUND,
            enumerate_types: u64::MAX,
            enumerate_count: u128::MAX,
        }
    }

    /// Defaults overridden by `ZONOFORGE_AUDIT_CAP`, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(AUDIT_CAP_VAR) {
            Ok(spec) => Self::default().overridden(&spec),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Applies an override string. A bare integer raises both ground caps;
    /// otherwise a comma-separated list of `census=`, `search=`, `types=` and
    /// `count=` assignments.
    pub fn overridden(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Ok(n) = spec.parse::<usize>() {
            self.census_ground = n;
            self.search_ground = n;
            return Ok(self);
        }
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad audit cap entry `{part}`")))?;
            let bad = || Error::Parse(format!("bad audit cap value `{value}`"));
            match key.trim() {
                "census" => self.census_ground = value.trim().parse().map_err(|_| bad())?,
                "search" => self.search_ground = value.trim().parse().map_err(|_| bad())?,
                "types" => self.enumerate_types = value.trim().parse().map_err(|_| bad())?,
                "count" => self.enumerate_count = value.trim().parse().map_err(|_| bad())?,
                other => return Err(Error::Parse(format!("unknown audit cap key `{other}`"))),
            }
        }
        Ok(self)
    }

    pub(crate) fn check_census(&self, n: usize) -> Result<()> {
        if n > self.census_ground {
            return Err(Error::AuditTooLarge {
                what: format!("census at n={n}"),
                detail: format!("census cap is n <= {}", self.census_ground),
            });
        }
        Ok(())
    }

    pub(crate) fn check_search(&self, n: usize) -> Result<()> {
        if n > self.search_ground {
            return Err(Error::AuditTooLarge {
                what: format!("extension search at n={n}"),
                detail: format!("search cap is n <= {}", self.search_ground),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_forms() {
        let c = AuditCaps::default().overridden("9").unwrap();
        assert_eq!((c.census_ground, c.search_ground), (9, 9));
        let c = AuditCaps::default()
            .overridden("types=35, count=5000000")
            .unwrap();
        assert_eq!(c.enumerate_types, 35);
        assert_eq!(c.enumerate_count, 5_000_000);
        assert_eq!(c.census_ground, 7);
        assert!(AuditCaps::default().overridden("bogus=1").is_err());
        assert!(AuditCaps::default().overridden("census").is_err());
    }
}
