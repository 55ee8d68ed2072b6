use std::env;

use crate::error::{Error, Result};

/// Environment variable overriding the default enumeration cap.
pub const ENUM_CAP_ENV: &str = "DNACODE_ENUM_CAP";

/// Upper limit on the number of items an exhaustive enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EnumerationCap(pub u64);

impl EnumerationCap {
    pub const DEFAULT: EnumerationCap = EnumerationCap(1 << 26);

    pub fn new(cap: u64) -> Result<Self> {
        if cap == 0 {
            return Err(Error::invalid("enumeration cap must be positive"));
        }
        Ok(Self(cap))
    }

    /// The cap from `DNACODE_ENUM_CAP`, or the default when unset.
    pub fn from_env() -> Result<Self> {
        match env::var(ENUM_CAP_ENV) {
            Ok(v) => {
                let cap = v.trim().parse::<u64>().map_err(|_| {
                    Error::invalid(format!("{ENUM_CAP_ENV} must be a positive integer, got {v:?}"))
                })?;
                Self::new(cap)
            }
            Err(_) => Ok(Self::DEFAULT),
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Refuses unless `q^exp` items fit under the cap.
    pub fn check_power(self, what: &str, q: u8, exp: usize) -> Result<u64> {
        let required = (q as u64).checked_pow(exp as u32);
        match required {
            Some(r) if r <= self.0 => Ok(r),
            _ => Err(Error::CapExceeded {
                what: what.to_string(),
                required: format!("{q}^{exp}"),
                cap: self.0,
            }),
        }
    }
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_checks() {
        let cap = EnumerationCap::new(256).unwrap();
        assert_eq!(cap.check_power("pairs", 2, 8).unwrap(), 256);
        assert!(matches!(
            cap.check_power("pairs", 2, 9),
            Err(Error::CapExceeded { cap: 256, .. })
        ));
        assert!(cap.check_power("pairs", 8, 40).is_err());
        assert!(EnumerationCap::new(0).is_err());
    }
}
