use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::max_ell`].
pub const MAX_ELL_ENV: &str = "TAMARIPOP_MAX_ELL";

/// Size guards for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest path length ℓ (number of steps of ν) that may be enumerated.
    pub max_ell: usize,
    /// Largest n for sweeps over S_n or Av_n(312).
    pub max_perm_n: usize,
    /// Skip all bound checks.
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ell: 26,
            max_perm_n: 9,
            force: false,
        }
    }
}

impl Limits {
    /// Defaults, with `max_ell` taken from `TAMARIPOP_MAX_ELL` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_ELL_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            limits.max_ell = v;
        }
        limits
    }

    pub fn forced(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn check_ell(&self, ell: usize) -> Result<()> {
        if !self.force && ell > self.max_ell {
            return Err(Error::BoundExceeded {
                what: "path length",
                value: ell,
                limit: self.max_ell,
            });
        }
        Ok(())
    }

    pub fn check_perm_n(&self, n: usize) -> Result<()> {
        if !self.force && n > self.max_perm_n {
            return Err(Error::BoundExceeded {
                what: "permutation size",
                value: n,
                limit: self.max_perm_n,
            });
        }
        Ok(())
    }
}
