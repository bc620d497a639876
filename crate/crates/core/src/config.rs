/// Environment variable that overrides [`Limits::max_prime`].
pub const MAX_PRIME_ENV: &str = "PADIC_TRUNK_MAX_PRIME";

pub const DEFAULT_MAX_PRIME: u64 = 1_000_000;
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Resource bounds shared by the trunk builder and the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest prime accepted for the exhaustive root scan over `[0, p)`.
    pub max_prime: u64,
    /// Largest number of residues any explicit listing may produce.
    pub enumeration_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_prime: DEFAULT_MAX_PRIME,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

impl Limits {
    /// Defaults, with `max_prime` taken from `PADIC_TRUNK_MAX_PRIME` when set.
    pub fn from_env() -> Result<Self, String> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MAX_PRIME_ENV) {
            limits.max_prime = raw
                .trim()
                .parse()
                .map_err(|_| format!("{MAX_PRIME_ENV} must be a positive integer, got {raw:?}"))?;
        }
        Ok(limits)
    }

    pub fn with_max_prime(mut self, max_prime: u64) -> Self {
        self.max_prime = max_prime;
        self
    }

    pub fn with_enumeration_budget(mut self, budget: u64) -> Self {
        self.enumeration_budget = budget;
        self
    }
}
