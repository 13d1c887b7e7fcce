/// Knobs shared by every computation that is randomized or approximate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Seed for every pseudo-random choice; retries derive from it.
    pub seed: u64,
    /// Target interval width is 2^-precision_bits.
    pub precision_bits: u32,
    /// Escalation ceiling for certification loops.
    pub max_precision_bits: u32,
    /// Largest index of a sublattice Λ searched by comparisons.
    pub index_bound: u64,
    /// Sample grid radius ‖n‖∞ for identity checks.
    pub sample_bound: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            precision_bits: 100,
            max_precision_bits: 4096,
            index_bound: 10_000,
            sample_bound: 3,
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Config {
            seed,
            ..Config::default()
        }
    }
}
