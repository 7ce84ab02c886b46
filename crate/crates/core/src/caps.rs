use serde::Serialize;

/// Which exact linear-feasibility engine the sign-pattern search uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpEngine {
    /// Fourier–Motzkin up to [`FM_CUTOVER`] unknowns, simplex beyond.
    #[default]
    Auto,
    FourierMotzkin,
    Simplex,
}

pub const FM_CUTOVER: usize = 12;

/// Search limits shared by every bounded procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest product degree tried by witness searches.
    pub max_witness_degree: usize,
    /// Bound on integer multiplier coefficients.
    pub max_coeff: u64,
    /// Branch-and-bound node budget per integer search.
    pub max_nodes: usize,
    /// Largest coefficient tried in the bounded factor search.
    pub factor_coeff_cap: u64,
    /// Candidate budget for the bounded factor search.
    pub factor_candidates: usize,
    pub engine: LpEngine,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_witness_degree: 24,
            max_coeff: 1_000_000,
            max_nodes: 100_000,
            factor_coeff_cap: 32,
            factor_candidates: 2_000_000,
            engine: LpEngine::Auto,
        }
    }
}

impl Caps {
    pub fn with_max_witness_degree(mut self, d: usize) -> Self {
        self.max_witness_degree = d;
        self
    }

    pub fn with_engine(mut self, engine: LpEngine) -> Self {
        self.engine = engine;
        self
    }
}
