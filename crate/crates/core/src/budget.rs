/// Work limits for the oracle computations. Every limit can be raised from the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest allowed `Σ m_ij` for a Gröbner-based grid ideal.
    pub grid_degree: u32,
    /// Largest condition matrix (rows and columns) for rank computations.
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    /// Largest number of variables in an elimination.
    pub groebner_vars: usize,
    /// Largest generator degree fed to an elimination.
    pub groebner_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            grid_degree: 24,
            matrix_rows: 2000,
            matrix_cols: 2000,
            groebner_vars: 9,
            groebner_degree: 12,
        }
    }
}

impl Budget {
    pub fn with_grid_degree(mut self, d: u32) -> Self {
        self.grid_degree = d;
        self
    }
}
