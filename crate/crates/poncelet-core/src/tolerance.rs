//! The tolerance policy every numeric decision in the crate goes through.

/// Numeric policy: relative tolerance for projective equality, a looser
/// closure tolerance for chain returns, the largest order searched for, and
/// the sample budget of the pencil scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceContext {
    pub rel_tol: f64,
    pub closure_tol: f64,
    pub max_order: u32,
    pub scan_samples: usize,
}

impl Default for ToleranceContext {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            closure_tol: 1e-8,
            max_order: 24,
            scan_samples: 2048,
        }
    }
}

impl ToleranceContext {
    /// Enforces the type invariants: everything positive, closure at least
    /// as loose as the relative tolerance.
    pub fn validated(self) -> Option<Self> {
        let ok = self.rel_tol > 0.0
            && self.closure_tol >= self.rel_tol
            && self.max_order >= 1
            && self.scan_samples >= 1;
        ok.then_some(self)
    }
}
