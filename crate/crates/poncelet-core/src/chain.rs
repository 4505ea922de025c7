//! Chain bookkeeping shared by all closing processes.

/// Ordered record of a chain construction: the produced elements, whether the
/// chain returned to its start, the smallest detected exact order, and the
/// closure residual (distance between first and claimed returning element).
#[derive(Debug, Clone)]
pub struct ChainReport<T> {
    pub elements: Vec<T>,
    pub closed: bool,
    pub order: Option<u32>,
    pub residual: f64,
    /// Steps where the branch rule degenerated (tangency breakdown).
    pub flagged_steps: Vec<u32>,
}

impl<T> ChainReport<T> {
    pub fn open(elements: Vec<T>, residual: f64) -> Self {
        Self {
            elements,
            closed: false,
            order: None,
            residual,
            flagged_steps: Vec::new(),
        }
    }

    pub fn closed(elements: Vec<T>, order: u32, residual: f64) -> Self {
        Self {
            elements,
            closed: true,
            order: Some(order),
            residual,
            flagged_steps: Vec::new(),
        }
    }
}
