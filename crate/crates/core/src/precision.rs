//! Precision bookkeeping shared by every truncated ring.

use serde::{Deserialize, Serialize};

/// How much of a series is known.
///
/// `n_t` counts retained t-powers (results hold mod t^n_t). `n_x` counts
/// retained x-powers for power series in x, and retained x⁻¹-powers for
/// Laurent coefficients in x⁻¹. `m_x` bounds the positive x-powers a
/// Laurent coefficient may carry before a factorization gives up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    pub n_t: usize,
    pub n_x: usize,
    pub m_x: usize,
}

impl Precision {
    pub const fn new(n_t: usize, n_x: usize, m_x: usize) -> Self {
        Precision { n_t, n_x, m_x }
    }

    /// Componentwise minimum: the precision of a result built from both inputs.
    pub fn meet(&self, other: &Precision) -> Precision {
        Precision {
            n_t: self.n_t.min(other.n_t),
            n_x: self.n_x.min(other.n_x),
            m_x: self.m_x.min(other.m_x),
        }
    }

    pub fn with_nt(&self, n_t: usize) -> Precision {
        Precision { n_t, ..*self }
    }

    pub fn with_nx(&self, n_x: usize) -> Precision {
        Precision { n_x, ..*self }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(8, 12, 8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_is_componentwise_min() {
        let a = Precision::new(4, 10, 2);
        let b = Precision::new(6, 3, 5);
        assert_eq!(a.meet(&b), Precision::new(4, 3, 2));
        assert_eq!(a.meet(&b), b.meet(&a));
    }
}
