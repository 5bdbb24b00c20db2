use crate::error::{Error, Result};

/// Physical and numerical constants of one linearized time step.
///
/// `c` is the frozen concentration used by the analysis and by error-equation
/// runs; full time stepping freezes the previous field pointwise instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub epsilon: f64,
    pub delta_t: f64,
    pub c: f64,
    pub theta: f64,
}

impl Params {
    pub fn new(epsilon: f64, delta_t: f64, c: f64, theta: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidParams(format!("epsilon must be > 0, got {epsilon}")));
        }
        if !(delta_t > 0.0 && delta_t.is_finite()) {
            return Err(Error::InvalidParams(format!("delta_t must be > 0, got {delta_t}")));
        }
        if !c.is_finite() {
            return Err(Error::InvalidParams(format!("c must be finite, got {c}")));
        }
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidParams(format!("theta must lie in (0, 1), got {theta}")));
        }
        Ok(Self { epsilon, delta_t, c, theta })
    }

    pub fn with_theta(self, theta: f64) -> Result<Self> {
        Self::new(self.epsilon, self.delta_t, self.c, theta)
    }

    pub fn with_c(self, c: f64) -> Result<Self> {
        Self::new(self.epsilon, self.delta_t, c, self.theta)
    }

    /// `c⁴δt² − 4ε²δt`; positive exactly when the characteristic roots are real.
    pub fn discriminant(&self) -> f64 {
        let c2 = self.c * self.c;
        c2 * c2 * self.delta_t * self.delta_t
            - 4.0 * self.epsilon * self.epsilon * self.delta_t
    }

    /// Critical step `4ε²/c⁴` separating the real and complex symbol regimes.
    pub fn critical_step(&self) -> f64 {
        let c2 = self.c * self.c;
        4.0 * self.epsilon * self.epsilon / (c2 * c2)
    }

    pub fn is_real_symbol(&self) -> bool {
        self.discriminant() > 0.0
    }
}
