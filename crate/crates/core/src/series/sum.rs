use std::ops::AddAssign;

/// Kahan–Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs: f64,
    terms: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
        self.terms += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Bound on the rounding error of the summation itself.
    pub fn error_bound(&self) -> f64 {
        let u = f64::EPSILON / 2.0;
        2.0 * u * self.value().abs() + (self.terms as f64) * u * u * self.abs * 2.0
    }

    /// Folds another accumulator in; the result depends on call order only.
    pub fn merge(&mut self, other: &CompensatedSum) {
        let terms = self.terms + other.terms;
        let abs = self.abs + other.abs;
        self.add(other.sum);
        self.add(other.comp);
        self.terms = terms;
        self.abs = abs;
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}
