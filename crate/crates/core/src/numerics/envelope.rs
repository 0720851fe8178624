//! Finite-extent decay certificates.
//!
//! A bound `|G(z)| <= C e^{-q(z)}` cannot be proved from samples. The proxy
//! used throughout: the weighted magnitude `|G| e^{q}` on the outer half of the
//! resolved region must not exceed `(1 + delta)` times its sup on the inner
//! half. The resolved region is where the magnitude clears the noise floor.

/// Samples below this fraction of the largest magnitude are treated as
/// round-off and ignored.
pub const NOISE_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Plateau {
    pub inner_sup: f64,
    pub outer_sup: f64,
    pub plateau: bool,
}

impl Plateau {
    pub fn ratio(&self) -> f64 {
        if self.inner_sup > 0.0 {
            self.outer_sup / self.inner_sup
        } else if self.outer_sup > 0.0 {
            f64::INFINITY
        } else {
            1.0
        }
    }
}

/// One sample: distance from the origin, exponent `q(z)` of the weight and
/// the magnitude `|G(z)|`.
#[derive(Clone, Copy, Debug)]
pub struct EnvelopeSample {
    pub radius: f64,
    pub exponent: f64,
    pub magnitude: f64,
}

pub fn envelope_plateau(samples: &[EnvelopeSample], delta: f64) -> Plateau {
    envelope_plateau_with_floor(samples, delta, NOISE_FLOOR)
}

/// As [`envelope_plateau`], with a caller-chosen relative noise floor.
pub fn envelope_plateau_with_floor(samples: &[EnvelopeSample], delta: f64, floor: f64) -> Plateau {
    let peak = samples.iter().map(|s| s.magnitude).fold(0.0, f64::max);
    let resolved = |s: &&EnvelopeSample| s.magnitude > floor * peak;
    let r_max = samples.iter().filter(resolved).map(|s| s.radius).fold(0.0, f64::max);
    let mut inner: f64 = 0.0;
    let mut outer: f64 = 0.0;
    for s in samples.iter().filter(resolved) {
        let w = (s.magnitude.ln() + s.exponent).exp();
        if s.radius <= 0.5 * r_max {
            inner = inner.max(w);
        } else {
            outer = outer.max(w);
        }
    }
    let nan = !(inner.is_finite() && outer.is_finite());
    Plateau { inner_sup: inner, outer_sup: outer, plateau: !nan && outer <= (1.0 + delta) * inner }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(rate: f64, decay: f64) -> Vec<EnvelopeSample> {
        (0..=200)
            .map(|i| {
                let r = i as f64 * 0.1;
                EnvelopeSample { radius: r, exponent: rate * r, magnitude: (-decay * r).exp() }
            })
            .collect()
    }

    #[test]
    fn slower_weight_plateaus() {
        assert!(envelope_plateau(&line(0.5, 1.0), 0.05).plateau);
    }

    #[test]
    fn faster_weight_does_not() {
        let p = envelope_plateau(&line(1.5, 1.0), 0.05);
        assert!(!p.plateau && p.ratio() > 1.0);
    }

    #[test]
    fn noise_is_ignored() {
        let mut s = line(0.5, 3.0);
        s.push(EnvelopeSample { radius: 20.0, exponent: 10.0, magnitude: 1e-30 });
        assert!(envelope_plateau(&s, 0.05).plateau);
    }
}
