use crate::error::{Error, Result};
use crate::scalar::Real;

/// Black-hole entropy of a region and the induced bound on the dimension
/// of its Hilbert-space factor, `dim ≤ exp(exp(S))`, kept in log-log form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BekensteinBound<T: Real> {
    /// `S_BH = π r² / G` (nats, ħ = c = 1).
    pub entropy: T,
    /// `ln ln dim_max`, which equals `S_BH`.
    pub loglog_dim_bound: T,
}

/// Entropy bound for a sphere of radius `radius` with Newton constant `newton_g`.
pub fn bekenstein_bound<T: Real>(radius: T, newton_g: T) -> Result<BekensteinBound<T>> {
    if !(newton_g > T::zero()) || !newton_g.is_finite() {
        return Err(Error::InvalidParameter("Newton constant must be positive".into()));
    }
    if !(radius >= T::zero()) || !radius.is_finite() {
        return Err(Error::InvalidParameter("radius must be non-negative".into()));
    }
    Ok(BekensteinBound::from_entropy(T::pi() * radius * radius / newton_g))
}

impl<T: Real> BekensteinBound<T> {
    pub fn from_entropy(entropy: T) -> Self {
        Self { entropy, loglog_dim_bound: entropy }
    }

    /// `ln dim_max = e^S`, or `None` when it does not fit in `T`.
    pub fn log_dim_bound(&self) -> Option<T> {
        let v = self.loglog_dim_bound.exp();
        v.is_finite().then_some(v)
    }

    /// Decimal order of magnitude of `S`, `⌊log₁₀ S⌋`; `None` for `S = 0`.
    pub fn decimal_order(&self) -> Option<i64> {
        (self.entropy > T::zero()).then(|| self.entropy.as_f64().log10().floor() as i64)
    }

    /// Compact order-of-magnitude rendering `e^{e^{N}}`, where `N` is the
    /// decimal order of `S`; this is the shorthand used in cosmological
    /// estimates (`S ≈ 10^123` is written `e^{e^{123}}`). Entropies below
    /// 10 are printed exactly instead.
    pub fn presentation(&self) -> String {
        match self.decimal_order() {
            Some(n) if n >= 1 => format!("e^{{e^{{{n}}}}}"),
            _ => format!("e^{{e^{{{}}}}}", self.entropy.as_f64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_radius() {
        let b = bekenstein_bound(0.0f64, 1.0).unwrap();
        assert_eq!(b.entropy, 0.0);
        // dim ≤ e^{e^0} = e
        assert_eq!(b.log_dim_bound(), Some(1.0));
        assert_eq!(b.presentation(), "e^{e^{0}}");
    }

    #[test]
    fn unit_radius() {
        let b = bekenstein_bound(1.0f64, 1.0).unwrap();
        assert_eq!(b.entropy, std::f64::consts::PI);
    }

    #[test]
    fn nonpositive_g_rejected() {
        assert!(bekenstein_bound(1.0f64, 0.0).is_err());
        assert!(bekenstein_bound(1.0f64, -2.0).is_err());
    }

    #[test]
    fn cosmological_scale_is_not_exponentiated() {
        let b = BekensteinBound::from_entropy(1e123f64);
        assert_eq!(b.loglog_dim_bound, 1e123);
        assert_eq!(b.log_dim_bound(), None);
        assert_eq!(b.presentation(), "e^{e^{123}}");
    }
}
