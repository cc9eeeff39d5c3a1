//! Model parameterization and the explicit constants of the system.
//!
//! The density/signal pair obeys
//!
//! ```text
//!   u_t = Δu - χ₀ ∇·( u^m / (1+v)^β ∇v ) + a u - b u^{1+α}
//!    0  = Δv - μ v + ν u^γ
//! ```
//!
//! with α, γ, m, μ, ν > 0, a, b, β ≥ 0 and χ₀ ∈ ℝ. This module houses the
//! closed-form constants attached to the analysis:
//!
//! * `Ψ_β = (β/(1+β))^{1+β}` and `Θ_β = β^β (1+β)^{-(1+β)}`,
//! * `M*(N,p,μ,ν) = ν^p [ 8^p/p · C*_{N,p} (2^p + μ^{-p}) + 2^{2p}/((p-1)p^p) ]`,
//! * `K(N,α,γ,μ,ν) = liminf_{q→q*+} [M*(N,(q+α)/γ,μ,ν)]^{γ/(q+α)}` with
//!   `q* = max{1, Nα/2}`,
//! * the three critical χ₀ thresholds on the slice m = 1, α = γ.
//!
//! `C*_{N,p}` is the optimal constant in
//! `∫|D²v|^p ≤ C ∫(|Δv|^p + |v|^p)` under Neumann conditions. It equals 1 in
//! one dimension and is not known in closed form otherwise, so every formula
//! is parametric in an [`EllipticConstant`] that either carries a
//! user-supplied value or an empirical lower bound estimated from random
//! trial fields.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::extreal::ExtReal;

/// Number of elements in the sequence `q_j = q*(1 + 2^{-j})` used to
/// evaluate the liminf defining `K`.
pub const K_SEQUENCE_DEPTH: u32 = 20;

/// Exact decimal forms of the exponents, kept when parameters were supplied
/// as decimal strings so the borderline equalities α = m + γ - 1 and
/// α = 2m + γ - 2 can be detected rationally.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactExponents {
    pub m: Decimal,
    pub alpha: Decimal,
    pub gamma: Decimal,
}

/// The complete parameter tuple (χ₀, m, β, α, γ, a, b, μ, ν) plus the space
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Chemotactic sensitivity coefficient, any sign.
    pub chi0: f64,
    /// Cross-diffusion exponent, m > 0.
    pub m: f64,
    /// Sensitivity decay exponent, β ≥ 0.
    pub beta: f64,
    /// Logistic exponent, α > 0.
    pub alpha: f64,
    /// Signal production exponent, γ > 0.
    pub gamma: f64,
    /// Logistic growth coefficient, a ≥ 0.
    pub a: f64,
    /// Logistic damping coefficient, b ≥ 0.
    pub b: f64,
    /// Signal decay rate, μ > 0.
    pub mu: f64,
    /// Signal production rate, ν > 0.
    pub nu: f64,
    /// Space dimension, 1 or 2.
    pub dim: usize,
    /// Exact decimal exponents when available.
    pub exact: Option<ExactExponents>,
}

impl ModelParams {
    /// A valid baseline tuple (minimal model, unit rates) to be adjusted
    /// field by field.
    pub fn baseline(dim: usize) -> ModelParams {
        ModelParams {
            chi0: 0.0,
            m: 1.0,
            beta: 0.0,
            alpha: 1.0,
            gamma: 1.0,
            a: 0.0,
            b: 0.0,
            mu: 1.0,
            nu: 1.0,
            dim,
            exact: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &'static str, v: f64) -> Result<()> {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParam {
                    name,
                    value: v,
                    constraint: "must be finite and > 0",
                });
            }
            Ok(())
        }
        fn nonneg(name: &'static str, v: f64) -> Result<()> {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidParam {
                    name,
                    value: v,
                    constraint: "must be finite and >= 0",
                });
            }
            Ok(())
        }
        positive("m", self.m)?;
        positive("alpha", self.alpha)?;
        positive("gamma", self.gamma)?;
        positive("mu", self.mu)?;
        positive("nu", self.nu)?;
        nonneg("a", self.a)?;
        nonneg("b", self.b)?;
        nonneg("beta", self.beta)?;
        if !self.chi0.is_finite() {
            return Err(Error::InvalidParam {
                name: "chi0",
                value: self.chi0,
                constraint: "must be finite",
            });
        }
        if self.dim != 1 && self.dim != 2 {
            return Err(Error::InvalidParam {
                name: "dim",
                value: self.dim as f64,
                constraint: "must be 1 or 2",
            });
        }
        Ok(())
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Carrying capacity `(a/b)^{1/α}` of the logistic source, when a, b > 0.
    pub fn carrying_capacity(&self) -> Option<f64> {
        if self.a > 0.0 && self.b > 0.0 {
            Some((self.a / self.b).powf(1.0 / self.alpha))
        } else {
            None
        }
    }

    /// Constant equilibrium pair `(u*, (ν/μ) u*^γ)` when a, b > 0.
    pub fn equilibrium(&self) -> Option<(f64, f64)> {
        let u = self.carrying_capacity()?;
        Some((u, self.nu / self.mu * u.powf(self.gamma)))
    }
}

/// `Ψ_β = (β/(1+β))^{1+β}`, with `Ψ_0 = 0` by continuous extension.
///
/// Strictly increasing on `[0, ∞)` with limit `e^{-1}`.
pub fn psi(beta: f64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::domain(format!("psi requires beta >= 0, got {beta}")));
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    Ok((beta / (1.0 + beta)).powf(1.0 + beta))
}

/// `Θ_β = β^β (1+β)^{-(1+β)}`, with `Θ_0 = 1` by continuous extension.
///
/// Strictly decreasing on `(0, ∞)`, tends to 0 like `(eβ)^{-1}`. Evaluated
/// through logarithms so large β does not overflow `β^β`.
pub fn theta(beta: f64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::domain(format!(
            "theta requires beta >= 0, got {beta}"
        )));
    }
    if beta == 0.0 {
        return Ok(1.0);
    }
    Ok((beta * beta.ln() - (1.0 + beta) * (1.0 + beta).ln()).exp())
}

/// Strategy for supplying the elliptic regularity constant `C*_{N,p}`.
#[derive(Debug, Clone, PartialEq)]
pub enum EllipticConstantModel {
    /// A user-asserted admissible constant (> 0). In one dimension the
    /// value 1 is always admissible since `D²v = Δv` pointwise.
    UserConstant(f64),
    /// Empirical lower bound: maximum of the ratio
    /// `∫|D²v|^p / ∫(|Δv|^p + |v|^p)` over random truncated cosine
    /// expansions. Deterministic given the seed. Thresholds computed from
    /// it are indicative, not certified.
    EmpiricalLowerBound { trials: u32, seed: u64 },
}

/// An [`EllipticConstantModel`] together with a per-`(N, p)` cache of
/// evaluated values.
#[derive(Debug)]
pub struct EllipticConstant {
    model: EllipticConstantModel,
    cache: Mutex<HashMap<(usize, u64), f64>>,
}

impl EllipticConstant {
    pub fn user(value: f64) -> Result<EllipticConstant> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::InvalidParam {
                name: "C_{N,p}",
                value,
                constraint: "must be finite and > 0",
            });
        }
        Ok(EllipticConstant {
            model: EllipticConstantModel::UserConstant(value),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn empirical(trials: u32, seed: u64) -> Result<EllipticConstant> {
        if trials == 0 {
            return Err(Error::domain("empirical estimator requires trials >= 1"));
        }
        Ok(EllipticConstant {
            model: EllipticConstantModel::EmpiricalLowerBound { trials, seed },
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Default per dimension: the provably valid constant 1 in 1D, the
    /// empirical estimator in 2D.
    pub fn default_for_dim(dim: usize) -> EllipticConstant {
        match dim {
            1 => EllipticConstant::user(1.0).expect("1.0 is valid"),
            _ => EllipticConstant::empirical(200, 0x5eed).expect("trials >= 1"),
        }
    }

    pub fn model(&self) -> &EllipticConstantModel {
        &self.model
    }

    /// Whether values come from the empirical estimator (thresholds then
    /// carry a caveat and are excluded from hard assertions).
    pub fn is_empirical(&self) -> bool {
        matches!(self.model, EllipticConstantModel::EmpiricalLowerBound { .. })
    }

    /// The constant for dimension `n` and exponent `p > 1`.
    pub fn value(&self, n: usize, p: f64) -> Result<f64> {
        match self.model {
            EllipticConstantModel::UserConstant(c) => Ok(c),
            EllipticConstantModel::EmpiricalLowerBound { trials, seed } => {
                let key = (n, p.to_bits());
                if let Some(&v) = self.cache.lock().unwrap().get(&key) {
                    return Ok(v);
                }
                let v = estimate_c_star(n, p, trials, seed)?;
                self.cache.lock().unwrap().insert(key, v);
                Ok(v)
            }
        }
    }
}

/// `M*(N,p,μ,ν) = ν^p [ 8^p/p · C*_{N,p} (2^p + μ^{-p}) + 2^{2p}/((p-1) p^p) ]`,
/// the constant of the gradient estimate
/// `∫ |∇v|^{2p} / v^p ≤ M* ∫ u^{γp}`.
pub fn m_star(n: usize, p: f64, mu: f64, nu: f64, c_model: &EllipticConstant) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::domain(format!("m_star requires p > 1, got {p}")));
    }
    if !(mu > 0.0) || !(nu > 0.0) {
        return Err(Error::domain("m_star requires mu > 0 and nu > 0"));
    }
    let c = c_model.value(n, p)?;
    let first = 8f64.powf(p) / p * c * (2f64.powf(p) + mu.powf(-p));
    let second = 2f64.powf(2.0 * p) / ((p - 1.0) * p.powf(p));
    Ok(nu.powf(p) * (first + second))
}

/// `K(N,α,γ,μ,ν)`: the liminf of `[M*(N,(q+α)/γ,μ,ν)]^{γ/(q+α)}` as
/// `q ↓ q* = max{1, Nα/2}`.
///
/// Evaluated on the sequence `q_j = q*(1 + 2^{-j})`, `j = 1..J`, taking the
/// minimum of the last `⌈J/2⌉` elements; `M*` is continuous in `p` for a
/// continuous constant model, so the liminf is a right limit and the tail
/// minimum converges to it.
///
/// Fails with a domain error when the tail exponents `(q+α)/γ` fall at or
/// below 1 (possible for strongly sublinear production, where the defining
/// formula itself degenerates).
pub fn k_constant(
    n: usize,
    alpha: f64,
    gamma: f64,
    mu: f64,
    nu: f64,
    c_model: &EllipticConstant,
) -> Result<f64> {
    if !(alpha > 0.0) || !(gamma > 0.0) || !(mu > 0.0) || !(nu > 0.0) {
        return Err(Error::domain(
            "k_constant requires alpha, gamma, mu, nu > 0",
        ));
    }
    let q_star = 1f64.max(n as f64 * alpha / 2.0);
    let j_total = K_SEQUENCE_DEPTH;
    let tail_len = j_total.div_ceil(2);
    let mut tail_min = f64::INFINITY;
    for j in 1..=j_total {
        let q = q_star * (1.0 + 2f64.powi(-(j as i32)));
        let p = (q + alpha) / gamma;
        if !(p > 1.0) {
            return Err(Error::domain(format!(
                "k_constant: sequence exponent (q+alpha)/gamma = {p} <= 1 \
                 (q = {q}); K is undefined for these parameters"
            )));
        }
        if j > j_total - tail_len {
            let value = m_star(n, p, mu, nu, c_model)?.powf(gamma / (q + alpha));
            tail_min = tail_min.min(value);
        }
    }
    Ok(tail_min)
}

/// A critical-χ₀ threshold on the comparison slice, or the reason it does
/// not apply to the supplied parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum SliceThreshold {
    Value(ExtReal),
    Inapplicable(String),
}

/// The three χ₀-smallness thresholds on the slice m = 1, α = γ, a, b > 0:
///
/// * `chi1 = Nγb / ((Nγ-2)(ν + Ψ_β K))` — borderline strong-logistic rule,
/// * `chi2 = (8b / ((Nγ-2) Θ_{2β-1} K))^{1/2}` — its companion borderline,
/// * `chiw = 2(2β-1) / max{2, γN}` — weak-cross-diffusion rule.
///
/// `chi1` and `chi2` are `+∞` when `Nγ ≤ 2`. `chiw` is always finite but
/// only yields a guarantee for β ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiThresholds {
    pub chi1: SliceThreshold,
    pub chi2: SliceThreshold,
    pub chiw: f64,
    /// β ≥ 1 required for `chiw` to back an actual guarantee.
    pub chiw_applicable: bool,
    /// Set when chi1/chi2 were computed from an empirically estimated
    /// elliptic constant.
    pub empirical_constant: bool,
}

/// Evaluates the three thresholds of the m = 1, α = γ comparison slice.
/// Slice violations mark the affected thresholds inapplicable instead of
/// failing.
pub fn chi_thresholds(params: &ModelParams, c_model: &EllipticConstant) -> Result<ChiThresholds> {
    params.validate()?;
    let n = params.dim;
    let gamma = params.gamma;
    let beta = params.beta;

    let chiw = 2.0 * (2.0 * beta - 1.0) / 2f64.max(gamma * n as f64);

    let mut slice_problems: Vec<&str> = Vec::new();
    if params.m != 1.0 {
        slice_problems.push("m != 1");
    }
    if params.alpha != gamma {
        slice_problems.push("alpha != gamma");
    }
    if !(params.a > 0.0 && params.b > 0.0) {
        slice_problems.push("a, b > 0 required");
    }

    let (chi1, chi2) = if !slice_problems.is_empty() {
        let why = slice_problems.join(", ");
        (
            SliceThreshold::Inapplicable(why.clone()),
            SliceThreshold::Inapplicable(why),
        )
    } else {
        let ngamma = n as f64 * gamma;
        if ngamma <= 2.0 {
            (
                SliceThreshold::Value(ExtReal::PosInf),
                SliceThreshold::Value(ExtReal::PosInf),
            )
        } else {
            let k = k_constant(n, gamma, gamma, params.mu, params.nu, c_model)?;
            let chi1 = ngamma * params.b / ((ngamma - 2.0) * (params.nu + psi(beta)? * k));
            let chi2 = if 2.0 * beta - 1.0 >= 0.0 {
                SliceThreshold::Value(ExtReal::Finite(
                    (8.0 * params.b / ((ngamma - 2.0) * theta(2.0 * beta - 1.0)? * k)).sqrt(),
                ))
            } else {
                SliceThreshold::Inapplicable("beta >= 1/2 required".into())
            };
            (SliceThreshold::Value(ExtReal::Finite(chi1)), chi2)
        }
    };

    Ok(ChiThresholds {
        chi1,
        chi2,
        chiw,
        chiw_applicable: beta >= 1.0,
        empirical_constant: c_model.is_empirical(),
    })
}

/// Empirical lower bound for `C*_{N,p}`: the maximum over random
/// Neumann-compatible trial fields (truncated cosine expansions on the unit
/// box, derivatives evaluated analytically at cell centers) of the midpoint
/// quadrature ratio `∫|D²v|^p / ∫(|Δv|^p + |v|^p)`.
///
/// Deterministic given the seed. In one dimension `D²v = Δv` pointwise, so
/// every ratio is strictly below 1.
pub fn estimate_c_star(n: usize, p: f64, trials: u32, seed: u64) -> Result<f64> {
    if n != 1 && n != 2 {
        return Err(Error::domain("estimate_c_star supports dimensions 1 and 2"));
    }
    if !(p > 1.0) {
        return Err(Error::domain(format!(
            "estimate_c_star requires p > 1, got {p}"
        )));
    }
    if trials == 0 {
        return Err(Error::domain("estimate_c_star requires trials >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    match n {
        1 => {
            const CELLS: usize = 512;
            const MODES: usize = 10;
            // cosine tables at cell centers x_i = (i + 1/2)/CELLS
            let mut cos_tab = vec![0.0f64; MODES * CELLS];
            for k in 1..=MODES {
                for i in 0..CELLS {
                    let x = (i as f64 + 0.5) / CELLS as f64;
                    cos_tab[(k - 1) * CELLS + i] = (k as f64 * std::f64::consts::PI * x).cos();
                }
            }
            let mut coef = [0.0f64; MODES];
            for _ in 0..trials {
                for c in coef.iter_mut() {
                    *c = rng.random_range(-1.0..1.0);
                }
                let mut num = 0.0;
                let mut den = 0.0;
                for i in 0..CELLS {
                    let mut v = 0.0;
                    let mut vxx = 0.0;
                    for k in 1..=MODES {
                        let w = k as f64 * std::f64::consts::PI;
                        let c = coef[k - 1] * cos_tab[(k - 1) * CELLS + i];
                        v += c;
                        vxx += -w * w * c;
                    }
                    num += vxx.abs().powf(p);
                    den += vxx.abs().powf(p) + v.abs().powf(p);
                }
                if den > 0.0 {
                    best = best.max(num / den);
                }
            }
        }
        2 => {
            const CELLS: usize = 48;
            const MODES: usize = 6; // per axis, wavenumbers 0..=MODES
            let mut cos_tab = vec![0.0f64; (MODES + 1) * CELLS];
            let mut sin_tab = vec![0.0f64; (MODES + 1) * CELLS];
            for k in 0..=MODES {
                for i in 0..CELLS {
                    let x = (i as f64 + 0.5) / CELLS as f64;
                    let arg = k as f64 * std::f64::consts::PI * x;
                    cos_tab[k * CELLS + i] = arg.cos();
                    sin_tab[k * CELLS + i] = arg.sin();
                }
            }
            let n_modes = (MODES + 1) * (MODES + 1);
            let mut coef = vec![0.0f64; n_modes];
            for _ in 0..trials {
                for (idx, c) in coef.iter_mut().enumerate() {
                    *c = if idx == 0 {
                        0.0 // constant mode only dilutes the ratio
                    } else {
                        rng.random_range(-1.0..1.0)
                    };
                }
                let mut num = 0.0;
                let mut den_lap = 0.0;
                let mut den_val = 0.0;
                for iy in 0..CELLS {
                    for ix in 0..CELLS {
                        let mut v = 0.0;
                        let mut vxx = 0.0;
                        let mut vyy = 0.0;
                        let mut vxy = 0.0;
                        for ky in 0..=MODES {
                            let cy = cos_tab[ky * CELLS + iy];
                            let sy = sin_tab[ky * CELLS + iy];
                            let wy = ky as f64 * std::f64::consts::PI;
                            for kx in 0..=MODES {
                                let c = coef[ky * (MODES + 1) + kx];
                                if c == 0.0 {
                                    continue;
                                }
                                let cx = cos_tab[kx * CELLS + ix];
                                let sx = sin_tab[kx * CELLS + ix];
                                let wx = kx as f64 * std::f64::consts::PI;
                                v += c * cx * cy;
                                vxx += -wx * wx * c * cx * cy;
                                vyy += -wy * wy * c * cx * cy;
                                vxy += wx * wy * c * sx * sy;
                            }
                        }
                        let hess = (vxx * vxx + 2.0 * vxy * vxy + vyy * vyy).sqrt();
                        num += hess.powf(p);
                        den_lap += (vxx + vyy).abs().powf(p);
                        den_val += v.abs().powf(p);
                    }
                }
                let den = den_lap + den_val;
                if den > 0.0 {
                    best = best.max(num / den);
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_one() -> EllipticConstant {
        EllipticConstant::user(1.0).unwrap()
    }

    #[test]
    fn psi_landmarks() {
        assert_eq!(psi(0.0).unwrap(), 0.0);
        assert_eq!(psi(1.0).unwrap(), 0.25);
        assert!((psi(1e6).unwrap() - (-1f64).exp()).abs() < 1e-5);
        assert!(psi(-0.5).is_err());
    }

    #[test]
    fn theta_landmarks() {
        assert_eq!(theta(0.0).unwrap(), 1.0);
        assert!((theta(1.0).unwrap() - 0.25).abs() <= 4.0 * f64::EPSILON);
        assert!(theta(1e-9).unwrap() > 1.0 - 1e-7);
        assert!(theta(1e6).unwrap() < 1e-5);
        // theta(2) = 4/27, used by the chi2 threshold
        assert!((theta(2.0).unwrap() - 4.0 / 27.0).abs() < 1e-15);
        assert!(theta(-1.0).is_err());
        // no overflow at moderate beta where beta^beta would blow up
        assert!(theta(400.0).unwrap().is_finite());
    }

    #[test]
    fn psi_theta_identity_and_monotonicity() {
        // psi(b) = b * theta(b) algebraically
        for i in 1..200 {
            let b = i as f64 * 0.1;
            let lhs = psi(b).unwrap();
            let rhs = b * theta(b).unwrap();
            assert!(
                (lhs - rhs).abs() <= 4.0 * f64::EPSILON * lhs.max(rhs),
                "identity at beta = {b}: {lhs} vs {rhs}"
            );
        }
        let mut prev_psi = psi(0.0).unwrap();
        let mut prev_theta = f64::INFINITY;
        for i in 1..=1000 {
            let b = i as f64 * 0.02;
            let p = psi(b).unwrap();
            let t = theta(b).unwrap();
            assert!(p > prev_psi, "psi not increasing at {b}");
            assert!(t < prev_theta, "theta not decreasing at {b}");
            prev_psi = p;
            prev_theta = t;
        }
        assert!(prev_psi < (-1f64).exp());
    }

    #[test]
    fn m_star_examples() {
        // direct formula evaluation: 32*5 + 4
        assert_eq!(m_star(1, 2.0, 1.0, 1.0, &c_one()).unwrap(), 164.0);
        // nu^p scaling
        assert_eq!(m_star(1, 2.0, 1.0, 2.0, &c_one()).unwrap(), 656.0);
        // hand evaluation at p = 3: (512/3)*9 + 64/54 = 41504/27
        let v = m_star(1, 3.0, 1.0, 1.0, &c_one()).unwrap();
        assert!((v - 41504.0 / 27.0).abs() < 1e-9 * v, "{v}");
        assert!(m_star(1, 1.0, 1.0, 1.0, &c_one()).is_err());
        assert!(m_star(1, 0.5, 1.0, 1.0, &c_one()).is_err());
    }

    #[test]
    fn m_star_monotone_in_c_and_nu() {
        let lo = m_star(1, 2.5, 0.7, 1.3, &c_one()).unwrap();
        let hi_c = m_star(1, 2.5, 0.7, 1.3, &EllipticConstant::user(1.01).unwrap()).unwrap();
        let hi_nu = m_star(1, 2.5, 0.7, 1.3 * 1.01, &c_one()).unwrap();
        assert!(hi_c > lo);
        assert!(hi_nu > lo);
    }

    #[test]
    fn k_constant_example() {
        // N=1, alpha=2, gamma=1, mu=nu=1, C=1: q* = 1, tail exponents near
        // p = 3. Frozen oracle value of the specified tail-min rule
        // (40-digit evaluation): 11.54080116405766912...
        let k = k_constant(1, 2.0, 1.0, 1.0, 1.0, &c_one()).unwrap();
        assert!((k - 11.540801164057669).abs() < 1e-12, "{k}");
        // ...which approximates the right limit [M*(1,3,1,1)]^{1/3}
        let limit = (41504.0f64 / 27.0).powf(1.0 / 3.0);
        assert!((k - limit).abs() < 2e-4, "tail-min {k} vs limit {limit}");
        assert!(k > 0.0);
    }

    #[test]
    fn k_constant_scales_linearly_in_nu() {
        // each sequence element scales by nu^{p * gamma/(q+alpha)} = nu
        let k1 = k_constant(2, 1.5, 0.8, 0.9, 1.0, &c_one()).unwrap();
        let k2 = k_constant(2, 1.5, 0.8, 0.9, 2.0, &c_one()).unwrap();
        assert!((k2 - 2.0 * k1).abs() < 1e-10 * k2, "{k1} {k2}");
    }

    #[test]
    fn k_constant_degenerate_exponent_is_domain_error() {
        // gamma large: (q*+alpha)/gamma <= 1 near the tail
        let err = k_constant(1, 1.0, 3.0, 1.0, 1.0, &c_one());
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn chi_threshold_examples() {
        // weak-cross-diffusion threshold: beta=1, gamma=1, N=2 -> 1
        let mut p = ModelParams::baseline(2);
        p.m = 1.0;
        p.beta = 1.0;
        p.a = 1.0;
        p.b = 1.0;
        let t = chi_thresholds(&p, &c_one()).unwrap();
        assert_eq!(t.chiw, 1.0);
        assert!(t.chiw_applicable);
        // N*gamma = 2 <= 2: chi1 = chi2 = +inf
        assert_eq!(t.chi1, SliceThreshold::Value(ExtReal::PosInf));
        assert_eq!(t.chi2, SliceThreshold::Value(ExtReal::PosInf));

        // beta = 3/2, gamma = 1, N = 3 is outside the supported dimensions
        // for simulation but the threshold algebra itself is dimension
        // generic; checked via k_constant directly.
        let k = k_constant(3, 1.0, 1.0, 1.0, 1.0, &c_one()).unwrap();
        assert!((k - 11.856866637295097).abs() < 1e-12, "{k}");
        let chi2 = (8.0 / ((3.0 - 2.0) * theta(2.0).unwrap() * k)).sqrt();
        assert!((chi2 - 2.134085978442003).abs() < 1e-12, "{chi2}");
    }

    #[test]
    fn chi_threshold_slice_violations_reported() {
        let mut p = ModelParams::baseline(1);
        p.m = 0.5; // off the slice
        p.a = 1.0;
        p.b = 1.0;
        let t = chi_thresholds(&p, &c_one()).unwrap();
        assert!(matches!(t.chi1, SliceThreshold::Inapplicable(_)));
        assert!(matches!(t.chi2, SliceThreshold::Inapplicable(_)));
        assert!(!t.chiw_applicable); // beta = 0 < 1
    }

    #[test]
    fn chiw_increasing_in_beta_and_decaying_in_n() {
        let mut prev = -f64::INFINITY;
        for i in 0..50 {
            let mut p = ModelParams::baseline(2);
            p.m = 1.0;
            p.a = 1.0;
            p.b = 1.0;
            p.beta = 1.0 + i as f64 * 0.25;
            let t = chi_thresholds(&p, &c_one()).unwrap();
            assert!(t.chiw > prev);
            prev = t.chiw;
        }
        // for gamma*N > 2 the threshold carries the 1/N factor
        let chiw_n = |n: usize| 2.0 * (2.0 * 2.0 - 1.0) / 2f64.max(3.0 * n as f64);
        assert_eq!(chiw_n(2) / chiw_n(1), 0.5);
    }

    #[test]
    fn estimate_c_star_1d_below_one() {
        let c = estimate_c_star(1, 2.0, 50, 42).unwrap();
        assert!(c > 0.0);
        assert!(c <= 1.0 + 1e-6, "{c}");
        // single-mode eigenfunction ratio E/(E + ∫v²) < 1 mirrors the bound
        let c3 = estimate_c_star(1, 3.0, 50, 42).unwrap();
        assert!(c3 <= 1.0 + 1e-6, "{c3}");
    }

    #[test]
    fn estimate_c_star_deterministic() {
        let a = estimate_c_star(2, 2.0, 20, 7).unwrap();
        let b = estimate_c_star(2, 2.0, 20, 7).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        let c = estimate_c_star(2, 2.0, 20, 8).unwrap();
        assert!(a > 0.0 && c > 0.0);
    }

    #[test]
    fn elliptic_constant_cache_and_flags() {
        let emp = EllipticConstant::empirical(20, 3).unwrap();
        assert!(emp.is_empirical());
        let v1 = emp.value(2, 2.0).unwrap();
        let v2 = emp.value(2, 2.0).unwrap();
        assert_eq!(v1.to_bits(), v2.to_bits());
        let user = EllipticConstant::user(2.5).unwrap();
        assert!(!user.is_empirical());
        assert_eq!(user.value(2, 7.3).unwrap(), 2.5);
        assert!(EllipticConstant::user(0.0).is_err());
        assert!(EllipticConstant::empirical(0, 1).is_err());
    }

    #[test]
    fn params_validation() {
        let mut p = ModelParams::baseline(1);
        assert!(p.validate().is_ok());
        p.m = 0.0;
        assert!(matches!(p.validate(), Err(Error::InvalidParam { name: "m", .. })));
        p.m = 1.0;
        p.beta = -0.1;
        assert!(p.validate().is_err());
        p.beta = 0.0;
        p.dim = 3;
        assert!(p.validate().is_err());
        // minimal model a = b = 0 is valid
        p.dim = 1;
        assert!(p.validate().is_ok());
        assert_eq!(p.carrying_capacity(), None);
        p.a = 2.0;
        p.b = 0.5;
        p.alpha = 2.0;
        assert_eq!(p.carrying_capacity(), Some(2.0));
    }
}
