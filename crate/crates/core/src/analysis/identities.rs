//! Exact identities along operator traces, checked to a precision-dependent
//! tolerance. Deviations are normalized by `S(B)` (or `‖B‖_F` where
//! diagonal entries enter) raised to the degree of the identity.

use serde::{Deserialize, Serialize};

use super::trace::SweepTrace;
use crate::scalar::Scalar;

/// Worst normalized deviation of one identity over a trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub worst: f64,
    pub worst_step: Option<usize>,
    pub tolerance: f64,
}

impl IdentityOutcome {
    fn new(name: &str, tolerance: f64) -> Self {
        IdentityOutcome { name: name.to_string(), worst: 0.0, worst_step: None, tolerance }
    }

    fn record(&mut self, k: usize, dev: f64) {
        if dev > self.worst || dev.is_nan() {
            self.worst = if dev.is_nan() { f64::INFINITY } else { dev };
            self.worst_step = Some(k);
        }
    }

    pub fn pass(&self) -> bool {
        self.worst <= self.tolerance
    }

    /// Keeps the larger deviation of two outcomes for the same identity.
    pub fn merge(&mut self, other: &IdentityOutcome) {
        if other.worst > self.worst {
            self.worst = other.worst;
            self.worst_step = other.worst_step;
        }
    }
}

struct Scales<T> {
    off: T,
    full: T,
    off_sq: T,
}

fn scales<T: Scalar>(t: &SweepTrace<T>) -> Option<Scales<T>> {
    let off = t.reference().clone();
    if off.is_zero() {
        return None;
    }
    let full = t.state(0).frobenius_sq().sqrt_unchecked();
    Some(Scales { off_sq: off.square(), off, full })
}

fn dev<T: Scalar>(lhs: T, rhs: T, scale: &T) -> f64 {
    ((lhs - rhs).abs() / scale.clone()).to_f64()
}

fn tol<T: Scalar>(t: &SweepTrace<T>) -> f64 {
    t.precision().verification_tolerance()
}

/// `S²(B^(k+1)) = S²(B^(k)) - b13² - b24² = b14² + b23²`.
pub fn check_identity_new1<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("norm_split", tol(t));
    let Some(sc) = scales(t) else { return out };
    for k in 0..t.k_max() {
        let next = t.s_sq(k + 1);
        let first = t.s_sq(k) - t.b(k, 1, 3).square() - t.b(k, 2, 4).square();
        let second = t.b(k, 1, 4).square() + t.b(k, 2, 3).square();
        out.record(k, dev(next.clone(), first, &sc.off_sq).max(dev(next, second, &sc.off_sq)));
    }
    out
}

/// `b14 ± b23 = -(b14 ± b23)_prev sin(ψ ± φ)` and the induced recursions
/// `ν_k = |sin(φ+ψ)| ν_(k-1)`, `ν_k⁻ = |sin(φ-ψ)| ν_(k-1)⁻`.
pub fn check_identity_pm<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("pm_recursion", tol(t));
    let Some(sc) = scales(t) else { return out };
    for k in 1..=t.k_max() {
        let (phi, psi) = (t.phi(k).clone(), t.psi(k).clone());
        let plus_prev = t.b(k - 1, 1, 4) + t.b(k - 1, 2, 3);
        let minus_prev = t.b(k - 1, 1, 4) - t.b(k - 1, 2, 3);
        let plus = t.b(k, 1, 4) + t.b(k, 2, 3);
        let minus = t.b(k, 1, 4) - t.b(k, 2, 3);
        let sp = (psi.clone() + phi.clone()).sin();
        let sm = (psi - phi).sin();
        let d1 = dev(plus, -(plus_prev * sp.clone()), &sc.off);
        let d2 = dev(minus, -(minus_prev * sm.clone()), &sc.off);
        let d3 = dev(t.nu_plus(k), sp.abs() * t.nu_plus(k - 1), &T::one(t.precision()));
        let d4 = dev(t.nu_minus(k), sm.abs() * t.nu_minus(k - 1), &T::one(t.precision()));
        out.record(k, d1.max(d2).max(d3).max(d4));
    }
    out
}

/// `b13² + b24² = (b14² + b23²)_prev cos²(φ-ψ) - 2 (b14 + b23)²_prev cφ cψ sφ sψ`.
pub fn check_identity_prva<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("pivot_square_sum", tol(t));
    let Some(sc) = scales(t) else { return out };
    for k in 1..=t.k_max() {
        let (phi, psi) = (t.phi(k).clone(), t.psi(k).clone());
        let (b14, b23) = (t.b(k - 1, 1, 4), t.b(k - 1, 2, 3));
        let lhs = t.b(k, 1, 3).square() + t.b(k, 2, 4).square();
        let two = phi.lit(2.0);
        let rhs = (b14.square() + b23.square()) * (phi.clone() - psi.clone()).cos().square()
            - two * (b14 + b23).square() * phi.cos() * psi.cos() * phi.sin() * psi.sin();
        out.record(k, dev(lhs, rhs, &sc.off_sq));
    }
    out
}

/// `b13 - b24 = (b14 + b23)_prev cos(φ+ψ)`, `b13 + b24 = (b14 - b23)_prev cos(φ-ψ)`
/// and the parallelogram law `(b13 + b24)² = 2 δ² S²(B) - (b13 - b24)²`.
pub fn check_identity_pom2<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("pivot_sum_difference", tol(t));
    let Some(sc) = scales(t) else { return out };
    for k in 1..=t.k_max() {
        let (phi, psi) = (t.phi(k).clone(), t.psi(k).clone());
        let (b14, b23) = (t.b(k - 1, 1, 4), t.b(k - 1, 2, 3));
        let (b13, b24) = (t.b(k, 1, 3), t.b(k, 2, 4));
        let d1 = dev(b13.clone() - b24.clone(), (b14.clone() + b23.clone()) * (phi.clone() + psi.clone()).cos(), &sc.off);
        let d2 = dev(b13.clone() + b24.clone(), (b14 - b23) * (phi - psi).cos(), &sc.off);
        let two = b13.lit(2.0);
        let para = two * t.delta(k).square() * sc.off_sq.clone() - (b13.clone() - b24.clone()).square();
        let d3 = dev((b13 + b24).square(), para, &sc.off_sq);
        out.record(k, d1.max(d2).max(d3));
    }
    out
}

fn tan_plus_cot2<T: Scalar>(z: &T) -> T {
    let two_z = z.clone() * z.lit(2.0);
    z.tan() + two_z.cos() / two_z.sin()
}

/// `min(|tan φ + cot 2φ|, |tan ψ + cot 2ψ|) >= 1` over nonzero angles.
/// The recorded deviation is the shortfall below 1.
pub fn check_tancot_bound<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("tan_cot_bound", tol(t));
    for k in 1..=t.k_max() {
        for z in [t.phi(k), t.psi(k)] {
            if !z.is_zero() {
                out.record(k, 1.0 - tan_plus_cot2(z).abs().to_f64());
            }
        }
    }
    out
}

/// Angle relations in multiplied-out form, valid with zero pivots:
/// `(b11 - b33) sin 2φ = 2 b13 cos 2φ` on `B^(k-1)`, and
/// `2 b13 (tan φ + cot 2φ) = b11 - b22` at `B^(k)` (likewise for `ψ`).
pub fn check_angle_relations<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("angle_relations", tol(t));
    let Some(sc) = scales(t) else { return out };
    for k in 1..=t.k_max() {
        let (phi, psi) = (t.phi(k).clone(), t.psi(k).clone());
        let two = phi.lit(2.0);
        let (tp, tq) = (two.clone() * phi.clone(), two.clone() * psi.clone());
        let d1 = dev((t.b(k - 1, 1, 1) - t.b(k - 1, 3, 3)) * tp.sin(), two.clone() * t.b(k - 1, 1, 3) * tp.cos(), &sc.full);
        let d2 = dev((t.b(k - 1, 2, 2) - t.b(k - 1, 4, 4)) * tq.sin(), two.clone() * t.b(k - 1, 2, 4) * tq.cos(), &sc.full);
        let mut d = d1.max(d2);
        if !phi.is_zero() {
            let lhs = two.clone() * t.b(k - 1, 1, 3) * tan_plus_cot2(&phi);
            d = d.max(dev(lhs, t.b(k, 1, 1) - t.b(k, 2, 2), &sc.full));
        }
        if !psi.is_zero() {
            let lhs = two.clone() * t.b(k - 1, 2, 4) * tan_plus_cot2(&psi);
            d = d.max(dev(lhs, t.b(k, 4, 4) - t.b(k, 3, 3), &sc.full));
        }
        out.record(k, d);
    }
    out
}

/// `||b14| - |b23||_prev <= √2 δ_k S(B)`; records the excess over the bound.
pub fn check_b14_b23_bound<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("cross_pivot_bound", tol(t));
    let Some(sc) = scales(t) else { return out };
    let root2 = T::from_f64(t.precision(), 2.0).sqrt_unchecked();
    for k in 1..=t.k_max() {
        let lhs = (t.b(k - 1, 1, 4).abs() - t.b(k - 1, 2, 3).abs()).abs();
        let bound = root2.clone() * t.delta(k) * sc.off.clone();
        out.record(k, ((lhs - bound) / sc.off.clone()).to_f64());
    }
    out
}

/// `Σ δ_k² (k < k_max) = 1 - S²(B^(k_max)) / S²(B)`.
pub fn check_delta_sum<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("delta_sum", tol(t));
    let Some(sc) = scales(t) else { return out };
    let p = t.precision();
    let mut sum = T::zero(p);
    for k in 0..t.k_max() {
        sum = sum + t.delta(k).square();
    }
    let rhs = T::one(p) - t.s_sq(t.k_max()) / sc.off_sq.clone();
    out.record(t.k_max(), dev(sum, rhs, &T::one(p)));
    out
}

/// `S(B^(k+1)) <= S(B^(k))`; records the relative increase.
pub fn check_monotone<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("monotone", tol(t));
    let Some(sc) = scales(t) else { return out };
    for k in 0..t.k_max() {
        out.record(k + 1, ((t.s(k + 1) - t.s(k)) / sc.off.clone()).to_f64());
    }
    out
}

/// `tr B^(k) = tr B`.
pub fn check_trace_preserved<T: Scalar>(t: &SweepTrace<T>) -> IdentityOutcome {
    let mut out = IdentityOutcome::new("trace", tol(t));
    let Some(sc) = scales(t) else { return out };
    let tr = |k: usize| t.b(k, 1, 1) + t.b(k, 2, 2) + t.b(k, 3, 3) + t.b(k, 4, 4);
    for k in 1..=t.k_max() {
        out.record(k, dev(tr(k), tr(0), &sc.full));
    }
    out
}

/// Every identity and bound above.
pub fn identity_suite<T: Scalar>(t: &SweepTrace<T>) -> Vec<IdentityOutcome> {
    vec![
        check_identity_new1(t),
        check_identity_pm(t),
        check_identity_prva(t),
        check_identity_pom2(t),
        check_tancot_bound(t),
        check_angle_relations(t),
        check_b14_b23_bound(t),
        check_delta_sum(t),
        check_monotone(t),
        check_trace_preserved(t),
    ]
}
