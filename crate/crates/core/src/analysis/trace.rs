use crate::error::{Error, Result};
use crate::kernel::t_operator;
use crate::matrix::SymMatrix;
use crate::scalar::{Precision, Scalar};
use crate::strategy::{ordering_i1, PivotPair};

/// Iterates `B^(k) = T^k(A)` of the two-rotation operator, with the angles
/// `(φ_k, ψ_k)` that produce `B^(k)` from `B^(k-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTrace<T> {
    states: Vec<SymMatrix<T>>,
    angles: Vec<(T, T)>,
    reference: T,
}

pub const TRACE_CSV_HEADER: &str = "k,pivot_i,pivot_j,S,delta,nu_plus,nu_minus,b_quantity,phi,psi";

/// Requires `a12 = a34 = 0`, the pattern the operator preserves.
pub fn check_pattern<T: Scalar>(a: &SymMatrix<T>) -> Result<()> {
    if a.n() != 4 {
        return Err(Error::UnsupportedOrder { required: 4, found: a.n() });
    }
    for (r, s) in [(0, 1), (2, 3)] {
        if !a.get(r, s).is_zero() {
            return Err(Error::PatternViolation(format!("entry ({},{}) = {} must be zero", r + 1, s + 1, a.get(r, s))));
        }
    }
    Ok(())
}

/// Runs `k_max` operator steps from `a`.
pub fn trace_t_run<T: Scalar>(a: &SymMatrix<T>, k_max: usize) -> Result<SweepTrace<T>> {
    check_pattern(a)?;
    let mut states = vec![a.clone()];
    let mut angles = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let (next, phi, psi) = t_operator(states.last().expect("nonempty"))?;
        states.push(next);
        angles.push((phi, psi));
    }
    Ok(SweepTrace { reference: a.off_norm(), states, angles })
}

impl<T: Scalar> SweepTrace<T> {
    pub fn precision(&self) -> Precision {
        self.states[0].precision()
    }

    /// Number of operator steps recorded.
    pub fn k_max(&self) -> usize {
        self.angles.len()
    }

    pub fn state(&self, k: usize) -> &SymMatrix<T> {
        &self.states[k]
    }

    /// `S(B)`, the normalizer of every relative quantity.
    pub fn reference(&self) -> &T {
        &self.reference
    }

    /// `b_rs^(k)`, 1-based.
    pub fn b(&self, k: usize, r: usize, s: usize) -> T {
        self.states[k].get(r - 1, s - 1).clone()
    }

    pub fn s(&self, k: usize) -> T {
        self.states[k].off_norm()
    }

    pub fn s_sq(&self, k: usize) -> T {
        self.states[k].off_norm_sq()
    }

    fn relative(&self, v: T) -> T {
        if self.reference.is_zero() {
            T::zero(self.precision())
        } else {
            v / self.reference.clone()
        }
    }

    /// `sqrt(b13² + b24²) / S(B)`; zero when `S(B) = 0`.
    pub fn delta(&self, k: usize) -> T {
        let v = (self.b(k, 1, 3).square() + self.b(k, 2, 4).square()).sqrt_unchecked();
        self.relative(v)
    }

    /// `|b14 + b23| / S(B)`.
    pub fn nu_plus(&self, k: usize) -> T {
        self.relative((self.b(k, 1, 4) + self.b(k, 2, 3)).abs())
    }

    /// `|b14 - b23| / S(B)`.
    pub fn nu_minus(&self, k: usize) -> T {
        self.relative((self.b(k, 1, 4) - self.b(k, 2, 3)).abs())
    }

    /// `b11 - b22 - b33 + b44`.
    pub fn b_quantity(&self, k: usize) -> T {
        self.b(k, 1, 1) - self.b(k, 2, 2) - self.b(k, 3, 3) + self.b(k, 4, 4)
    }

    /// `φ_k` for `k >= 1`.
    pub fn phi(&self, k: usize) -> &T {
        &self.angles[k - 1].0
    }

    /// `ψ_k` for `k >= 1`.
    pub fn psi(&self, k: usize) -> &T {
        &self.angles[k - 1].1
    }

    /// First pair, in the coordinates of the original matrix, of the `I1`
    /// parallel step that produced `B^(k)`.
    pub fn pivot_pair(&self, k: usize) -> Option<PivotPair> {
        (k >= 1).then(|| ordering_i1().pairs()[(2 * (k - 1)) % 6])
    }

    #[cfg(test)]
    pub(crate) fn corrupt_for_test(&mut self, k: usize, r: usize, s: usize, by: f64) {
        let m = &mut self.states[k];
        let v = m.get(r, s).clone() + T::from_f64(m.precision(), by);
        m.set(r, s, v);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRACE_CSV_HEADER);
        out.push('\n');
        for k in 0..=self.k_max() {
            let (pi, pj) = self.pivot_pair(k).map(|p| (p.i().to_string(), p.j().to_string())).unwrap_or_default();
            let (phi, psi) = if k == 0 {
                (String::new(), String::new())
            } else {
                (self.phi(k).to_sci_string(), self.psi(k).to_sci_string())
            };
            out.push_str(&format!(
                "{k},{pi},{pj},{},{},{},{},{},{phi},{psi}\n",
                self.s(k).to_sci_string(),
                self.delta(k).to_sci_string(),
                self.nu_plus(k).to_sci_string(),
                self.nu_minus(k).to_sci_string(),
                self.b_quantity(k).to_sci_string(),
            ));
        }
        out
    }
}
