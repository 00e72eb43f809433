//! Jacobi rotations, cyclic sweeps and the two-rotation operator on 4×4
//! matrices.

use crate::error::{Error, Result};
use crate::matrix::{conjugate_signed_perm, SignedPermutation, SymMatrix};
use crate::scalar::{scalar_atan2_half, Precision, Scalar};
use crate::strategy::{CyclicStrategy, PivotPair};

/// The rotation `R(i, j, φ)`: identity except `(i,i) = (j,j) = cos φ`,
/// `(i,j) = -sin φ`, `(j,i) = sin φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneRotation<T> {
    pub pair: PivotPair,
    pub angle: T,
    pub cos: T,
    pub sin: T,
}

impl<T: Scalar> PlaneRotation<T> {
    pub fn new(pair: PivotPair, angle: T) -> Self {
        let (cos, sin) = (angle.cos(), angle.sin());
        PlaneRotation { pair, angle, cos, sin }
    }

    pub fn identity(pair: PivotPair, precision: Precision) -> Self {
        PlaneRotation { pair, angle: T::zero(precision), cos: T::one(precision), sin: T::zero(precision) }
    }

    pub fn is_identity(&self) -> bool {
        self.angle.is_zero()
    }
}

/// Angles of a run, one rotation per step.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleLog<T> {
    pub steps: Vec<PlaneRotation<T>>,
}

impl<T: Scalar> AngleLog<T> {
    pub fn new() -> Self {
        AngleLog { steps: Vec::new() }
    }

    /// Angles grouped by parallel step, `group` rotations per step.
    pub fn parallel_angles(&self, group: usize) -> Vec<Vec<T>> {
        self.steps.chunks(group).map(|c| c.iter().map(|r| r.angle.clone()).collect()).collect()
    }
}

impl<T: Scalar> Default for AngleLog<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn check_pair<T: Scalar>(a: &SymMatrix<T>, p: PivotPair) -> Result<()> {
    if p.fits(a.n()) {
        Ok(())
    } else {
        Err(Error::InvalidPair { i: p.i(), j: p.j(), n: a.n() })
    }
}

/// `φ ∈ [-π/4, π/4]` with `tan 2φ = 2a_ij / (a_ii - a_jj)`; zero when the
/// pivot is zero.
pub fn jacobi_angle<T: Scalar>(a: &SymMatrix<T>, p: PivotPair) -> Result<T> {
    check_pair(a, p)?;
    let (i, j) = p.rows();
    let aij = a.get(i, j);
    let two = aij.lit(2.0);
    Ok(scalar_atan2_half(&(two * aij.clone()), &(a.get(i, i).clone() - a.get(j, j).clone())))
}

/// One Jacobi step in place. The pivot entry is set to exactly zero.
pub fn rotate_in_place<T: Scalar>(a: &mut SymMatrix<T>, p: PivotPair) -> Result<PlaneRotation<T>> {
    let angle = jacobi_angle(a, p)?;
    if angle.is_zero() {
        return Ok(PlaneRotation::identity(p, a.precision()));
    }
    let rot = PlaneRotation::new(p, angle);
    let (i, j) = p.rows();
    let (c, s) = (rot.cos.clone(), rot.sin.clone());
    let t = rot.angle.tan();
    let aij = a.get(i, j).clone();
    for r in (0..a.n()).filter(|&r| r != i && r != j) {
        let ari = a.get(r, i).clone();
        let arj = a.get(r, j).clone();
        a.set(r, i, c.clone() * ari.clone() + s.clone() * arj.clone());
        a.set(r, j, c.clone() * arj - s.clone() * ari);
    }
    let tij = t * aij;
    let aii = a.get(i, i).clone() + tij.clone();
    let ajj = a.get(j, j).clone() - tij;
    a.set(i, i, aii);
    a.set(j, j, ajj);
    a.set(i, j, T::zero(a.precision()));
    Ok(rot)
}

/// `Rᵀ A R` for the Jacobi rotation annihilating `a_ij`.
pub fn apply_jacobi_step<T: Scalar>(a: &SymMatrix<T>, p: PivotPair) -> Result<(SymMatrix<T>, PlaneRotation<T>)> {
    let mut out = a.clone();
    let rot = rotate_in_place(&mut out, p)?;
    Ok((out, rot))
}

/// Two commuting rotations on disjoint pairs, applied in the given order.
///
/// Debug builds also apply them in the opposite order and compare.
pub fn apply_parallel_step<T: Scalar>(
    a: &SymMatrix<T>,
    brace: (PivotPair, PivotPair),
) -> Result<(SymMatrix<T>, [PlaneRotation<T>; 2])> {
    let (p, q) = brace;
    if !p.is_disjoint(&q) {
        return Err(Error::NotDisjoint(p.to_string(), q.to_string()));
    }
    let mut out = a.clone();
    let first = rotate_in_place(&mut out, p)?;
    let second = rotate_in_place(&mut out, q)?;
    if cfg!(debug_assertions) {
        let mut swapped = a.clone();
        rotate_in_place(&mut swapped, q)?;
        rotate_in_place(&mut swapped, p)?;
        let scale = a.max_abs_entry().to_f64().max(f64::MIN_POSITIVE);
        let diff = out.max_abs_diff(&swapped)?.to_f64();
        debug_assert!(
            diff <= a.precision().slack(3) * scale,
            "rotations on {p} and {q} do not commute: {diff:e}"
        );
    }
    Ok((out, [first, second]))
}

/// `cycles · N` Jacobi steps under `strategy`. The hook sees the step number
/// `k` (1-based, the index of the produced state), the rotation and `A^(k)`.
pub fn sweep_with<T: Scalar>(
    a: &SymMatrix<T>,
    strategy: &CyclicStrategy,
    cycles: usize,
    mut hook: impl FnMut(usize, &PlaneRotation<T>, &SymMatrix<T>),
) -> Result<(SymMatrix<T>, AngleLog<T>)> {
    if strategy.n() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: strategy.n() });
    }
    let mut out = a.clone();
    let mut log = AngleLog::new();
    for k in 0..cycles * strategy.period() {
        let rot = rotate_in_place(&mut out, strategy.pair_at(k))?;
        hook(k + 1, &rot, &out);
        log.steps.push(rot);
    }
    Ok((out, log))
}

pub fn sweep<T: Scalar>(a: &SymMatrix<T>, strategy: &CyclicStrategy, cycles: usize) -> Result<(SymMatrix<T>, AngleLog<T>)> {
    sweep_with(a, strategy, cycles, |_, _, _| {})
}

/// The first `steps` Jacobi steps under `strategy`.
pub fn run_steps<T: Scalar>(a: &SymMatrix<T>, strategy: &CyclicStrategy, steps: usize) -> Result<SymMatrix<T>> {
    if strategy.n() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: strategy.n() });
    }
    let mut out = a.clone();
    for k in 0..steps {
        rotate_in_place(&mut out, strategy.pair_at(k))?;
    }
    Ok(out)
}

fn pair(i: usize, j: usize) -> PivotPair {
    PivotPair::new(i, j).expect("valid literal pair")
}

/// `(R(1,3,φ) R(2,4,ψ) Q)ᵀ A (R(1,3,φ) R(2,4,ψ) Q)` with `Q = [e1 e3 e4 -e2]`.
/// Returns the transformed matrix and `(φ, ψ)`.
pub fn t_operator<T: Scalar>(a: &SymMatrix<T>) -> Result<(SymMatrix<T>, T, T)> {
    if a.n() != 4 {
        return Err(Error::UnsupportedOrder { required: 4, found: a.n() });
    }
    let mut b = a.clone();
    let phi = rotate_in_place(&mut b, pair(1, 3))?.angle;
    let psi = rotate_in_place(&mut b, pair(2, 4))?.angle;
    Ok((conjugate_signed_perm(&b, &SignedPermutation::q4())?, phi, psi))
}

/// `k`-fold application of [`t_operator`].
pub fn t_iterate<T: Scalar>(a: &SymMatrix<T>, k: usize) -> Result<SymMatrix<T>> {
    if a.n() != 4 {
        return Err(Error::UnsupportedOrder { required: 4, found: a.n() });
    }
    let mut b = a.clone();
    for _ in 0..k {
        b = t_operator(&b)?.0;
    }
    Ok(b)
}

/// Dense product of plane rotations, `V = R_0 R_1 …`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationProduct<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> RotationProduct<T> {
    pub fn identity(n: usize, precision: Precision) -> Self {
        let mut data = vec![T::zero(precision); n * n];
        for r in 0..n {
            data[r * n + r] = T::one(precision);
        }
        RotationProduct { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, s: usize) -> &T {
        &self.data[r * self.n + s]
    }

    /// `V ← V R`.
    pub fn apply(&mut self, rot: &PlaneRotation<T>) {
        if rot.is_identity() {
            return;
        }
        let (i, j) = rot.pair.rows();
        let n = self.n;
        for r in 0..n {
            let vi = self.data[r * n + i].clone();
            let vj = self.data[r * n + j].clone();
            self.data[r * n + i] = rot.cos.clone() * vi.clone() + rot.sin.clone() * vj.clone();
            self.data[r * n + j] = rot.cos.clone() * vj - rot.sin.clone() * vi;
        }
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(<[T]>::to_vec).collect()
    }

    /// `max |VᵀV - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n;
        let p = self.data[0].precision();
        let mut worst = 0.0f64;
        for r in 0..n {
            for s in 0..n {
                let mut acc = T::zero(p);
                for t in 0..n {
                    acc = acc + self.get(t, r).clone() * self.get(t, s).clone();
                }
                let target = if r == s { T::one(p) } else { T::zero(p) };
                worst = worst.max((acc - target).abs().to_f64());
            }
        }
        worst
    }
}

/// Result of running a cyclic strategy until the off-norm is small.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub matrix: SymMatrix<T>,
    pub vectors: RotationProduct<T>,
    pub cycles: usize,
    pub off_norm: T,
    pub converged: bool,
}

impl<T: Scalar> Solution<T> {
    pub fn eigenvalues(&self) -> Vec<T> {
        self.matrix.diagonal()
    }

    pub fn sorted_eigenvalues(&self) -> Vec<T> {
        let mut d = self.eigenvalues();
        d.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
        d
    }
}

/// Default stopping threshold: `100 u ‖A‖_F`.
pub fn default_tolerance<T: Scalar>(a: &SymMatrix<T>) -> T {
    let fro = a.frobenius_sq().sqrt_unchecked();
    fro * T::from_f64(a.precision(), 100.0 * a.precision().unit_roundoff())
}

/// Runs full cycles until `S(A) <= tol` or `max_cycles` is reached. The cycle
/// count is the number of cycles performed before the test first passed.
pub fn solve<T: Scalar>(a: &SymMatrix<T>, strategy: &CyclicStrategy, tol: &T, max_cycles: usize) -> Result<Solution<T>> {
    if strategy.n() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: strategy.n() });
    }
    let mut m = a.clone();
    let mut v = RotationProduct::identity(a.n(), a.precision());
    let mut cycles = 0;
    let mut off = m.off_norm();
    while off > *tol && cycles < max_cycles {
        for k in 0..strategy.period() {
            let rot = rotate_in_place(&mut m, strategy.pair_at(k))?;
            v.apply(&rot);
        }
        cycles += 1;
        off = m.off_norm();
    }
    let converged = off <= *tol;
    Ok(Solution { matrix: m, vectors: v, cycles, off_norm: off, converged })
}
