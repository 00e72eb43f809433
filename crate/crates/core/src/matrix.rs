//! Dense symmetric matrices, the off-norm, and signed permutations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{scalar_sqrt, Precision, Scalar};

/// Dense symmetric matrix of order `n >= 2`, stored row-major.
///
/// Every mutation goes through [`SymMatrix::set`], which writes both
/// triangles from one value, so `a[r][s] == a[s][r]` holds bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    precision: Precision,
    data: Vec<T>,
}

/// On-disk matrix format: row-major decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<String>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize, precision: Precision) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        Ok(SymMatrix { n, precision, data: vec![T::zero(precision); n * n] })
    }

    pub fn identity(n: usize, precision: Precision) -> Result<Self> {
        let mut m = Self::zeros(n, precision)?;
        for r in 0..n {
            m.set(r, r, T::one(precision));
        }
        Ok(m)
    }

    /// Builds a matrix from `f(r, s)` evaluated on the upper triangle.
    pub fn from_upper(n: usize, precision: Precision, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut m = Self::zeros(n, precision)?;
        for r in 0..n {
            for s in r..n {
                m.set(r, s, f(r, s));
            }
        }
        Ok(m)
    }

    /// Builds a matrix from full rows, rejecting asymmetric input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for r in 0..n {
            for s in r + 1..n {
                if rows[r][s] != rows[s][r] {
                    return Err(Error::NotSymmetric { row: r, col: s });
                }
            }
        }
        let precision = rows[0][0].precision();
        let data = rows.into_iter().flatten().collect();
        Ok(SymMatrix { n, precision, data })
    }

    /// Builds a matrix from binary64 rows (exact for every backend).
    pub fn from_f64_rows(precision: Precision, rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| T::from_f64(precision, v)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Entry at zero-based `(r, s)`.
    pub fn get(&self, r: usize, s: usize) -> &T {
        &self.data[r * self.n + s]
    }

    /// Writes `value` to `(r, s)` and `(s, r)`.
    pub fn set(&mut self, r: usize, s: usize, value: T) {
        let n = self.n;
        if r != s {
            self.data[s * n + r] = value.clone();
        }
        self.data[r * n + s] = value;
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|r| self.get(r, r).clone()).collect()
    }

    /// Sum of squares of the strictly upper triangle.
    pub fn off_norm_sq(&self) -> T {
        let mut acc = T::zero(self.precision);
        for r in 0..self.n {
            for s in r + 1..self.n {
                acc = acc + self.get(r, s).square();
            }
        }
        acc
    }

    /// The off-norm `S(X) = sqrt(sum_{r<s} x_rs^2)`.
    pub fn off_norm(&self) -> T {
        scalar_sqrt(&self.off_norm_sq()).expect("sum of squares is nonnegative")
    }

    pub fn frobenius_sq(&self) -> T {
        self.data.iter().fold(T::zero(self.precision), |acc, v| acc + v.square())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|r| (r + 1..self.n).all(|s| self.get(r, s).is_zero()))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(T::zero(self.precision), |acc, (a, b)| acc.max_of((a.clone() - b.clone()).abs())))
    }

    pub fn max_abs_entry(&self) -> T {
        self.data.iter().fold(T::zero(self.precision), |acc, v| acc.max_of(v.abs()))
    }

    /// Re-expresses the matrix in another backend or precision.
    pub fn convert<U: Scalar>(&self, precision: Precision) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            precision,
            data: self.data.iter().map(|v| v.convert(precision)).collect(),
        }
    }

    /// Block-diagonal matrix `diag(self, trailing)`.
    pub fn with_trailing_block(&self, trailing: &SymMatrix<T>) -> Result<SymMatrix<T>> {
        let m = self.n;
        let n = m + trailing.n;
        let mut out = Self::zeros(n, self.precision)?;
        for r in 0..m {
            for s in r..m {
                out.set(r, s, self.get(r, s).clone());
            }
        }
        for r in 0..trailing.n {
            for s in r..trailing.n {
                out.set(m + r, m + s, trailing.get(r, s).clone());
            }
        }
        Ok(out)
    }

    /// Leading `k × k` principal block.
    pub fn leading_block(&self, k: usize) -> Result<SymMatrix<T>> {
        if k > self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: k });
        }
        Self::from_upper(k, self.precision, |r, s| self.get(r, s).clone())
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile { n: self.n, entries: self.data.iter().map(Scalar::to_sci_string).collect() }
    }

    pub fn from_file(file: &MatrixFile, precision: Precision) -> Result<Self> {
        if file.entries.len() != file.n * file.n {
            return Err(Error::Parse(format!(
                "expected {} entries for n = {}, found {}",
                file.n * file.n,
                file.n,
                file.entries.len()
            )));
        }
        let values = file
            .entries
            .iter()
            .map(|s| T::parse(precision, s))
            .collect::<Result<Vec<_>>>()?;
        let rows = values.chunks(file.n.max(1)).map(<[T]>::to_vec).collect();
        Self::from_rows(rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("matrix file serializes")
    }

    pub fn from_json(s: &str, precision: Precision) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(s)?;
        Self::from_file(&file, precision)
    }

    /// One row per line, comma separated decimal strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|s| self.get(r, s).to_sci_string()).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// A signed permutation matrix `Q` with `Q e_c = sign_c · e_{image_c}`.
///
/// The column form matches the usual notation `Q = [e_1 e_3 e_4 -e_2]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    /// Zero-based target row and sign of each column.
    columns: Vec<(usize, i8)>,
}

impl SignedPermutation {
    /// Builds from zero-based `(image, sign)` column descriptions.
    pub fn new(columns: Vec<(usize, i8)>) -> Result<Self> {
        let n = columns.len();
        let mut seen = vec![false; n];
        for &(image, sign) in &columns {
            if image >= n || seen[image] {
                return Err(Error::InvalidPermutation(format!("index map is not a bijection: {columns:?}")));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidPermutation(format!("sign {sign} not in {{+1, -1}}")));
            }
            seen[image] = true;
        }
        Ok(SignedPermutation { columns })
    }

    /// Builds from the column notation `[±e_a, ±e_b, ...]` with 1-based `a, b`.
    pub fn from_columns(signed_unit_vectors: &[i32]) -> Result<Self> {
        let cols = signed_unit_vectors
            .iter()
            .map(|&v| {
                if v == 0 {
                    Err(Error::InvalidPermutation("e_0 does not exist".into()))
                } else {
                    Ok(((v.unsigned_abs() - 1) as usize, v.signum() as i8))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cols)
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { columns: (0..n).map(|c| (c, 1)).collect() }
    }

    /// The transposition `P_ij` (1-based), all signs positive.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::InvalidPermutation(format!("P_{i}{j} undefined for order {n}")));
        }
        let mut p = Self::identity(n);
        p.columns.swap(i - 1, j - 1);
        Ok(p)
    }

    /// `Q = [e_1 e_3 e_4 -e_2]`, which keeps the parallel pivot positions fixed.
    pub fn q4() -> Self {
        Self::from_columns(&[1, 3, 4, -2]).expect("valid signed permutation")
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn is_pure_permutation(&self) -> bool {
        self.columns.iter().all(|&(_, s)| s == 1)
    }

    /// Column notation: `+a` for `e_a`, `-a` for `-e_a` (1-based).
    pub fn to_columns(&self) -> Vec<i32> {
        self.columns.iter().map(|&(img, s)| s as i32 * (img as i32 + 1)).collect()
    }

    /// Zero-based `(image, sign)` of column `c`.
    pub fn column(&self, c: usize) -> (usize, i8) {
        self.columns[c]
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        let columns = other
            .columns
            .iter()
            .map(|&(img, sign)| {
                let (img2, sign2) = self.columns[img];
                (img2, sign * sign2)
            })
            .collect();
        Ok(SignedPermutation { columns })
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![(0, 1); self.n()];
        for (c, &(img, sign)) in self.columns.iter().enumerate() {
            columns[img] = (c, sign);
        }
        SignedPermutation { columns }
    }

    pub fn power(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n());
        for _ in 0..k {
            out = self.compose(&out).expect("same order");
        }
        out
    }

    /// Dense copy, used by tests that multiply matrices directly.
    pub fn to_dense(&self) -> Vec<Vec<i32>> {
        let n = self.n();
        let mut m = vec![vec![0; n]; n];
        for (c, &(img, sign)) in self.columns.iter().enumerate() {
            m[img][c] = sign as i32;
        }
        m
    }
}

/// `S(X)`.
pub fn off_norm<T: Scalar>(x: &SymMatrix<T>) -> T {
    x.off_norm()
}

/// `Qᵀ X Q`, computed as `(QᵀXQ)_rs = sign_r sign_s x_{img_r, img_s}`.
pub fn conjugate_signed_perm<T: Scalar>(x: &SymMatrix<T>, q: &SignedPermutation) -> Result<SymMatrix<T>> {
    if x.n() != q.n() {
        return Err(Error::DimensionMismatch { expected: x.n(), found: q.n() });
    }
    SymMatrix::from_upper(x.n(), x.precision(), |r, s| {
        let (ir, sr) = q.column(r);
        let (is, ss) = q.column(s);
        let v = x.get(ir, is).clone();
        if sr * ss < 0 {
            -v
        } else {
            v
        }
    })
}

/// `Q^k`.
pub fn signed_perm_power(q: &SignedPermutation, k: u32) -> SignedPermutation {
    q.power(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;

    const HW: Precision = Precision::Hardware64;

    /// Dense reference product `AᵀXB` with integer-valued `A`, `B`.
    fn dense_congruence(x: &SymMatrix<f64>, q: &[Vec<i32>]) -> Vec<Vec<f64>> {
        let n = x.n();
        let mut xq = vec![vec![0.0; n]; n];
        for r in 0..n {
            for s in 0..n {
                xq[r][s] = (0..n).map(|t| x.get(r, t) * q[t][s] as f64).sum();
            }
        }
        let mut out = vec![vec![0.0; n]; n];
        for r in 0..n {
            for s in 0..n {
                out[r][s] = (0..n).map(|t| q[t][r] as f64 * xq[t][s]).sum();
            }
        }
        out
    }

    fn numbered4() -> SymMatrix<f64> {
        // x_rs = 10 r + s on the upper triangle, distinct so positions are traceable.
        SymMatrix::from_upper(4, HW, |r, s| (10 * (r + 1) + (s + 1)) as f64).unwrap()
    }

    #[test]
    fn off_norm_of_identity_is_zero() {
        let i = SymMatrix::<f64>::identity(5, HW).unwrap();
        assert_eq!(off_norm(&i), 0.0);
        assert!(i.is_diagonal());
    }

    #[test]
    fn off_norm_three_four_five() {
        let mut x = SymMatrix::<f64>::identity(4, HW).unwrap();
        x.set(0, 1, 3.0);
        x.set(2, 3, 4.0);
        assert_eq!(off_norm(&x), 5.0);
    }

    #[test]
    fn symmetric_write_and_rejection() {
        let mut x = SymMatrix::<f64>::zeros(3, HW).unwrap();
        x.set(2, 0, 7.5);
        assert_eq!(*x.get(0, 2), 7.5);
        let bad = SymMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 1.0]]);
        assert!(matches!(bad, Err(Error::NotSymmetric { row: 0, col: 1 })));
        assert!(matches!(SymMatrix::<f64>::zeros(1, HW), Err(Error::OrderTooSmall(1))));
    }

    #[test]
    fn q_action_matches_displayed_layout() {
        let x = numbered4();
        let y = conjugate_signed_perm(&x, &SignedPermutation::q4()).unwrap();
        let e = |r: usize, s: usize| *x.get(r - 1, s - 1);
        let expected = [
            [e(1, 1), e(1, 3), e(1, 4), -e(1, 2)],
            [e(3, 1), e(3, 3), e(3, 4), -e(3, 2)],
            [e(4, 1), e(4, 3), e(4, 4), -e(4, 2)],
            [-e(2, 1), -e(2, 3), -e(2, 4), e(2, 2)],
        ];
        for r in 0..4 {
            for s in 0..4 {
                assert_eq!(*y.get(r, s), expected[r][s], "({r},{s})");
            }
        }
        assert_eq!(*y.get(0, 1), e(1, 3));
        assert_eq!(*y.get(0, 3), -e(1, 2));
    }

    #[test]
    fn q_transpose_action_matches_displayed_layout() {
        let x = numbered4();
        let y = conjugate_signed_perm(&x, &SignedPermutation::q4().transpose()).unwrap();
        let e = |r: usize, s: usize| *x.get(r - 1, s - 1);
        let expected = [
            [e(1, 1), -e(1, 4), e(1, 2), e(1, 3)],
            [-e(4, 1), e(4, 4), -e(4, 2), -e(4, 3)],
            [e(2, 1), -e(2, 4), e(2, 2), e(2, 3)],
            [e(3, 1), -e(3, 4), e(3, 2), e(3, 3)],
        ];
        for r in 0..4 {
            for s in 0..4 {
                assert_eq!(*y.get(r, s), expected[r][s], "({r},{s})");
            }
        }
    }

    #[test]
    fn conjugation_agrees_with_dense_product() {
        let x = numbered4();
        for q in [SignedPermutation::q4(), SignedPermutation::q4().power(2), SignedPermutation::transposition(4, 1, 2).unwrap()] {
            let y = conjugate_signed_perm(&x, &q).unwrap();
            let dense = dense_congruence(&x, &q.to_dense());
            for r in 0..4 {
                for s in 0..4 {
                    assert_eq!(*y.get(r, s), dense[r][s]);
                }
            }
        }
    }

    #[test]
    fn identity_fixed_by_conjugation() {
        let i = SymMatrix::<f64>::identity(4, HW).unwrap();
        assert_eq!(conjugate_signed_perm(&i, &SignedPermutation::q4()).unwrap(), i);
    }

    #[test]
    fn dimension_mismatch() {
        let x = SymMatrix::<f64>::identity(3, HW).unwrap();
        assert!(matches!(
            conjugate_signed_perm(&x, &SignedPermutation::q4()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn q_power_table() {
        let q = SignedPermutation::q4();
        let table: [[i32; 4]; 7] = [
            [1, 2, 3, 4],
            [1, 3, 4, -2],
            [1, 4, -2, -3],
            [1, -2, -3, -4],
            [1, -3, -4, 2],
            [1, -4, 2, 3],
            [1, 2, 3, 4],
        ];
        for (k, cols) in table.iter().enumerate() {
            assert_eq!(signed_perm_power(&q, k as u32).to_columns(), cols.to_vec(), "Q^{k}");
        }
        assert_eq!(signed_perm_power(&q, 0), SignedPermutation::identity(4));
        assert_eq!(signed_perm_power(&q, 6), SignedPermutation::identity(4));
    }

    #[test]
    fn permutation_validation() {
        assert!(SignedPermutation::new(vec![(0, 1), (0, 1)]).is_err());
        assert!(SignedPermutation::new(vec![(0, 2), (1, 1)]).is_err());
        assert!(SignedPermutation::transposition(4, 3, 3).is_err());
        let q = SignedPermutation::q4();
        assert_eq!(q.compose(&q.transpose()).unwrap(), SignedPermutation::identity(4));
    }

    #[test]
    fn json_round_trip_big() {
        let p = Precision::big(60).unwrap();
        let third = BigFloat::one(p) / BigFloat::from_f64(p, 3.0);
        let x = SymMatrix::from_upper(3, p, |r, s| third.clone() * BigFloat::from_f64(p, (r + 2 * s) as f64)).unwrap();
        let back = SymMatrix::<BigFloat>::from_json(&x.to_json(), p).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn json_rejects_wrong_length() {
        let err = SymMatrix::<f64>::from_json(r#"{"n":2,"entries":["1","0","0"]}"#, HW);
        assert!(matches!(err, Err(Error::Parse(_))));
    }

    #[test]
    fn csv_layout() {
        let x = SymMatrix::<f64>::from_f64_rows(HW, &[&[1.0, 0.5], &[0.5, -2.0]]).unwrap();
        assert_eq!(x.to_csv(), "1e0,5e-1\n5e-1,-2e0\n");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn sym4() -> impl Strategy<Value = SymMatrix<f64>> {
            proptest::collection::vec(-1.0f64..1.0, 10).prop_map(|v| {
                let mut it = v.into_iter();
                SymMatrix::from_upper(4, HW, |_, _| it.next().unwrap()).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn off_norm_is_half_frobenius_of_off_diagonal(x in sym4()) {
                let mut off = x.clone();
                for r in 0..4 { off.set(r, r, 0.0); }
                let half_frob = 0.5 * off.frobenius_sq();
                prop_assert!((x.off_norm_sq() - half_frob).abs() <= 1e-15 * (1.0 + half_frob));
            }

            #[test]
            fn q_conjugation_preserves_off_norm(x in sym4(), k in 0u32..6) {
                let y = conjugate_signed_perm(&x, &SignedPermutation::q4().power(k)).unwrap();
                prop_assert!((y.off_norm() - x.off_norm()).abs() <= 1e-15 * (1.0 + x.off_norm()));
            }

            #[test]
            fn powers_add(a in 0u32..20, b in 0u32..20) {
                let q = SignedPermutation::q4();
                prop_assert_eq!(q.power(a + b), q.power(a).compose(&q.power(b)).unwrap());
            }
        }
    }
}
