//! Matrices on which one cycle under `I1` barely reduces the off-norm.

use crate::analysis::report::{CheckResult, Relation, TheoremReport};
use crate::error::{Error, Result};
use crate::kernel::{sweep, sweep_with, t_operator, PlaneRotation};
use crate::matrix::SymMatrix;
use crate::scalar::{scalar_sqrt, Precision, Scalar};
use crate::strategy::{ordering_i1, CyclicStrategy, PivotOrdering, PivotPair};

/// Working precision for the example table, which iterates on `H - I`.
pub const EXAMPLE_MIN_DIGITS: u32 = 100;

/// Working precision for iterating on `H` itself. Its diagonal stores
/// `1 + 1e-52 + 1e-78`, and the eighth step amplifies that rounding enough
/// to need 20 more digits.
pub const EXAMPLE_DIRECT_MIN_DIGITS: u32 = 120;

/// Decimal places printed in the example table.
pub const EXAMPLE_TABLE_DIGITS: usize = 50;

/// Upper end of the `ε` range for [`slow_matrix_h`].
pub const SLOW_EPS_MAX: &str = "1e-5";

/// Parameters of the slow families.
#[derive(Clone, Debug, PartialEq)]
pub struct SlowFamilyParams<T> {
    pub eps: T,
    pub n: usize,
    pub precision: Precision,
}

fn require_digits(precision: Precision, required: u32) -> Result<()> {
    let available = precision.decimal_digits();
    if available < required {
        return Err(Error::InsufficientPrecision { required, available });
    }
    Ok(())
}

fn c<T: Scalar>(p: Precision, s: &str) -> T {
    T::parse(p, s).expect("literal parses")
}

/// The 4×4 example matrix with `ε = 1e-52`, `p1 = ε`, `p2 = ε^1.5`.
///
/// The `(2,4)` and `(4,2)` entries are both `-ε`, the symmetric reading
/// consistent with `H(ε) + I`.
pub fn example_matrix_h<T: Scalar>(precision: Precision) -> Result<SymMatrix<T>> {
    require_digits(precision, EXAMPLE_DIRECT_MIN_DIGITS)?;
    let eps: T = c(precision, "1e-52");
    let p1 = eps.clone();
    let p2: T = c(precision, "1e-78");
    let one = T::one(precision);
    let zero = T::zero(precision);
    let rows = vec![
        vec![one.clone() + p1.clone() + p2.clone(), zero.clone(), eps.clone() + p1.clone(), p1.clone() - one.clone()],
        vec![zero.clone(), one.clone() + p2, one.clone(), -eps.clone()],
        vec![eps.clone() + p1.clone(), one.clone(), one.clone() + p1.clone(), zero.clone()],
        vec![p1 - one.clone(), -eps, zero, one],
    ];
    SymMatrix::from_rows(rows)
}

/// `H - I` for the example matrix. Rotations and off-norms are unchanged by
/// a diagonal shift, and this form holds every entry without cancellation.
pub fn example_matrix_h_shifted<T: Scalar>(precision: Precision) -> Result<SymMatrix<T>> {
    require_digits(precision, EXAMPLE_MIN_DIGITS)?;
    slow_entries(c(precision, "1e-52"), c(precision, "1e-78"))
}

fn slow_entries<T: Scalar>(e: T, e15: T) -> Result<SymMatrix<T>> {
    let p = e.precision();
    let one = T::one(p);
    let zero = T::zero(p);
    let two = T::from_f64(p, 2.0);
    let rows = vec![
        vec![e.clone() + e15.clone(), zero.clone(), two.clone() * e.clone(), e.clone() - one.clone()],
        vec![zero.clone(), e15, one.clone(), -e.clone()],
        vec![two * e.clone(), one.clone(), e.clone(), zero.clone()],
        vec![e.clone() - one, -e, zero.clone(), zero],
    ];
    SymMatrix::from_rows(rows)
}

/// `H(ε)` for `0 < ε <= 1e-5`.
pub fn slow_matrix_h<T: Scalar>(eps: &T) -> Result<SymMatrix<T>> {
    let p = eps.precision();
    if eps.is_sign_negative() || eps.is_zero() || *eps > c(p, SLOW_EPS_MAX) {
        return Err(Error::OutOfRange(format!("eps = {eps} must lie in (0, 1e-5]")));
    }
    slow_entries(eps.clone(), eps.clone() * scalar_sqrt(eps)?)
}

/// `max(30, ceil(4 |log10 ε|) + 30)` digits.
pub fn auto_precision(eps: f64) -> Precision {
    Precision::auto_for_epsilon(eps)
}

fn required_digits(eps: f64) -> u32 {
    auto_precision(eps).decimal_digits()
}

/// Runs one `I1` cycle on `H(ε)` and checks `S²(H6) > (1 - 17ε) S²(H0)`,
/// together with the first- and second-step reductions and angle signs of
/// the two-rotation operator.
pub fn verify_slow_sweep<T: Scalar>(eps: &T) -> Result<TheoremReport> {
    let p = eps.precision();
    let eps_f = eps.to_f64();
    require_digits(p, required_digits(eps_f))?;
    let h = slow_matrix_h(eps)?;
    let s2_0 = h.off_norm_sq();
    let (h6, _) = sweep(&h, &CyclicStrategy::i1(), 1)?;
    let s2_6 = h6.off_norm_sq();
    let one = T::one(p);
    let seventeen = T::from_f64(p, 17.0);
    let bound = (one.clone() - seventeen * eps.clone()) * s2_0.clone();
    let ratio = s2_6.clone() / s2_0.clone();
    let rel_drop = one.clone() - ratio.clone();
    let constant = rel_drop.clone() / eps.clone();

    let mut report = TheoremReport::new("prop52", p, None, 1);
    // The difference is tiny compared to either side, so compare it directly.
    let margin = (s2_6.clone() - bound) / s2_0.clone();
    report.push(CheckResult::new("s2_final_minus_bound_over_s2_initial", margin.to_f64(), Relation::Above, 0.0));
    report.push(CheckResult::new("observed_constant", constant.to_f64(), Relation::Below, 17.0));
    report.push(CheckResult::new("observed_constant_positive", constant.to_f64(), Relation::Above, 0.0));

    let (b1, phi1, psi1) = t_operator(&h)?;
    let (b2, phi2, psi2) = t_operator(&b1)?;
    let five_eps2 = T::from_f64(p, 5.0) * eps.square();
    let first = s2_0.clone() - b1.off_norm_sq();
    let first_dev = ((first.clone() - five_eps2.clone()) / five_eps2).abs();
    report.push(CheckResult::new("first_reduction_rel_dev_from_5eps2", first_dev.to_f64(), Relation::AtMost, 1e-20));
    let second = (b1.off_norm_sq() - b2.off_norm_sq()) / eps.clone();
    report.push(CheckResult::new("second_reduction_over_eps", second.to_f64(), Relation::Below, 0.29033));
    let third = (b2.off_norm_sq() - t_operator(&b2)?.0.off_norm_sq()) / eps.clone();
    report.push(CheckResult::new("third_reduction_over_eps", third.to_f64(), Relation::AtMost, 32.273));
    let signs = [
        !phi1.is_sign_negative() && !phi1.is_zero(),
        psi1.is_sign_negative(),
        b1.get(0, 2).is_sign_negative(),
        b1.get(1, 3).is_sign_negative(),
        phi2.is_sign_negative(),
        !psi2.is_sign_negative() && !psi2.is_zero(),
    ];
    let sign_failures = signs.iter().filter(|ok| !**ok).count();
    report.push(CheckResult::new("angle_and_pivot_sign_failures", sign_failures as f64, Relation::AtMost, 0.0));

    report.value("eps", eps.to_sci_string());
    report.value("s2_initial", s2_0.to_sci_string());
    report.value("s2_final", s2_6.to_sci_string());
    report.value("ratio", ratio.to_sci_string());
    report.value("observed_constant", constant.to_sci_string());
    report.value("first_reduction", first.to_sci_string());
    Ok(report)
}

/// `ε'` used for the leading block: `(2ε - ε²)/17` below `1e-5`, otherwise
/// `(2·1e-5 - 1e-10)/17`.
pub fn leading_eps<T: Scalar>(eps: &T) -> Result<T> {
    let p = eps.precision();
    if eps.is_sign_negative() || eps.is_zero() || *eps >= T::one(p) {
        return Err(Error::OutOfRange(format!("eps = {eps} must lie in (0, 1)")));
    }
    let two = T::from_f64(p, 2.0);
    let seventeen = T::from_f64(p, 17.0);
    let threshold: T = c(p, SLOW_EPS_MAX);
    Ok(if *eps < threshold {
        (two * eps.clone() - eps.square()) / seventeen
    } else {
        (two * threshold - c(p, "1e-10")) / seventeen
    })
}

fn block_orderings(n: usize) -> Result<PivotOrdering> {
    let mut pairs: Vec<PivotPair> = ordering_i1().pairs().to_vec();
    for i in 5..=n {
        for j in i + 1..=n {
            pairs.push(PivotPair::new(i, j)?);
        }
    }
    for i in 1..=4 {
        for j in 5..=n {
            pairs.push(PivotPair::new(i, j)?);
        }
    }
    PivotOrdering::cyclic(n, pairs)
}

fn trailing_diagonal<T: Scalar>(lead: &SymMatrix<T>, m: usize) -> Vec<T> {
    let p = lead.precision();
    let base = lead.frobenius_sq().sqrt_unchecked() + T::one(p);
    (0..m).map(|r| base.clone() + T::from_f64(p, (r + 1) as f64)).collect()
}

/// `A(ε) = diag(H(ε'), D)` with `D` diagonal, and the ordering that runs
/// `I1` on the leading block, then the trailing pairs row by row, then the
/// cross pairs row by row.
pub fn slow_matrix_general<T: Scalar>(eps: &T, n: usize) -> Result<(SymMatrix<T>, PivotOrdering)> {
    if n < 4 {
        return Err(Error::UnsupportedOrder { required: 4, found: n });
    }
    let lead = slow_matrix_h(&leading_eps(eps)?)?;
    if n == 4 {
        return Ok((lead, ordering_i1()));
    }
    let diag = trailing_diagonal(&lead, n - 4);
    let a = SymMatrix::from_upper(n, lead.precision(), |r, s| match (r < 4, s < 4) {
        (true, true) => lead.get(r, s).clone(),
        (false, false) if r == s => diag[r - 4].clone(),
        _ => T::zero(lead.precision()),
    })?;
    Ok((a, block_orderings(n)?))
}

/// Variant with every off-diagonal entry outside the leading block nonzero:
/// the leading block comes from `ε/2`, `‖A12‖_F = ε^ν S(A11)` with
/// `n ε^(ν-2) = ε`, and `S(A22) = ε² S(A11)`. The trailing diagonal lies
/// beyond `‖A11‖_F + 1`.
pub fn slow_matrix_general_dense<T: Scalar>(eps: &T, n: usize) -> Result<(SymMatrix<T>, PivotOrdering)> {
    if n < 5 {
        return Err(Error::UnsupportedOrder { required: 5, found: n });
    }
    let p = eps.precision();
    let half = eps.clone() / T::from_f64(p, 2.0);
    let lead = slow_matrix_h(&leading_eps(&half)?)?;
    let s11 = lead.off_norm();
    let m = n - 4;
    let e = eps.to_f64();
    let nu = 3.0 + (n as f64).ln() / (1.0 / e).ln();
    // For this ν, ε^ν = ε³/n exactly.
    let eps_nu = eps.clone() * eps.square() / T::from_f64(p, n as f64);
    debug_assert!((eps_nu.to_f64() / e.powf(nu) - 1.0).abs() < 1e-6);
    let weights: Vec<f64> = (0..4 * m).map(|k| 1.0 + ((7 * k + 3) % 5) as f64).collect();
    let wnorm = T::from_f64(p, weights.iter().map(|w| w * w).sum::<f64>()).sqrt_unchecked();
    let cross_scale = eps_nu * s11.clone() / wnorm;
    let trailing_off = if m >= 2 {
        eps.square() * s11 / T::from_f64(p, (m * (m - 1) / 2) as f64).sqrt_unchecked()
    } else {
        T::zero(p)
    };
    let diag = trailing_diagonal(&lead, m);
    let a = SymMatrix::from_upper(n, p, |r, s| {
        if r < 4 && s < 4 {
            lead.get(r, s).clone()
        } else if r < 4 {
            cross_scale.clone() * T::from_f64(p, weights[r * m + (s - 4)])
        } else if r == s {
            diag[r - 4].clone()
        } else {
            trailing_off.clone()
        }
    })?;
    Ok((a, block_orderings(n)?))
}

/// Runs one cycle of the block construction and checks
/// `S(A^(N)) > (1 - ε) S(A)` and that every rotation outside the leading
/// block is the identity.
pub fn verify_slow_general<T: Scalar>(eps: &T, n: usize, dense: bool) -> Result<TheoremReport> {
    let p = eps.precision();
    let (a, ord) = if dense { slow_matrix_general_dense(eps, n)? } else { slow_matrix_general(eps, n)? };
    let strategy = CyclicStrategy::new(ord)?;
    let mut outside_nonzero = 0usize;
    let (out, _) = sweep_with(&a, &strategy, 1, |_, rot: &PlaneRotation<T>, _| {
        if rot.pair.j() > 4 && !rot.angle.is_zero() {
            outside_nonzero += 1;
        }
    })?;
    let s0 = a.off_norm();
    let sn = out.off_norm();
    let ratio = sn.clone() / s0.clone();
    let one_minus = T::one(p) - eps.clone();
    let mut report = TheoremReport::new(if dense { "thm53_dense" } else { "thm53" }, p, None, 1);
    let margin = ratio.clone() - one_minus;
    report.push(CheckResult::new("ratio_minus_one_minus_eps", margin.to_f64(), Relation::Above, 0.0));
    if !dense {
        report.push(CheckResult::new("nonzero_angles_outside_leading_block", outside_nonzero as f64, Relation::AtMost, 0.0));
    }
    report.value("n", n);
    report.value("eps", eps.to_sci_string());
    report.value("ratio", ratio.to_sci_string());
    report.value("s_initial", s0.to_sci_string());
    report.value("s_final", sn.to_sci_string());
    Ok(report)
}

/// Mantissa-style rendering truncated to `decimals` places after the point:
/// `d.ddd` in `[1, 10)`, `0.ddd` in `[0.1, 1)`, otherwise `0.ddde<exp>`.
pub fn format_decimals<T: Scalar>(x: &T, decimals: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let (_, _, probe) = x.to_truncated_digits(decimals + 1);
    let digits = if probe == 1 { decimals + 1 } else { decimals };
    let (neg, mut d, exp) = x.to_truncated_digits(digits);
    while d.len() < digits {
        d.push('0');
    }
    let sign = if neg { "-" } else { "" };
    match exp {
        1 => format!("{sign}{}.{}", &d[..1], &d[1..]),
        0 => format!("{sign}0.{d}"),
        e => format!("{sign}0.{d}e{e}"),
    }
}

/// One row of the example table: step, pivot pair, `S(H^(k))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow<T> {
    pub k: usize,
    pub pair: PivotPair,
    pub off_norm: T,
    pub printed: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleTable<T> {
    pub initial: T,
    pub initial_printed: String,
    pub rows: Vec<TableRow<T>>,
}

impl<T: Scalar> ExampleTable<T> {
    pub fn to_text(&self) -> String {
        let mut out = format!("S(H) = {}\n", self.initial_printed);
        out.push_str(&format!("{:>2}  {:<6}  S(H^(k))\n", "k", "pair"));
        for r in &self.rows {
            out.push_str(&format!("{:>2}  {:<6}  {}\n", r.k, r.pair.to_string(), r.printed));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,pivot_i,pivot_j,S\n");
        out.push_str(&format!("0,,,{}\n", self.initial_printed));
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.k, r.pair.i(), r.pair.j(), r.printed));
        }
        out
    }
}

/// The first eight steps of `I1` on the example matrix, iterated on
/// [`example_matrix_h_shifted`].
pub fn reproduce_example_table<T: Scalar>(precision: Precision) -> Result<ExampleTable<T>> {
    example_table_from(example_matrix_h_shifted::<T>(precision)?)
}

/// The same table iterated on [`example_matrix_h`] itself.
pub fn reproduce_example_table_direct<T: Scalar>(precision: Precision) -> Result<ExampleTable<T>> {
    example_table_from(example_matrix_h::<T>(precision)?)
}

fn example_table_from<T: Scalar>(h: SymMatrix<T>) -> Result<ExampleTable<T>> {
    let strategy = CyclicStrategy::i1();
    let mut m = h.clone();
    let mut rows = Vec::new();
    for k in 0..8 {
        let rot = crate::kernel::rotate_in_place(&mut m, strategy.pair_at(k))?;
        let s = m.off_norm();
        rows.push(TableRow { k: k + 1, pair: rot.pair, printed: format_decimals(&s, EXAMPLE_TABLE_DIGITS), off_norm: s });
    }
    let initial = h.off_norm();
    Ok(ExampleTable { initial_printed: format_decimals(&initial, EXAMPLE_TABLE_DIGITS), initial, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;
    use crate::strategy::equivalent;

    fn big(d: u32) -> Precision {
        Precision::big(d).unwrap()
    }

    fn b(p: Precision, s: &str) -> BigFloat {
        BigFloat::parse(p, s).unwrap()
    }

    const ROOT2_50: &str = "1.41421356237309504880168872420969807856967187537694";

    #[test]
    fn example_matrix_entries() {
        let p = big(120);
        let h = example_matrix_h::<BigFloat>(p).unwrap();
        assert!(h.get(0, 1).is_zero());
        assert_eq!(*h.get(0, 3), b(p, "-0.9999999999999999999999999999999999999999999999999999"));
        assert_eq!(h.get(1, 3), h.get(3, 1));
        assert_eq!(format_decimals(&h.off_norm(), 50), ROOT2_50);
        assert!(matches!(example_matrix_h::<f64>(Precision::Hardware64), Err(Error::InsufficientPrecision { .. })));
        assert!(example_matrix_h::<BigFloat>(big(100)).is_err());
        let shifted = example_matrix_h_shifted::<BigFloat>(p).unwrap();
        let one = b(p, "1");
        for r in 0..4 {
            for s in 0..4 {
                let back = if r == s { shifted.get(r, s).clone() + one.clone() } else { shifted.get(r, s).clone() };
                assert!((back - h.get(r, s).clone()).abs().to_f64() < 1e-118);
            }
        }
        assert!(example_matrix_h_shifted::<BigFloat>(big(60)).is_err());
    }

    #[test]
    fn slow_matrix_entries_and_off_norm() {
        let p = big(60);
        let e = b(p, "1e-6");
        let h = slow_matrix_h(&e).unwrap();
        assert_eq!(*h.get(0, 2), b(p, "2e-6"));
        assert_eq!(*h.get(1, 3), b(p, "-1e-6"));
        assert!(h.get(2, 3).is_zero() && h.get(3, 3).is_zero() && h.get(0, 1).is_zero());
        // (2ε)² + (ε-1)² + 1 + ε² = 2 - 2ε + 6ε².
        let expect = b(p, "2") - b(p, "2e-6") + b(p, "6e-12");
        assert!((h.off_norm_sq() - expect).abs().to_f64() < 1e-58);
        assert!(slow_matrix_h(&b(p, "2e-5")).is_err());
        assert!(slow_matrix_h(&b(p, "0")).is_err());
        assert!(slow_matrix_h(&b(p, "-1e-6")).is_err());
    }

    const ROW7: &str = "0.99999999999999999999999999999999999999999999999999";
    const ROW8: &str = "0.17677669529663688110021108266947024663734760219051e-26";

    fn assert_table(t: &ExampleTable<BigFloat>) {
        assert_eq!(t.initial_printed, ROOT2_50);
        let pairs: Vec<String> = t.rows.iter().map(|r| r.pair.to_string()).collect();
        assert_eq!(pairs, ["(1,3)", "(2,4)", "(1,4)", "(2,3)", "(1,2)", "(3,4)", "(1,3)", "(2,4)"]);
        for r in &t.rows[..6] {
            assert_eq!(r.printed, ROOT2_50, "row {}", r.k);
        }
        assert_eq!(t.rows[6].printed, ROW7);
        assert_eq!(t.rows[7].printed, ROW8);
    }

    #[test]
    fn example_table_at_100_digits() {
        assert_table(&reproduce_example_table::<BigFloat>(big(100)).unwrap());
        assert!(reproduce_example_table::<BigFloat>(big(90)).is_err());
    }

    #[test]
    fn example_table_direct_at_120_digits() {
        assert_table(&reproduce_example_table_direct::<BigFloat>(big(120)).unwrap());
    }

    #[test]
    fn example_table_rendering() {
        let t = reproduce_example_table::<BigFloat>(big(100)).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("k,pivot_i,pivot_j,S\n0,,,1.414"));
        assert!(csv.contains(&format!("8,2,4,{ROW8}\n")));
        assert!(t.to_text().contains(&format!(" 7  (1,3)   {ROW7}")));
    }

    #[test]
    fn significant_formatting() {
        let p = big(60);
        assert_eq!(format_decimals(&b(p, "1.23456"), 3), "1.234");
        assert_eq!(format_decimals(&b(p, "9.99999"), 2), "9.99");
        assert_eq!(format_decimals(&b(p, "0.99999"), 3), "0.999");
        assert_eq!(format_decimals(&b(p, "1.7e-27"), 3), "0.170e-26");
        assert_eq!(format_decimals(&b(p, "-0.5"), 2), "-0.50");
        assert_eq!(format_decimals(&b(p, "0"), 2), "0");
    }

    #[test]
    fn leading_eps_case_split() {
        let p = big(40);
        let small = leading_eps(&b(p, "1e-6")).unwrap();
        let expect = (b(p, "2e-6") - b(p, "1e-12")) / b(p, "17");
        assert_eq!(small, expect);
        let large = leading_eps(&b(p, "1e-3")).unwrap();
        assert_eq!(large, (b(p, "2e-5") - b(p, "1e-10")) / b(p, "17"));
        assert!(leading_eps(&b(p, "1")).is_err());
    }

    #[test]
    fn general_construction_shapes() {
        let p = big(40);
        let e = b(p, "1e-3");
        let (a4, o4) = slow_matrix_general(&e, 4).unwrap();
        assert_eq!(a4, slow_matrix_h(&leading_eps(&e).unwrap()).unwrap());
        assert!(equivalent(&o4, &ordering_i1()).unwrap() && o4 == ordering_i1());
        let (a6, o6) = slow_matrix_general(&e, 6).unwrap();
        assert_eq!(o6.len(), 15);
        assert!(o6.is_cyclic());
        assert_eq!(&o6.pairs()[..6], ordering_i1().pairs());
        assert_eq!(o6.pairs()[6], PivotPair::new(5, 6).unwrap());
        assert_eq!(o6.pairs()[7], PivotPair::new(1, 5).unwrap());
        for r in 0..6 {
            for s in 0..6 {
                if (r >= 4 || s >= 4) && r != s {
                    assert!(a6.get(r, s).is_zero());
                }
            }
        }
        let (d8, _) = slow_matrix_general_dense(&e, 8).unwrap();
        for r in 0..8 {
            for s in 4..8 {
                assert!(!d8.get(r, s).is_zero());
            }
        }
        assert!(slow_matrix_general(&e, 3).is_err());
    }

    #[test]
    fn dense_variant_norm_conditions() {
        let p = big(50);
        let e = b(p, "1e-2");
        let n = 6;
        let (a, _) = slow_matrix_general_dense(&e, n).unwrap();
        let a11 = a.leading_block(4).unwrap();
        let s11 = a11.off_norm().to_f64();
        let cross: f64 = (0..4).flat_map(|r| (4..n).map(move |s| (r, s))).map(|(r, s)| a.get(r, s).to_f64().powi(2)).sum();
        let nu = 3.0 + (n as f64).ln() / 100f64.ln();
        assert!((cross.sqrt() / (0.01f64.powf(nu) * s11) - 1.0).abs() < 1e-9);
        assert!(n as f64 * 0.01f64.powf(nu - 2.0) < 1.0);
        let trailing = ((a.off_norm_sq().to_f64() - a11.off_norm_sq().to_f64()) - cross).sqrt();
        assert!((trailing / (1e-4 * s11) - 1.0).abs() < 1e-6);
        let bound = a11.frobenius_sq().to_f64().sqrt() + 1.0;
        for i in 4..n {
            assert!(a.get(i, i).to_f64() > bound);
        }
    }

    #[test]
    fn slow_sweep_needs_precision() {
        let e = BigFloat::parse(big(40), "1e-6").unwrap();
        assert!(matches!(verify_slow_sweep(&e), Err(Error::InsufficientPrecision { required: 54, .. })));
    }
}
