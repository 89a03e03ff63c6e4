//! Floating-point finite sections: correctly rounded dense matrices,
//! deterministic norm estimation, shift-conjugation decay tables, and
//! standard-format export. Nothing here feeds an exact verdict; the
//! float layer is illustrative and for interchange with outside tools.

use crate::coeff::coeff_to_complex_f64;
use crate::error::{Error, Result};
use crate::lattice::{MultiIndex, SpaceKind};
use crate::operators::{OperatorExpr, WindowMatrix};
use num_complex::Complex;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

/// A window compression with double-precision entries. `overflow` is
/// set when any exact entry fell outside the double range and was
/// recorded as ±∞.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    labels: Vec<MultiIndex>,
    entries: Vec<Vec<Complex<f64>>>,
    overflow: bool,
}

impl DenseMatrix {
    pub fn from_rows(labels: Vec<MultiIndex>, entries: Vec<Vec<Complex<f64>>>) -> Result<Self> {
        if entries.len() != labels.len() || entries.iter().any(|row| row.len() != labels.len()) {
            return Err(Error::Domain(
                "matrix dimensions must match the label list".to_string(),
            ));
        }
        let overflow = entries
            .iter()
            .flatten()
            .any(|e| !e.re.is_finite() || !e.im.is_finite());
        Ok(DenseMatrix {
            labels,
            entries,
            overflow,
        })
    }

    pub fn labels(&self) -> &[MultiIndex] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<f64> {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Complex<f64>>] {
        &self.entries
    }

    pub fn has_overflow(&self) -> bool {
        self.overflow
    }
}

/// Rounds an exact window compression entrywise to nearest double.
pub fn round_window_matrix(exact: &WindowMatrix) -> DenseMatrix {
    let entries: Vec<Vec<Complex<f64>>> = exact
        .rows()
        .par_iter()
        .map(|row| row.iter().map(|c| coeff_to_complex_f64(c).0).collect())
        .collect();
    let overflow = exact
        .rows()
        .iter()
        .flatten()
        .any(|c| coeff_to_complex_f64(c).1);
    DenseMatrix {
        labels: exact.labels().to_vec(),
        entries,
        overflow,
    }
}

/// Compresses the expression to the window exactly, then rounds each
/// entry to the nearest double.
pub fn to_float_matrix(expr: &OperatorExpr, m: &MultiIndex) -> Result<DenseMatrix> {
    Ok(round_window_matrix(&expr.window_matrix(m)?))
}

/// A largest-singular-value estimate; `converged` is false when the
/// iteration cap was reached before the relative tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub converged: bool,
}

fn apply_matrix(a: &DenseMatrix, v: &[Complex<f64>]) -> Vec<Complex<f64>> {
    a.entries
        .iter()
        .map(|row| row.iter().zip(v).map(|(e, x)| e * x).sum())
        .collect()
}

fn apply_adjoint(a: &DenseMatrix, w: &[Complex<f64>]) -> Vec<Complex<f64>> {
    (0..a.dim())
        .map(|c| (0..a.dim()).map(|r| a.entries[r][c].conj() * w[r]).sum())
        .collect()
}

fn norm2(v: &[Complex<f64>]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Power iteration on A*A from the normalized all-ones vector. The
/// start vector is fixed so estimates are reproducible.
pub fn operator_norm_estimate(a: &DenseMatrix, iterations: u32, tolerance: f64) -> NormEstimate {
    let dim = a.dim();
    if dim == 0 {
        return NormEstimate {
            value: 0.0,
            converged: true,
        };
    }
    if a.has_overflow() {
        return NormEstimate {
            value: f64::INFINITY,
            converged: false,
        };
    }
    let scale = 1.0 / (dim as f64).sqrt();
    let mut v: Vec<Complex<f64>> = vec![Complex::new(scale, 0.0); dim];
    let mut previous = f64::NAN;
    for _ in 0..iterations {
        let image = apply_matrix(a, &v);
        let sigma = norm2(&image);
        if sigma == 0.0 {
            return NormEstimate {
                value: 0.0,
                converged: true,
            };
        }
        if (sigma - previous).abs() <= tolerance * sigma.max(f64::MIN_POSITIVE) {
            return NormEstimate {
                value: sigma,
                converged: true,
            };
        }
        previous = sigma;
        let pulled = apply_adjoint(a, &image);
        let len = norm2(&pulled);
        if len == 0.0 {
            return NormEstimate {
                value: sigma,
                converged: true,
            };
        }
        for (x, p) in v.iter_mut().zip(&pulled) {
            *x = p / len;
        }
    }
    NormEstimate {
        value: previous,
        converged: false,
    }
}

/// One row of the shift-conjugation decay table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayRow {
    pub k: u32,
    pub triangle_norm: f64,
    pub polydisc_norm: f64,
    pub converged: bool,
}

fn conjugated_power(expr: &OperatorExpr, space: SpaceKind, k: u32) -> Result<OperatorExpr> {
    if k == 0 {
        return Ok(expr.clone());
    }
    let shift = OperatorExpr::mult(space.n(), space)?;
    OperatorExpr::product(vec![
        shift.clone().adjoint().power(k as usize)?,
        expr.clone(),
        shift.power(k as usize)?,
    ])
}

/// Window norm estimates of 𝓜*ᵏ T 𝓜ᵏ on the triangle next to
/// M*ᵏ S Mᵏ on the polydisc, for k = 0..kmax, with the last
/// coordinate's shift on both sides. S is the caller-supplied
/// transported counterpart of T; the table asserts nothing.
pub fn decay_profile(
    t: &OperatorExpr,
    s: &OperatorExpr,
    kmax: u32,
    m: &MultiIndex,
) -> Result<Vec<DecayRow>> {
    let t_space = t
        .space()
        .ok_or_else(|| Error::IllFormedExpression("scalar expression has no window".into()))?;
    let s_space = s
        .space()
        .ok_or_else(|| Error::IllFormedExpression("scalar expression has no window".into()))?;
    if t_space != SpaceKind::triangle(t_space.n())? || s_space != SpaceKind::polydisc(t_space.n())?
    {
        return Err(Error::Domain(
            "decay profile expects a triangle expression and its polydisc counterpart".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        let tri = to_float_matrix(&conjugated_power(t, t_space, k)?, m)?;
        let poly = to_float_matrix(&conjugated_power(s, s_space, k)?, m)?;
        let tri_norm = operator_norm_estimate(&tri, 500, 1e-10);
        let poly_norm = operator_norm_estimate(&poly, 500, 1e-10);
        rows.push(DecayRow {
            k,
            triangle_norm: tri_norm.value,
            polydisc_norm: poly_norm.value,
            converged: tri_norm.converged && poly_norm.converged,
        });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    MatrixMarket,
    Csv,
}

fn csv_literal(e: Complex<f64>) -> String {
    let sign = if e.im.is_sign_negative() { "" } else { "+" };
    format!("{}{}{}i", e.re, sign, e.im)
}

/// Renders the matrix body: MatrixMarket coordinate lines (1-based,
/// row-major nonzeros, size line "rows cols nnz") or dense CSV rows of
/// re+imi literals. Double values print in shortest-roundtrip form, so
/// finite entries survive a parse bit-exactly.
pub fn render(a: &DenseMatrix, format: ExportFormat) -> String {
    let mut out = String::new();
    match format {
        ExportFormat::MatrixMarket => {
            out.push_str("%%MatrixMarket matrix coordinate complex general\n");
            let nonzeros: Vec<(usize, usize)> = (0..a.dim())
                .flat_map(|r| (0..a.dim()).map(move |c| (r, c)))
                .filter(|&(r, c)| a.entry(r, c) != Complex::new(0.0, 0.0))
                .collect();
            let _ = writeln!(out, "{} {} {}", a.dim(), a.dim(), nonzeros.len());
            for (r, c) in nonzeros {
                let e = a.entry(r, c);
                let _ = writeln!(out, "{} {} {} {}", r + 1, c + 1, e.re, e.im);
            }
        }
        ExportFormat::Csv => {
            for row in a.rows() {
                let line: Vec<String> = row.iter().map(|&e| csv_literal(e)).collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
        }
    }
    out
}

/// The sidecar listing: one line per basis index, 1-based to match the
/// MatrixMarket body.
pub fn render_labels(a: &DenseMatrix) -> String {
    let mut out = String::new();
    for (i, label) in a.labels().iter().enumerate() {
        let _ = writeln!(out, "{}: {}", i + 1, label);
    }
    out
}

/// Writes the matrix to `destination` and the basis labels to
/// `destination` with ".labels" appended.
pub fn export(a: &DenseMatrix, format: ExportFormat, destination: &Path) -> Result<()> {
    std::fs::write(destination, render(a, format))?;
    let mut sidecar = destination.as_os_str().to_owned();
    sidecar.push(".labels");
    std::fs::write(&sidecar, render_labels(a))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{coeff, coeff_one, rat, rat_int};
    use crate::symbol::LaurentSymbol;
    use crate::verify::SymbolSampler;

    fn mi(entries: &[i64]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn identity_rounds_to_identity() {
        let tri = SpaceKind::triangle(2).unwrap();
        let a = to_float_matrix(&OperatorExpr::identity(tri), &mi(&[1, 1])).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(!a.has_overflow());
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { 1.0 } else { 0.0 };
                assert_eq!(a.entry(r, c), cx(want, 0.0));
            }
        }
    }

    #[test]
    fn constant_toeplitz_is_scaled_diagonal() {
        let tri = SpaceKind::triangle(2).unwrap();
        let phi = LaurentSymbol::constant(2, coeff(rat(5, 2), rat_int(0))).unwrap();
        let expr = OperatorExpr::toeplitz(phi, tri).unwrap();
        let a = to_float_matrix(&expr, &mi(&[1, 1])).unwrap();
        for r in 0..a.dim() {
            assert_eq!(a.entry(r, r), cx(2.5, 0.0));
        }
    }

    #[test]
    fn random_symbol_entries_match_ieee_division() {
        // sampler coefficients are small integer ratios, for which an
        // IEEE double division is itself correctly rounded, giving an
        // independent oracle
        let tri = SpaceKind::triangle(2).unwrap();
        let mut sampler = SymbolSampler::new(2, 7);
        let m = mi(&[3, 3]);
        for _ in 0..20 {
            let phi = sampler.symbol().unwrap();
            let expr = OperatorExpr::toeplitz(phi.clone(), tri).unwrap();
            let exact = expr.window_matrix(&m).unwrap();
            let float = round_window_matrix(&exact);
            for r in 0..float.dim() {
                for c in 0..float.dim() {
                    let e = exact.entry(r, c);
                    let want = cx(
                        ratio_to_f64(&e.re),
                        ratio_to_f64(&e.im),
                    );
                    assert_eq!(float.entry(r, c), want);
                }
            }
        }
    }

    fn ratio_to_f64(r: &crate::coeff::Rat) -> f64 {
        use num_traits::ToPrimitive;
        let p = r.numer().to_i64().expect("sampler ratios stay small");
        let q = r.denom().to_i64().expect("sampler ratios stay small");
        p as f64 / q as f64
    }

    #[test]
    fn huge_entries_flag_overflow() {
        let big = crate::coeff::rat_pow(&rat_int(2), 1100);
        let a = DenseMatrix::from_rows(
            vec![mi(&[0, -1])],
            vec![vec![cx(crate::coeff::rat_to_f64(&big).value, 0.0)]],
        )
        .unwrap();
        assert!(a.has_overflow());
        assert!(!operator_norm_estimate(&a, 100, 1e-10).converged);
    }

    #[test]
    fn norm_estimates_for_known_matrices() {
        let tri = SpaceKind::triangle(2).unwrap();
        let id = to_float_matrix(&OperatorExpr::identity(tri), &mi(&[2, 2])).unwrap();
        let est = operator_norm_estimate(&id, 200, 1e-10);
        assert!(est.converged);
        assert!((est.value - 1.0).abs() <= 1e-10);

        // rank one with a single entry 3
        let labels = vec![mi(&[0, -1]), mi(&[0, 0])];
        let rows = vec![vec![cx(0.0, 0.0), cx(3.0, 0.0)], vec![cx(0.0, 0.0); 2]];
        let a = DenseMatrix::from_rows(labels, rows).unwrap();
        let est = operator_norm_estimate(&a, 200, 1e-10);
        assert!(est.converged);
        assert!((est.value - 3.0).abs() <= 1e-9);

        // a pure shift compresses to a partial permutation
        let shift = LaurentSymbol::monomial(mi(&[1, -1]), coeff_one()).unwrap();
        let a = to_float_matrix(
            &OperatorExpr::toeplitz(shift, tri).unwrap(),
            &mi(&[2, 2]),
        )
        .unwrap();
        let est = operator_norm_estimate(&a, 200, 1e-10);
        assert!(est.converged);
        assert!((est.value - 1.0).abs() <= 1e-9);

        let empty = DenseMatrix::from_rows(vec![], vec![]).unwrap();
        assert_eq!(operator_norm_estimate(&empty, 10, 1e-10).value, 0.0);
    }

    #[test]
    fn decay_table_reproduces_exact_zeros() {
        let n = 2;
        let tri = SpaceKind::triangle(n).unwrap();
        let poly = SpaceKind::polydisc(n).unwrap();
        let witness = |space: SpaceKind| -> OperatorExpr {
            let shift = OperatorExpr::mult(n, space).unwrap();
            OperatorExpr::identity(space)
                .minus(OperatorExpr::product(vec![shift.clone(), shift.adjoint()]).unwrap())
                .unwrap()
        };
        let rows = decay_profile(&witness(tri), &witness(poly), 3, &mi(&[3, 3])).unwrap();
        assert_eq!(rows.len(), 4);
        assert!((rows[0].triangle_norm - 1.0).abs() <= 1e-9);
        assert!((rows[0].polydisc_norm - 1.0).abs() <= 1e-9);
        for row in &rows[1..] {
            assert_eq!(row.triangle_norm, 0.0);
            assert_eq!(row.polydisc_norm, 0.0);
        }

        let id_rows = decay_profile(
            &OperatorExpr::identity(tri),
            &OperatorExpr::identity(poly),
            2,
            &mi(&[2, 2]),
        )
        .unwrap();
        for row in &id_rows {
            assert!((row.triangle_norm - 1.0).abs() <= 1e-9);
            assert!((row.polydisc_norm - 1.0).abs() <= 1e-9);
        }

        // mismatched spaces are rejected
        assert!(decay_profile(
            &OperatorExpr::identity(poly),
            &OperatorExpr::identity(poly),
            1,
            &mi(&[2, 2])
        )
        .is_err());
    }

    #[test]
    fn matrix_market_rendering_and_parse_back() {
        let tri = SpaceKind::triangle(2).unwrap();
        let a = to_float_matrix(&OperatorExpr::identity(tri), &mi(&[1, 0])).unwrap();
        let text = render(&a, ExportFormat::MatrixMarket);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "%%MatrixMarket matrix coordinate complex general");
        assert_eq!(lines[1], "2 2 2");
        assert_eq!(lines.len(), 4);

        // parse back and compare bit-exactly
        let dims: Vec<usize> = lines[1]
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        let mut parsed = vec![vec![cx(0.0, 0.0); dims[1]]; dims[0]];
        for line in &lines[2..] {
            let tok: Vec<&str> = line.split_whitespace().collect();
            let (r, c): (usize, usize) = (tok[0].parse().unwrap(), tok[1].parse().unwrap());
            parsed[r - 1][c - 1] = cx(tok[2].parse().unwrap(), tok[3].parse().unwrap());
        }
        for (r, row) in parsed.iter().enumerate() {
            for (c, value) in row.iter().enumerate() {
                assert_eq!(*value, a.entry(r, c));
            }
        }

        let labels = render_labels(&a);
        assert_eq!(labels, "1: (0,-1)\n2: (1,-2)\n");

        let empty = DenseMatrix::from_rows(vec![], vec![]).unwrap();
        assert_eq!(
            render(&empty, ExportFormat::MatrixMarket),
            "%%MatrixMarket matrix coordinate complex general\n0 0 0\n"
        );
    }

    #[test]
    fn csv_rendering_uses_complex_literals() {
        let labels = vec![mi(&[0, -1]), mi(&[0, 0])];
        let rows = vec![
            vec![cx(2.5, 0.0), cx(1.0, -2.0)],
            vec![cx(0.0, 0.0), cx(-0.5, 0.25)],
        ];
        let a = DenseMatrix::from_rows(labels, rows).unwrap();
        assert_eq!(
            render(&a, ExportFormat::Csv),
            "2.5+0i,1-2i\n0+0i,-0.5+0.25i\n"
        );
    }

    #[test]
    fn export_writes_matrix_and_sidecar() {
        let tri = SpaceKind::triangle(2).unwrap();
        let a = to_float_matrix(&OperatorExpr::identity(tri), &mi(&[1, 0])).unwrap();
        let dir = std::env::temp_dir().join("hartop-numerics-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("identity.mtx");
        export(&a, ExportFormat::MatrixMarket, &path).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        assert_eq!(body, render(&a, ExportFormat::MatrixMarket));
        let sidecar = std::fs::read_to_string(dir.join("identity.mtx.labels")).unwrap();
        assert_eq!(sidecar, render_labels(&a));
    }

    #[test]
    fn rounded_matrices_roundtrip_through_rendering() {
        let tri = SpaceKind::triangle(2).unwrap();
        let mut sampler = SymbolSampler::new(2, 11);
        let phi = sampler.symbol().unwrap();
        let a = to_float_matrix(
            &OperatorExpr::toeplitz(phi, tri).unwrap(),
            &mi(&[2, 2]),
        )
        .unwrap();
        let text = render(&a, ExportFormat::MatrixMarket);
        let lines: Vec<&str> = text.lines().collect();
        let mut recovered = vec![vec![cx(0.0, 0.0); a.dim()]; a.dim()];
        for line in &lines[2..] {
            let tok: Vec<&str> = line.split_whitespace().collect();
            let (r, c): (usize, usize) = (tok[0].parse().unwrap(), tok[1].parse().unwrap());
            recovered[r - 1][c - 1] = cx(tok[2].parse().unwrap(), tok[3].parse().unwrap());
        }
        for (r, row) in recovered.iter().enumerate() {
            for (c, value) in row.iter().enumerate() {
                assert!(*value == a.entry(r, c));
            }
        }
    }
}
