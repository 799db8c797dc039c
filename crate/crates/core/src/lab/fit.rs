/// Least-squares solution of `Σ_k c_k φ_k(x_i) ≈ y_i` through the normal
/// equations. `None` when the system is singular or underdetermined.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Option<Vec<f64>> {
    let k = rows.first()?.len();
    if rows.len() < k {
        return None;
    }
    let mut m = vec![vec![0.0; k + 1]; k];
    for (row, &yi) in rows.iter().zip(y) {
        for r in 0..k {
            for c in 0..k {
                m[r][c] += row[r] * row[c];
            }
            m[r][k] += row[r] * yi;
        }
    }
    // Gaussian elimination with partial pivoting
    for col in 0..k {
        let piv = (col..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        for r in col + 1..k {
            let f = m[r][col] / m[col][col];
            for c in col..=k {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|c| m[r][c] * x[c]).sum();
        x[r] = (m[r][k] - s) / m[r][r];
    }
    Some(x)
}

/// Slope of `log y` against `log n` over the points with `y > 0`.
pub fn log_log_slope(n: &[u32], y: &[f64]) -> Option<f64> {
    let (rows, ly): (Vec<Vec<f64>>, Vec<f64>) = n
        .iter()
        .zip(y)
        .filter(|(_, &v)| v > 0.0 && v.is_finite())
        .map(|(&n, &v)| (vec![1.0, (n as f64).ln()], v.ln()))
        .unzip();
    if rows.len() < 2 {
        return None;
    }
    least_squares(&rows, &ly).map(|c| c[1])
}
