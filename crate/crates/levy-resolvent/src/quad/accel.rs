//! Wynn's epsilon algorithm for extrapolating slowly convergent
//! (in practice: alternating) sequences of partial sums.

/// Extrapolated limit of a sequence of partial sums, with an error estimate.
///
/// `max_order` caps the even epsilon-table column used (each even column is
/// one more application of the Shanks transform).
pub(crate) fn epsilon_limit(partial: &[f64], max_order: usize) -> (f64, f64) {
    let n = partial.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n == 1 {
        return (partial[0], f64::INFINITY);
    }

    // eps[k] holds the current diagonal of the table.
    let mut table: Vec<f64> = Vec::with_capacity(n);
    let mut best = partial[n - 1];
    let mut prev_best = partial[n - 2];

    for (j, &s) in partial.iter().enumerate() {
        table.push(s);
        let mut aux = 0.0; // epsilon_{-1} entry
        for k in (0..j).rev() {
            let diff = table[k + 1] - table[k];
            let next = if diff.abs() < 1e-300 {
                // Two entries coincide to machine precision: converged.
                aux
            } else {
                aux + 1.0 / diff
            };
            aux = table[k];
            table[k] = next;
        }
        // Even-column entries (table[j - 2m] for even offsets) are estimates.
        let order = (j / 2).min(max_order);
        if order >= 1 {
            let est = table[j - 2 * order];
            prev_best = best;
            best = est;
        }
    }

    let err = (best - prev_best).abs().max(f64::EPSILON * best.abs());
    (best, err)
}
