//! Grid construction and the data-parallel fan-out used by every batch API.
//!
//! All numerical kernels in this crate are pure, so batches can be mapped in
//! parallel freely. Results are always collected in input order and reduced
//! sequentially, which makes every output bit-identical whether the
//! `parallel` feature is on, off, or running on any number of threads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use serde::{Deserialize, Serialize};

/// Below this batch size the parallel path falls through to the sequential
/// one; the work does not amortize a fork-join.
const PAR_THRESHOLD: usize = 16;

/// Map `f` over `items`, in parallel when the `parallel` feature is enabled.
/// Output order matches input order.
pub fn map_points<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() >= PAR_THRESHOLD {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Sequential twin of [`map_points`], kept unconditionally for benchmarking
/// the parallel speedup and as the fallback body.
pub fn map_points_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Cap the global fan-out at `n` threads. A no-op without the `parallel`
/// feature; calling it twice keeps the first configuration.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> std::result::Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_n: usize) -> std::result::Result<(), String> {
    Ok(())
}

/// Parallel map followed by a deterministic in-order sum.
pub fn map_reduce_sum<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() >= PAR_THRESHOLD {
            let parts: Vec<f64> = items.par_iter().map(f).collect();
            return parts.iter().sum();
        }
    }
    items.iter().map(f).sum()
}

/// A geometric (or linear) evaluation grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    /// Points per decade for geometric grids; total point count for linear.
    pub points_per_decade: usize,
    #[serde(default = "default_true")]
    pub geometric: bool,
}

fn default_true() -> bool {
    true
}

impl GridSpec {
    pub fn geometric(start: f64, stop: f64, points_per_decade: usize) -> Self {
        GridSpec {
            start,
            stop,
            points_per_decade,
            geometric: true,
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        if self.start == self.stop {
            return Err(crate::Error::Domain("grid start equals stop".into()));
        }
        if self.points_per_decade < 1 {
            return Err(crate::Error::Domain(
                "grid needs at least one point per decade".into(),
            ));
        }
        if self.geometric && (self.start <= 0.0 || self.stop <= 0.0) {
            return Err(crate::Error::Domain(
                "geometric grids need positive endpoints".into(),
            ));
        }
        Ok(())
    }

    /// Materialize the grid points, running from `start` to `stop` inclusive.
    pub fn points(&self) -> Vec<f64> {
        if self.geometric {
            let decades = (self.stop.log10() - self.start.log10()).abs();
            let n = ((decades * self.points_per_decade as f64).round() as usize).max(1);
            let log_a = self.start.log10();
            let log_b = self.stop.log10();
            (0..=n)
                .map(|i| {
                    let t = i as f64 / n as f64;
                    10f64.powf(log_a + t * (log_b - log_a))
                })
                .collect()
        } else {
            let n = self.points_per_decade.max(2) - 1;
            (0..=n)
                .map(|i| self.start + (self.stop - self.start) * i as f64 / n as f64)
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let items: Vec<f64> = (0..500).map(|i| 0.1 + i as f64 * 0.37).collect();
        let f = |x: &f64| (x.sin() * x.exp()).powi(2) / (1.0 + x * x);
        let a = map_points(&items, f);
        let b = map_points_seq(&items, f);
        assert_eq!(a, b);
        let sa = map_reduce_sum(&items, f);
        let sb: f64 = b.iter().sum();
        assert_eq!(sa, sb);
    }

    #[test]
    fn geometric_grid_endpoints_and_count() {
        let g = GridSpec::geometric(1e-4, 1.0, 2).points();
        assert_eq!(g.len(), 9);
        assert!((g[0] - 1e-4).abs() < 1e-18);
        assert!((g[8] - 1.0).abs() < 1e-12);

        // Descending grids work too.
        let g = GridSpec::geometric(1.0, 1e-2, 4).points();
        assert_eq!(g.len(), 9);
        assert!(g[0] > g[8]);
    }
}
