//! Parallel drivers. Work is split into independent items and reassembled
//! in index order, so results never depend on the thread count.

use rayon::prelude::*;
use rayon::ThreadPool;

use trichain_core::bifurcation::{sweep as sweep_seq, sweep_point};
use trichain_core::escape::{raster_row, EscapeRaster, FateConfig, RasterSpec};
use trichain_core::{Params, PathSpec, State, SweepConfig, SweepRecord};

use crate::{CliError, Result};

/// Environment fallback for the thread count.
pub const THREADS_ENV: &str = "TRICHAIN_THREADS";

/// Explicit count, else the environment, else available parallelism.
pub fn resolve_threads(explicit: Option<usize>) -> Result<usize> {
    let n = match explicit {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v} is not a count")))?,
            Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        },
    };
    if n == 0 {
        return Err(CliError::Usage("thread count must be positive".into()));
    }
    Ok(n)
}

/// Dedicated pool with `threads` workers.
pub fn pool(threads: usize) -> Result<ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| CliError::Io(std::io::Error::other(e)))
}

/// Raster rows evaluated in parallel.
pub fn raster(pool: &ThreadPool, spec: &RasterSpec, p: &Params, cfg: &FateConfig) -> EscapeRaster {
    let rows: Vec<_> = pool.install(|| (0..spec.nv).into_par_iter().map(|j| raster_row(spec, j, p, cfg)).collect());
    EscapeRaster { spec: *spec, cells: rows.concat() }
}

/// Sweep samples evaluated in parallel; continuation forces sequential order.
pub fn sweep(pool: &ThreadPool, path: &PathSpec, s0: State, cfg: &SweepConfig) -> Vec<SweepRecord> {
    if cfg.continuation {
        return sweep_seq(path, s0, cfg);
    }
    pool.install(|| (0..path.samples()).into_par_iter().map(|i| sweep_point(i, path.params_at(i), s0, cfg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use trichain_core::escape::{raster_slice, Axis, Bounds, Plane};

    #[test]
    fn raster_matches_sequential() {
        let spec =
            RasterSpec::new(Plane { axis: Axis::Z, offset: 0.0 }, Bounds { u: (0.0, 1.0), v: (0.0, 1.0) }, 17, 13)
                .unwrap();
        let p = Params::new(3.0, 4.5, 7.5).unwrap();
        let cfg = FateConfig { max_iter: 50, ..Default::default() };
        let seq = raster_slice(&spec, &p, &cfg);
        for t in [1, 3, 8] {
            assert_eq!(raster(&pool(t).unwrap(), &spec, &p, &cfg), seq);
        }
    }

    #[test]
    fn sweep_matches_sequential() {
        let path =
            PathSpec::new(Params::new(2.1, 3.36, 5.0).unwrap(), Params::new(2.1, 3.36, 9.4).unwrap(), 9).unwrap();
        let cfg = SweepConfig { transient: 500, keep: 20, ..Default::default() };
        let s0 = State::new(0.1, 0.02, 0.03);
        let seq = sweep_seq(&path, s0, &cfg);
        for t in [1, 4] {
            assert_eq!(sweep(&pool(t).unwrap(), &path, s0, &cfg), seq);
        }
    }

    #[test]
    fn explicit_thread_count_wins() {
        assert_eq!(resolve_threads(Some(3)).unwrap(), 3);
        assert!(resolve_threads(Some(0)).is_err());
    }
}
