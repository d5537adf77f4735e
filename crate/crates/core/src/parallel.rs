//! Worker pool plumbing. Every parallel sweep in the crate runs inside a
//! pool sized by the caller's `jobs` setting and merges its partial results
//! in a fixed order, so numeric output does not depend on the pool size.

use crate::error::{Error, Result};

/// Resolves a `jobs` setting; 0 means the available parallelism.
pub fn effective_jobs(jobs: usize) -> usize {
    if jobs > 0 {
        jobs
    } else {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    }
}

/// Runs `f` inside a dedicated pool of `jobs` threads.
pub fn install<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(effective_jobs(jobs))
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}
