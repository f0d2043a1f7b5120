use crate::error::{Error, Result};

/// Runs `job` on a dedicated pool of `workers` threads, or on the global
/// rayon pool when `workers` is `None`.
pub(crate) fn run_with_workers<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        Some(n) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?
            .install(job)),
        None => Ok(job()),
    }
}
