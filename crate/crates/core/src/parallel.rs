use crate::error::{Error, Result};

/// Runs `f` on a dedicated pool of `n` threads, or on the global pool for
/// `None`. Results never depend on the thread count.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        Some(0) => Err(Error::InvalidInput("thread count must be positive".into())),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot build thread pool: {e}")))?
            .install(f)),
        None => Ok(f()),
    }
}
