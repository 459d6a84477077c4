use census_core::Executor;
use rayon::prelude::*;

/// Runs independent jobs on a private rayon pool.
pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    /// `jobs = None` uses one thread per logical processor.
    pub fn new(jobs: Option<usize>) -> Self {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = jobs {
            b = b.num_threads(n.max(1));
        }
        Pool { pool: b.build().expect("thread pool construction") }
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Pool {
    fn map<T: Send>(&self, n: usize, f: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        self.pool.install(|| (0..n).into_par_iter().map(f).collect())
    }
}
