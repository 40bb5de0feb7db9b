use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Environment variable overriding the worker count of threaded runs.
pub const WORKERS_ENV: &str = "SWEEP_WORKERS";

/// How a batch is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    /// One worker, canonical order, fully deterministic.
    Simulated,
    /// A pool of `w` workers.
    Threaded(usize),
}

impl ExecMode {
    /// `Threaded(w)` with `w` taken from `SWEEP_WORKERS` when set and valid.
    pub fn threaded_from_env(default: usize) -> Self {
        let w = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&w| w > 0)
            .unwrap_or(default);
        Self::Threaded(w.max(1))
    }

    pub fn workers(&self) -> usize {
        match self {
            Self::Simulated => 1,
            Self::Threaded(w) => *w,
        }
    }
}

/// Runs independent work items either inline or on a private rayon pool.
/// Results always come back in item order.
pub struct Executor {
    mode: ExecMode,
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    pub fn new(mode: ExecMode) -> Self {
        let pool = match mode {
            ExecMode::Simulated => None,
            ExecMode::Threaded(w) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .thread_name(|i| format!("sweep-worker-{i}"))
                    .build()
                    .expect("failed to start worker pool"),
            ),
        };
        Self { mode, pool }
    }

    pub fn mode(&self) -> ExecMode {
        self.mode
    }

    pub fn is_parallel(&self) -> bool {
        self.pool.is_some()
    }

    /// Runs `op` inside the pool (or inline).
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(op),
            None => op(),
        }
    }

    /// Maps `f` over `0..count`. A panicking item surfaces as
    /// [`Error::WorkerPanic`] naming `pe_of(item)`.
    pub fn try_map<R, F, P>(&self, count: usize, pe_of: P, f: F) -> Result<Vec<R>>
    where
        R: Send,
        F: Fn(usize) -> Result<R> + Sync + Send,
        P: Fn(usize) -> usize + Sync + Send,
    {
        let guarded = |i: usize| -> Result<R> {
            match catch_unwind(AssertUnwindSafe(|| f(i))) {
                Ok(r) => r,
                Err(payload) => Err(Error::WorkerPanic { pe: pe_of(i), message: panic_message(&payload) }),
            }
        };
        match &self.pool {
            Some(pool) => pool.install(|| (0..count).into_par_iter().map(guarded).collect()),
            None => (0..count).map(guarded).collect(),
        }
    }

    /// Applies `f` to every element of `items` in place.
    pub fn for_each_mut<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        match &self.pool {
            Some(pool) => pool.install(|| items.par_iter_mut().enumerate().for_each(|(i, t)| f(i, t))),
            None => items.iter_mut().enumerate().for_each(|(i, t)| f(i, t)),
        }
    }
}

fn panic_message(payload: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_in_order_for_both_modes() {
        for mode in [ExecMode::Simulated, ExecMode::Threaded(3)] {
            let ex = Executor::new(mode);
            let out = ex.try_map(100, |i| i, |i| Ok(i * i)).unwrap();
            assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn panics_name_the_pe() {
        let ex = Executor::new(ExecMode::Threaded(2));
        let err = ex
            .try_map(10, |i| i / 5, |i| {
                if i == 7 {
                    panic!("boom");
                }
                Ok(i)
            })
            .unwrap_err();
        assert_eq!(err, Error::WorkerPanic { pe: 1, message: "boom".into() });
    }
}
