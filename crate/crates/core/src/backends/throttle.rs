use std::sync::{Arc, Mutex};
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BackendError, HitObservation, ImpactObservation, ImpactSource, SearchSource};
use crate::clock::{Clock, RateLimiter};
use crate::domain::Host;

/// Exponential backoff for retryable failures. Jitter comes from a seeded
/// generator so that reruns wait the same way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetryPolicy {
    pub max_attempts: u32,
    pub base_delay: Duration,
    pub max_delay: Duration,
    pub seed: u64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            max_attempts: 3,
            base_delay: Duration::from_secs(2),
            max_delay: Duration::from_secs(60),
            seed: 0,
        }
    }
}

impl RetryPolicy {
    pub fn none() -> Self {
        RetryPolicy {
            max_attempts: 1,
            ..Default::default()
        }
    }
}

/// Wraps a source with a shared rate limit and retries.
pub struct Throttled<S> {
    inner: S,
    limiter: RateLimiter,
    retry: RetryPolicy,
    clock: Arc<dyn Clock>,
    rng: Mutex<ChaCha8Rng>,
}

impl<S> Throttled<S> {
    pub fn new(
        inner: S,
        requests_per_second: f64,
        retry: RetryPolicy,
        clock: Arc<dyn Clock>,
    ) -> Self {
        Throttled {
            inner,
            limiter: RateLimiter::per_second(requests_per_second),
            rng: Mutex::new(ChaCha8Rng::seed_from_u64(retry.seed)),
            retry,
            clock,
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    fn call<T>(&self, mut f: impl FnMut(&S) -> Result<T, BackendError>) -> Result<T, BackendError> {
        let mut attempt = 0;
        loop {
            self.limiter.acquire(self.clock.as_ref());
            match f(&self.inner) {
                Err(e) if e.is_retryable() && attempt + 1 < self.retry.max_attempts => {
                    let backoff = self
                        .retry
                        .base_delay
                        .saturating_mul(1 << attempt.min(16))
                        .min(self.retry.max_delay);
                    let jitter: f64 = self.rng.lock().unwrap().random_range(0.0..0.5);
                    self.clock.sleep(backoff.mul_f64(1.0 + jitter));
                    attempt += 1;
                }
                other => return other,
            }
        }
    }
}

impl<S: ImpactSource> ImpactSource for Throttled<S> {
    fn backend_id(&self) -> &str {
        self.inner.backend_id()
    }

    fn impact(&self, host: &Host) -> Result<ImpactObservation, BackendError> {
        self.call(|s| s.impact(host))
    }

    fn calls(&self) -> u64 {
        self.inner.calls()
    }
}

impl<S: SearchSource> SearchSource for Throttled<S> {
    fn backend_id(&self) -> &str {
        self.inner.backend_id()
    }

    fn max_query_len(&self) -> usize {
        self.inner.max_query_len()
    }

    fn hit_count(&self, query: &str) -> Result<HitObservation, BackendError> {
        self.call(|s| s.hit_count(query))
    }

    fn calls(&self) -> u64 {
        self.inner.calls()
    }
}
