//! Time sources and request pacing.

use std::sync::Mutex;
use std::time::Duration;

use chrono::{DateTime, TimeZone, Utc};

pub trait Clock: Send + Sync {
    fn now(&self) -> DateTime<Utc>;
    fn sleep(&self, d: Duration);
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SystemClock;

impl Clock for SystemClock {
    fn now(&self) -> DateTime<Utc> {
        Utc::now()
    }

    fn sleep(&self, d: Duration) {
        std::thread::sleep(d);
    }
}

/// A clock that only moves when slept on. Used for fixture runs and tests.
#[derive(Debug)]
pub struct VirtualClock {
    now: Mutex<DateTime<Utc>>,
}

impl VirtualClock {
    pub fn starting_at(start: DateTime<Utc>) -> Self {
        VirtualClock {
            now: Mutex::new(start),
        }
    }

    /// Fixed epoch for reproducible fixture runs.
    pub fn fixture_epoch() -> Self {
        Self::starting_at(Utc.with_ymd_and_hms(2014, 6, 1, 0, 0, 0).unwrap())
    }

    pub fn advance(&self, d: Duration) {
        let mut now = self.now.lock().unwrap();
        *now += chrono::Duration::from_std(d).expect("duration in range");
    }
}

impl Clock for VirtualClock {
    fn now(&self) -> DateTime<Utc> {
        *self.now.lock().unwrap()
    }

    fn sleep(&self, d: Duration) {
        self.advance(d);
    }
}

/// Spaces requests at least `1 / rate` seconds apart, across all threads
/// sharing the limiter.
#[derive(Debug)]
pub struct RateLimiter {
    interval: chrono::Duration,
    next_slot: Mutex<Option<DateTime<Utc>>>,
}

impl RateLimiter {
    pub fn per_second(rate: f64) -> Self {
        assert!(rate > 0.0 && rate.is_finite(), "rate must be positive");
        Self::with_interval(Duration::from_secs_f64(1.0 / rate))
    }

    pub fn with_interval(interval: Duration) -> Self {
        RateLimiter {
            interval: chrono::Duration::from_std(interval).expect("interval in range"),
            next_slot: Mutex::new(None),
        }
    }

    /// Blocks until the caller may issue its request.
    pub fn acquire(&self, clock: &dyn Clock) {
        // The lock is held while sleeping so that waiters queue in order.
        let mut next = self.next_slot.lock().unwrap();
        let now = clock.now();
        let slot = match *next {
            Some(t) if t > now => {
                clock.sleep((t - now).to_std().unwrap_or_default());
                t
            }
            _ => now,
        };
        *next = Some(slot + self.interval);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virtual_clock_moves_only_on_sleep() {
        let c = VirtualClock::fixture_epoch();
        let t0 = c.now();
        assert_eq!(c.now(), t0);
        c.sleep(Duration::from_millis(1500));
        assert_eq!((c.now() - t0).num_milliseconds(), 1500);
    }

    #[test]
    fn limiter_spaces_requests() {
        for (rate, n) in [(2.0, 5usize), (10.0, 31), (0.5, 3)] {
            let clock = VirtualClock::fixture_epoch();
            let limiter = RateLimiter::per_second(rate);
            let t0 = clock.now();
            for _ in 0..n {
                limiter.acquire(&clock);
            }
            let elapsed = (clock.now() - t0).num_microseconds().unwrap() as f64 / 1e6;
            let bound = (n - 1) as f64 / rate;
            assert!(elapsed + 1e-6 >= bound, "rate {rate}: {elapsed} < {bound}");
        }
    }

    #[test]
    fn limiter_is_shared_across_threads() {
        let clock = VirtualClock::fixture_epoch();
        let limiter = RateLimiter::per_second(4.0);
        let t0 = clock.now();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for _ in 0..5 {
                        limiter.acquire(&clock);
                    }
                });
            }
        });
        let elapsed = (clock.now() - t0).num_milliseconds();
        assert!(elapsed >= 19 * 250, "{elapsed}");
    }
}
