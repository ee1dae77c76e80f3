//! Wall-clock delay measurement of the enumeration.

use std::io::Write;
use std::time::{Duration, Instant};

use crate::dom_enum::DomStream;
use crate::error::Result;
use crate::graph::Graph;
use crate::rn_enum::{Mode, Prepared};

/// One emitted solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sample {
    pub size: usize,
    /// time since the previous output, or since preprocessing ended
    pub delay: Duration,
    /// CPU time of the emitting thread over the same interval
    pub cpu: Duration,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub preprocessing: Duration,
    pub samples: Vec<Sample>,
    /// time from the last output to the end of the stream, if it ended
    pub tail: Option<Duration>,
}

impl BenchReport {
    pub fn solutions(&self) -> usize {
        self.samples.len()
    }

    /// Largest gap between outputs, including the tail when present.
    pub fn max_delay(&self) -> Duration {
        self.samples.iter().map(|s| s.delay).chain(self.tail).max().unwrap_or_default()
    }

    /// Largest per-output CPU time of the emitting thread; unlike
    /// [`max_delay`](Self::max_delay) it ignores time spent preempted.
    pub fn max_cpu_delay(&self) -> Duration {
        self.samples.iter().map(|s| s.cpu).max().unwrap_or_default()
    }

    pub fn mean_delay(&self) -> Duration {
        if self.samples.is_empty() {
            return Duration::ZERO;
        }
        self.samples.iter().map(|s| s.delay).sum::<Duration>() / self.samples.len() as u32
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "solution_index,size,delay_ns")?;
        for (i, s) in self.samples.iter().enumerate() {
            writeln!(w, "{},{},{}", i + 1, s.size, s.delay.as_nanos())?;
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        format!(
            "preprocessing_ns={} solutions={} max_delay_ns={} max_cpu_delay_ns={} mean_delay_ns={}",
            self.preprocessing.as_nanos(),
            self.solutions(),
            self.max_delay().as_nanos(),
            self.max_cpu_delay().as_nanos(),
            self.mean_delay().as_nanos()
        )
    }
}

/// CPU time consumed by the calling thread, where the platform exposes it.
#[cfg(unix)]
fn thread_cpu_time() -> Option<Duration> {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    // SAFETY: clock_gettime only writes into the timespec we pass
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_THREAD_CPUTIME_ID, &mut ts) };
    (rc == 0).then(|| Duration::new(ts.tv_sec as u64, ts.tv_nsec as u32))
}

#[cfg(not(unix))]
fn thread_cpu_time() -> Option<Duration> {
    None
}

/// Times preprocessing and the first `limit` outputs of the enumeration.
pub fn bench(g: Graph, mode: Mode, limit: Option<usize>) -> Result<BenchReport> {
    let start = Instant::now();
    let prep = Prepared::new(g, mode)?;
    let mut stream = DomStream::new(prep);
    let preprocessing = start.elapsed();
    let cap = limit.unwrap_or(usize::MAX);
    let mut samples = Vec::with_capacity(cap.min(1 << 16));
    let mut last = Instant::now();
    let mut last_cpu = thread_cpu_time();
    let mut tail = None;
    while samples.len() < cap {
        match stream.next() {
            Some(d) => {
                let now = Instant::now();
                let now_cpu = thread_cpu_time();
                let delay = now - last;
                let cpu = match (last_cpu, now_cpu) {
                    (Some(a), Some(b)) => b.saturating_sub(a),
                    _ => delay,
                };
                samples.push(Sample { size: d.len(), delay, cpu });
                last = now;
                last_cpu = now_cpu;
            }
            None => {
                tail = Some(last.elapsed());
                break;
            }
        }
    }
    Ok(BenchReport { preprocessing, samples, tail })
}
