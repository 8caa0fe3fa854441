//! Small shared utilities: deterministic scoped-thread mapping.
//!
//! Results are merged in input order, so parallel runs are byte-identical to
//! sequential ones. The worker count comes from `ZHUFORGE_THREADS` when set,
//! otherwise from the available parallelism reported by the OS.

/// Worker cap: `ZHUFORGE_THREADS` (clamped to 1..=64) when set and parseable,
/// else the available parallelism.
pub fn thread_cap() -> usize {
    if let Ok(s) = std::env::var("ZHUFORGE_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            return n.clamp(1, 64);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .clamp(1, 64)
}

/// Applies `f` to each index in `0..n`, possibly across scoped threads,
/// returning results in index order regardless of scheduling.
pub fn par_map_indices<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync) -> Vec<R> {
    let cap = thread_cap().min(n.max(1));
    if cap <= 1 || n < 2 {
        return (0..n).map(f).collect();
    }
    let chunk = n.div_ceil(cap);
    let mut chunks: Vec<Vec<R>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n)
            .step_by(chunk)
            .map(|start| {
                let end = (start + chunk).min(n);
                let f = &f;
                scope.spawn(move || (start..end).map(f).collect::<Vec<R>>())
            })
            .collect();
        for h in handles {
            chunks.push(h.join().expect("worker thread panicked"));
        }
    });
    chunks.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        let out = par_map_indices(37, |i| i * i);
        assert_eq!(out, (0..37).map(|i| i * i).collect::<Vec<_>>());
        assert_eq!(par_map_indices(0, |i| i), Vec::<usize>::new());
        assert_eq!(par_map_indices(1, |i| i + 10), vec![10]);
    }
}
