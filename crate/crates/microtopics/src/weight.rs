//! Exact threshold comparisons for post-count ratios.
//!
//! Graph weights and element frequencies are ratios of post counts, while
//! thresholds arrive as short decimals (0.001, 0.0005, ...). Comparing
//! `count / total` against a threshold in floating point flaps on cases
//! like 6/6000 vs 0.001, so comparisons are done on integers after
//! scaling the threshold to a fixed 1e-9 grid.

const SCALE: u128 = 1_000_000_000;

fn scaled(tau: f64) -> u128 {
    debug_assert!((0.0..=1.0).contains(&tau));
    (tau * SCALE as f64).round() as u128
}

/// True when `count / total` strictly exceeds `tau`.
///
/// `total == 0` never exceeds anything.
pub fn ratio_exceeds(count: u64, total: u64, tau: f64) -> bool {
    if total == 0 {
        return false;
    }
    count as u128 * SCALE > scaled(tau) * total as u128
}

/// True when `count / total` is strictly below `tau`.
pub fn ratio_below(count: u64, total: u64, tau: f64) -> bool {
    if total == 0 {
        // An undefined ratio is treated as 0, which is below any tau > 0.
        return tau > 0.0;
    }
    (count as u128) * SCALE < scaled(tau) * total as u128
}
