//! Runtime caps with environment overrides. Exponential objects (FU-sets,
//! explicit families, search trees) need guards; the defaults cover every
//! documented workload.

use std::env;

fn env_usize(name: &str, default: usize) -> usize {
    env::var(name)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

/// Ordinal exponent-nesting cap (`SCHREIER_DEPTH_CAP`).
pub fn depth_cap() -> usize {
    env_usize("SCHREIER_DEPTH_CAP", crate::ordinal::DEFAULT_DEPTH_CAP)
}

/// Max ground blocks for FU enumeration (`SCHREIER_FU_CAP`).
pub fn fu_cap() -> usize {
    env_usize("SCHREIER_FU_CAP", 16)
}

/// Max members in an explicit family (`SCHREIER_FAMILY_CAP`).
pub fn family_cap() -> usize {
    env_usize("SCHREIER_FAMILY_CAP", 1_000_000)
}

/// Search node budget (`SCHREIER_NODE_BUDGET`).
pub fn node_budget() -> u64 {
    env_usize("SCHREIER_NODE_BUDGET", 10_000_000) as u64
}
