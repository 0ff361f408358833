use serde::{Deserialize, Serialize};

use crate::loops::DEFAULT_NODE_LIMIT;

/// Caps and budgets shared by every checker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    /// Largest simplex (in vertices) any clique enumeration may meet.
    pub clique_cap: usize,
    /// Longest full cycle the enumerators accept.
    pub cycle_cap: usize,
    /// Largest number of triangles a filling diagram may use.
    pub area_budget: usize,
    /// Search states per filling attempt.
    pub node_limit: usize,
    /// Largest vertex count for the four-point and bottleneck kernels.
    pub delta_cap: usize,
    /// Geodesics enumerated per seed during axis discovery.
    pub geodesic_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            clique_cap: 16,
            cycle_cap: 12,
            area_budget: 64,
            node_limit: DEFAULT_NODE_LIMIT,
            delta_cap: 400,
            geodesic_cap: 256,
        }
    }
}
