/// Limits on exhaustive searches. Exceeding one yields `Error::TooLarge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest bare representation whose topology is enumerated.
    pub points: usize,
    /// Largest number of candidate maps or search nodes visited.
    pub maps: u64,
    /// Largest edge count for the covering-walk search.
    pub walk_edges: usize,
    /// Largest vertex count for the complete-colouring search.
    pub partition_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            points: 16,
            maps: 10_000_000,
            walk_edges: 20,
            partition_vertices: 12,
        }
    }
}
