use serde::Serialize;

/// Resource limits for the expensive scans. Every long-running operation
/// checks its budget up front and fails loudly instead of hanging.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Maximum ring size (number of elements) for full enumeration.
    pub enum_elements: u64,
    /// Maximum number of zero-divisor pairs visited by the pair scans.
    pub pairs: u64,
    /// Maximum ring size for the symmetry (triple) scan; the scan itself is
    /// pruned but still cubic in the zero-divisor count.
    pub triple_elements: u64,
    /// Maximum number of adjacency bits an explicit graph may allocate.
    pub mem_bits: u64,
    /// Maximum number of branch-and-bound nodes for the exact domination solver.
    pub solver_nodes: u64,
    /// Maximum vertex count the exact solver accepts.
    pub solver_vertices: u64,
}

impl Budgets {
    pub const DEFAULT_ENUM_ELEMENTS: u64 = 1 << 24;
    pub const DEFAULT_PAIRS: u64 = 1 << 24;
    pub const DEFAULT_TRIPLE_ELEMENTS: u64 = 256; // n <= 4
    pub const DEFAULT_MEM_BITS: u64 = 1 << 33; // 1 GiB
    pub const DEFAULT_SOLVER_NODES: u64 = 100_000_000;
    pub const DEFAULT_SOLVER_VERTICES: u64 = 1000;
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enum_elements: Self::DEFAULT_ENUM_ELEMENTS,
            pairs: Self::DEFAULT_PAIRS,
            triple_elements: Self::DEFAULT_TRIPLE_ELEMENTS,
            mem_bits: Self::DEFAULT_MEM_BITS,
            solver_nodes: Self::DEFAULT_SOLVER_NODES,
            solver_vertices: Self::DEFAULT_SOLVER_VERTICES,
        }
    }
}
