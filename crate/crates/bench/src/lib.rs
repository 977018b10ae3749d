//! Empty library target; this crate only carries the `benches/` tree.
