//! File formats, benchmark generators and K-map rendering.

pub mod bench;
pub mod kmap;
pub mod ppla;

pub use bench::{gen_benchmark, parse_benchmark_spec, Benchmark, BenchmarkError};
pub use kmap::{kmap_layout, render_kmap, KmapLayout};
pub use ppla::{PplaDocument, PplaError};
