//! Minor obstructions for k-apex sub-unicyclic graphs.
//!
//! * [`graph`], [`io`], [`canon`], [`blocks`], [`class`], [`minor`], [`apex`]:
//!   exact routines on graphs with at most 32 vertices.
//! * [`obstruction`]: obstruction tests, shipped catalogs, exhaustive search.
//! * [`cacti`]: butterfly cacti and the cactus obstructions built from them.
//! * [`series`], [`species`]: exact power series and the tree-count system.
//! * [`singularity`]: saddle point, expansion coefficients, growth constants.

pub mod apex;
pub mod blocks;
pub mod canon;
pub mod class;
pub mod error;
pub mod graph;
pub mod io;
pub mod minor;

pub use apex::{apex_at_most, min_apex_size};
pub use blocks::{decompose, peripheral_blocks, BcTree, BlockDecomposition};
pub use canon::{canonical_form, canonical_graph, isomorphic};
pub use class::{cyclomatic, is_in_class, ClassId};
pub use error::{Error, Result};
pub use graph::{make_named, Graph, NamedGraph};
pub use minor::{is_minor, one_step_minors, MinorTester};
pub mod obstruction;
pub use obstruction::{
    is_obstruction, load_catalog, search_obstructions, structural_filters, verify_catalog, Catalog,
    ObstructionRecord,
};
pub mod cacti;
pub use cacti::{central_set, disconnected_obstructions, generate_z, ButterflyCactus};
pub mod series;
pub mod species;
pub use series::PowerSeries;
pub use species::{solve_system, solve_t_diamond, SeriesSystemSolution};
pub mod singularity;
pub use singularity::{
    analyse, check_z1_vanishes, estimate_constant, expansion_coeffs, solve_saddle,
    AsymptoticEstimate, ExpansionCoefficients, SaddlePoint, SingularityReport,
};
