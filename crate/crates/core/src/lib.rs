//! Circular split networks, their polygon representations, and the space of
//! circular split networks as a cell complex built from associahedra.

pub mod assoc;
pub mod error;
pub mod metric;
pub mod moduli;
pub mod ordering;
pub mod polygon;
pub mod scalar;
pub mod space;
pub mod splits;
pub mod tree;

pub use assoc::{catalan, face_vertices, faces, flags, subflags, AssocFace, Chamber, Subflag};
pub use error::{Error, Result};
pub use moduli::{
    decode, flag_simplex_dim, glue_moduli, phi_face, phi_point, phi_vertex, ChamberEmbedding, EmbeddedPoint,
    ModuliAtlas, ModuliPoint,
};
pub use ordering::{all_orderings, common_ordering, jointly_circular, CircularOrdering};
pub use polygon::{compatible_orderings, diagonals_cross, twist_sequence, PolygonRep, TwistPath, TwistSide, TwistStep};
pub use scalar::{ExactScalar, Scalar};
pub use space::{delta, split_index, LinkCell, NetworkPoint};
pub use splits::{is_circular, Split, SplitSystem, TaxonSet, WeightedSplitSystem, MAX_TAXA};
pub use tree::{buneman_tree, LeafLabeledTree, TreeEdge};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Fixed-width rational for hot exact loops; arithmetic overflow panics.
pub type Rational128 = num_rational::Ratio<i128>;
