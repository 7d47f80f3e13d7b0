//! Chain-level machinery: tag bases, orbit models, function cochains,
//! subcomplexes, comparison maps, and the periodic resolution of cyclic
//! groups.

pub mod basis;
pub mod chain;
pub mod compare;
pub mod functions;
pub mod models;
pub mod periodic;
pub mod sub;
pub mod symimage;

pub use basis::{orbit_decomposition, BarBasis, ExtBasis, Orbits, SignedBasis};
pub use chain::{ChainMapOfFp, ComplexOfFp, Direction, HomologySpace};
pub use functions::FunctionModel;
pub use compare::{check_comparison_identities, lambda_tag, mu_tag, nu_tag};
pub use models::{
    hom_complex, tensor_complex, tensor_coords_of_tag, tensor_map_matrices, HomDegree, HomModel,
    TensorModel,
};
pub use periodic::{periodic_chain_complex, periodic_cochain_complex};
pub use symimage::{lambda_to_ext_matrices, sym_image_complex, BoundaryRoute, SymImageModel};
pub use sub::{
    quotient_by_lattices, quotient_of_sub_by_sub, skew_lattices, symmetrizer_fixed_lattices,
    subcomplex_from_lattices, vanishing_skew_lattices, QuotientParts, SubcomplexParts,
};
