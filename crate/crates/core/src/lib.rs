//! Fresnel pseudoprocesses: the signed density of order `alpha > 1`, its
//! subordination by one-sided stable processes, the resulting stable sign
//! mixtures, and the modal structure of the Cauchy case.

pub(crate) mod dd;
pub mod error;
pub mod fresnel_density;
pub mod mixture_analysis;
pub mod quad;
pub mod signed_measure;
pub mod special_fn;
pub mod stable_sampling;
pub mod subordination;

pub use error::{Error, Result};
pub use fresnel_density::{FresnelDensity, Method, PseudoParams};
pub use stable_sampling::SeededStream;
pub use subordination::{parameter_map, ParameterMap, StableParams, SubordinationSpec};
