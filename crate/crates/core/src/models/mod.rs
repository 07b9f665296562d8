//! Concrete BV models built from finite presentations.

pub mod cap;
mod decomposition;
mod embedding;
mod hepworth;
mod lie;
mod manifold;
mod rational;
mod sphere;
mod tensor;

pub use decomposition::{
    circle_factor, decomposition_check, decomposition_check_against, decomposition_lhs,
    odd_sphere_factor, theta, DecompositionMismatch, DecompositionReport,
};
pub use embedding::{check_sub_bv, EmbeddingFailure, EmbeddingReport};
pub use hepworth::{
    build_hepworth_model, build_lie_group_hepworth_model, hepworth_b, lie_group_sigma,
    HepworthRule, SigmaTable,
};
pub use lie::{
    build_lie_group_model, build_lie_group_model_mutated, LieGroupData, LieGroupRule,
    MutationScope, SignMutation,
};
pub use manifold::{format_classes, ActionClass, ActionTable, HurTable, Layout, ManifoldAlgebra};
pub use rational::{build_rational_action_model, LoopTable, RationalRule};
pub use sphere::{build_sphere_model, SphereKind, SphereRule};
pub use tensor::{ground_field_model, tensor_model, torsion_group_model, TensorRule};
