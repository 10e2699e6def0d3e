//! Morphism calculus: exponentials of nilpotent fields, factorization,
//! inversion, differentials and tensor pullback.

pub mod coordmap;
pub mod morphism;
pub mod tensor;

pub use coordmap::CoordMap;
pub use morphism::{
    base_indices, base_mask, compose, differential, differential_by_conjugation,
    differential_underlying, exp_apply, factorize, invert, morph_apply, nil_field,
    pullback_tensor, pullback_tensor_direct, semidirect_conjugate, NilPart, SuperMorphism,
};
pub use tensor::Tensor11;
