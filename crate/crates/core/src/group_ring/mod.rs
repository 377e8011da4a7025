//! Words, finitely presented groups, integral group-ring matrices and the
//! specializations that turn them into matrices over a field.

pub mod element;
pub mod fox;
pub mod group;
pub mod matrix;
pub mod specialize;
pub mod word;

pub use element::GroupRingElement;
pub use fox::{fox_derivative, fox_derivative_mapped};
pub use group::{validate_cocycle, validate_quotient, Cocycle, CocycleCheck, FiniteQuotient, FpGroup, QuotientCheck};
pub use matrix::GroupRingMatrix;
pub use specialize::{augment_matrix, specialize_phi, specialize_quotient, Specialization, Specialized};
pub use word::{conjugator, free_reduce, Word};
