//! Imaginary quadratic orders, their ideals and class groups, and R-lattices
//! in the standard symplectic module `R^{2n}`.

pub mod classgroup;
pub mod construct;
pub mod frame;
pub mod ideal;
pub mod lattice;
pub mod order;
pub mod sampling;
pub mod steinitz;

pub use classgroup::{ideal_class, ClassGroup, ReducedForm};
pub use ideal::{integral_ideals_up_to, FracIdeal, IdealJson};
pub use lattice::{LatticeJson, RLattice};
pub use order::{FieldElement, QuadraticOrder};
pub use steinitz::{rank_one_summand_with_class, steinitz_class};
pub use construct::{complement_in, isotropic_chain, relative_extension};
pub use frame::{
    build_frame, concrete_labels, frame_axiom_holds, is_integral_frame, pair_is_unimodular, pushforward_apartment, standard_frame,
    verify_frame,
    FrameCertificates, FrameJson, SymplecticFrame,
};
