//! Seeded instance generators: structured and random hypergraphs, planted
//! simplex instances, and the three communication-gadget families used as
//! adversarial stress inputs. Every generator is a pure function of its
//! parameters and seed, so instances replay byte-identically.

mod basic;
mod bits;
mod error;
mod gadgets;
mod spec;

pub use basic::{gen_complete, gen_planted, gen_random};
pub use bits::{CubeBits, NkBits};
pub use error::GenError;
pub use gadgets::{
    lb_disj_from_bits, lb_index_from_bits, lb_nk_from_bits, gen_lb_disj, gen_lb_index, gen_lb_nk,
    GadgetInstance,
};
pub use spec::{ArrivalOrder, Family, FamilyMeta, GeneratedInstance, GeneratorSpec};
