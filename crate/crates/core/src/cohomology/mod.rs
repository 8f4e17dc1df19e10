//! Nonabelian cohomology in degrees 0 and 1 of finite groups.

mod ggroup;
mod group;
mod sequence;
mod zmodule;

pub use ggroup::{
    class_index, cocycles, cohomologous, h0, h1_finite, n_torsion_check, twist_gset, twist_inner, CohClass, Cocycle,
    GGroup, GSet, MAX_COCYCLE_CANDIDATES,
};
pub use group::{FiniteGroup, MAX_GROUP_ORDER};
pub use sequence::{fiber_count_bound, six_term_check, twisted_fiber_check, ShortExactSequence, SixTermReport, TwistedFiberReport};
pub use zmodule::{
    group_order, h1_finite_module, h1_zr, h1_zr_order_via_torsion, order_divides_power, FiniteZModule, GModuleZr,
};
