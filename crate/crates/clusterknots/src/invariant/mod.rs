//! The XC-algebra on the one-leg Weyl algebra and the universal invariant of
//! braid closures.

mod diagram;
mod universal;
mod xc;

pub use diagram::{diagram_from_braid, Bead, LongKnotDiagram, ACC};
pub use universal::{perturbed_report, universal_invariant, zeroth_order_check, AlexanderConvention, InvariantResult};
pub use xc::{build_xc, first_difference, kappa_power, ribbon, xc_axioms_check, AxiomResult, XCData};
