//! Weighted propositional and first-order configuration logics over
//! commutative semirings.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is on.
//!
//! ```
//! use wcl_core::prelude::*;
//!
//! let nat = |k| WPcl::Const(Value::Nat(k));
//! let pq = WPcl::Bool(Pcl::inter(Pil::atom(0).and(Pil::atom(1))));
//! let z = nat(5).plus(pq.clone()).times(pq.clone().times(nat(6)).coalesce(pq.times(nat(3))));
//! let gamma = Configuration::from_masks([0b11]).unwrap();
//! assert_eq!(wpcl_eval(&z, &gamma, SemiringId::Natural).unwrap(), Value::Nat(108));
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod caps;
pub mod error;
pub mod eval;
pub mod focl;
pub mod interaction;
pub mod normal_form;
pub mod pcl;
pub mod pil;
pub mod semiring;
pub mod styles;

pub use caps::Caps;
pub use error::{Error, Result};

pub mod prelude {
    pub use crate::caps::Caps;
    pub use crate::error::{Error, Result};
    pub use crate::eval::{evaluate, semantics, wpcl_equiv, wpcl_eval, wpcl_eval_sparse, Polynomial, Strategy};
    pub use crate::interaction::{Configuration, Interaction, Port, PortUniverse};
    pub use crate::pcl::{pcl_satisfies, Pcl, WPcl};
    pub use crate::pil::{Pil, WPil};
    pub use crate::semiring::{SemiringId, Value};
}
