//! Derivability in the Lambek calculus with one (left) division and a
//! weakening modality `!` that occurs only with negative polarity, empty
//! antecedents allowed.
//!
//! Two independent deciders are provided:
//!
//! * [`prover::prove`], cut-free backward proof search over the rules
//!   `(->\)`, `(\->)`, `(!->)` and `(W!->)`;
//! * [`net::exists_net`], search for a proof net on the sequent's
//!   [`frame::Frame`].
//!
//! [`bridge`] translates in both directions between derivations and nets.
//!
//! ```
//! use lambek_core::{parse_sequent, prove, exists_net};
//!
//! let s = parse_sequent(r"(p1\p1)\!p2 -> p2").unwrap();
//! assert!(prove(&s).is_some());
//! assert!(exists_net(&s).is_some());
//! ```

pub mod bridge;
pub mod corpus;
pub mod frame;
pub mod lemmas;
pub mod net;
pub mod prover;
pub mod syntax;
pub mod xcheck;

pub use bridge::{derivation_to_net, net_to_derivation, BridgeError};
pub use frame::{build_frame, Frame};
pub use net::{exists_net, search_net, Net};
pub use prover::{derivable, prove, Derivation, RuleTag};
pub use syntax::{parse_sequent, ParseError, Sequent, Type};
