//! Computing with weakly Schreier split extensions of finite monoids.
//!
//! The crate is organised bottom-up:
//!
//! - [`monoid`]: Cayley tables, homomorphisms, inverse structure, congruences.
//! - [`extension`]: split extensions, the weakly Schreier condition and the
//!   preorder of extensions.
//! - [`waction`]: admissible relations with compatible actions, and the
//!   correspondence with weakly Schreier extensions.
//! - [`lambda`]: actions of inverse monoids, λ-semidirect products, the
//!   induced order on actions and Artin-like actions with their joins.
//! - [`frame`]: finite frames and Artin glueings.
//! - [`catalog`]: exhaustive catalogs of small monoids, frames and extensions.
//! - [`format`] and [`dot`]: text formats and Hasse diagrams.

pub mod catalog;
pub mod dot;
pub mod extension;
pub mod fixtures;
pub mod format;
pub mod frame;
pub mod lambda;
pub mod monoid;
pub mod waction;

pub use extension::{
    all_retractions, extension_morphism, extensions_equivalent, find_retraction, verify_split_extension,
    ExtensionCandidate, ExtensionError, SchreierRetraction, SplitExtension,
};
pub use frame::{artin_glueing, check_frame, glueing_equals_lambda, glueing_join, FiniteFrame, Glueing, MeetHom};
pub use lambda::{
    artin_join, artin_like_action, canonical_multiplication, canonicalize, check_inverse_action,
    enumerate_inverse_actions, lambda_action_leq, lambda_product, InverseAction, LambdaProduct,
};
pub use monoid::{
    check_hom, check_monoid, congruence_closure, inverse_structure, is_cokernel, kernel, quotient, Congruence, Elem,
    FiniteMonoid, InverseStructure, MonoidHom,
};
pub use waction::{
    actions_equivalent, build_extension, check_admissible, check_compatible_action, enumerate_wactions,
    extract_waction, waction_leq, ActionTable, AdmissibleRelation, Partition, WActPair,
};

/// Environment variable overriding [`EnumerationBound::default`].
pub const BOUND_ENV: &str = "WSCHREIER_BOUND";

/// Largest `|N|·|H|` for which [`enumerate_wactions`] will run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBound(pub usize);

impl Default for EnumerationBound {
    fn default() -> Self {
        EnumerationBound(9)
    }
}

impl EnumerationBound {
    /// The bound from `WSCHREIER_BOUND`, or the default when unset.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(BOUND_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(EnumerationBound)
                .map_err(|_| format!("{BOUND_ENV} must be a non-negative integer, got {v:?}")),
            Err(_) => Ok(EnumerationBound::default()),
        }
    }
}
