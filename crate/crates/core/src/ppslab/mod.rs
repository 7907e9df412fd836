//! Integer production possibility sets, built one axiom at a time.
//!
//! The real technology under variable returns to scale is
//! `{(x, y) : x >= Σλx_i, y <= Σλy_i, Σλ = 1, λ >= 0}`. Its integer
//! counterpart is grown here from the observations by three integer axioms:
//! inclusion of observations, integer convexity (a point `(u/v)a + (1-u/v)b`
//! is admitted only when it is integral, i.e. `v` divides every component of
//! `a - b`), and integer free disposability. All enumeration happens inside a
//! finite [`BoundingBox`](crate::BoundingBox).

mod closure;
mod gap;
mod membership;
mod segment;

pub use closure::{axiom_closure, Axiom, AxiomOrder, ClosureState, Provenance, Rule};
pub use gap::{lemma_gap, lemma_gap_with, npoint_points_missing_from_closure, real_integer_points};
pub use membership::{
    corollary_witness, membership_corollary, membership_corollary_identity, membership_real_vrs,
    n_point_integer_combination, CorollaryWitness,
};
pub use segment::{integer_disposal_points, integer_segment_points};
