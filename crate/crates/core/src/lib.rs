//! Pure dephasing of N-level quantum systems: canonical Lindblad operators,
//! complete-positivity constraints on dephasing rates, and the decay speed
//! limits those constraints impose on multi-qubit coherence.
//!
//! The crate is organized around three moves:
//!
//! * **Forward** ([`model`], [`dynamics`], [`gauge`]): a diagonal Hamiltonian
//!   and diagonal Lindblad operators produce observable decay rates Γ_mn and
//!   frequency shifts Δω_mn; coherences evolve as
//!   `ρ_mn(t) = e^{-t(iω_mn + Γ_mn)} ρ_mn(0)`. Unitary mixing of the
//!   operators and identity shifts with a Hamiltonian correction change
//!   nothing observable.
//! * **Normal form** ([`canonical`]): every operator set reduces to a unique
//!   lower-triangular canonical set of at most N-1 operators, exposing the
//!   actual degrees of freedom behind the rates.
//! * **Backward** ([`feasibility`], [`multiqubit`]): observed rates invert to
//!   canonical operators through a pivoted factorization of their Gram
//!   matrix; non-negative pivots are exactly the realizability constraints.
//!   For qubit registers these constraints bound non-local decoherence by
//!   the local rates, e.g. `Γ23 + Γ14 <= 4Γ` for any qubit pair, and decide
//!   when entanglement can die suddenly.
//!
//! ```
//! use dephasing::feasibility::{constraint_report, invert_rates};
//! use dephasing::model::{rates_from_operators, RateTable};
//!
//! // equal rates on three levels are realizable ...
//! let rt = RateTable::from_pairs(3, &[(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)], &[]).unwrap();
//! let canonical = invert_rates(&rt, None).unwrap();
//! let back = rates_from_operators(&canonical.to_operator_set());
//! assert!((back.gamma_at(1, 2) - 1.0).abs() < 1e-12);
//!
//! // ... but one fast pair between two slow ones is not
//! let bad = RateTable::from_pairs(3, &[(0, 1, 1.0), (0, 2, 5.0), (1, 2, 1.0)], &[]).unwrap();
//! assert!(!constraint_report(&bad, None).unwrap().feasible());
//! ```

pub mod canonical;
pub mod dynamics;
pub mod error;
pub mod feasibility;
pub mod gauge;
pub mod linalg;
pub mod model;
pub mod multiqubit;

pub use canonical::{canonicalize, equivalent, is_canonical, CanonicalSet};
pub use error::{Error, Result};
pub use feasibility::{constraint_report, gram_from_rates, invert_rates, ConstraintReport};
pub use model::{
    propagate, rates_from_operators, DensityMatrix, DephasingModel, DiagonalOperatorSet, RateTable,
};
pub use multiqubit::{concurrence, register_rate_table, three_qubit_scan, RegisterRateSpec};
