//! Generators of the graded algebra.

use crate::multi_index::MultiIndex;
use serde::{Deserialize, Serialize};

/// A jet variable: the `alpha`-th derivative of the `comp`-th Lie component
/// of the field living in `slot`. Slots are flattened (field family,
/// spacetime index) pairs owned by the context.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct JetVar {
    pub slot: u8,
    pub comp: u8,
    pub alpha: MultiIndex,
}

/// A generator of the free graded supercommutative algebra.
///
/// The derived order (jets, then `sig`, then `eta`, then `u`) is the
/// canonical storage order inside monomials. Display uses the conventional
/// order with `sig`/`eta` in front; the Koszul sign of that reordering is
/// folded into the printed coefficient.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Generator {
    /// Jet variable of a field or antifield.
    Jet(JetVar),
    /// Odd horizontal symbol `sig_i`, `i` in `0..n` (0-based).
    Sigma(u8),
    /// Top corner symbol spanning the deepest filtration piece; multiplies
    /// to zero with every jet variable and every `sig_i`.
    Eta,
    /// Even ghost-two variable `u^i` of the covariant extension, `i` in
    /// `0..n` (0-based).
    U(u8),
}

impl Generator {
    pub fn jet(slot: u8, comp: u8, alpha: MultiIndex) -> Self {
        Generator::Jet(JetVar { slot, comp, alpha })
    }

    pub fn is_jet(&self) -> bool {
        matches!(self, Generator::Jet(_))
    }

    pub fn is_sigma(&self) -> bool {
        matches!(self, Generator::Sigma(_))
    }
}
