//! Waldhausen presentations and an exhaustive-or-sampled axiom checker.

mod checker;
mod finite;
mod gamma_view;
mod mutate;

use crate::fincat::{Category, MorId, ObjId};

pub use checker::{check_waldhausen_axioms, is_pushout, CheckOptions};
pub use finite::{pointed_sets, FiniteWald, WeakSub};
pub use gamma_view::{check_weakly_split, gamma_as_wald, GammaWald};
pub use mutate::MutatedView;

/// Result of asking a presentation for the pushout of `B ↢ A → C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PushoutOutcome {
    Square { d: ObjId, into_c: MorId, into_b: MorId },
    /// The pushout exists in the ambient category but not in this window.
    OutOfWindow(String),
    Failed(String),
}

/// A finite, possibly truncated, Waldhausen category with chosen wedges.
pub trait WaldView: Category {
    fn zero(&self) -> ObjId;
    fn is_cof(&self, m: MorId) -> bool;
    fn is_we(&self, m: MorId) -> bool;
    /// Pushout of `tgt(cof) ↢ src(cof) → tgt(m)`; `cof` must be a cofibration.
    fn pushout(&self, cof: MorId, m: MorId) -> PushoutOutcome;
    /// `a ∨ b` with its two inclusions, when the window contains it.
    fn wedge(&self, a: ObjId, b: ObjId) -> Option<(ObjId, MorId, MorId)>;
    /// False for truncations that are not closed under pushouts.
    fn is_complete(&self) -> bool;

    /// Invertibility, by search over the reverse hom-set unless a view
    /// knows better.
    fn is_iso(&self, f: MorId) -> bool {
        crate::fincat::is_iso(self, f)
    }

    /// The unique map out of the zero object.
    #[allow(clippy::wrong_self_convention)]
    fn from_zero(&self, a: ObjId) -> Option<MorId> {
        let h = self.hom(self.zero(), a);
        (h.len() == 1).then(|| h[0])
    }

    /// The unique map into the zero object.
    fn to_zero(&self, a: ObjId) -> Option<MorId> {
        let h = self.hom(a, self.zero());
        (h.len() == 1).then(|| h[0])
    }
}

impl<V: WaldView + ?Sized> WaldView for &V {
    fn zero(&self) -> ObjId {
        (**self).zero()
    }
    fn is_cof(&self, m: MorId) -> bool {
        (**self).is_cof(m)
    }
    fn is_we(&self, m: MorId) -> bool {
        (**self).is_we(m)
    }
    fn pushout(&self, cof: MorId, m: MorId) -> PushoutOutcome {
        (**self).pushout(cof, m)
    }
    fn wedge(&self, a: ObjId, b: ObjId) -> Option<(ObjId, MorId, MorId)> {
        (**self).wedge(a, b)
    }
    fn is_complete(&self) -> bool {
        (**self).is_complete()
    }
    fn is_iso(&self, f: MorId) -> bool {
        (**self).is_iso(f)
    }
}
