use std::borrow::Cow;

use super::{PushoutOutcome, WaldView};
use crate::error::{Error, Result};
use crate::fincat::{Category, MorId, ObjId, Permutative};
use crate::gamma::{
    gamma_compose, is_cofibration, is_isomorphism, is_weak_equivalence, pushout_along_cofibration, splitting_equivalence, wedge, GammaObj,
    TruncatedGamma,
};
use crate::report::Report;

/// A length-bounded window onto Γ(C) seen as a Waldhausen category.
#[derive(Debug, Clone)]
pub struct GammaWald<'a, P: Permutative + ?Sized> {
    window: TruncatedGamma<'a, P>,
    zero: ObjId,
}

pub fn gamma_as_wald<P: Permutative + ?Sized>(pcat: &P, max_len: usize, max_morphisms: u64) -> Result<GammaWald<'_, P>> {
    let window = TruncatedGamma::new(pcat, max_len, max_morphisms)?;
    let zero = window.obj_id(&GammaObj::empty()).expect("the empty tuple is always in the window");
    Ok(GammaWald { window, zero })
}

impl<'a, P: Permutative + ?Sized> GammaWald<'a, P> {
    pub fn window(&self) -> &TruncatedGamma<'a, P> {
        &self.window
    }

    pub fn pcat(&self) -> &'a P {
        self.window.pcat()
    }
}

impl<P: Permutative + ?Sized> Category for GammaWald<'_, P> {
    fn object_count(&self) -> usize {
        self.window.object_count()
    }
    fn src(&self, m: MorId) -> ObjId {
        self.window.src(m)
    }
    fn tgt(&self, m: MorId) -> ObjId {
        self.window.tgt(m)
    }
    fn identity(&self, a: ObjId) -> MorId {
        self.window.identity(a)
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        self.window.compose(outer, inner)
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        self.window.hom(a, b)
    }
    fn object_name(&self, a: ObjId) -> String {
        self.window.object_name(a)
    }
    fn morphism_name(&self, m: MorId) -> String {
        self.window.morphism_name(m)
    }
    fn morphisms(&self) -> Vec<MorId> {
        self.window.morphisms()
    }
}

impl<P: Permutative + ?Sized> WaldView for GammaWald<'_, P> {
    fn zero(&self) -> ObjId {
        self.zero
    }

    fn is_cof(&self, m: MorId) -> bool {
        is_cofibration(self.pcat(), self.window.mor(m))
    }

    fn is_we(&self, m: MorId) -> bool {
        is_weak_equivalence(self.window.mor(m))
    }

    fn pushout(&self, cof: MorId, m: MorId) -> PushoutOutcome {
        let w = &self.window;
        let po = match pushout_along_cofibration(self.pcat(), w.mor(cof), w.mor(m)) {
            Ok(po) => po,
            Err(Error::OutOfWindow(why)) => return PushoutOutcome::OutOfWindow(why),
            Err(e) => return PushoutOutcome::Failed(e.to_string()),
        };
        if po.d.len() > w.max_len() {
            return PushoutOutcome::OutOfWindow(format!("pushout has length {} > {}", po.d.len(), w.max_len()));
        }
        match (w.obj_id(&po.d), w.mor_id(&po.into_c), w.mor_id(&po.into_b)) {
            (Some(d), Some(into_c), Some(into_b)) => PushoutOutcome::Square { d, into_c, into_b },
            _ => PushoutOutcome::Failed("pushout legs are not well-formed morphisms".into()),
        }
    }

    fn wedge(&self, a: ObjId, b: ObjId) -> Option<(ObjId, MorId, MorId)> {
        let w = &self.window;
        let (ab, l, r) = wedge(self.pcat(), w.obj(a), w.obj(b));
        Some((w.obj_id(&ab)?, w.mor_id(&l)?, w.mor_id(&r)?))
    }

    fn is_complete(&self) -> bool {
        false
    }

    fn is_iso(&self, f: MorId) -> bool {
        is_isomorphism(self.pcat(), self.window.mor(f))
    }
}

/// Splits every cofibration of the window as `A ∨ B/A ≃ B` rel `A`.
pub fn check_weakly_split<P: Permutative + ?Sized>(gw: &GammaWald<'_, P>) -> Report {
    let mut r = Report::new();
    r.touch("weakly_split");
    let p = gw.pcat();
    let w = gw.window();
    for m in w.all_morphisms() {
        let cof = w.mor(m);
        if !is_cofibration(p, cof) {
            continue;
        }
        let inst = || cof.display(p);
        let s = match splitting_equivalence(p, cof) {
            Ok(s) => s,
            Err(e) => {
                r.fail("weakly_split", "splitting could not be built", inst(), e.to_string());
                continue;
            }
        };
        if let Err(e) = s.validate(p) {
            r.fail("weakly_split", "splitting is not a morphism", inst(), e.to_string());
            continue;
        }
        r.check("weakly_split", is_weak_equivalence(&s), "splitting is not a weak equivalence", || (inst(), s.display(p)));
        let rest = GammaObj(s.src.0[cof.src.len()..].to_vec());
        let (_, incl, _) = wedge(p, &cof.src, &rest);
        let restricted = gamma_compose(p, &s, &incl);
        r.check("weakly_split", restricted.as_ref() == Ok(cof), "splitting is not rel A", || {
            (inst(), restricted.map_or_else(|e| e.to_string(), |x| x.display(p)))
        });
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::samples::{c2, cyclic, x1};
    use crate::fincat::is_iso;

    #[test]
    fn structural_iso_matches_search() {
        for p in [c2(), x1(), cyclic(3)] {
            let w = gamma_as_wald(&p, 2, 100_000).unwrap();
            for f in w.morphisms() {
                assert_eq!(w.is_iso(f), is_iso(&w, f), "{}", w.morphism_name(f));
            }
        }
    }

    #[test]
    fn out_of_window_pushout_is_reported() {
        let p = c2();
        let w = gamma_as_wald(&p, 1, 1000).unwrap();
        let x = w.window().obj_id(&GammaObj(vec![ObjId(1)])).unwrap();
        let zx = w.from_zero(x).unwrap();
        match w.pushout(zx, zx) {
            PushoutOutcome::OutOfWindow(why) => assert!(why.contains("length 2 > 1"), "{why}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corpus_windows_split() {
        for p in [c2(), x1(), cyclic(3)] {
            let w = gamma_as_wald(&p, 2, 100_000).unwrap();
            let r = check_weakly_split(&w);
            assert!(r.is_clean(), "{:#?}", r.findings);
            assert!(r.section("weakly_split").checked > 0);
        }
    }
}
