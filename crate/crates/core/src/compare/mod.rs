//! The comparison `C → C₊ → wΓ(C)`: the adjoined unit, the oplax inclusion
//! `s`, Quillen A witnesses in the comma categories `s↓A`, and the counit of
//! `Γ ⊣ forget` with its triangle identities and exactness.

mod comma;
mod counit;
mod oplax;

use crate::fincat::{Category, FinCat, FinPermCat, MorId, ObjId};
use crate::gamma::{gamma_identity, singleton, singleton_mor, GammaMor, GammaObj};

pub use comma::{check_quillen_a, comma_over, find_terminal, terminal_objects, CommaCategory};
pub use counit::{
    check_counit_exact, check_triangle_identities, check_triangle_identities_d, counit_on_morphism,
    counit_on_morphism_direct, counit_on_object,
};
pub use oplax::{check_oplax_coherence, gamma_twist, oplax_structure_map};

/// `C₊`: `C` with a fresh strict unit `*` whose only morphism is `id_*`.
///
/// Objects and morphisms of `C` keep their indices, so `C ↪ C₊` is the
/// identity on ids; `*` and `id_*` come last.
#[derive(Debug, Clone)]
pub struct PlusCat {
    inner: FinPermCat,
    plus: FinPermCat,
    star: ObjId,
}

impl PlusCat {
    /// The original category `C`.
    pub fn inner(&self) -> &FinPermCat {
        &self.inner
    }

    pub fn cat(&self) -> &FinPermCat {
        &self.plus
    }

    pub fn star(&self) -> ObjId {
        self.star
    }

    pub fn star_identity(&self) -> MorId {
        self.plus.identity(self.star)
    }
}

pub fn plus_category(pcat: &FinPermCat) -> PlusCat {
    let base = pcat.base();
    let mut star_name = "*".to_string();
    while base.find_object(&star_name).is_some() {
        star_name.push('\'');
    }
    let star = ObjId(base.object_count());
    let id_star = MorId(base.morphism_count());
    let mut objects = base.object_names().to_vec();
    objects.push(star_name.clone());
    let mut morphisms: Vec<(String, ObjId, ObjId)> = base.all_morphisms().map(|m| (base.morphism_name(m), base.src(m), base.tgt(m))).collect();
    morphisms.push((format!("id_{star_name}"), star, star));
    let mut identity: Vec<MorId> = base.objects().into_iter().map(|a| base.identity(a)).collect();
    identity.push(id_star);
    let mut compose = base.composition_entries();
    compose.push(((id_star, id_star), id_star));
    let cat = FinCat::from_tables(objects, morphisms, identity, compose).expect("indices extend those of C");

    let all_objs: Vec<ObjId> = cat.objects();
    let all_mors: Vec<MorId> = cat.all_morphisms().collect();
    let mut tensor_obj = pcat.tensor_obj_entries();
    for &a in &all_objs {
        tensor_obj.push(((star, a), a));
        if a != star {
            tensor_obj.push(((a, star), a));
        }
    }
    let mut tensor_mor = pcat.tensor_mor_entries();
    for &f in &all_mors {
        tensor_mor.push(((id_star, f), f));
        if f != id_star {
            tensor_mor.push(((f, id_star), f));
        }
    }
    let mut symmetry = pcat.symmetry_entries();
    for &a in &all_objs {
        symmetry.push(((star, a), cat.identity(a)));
        if a != star {
            symmetry.push(((a, star), cat.identity(a)));
        }
    }
    let plus = FinPermCat::new(cat, star, tensor_obj, tensor_mor, symmetry).expect("indices extend those of C");
    PlusCat { inner: pcat.clone(), plus, star }
}

/// `s(*) = ()` and `s(c) = (c)`.
pub fn s_on_object(plus: &PlusCat, a: ObjId) -> GammaObj {
    if a == plus.star {
        GammaObj::empty()
    } else {
        singleton(a)
    }
}

/// `s(id_*) = id_()` and `s(h) = (ι₁, h)`.
pub fn s_on_morphism(plus: &PlusCat, h: MorId) -> GammaMor {
    if h == plus.star_identity() {
        gamma_identity(&plus.inner, &GammaObj::empty())
    } else {
        singleton_mor(&plus.inner, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::samples::{c2, cyclic, x1};
    use crate::fincat::{validate_category, validate_permutative, Permutative};
    use crate::gamma::{gamma_compose, is_weak_equivalence};

    #[test]
    fn plus_of_c2() {
        let plus = plus_category(&c2());
        let p = plus.cat();
        assert_eq!(p.object_count(), 3);
        assert_eq!(p.unit(), plus.star());
        assert_eq!(p.object_name(plus.star()), "*");
        let (e, x) = (ObjId(0), ObjId(1));
        assert_eq!(p.tensor_obj(x, x), Some(e));
        assert_eq!(p.tensor_obj(plus.star(), x), Some(x));
        assert_eq!(p.tensor_obj(e, plus.star()), Some(e));
    }

    #[test]
    fn plus_of_x1_counts() {
        let plus = plus_category(&x1());
        assert_eq!(plus.cat().object_count(), 3);
        assert_eq!(plus.cat().morphism_count(), 3 + 1);
        assert!(plus.cat().hom(plus.star(), ObjId(1)).is_empty());
    }

    #[test]
    fn plus_categories_are_valid() {
        for c in [c2(), x1(), cyclic(3), cyclic(1)] {
            let plus = plus_category(&c);
            assert!(validate_category(plus.cat().base()).is_clean());
            let r = validate_permutative(plus.cat());
            assert!(r.is_clean(), "{:#?}", r.findings);
            // Restricting along C ↪ C₊ recovers C.
            for a in c.objects() {
                for b in c.objects() {
                    assert_eq!(plus.cat().tensor_obj(a, b), c.tensor_obj(a, b));
                    assert_eq!(plus.cat().symmetry(a, b), c.symmetry(a, b));
                }
            }
        }
    }

    #[test]
    fn star_name_avoids_collisions() {
        let mut b = FinCat::builder();
        let o = b.object("*");
        let base = b.build().unwrap();
        let id = base.identity(o);
        let c = FinPermCat::new(base, o, [((o, o), o)], [], [((o, o), id)]).unwrap();
        let plus = plus_category(&c);
        assert_eq!(plus.cat().object_name(plus.star()), "*'");
    }

    #[test]
    fn s_is_a_functor_into_weak_equivalences() {
        for c in [c2(), x1(), cyclic(3)] {
            let plus = plus_category(&c);
            let p = plus.cat();
            assert_eq!(s_on_object(&plus, plus.star()), GammaObj::empty());
            for f in p.morphisms() {
                let sf = s_on_morphism(&plus, f);
                assert!(sf.validate(&c).is_ok());
                assert!(is_weak_equivalence(&sf));
                assert_eq!(sf.src, s_on_object(&plus, p.src(f)));
                for g in p.morphisms() {
                    if let Some(gf) = p.compose(g, f) {
                        let lhs = gamma_compose(&c, &s_on_morphism(&plus, g), &sf).unwrap();
                        assert_eq!(lhs, s_on_morphism(&plus, gf));
                    }
                }
            }
            for a in p.objects() {
                assert_eq!(s_on_morphism(&plus, p.identity(a)), gamma_identity(&c, &s_on_object(&plus, a)));
            }
        }
    }

    #[test]
    fn s_of_t_is_a_weak_equivalence() {
        let c = x1();
        let plus = plus_category(&c);
        let t = c.base().find_morphism("t").unwrap();
        let st = s_on_morphism(&plus, t);
        assert_eq!(st.phi, vec![vec![0]]);
        assert_eq!(st.comps, vec![Some(t)]);
        assert!(is_weak_equivalence(&st));
    }
}
