use std::collections::HashMap;

use super::{oplax_structure_map, s_on_morphism, s_on_object, PlusCat};
use crate::error::{Error, Result};
use crate::fincat::{Category, FinCat, FinPermCat, MorId, ObjId, Permutative};
use crate::gamma::{zero_map, TruncatedGamma};
use crate::report::Report;

/// Morphisms a comma category may hold before construction gives up.
const COMMA_MORPHISM_CAP: usize = 1 << 20;

/// `s↓A` as a finite category, with each object's `C₊`-object and window
/// morphism `s(X) → A`.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub cat: FinCat,
    pub objects: Vec<(ObjId, MorId)>,
}

/// Objects are pairs `(X, u: s(X) → A)`, with `u` restricted to weak
/// equivalences unless `all_morphisms` is set. A morphism `(X, u) → (Y, v)`
/// is `h: X → Y` in `C₊` with `v ∘ s(h) = u`.
pub fn comma_over(plus: &PlusCat, window: &TruncatedGamma<'_, FinPermCat>, a: ObjId, all_morphisms: bool) -> Result<CommaCategory> {
    let pc = plus.cat();
    let mut objects: Vec<(ObjId, MorId)> = Vec::new();
    let mut s_obj: Vec<ObjId> = Vec::new();
    for x in pc.objects() {
        let sx = s_on_object(plus, x);
        let sx_id = window.obj_id(&sx).ok_or_else(|| Error::OutOfWindow(format!("s({}) is not in the window", pc.object_name(x))))?;
        s_obj.push(sx_id);
        for &u in window.hom(sx_id, a).iter() {
            if all_morphisms || crate::gamma::is_weak_equivalence(window.mor(u)) {
                objects.push((x, u));
            }
        }
    }
    let s_mor: Vec<MorId> = pc
        .morphisms()
        .into_iter()
        .map(|h| window.mor_id(&s_on_morphism(plus, h)).expect("s(h) lies between singletons in the window"))
        .collect();

    let names: Vec<String> = objects.iter().map(|&(x, u)| format!("{} ⟶ {}", pc.object_name(x), window.morphism_name(u))).collect();
    let mut morphisms: Vec<(String, ObjId, ObjId)> = Vec::new();
    let mut underlying: Vec<MorId> = Vec::new();
    let mut by_ends: HashMap<(usize, usize, MorId), MorId> = HashMap::new();
    let mut identity = vec![MorId(0); objects.len()];
    for (i, &(x, u)) in objects.iter().enumerate() {
        for (j, &(y, v)) in objects.iter().enumerate() {
            for &h in pc.hom(x, y).iter() {
                if window.compose(v, s_mor[h.0]) != Some(u) {
                    continue;
                }
                let id = MorId(morphisms.len());
                if h == pc.identity(x) && i == j {
                    identity[i] = id;
                }
                by_ends.insert((i, j, h), id);
                morphisms.push((pc.morphism_name(h), ObjId(i), ObjId(j)));
                underlying.push(h);
                if morphisms.len() > COMMA_MORPHISM_CAP {
                    return Err(Error::Budget(format!("comma category over {} exceeds {COMMA_MORPHISM_CAP} morphisms", window.object_name(a))));
                }
            }
        }
    }
    let mut compose = Vec::new();
    for (f, &(_, i, j)) in morphisms.iter().enumerate() {
        for (g, &(_, j2, k)) in morphisms.iter().enumerate() {
            if j2 != j {
                continue;
            }
            if let Some(hg) = pc.compose(underlying[g], underlying[f]) {
                if let Some(&gf) = by_ends.get(&(i.0, k.0, hg)) {
                    compose.push(((MorId(g), MorId(f)), gf));
                }
            }
        }
    }
    let cat = FinCat::from_tables(names, morphisms, identity, compose)?;
    Ok(CommaCategory { cat, objects })
}

/// Objects receiving exactly one morphism from every object.
pub fn terminal_objects<C: Category + ?Sized>(cat: &C) -> Vec<ObjId> {
    let objs = cat.objects();
    objs.iter().copied().filter(|&t| objs.iter().all(|&x| cat.hom(x, t).len() == 1)).collect()
}

pub fn find_terminal<C: Category + ?Sized>(cat: &C) -> Option<ObjId> {
    terminal_objects(cat).first().copied()
}

/// For every object `A` of the window, `s↓A` must have exactly one terminal
/// object: `(*, id_())` when `A = ()`, otherwise `T^a(A)` with the structure
/// map `s(T^a(A)) → A`.
pub fn check_quillen_a(plus: &PlusCat, max_len: usize, max_morphisms: u64, all_morphisms: bool) -> Result<Report> {
    let p = plus.inner();
    let window = TruncatedGamma::new(p, max_len.max(1), max_morphisms)?;
    let mut r = Report::new();
    r.touch("terminal");
    for a in window.objects() {
        let obj = window.obj(a);
        if obj.len() > max_len {
            continue;
        }
        let comma = comma_over(plus, &window, a, all_morphisms)?;
        let designated = if obj.is_empty() {
            window.mor_id(&zero_map(obj, obj)).map(|u| (plus.star(), u))
        } else {
            let Ok(mu) = oplax_structure_map(p, obj.entries()) else {
                r.skip("terminal");
                continue;
            };
            let t = p.tensor_power(obj.entries()).expect("structure map exists");
            window.mor_id(&mu).map(|u| (t, u))
        };
        let found: Vec<(ObjId, MorId)> = terminal_objects(&comma.cat).into_iter().map(|o| comma.objects[o.0]).collect();
        let ok = designated.is_some() && found == designated.into_iter().collect::<Vec<_>>();
        r.check("terminal", ok, "comma category lacks the designated terminal object", || {
            let show = |(x, u): (ObjId, MorId)| format!("{} ⟶ {}", plus.cat().object_name(x), window.morphism_name(u));
            (
                format!("s↓{} ({} objects)", window.object_name(a), comma.objects.len()),
                format!("terminal: [{}]", found.iter().map(|&o| show(o)).collect::<Vec<_>>().join("; ")),
            )
        });
    }
    if max_len == 0 {
        r.note("terminal: singletons were enumerated to build s↓A; only A = () was checked");
    }
    Ok(r)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::plus_category;
    use crate::fincat::samples::{c2, cyclic, x1};
    use crate::gamma::GammaObj;

    #[test]
    fn over_the_empty_tuple_there_is_one_object() {
        let plus = plus_category(&c2());
        let w = TruncatedGamma::new(plus.inner(), 1, 1000).unwrap();
        let a = w.obj_id(&GammaObj::empty()).unwrap();
        let comma = comma_over(&plus, &w, a, false).unwrap();
        assert_eq!(comma.objects.len(), 1);
        assert_eq!(comma.objects[0].0, plus.star());
        assert_eq!(find_terminal(&comma.cat), Some(ObjId(0)));
    }

    #[test]
    fn c2_pair_has_e_as_terminal() {
        let plus = plus_category(&c2());
        let w = TruncatedGamma::new(plus.inner(), 2, 10_000).unwrap();
        let (e, x) = (ObjId(0), ObjId(1));
        let a = w.obj_id(&GammaObj(vec![x, x])).unwrap();
        let comma = comma_over(&plus, &w, a, false).unwrap();
        let t = find_terminal(&comma.cat).unwrap();
        let (obj, u) = comma.objects[t.0];
        assert_eq!(obj, e);
        assert_eq!(w.mor(u), &oplax_structure_map(plus.inner(), &[x, x]).unwrap());
        assert_eq!(terminal_objects(&comma.cat).len(), 1);
    }

    #[test]
    fn x1_pair_has_two_objects_and_one_terminal() {
        let plus = plus_category(&x1());
        let w = TruncatedGamma::new(plus.inner(), 2, 10_000).unwrap();
        let x = ObjId(1);
        let a = w.obj_id(&GammaObj(vec![x, x])).unwrap();
        let comma = comma_over(&plus, &w, a, false).unwrap();
        assert_eq!(comma.objects.len(), 2);
        assert!(crate::fincat::validate_category(&comma.cat).is_clean());
        let found = terminal_objects(&comma.cat);
        assert_eq!(found.len(), 1);
        assert_eq!(w.mor(comma.objects[found[0].0].1).comps, vec![Some(plus.inner().identity(x))]);
    }

    #[test]
    fn all_morphisms_variant_loses_the_terminal_object() {
        // (x) → () is not a weak equivalence, but with every morphism
        // admitted it becomes an object with no map to (*, id).
        let plus = plus_category(&x1());
        let w = TruncatedGamma::new(plus.inner(), 1, 1000).unwrap();
        let a = w.obj_id(&GammaObj::empty()).unwrap();
        let comma = comma_over(&plus, &w, a, true).unwrap();
        assert!(comma.objects.len() > 1);
        assert_eq!(find_terminal(&comma.cat), None);
    }

    #[test]
    fn corpus_sweep_to_length_three() {
        for c in [c2(), x1(), cyclic(3)] {
            let plus = plus_category(&c);
            let r = check_quillen_a(&plus, 3, 1_000_000, false).unwrap();
            assert!(r.is_clean(), "{:#?}", r.findings);
            let n = 1 + c.object_count() + c.object_count().pow(2) + c.object_count().pow(3);
            assert_eq!(r.section("terminal").passed as usize, n);
        }
    }
}
