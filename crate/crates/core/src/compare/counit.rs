use itertools::Itertools;

use super::oplax_structure_map;
use crate::error::{Error, Result};
use crate::fincat::{mediating_morphism, Category, Cocone, FinPermCat, Mediating, MorId, ObjId, Permutative};
use crate::gamma::{is_cofibration, is_weak_equivalence, pushout_along_cofibration, singleton, GammaMor, GammaObj, TruncatedGamma};
use crate::report::Report;
use crate::wald::{gamma_as_wald, is_pushout, CheckOptions, FiniteWald, WaldView, WeakSub};

/// Left-nested chosen wedge of `objs` with the inclusion of each summand.
fn summands<V: WaldView + ?Sized>(d: &V, objs: &[ObjId]) -> Result<(ObjId, Vec<MorId>)> {
    let Some((&first, rest)) = objs.split_first() else {
        return Ok((d.zero(), Vec::new()));
    };
    let mut acc = first;
    let mut incs = vec![d.identity(first)];
    for &o in rest {
        let (w, l, r) = d
            .wedge(acc, o)
            .ok_or_else(|| Error::OutOfWindow(format!("wedge {} ∨ {} is not in the presentation", d.object_name(acc), d.object_name(o))))?;
        for inc in &mut incs {
            *inc = d.compose(l, *inc).expect("wedge inclusion composes with a map into its source");
        }
        incs.push(r);
        acc = w;
    }
    Ok((acc, incs))
}

fn mediate<V: WaldView + ?Sized>(d: &V, apex: ObjId, target: ObjId, legs: Vec<(MorId, MorId)>, what: &str) -> Result<MorId> {
    match mediating_morphism(d, &Cocone { apex, target, legs }) {
        Mediating::Unique(m) => Ok(m),
        Mediating::NotFound => Err(Error::Presentation(format!("no {what} {} → {}", d.object_name(apex), d.object_name(target)))),
        Mediating::NotUnique(a, b) => Err(Error::Presentation(format!(
            "{what} {} → {} is not unique: {} and {}",
            d.object_name(apex),
            d.object_name(target),
            d.morphism_name(a),
            d.morphism_name(b)
        ))),
    }
}

fn then<V: WaldView + ?Sized>(d: &V, outer: MorId, inner: MorId) -> Result<MorId> {
    d.compose(outer, inner)
        .ok_or_else(|| Error::MissingComposite { outer: d.morphism_name(outer), inner: d.morphism_name(inner) })
}

/// `d_1 ∨ … ∨ d_n`, and the zero object for the empty tuple.
pub fn counit_on_object<V: WaldView + ?Sized>(d: &V, objs: &[ObjId]) -> Result<ObjId> {
    summands(d, objs).map(|(w, _)| w)
}

/// Components of `m` as maps of `D`, with `d_i → 0` for empty blocks.
fn components<V: WaldView + ?Sized>(d: &V, m: &GammaMor) -> Result<Vec<MorId>> {
    m.comps
        .iter()
        .zip(&m.src.0)
        .map(|(c, &di)| match c {
            Some(f) => Ok(*f),
            None => d.to_zero(di).ok_or_else(|| Error::Presentation(format!("no unique map {} → 0", d.object_name(di)))),
        })
        .collect()
}

/// `ε(φ, f)`: `∨ f_i`, then the reindexing isomorphism, then a fold map per
/// target position. `m` is a morphism of `Γ(wD)` whose objects and
/// components are objects and morphisms of `D`.
pub fn counit_on_morphism<V: WaldView + ?Sized>(d: &V, m: &GammaMor) -> Result<MorId> {
    let (ed, inc_d) = summands(d, m.src.entries())?;
    let (ee, inc_e) = summands(d, m.tgt.entries())?;
    if m.src.is_empty() {
        return d.from_zero(ee).ok_or_else(|| Error::Presentation("zero object is not initial".into()));
    }
    if m.tgt.is_empty() {
        return d.to_zero(ed).ok_or_else(|| Error::Presentation("zero object is not terminal".into()));
    }
    let f = components(d, m)?;

    let xs: Vec<(ObjId, Vec<MorId>)> = m.phi.iter().map(|b| summands(d, &m.tgt.select(b))).try_collect()?;
    let (ex, inc_x) = summands(d, &xs.iter().map(|x| x.0).collect_vec())?;
    let legs = (0..m.src.len()).map(|i| Ok((inc_d[i], then(d, inc_x[i], f[i])?))).collect::<Result<Vec<_>>>()?;
    let vee = mediate(d, ed, ex, legs, "wedge of components")?;

    let pre: Vec<Vec<usize>> = (0..m.tgt.len()).map(|j| (0..m.src.len()).filter(|&i| m.phi[i].contains(&j)).collect()).collect();
    let ys: Vec<(ObjId, Vec<MorId>)> = pre.iter().enumerate().map(|(j, is)| summands(d, &vec![m.tgt.0[j]; is.len()])).try_collect()?;
    let (ey, inc_y) = summands(d, &ys.iter().map(|y| y.0).collect_vec())?;
    let mut legs = Vec::new();
    for (i, block) in m.phi.iter().enumerate() {
        for (k, &j) in block.iter().enumerate() {
            let pos = pre[j].iter().position(|&i2| i2 == i).expect("i is a preimage of j");
            legs.push((then(d, inc_x[i], xs[i].1[k])?, then(d, inc_y[j], ys[j].1[pos])?));
        }
    }
    let reindex = mediate(d, ex, ey, legs, "reindexing map")?;

    let mut legs = Vec::new();
    for (j, (_, incs)) in ys.iter().enumerate() {
        for &inc in incs {
            legs.push((then(d, inc_y[j], inc)?, inc_e[j]));
        }
    }
    let fold = mediate(d, ey, ee, legs, "fold map")?;
    then(d, fold, then(d, reindex, vee)?)
}

/// The same map characterised in one step: the unique map out of
/// `∨ d_i` whose `i`-th leg is `f_i` followed by the inclusion of the block
/// `φ(i)`.
pub fn counit_on_morphism_direct<V: WaldView + ?Sized>(d: &V, m: &GammaMor) -> Result<MorId> {
    let (ed, inc_d) = summands(d, m.src.entries())?;
    let (ee, inc_e) = summands(d, m.tgt.entries())?;
    let f = components(d, m)?;
    let mut legs = Vec::new();
    for (i, block) in m.phi.iter().enumerate() {
        let (xi, inc) = summands(d, &m.tgt.select(block))?;
        let block_legs = block.iter().zip(inc).map(|(&j, k)| (k, inc_e[j])).collect();
        let into = mediate(d, xi, ee, block_legs, "block inclusion")?;
        legs.push((inc_d[i], then(d, into, f[i])?));
    }
    mediate(d, ed, ee, legs, "counit map")
}

/// `Γ(η)` applied to a morphism of `Γ(C)`, as a morphism of
/// `Γ(wΓ(C))` over the window: singletons, and components
/// `μ ∘ s(f_i): (c_i) → (c_j)_{j ∈ φ(i)}`.
fn gamma_of_unit<P: Permutative + ?Sized>(p: &P, w: &TruncatedGamma<'_, P>, m: &GammaMor) -> Result<GammaMor> {
    let single = |c: ObjId| w.obj_id(&singleton(c)).ok_or_else(|| Error::OutOfWindow("singletons need length 1".into()));
    let src = GammaObj(m.src.0.iter().map(|&c| single(c)).try_collect()?);
    let tgt = GammaObj(m.tgt.0.iter().map(|&c| single(c)).try_collect()?);
    let mut comps = Vec::with_capacity(m.comps.len());
    for (i, block) in m.phi.iter().enumerate() {
        comps.push(match m.comps[i] {
            None => None,
            Some(fi) => {
                let mu = oplax_structure_map(p, &m.tgt.select(block))?;
                let c = GammaMor { src: singleton(m.src.0[i]), tgt: mu.tgt, phi: mu.phi, comps: vec![Some(fi)] };
                Some(w.mor_id(&c).ok_or_else(|| Error::OutOfWindow(format!("component {} is outside the window", i + 1)))?)
            }
        });
    }
    Ok(GammaMor { src, tgt, phi: m.phi.clone(), comps })
}

fn plan(total: usize, opts: &CheckOptions, section: &str, r: &mut Report) -> Vec<usize> {
    use rand::SeedableRng;
    if total <= opts.budget {
        return (0..total).collect();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7472_6961);
    let mut idx = rand::seq::index::sample(&mut rng, total, opts.budget).into_vec();
    idx.sort_unstable();
    r.note(format!("{section}: sampled {} of {total} instances (seed {})", opts.budget, opts.seed));
    idx
}

/// Records outcomes, treating a missing wedge or composite as a window
/// skip; the first reason per section ends up in the report notes.
#[derive(Default)]
struct Recorder {
    skips: std::collections::BTreeMap<String, (usize, String)>,
}

impl Recorder {
    fn record(&mut self, r: &mut Report, section: &str, outcome: Result<bool>, kind: &str, inst: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => r.check(section, ok, kind, || (inst(), String::new())),
            Err(e @ (Error::OutOfWindow(_) | Error::MissingComposite { .. })) => {
                r.skip(section);
                let entry = self.skips.entry(section.to_string()).or_insert_with(|| (0, e.to_string()));
                entry.0 += 1;
            }
            Err(e) => r.fail(section, kind, inst(), e.to_string()),
        }
    }

    fn finish(self, r: &mut Report) {
        for (section, (n, first)) in self.skips {
            r.note(format!("{section}: {n} instances skipped as out of window (first: {first})"));
        }
    }
}

/// `ε_{Γ(C)} ∘ Γ(η_C) = id` on the objects and morphisms of the window of
/// length `max_len`.
pub fn check_triangle_identities(p: &FinPermCat, max_len: usize, max_morphisms: u64, opts: CheckOptions) -> Result<Report> {
    let gw = gamma_as_wald(p, max_len.max(1), max_morphisms)?;
    let w = gw.window();
    let mut r = Report::new();
    let mut rec = Recorder::default();
    r.touch("triangle_objects");
    r.touch("triangle_morphisms");
    for a in w.objects() {
        let obj = w.obj(a);
        let outcome = obj
            .0
            .iter()
            .map(|&c| w.obj_id(&singleton(c)).ok_or_else(|| Error::OutOfWindow(String::new())))
            .collect::<Result<Vec<_>>>()
            .and_then(|singles| counit_on_object(&gw, &singles))
            .map(|e| e == a);
        rec.record(&mut r, "triangle_objects", outcome, "ε(Γη(A)) ≠ A", || w.object_name(a));
    }
    let mors = w.morphisms();
    for k in plan(mors.len(), &opts, "triangle_morphisms", &mut r) {
        let m = mors[k];
        let outcome = gamma_of_unit(p, w, w.mor(m)).and_then(|gm| {
            let lit = counit_on_morphism(&gw, &gm)?;
            let direct = counit_on_morphism_direct(&gw, &gm)?;
            Ok(lit == m && direct == m)
        });
        rec.record(&mut r, "triangle_morphisms", outcome, "ε(Γη(f)) ≠ f", || w.morphism_name(m));
    }
    rec.finish(&mut r);
    Ok(r)
}

/// `ε_D ∘ η_{wD} = id` on the objects and weak equivalences of `D`.
pub fn check_triangle_identities_d<V: WaldView + ?Sized>(d: &V) -> Report {
    let mut r = Report::new();
    let mut rec = Recorder::default();
    r.touch("triangle_d");
    for a in d.objects() {
        rec.record(&mut r, "triangle_d", counit_on_object(d, &[a]).map(|e| e == a), "ε((d)) ≠ d", || d.object_name(a));
    }
    for f in d.morphisms().into_iter().filter(|&f| d.is_we(f)) {
        let m = GammaMor { src: singleton(d.src(f)), tgt: singleton(d.tgt(f)), phi: vec![vec![0]], comps: vec![Some(f)] };
        rec.record(&mut r, "triangle_d", counit_on_morphism(d, &m).map(|e| e == f), "ε((ι₁, f)) ≠ f", || d.morphism_name(f));
    }
    rec.finish(&mut r);
    r
}

/// Exactness of `ε_D: Γ(wD) → D` on the window of length `max_len`: zero,
/// weak equivalences, cofibrations, pushouts along cofibrations, wedges of
/// singletons, and functoriality. The literal and one-step descriptions of
/// `ε` are compared on every morphism.
pub fn check_counit_exact(d: &FiniteWald, max_len: usize, max_morphisms: u64, opts: CheckOptions) -> Result<Report> {
    let ws = WeakSub::new(d);
    let w = TruncatedGamma::new(&ws, max_len, max_morphisms)?;
    let mut r = Report::new();
    let mut rec = Recorder::default();
    for s in ["zero", "literal_vs_direct", "preserves_we", "preserves_cof", "functoriality", "preserves_pushouts", "preserves_wedges"] {
        r.touch(s);
    }
    let zero_ok = counit_on_object(d, &[]).map(|z| z == d.zero());
    rec.record(&mut r, "zero", zero_ok, "ε(()) is not the zero object", || "()".into());

    let mors = w.morphisms();
    let mut eps: Vec<Option<MorId>> = vec![None; mors.len()];
    for (k, &m) in mors.iter().enumerate() {
        let gm = w.mor(m);
        let inst = || gm.display(&ws);
        let lit = counit_on_morphism(d, gm);
        let direct = counit_on_morphism_direct(d, gm);
        let agree = match (&lit, &direct) {
            (Ok(a), Ok(b)) => Ok(a == b),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        rec.record(&mut r, "literal_vs_direct", agree, "the two descriptions of ε disagree", inst);
        let Ok(e) = lit else { continue };
        eps[k] = Some(e);
        if is_weak_equivalence(gm) {
            r.check("preserves_we", d.is_we(e), "ε of a weak equivalence is not a weak equivalence", || (inst(), d.morphism_name(e)));
        }
        if is_cofibration(&ws, gm) {
            r.check("preserves_cof", d.is_cof(e), "ε of a cofibration is not a cofibration", || (inst(), d.morphism_name(e)));
        }
    }
    let eps_of = |m: MorId| eps[m.0];

    let mut pairs = Vec::new();
    for &f in &mors {
        for a in w.objects() {
            for &g in w.hom(w.tgt(f), a).iter() {
                pairs.push((g, f));
            }
        }
    }
    let (mut undefined, mut outside) = (0usize, 0usize);
    for k in plan(pairs.len(), &opts, "functoriality", &mut r) {
        let (g, f) = pairs[k];
        // Pairs with overlapping or empty blocks have no composite, so the
        // law has no instance there.
        let Some(gf) = w.compose(g, f) else {
            undefined += 1;
            continue;
        };
        match (eps_of(g), eps_of(f), eps_of(gf)) {
            (Some(eg), Some(ef), Some(egf)) => r.check("functoriality", d.compose(eg, ef) == Some(egf), "ε(g ∘ f) ≠ ε(g) ∘ ε(f)", || {
                (format!("{} ∘ {}", w.morphism_name(g), w.morphism_name(f)), d.morphism_name(egf))
            }),
            _ => {
                r.skip("functoriality");
                outside += 1;
            }
        }
    }
    if undefined > 0 {
        r.note(format!("functoriality: {undefined} pairs excluded because their composite in Γ is undefined"));
    }
    if outside > 0 {
        r.note(format!("functoriality: {outside} instances skipped as out of window (first: ε undefined on a factor or the composite)"));
    }

    let cofs: Vec<MorId> = mors.iter().copied().filter(|&m| is_cofibration(&ws, w.mor(m))).collect();
    let mut spans: Vec<(MorId, MorId)> = Vec::new();
    for &i in &cofs {
        for b in w.objects() {
            spans.extend(w.hom(w.src(i), b).iter().map(|&m| (i, m)));
        }
    }
    for k in plan(spans.len(), &opts, "preserves_pushouts", &mut r) {
        let (i, m) = spans[k];
        let outcome = (|| -> Result<bool> {
            let po = pushout_along_cofibration(&ws, w.mor(i), w.mor(m))?;
            let window_id = |g: &GammaMor| w.mor_id(g).ok_or_else(|| Error::OutOfWindow("pushout leaves the window".into()));
            let (into_c, into_b) = (window_id(&po.into_c)?, window_id(&po.into_b)?);
            let img = |x: MorId| eps_of(x).ok_or_else(|| Error::OutOfWindow("ε undefined".into()));
            let dd = counit_on_object(d, po.d.entries())?;
            Ok(is_pushout(d, img(i)?, img(m)?, dd, img(into_c)?, img(into_b)?).is_ok())
        })();
        rec.record(&mut r, "preserves_pushouts", outcome, "ε of a pushout square is not a pushout", || {
            format!("{} , {}", w.morphism_name(i), w.morphism_name(m))
        });
    }

    for a in d.objects() {
        for b in d.objects() {
            let Some((ab, l, rr)) = d.wedge(a, b) else { continue };
            let outcome = (|| -> Result<bool> {
                let pair = GammaObj(vec![a, b]);
                let left = GammaMor { src: singleton(a), tgt: pair.clone(), phi: vec![vec![0]], comps: vec![Some(d.identity(a))] };
                let right = GammaMor { src: singleton(b), tgt: pair.clone(), phi: vec![vec![1]], comps: vec![Some(d.identity(b))] };
                Ok(counit_on_object(d, pair.entries())? == ab && counit_on_morphism(d, &left)? == l && counit_on_morphism(d, &right)? == rr)
            })();
            rec.record(&mut r, "preserves_wedges", outcome, "ε does not carry (a, b) to the chosen wedge", || {
                format!("{} ∨ {}", d.object_name(a), d.object_name(b))
            });
        }
    }
    rec.finish(&mut r);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::samples::{c2, cyclic, x1};
    use crate::wald::pointed_sets;

    fn obj(d: &FiniteWald, name: &str) -> ObjId {
        d.cat().find_object(name).unwrap()
    }

    fn mor(d: &FiniteWald, name: &str) -> MorId {
        d.cat().find_morphism(name).unwrap()
    }

    #[test]
    fn empty_tuple_goes_to_zero() {
        let d = pointed_sets(2);
        assert_eq!(counit_on_object(&d, &[]).unwrap(), d.zero());
        let p1 = obj(&d, "p1");
        assert_eq!(counit_on_object(&d, &[p1, p1]).unwrap(), obj(&d, "p2"));
    }

    #[test]
    fn identity_singleton_goes_to_identity() {
        let d = pointed_sets(2);
        let p2 = obj(&d, "p2");
        let m = GammaMor { src: singleton(p2), tgt: singleton(p2), phi: vec![vec![0]], comps: vec![Some(d.identity(p2))] };
        assert_eq!(counit_on_morphism(&d, &m).unwrap(), d.identity(p2));
    }

    #[test]
    fn collapse_of_a_pair_is_the_fold() {
        // (p1, p1) → (p1) with both blocks {1} maps to the fold p2 → p1,
        // which sends both points to the single point.
        let d = pointed_sets(2);
        let p1 = obj(&d, "p1");
        let id = d.identity(p1);
        let m = GammaMor { src: GammaObj(vec![p1, p1]), tgt: singleton(p1), phi: vec![vec![0], vec![0]], comps: vec![Some(id), Some(id)] };
        let fold = mor(&d, "p2>p1:11");
        assert_eq!(counit_on_morphism(&d, &m).unwrap(), fold);
        assert_eq!(counit_on_morphism_direct(&d, &m).unwrap(), fold);
    }

    #[test]
    fn empty_block_sends_the_factor_to_the_basepoint() {
        let d = pointed_sets(2);
        let p1 = obj(&d, "p1");
        let m = GammaMor { src: GammaObj(vec![p1, p1]), tgt: singleton(p1), phi: vec![vec![], vec![0]], comps: vec![None, Some(d.identity(p1))] };
        assert_eq!(counit_on_morphism(&d, &m).unwrap(), mor(&d, "p2>p1:01"));
    }

    #[test]
    fn twist_goes_to_the_swap() {
        let d = pointed_sets(2);
        let p1 = obj(&d, "p1");
        let id = d.identity(p1);
        let m = GammaMor { src: GammaObj(vec![p1, p1]), tgt: GammaObj(vec![p1, p1]), phi: vec![vec![1], vec![0]], comps: vec![Some(id), Some(id)] };
        assert_eq!(counit_on_morphism(&d, &m).unwrap(), mor(&d, "p2>p2:21"));
    }

    #[test]
    fn missing_wedge_is_out_of_window() {
        let d = pointed_sets(2);
        let p2 = obj(&d, "p2");
        assert!(matches!(counit_on_object(&d, &[p2, p2]), Err(Error::OutOfWindow(_))));
    }

    #[test]
    fn pointed_sets_triangle() {
        for max in [2, 3] {
            let d = pointed_sets(max);
            let r = check_triangle_identities_d(&d);
            assert!(r.is_clean(), "{:#?}", r.findings);
            let c = r.section("triangle_d");
            assert_eq!(c.skipped, 0);
            assert_eq!(c.passed as usize, d.object_count() + d.weak_equivalences().len());
        }
    }

    #[test]
    fn gamma_triangle_round_trips_t() {
        let p = x1();
        let gw = gamma_as_wald(&p, 2, 100_000).unwrap();
        let w = gw.window();
        let t = p.base().find_morphism("t").unwrap();
        let st = crate::gamma::singleton_mor(&p, t);
        let gm = gamma_of_unit(&p, w, &st).unwrap();
        assert_eq!(w.mor(counit_on_morphism(&gw, &gm).unwrap()), &st);
    }

    #[test]
    fn gamma_triangle_on_corpus() {
        for p in [c2(), x1(), cyclic(3)] {
            let r = check_triangle_identities(&p, 2, 100_000, CheckOptions { budget: 100_000, seed: 0 }).unwrap();
            assert!(r.is_clean(), "{:#?}", r.findings);
            // Morphisms with overlapping blocks need a wedge longer than
            // the window in the middle of ε.
            let c = r.section("triangle_morphisms");
            assert!(c.passed > 100 && c.skipped > 0);
            assert!(r.notes.iter().all(|n| n.contains("out of window")), "{:?}", r.notes);
        }
    }

    #[test]
    fn counit_is_exact_on_pointed_sets() {
        for max in [2, 3] {
            let d = pointed_sets(max);
            let r = check_counit_exact(&d, 2, 1_000_000, CheckOptions { budget: 100_000, seed: 0 }).unwrap();
            assert!(r.is_clean(), "{:#?}", r.findings);
            for s in ["literal_vs_direct", "preserves_we", "preserves_cof", "functoriality", "preserves_pushouts", "preserves_wedges"] {
                assert!(r.section(s).passed > 0, "{s}: {:?}", r.section(s));
            }
        }
    }

    #[test]
    fn defective_wedge_table_is_a_presentation_defect() {
        // Declaring p1 ∨ p1 = p2 with both inclusions equal breaks the
        // coproduct property; ε of the swap then has no mediating map.
        let d = pointed_sets(2);
        let (p1, p2) = (obj(&d, "p1"), obj(&d, "p2"));
        let inc = mor(&d, "p1>p2:1");
        let mut wedges = d.wedge_entries();
        for e in &mut wedges {
            if e.0 == (p1, p1) {
                e.1 = (p2, inc, inc);
            }
        }
        let bad = FiniteWald::new(d.cat().clone(), d.zero(), d.cofibrations(), d.weak_equivalences(), wedges, false).unwrap();
        let id = bad.identity(p1);
        let m = GammaMor { src: GammaObj(vec![p1, p1]), tgt: GammaObj(vec![p1, p1]), phi: vec![vec![1], vec![0]], comps: vec![Some(id), Some(id)] };
        assert!(matches!(counit_on_morphism(&bad, &m), Err(Error::Presentation(_))));
    }
}
