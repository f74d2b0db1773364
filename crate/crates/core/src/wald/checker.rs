use rustc_hash::FxHashMap as HashMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PushoutOutcome, WaldView};
use crate::fincat::{mediating_morphism, Cocone, Mediating, MorId, ObjId};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Instances per section checked exhaustively; larger sections are
    /// sampled down to this many.
    pub budget: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { budget: 20_000, seed: 0 }
    }
}

/// Checks that `(d, into_c, into_b)` is a pushout of `B ↢ A → C` against
/// every object of the view. On failure returns a description of the
/// offending cocone.
pub fn is_pushout<V: WaldView + ?Sized>(v: &V, cof: MorId, m: MorId, d: ObjId, into_c: MorId, into_b: MorId) -> Result<(), String> {
    let (b, c) = (v.tgt(cof), v.tgt(m));
    if v.compose(into_b, cof).is_none() || v.compose(into_b, cof) != v.compose(into_c, m) {
        return Err("square does not commute".into());
    }
    for e in v.objects() {
        let mut by_key: HashMap<MorId, Vec<MorId>> = HashMap::default();
        for &delta in v.hom(b, e).iter() {
            if let Some(k) = v.compose(delta, cof) {
                by_key.entry(k).or_default().push(delta);
            }
        }
        let mut mediators: HashMap<(MorId, MorId), usize> = HashMap::default();
        for &w in v.hom(d, e).iter() {
            if let (Some(g), Some(dl)) = (v.compose(w, into_c), v.compose(w, into_b)) {
                *mediators.entry((g, dl)).or_default() += 1;
            }
        }
        for &gamma in v.hom(c, e).iter() {
            let Some(k) = v.compose(gamma, m) else { continue };
            for &delta in by_key.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                match mediators.get(&(gamma, delta)).copied().unwrap_or(0) {
                    1 => {}
                    0 => return Err(format!("cocone ({}, {}) has no mediating map", v.morphism_name(gamma), v.morphism_name(delta))),
                    n => return Err(format!("cocone ({}, {}) has {n} mediating maps", v.morphism_name(gamma), v.morphism_name(delta))),
                }
            }
        }
    }
    Ok(())
}

/// Indices to visit out of `total`: all of them within budget, otherwise a
/// seeded sample in increasing order.
fn plan(total: usize, opts: &CheckOptions, salt: u64, section: &str, r: &mut Report) -> Vec<usize> {
    if total <= opts.budget {
        return (0..total).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut idx = sample(&mut rng, total, opts.budget).into_vec();
    idx.sort_unstable();
    r.note(format!("{section}: sampled {} of {total} instances (seed {})", opts.budget, opts.seed));
    idx
}

struct Skips {
    count: usize,
    first: Option<String>,
}

impl Skips {
    fn new() -> Self {
        Self { count: 0, first: None }
    }
    fn add(&mut self, r: &mut Report, section: &str, why: &str) {
        r.skip(section);
        self.count += 1;
        self.first.get_or_insert_with(|| why.to_string());
    }
    fn note(self, r: &mut Report, section: &str) {
        if let Some(first) = self.first {
            r.note(format!("{section}: {} instances skipped as out of window (first: {first})", self.count));
        }
    }
}

/// Checks the zero object, the two subcategories, axioms (i)–(iv) and the
/// chosen wedges.
pub fn check_waldhausen_axioms<V: WaldView + ?Sized>(v: &V, opts: CheckOptions) -> Report {
    let mut r = Report::new();
    for s in ["zero_object", "subcategories", "axiom_i", "axiom_ii", "axiom_iii", "axiom_iv", "wedges"] {
        r.touch(s);
    }
    let objs = v.objects();
    let zero = v.zero();
    let mn = |f: MorId| v.morphism_name(f);
    let on = |a: ObjId| v.object_name(a);

    let mut out: Vec<Vec<MorId>> = vec![Vec::new(); objs.len()];
    let mut into: Vec<Vec<MorId>> = vec![Vec::new(); objs.len()];
    for &a in &objs {
        for &b in &objs {
            for &f in v.hom(a, b).iter() {
                out[a.0].push(f);
                into[b.0].push(f);
            }
        }
    }
    let all: Vec<MorId> = out.iter().flatten().copied().collect();

    for &a in &objs {
        let (n_from, n_to) = (v.hom(zero, a).len(), v.hom(a, zero).len());
        r.check("zero_object", n_from == 1 && n_to == 1, "zero object is not initial and terminal", || {
            (on(a), format!("|Hom(0, a)| = {n_from}, |Hom(a, 0)| = {n_to}"))
        });
    }

    for &a in &objs {
        let id = v.identity(a);
        r.check("subcategories", v.is_cof(id) && v.is_we(id), "identity is not a cofibration and weak equivalence", || {
            (on(a), mn(id))
        });
    }
    // Predicates are evaluated once per morphism.
    let n_mor = all.iter().map(|f| f.0 + 1).max().unwrap_or(0);
    let mut cof = vec![false; n_mor];
    let mut we = vec![false; n_mor];
    for &f in &all {
        cof[f.0] = v.is_cof(f);
        we[f.0] = v.is_we(f);
    }
    let select = |lists: &[Vec<MorId>], keep: &[bool]| -> Vec<Vec<MorId>> {
        lists.iter().map(|ms| ms.iter().copied().filter(|f| keep[f.0]).collect()).collect()
    };
    let (cof_in, cof_out) = (select(&into, &cof), select(&out, &cof));
    let (we_in, we_out) = (select(&into, &we), select(&out, &we));
    // Composable pairs (g, f) are indexed by middle object, then f, then g.
    let pair_count = |ins: &[Vec<MorId>], outs: &[Vec<MorId>]| ins.iter().zip(outs).map(|(i, o)| i.len() * o.len()).sum::<usize>();
    let n_cof_pairs = pair_count(&cof_in, &cof_out);
    let total_pairs = n_cof_pairs + pair_count(&we_in, &we_out);
    let nth_pair = |mut k: usize, ins: &[Vec<MorId>], outs: &[Vec<MorId>]| -> (MorId, MorId) {
        for (i, o) in ins.iter().zip(outs) {
            let block = i.len() * o.len();
            if k < block {
                return (o[k % o.len()], i[k / o.len()]);
            }
            k -= block;
        }
        unreachable!("pair index out of range")
    };
    for k in plan(total_pairs, &opts, 1, "subcategories", &mut r) {
        let is_cof_pair = k < n_cof_pairs;
        let (g, f) = if is_cof_pair { nth_pair(k, &cof_in, &cof_out) } else { nth_pair(k - n_cof_pairs, &we_in, &we_out) };
        let gf = v.compose(g, f);
        let ok = gf.is_some_and(|h| if is_cof_pair { cof[h.0] } else { we[h.0] });
        let kind = if is_cof_pair { "cofibrations not closed under composition" } else { "weak equivalences not closed under composition" };
        r.check("subcategories", ok, kind, || (format!("{} ∘ {}", mn(g), mn(f)), gf.map_or("undefined".into(), mn)));
    }

    // An isomorphism a ≅ b forces matching endomorphism and hom counts,
    // which rules out most pairs before any composite is looked up.
    let hom_len = |a: ObjId, b: ObjId| v.hom(a, b).len();
    for &a in &objs {
        for &b in &objs {
            if hom_len(a, a) != hom_len(b, b) || hom_len(a, b) != hom_len(b, a) {
                continue;
            }
            for &f in v.hom(a, b).iter() {
                if v.is_iso(f) {
                    r.check("axiom_i", cof[f.0] && we[f.0], "isomorphism is not a cofibration and weak equivalence", || {
                        (mn(f), format!("cof = {}, we = {}", cof[f.0], we[f.0]))
                    });
                }
            }
        }
    }

    for &a in &objs {
        let z = v.from_zero(a);
        r.check("axiom_ii", z.is_some_and(|z| v.is_cof(z)), "map from zero is not a cofibration", || {
            (on(a), z.map_or("missing".into(), mn))
        });
    }

    let cofs: Vec<MorId> = all.iter().copied().filter(|f| cof[f.0]).collect();
    let spans: Vec<(MorId, MorId)> = cofs.iter().flat_map(|&i| out[v.src(i).0].iter().map(move |&m| (i, m))).collect();
    let mut skips = Skips::new();
    for k in plan(spans.len(), &opts, 3, "axiom_iii", &mut r) {
        let (i, m) = spans[k];
        let inst = || format!("{} ↢ {} → {}", mn(i), on(v.src(i)), mn(m));
        match v.pushout(i, m) {
            PushoutOutcome::OutOfWindow(why) => skips.add(&mut r, "axiom_iii", &why),
            PushoutOutcome::Failed(why) => r.fail("axiom_iii", "pushout along a cofibration does not exist", inst(), why),
            PushoutOutcome::Square { d, into_c, into_b } => {
                if !v.is_cof(into_c) {
                    r.fail("axiom_iii", "pushout leg is not a cofibration", inst(), mn(into_c));
                    continue;
                }
                match is_pushout(v, i, m, d, into_c, into_b) {
                    Ok(()) => r.pass("axiom_iii"),
                    Err(w) => r.fail("axiom_iii", "pushout square is not universal", inst(), w),
                }
            }
        }
    }
    skips.note(&mut r, "axiom_iii");

    check_gluing(v, &opts, &out, &spans, &mut r);

    for &a in &objs {
        for &b in &objs {
            let Some((w, l, rr)) = v.wedge(a, b) else { continue };
            let inst = || format!("{} ∨ {}", on(a), on(b));
            if a == zero || b == zero {
                let ok = if a == zero { w == b && rr == v.identity(b) } else { w == a && l == v.identity(a) };
                r.check("wedges", ok, "wedge with zero is not strictly unital", || (inst(), on(w)));
            }
            r.check("wedges", v.is_cof(l) && v.is_cof(rr), "wedge inclusion is not a cofibration", || (inst(), format!("{}, {}", mn(l), mn(rr))));
            let (Some(za), Some(zb)) = (v.from_zero(a), v.from_zero(b)) else { continue };
            match is_pushout(v, za, zb, w, rr, l) {
                Ok(()) => r.pass("wedges"),
                Err(e) => r.fail("wedges", "chosen wedge is not a coproduct", inst(), e),
            }
        }
    }
    r
}

/// One gluing diagram: top span, bottom span and the three verticals.
type Gluing = (MorId, MorId, MorId, MorId, MorId, MorId, MorId);

fn check_gluing<V: WaldView + ?Sized>(v: &V, opts: &CheckOptions, out: &[Vec<MorId>], spans: &[(MorId, MorId)], r: &mut Report) {
    let mn = |f: MorId| v.morphism_name(f);
    let mut spans_from: Vec<Vec<usize>> = vec![Vec::new(); out.len()];
    for (k, &(i, _)) in spans.iter().enumerate() {
        spans_from[v.src(i).0].push(k);
    }
    let we_out: Vec<Vec<MorId>> = out.iter().map(|ms| ms.iter().copied().filter(|&f| v.is_we(f)).collect()).collect();

    // A frame is a top span, a vertical map out of its apex and a bottom
    // span; each frame carries every pair of commuting outer verticals.
    let frame_count: usize = spans
        .iter()
        .map(|&(i, _)| we_out[v.src(i).0].iter().map(|&va| spans_from[v.tgt(va).0].len()).sum::<usize>())
        .sum();
    let mut diagrams: Vec<Gluing> = Vec::new();
    if frame_count <= opts.budget {
        for &(i, m) in spans {
            for &va in &we_out[v.src(i).0] {
                for &k2 in &spans_from[v.tgt(va).0] {
                    let (i2, m2) = spans[k2];
                    let (Some(left), Some(right)) = (v.compose(i2, va), v.compose(m2, va)) else { continue };
                    let commuting = |from: MorId, to: ObjId, want: MorId| -> Vec<MorId> {
                        v.hom(v.tgt(from), to).iter().copied().filter(|&f| v.is_we(f) && v.compose(f, from) == Some(want)).collect()
                    };
                    let vbs = commuting(i, v.tgt(i2), left);
                    let vcs = commuting(m, v.tgt(m2), right);
                    for &vb in &vbs {
                        for &vc in &vcs {
                            diagrams.push((i, m, i2, m2, va, vb, vc));
                        }
                    }
                }
            }
        }
    } else {
        // Draw the top span and all three verticals, then solve for the
        // bottom span.
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6c75_6500);
        let mut attempts = 0usize;
        while !spans.is_empty() && diagrams.len() < opts.budget && attempts < opts.budget * 10 {
            attempts += 1;
            let (i, m) = spans[rng.gen_range(0..spans.len())];
            let pick = |rng: &mut ChaCha8Rng, from: ObjId| {
                let c = &we_out[from.0];
                (!c.is_empty()).then(|| c[rng.gen_range(0..c.len())])
            };
            let (Some(va), Some(vb), Some(vc)) = (pick(&mut rng, v.src(i)), pick(&mut rng, v.tgt(i)), pick(&mut rng, v.tgt(m))) else {
                continue;
            };
            let (Some(left), Some(right)) = (v.compose(vb, i), v.compose(vc, m)) else { continue };
            let a2 = v.tgt(va);
            let i2s: Vec<MorId> = v.hom(a2, v.tgt(vb)).iter().copied().filter(|&f| v.is_cof(f) && v.compose(f, va) == Some(left)).collect();
            let m2s: Vec<MorId> = v.hom(a2, v.tgt(vc)).iter().copied().filter(|&f| v.compose(f, va) == Some(right)).collect();
            for &i2 in &i2s {
                for &m2 in &m2s {
                    diagrams.push((i, m, i2, m2, va, vb, vc));
                }
            }
        }
        r.note(format!(
            "axiom_iv: {frame_count} span frames exceed the budget; sampled {} diagrams from {attempts} draws (seed {})",
            diagrams.len(),
            opts.seed
        ));
    }

    let mut skips = Skips::new();
    let mut pushouts: HashMap<(MorId, MorId), PushoutOutcome> = HashMap::default();
    for (i, m, i2, m2, va, vb, vc) in diagrams {
        let inst = || format!("top {} , {}; bottom {} , {}; verticals {} , {} , {}", mn(i), mn(m), mn(i2), mn(m2), mn(va), mn(vb), mn(vc));
        let top = pushouts.entry((i, m)).or_insert_with(|| v.pushout(i, m)).clone();
        let bottom = pushouts.entry((i2, m2)).or_insert_with(|| v.pushout(i2, m2)).clone();
        let (d, into_c, into_b, d2, into_c2, into_b2) = match (top, bottom) {
            (PushoutOutcome::Square { d, into_c, into_b }, PushoutOutcome::Square { d: d2, into_c: c2, into_b: b2 }) => {
                (d, into_c, into_b, d2, c2, b2)
            }
            (PushoutOutcome::OutOfWindow(why), _) | (_, PushoutOutcome::OutOfWindow(why)) => {
                skips.add(r, "axiom_iv", &why);
                continue;
            }
            _ => {
                r.fail("axiom_iv", "pushout missing", inst(), String::new());
                continue;
            }
        };
        let (Some(g), Some(dl)) = (v.compose(into_c2, vc), v.compose(into_b2, vb)) else {
            r.fail("axiom_iv", "induced cocone undefined", inst(), String::new());
            continue;
        };
        let cocone = Cocone { apex: d, target: d2, legs: vec![(into_c, g), (into_b, dl)] };
        match mediating_morphism(v, &cocone) {
            Mediating::Unique(w) => {
                r.check("axiom_iv", v.is_we(w), "gluing: induced map is not a weak equivalence", || (inst(), mn(w)));
            }
            Mediating::NotFound => r.fail("axiom_iv", "gluing: no induced map", inst(), String::new()),
            Mediating::NotUnique(a, b) => r.fail("axiom_iv", "gluing: induced map not unique", inst(), format!("{} / {}", mn(a), mn(b))),
        }
    }
    skips.note(r, "axiom_iv");
}
