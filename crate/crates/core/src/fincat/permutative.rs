//! Strictly associative, strictly unital symmetric monoidal structure on a
//! finite category.

use std::borrow::Cow;

use super::{is_iso, Category, FinCat, MorId, ObjId, Permutation};
use crate::error::{Error, Result};
use crate::report::Report;

/// A permutative structure on a finite category.
///
/// Tensor and symmetry lookups return `None` when the entry is not part of
/// the presentation. Total structures ([`FinPermCat`] built from a complete
/// spec) never do; windows onto larger categories may.
pub trait Permutative: Category {
    fn unit(&self) -> ObjId;
    fn tensor_obj(&self, a: ObjId, b: ObjId) -> Option<ObjId>;
    fn tensor_mor(&self, f: MorId, g: MorId) -> Option<MorId>;
    /// `β_{a,b} : a ⊗ b → b ⊗ a`
    fn symmetry(&self, a: ObjId, b: ObjId) -> Option<MorId>;

    /// Whether every tensor and symmetry entry is expected to exist.
    fn is_total(&self) -> bool {
        true
    }

    fn is_iso(&self, f: MorId) -> bool {
        is_iso(self, f)
    }

    fn inverse(&self, f: MorId) -> Option<MorId> {
        super::inverse(self, f)
    }

    /// `T^n(c_1, …, c_n)` as a left fold from the unit.
    fn tensor_power(&self, objs: &[ObjId]) -> Option<ObjId> {
        objs.iter().try_fold(self.unit(), |acc, &o| self.tensor_obj(acc, o))
    }

    /// `T^n(f_1, …, f_n)`; the empty product is `id_e`.
    fn tensor_mor_power(&self, mors: &[MorId]) -> Option<MorId> {
        mors.iter().try_fold(self.identity(self.unit()), |acc, &m| self.tensor_mor(acc, m))
    }

    /// The canonical isomorphism `T(c_1..c_n) → T(c'_1..c'_n)` where
    /// `c'_{σ(i)} = c_i`, assembled from adjacent swaps chosen by bubble sort.
    fn perm_iso(&self, objs: &[ObjId], sigma: &Permutation) -> Option<MorId> {
        assert_eq!(objs.len(), sigma.len(), "permutation length must match the sequence");
        self.perm_iso_from_swaps(objs, &sigma.bubble_swaps())
    }

    /// Composite of `id ⊗ β_{c_k, c_{k+1}} ⊗ id` for each swap position `k`,
    /// applied left to right.
    fn perm_iso_from_swaps(&self, objs: &[ObjId], swaps: &[usize]) -> Option<MorId> {
        let mut cur = objs.to_vec();
        let mut acc = self.identity(self.tensor_power(&cur)?);
        for &k in swaps {
            let before = self.tensor_power(&cur[..k])?;
            let after = self.tensor_power(&cur[k + 2..])?;
            let beta = self.symmetry(cur[k], cur[k + 1])?;
            let step = self.tensor_mor_power(&[self.identity(before), beta, self.identity(after)])?;
            acc = self.compose(step, acc)?;
            cur.swap(k, k + 1);
        }
        Some(acc)
    }
}

/// A finite permutative category with explicit tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPermCat {
    base: FinCat,
    unit: ObjId,
    tensor_obj: Vec<Option<ObjId>>,
    tensor_mor: Vec<Option<MorId>>,
    symmetry: Vec<Option<MorId>>,
}

impl FinPermCat {
    /// Assembles the structure. Entries `id_a ⊗ id_b` that are not supplied
    /// are derived as `id_{a⊗b}`. Index ranges are checked; the axioms are
    /// checked by [`validate_permutative`].
    pub fn new(
        base: FinCat,
        unit: ObjId,
        tensor_obj: impl IntoIterator<Item = ((ObjId, ObjId), ObjId)>,
        tensor_mor: impl IntoIterator<Item = ((MorId, MorId), MorId)>,
        symmetry: impl IntoIterator<Item = ((ObjId, ObjId), MorId)>,
    ) -> Result<Self> {
        let n = base.object_count();
        let m = base.morphism_count();
        if unit.0 >= n {
            return Err(Error::Index { table: "unit", index: unit.0 });
        }
        let obj_ok = |o: ObjId| if o.0 < n { Ok(o) } else { Err(Error::Index { table: "tensor_obj", index: o.0 }) };
        let mor_ok = |f: MorId, table| if f.0 < m { Ok(f) } else { Err(Error::Index { table, index: f.0 }) };
        let mut t_obj = vec![None; n * n];
        for ((a, b), c) in tensor_obj {
            t_obj[obj_ok(a)?.0 * n + obj_ok(b)?.0] = Some(obj_ok(c)?);
        }
        let mut t_mor = vec![None; m * m];
        for ((f, g), h) in tensor_mor {
            t_mor[mor_ok(f, "tensor_mor")?.0 * m + mor_ok(g, "tensor_mor")?.0] = Some(mor_ok(h, "tensor_mor")?);
        }
        for a in base.objects() {
            for b in base.objects() {
                let (ia, ib) = (base.identity(a), base.identity(b));
                if t_mor[ia.0 * m + ib.0].is_none() {
                    if let Some(ab) = t_obj[a.0 * n + b.0] {
                        t_mor[ia.0 * m + ib.0] = Some(base.identity(ab));
                    }
                }
            }
        }
        let mut sym = vec![None; n * n];
        for ((a, b), f) in symmetry {
            if a.0 >= n || b.0 >= n {
                return Err(Error::Index { table: "symmetry", index: a.0.max(b.0) });
            }
            sym[a.0 * n + b.0] = Some(mor_ok(f, "symmetry")?);
        }
        Ok(Self { base, unit, tensor_obj: t_obj, tensor_mor: t_mor, symmetry: sym })
    }

    pub fn base(&self) -> &FinCat {
        &self.base
    }

    pub fn base_mut(&mut self) -> &mut FinCat {
        &mut self.base
    }

    pub fn morphism_count(&self) -> usize {
        self.base.morphism_count()
    }

    pub fn set_tensor_obj(&mut self, a: ObjId, b: ObjId, c: Option<ObjId>) {
        let n = self.base.object_count();
        self.tensor_obj[a.0 * n + b.0] = c;
    }

    pub fn set_tensor_mor(&mut self, f: MorId, g: MorId, h: Option<MorId>) {
        let m = self.base.morphism_count();
        self.tensor_mor[f.0 * m + g.0] = h;
    }

    pub fn set_symmetry(&mut self, a: ObjId, b: ObjId, f: Option<MorId>) {
        let n = self.base.object_count();
        self.symmetry[a.0 * n + b.0] = f;
    }

    pub fn tensor_obj_entries(&self) -> Vec<((ObjId, ObjId), ObjId)> {
        let n = self.base.object_count();
        entries(&self.tensor_obj, n, ObjId)
    }

    pub fn tensor_mor_entries(&self) -> Vec<((MorId, MorId), MorId)> {
        let m = self.base.morphism_count();
        entries(&self.tensor_mor, m, MorId)
    }

    pub fn symmetry_entries(&self) -> Vec<((ObjId, ObjId), MorId)> {
        let n = self.base.object_count();
        entries(&self.symmetry, n, ObjId)
    }

    /// Checks the base category and every permutative axiom.
    pub fn validate(&self) -> Report {
        let mut r = super::validate_category(&self.base);
        r.merge(validate_permutative(self));
        r
    }
}

fn entries<K: Copy, V: Copy>(table: &[Option<V>], n: usize, key: fn(usize) -> K) -> Vec<((K, K), V)> {
    table
        .iter()
        .enumerate()
        .filter_map(|(k, v)| v.map(|v| ((key(k / n), key(k % n)), v)))
        .collect()
}

impl Category for FinPermCat {
    fn object_count(&self) -> usize {
        self.base.object_count()
    }
    fn src(&self, m: MorId) -> ObjId {
        self.base.src(m)
    }
    fn tgt(&self, m: MorId) -> ObjId {
        self.base.tgt(m)
    }
    fn identity(&self, a: ObjId) -> MorId {
        self.base.identity(a)
    }
    fn compose(&self, outer: MorId, inner: MorId) -> Option<MorId> {
        self.base.compose(outer, inner)
    }
    fn hom(&self, a: ObjId, b: ObjId) -> Cow<'_, [MorId]> {
        self.base.hom(a, b)
    }
    fn object_name(&self, a: ObjId) -> String {
        self.base.object_name(a)
    }
    fn morphism_name(&self, m: MorId) -> String {
        self.base.morphism_name(m)
    }
    fn morphisms(&self) -> Vec<MorId> {
        self.base.all_morphisms().collect()
    }
}

impl Permutative for FinPermCat {
    fn unit(&self) -> ObjId {
        self.unit
    }
    fn tensor_obj(&self, a: ObjId, b: ObjId) -> Option<ObjId> {
        self.tensor_obj[a.0 * self.base.object_count() + b.0]
    }
    fn tensor_mor(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.tensor_mor[f.0 * self.base.morphism_count() + g.0]
    }
    fn symmetry(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        self.symmetry[a.0 * self.base.object_count() + b.0]
    }
}

const SECTIONS: [&str; 9] = [
    "tensor_total",
    "tensor_typing",
    "associativity",
    "unit",
    "functoriality",
    "interchange",
    "symmetry_involution",
    "symmetry_naturality",
    "hexagon",
];

/// Checks every permutative axiom on all instances, reporting each
/// violation with its witness. For partial structures an instance whose
/// entries are missing is skipped instead of failed.
pub fn validate_permutative<P: Permutative + ?Sized>(p: &P) -> Report {
    let mut r = Report::new();
    for s in SECTIONS {
        r.touch(s);
    }
    let total = p.is_total();
    let on = |a: ObjId| p.object_name(a);
    let mn = |f: MorId| p.morphism_name(f);
    let show_o = |o: Option<ObjId>| o.map_or("undefined".to_string(), on);
    let show_m = |f: Option<MorId>| f.map_or("undefined".to_string(), mn);
    let objs = p.objects();
    let mors = p.morphisms();

    // Compare two optional results: both must be defined and equal. In a
    // partial structure an undefined side skips the instance.
    let compare = |r: &mut Report, section: &str, kind: &str, lhs: Option<usize>, rhs: Option<usize>, what: &dyn Fn() -> (String, String)| {
        match (lhs, rhs) {
            (Some(x), Some(y)) => r.check(section, x == y, kind, what),
            _ if !total => r.skip(section),
            _ => {
                let (inst, wit) = what();
                r.fail(section, &format!("{kind} (undefined entry)"), inst, wit);
            }
        }
    };

    for &a in &objs {
        for &b in &objs {
            let ab = p.tensor_obj(a, b);
            if total {
                r.check("tensor_total", ab.is_some(), "tensor_obj entry missing", || (format!("{} ⊗ {}", on(a), on(b)), String::new()));
            }
            if let (Some(ab), Some(ba)) = (ab, p.tensor_obj(b, a)) {
                match p.symmetry(a, b) {
                    Some(beta) => {
                        let ok = p.src(beta) == ab && p.tgt(beta) == ba;
                        r.check("tensor_typing", ok, "symmetry has wrong type", || {
                            (format!("β_{{{},{}}}", on(a), on(b)), format!("{} : {} → {}", mn(beta), on(p.src(beta)), on(p.tgt(beta))))
                        });
                    }
                    None if total => r.fail("tensor_total", "symmetry entry missing", format!("β_{{{},{}}}", on(a), on(b)), String::new()),
                    None => r.skip("tensor_total"),
                }
            }
        }
    }
    for &f in &mors {
        for &g in &mors {
            let fg = p.tensor_mor(f, g);
            match fg {
                None if total => r.fail("tensor_total", "tensor_mor entry missing", format!("{} ⊗ {}", mn(f), mn(g)), String::new()),
                None => r.skip("tensor_total"),
                Some(h) => {
                    let s = p.tensor_obj(p.src(f), p.src(g));
                    let t = p.tensor_obj(p.tgt(f), p.tgt(g));
                    let ok = s == Some(p.src(h)) && t == Some(p.tgt(h));
                    r.check("tensor_typing", ok, "tensor of morphisms has wrong type", || {
                        (format!("{} ⊗ {}", mn(f), mn(g)), format!("{} : {} → {}, expected {} → {}", mn(h), on(p.src(h)), on(p.tgt(h)), show_o(s), show_o(t)))
                    });
                }
            }
        }
    }

    // Strict associativity.
    for &a in &objs {
        for &b in &objs {
            for &c in &objs {
                let lhs = p.tensor_obj(a, b).and_then(|ab| p.tensor_obj(ab, c));
                let rhs = p.tensor_obj(b, c).and_then(|bc| p.tensor_obj(a, bc));
                compare(&mut r, "associativity", "object associativity violated", lhs.map(|o| o.0), rhs.map(|o| o.0), &|| {
                    (format!("({0} ⊗ {1}) ⊗ {2} vs {0} ⊗ ({1} ⊗ {2})", on(a), on(b), on(c)), format!("{} ≠ {}", show_o(lhs), show_o(rhs)))
                });
            }
        }
    }
    for &f in &mors {
        for &g in &mors {
            for &h in &mors {
                let lhs = p.tensor_mor(f, g).and_then(|fg| p.tensor_mor(fg, h));
                let rhs = p.tensor_mor(g, h).and_then(|gh| p.tensor_mor(f, gh));
                compare(&mut r, "associativity", "morphism associativity violated", lhs.map(|m| m.0), rhs.map(|m| m.0), &|| {
                    (format!("({0} ⊗ {1}) ⊗ {2} vs {0} ⊗ ({1} ⊗ {2})", mn(f), mn(g), mn(h)), format!("{} ≠ {}", show_m(lhs), show_m(rhs)))
                });
            }
        }
    }

    // Strict unit.
    let e = p.unit();
    let id_e = p.identity(e);
    for &a in &objs {
        for (lhs, side) in [(p.tensor_obj(e, a), "e ⊗ a"), (p.tensor_obj(a, e), "a ⊗ e")] {
            compare(&mut r, "unit", "unit law violated on objects", lhs.map(|o| o.0), Some(a.0), &|| (format!("{side} with a = {}", on(a)), show_o(lhs)));
        }
        let id_a = p.identity(a);
        for (beta, side) in [(p.symmetry(a, e), "β_{a,e}"), (p.symmetry(e, a), "β_{e,a}")] {
            compare(&mut r, "unit", "symmetry with unit is not the identity", beta.map(|m| m.0), Some(id_a.0), &|| (format!("{side} with a = {}", on(a)), show_m(beta)));
        }
    }
    for &f in &mors {
        for (lhs, side) in [(p.tensor_mor(id_e, f), "id_e ⊗ f"), (p.tensor_mor(f, id_e), "f ⊗ id_e")] {
            compare(&mut r, "unit", "unit law violated on morphisms", lhs.map(|m| m.0), Some(f.0), &|| (format!("{side} with f = {}", mn(f)), show_m(lhs)));
        }
    }

    // Tensor is a functor.
    for &a in &objs {
        for &b in &objs {
            let lhs = p.tensor_mor(p.identity(a), p.identity(b));
            let rhs = p.tensor_obj(a, b).map(|ab| p.identity(ab));
            compare(&mut r, "functoriality", "id ⊗ id is not an identity", lhs.map(|m| m.0), rhs.map(|m| m.0), &|| {
                (format!("id_{} ⊗ id_{}", on(a), on(b)), format!("{} ≠ {}", show_m(lhs), show_m(rhs)))
            });
        }
    }
    let composable: Vec<(MorId, MorId, MorId)> = mors
        .iter()
        .flat_map(|&f| mors.iter().map(move |&g| (g, f)))
        .filter_map(|(g, f)| if p.tgt(f) == p.src(g) { p.compose(g, f).map(|gf| (g, f, gf)) } else { None })
        .collect();
    for &(f2, f1, f21) in &composable {
        for &(g2, g1, g21) in &composable {
            let lhs = p.tensor_mor(f21, g21);
            let rhs = match (p.tensor_mor(f2, g2), p.tensor_mor(f1, g1)) {
                (Some(x), Some(y)) => p.compose(x, y),
                _ => None,
            };
            compare(&mut r, "interchange", "interchange law violated", lhs.map(|m| m.0), rhs.map(|m| m.0), &|| {
                (
                    format!("({} ∘ {}) ⊗ ({} ∘ {}) vs ({} ⊗ {}) ∘ ({} ⊗ {})", mn(f2), mn(f1), mn(g2), mn(g1), mn(f2), mn(g2), mn(f1), mn(g1)),
                    format!("{} ≠ {}", show_m(lhs), show_m(rhs)),
                )
            });
        }
    }

    // Symmetry.
    for &a in &objs {
        for &b in &objs {
            let (Some(ab), Some(ba)) = (p.symmetry(a, b), p.symmetry(b, a)) else {
                if !total {
                    r.skip("symmetry_involution");
                }
                continue;
            };
            let lhs = p.compose(ba, ab);
            let rhs = p.tensor_obj(a, b).map(|o| p.identity(o));
            compare(&mut r, "symmetry_involution", "symmetry involution violated", lhs.map(|m| m.0), rhs.map(|m| m.0), &|| {
                (format!("β_{{{1},{0}}} ∘ β_{{{0},{1}}}", on(a), on(b)), format!("{} ≠ {}", show_m(lhs), show_m(rhs)))
            });
        }
    }
    for &f in &mors {
        for &g in &mors {
            let (a, a2, b, b2) = (p.src(f), p.tgt(f), p.src(g), p.tgt(g));
            let lhs = match (p.symmetry(a2, b2), p.tensor_mor(f, g)) {
                (Some(beta), Some(fg)) => p.compose(beta, fg),
                _ => None,
            };
            let rhs = match (p.tensor_mor(g, f), p.symmetry(a, b)) {
                (Some(gf), Some(beta)) => p.compose(gf, beta),
                _ => None,
            };
            compare(&mut r, "symmetry_naturality", "symmetry naturality violated", lhs.map(|m| m.0), rhs.map(|m| m.0), &|| {
                (format!("β ∘ ({0} ⊗ {1}) vs ({1} ⊗ {0}) ∘ β", mn(f), mn(g)), format!("{} ≠ {}", show_m(lhs), show_m(rhs)))
            });
        }
    }
    for &a in &objs {
        for &b in &objs {
            for &c in &objs {
                let lhs = p.tensor_obj(b, c).and_then(|bc| p.symmetry(a, bc));
                let rhs = (|| {
                    let step1 = p.tensor_mor(p.symmetry(a, b)?, p.identity(c))?;
                    let step2 = p.tensor_mor(p.identity(b), p.symmetry(a, c)?)?;
                    p.compose(step2, step1)
                })();
                compare(&mut r, "hexagon", "hexagon violated", lhs.map(|m| m.0), rhs.map(|m| m.0), &|| {
                    (
                        format!("β_{{{0},{1}⊗{2}}} vs (id_{1} ⊗ β_{{{0},{2}}}) ∘ (β_{{{0},{1}}} ⊗ id_{2})", on(a), on(b), on(c)),
                        format!("{} ≠ {}", show_m(lhs), show_m(rhs)),
                    )
                });
            }
        }
    }
    r
}

/// Coherence of the canonical permutation isomorphisms on every sequence
/// of objects of length at most `max_len`: every word of adjacent swaps for
/// `σ` gives the same map, and `σ ↦ perm_iso(−, σ)` is functorial.
pub fn check_perm_coherence<P: Permutative + ?Sized>(p: &P, max_len: usize) -> Report {
    let mut r = Report::new();
    for s in ["perm_identity", "decomposition", "functoriality"] {
        r.touch(s);
    }
    let objs = p.objects();
    let show = |seq: &[ObjId]| format!("({})", seq.iter().map(|&o| p.object_name(o)).collect::<Vec<_>>().join(","));
    let mn = |f: Option<MorId>| f.map_or("undefined".to_string(), |f| p.morphism_name(f));
    for n in 0..=max_len {
        let perms = Permutation::all(n);
        let words: Vec<Vec<Vec<usize>>> = perms
            .iter()
            .map(|sigma| {
                let mut ws = sigma.reduced_words();
                if n >= 2 {
                    // A cancelling pair in front is not reduced but must
                    // give the same map.
                    let mut w = vec![0, 0];
                    w.extend(sigma.bubble_swaps());
                    ws.push(w);
                }
                ws
            })
            .collect();
        for seq in itertools::Itertools::multi_cartesian_product(std::iter::repeat_n(objs.iter().copied(), n)) {
            let Some(top) = p.tensor_power(&seq) else {
                r.skip("perm_identity");
                continue;
            };
            let id = p.perm_iso(&seq, &Permutation::identity(n));
            r.check("perm_identity", id == Some(p.identity(top)), "identity_permutation", || (show(&seq), mn(id)));
            let isos: Vec<Option<MorId>> = perms.iter().map(|sigma| p.perm_iso(&seq, sigma)).collect();
            for (k, sigma) in perms.iter().enumerate() {
                for w in &words[k] {
                    let via = p.perm_iso_from_swaps(&seq, w);
                    r.check("decomposition", via.is_some() && via == isos[k], "word_dependent", || {
                        (format!("{} σ={sigma} word={w:?}", show(&seq)), format!("{} vs {}", mn(via), mn(isos[k])))
                    });
                }
            }
            for (i, s1) in perms.iter().enumerate() {
                let moved = s1.apply(&seq);
                for s2 in &perms {
                    let whole = p.perm_iso(&seq, &s2.after(s1));
                    let parts = p.perm_iso(&moved, s2).zip(isos[i]).and_then(|(g, f)| p.compose(g, f));
                    r.check("functoriality", whole.is_some() && whole == parts, "not_functorial", || {
                        (format!("{} σ₁={s1} σ₂={s2}", show(&seq)), format!("{} vs {}", mn(whole), mn(parts)))
                    });
                }
            }
        }
    }
    r
}
