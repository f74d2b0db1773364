//! Small permutative categories used as a test corpus and as fixtures.

use std::collections::HashMap;

use super::{Category, FinCat, FinPermCat, MorId, ObjId, Permutation};

/// Discrete ℤ/2: objects `e`, `x` with `x ⊗ x = e` and only identities.
pub fn c2() -> FinPermCat {
    cyclic(2)
}

/// Discrete ℤ/n. Objects are `e`, `x` for n = 2 and `e`, `g1`, ..., `g{n-1}`
/// otherwise; the tensor is addition mod n and every symmetry is an identity.
pub fn cyclic(n: usize) -> FinPermCat {
    assert!(n >= 1, "cyclic group of order zero");
    let mut b = FinCat::builder();
    let objs: Vec<_> = (0..n)
        .map(|i| match (i, n) {
            (0, _) => b.object("e"),
            (1, 2) => b.object("x"),
            _ => b.object(&format!("g{i}")),
        })
        .collect();
    let base = b.build().expect("discrete category");
    let mut tensor = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            tensor.push(((objs[i], objs[j]), objs[(i + j) % n]));
        }
    }
    let sym: Vec<_> = tensor.iter().map(|&(ab, c)| (ab, base.identity(c))).collect();
    FinPermCat::new(base, objs[0], tensor, [], sym).expect("discrete tables are total")
}

/// Objects `e`, `x`; an idempotent `t: x → x`; `x ⊗ x = x` and `t` tensors
/// with anything to `t`.
pub fn x1() -> FinPermCat {
    let mut b = FinCat::builder();
    let e = b.object("e");
    let x = b.object("x");
    let t = b.morphism("t", x, x);
    b.compose(t, t, t);
    let base = b.build().expect("idempotent table");
    let (id_e, id_x) = (base.identity(e), base.identity(x));
    let tensor = [((e, e), e), ((e, x), x), ((x, e), x), ((x, x), x)];
    let tmor = [((t, t), t), ((t, id_x), t), ((id_x, t), t), ((t, id_e), t), ((id_e, t), t)];
    let sym = [((e, e), id_e), ((e, x), id_x), ((x, e), id_x), ((x, x), id_x)];
    FinPermCat::new(base, e, tensor, tmor, sym).expect("tables are consistent")
}

/// Finite sets `0..=n` with bijections, plus an absorbing object `inf`
/// standing for every size above `n`. The tensor is disjoint union (block
/// sum of permutations) and `β_{a,b}` is the block swap, so unlike the
/// other samples the symmetry is far from trivial.
pub fn capped_bijections(n: usize) -> FinPermCat {
    let mut b = FinCat::builder();
    let sizes: Vec<ObjId> = (0..=n).map(|k| b.object(&k.to_string())).collect();
    let inf = b.object("inf");
    let mut perm_id: HashMap<Vec<usize>, MorId> = HashMap::new();
    for (k, &size) in sizes.iter().enumerate() {
        for sigma in Permutation::all(k) {
            let id = if sigma.is_identity() {
                b.identity(size)
            } else {
                b.morphism(&format!("{k}:{}", sigma.images().iter().map(|i| i.to_string()).collect::<String>()), size, size)
            };
            perm_id.insert(sigma.images().to_vec(), id);
        }
    }
    let perms: Vec<(Permutation, MorId)> = perm_id.iter().map(|(im, &m)| (Permutation::from_images(im.clone()).expect("bijection"), m)).collect();
    for (s, sm) in &perms {
        for (t, tm) in &perms {
            if s.len() == t.len() {
                b.compose(*sm, *tm, perm_id[s.after(t).images()]);
            }
        }
    }
    let base = b.build().expect("groups of permutations");
    let id_inf = base.identity(inf);
    let size = |o: ObjId| (o != inf).then_some(o.0);
    let sum = |a: ObjId, c: ObjId| match (size(a), size(c)) {
        (Some(x), Some(y)) if x + y <= n => sizes[x + y],
        _ => inf,
    };
    let objects: Vec<ObjId> = sizes.iter().copied().chain([inf]).collect();
    let mut tensor = Vec::new();
    let mut sym = Vec::new();
    for &a in &objects {
        for &c in &objects {
            let ac = sum(a, c);
            tensor.push(((a, c), ac));
            let beta = match (size(a), size(c)) {
                (Some(x), Some(y)) if x + y <= n => perm_id[&(0..x + y).map(|i| if i < x { i + y } else { i - x }).collect::<Vec<_>>()],
                _ => id_inf,
            };
            sym.push(((a, c), beta));
        }
    }
    let mut all: Vec<(Option<Permutation>, MorId)> = perms.iter().map(|(p, m)| (Some(p.clone()), *m)).collect();
    all.push((None, id_inf));
    let mut tmor = Vec::new();
    for (s, sm) in &all {
        for (t, tm) in &all {
            let h = match (s, t) {
                (Some(s), Some(t)) if s.len() + t.len() <= n => {
                    let k = s.len();
                    let images: Vec<usize> = s.images().iter().copied().chain(t.images().iter().map(|&i| i + k)).collect();
                    perm_id[&images]
                }
                _ => id_inf,
            };
            tmor.push(((*sm, *tm), h));
        }
    }
    FinPermCat::new(base, sizes[0], tensor, tmor, sym).expect("tables are well-indexed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{validate_category, validate_permutative, Category, Permutative};

    #[test]
    fn corpus_is_valid() {
        for p in [c2(), x1(), cyclic(3), cyclic(1)] {
            assert!(validate_category(p.base()).is_clean());
            assert!(validate_permutative(&p).is_clean());
        }
    }

    #[test]
    fn capped_bijections_are_permutative() {
        for n in 0..=3 {
            let p = capped_bijections(n);
            assert!(p.validate().is_clean(), "n = {n}: {:?}", p.validate().findings);
        }
        let p = capped_bijections(2);
        let one = p.base().find_object("1").unwrap();
        let swap = p.base().find_morphism("2:10").unwrap();
        assert_eq!(p.symmetry(one, one), Some(swap));
        assert_eq!(p.base().morphism_count(), 1 + 1 + 2 + 1);
    }

    #[test]
    fn cyclic_three_adds() {
        let p = cyclic(3);
        let g = |i| p.base().find_object(&format!("g{i}")).unwrap();
        assert_eq!(p.tensor_obj(g(1), g(2)), Some(p.unit()));
        assert_eq!(p.tensor_obj(g(2), g(2)), Some(g(1)));
        assert_eq!(p.object_name(g(2)), "g2");
    }
}
