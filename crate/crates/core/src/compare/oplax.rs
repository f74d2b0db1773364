use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fincat::{MorId, ObjId, Permutative};
use crate::gamma::{gamma_compose, gamma_identity, singleton, singleton_mor, wedge_mor, GammaMor, GammaObj};
use crate::report::Report;
use crate::wald::CheckOptions;

/// `(T^p(c_1..c_p)) → (c_1, …, c_p)`: one block covering the target, with
/// the identity of the tensor as its component.
pub fn oplax_structure_map<P: Permutative + ?Sized>(p: &P, objs: &[ObjId]) -> Result<GammaMor> {
    if objs.is_empty() {
        return Err(Error::Precondition("structure map needs at least one object".into()));
    }
    let t = p
        .tensor_power(objs)
        .ok_or_else(|| Error::OutOfWindow(format!("tensor of {} objects is not in the presentation", objs.len())))?;
    Ok(GammaMor {
        src: singleton(t),
        tgt: GammaObj(objs.to_vec()),
        phi: vec![(0..objs.len()).collect()],
        comps: vec![Some(p.identity(t))],
    })
}

/// The swap `A ∨ B → B ∨ A` with identity components.
pub fn gamma_twist<P: Permutative + ?Sized>(p: &P, a: &GammaObj, b: &GammaObj) -> GammaMor {
    let (n, m) = (a.len(), b.len());
    let mut tgt = b.0.clone();
    tgt.extend_from_slice(&a.0);
    let phi = (0..n).map(|i| vec![m + i]).chain((0..m).map(|j| vec![j])).collect();
    let comps = a.0.iter().chain(&b.0).map(|&o| Some(p.identity(o))).collect();
    let mut src = a.0.clone();
    src.extend_from_slice(&b.0);
    GammaMor { src: GammaObj(src), tgt: GammaObj(tgt), phi, comps }
}

fn wedge_all(parts: &[GammaMor]) -> GammaMor {
    let empty = GammaMor { src: GammaObj::empty(), tgt: GammaObj::empty(), phi: Vec::new(), comps: Vec::new() };
    parts.iter().fold(empty, |acc, f| wedge_mor(&acc, f))
}

/// Strict unitality, naturality, associativity and symmetry of the
/// structure maps of `s`, on sequences of length at most three.
pub fn check_oplax_coherence<P: Permutative + ?Sized>(p: &P, opts: CheckOptions) -> Report {
    let mut r = Report::new();
    for s in ["unit", "naturality", "associativity", "symmetry"] {
        r.touch(s);
    }
    let objs = p.objects();
    let mors = p.morphisms();
    let compose = |g: &GammaMor, f: &GammaMor| gamma_compose(p, g, f).map_err(|e| e.to_string());
    let shown = |x: &std::result::Result<GammaMor, String>| x.as_ref().map_or_else(|e| e.clone(), |m| m.display(p));

    for &c in &objs {
        let mu = oplax_structure_map(p, &[c]);
        let id = gamma_identity(p, &singleton(c));
        r.check("unit", mu.as_ref() == Ok(&id), "structure map on one object is not the identity", || {
            (p.object_name(c), mu.map_or_else(|e| e.to_string(), |m| m.display(p)))
        });
    }

    // μ ∘ s(T(h)) = (∨ s(h_i)) ∘ μ for every tuple of morphisms.
    let mut tuples: Vec<Vec<MorId>> = Vec::new();
    for len in 1..=3 {
        tuples.extend((0..len).map(|_| mors.iter().copied()).multi_cartesian_product());
    }
    let picked = sample_indices(tuples.len(), &opts, "naturality", &mut r);
    for k in picked {
        let hs = &tuples[k];
        let srcs: Vec<ObjId> = hs.iter().map(|&h| p.src(h)).collect();
        let tgts: Vec<ObjId> = hs.iter().map(|&h| p.tgt(h)).collect();
        let (Some(th), Ok(mu_s), Ok(mu_t)) = (p.tensor_mor_power(hs), oplax_structure_map(p, &srcs), oplax_structure_map(p, &tgts)) else {
            r.skip("naturality");
            continue;
        };
        let spread = wedge_all(&hs.iter().map(|&h| singleton_mor(p, h)).collect::<Vec<_>>());
        let lhs = compose(&spread, &mu_s);
        let rhs = compose(&mu_t, &singleton_mor(p, th));
        let inst = || hs.iter().map(|&h| p.morphism_name(h)).join(", ");
        r.check("naturality", lhs.is_ok() && lhs == rhs, "structure map is not natural", || (inst(), format!("{} vs {}", shown(&lhs), shown(&rhs))));
    }

    // μ_{abc} = (μ_{ab} ∨ id) ∘ μ_{a⊗b, c} = (id ∨ μ_{bc}) ∘ μ_{a, b⊗c}.
    for (&a, &b, &c) in objs.iter().cartesian_product(&objs).cartesian_product(&objs).map(|((a, b), c)| (a, b, c)) {
        let inst = || format!("({}, {}, {})", p.object_name(a), p.object_name(b), p.object_name(c));
        let (Some(ab), Some(bc)) = (p.tensor_obj(a, b), p.tensor_obj(b, c)) else {
            r.skip("associativity");
            continue;
        };
        let (Ok(mu3), Ok(mu_ab), Ok(mu_bc), Ok(mu_ab_c), Ok(mu_a_bc)) = (
            oplax_structure_map(p, &[a, b, c]),
            oplax_structure_map(p, &[a, b]),
            oplax_structure_map(p, &[b, c]),
            oplax_structure_map(p, &[ab, c]),
            oplax_structure_map(p, &[a, bc]),
        ) else {
            r.skip("associativity");
            continue;
        };
        let left = compose(&wedge_mor(&mu_ab, &gamma_identity(p, &singleton(c))), &mu_ab_c);
        let right = compose(&wedge_mor(&gamma_identity(p, &singleton(a)), &mu_bc), &mu_a_bc);
        r.check("associativity", left.as_ref() == Ok(&mu3), "left-nested structure maps disagree", || (inst(), shown(&left)));
        r.check("associativity", right.as_ref() == Ok(&mu3), "right-nested structure maps disagree", || (inst(), shown(&right)));
    }

    // twist ∘ μ_{a,b} = μ_{b,a} ∘ s(β_{a,b}).
    for (&a, &b) in objs.iter().cartesian_product(&objs) {
        let (Some(beta), Ok(mu_ab), Ok(mu_ba)) = (p.symmetry(a, b), oplax_structure_map(p, &[a, b]), oplax_structure_map(p, &[b, a])) else {
            r.skip("symmetry");
            continue;
        };
        let lhs = compose(&gamma_twist(p, &singleton(a), &singleton(b)), &mu_ab);
        let rhs = compose(&mu_ba, &singleton_mor(p, beta));
        r.check("symmetry", lhs.is_ok() && lhs == rhs, "structure map does not commute with the symmetry", || {
            (format!("({}, {})", p.object_name(a), p.object_name(b)), format!("{} vs {}", shown(&lhs), shown(&rhs)))
        });
    }
    r
}

fn sample_indices(total: usize, opts: &CheckOptions, section: &str, r: &mut Report) -> Vec<usize> {
    use rand::SeedableRng;
    if total <= opts.budget {
        return (0..total).collect();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let mut idx = rand::seq::index::sample(&mut rng, total, opts.budget).into_vec();
    idx.sort_unstable();
    r.note(format!("{section}: sampled {} of {total} instances (seed {})", opts.budget, opts.seed));
    idx
}
