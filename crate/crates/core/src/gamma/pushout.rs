//! Pushouts along cofibrations, cofibers, splittings and the gluing check.

use super::{gamma_compose, gamma_identity, is_cofibration, is_weak_equivalence, zero_map, GammaMor, GammaObj};
use crate::error::{Error, Result};
use crate::fincat::Permutative;

/// `D = B ∨_A C` with its two legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub d: GammaObj,
    /// The cofibration `C ↣ D`.
    pub into_c: GammaMor,
    /// `B → D`.
    pub into_b: GammaMor,
}

fn pre(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Pushout of `B ↢ A → C` along the cofibration `cof: A ↣ B`.
///
/// `D` lists the entries of `C` followed by the entries of `B` outside the
/// image of `cof`, in increasing order.
pub fn pushout_along_cofibration<P: Permutative + ?Sized>(p: &P, cof: &GammaMor, m: &GammaMor) -> Result<Pushout> {
    if !is_cofibration(p, cof) {
        return Err(pre("pushout leg is not a cofibration"));
    }
    if cof.src != m.src {
        return Err(pre("pushout legs have different sources"));
    }
    let c = m.tgt.len();
    let b = &cof.tgt;
    let mut preimage = vec![None; b.len()];
    for (i, block) in cof.phi.iter().enumerate() {
        preimage[block[0]] = Some(i);
    }
    let mut d = m.tgt.0.clone();
    let mut phi = vec![Vec::new(); b.len()];
    let mut comps = vec![None; b.len()];
    for (j, pre_j) in preimage.iter().enumerate() {
        match *pre_j {
            None => {
                phi[j] = vec![d.len()];
                comps[j] = Some(p.identity(b.0[j]));
                d.push(b.0[j]);
            }
            Some(i) => {
                phi[j] = m.phi[i].clone();
                if let Some(g) = m.comps[i] {
                    let f = cof.comps[i].expect("cofibration components exist");
                    let inv = p.inverse(f).ok_or_else(|| pre("cofibration component has no inverse"))?;
                    let k = p
                        .compose(g, inv)
                        .ok_or_else(|| Error::OutOfWindow(format!("composite of {} with an inverse", p.morphism_name(g))))?;
                    comps[j] = Some(k);
                }
            }
        }
    }
    let d = GammaObj(d);
    let into_c = GammaMor {
        src: m.tgt.clone(),
        tgt: d.clone(),
        phi: (0..c).map(|i| vec![i]).collect(),
        comps: m.tgt.0.iter().map(|&o| Some(p.identity(o))).collect(),
    };
    let into_b = GammaMor { src: b.clone(), tgt: d.clone(), phi, comps };
    Ok(Pushout { d, into_c, into_b })
}

/// The map `D → E` induced by a cocone `γ: C → E`, `δ: B → E` under the
/// span `B ↢ A → C`.
pub fn pushout_mediating<P: Permutative + ?Sized>(
    p: &P,
    cof: &GammaMor,
    m: &GammaMor,
    po: &Pushout,
    gamma: &GammaMor,
    delta: &GammaMor,
) -> Result<GammaMor> {
    if gamma.tgt != delta.tgt || gamma.src != m.tgt || delta.src != cof.tgt {
        return Err(pre("cocone legs do not match the span"));
    }
    let lhs = gamma_compose(p, delta, cof).map_err(|e| pre(format!("δ ∘ cofibration undefined: {e}")))?;
    let rhs = gamma_compose(p, gamma, m).map_err(|e| pre(format!("γ ∘ map undefined: {e}")))?;
    if lhs != rhs {
        return Err(pre("cocone does not commute with the span"));
    }
    let mut phi = gamma.phi.clone();
    let mut comps = gamma.comps.clone();
    let im = cof.image();
    for j in (0..cof.tgt.len()).filter(|j| im.binary_search(j).is_err()) {
        phi.push(delta.phi[j].clone());
        comps.push(delta.comps[j]);
    }
    let omega = GammaMor { src: po.d.clone(), tgt: gamma.tgt.clone(), phi, comps };
    let via_c = gamma_compose(p, &omega, &po.into_c).ok();
    let via_b = gamma_compose(p, &omega, &po.into_b).ok();
    if via_c.as_ref() != Some(gamma) || via_b.as_ref() != Some(delta) {
        return Err(pre("induced map does not factor the cocone"));
    }
    Ok(omega)
}

/// `B/A` and the quotient `B → B/A`.
pub fn cofiber<P: Permutative + ?Sized>(p: &P, cof: &GammaMor) -> Result<(GammaObj, GammaMor)> {
    let to_zero = zero_map(&cof.src, &GammaObj::empty());
    let po = pushout_along_cofibration(p, cof, &to_zero)?;
    Ok((po.d, po.into_b))
}

/// The weak equivalence `A ∨ B/A → B` restricting to `cof` along `A`.
pub fn splitting_equivalence<P: Permutative + ?Sized>(p: &P, cof: &GammaMor) -> Result<GammaMor> {
    if !is_cofibration(p, cof) {
        return Err(pre("splitting needs a cofibration"));
    }
    let im = cof.image();
    let rest: Vec<usize> = (0..cof.tgt.len()).filter(|j| im.binary_search(j).is_err()).collect();
    let mut src = cof.src.0.clone();
    src.extend(rest.iter().map(|&j| cof.tgt.0[j]));
    let mut phi = cof.phi.clone();
    let mut comps = cof.comps.clone();
    for &j in &rest {
        phi.push(vec![j]);
        comps.push(Some(p.identity(cof.tgt.0[j])));
    }
    Ok(GammaMor { src: GammaObj(src), tgt: cof.tgt.clone(), phi, comps })
}

/// Two spans `B ↢ A → C`, `B' ↢ A' → C'` and vertical maps between them.
#[derive(Debug, Clone)]
pub struct GluingDiagram {
    pub cof: GammaMor,
    pub map: GammaMor,
    pub cof2: GammaMor,
    pub map2: GammaMor,
    pub va: GammaMor,
    pub vb: GammaMor,
    pub vc: GammaMor,
}

/// Whether the map induced between the two pushouts is a weak equivalence.
///
/// Errors name the hypothesis that fails: a leg that is not a cofibration,
/// a vertical map that is not a weak equivalence, or a square that does not
/// commute.
pub fn check_gluing_instance<P: Permutative + ?Sized>(p: &P, g: &GluingDiagram) -> Result<bool> {
    if !is_cofibration(p, &g.cof) || !is_cofibration(p, &g.cof2) {
        return Err(pre("gluing: horizontal left leg is not a cofibration"));
    }
    if ![&g.va, &g.vb, &g.vc].into_iter().all(is_weak_equivalence) {
        return Err(pre("gluing: vertical map is not a weak equivalence"));
    }
    let square = |name: &str, top: &GammaMor, right: &GammaMor, left: &GammaMor, bottom: &GammaMor| -> Result<()> {
        let a = gamma_compose(p, right, top).ok();
        let b = gamma_compose(p, bottom, left).ok();
        match (a, b) {
            (Some(x), Some(y)) if x == y => Ok(()),
            _ => Err(pre(format!("gluing: {name} square does not commute"))),
        }
    };
    square("cofibration", &g.cof, &g.vb, &g.va, &g.cof2)?;
    square("map", &g.map, &g.vc, &g.va, &g.map2)?;
    let top = pushout_along_cofibration(p, &g.cof, &g.map)?;
    let bottom = pushout_along_cofibration(p, &g.cof2, &g.map2)?;
    let gamma = gamma_compose(p, &bottom.into_c, &g.vc).map_err(|e| pre(format!("gluing: C-leg undefined: {e}")))?;
    let delta = gamma_compose(p, &bottom.into_b, &g.vb).map_err(|e| pre(format!("gluing: B-leg undefined: {e}")))?;
    let induced = pushout_mediating(p, &g.cof, &g.map, &top, &gamma, &delta)?;
    Ok(is_weak_equivalence(&induced))
}

/// The pushout's own legs induce the identity.
pub fn pushout_identity_check<P: Permutative + ?Sized>(p: &P, cof: &GammaMor, m: &GammaMor) -> Result<bool> {
    let po = pushout_along_cofibration(p, cof, m)?;
    let omega = pushout_mediating(p, cof, m, &po, &po.into_c, &po.into_b)?;
    Ok(omega == gamma_identity(p, &po.d))
}
