use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{smith_normal_form, AbGroupInvariants, IntMatrix};
use crate::error::{Error, Result};
use crate::fincat::{Category, MorId};
use crate::report::Report;

/// Normalized chains on the nerve up to some dimension.
///
/// `simplices[n]` lists the degree-`n` generators: strings `(f₁, …, fₙ)` of
/// composable non-identity morphisms with `f_{i+1}` after `f_i`; degree 0
/// holds one empty string per object. `boundaries[n - 1]` is `∂ₙ`, with one
/// column per degree-`n` generator.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub simplices: Vec<Vec<Vec<MorId>>>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn rank(&self, n: usize) -> usize {
        self.simplices[n].len()
    }
}

/// Entries allowed in one dense boundary matrix.
const MAX_DENSE_ENTRIES: u64 = 1 << 22;

/// Builds `∂₁, …, ∂_max_dim`. `budget` caps the total number of simplices;
/// each boundary matrix is also capped at `MAX_DENSE_ENTRIES` entries.
pub fn nerve_chain_complex<C: Category + ?Sized>(cat: &C, max_dim: usize, budget: u64) -> Result<ChainComplex> {
    let non_identity: Vec<MorId> = cat.morphisms().into_iter().filter(|&m| !cat.is_identity(m)).collect();
    let mut out_of: HashMap<usize, Vec<MorId>> = HashMap::new();
    for &m in &non_identity {
        out_of.entry(cat.src(m).0).or_default().push(m);
    }
    let mut simplices: Vec<Vec<Vec<MorId>>> = vec![cat.objects().into_iter().map(|_| Vec::new()).collect()];
    let mut total = simplices[0].len() as u64;
    for n in 1..=max_dim {
        let next: Vec<Vec<MorId>> = if n == 1 {
            non_identity.iter().map(|&m| vec![m]).collect()
        } else {
            let mut v = Vec::new();
            for s in &simplices[n - 1] {
                let end = cat.tgt(*s.last().expect("positive degree"));
                for &m in out_of.get(&end.0).map_or(&[][..], Vec::as_slice) {
                    let mut t = s.clone();
                    t.push(m);
                    v.push(t);
                }
            }
            v
        };
        total += next.len() as u64;
        if total > budget {
            return Err(Error::Budget(format!("nerve up to degree {n} has more than {budget} simplices")));
        }
        simplices.push(next);
    }

    for n in 1..=max_dim {
        let entries = simplices[n - 1].len() as u64 * simplices[n].len() as u64;
        if entries > MAX_DENSE_ENTRIES {
            return Err(Error::Budget(format!(
                "∂{n} would be a {}×{} matrix, more than {MAX_DENSE_ENTRIES} entries",
                simplices[n - 1].len(),
                simplices[n].len()
            )));
        }
    }
    let mut boundaries = Vec::with_capacity(max_dim);
    for n in 1..=max_dim {
        let index: HashMap<&[MorId], usize> = simplices[n - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut d = IntMatrix::zeros(simplices[n - 1].len(), simplices[n].len());
        for (j, s) in simplices[n].iter().enumerate() {
            for i in 0..=n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let row = if n == 1 {
                    let obj = if i == 0 { cat.tgt(s[0]) } else { cat.src(s[0]) };
                    Some(obj.0)
                } else {
                    face(cat, s, i)?.and_then(|f| index.get(f.as_slice()).copied())
                };
                if let Some(row) = row {
                    d.add_to(row, j, sign);
                }
            }
        }
        boundaries.push(d);
    }
    Ok(ChainComplex { simplices, boundaries })
}

/// The `i`-th face of a string of length ≥ 2, or `None` when an inner face
/// composes to an identity and so is degenerate.
fn face<C: Category + ?Sized>(cat: &C, s: &[MorId], i: usize) -> Result<Option<Vec<MorId>>> {
    let n = s.len();
    if i == 0 {
        return Ok(Some(s[1..].to_vec()));
    }
    if i == n {
        return Ok(Some(s[..n - 1].to_vec()));
    }
    let g = cat.compose(s[i], s[i - 1]).ok_or_else(|| Error::MissingComposite {
        outer: cat.morphism_name(s[i]),
        inner: cat.morphism_name(s[i - 1]),
    })?;
    if cat.is_identity(g) {
        return Ok(None);
    }
    let mut t = s[..i - 1].to_vec();
    t.push(g);
    t.extend_from_slice(&s[i + 1..]);
    Ok(Some(t))
}

/// Verifies `∂ₙ ∘ ∂ₙ₊₁ = 0` for every consecutive pair.
pub fn check_boundaries(cx: &ChainComplex) -> Report {
    let mut r = Report::new();
    r.touch("boundary_squared");
    for (n, pair) in cx.boundaries.windows(2).enumerate() {
        let ok = pair[0].mul(&pair[1]).is_zero();
        r.check("boundary_squared", ok, "nonzero_composite", || (format!("∂{} ∘ ∂{}", n + 1, n + 2), "product has nonzero entries".into()));
    }
    r
}

/// `H₀, …, H_{max_dim − 1}` of the nerve. Diagnostic only: a finite
/// truncation of the chains says nothing about degrees at or above `max_dim`.
pub fn homology<C: Category + ?Sized>(cat: &C, max_dim: usize, budget: u64) -> Result<Vec<AbGroupInvariants>> {
    let cx = nerve_chain_complex(cat, max_dim, budget)?;
    let snfs: Vec<_> = cx.boundaries.iter().map(smith_normal_form).collect();
    Ok((0..max_dim)
        .map(|n| {
            let rank_out = if n == 0 { 0 } else { snfs[n - 1].rank() };
            let incoming = &snfs[n];
            AbGroupInvariants {
                rank: cx.rank(n) - rank_out - incoming.rank(),
                torsion: incoming.diagonal.iter().filter(|d| !d.is_one()).cloned().collect::<Vec<BigInt>>(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::plus_category;
    use crate::fincat::samples::{c2, cyclic, x1};
    use crate::fincat::FinCat;

    fn point() -> FinCat {
        let mut b = FinCat::builder();
        b.object("a");
        b.build().unwrap()
    }

    #[test]
    fn point_has_the_homology_of_a_point() {
        let h = homology(&point(), 2, 1000).unwrap();
        assert_eq!(h, vec![AbGroupInvariants::free(1), AbGroupInvariants::trivial()]);
    }

    #[test]
    fn discrete_categories_have_zero_boundaries() {
        let cx = nerve_chain_complex(&cyclic(3), 3, 1000).unwrap();
        assert!(cx.boundaries.iter().all(IntMatrix::is_zero));
        assert_eq!(homology(&c2(), 1, 1000).unwrap(), vec![AbGroupInvariants::free(2)]);
    }

    #[test]
    fn idempotent_strings_are_generators() {
        let p = x1();
        let t = p.base().find_morphism("t").unwrap();
        let cx = nerve_chain_complex(&p, 3, 1000).unwrap();
        assert!(cx.simplices[3].contains(&vec![t, t, t]));
        assert!(check_boundaries(&cx).is_clean());
    }

    #[test]
    fn idempotent_is_contractible_on_its_component() {
        // {x, t} is the nerve of a one-object monoid {1, t}, contractible.
        let h = homology(&x1(), 3, 10_000).unwrap();
        assert_eq!(h, vec![AbGroupInvariants::free(2), AbGroupInvariants::trivial(), AbGroupInvariants::trivial()]);
    }

    #[test]
    fn parallel_pair_is_a_circle() {
        let mut b = FinCat::builder();
        let (a, c) = (b.object("a"), b.object("b"));
        b.morphism("f", a, c);
        b.morphism("g", a, c);
        let h = homology(&b.build().unwrap(), 2, 1000).unwrap();
        assert_eq!(h, vec![AbGroupInvariants::free(1), AbGroupInvariants::free(1)]);
    }

    #[test]
    fn group_of_order_two_has_torsion() {
        let mut b = FinCat::builder();
        let a = b.object("a");
        let g = b.morphism("g", a, a);
        let id = b.identity(a);
        b.compose(g, g, id);
        let h = homology(&b.build().unwrap(), 4, 1000).unwrap();
        assert_eq!(h, vec![AbGroupInvariants::free(1), AbGroupInvariants::cyclic(2), AbGroupInvariants::trivial(), AbGroupInvariants::cyclic(2)]);
    }

    #[test]
    fn plus_adds_a_component() {
        let plus = plus_category(&c2());
        assert_eq!(homology(plus.cat(), 1, 1000).unwrap(), vec![AbGroupInvariants::free(3)]);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(nerve_chain_complex(&x1(), 6, 4), Err(Error::Budget(_))));
    }

    #[test]
    fn dense_boundary_size_is_capped() {
        // A cone with 2100 legs: ∂₁ is 2101 × 2100.
        let mut b = FinCat::builder();
        let apex = b.object("b");
        for i in 0..2100 {
            let a = b.object(&format!("a{i}"));
            b.morphism(&format!("f{i}"), a, apex);
        }
        let cat = b.build().unwrap();
        let err = nerve_chain_complex(&cat, 1, u64::MAX).unwrap_err();
        assert!(err.to_string().contains("2101×2100"), "{err}");
    }
}
