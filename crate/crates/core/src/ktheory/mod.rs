//! K₀ on both sides of the comparison, plus nerve homology diagnostics.
//!
//! The Segal side is the group completion of `π₀` of the classifying space
//! with the tensor-induced operation. The Waldhausen side is the usual
//! generators-and-relations presentation over a finite view. Both reduce to
//! a relation matrix whose Smith normal form gives the invariants.

mod nerve;
pub mod oracle;
mod snf;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use petgraph::unionfind::UnionFind;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fincat::{Category, ObjId, Permutative};
use crate::report::Report;
use crate::wald::{PushoutOutcome, WaldView};

pub use nerve::{check_boundaries, homology, nerve_chain_complex, ChainComplex};
pub use snf::{smith_normal_form, IntMatrix, Snf};

/// A finite commutative monoid given by its operation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinCommMonoid {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

impl FinCommMonoid {
    /// Checks shape only; see [`FinCommMonoid::validate`] for the laws.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = names.len();
        if unit >= n {
            return Err(Error::Index { table: "monoid unit", index: unit });
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Input(format!("operation table must be {n}×{n}")));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&c| c >= n) {
            return Err(Error::Index { table: "monoid operation", index: bad });
        }
        Ok(Self { names, table, unit })
    }

    /// `ℤ/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self { names, table, unit: 0 }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let n = self.len();
        for a in 0..n {
            r.check("unit", self.op(self.unit, a) == a && self.op(a, self.unit) == a, "unit_law", || {
                (self.names[a].clone(), format!("unit·{0} = {1}, {0}·unit = {2}", self.names[a], self.names[self.op(self.unit, a)], self.names[self.op(a, self.unit)]))
            });
            for b in 0..n {
                r.check("commutativity", self.op(a, b) == self.op(b, a), "not_commutative", || {
                    (format!("{}·{}", self.names[a], self.names[b]), format!("{} ≠ {}", self.names[self.op(a, b)], self.names[self.op(b, a)]))
                });
                for c in 0..n {
                    let l = self.op(self.op(a, b), c);
                    let rr = self.op(a, self.op(b, c));
                    r.check("associativity", l == rr, "not_associative", || {
                        (format!("{}·{}·{}", self.names[a], self.names[b], self.names[c]), format!("{} ≠ {}", self.names[l], self.names[rr]))
                    });
                }
            }
        }
        r
    }
}

/// Free rank and torsion invariant factors `d₁ | d₂ | …`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbGroupInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroupInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// Panics unless the factors form a divisibility chain of values ≥ 2.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        let g = Self { rank, torsion };
        assert!(g.is_canonical(), "torsion factors must be ≥ 2 and form a divisibility chain");
        g
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => Self::new(0, vec![BigInt::from(n)]),
        }
    }

    /// `ℤⁿ` modulo the row space of `relations` (one row per relation).
    pub fn cokernel(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        Self {
            rank: relations.cols() - snf.rank(),
            torsion: snf.diagonal.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|d| *d >= BigInt::from(2)) && self.torsion.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0))
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

pub fn groups_isomorphic(a: &AbGroupInvariants, b: &AbGroupInvariants) -> bool {
    a == b
}

impl fmt::Display for AbGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl Serialize for AbGroupInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rank: usize,
            torsion: Vec<String>,
            display: String,
        }
        Repr { rank: self.rank, torsion: self.torsion.iter().map(|d| d.to_string()).collect(), display: self.to_string() }.serialize(s)
    }
}

/// Connected components of a category as a labelling of its objects,
/// numbered by first appearance.
pub fn components<C: Category + ?Sized>(cat: &C, keep: impl Fn(crate::fincat::MorId) -> bool) -> (usize, Vec<usize>) {
    let n = cat.object_count();
    let mut uf = UnionFind::<usize>::new(n);
    for m in cat.morphisms() {
        if keep(m) {
            uf.union(cat.src(m).0, cat.tgt(m).0);
        }
    }
    let mut label = HashMap::new();
    let classes = (0..n)
        .map(|a| {
            let root = uf.find(a);
            let next = label.len();
            *label.entry(root).or_insert(next)
        })
        .collect();
    (label.len(), classes)
}

/// `π₀` with the operation induced by the tensor.
///
/// Fails with [`Error::Presentation`] when two representatives of the same
/// pair of components tensor into different components.
pub fn pi0_monoid<P: Permutative + ?Sized>(p: &P) -> Result<FinCommMonoid> {
    let (n, class) = components(p, |_| true);
    let mut reps = vec![None; n];
    for a in p.objects() {
        reps[class[a.0]].get_or_insert(a);
    }
    let names: Vec<String> = reps.iter().map(|r| format!("[{}]", p.object_name(r.expect("every class has a member")))).collect();
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for a in p.objects() {
        for b in p.objects() {
            let Some(ab) = p.tensor_obj(a, b) else { continue };
            let (ca, cb, cab) = (class[a.0], class[b.0], class[ab.0]);
            match table[ca][cb] {
                None => table[ca][cb] = Some(cab),
                Some(prev) if prev != cab => {
                    return Err(Error::Presentation(format!(
                        "tensor is not well defined on components: {} ⊗ {} lands in {} but another representative pair lands in {}",
                        p.object_name(a),
                        p.object_name(b),
                        names[cab],
                        names[prev]
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, c)| c.ok_or_else(|| Error::OutOfWindow(format!("no tensor of representatives of {} and {}", names[i], names[j]))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FinCommMonoid::new(names, table, class[p.unit().0])
}

pub fn grothendieck_group(m: &FinCommMonoid) -> AbGroupInvariants {
    AbGroupInvariants::cokernel(&grothendieck_presentation(m))
}

/// Relations `[a]+[b]−[a·b]` and `[unit]` on ℤ^{elements}, deduplicated.
pub fn grothendieck_presentation(m: &FinCommMonoid) -> IntMatrix {
    let n = m.len();
    let mut rows: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut unit = vec![0; n];
    unit[m.unit()] = 1;
    rows.insert(unit);
    for a in 0..n {
        for b in a..n {
            let mut row = vec![0; n];
            row[a] += 1;
            row[b] += 1;
            row[m.op(a, b)] -= 1;
            if row.iter().any(|&x| x != 0) {
                rows.insert(row);
            }
        }
    }
    let rows: Vec<Vec<i64>> = rows.into_iter().collect();
    matrix_with_cols(&rows, n)
}

fn matrix_with_cols(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != 0 {
                m.set(i, j, BigInt::from(x));
            }
        }
    }
    m
}

pub fn k0_segal<P: Permutative + ?Sized>(p: &P) -> Result<AbGroupInvariants> {
    Ok(grothendieck_group(&pi0_monoid(p)?))
}

/// The relation matrix of a finite Waldhausen view, one column per object.
#[derive(Debug, Clone)]
pub struct K0Presentation {
    pub relations: IntMatrix,
    pub report: Report,
}

/// Assembles `[0] = 0`, `[B] = [A] + [B/A]` for each cofibration `A ↣ B`
/// (with `B/A` the pushout along `A → 0`) and `[A] = [B]` for each weak
/// equivalence. Cofibrations whose quotient falls outside the window are
/// skipped and noted. `budget` bounds the number of morphisms visited.
pub fn k0_presentation<V: WaldView + ?Sized>(v: &V, budget: u64) -> Result<K0Presentation> {
    let morphisms = v.morphisms();
    if morphisms.len() as u64 > budget {
        return Err(Error::Budget(format!("{} morphisms exceed the budget of {budget}", morphisms.len())));
    }
    let n = v.object_count();
    let mut report = Report::new();
    let mut rows: BTreeSet<Vec<i64>> = BTreeSet::new();
    let unit_row = |a: ObjId| {
        let mut row = vec![0i64; n];
        row[a.0] = 1;
        row
    };
    rows.insert(unit_row(v.zero()));
    let mut first_skip = None;
    for f in morphisms {
        let (a, b) = (v.src(f), v.tgt(f));
        if v.is_we(f) && a != b {
            let mut row = unit_row(a);
            row[b.0] -= 1;
            rows.insert(row);
            report.pass("weak_equivalences");
        }
        if !v.is_cof(f) {
            continue;
        }
        let Some(to_zero) = v.to_zero(a) else {
            report.fail("cofibrations", "no_zero_map", v.morphism_name(f), format!("{} has no unique map to the zero object", v.object_name(a)));
            continue;
        };
        match v.pushout(f, to_zero) {
            PushoutOutcome::Square { d, .. } => {
                let mut row = vec![0i64; n];
                row[b.0] += 1;
                row[a.0] -= 1;
                row[d.0] -= 1;
                if row.iter().any(|&x| x != 0) {
                    rows.insert(row);
                }
                report.pass("cofibrations");
            }
            PushoutOutcome::OutOfWindow(why) => {
                report.skip("cofibrations");
                first_skip.get_or_insert_with(|| format!("{}: {why}", v.morphism_name(f)));
            }
            PushoutOutcome::Failed(why) => report.fail("cofibrations", "quotient_failed", v.morphism_name(f), why),
        }
    }
    if let Some(first) = first_skip {
        report.note(format!("k0: {} cofibration quotients skipped as out of window (first: {first})", report.section("cofibrations").skipped));
    }
    let rows: Vec<Vec<i64>> = rows.into_iter().collect();
    Ok(K0Presentation { relations: matrix_with_cols(&rows, n), report })
}

pub fn k0_waldhausen<V: WaldView + ?Sized>(v: &V, budget: u64) -> Result<AbGroupInvariants> {
    let pres = k0_presentation(v, budget)?;
    if let Some(f) = pres.report.findings.first() {
        return Err(Error::Presentation(format!("{}: {}", f.instance, f.witness)));
    }
    Ok(AbGroupInvariants::cokernel(&pres.relations))
}

/// Components of a view's subcategory of weak equivalences.
pub fn weak_component_count<V: WaldView + ?Sized>(v: &V) -> usize {
    components(v, |m| v.is_we(m)).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::plus_category;
    use crate::fincat::samples::{c2, cyclic, x1};
    use crate::wald::{gamma_as_wald, pointed_sets};

    fn z(n: u64) -> AbGroupInvariants {
        AbGroupInvariants::cyclic(n)
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbGroupInvariants::trivial().to_string(), "0");
        assert_eq!(AbGroupInvariants::new(2, vec![2.into(), 6.into()]).to_string(), "ℤ^2 ⊕ ℤ/2 ⊕ ℤ/6");
        assert_eq!(z(0).to_string(), "ℤ");
    }

    #[test]
    #[should_panic]
    fn non_chain_is_rejected() {
        AbGroupInvariants::new(0, vec![2.into(), 3.into()]);
    }

    #[test]
    fn isomorphism_is_invariant_equality() {
        assert!(groups_isomorphic(&z(1), &AbGroupInvariants::trivial()));
        assert!(groups_isomorphic(&z(2), &z(2)));
        assert!(!groups_isomorphic(&z(0), &z(2)));
    }

    #[test]
    fn pi0_of_c2_is_z2() {
        let m = pi0_monoid(&c2()).unwrap();
        assert_eq!(m.len(), 2);
        let x = 1 - m.unit();
        assert_eq!(m.op(x, x), m.unit());
        assert!(m.validate().is_clean());
    }

    #[test]
    fn pi0_of_x1_is_idempotent() {
        let m = pi0_monoid(&x1()).unwrap();
        assert_eq!(m.len(), 2);
        let x = 1 - m.unit();
        assert_eq!(m.name(x), "[x]");
        assert_eq!(m.op(x, x), x);
    }

    #[test]
    fn trivial_monoid() {
        let m = FinCommMonoid::cyclic(1);
        assert!(grothendieck_group(&m).is_trivial());
    }

    #[test]
    fn segal_side() {
        assert_eq!(k0_segal(&c2()).unwrap(), z(2));
        assert_eq!(k0_segal(&x1()).unwrap(), z(1));
        assert_eq!(k0_segal(&cyclic(3)).unwrap(), z(3));
        assert_eq!(k0_segal(&cyclic(1)).unwrap(), z(1));
    }

    #[test]
    fn adjoining_a_unit_keeps_k0() {
        for p in [c2(), x1(), cyclic(3)] {
            let plus = plus_category(&p);
            assert_eq!(pi0_monoid(plus.cat()).unwrap().len(), pi0_monoid(&p).unwrap().len() + 1);
            assert_eq!(k0_segal(plus.cat()).unwrap(), k0_segal(&p).unwrap());
        }
    }

    #[test]
    fn waldhausen_side_at_length_two() {
        assert_eq!(k0_waldhausen(&gamma_as_wald(&c2(), 2, 1 << 20).unwrap(), 1 << 20).unwrap(), z(2));
        assert_eq!(k0_waldhausen(&gamma_as_wald(&x1(), 2, 1 << 20).unwrap(), 1 << 20).unwrap(), z(1));
        assert_eq!(k0_waldhausen(&gamma_as_wald(&cyclic(3), 2, 1 << 20).unwrap(), 1 << 20).unwrap(), z(3));
    }

    #[test]
    fn pointed_sets_give_the_integers() {
        assert_eq!(k0_waldhausen(&pointed_sets(2), 1000).unwrap(), z(0));
    }

    #[test]
    fn zero_object_only_view() {
        assert!(k0_waldhausen(&pointed_sets(0), 1000).unwrap().is_trivial());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(k0_waldhausen(&pointed_sets(2), 5), Err(Error::Budget(_))));
    }

    #[test]
    fn weak_components_match_plus_components() {
        for p in [c2(), x1(), cyclic(3)] {
            let plus = plus_category(&p);
            let (n, _) = components(plus.cat(), |_| true);
            let w = gamma_as_wald(&p, 2, 1 << 20).unwrap();
            assert_eq!(weak_component_count(&w), n);
        }
    }

    #[test]
    fn malformed_monoids_are_rejected() {
        assert!(FinCommMonoid::new(vec!["a".into()], vec![vec![1]], 0).is_err());
        assert!(FinCommMonoid::new(vec!["a".into()], vec![vec![0]], 1).is_err());
        let bad = FinCommMonoid::new(vec!["0".into(), "1".into()], vec![vec![0, 1], vec![0, 0]], 0).unwrap();
        let r = bad.validate();
        assert!(r.has_kind("not_commutative"));
    }
}
