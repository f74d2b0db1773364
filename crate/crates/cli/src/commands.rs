use std::collections::BTreeMap;

use gammawald::compare::{check_counit_exact, check_oplax_coherence, check_quillen_a, check_triangle_identities, check_triangle_identities_d, plus_category};
use gammawald::fincat::{check_perm_coherence, validate_category, Category, FinPermCat};
use gammawald::gamma::{check_composition_laws, count_window_morphisms, is_cofibration, is_isomorphism, is_weak_equivalence, TruncatedGamma};
use gammawald::ktheory::oracle::{enumerate_quotient, gcd_of_minors, pair_construction};
use gammawald::ktheory::{
    check_boundaries, components, grothendieck_group, grothendieck_presentation, groups_isomorphic, homology, k0_presentation, k0_segal, nerve_chain_complex, pi0_monoid,
    smith_normal_form, weak_component_count, AbGroupInvariants, IntMatrix,
};
use gammawald::report::Report;
use gammawald::spec::{parse_spec, CategorySpec};
use gammawald::wald::{check_waldhausen_axioms, check_weakly_split, gamma_as_wald, pointed_sets, CheckOptions, FiniteWald, WaldView, WeakSub};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::output::{prefixed, CliReport, InputInfo};
use crate::Params;

/// Largest quotient the enumeration oracle will list element by element.
const ENUMERATION_LIMIT: usize = 100_000;
/// Matrices up to this size are also diagonalized through their minors.
const MINORS_LIMIT: usize = 4;

enum Input {
    Perm(FinPermCat),
    Wald(FiniteWald),
}

type Results = BTreeMap<String, Value>;

struct Ctx<'a> {
    params: &'a Params,
    report: Report,
    results: Results,
}

impl Ctx<'_> {
    fn opts(&self) -> CheckOptions {
        CheckOptions { budget: self.params.budget, seed: self.params.seed }
    }

    fn absorb(&mut self, prefix: &str, r: Report) {
        self.report.merge(prefixed(prefix, r));
    }

    fn result(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }
}

fn unsupported(command: &str, what: &str) -> String {
    format!("`{command}` needs {what}")
}

pub fn run(command: &str, path: &str, text: &str, params: &Params) -> Result<CliReport, String> {
    let spec = parse_spec(text).map_err(|e| e.to_string())?;
    let input = load(&spec)?;
    let mut ctx = Ctx { params, report: Report::new(), results: Results::new() };
    match command {
        "report-all" => {
            let all: &[&str] = match input {
                Input::Perm(_) => &["validate", "gamma", "axioms", "split", "laws", "coherence", "k0", "quillen-a", "oplax", "adjunction", "homology"],
                Input::Wald(_) => &["validate", "axioms", "k0", "adjunction", "homology"],
            };
            for c in all {
                let mut sub = Ctx { params, report: Report::new(), results: Results::new() };
                dispatch(c, &input, &mut sub)?;
                ctx.absorb(c, sub.report);
                for (k, v) in sub.results {
                    ctx.result(&format!("{c}.{k}"), v);
                }
            }
        }
        c => dispatch(c, &input, &mut ctx)?,
    }
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(CliReport::new(command, InputInfo { path: path.to_string(), sha256: digest }, params.clone(), ctx.report, ctx.results))
}

fn load(spec: &CategorySpec) -> Result<Input, String> {
    let loaded = if spec.waldhausen.is_some() { spec.to_waldhausen().map(Input::Wald) } else { spec.to_permutative().map(Input::Perm) };
    loaded.map_err(|e| e.to_string())
}

fn dispatch(command: &str, input: &Input, ctx: &mut Ctx) -> Result<(), String> {
    match (command, input) {
        ("validate", Input::Perm(p)) => ctx.absorb("validate", p.validate()),
        ("validate", Input::Wald(d)) => ctx.absorb("validate", validate_category(d.cat())),
        ("gamma", Input::Perm(p)) => gamma_stats(p, ctx)?,
        ("axioms", Input::Perm(p)) => {
            let gw = gamma_as_wald(p, ctx.params.max_len, ctx.params.max_morphisms).map_err(|e| e.to_string())?;
            let r = check_waldhausen_axioms(&gw, ctx.opts());
            ctx.result("window_morphisms", json!(gw.window().morphism_count()));
            ctx.absorb("axioms", r);
        }
        ("axioms", Input::Wald(d)) => {
            let r = check_waldhausen_axioms(d, ctx.opts());
            ctx.absorb("axioms", r);
        }
        ("split", Input::Perm(p)) => {
            let gw = gamma_as_wald(p, ctx.params.max_len, ctx.params.max_morphisms).map_err(|e| e.to_string())?;
            ctx.absorb("split", check_weakly_split(&gw));
        }
        ("laws", Input::Perm(p)) => {
            let w = TruncatedGamma::new(p, ctx.params.max_len, ctx.params.max_morphisms).map_err(|e| e.to_string())?;
            let r = check_composition_laws(&w, ctx.opts());
            ctx.absorb("composition", r);
        }
        ("coherence", Input::Perm(p)) => ctx.absorb("coherence", check_perm_coherence(p, ctx.params.coherence_len)),
        ("k0", Input::Perm(p)) => k0_perm(p, ctx)?,
        ("k0", Input::Wald(d)) => {
            let v = k0_view(d, "k0", ctx)?;
            ctx.result("waldhausen", json!(v));
        }
        ("quillen-a", Input::Perm(p)) => {
            let plus = plus_category(p);
            let r = check_quillen_a(&plus, ctx.params.max_len, ctx.params.max_morphisms, ctx.params.comma_all_morphisms).map_err(|e| e.to_string())?;
            ctx.absorb("quillen_a", r);
        }
        ("oplax", Input::Perm(p)) => {
            let r = check_oplax_coherence(p, ctx.opts());
            ctx.absorb("oplax", r);
        }
        ("adjunction", Input::Perm(p)) => {
            let r = check_triangle_identities(p, ctx.params.max_len, ctx.params.max_morphisms, ctx.opts()).map_err(|e| e.to_string())?;
            ctx.absorb("adjunction", r);
        }
        ("adjunction", Input::Wald(d)) => {
            let r = check_counit_exact(d, ctx.params.max_len, ctx.params.max_morphisms, ctx.opts()).map_err(|e| e.to_string())?;
            ctx.absorb("counit", r);
            ctx.absorb("adjunction", check_triangle_identities_d(d));
        }
        ("homology", Input::Perm(p)) => {
            let plus = plus_category(p);
            let h = nerve_homology("C", p, ctx)?;
            let hp = nerve_homology("C+", plus.cat(), ctx)?;
            let gw = gamma_as_wald(p, ctx.params.max_len, ctx.params.max_morphisms).map_err(|e| e.to_string())?;
            let weak = weak_component_count(&gw);
            compare_h0(ctx, "C+ H0 rank vs weak components of the Γ window", hp.first(), weak);
            compare_h0(ctx, "C H0 rank vs components of C", h.first(), components(p, |_| true).0);
            ctx.report.note("homology: nerve homology of finite truncations is diagnostic only");
        }
        ("homology", Input::Wald(d)) => {
            nerve_homology("D", d, ctx)?;
            let hw = nerve_homology("wD", &WeakSub::new(d), ctx)?;
            compare_h0(ctx, "wD H0 rank vs weak components", hw.first(), weak_component_count(d));
            ctx.report.note("homology: nerve homology of finite truncations is diagnostic only");
        }
        ("split" | "laws" | "coherence" | "quillen-a" | "oplax" | "gamma", Input::Wald(_)) => {
            return Err(unsupported(command, "a permutative category file (no waldhausen block)"));
        }
        (other, _) => return Err(format!("unknown command `{other}`")),
    }
    Ok(())
}

fn gamma_stats(p: &FinPermCat, ctx: &mut Ctx) -> Result<(), String> {
    let n = p.object_count() as u128;
    for len in 1..=ctx.params.max_len {
        let objects: u128 = (0..=len as u32).map(|k| n.pow(k)).sum();
        let counted = count_window_morphisms(p, len);
        let mut entry = json!({
            "objects": objects.to_string(),
            "morphisms": counted.map_or("overflow".to_string(), |c| c.to_string()),
        });
        match counted {
            Some(c) if c <= ctx.params.max_morphisms as u128 => {
                let w = TruncatedGamma::new(p, len, ctx.params.max_morphisms).map_err(|e| e.to_string())?;
                ctx.report.check("gamma.window_count", w.morphism_count() as u128 == c, "enumerated window disagrees with hom counts", || {
                    (format!("L={len}"), format!("counted {c}, enumerated {}", w.morphism_count()))
                });
                let mors: Vec<_> = w.all_morphisms().map(|m| w.mor(m)).collect();
                entry["cofibrations"] = json!(mors.iter().filter(|m| is_cofibration(p, m)).count());
                entry["weak_equivalences"] = json!(mors.iter().filter(|m| is_weak_equivalence(m)).count());
                entry["isomorphisms"] = json!(mors.iter().filter(|m| is_isomorphism(p, m)).count());
            }
            _ => {
                ctx.report.skip("gamma.window_count");
                ctx.report.note(format!("gamma: window of length {len} exceeds --max-morphisms; only counted"));
            }
        }
        ctx.result(&format!("L{len}"), entry);
    }
    Ok(())
}

/// Cross-checks a cokernel against the enumeration oracle and, for small
/// matrices, the Smith form against gcds of minors.
fn oracle_checks(ctx: &mut Ctx, section: &str, what: &str, m: &IntMatrix, group: &AbGroupInvariants) {
    match enumerate_quotient(m, ENUMERATION_LIMIT) {
        Some(e) => ctx.report.check(&format!("{section}.cokernel_vs_enumeration"), groups_isomorphic(&e, group), "SNF cokernel disagrees with enumeration", || {
            (what.to_string(), format!("snf {group}, enumeration {e}"))
        }),
        None => ctx.report.skip(&format!("{section}.cokernel_vs_enumeration")),
    }
    minors_check(ctx, section, what, m);
}

fn minors_check(ctx: &mut Ctx, section: &str, what: &str, m: &IntMatrix) {
    let key = format!("{section}.snf_vs_minors");
    if m.rows() <= MINORS_LIMIT && m.cols() <= MINORS_LIMIT {
        let snf = smith_normal_form(m).diagonal;
        let minors = gcd_of_minors(m);
        ctx.report.check(&key, snf == minors, "Smith form disagrees with gcds of minors", || (what.to_string(), format!("snf {snf:?}, minors {minors:?}")));
    } else {
        ctx.report.touch(&key);
    }
}

fn k0_perm(p: &FinPermCat, ctx: &mut Ctx) -> Result<(), String> {
    let monoid = pi0_monoid(p).map_err(|e| e.to_string())?;
    ctx.absorb("k0.pi0", monoid.validate());
    let segal = grothendieck_group(&monoid);
    let pairs = pair_construction(&monoid);
    ctx.report.check("k0.segal_vs_pairs", groups_isomorphic(&segal, &pairs), "Grothendieck group disagrees with the pair construction", || {
        ("π₀ monoid".into(), format!("presentation {segal}, pairs {pairs}"))
    });
    let presentation = grothendieck_presentation(&monoid);
    oracle_checks(ctx, "k0.segal", "Grothendieck presentation", &presentation, &segal);

    let plus = plus_category(p);
    let segal_plus = k0_segal(plus.cat()).map_err(|e| e.to_string())?;
    ctx.report.check("k0.plus_invariance", groups_isomorphic(&segal, &segal_plus), "K₀ of C₊ differs from K₀ of C", || {
        ("C₊".into(), format!("{segal_plus} vs {segal}"))
    });

    let names: Vec<&str> = (0..monoid.len()).map(|a| monoid.name(a)).collect();
    ctx.result("pi0", json!(names));
    ctx.result("segal", json!(segal));
    ctx.result("segal_plus", json!(segal_plus));
    let mut wald = serde_json::Map::new();
    for len in 2..=ctx.params.max_len.max(2) {
        let gw = gamma_as_wald(p, len, ctx.params.max_morphisms).map_err(|e| e.to_string())?;
        let v = k0_view(&gw, &format!("k0.L{len}"), ctx)?;
        ctx.report.check("k0.waldhausen_vs_segal", groups_isomorphic(&v, &segal), "K₀ of the Γ window differs from K₀ of C", || {
            (format!("L={len}"), format!("waldhausen {v}, segal {segal}"))
        });
        wald.insert(format!("L{len}"), json!(v));
    }
    ctx.result("waldhausen", Value::Object(wald));
    Ok(())
}

fn k0_view<V: WaldView + ?Sized>(v: &V, section: &str, ctx: &mut Ctx) -> Result<AbGroupInvariants, String> {
    let pres = k0_presentation(v, ctx.params.max_morphisms).map_err(|e| e.to_string())?;
    let group = AbGroupInvariants::cokernel(&pres.relations);
    ctx.absorb(section, pres.report);
    oracle_checks(ctx, section, "relation matrix", &pres.relations, &group);
    Ok(group)
}

fn nerve_homology<C: Category + ?Sized>(label: &str, cat: &C, ctx: &mut Ctx) -> Result<Vec<AbGroupInvariants>, String> {
    let budget = ctx.params.max_morphisms;
    let cx = nerve_chain_complex(cat, ctx.params.max_dim, budget).map_err(|e| e.to_string())?;
    ctx.absorb(&format!("homology.{label}"), check_boundaries(&cx));
    for (n, d) in cx.boundaries.iter().enumerate() {
        minors_check(ctx, &format!("homology.{label}"), &format!("∂_{}", n + 1), d);
    }
    let h = homology(cat, ctx.params.max_dim, budget).map_err(|e| e.to_string())?;
    let shown: Vec<Value> = h.iter().map(|g| json!(g)).collect();
    ctx.result(&format!("H_{label}"), Value::Array(shown));
    Ok(h)
}

fn compare_h0(ctx: &mut Ctx, what: &str, h0: Option<&AbGroupInvariants>, expected: usize) {
    let rank = h0.map_or(0, |g| g.rank);
    ctx.report.check("homology.h0_components", rank == expected, "H0 rank differs from the component count", || {
        (what.to_string(), format!("rank {rank}, components {expected}"))
    });
}

pub fn emit_plus(text: &str) -> Result<String, String> {
    let p = parse_spec(text).and_then(|s| s.to_permutative()).map_err(|e| e.to_string())?;
    Ok(CategorySpec::from_permutative(plus_category(&p).cat()).to_json())
}

pub fn emit_pointed_sets(max: usize) -> String {
    CategorySpec::from_waldhausen(&pointed_sets(max)).to_json()
}
