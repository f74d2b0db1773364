use gammawald::fincat::samples::{c2, x1};
use gammawald::fincat::{Category, MorId};
use gammawald::wald::{check_waldhausen_axioms, gamma_as_wald, pointed_sets, CheckOptions, GammaWald, MutatedView, PushoutOutcome, WaldView};

fn by_name<V: Category>(v: &V, name: &str) -> MorId {
    v.morphisms().into_iter().find(|&m| v.morphism_name(m) == name).unwrap_or_else(|| panic!("no morphism {name}"))
}

fn clean<V: WaldView>(v: &V) -> bool {
    check_waldhausen_axioms(v, CheckOptions::default()).is_clean()
}

#[test]
fn unmutated_windows_are_clean() {
    assert!(clean(&gamma_as_wald(&c2(), 2, 1 << 20).unwrap()));
    assert!(clean(&pointed_sets(2)));
}

#[test]
fn idempotent_singleton_as_cofibration_is_caught() {
    let p = x1();
    let w = gamma_as_wald(&p, 2, 1 << 20).unwrap();
    let t = by_name(&w, "(x)→(x) φ=[{1}] f=[t]");
    assert!(!w.is_cof(t));
    let r = check_waldhausen_axioms(&MutatedView::new(&w).flip_cof(t), CheckOptions::default());
    assert!(!r.is_clean());
    assert!(r.section("axiom_i").failed + r.section("axiom_iii").failed > 0, "{:?}", r.counts);
}

#[test]
fn every_cofibration_flip_is_caught_on_c2() {
    let p = c2();
    let w = gamma_as_wald(&p, 2, 1 << 20).unwrap();
    let missed: Vec<String> = w
        .morphisms()
        .into_iter()
        .filter(|&f| clean(&MutatedView::new(&w).flip_cof(f)))
        .map(|f| w.morphism_name(f))
        .collect();
    assert!(missed.is_empty(), "{missed:?}");
}

/// The only flips that go unnoticed are zero maps touching `p2`, whose
/// witnessing pushouts would need a set larger than the window allows.
#[test]
fn pointed_set_flips() {
    let d = pointed_sets(2);
    let mut missed = Vec::new();
    for f in d.morphisms() {
        if clean(&MutatedView::new(&d).flip_cof(f)) {
            missed.push(format!("cof {}", d.morphism_name(f)));
        }
        if clean(&MutatedView::new(&d).flip_we(f)) {
            missed.push(format!("we {}", d.morphism_name(f)));
        }
    }
    assert_eq!(missed, ["cof p1>p2:0", "we p1>p2:0", "we p2>p0:00", "we p2>p1:00", "we p2>p2:00"]);
}

/// Maps out of a one-entry tuple into a two-entry tuple whose single block
/// is empty or covers both entries can enter or leave the weak
/// equivalences without breaking any axiom visible at length two.
#[test]
fn some_weak_equivalence_flips_are_invisible_at_length_two() {
    let invisible = [
        "(e)→(e,e) φ=[{}] f=[-]",
        "(e)→(e,e) φ=[{1,2}] f=[id_e]",
        "(e)→(x,x) φ=[{}] f=[-]",
        "(e)→(x,x) φ=[{1,2}] f=[id_e]",
        "(x)→(e,e) φ=[{}] f=[-]",
        "(x)→(x,x) φ=[{}] f=[-]",
    ];
    let p = c2();
    let w = gamma_as_wald(&p, 2, 1 << 20).unwrap();
    let mut missed: Vec<String> = w
        .morphisms()
        .into_iter()
        .filter(|&f| clean(&MutatedView::new(&w).flip_we(f)))
        .map(|f| w.morphism_name(f))
        .collect();
    missed.sort();
    let mut expected: Vec<String> = invisible.iter().map(|s| s.to_string()).collect();
    expected.sort();
    assert_eq!(missed, expected);
}

fn some_square(w: &GammaWald<'_, gammawald::fincat::FinPermCat>) -> (MorId, MorId, PushoutOutcome) {
    let a = by_name(w, "(e)→(e,x) φ=[{1}] f=[id_e]");
    let m = w.to_zero(w.src(a)).unwrap();
    let out = w.pushout(a, m);
    assert!(matches!(out, PushoutOutcome::Square { .. }));
    (a, m, out)
}

#[test]
fn failed_pushout_entry_is_caught() {
    let p = c2();
    let w = gamma_as_wald(&p, 2, 1 << 20).unwrap();
    let (a, m, _) = some_square(&w);
    let v = MutatedView::new(&w).with_pushout(a, m, PushoutOutcome::Failed("removed".into()));
    assert!(!clean(&v));
}

#[test]
fn wrong_pushout_leg_is_caught() {
    let p = c2();
    let w = gamma_as_wald(&p, 2, 1 << 20).unwrap();
    let (a, m, out) = some_square(&w);
    let PushoutOutcome::Square { d, into_c, into_b } = out else { unreachable!() };
    let wrong = w.hom(w.src(into_b), d).iter().copied().find(|&g| g != into_b).expect("a second leg");
    let v = MutatedView::new(&w).with_pushout(a, m, PushoutOutcome::Square { d, into_c, into_b: wrong });
    assert!(!clean(&v));
}
