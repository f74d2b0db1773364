//! The shipped fixtures are the serialized sample categories. Set
//! `GAMMAWALD_BLESS=1` to rewrite them.

use std::path::PathBuf;

use gammawald::compare::plus_category;
use gammawald::fincat::samples::{c2, capped_bijections, cyclic, x1};
use gammawald::spec::{parse_spec, CategorySpec};
use gammawald::wald::pointed_sets;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn expected() -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    for (name, p) in [("c2", c2()), ("x1", x1()), ("z3", cyclic(3))] {
        out.push((name, CategorySpec::from_permutative(&p).to_json()));
        let plus = plus_category(&p);
        let file = match name {
            "c2" => "c2_plus",
            "x1" => "x1_plus",
            _ => "z3_plus",
        };
        out.push((file, CategorySpec::from_permutative(plus.cat()).to_json()));
    }
    out.push(("bijections3", CategorySpec::from_permutative(&capped_bijections(3)).to_json()));
    out.push(("pointed_sets", CategorySpec::from_waldhausen(&pointed_sets(2)).to_json()));
    out
}

#[test]
fn fixtures_match_samples() {
    let bless = std::env::var_os("GAMMAWALD_BLESS").is_some();
    for (name, json) in expected() {
        let path = fixture_dir().join(format!("{name}.json"));
        let text = format!("{json}\n");
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let shipped = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(shipped, text, "{name}.json is stale; rerun with GAMMAWALD_BLESS=1");
        let reparsed = parse_spec(&shipped).unwrap();
        assert_eq!(reparsed.to_json(), json);
    }
}

#[test]
fn dangling_fixture_is_rejected() {
    let text = std::fs::read_to_string(fixture_dir().join("bad_dangling.json")).unwrap();
    let err = parse_spec(&text).and_then(|s| s.to_permutative()).unwrap_err().to_string();
    assert!(err.contains("compose[0].result"), "{err}");
}
