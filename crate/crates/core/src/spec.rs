//! JSON category files.
//!
//! Morphisms are referred to by name; every object `a` has an implicit
//! identity `id_a`. Composites with an identity and tensors of identities
//! may be omitted, and are left out again when serializing.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{Category, FinCat, FinPermCat, MorId, ObjId, Permutative};
use crate::wald::{FiniteWald, WaldView};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default)]
    pub compose: Vec<ComposeEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tensor_obj: Vec<TensorObjEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tensor_mor: Vec<TensorMorEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symmetry: Vec<SymmetryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waldhausen: Option<WaldhausenSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeEntry {
    pub outer: String,
    pub inner: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorObjEntry {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorMorEntry {
    pub left: String,
    pub right: String,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryEntry {
    pub left: String,
    pub right: String,
    pub morphism: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaldhausenSpec {
    pub zero: String,
    #[serde(default)]
    pub cofibrations: Vec<String>,
    #[serde(default)]
    pub weak_equivalences: Vec<String>,
    #[serde(default)]
    pub wedges: Vec<WedgeEntry>,
    /// Whether every pushout along a cofibration exists in the tables.
    #[serde(default)]
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeEntry {
    pub left: String,
    pub right: String,
    pub wedge: String,
    pub in_left: String,
    pub in_right: String,
}

pub fn parse_spec(text: &str) -> Result<CategorySpec> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid category file: {e}")))
}

impl CategorySpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// The underlying category, with name lookups for the remaining tables.
    pub fn to_category(&self) -> Result<FinCat> {
        Ok(self.resolve()?.cat)
    }

    pub fn to_permutative(&self) -> Result<FinPermCat> {
        let r = self.resolve()?;
        let unit = self.unit.as_deref().ok_or_else(|| Error::Input("unit: required for a permutative category".into()))?;
        let unit = r.obj("unit", unit)?;
        let tensor_obj = self
            .tensor_obj
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let f = |k: &str| format!("tensor_obj[{i}].{k}");
                Ok(((r.obj(&f("left"), &e.left)?, r.obj(&f("right"), &e.right)?), r.obj(&f("result"), &e.result)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let tensor_mor = self
            .tensor_mor
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let f = |k: &str| format!("tensor_mor[{i}].{k}");
                Ok(((r.mor(&f("left"), &e.left)?, r.mor(&f("right"), &e.right)?), r.mor(&f("result"), &e.result)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let symmetry = self
            .symmetry
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let f = |k: &str| format!("symmetry[{i}].{k}");
                Ok(((r.obj(&f("left"), &e.left)?, r.obj(&f("right"), &e.right)?), r.mor(&f("morphism"), &e.morphism)?))
            })
            .collect::<Result<Vec<_>>>()?;
        FinPermCat::new(r.cat, unit, tensor_obj, tensor_mor, symmetry)
    }

    pub fn to_waldhausen(&self) -> Result<FiniteWald> {
        let w = self.waldhausen.as_ref().ok_or_else(|| Error::Input("waldhausen: block missing".into()))?;
        let r = self.resolve()?;
        let zero = r.obj("waldhausen.zero", &w.zero)?;
        let names = |field: &str, list: &[String]| {
            list.iter().enumerate().map(|(i, n)| r.mor(&format!("waldhausen.{field}[{i}]"), n)).collect::<Result<Vec<_>>>()
        };
        let cofs = names("cofibrations", &w.cofibrations)?;
        let wes = names("weak_equivalences", &w.weak_equivalences)?;
        let wedges = w
            .wedges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let f = |k: &str| format!("waldhausen.wedges[{i}].{k}");
                Ok((
                    (r.obj(&f("left"), &e.left)?, r.obj(&f("right"), &e.right)?),
                    (r.obj(&f("wedge"), &e.wedge)?, r.mor(&f("in_left"), &e.in_left)?, r.mor(&f("in_right"), &e.in_right)?),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteWald::new(r.cat, zero, cofs, wes, wedges, w.complete)
    }

    fn resolve(&self) -> Result<Resolved> {
        let mut seen = HashSet::new();
        for (i, o) in self.objects.iter().enumerate() {
            if !seen.insert(o.as_str()) {
                return Err(Error::Input(format!("objects[{i}]: duplicate object name '{o}'")));
            }
        }
        let mut b = FinCat::builder();
        let objects: HashMap<String, ObjId> = self.objects.iter().map(|o| (o.clone(), b.object(o))).collect();
        let mut morphisms: HashMap<String, MorId> = objects.iter().map(|(o, &id)| (format!("id_{o}"), b.identity(id))).collect();
        let obj = |field: &str, name: &str| objects.get(name).copied().ok_or_else(|| Error::Input(format!("{field}: unknown object '{name}'")));
        for (i, m) in self.morphisms.iter().enumerate() {
            let (s, t) = (obj(&format!("morphisms[{i}].src"), &m.src)?, obj(&format!("morphisms[{i}].tgt"), &m.tgt)?);
            if morphisms.contains_key(&m.name) {
                return Err(Error::Input(format!("morphisms[{i}].name: duplicate morphism name '{}'", m.name)));
            }
            morphisms.insert(m.name.clone(), b.morphism(&m.name, s, t));
        }
        let mor = |field: &str, name: &str| morphisms.get(name).copied().ok_or_else(|| Error::Input(format!("{field}: unknown morphism '{name}'")));
        for (i, e) in self.compose.iter().enumerate() {
            let f = |k: &str| format!("compose[{i}].{k}");
            b.compose(mor(&f("outer"), &e.outer)?, mor(&f("inner"), &e.inner)?, mor(&f("result"), &e.result)?);
        }
        let cat = b.build()?;
        Ok(Resolved { cat, objects, morphisms })
    }

    /// Serializes a category, omitting identities and the composites and
    /// tensors they determine.
    pub fn from_category(cat: &FinCat) -> Self {
        let morphisms = cat
            .all_morphisms()
            .filter(|&m| !cat.is_identity(m))
            .map(|m| MorphismSpec { name: cat.morphism_name(m), src: cat.object_name(cat.src(m)), tgt: cat.object_name(cat.tgt(m)) })
            .collect();
        let mut compose: Vec<ComposeEntry> = cat
            .composition_entries()
            .into_iter()
            .filter(|&((g, f), h)| !((cat.is_identity(g) && h == f) || (cat.is_identity(f) && h == g)))
            .map(|((g, f), h)| ComposeEntry { outer: cat.morphism_name(g), inner: cat.morphism_name(f), result: cat.morphism_name(h) })
            .collect();
        // Morphism ids depend on declaration order; names do not.
        compose.sort_by(|a, b| (&a.outer, &a.inner).cmp(&(&b.outer, &b.inner)));
        Self {
            objects: cat.object_names().to_vec(),
            unit: None,
            morphisms,
            compose,
            tensor_obj: Vec::new(),
            tensor_mor: Vec::new(),
            symmetry: Vec::new(),
            waldhausen: None,
        }
    }

    pub fn from_permutative(p: &FinPermCat) -> Self {
        let mut spec = Self::from_category(p.base());
        let on = |a: ObjId| p.object_name(a);
        let mn = |f: MorId| p.morphism_name(f);
        spec.unit = Some(on(p.unit()));
        spec.tensor_obj = p.tensor_obj_entries().into_iter().map(|((a, b), c)| TensorObjEntry { left: on(a), right: on(b), result: on(c) }).collect();
        spec.tensor_mor = p
            .tensor_mor_entries()
            .into_iter()
            .filter(|&((f, g), h)| {
                let implied = p.is_identity(f) && p.is_identity(g) && p.tensor_obj(p.src(f), p.src(g)).map(|ab| p.identity(ab)) == Some(h);
                !implied
            })
            .map(|((f, g), h)| TensorMorEntry { left: mn(f), right: mn(g), result: mn(h) })
            .collect();
        spec.tensor_mor.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
        spec.symmetry = p.symmetry_entries().into_iter().map(|((a, b), s)| SymmetryEntry { left: on(a), right: on(b), morphism: mn(s) }).collect();
        spec
    }

    pub fn from_waldhausen(d: &FiniteWald) -> Self {
        let cat = d.cat();
        let mut spec = Self::from_category(cat);
        let mn = |f: MorId| cat.morphism_name(f);
        spec.waldhausen = Some(WaldhausenSpec {
            zero: cat.object_name(d.zero()),
            cofibrations: d.cofibrations().into_iter().filter(|&m| !cat.is_identity(m)).map(mn).collect(),
            weak_equivalences: d.weak_equivalences().into_iter().filter(|&m| !cat.is_identity(m)).map(mn).collect(),
            wedges: d
                .wedge_entries()
                .into_iter()
                .map(|((a, b), (w, l, r))| WedgeEntry {
                    left: cat.object_name(a),
                    right: cat.object_name(b),
                    wedge: cat.object_name(w),
                    in_left: mn(l),
                    in_right: mn(r),
                })
                .collect(),
            complete: d.is_complete(),
        });
        spec
    }
}

struct Resolved {
    cat: FinCat,
    objects: HashMap<String, ObjId>,
    morphisms: HashMap<String, MorId>,
}

impl Resolved {
    fn obj(&self, field: &str, name: &str) -> Result<ObjId> {
        self.objects.get(name).copied().ok_or_else(|| Error::Input(format!("{field}: unknown object '{name}'")))
    }

    fn mor(&self, field: &str, name: &str) -> Result<MorId> {
        self.morphisms.get(name).copied().ok_or_else(|| Error::Input(format!("{field}: unknown morphism '{name}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::plus_category;
    use crate::fincat::samples::{c2, cyclic, x1};
    use crate::wald::pointed_sets;

    const X1: &str = r#"{
        "objects": ["e", "x"],
        "unit": "e",
        "morphisms": [{"name": "t", "src": "x", "tgt": "x"}],
        "compose": [{"outer": "t", "inner": "t", "result": "t"}],
        "tensor_obj": [
            {"left": "e", "right": "e", "result": "e"},
            {"left": "e", "right": "x", "result": "x"},
            {"left": "x", "right": "e", "result": "x"},
            {"left": "x", "right": "x", "result": "x"}
        ],
        "tensor_mor": [
            {"left": "t", "right": "t", "result": "t"},
            {"left": "t", "right": "id_x", "result": "t"},
            {"left": "id_x", "right": "t", "result": "t"},
            {"left": "t", "right": "id_e", "result": "t"},
            {"left": "id_e", "right": "t", "result": "t"}
        ],
        "symmetry": [
            {"left": "e", "right": "e", "morphism": "id_e"},
            {"left": "e", "right": "x", "morphism": "id_x"},
            {"left": "x", "right": "e", "morphism": "id_x"},
            {"left": "x", "right": "x", "morphism": "id_x"}
        ]
    }"#;

    #[test]
    fn handwritten_x1_matches_the_sample() {
        let p = parse_spec(X1).unwrap().to_permutative().unwrap();
        assert_eq!(p, x1());
    }

    #[test]
    fn round_trips() {
        for p in [c2(), x1(), cyclic(3), plus_category(&x1()).cat().clone()] {
            let spec = CategorySpec::from_permutative(&p);
            let again = parse_spec(&spec.to_json()).unwrap();
            assert_eq!(again, spec);
            let q = again.to_permutative().unwrap();
            assert!(q.validate().is_clean());
            assert_eq!(CategorySpec::from_permutative(&q), spec);
        }
    }

    #[test]
    fn pointed_sets_round_trip() {
        let d = pointed_sets(2);
        let spec = CategorySpec::from_waldhausen(&d);
        let e = parse_spec(&spec.to_json()).unwrap().to_waldhausen().unwrap();
        assert_eq!(CategorySpec::from_waldhausen(&e), spec);
        assert_eq!(e.cofibrations(), d.cofibrations());
        assert_eq!(e.weak_equivalences(), d.weak_equivalences());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_spec(r#"{"objects": ["a"], "morphsms": []}"#).unwrap_err().to_string();
        assert!(err.contains("morphsms") && err.contains("line 1"), "{err}");
    }

    #[test]
    fn dangling_names_point_at_the_field() {
        let text = X1.replace(r#"{"outer": "t", "inner": "t", "result": "t"}"#, r#"{"outer": "t", "inner": "s", "result": "t"}"#);
        let err = parse_spec(&text).unwrap().to_permutative().unwrap_err().to_string();
        assert_eq!(err, "compose[0].inner: unknown morphism 's'");
        let text = X1.replace(r#""unit": "e""#, r#""unit": "u""#);
        let err = parse_spec(&text).unwrap().to_permutative().unwrap_err().to_string();
        assert_eq!(err, "unit: unknown object 'u'");
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = parse_spec(r#"{"objects": ["a", "a"]}"#).unwrap().to_category().unwrap_err().to_string();
        assert_eq!(err, "objects[1]: duplicate object name 'a'");
        let text = r#"{"objects": ["a"], "morphisms": [{"name": "id_a", "src": "a", "tgt": "a"}]}"#;
        let err = parse_spec(text).unwrap().to_category().unwrap_err().to_string();
        assert_eq!(err, "morphisms[0].name: duplicate morphism name 'id_a'");
    }

    #[test]
    fn missing_unit_or_block() {
        let spec = parse_spec(r#"{"objects": ["a"]}"#).unwrap();
        assert!(spec.to_permutative().unwrap_err().to_string().starts_with("unit:"));
        assert!(spec.to_waldhausen().unwrap_err().to_string().starts_with("waldhausen:"));
    }
}
