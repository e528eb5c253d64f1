//! Browser front end: build a small parking space, walk the `g`-orbit of a
//! class, and tabulate cyclic sieving.

use fussnc::parkspace::{power, ParkSpace};
use fussnc::qcatalan::verify_csp;
use fussnc::{Family, GroupSpec};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Bounds both `|W|` and the number of classes, so pages stay responsive.
const WEB_CAP: u64 = 50_000;

/// Parses the page's group choice. `rank` is the Lie rank except for I2,
/// where it is `m`.
pub fn parse_group(family: &str, rank: usize) -> Result<GroupSpec, String> {
    let family: Family = family.parse().map_err(|e: fussnc::Error| e.to_string())?;
    let param = if family == Family::A { rank + 1 } else { rank };
    GroupSpec::new(family, param).map_err(|e| e.to_string())
}

/// A built parking space.
#[wasm_bindgen]
pub struct Park {
    space: ParkSpace,
}

impl Park {
    pub fn build(family: &str, rank: usize, k: usize) -> Result<Park, String> {
        if k == 0 || k > 6 {
            return Err("k must be between 1 and 6".into());
        }
        let spec = parse_group(family, rank)?;
        let space = ParkSpace::build(spec, k, WEB_CAP).map_err(|e| e.to_string())?;
        Ok(Park { space })
    }

    pub fn summary_value(&self) -> Value {
        let p = &self.space;
        let spec = p.group().spec();
        let weak = p.verify_weak().map(|rows| rows.iter().all(|r| r.pass)).unwrap_or(false);
        json!({
            "group": spec.name(), "order": p.group().size(), "h": spec.coxeter_number(), "k": p.k(),
            "classes": p.len(), "formula": power(p.kh() + 1, spec.rank()).to_string(), "weak": weak,
        })
    }

    fn class_value(&self, id: u32) -> Value {
        let mut v = self.space.class_json(id);
        v["index"] = json!(id);
        if let Ok(a) = self.space.to_classical(id) {
            v["parking"] = json!(a);
        }
        v
    }

    /// The classes `p, g.p, g².p, …` until the orbit closes.
    pub fn orbit_value(&self, id: u32) -> Result<Value, String> {
        if id as usize >= self.space.len() {
            return Err(format!("class {id} out of range"));
        }
        let mut orbit = vec![self.class_value(id)];
        let mut x = self.space.act_g(id);
        while x != id {
            orbit.push(self.class_value(x));
            x = self.space.act_g(x);
        }
        Ok(Value::Array(orbit))
    }

    pub fn csp_value(&self) -> Result<Value, String> {
        let rows = verify_csp(self.space.group(), self.space.k()).map_err(|e| e.to_string())?;
        Ok(rows
            .iter()
            .map(|r| json!({ "d": r.d, "expected": r.expected.map(|e| e.to_string()), "actual": r.actual.to_string(), "pass": r.pass }))
            .collect())
    }
}

#[wasm_bindgen]
impl Park {
    #[wasm_bindgen(constructor)]
    pub fn new(family: &str, rank: usize, k: usize) -> Result<Park, JsError> {
        Park::build(family, rank, k).map_err(|e| JsError::new(&e))
    }

    pub fn size(&self) -> usize {
        self.space.len()
    }

    /// JSON: group data, class count, `(kh+1)^r` and whether every
    /// character value matched.
    pub fn summary(&self) -> String {
        self.summary_value().to_string()
    }

    /// JSON array of the classes in the `g`-orbit of class `id`.
    pub fn orbit(&self, id: u32) -> Result<String, JsError> {
        self.orbit_value(id).map(|v| v.to_string()).map_err(|e| JsError::new(&e))
    }

    /// JSON array of `{d, expected, actual, pass}` for the k-multichains.
    pub fn csp(&self) -> Result<String, JsError> {
        self.csp_value().map(|v| v.to_string()).map_err(|e| JsError::new(&e))
    }
}
