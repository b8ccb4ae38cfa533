//! Browser bindings: curve and ruling listings, and plane pictures of the
//! negative curves of a point configuration. All results are JSON strings.

use cox_core::field::{rational_to_f64, Field, PrimeField, Rationals};
use cox_core::io::GeneratorRecord;
use cox_core::picard::generators;
use cox_core::plane::{generator_forms, monomials, PointConfiguration};
use cox_core::relations::full_ideal;
use cox_core::rulings::{enumerate_rulings, families_of};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn to_js(result: Result<Value, String>) -> Result<String, JsError> {
    match result {
        Ok(v) => Ok(v.to_string()),
        Err(e) => Err(JsError::new(&e)),
    }
}

pub fn curves_json(r: usize) -> Result<Value, String> {
    let gens = generators(r).map_err(|e| e.to_string())?;
    let records: Vec<GeneratorRecord> = gens.iter().map(GeneratorRecord::from).collect();
    serde_json::to_value(records).map_err(|e| e.to_string())
}

pub fn rulings_json(r: usize, n: u8) -> Result<Value, String> {
    let rulings = enumerate_rulings(r, n).map_err(|e| e.to_string())?;
    let gens = generators(r).map_err(|e| e.to_string())?;
    let families: Vec<Value> = families_of(&rulings)
        .into_iter()
        .map(|fam| {
            let example = &rulings[fam.members[0]];
            let pairs: Vec<String> = example
                .representations
                .iter()
                .map(|m| format!("{} {}", gens[m.a].label(), gens[m.b].label()))
                .collect();
            json!({
                "family": fam.label,
                "count": fam.count(),
                "example": example.class.to_string(),
                "representations": pairs,
            })
        })
        .collect();
    Ok(json!({"r": r, "n": n, "total": rulings.len(), "families": families}))
}

/// `x_0 + a x_1 + b x_2`, nonzero at every point, chosen as the line at
/// infinity of the picture.
fn chart<F: Field>(cfg: &PointConfiguration<F>) -> (i64, i64) {
    let f = cfg.field();
    for s in 2..40i64 {
        for a in 1..s {
            let b = s - a;
            let ok = cfg.points().iter().all(|p| {
                let l = f.add(&p[0], &f.add(&f.mul(&f.from_i64(a), &p[1]), &f.mul(&f.from_i64(b), &p[2])));
                !f.is_zero(&l)
            });
            if ok {
                return (a, b);
            }
        }
    }
    (1, 1)
}

pub fn picture_json(r: usize, params: &str) -> Result<Value, String> {
    let q = Rationals;
    let values = params
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| q.parse(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let cfg = PointConfiguration::from_parameters(q, r, &values).map_err(|e| e.to_string())?;
    let (a, b) = chart(&cfg);
    let points: Vec<[f64; 2]> = cfg
        .points()
        .iter()
        .map(|p| {
            let l = rational_to_f64(&p[0]) + a as f64 * rational_to_f64(&p[1]) + b as f64 * rational_to_f64(&p[2]);
            [rational_to_f64(&p[1]) / l, rational_to_f64(&p[2]) / l]
        })
        .collect();
    if let Err(w) = cfg.validate() {
        return Ok(json!({"r": r, "valid": false, "witness": w.to_string(), "chart": [a, b], "points": points}));
    }
    let gens = generators(r).map_err(|e| e.to_string())?;
    let forms = generator_forms(&gens, &cfg).map_err(|e| e.to_string())?;
    let curves: Vec<Value> = gens
        .iter()
        .zip(&forms)
        .filter(|(_, form)| form.degree > 0)
        .map(|(g, form)| {
            let terms: Vec<Value> = monomials(form.degree)
                .into_iter()
                .zip(&form.coeffs)
                .filter(|(_, c)| !q.is_zero(c))
                .map(|(e, c)| json!({"e": e, "c": rational_to_f64(c)}))
                .collect();
            json!({
                "label": g.label(),
                "family": g.curve().map_or("anticanonical", |c| c.kind.family()),
                "degree": form.degree,
                "terms": terms,
            })
        })
        .collect();
    // Relation counts are computed modulo a large prime to keep r = 8 fast.
    let relations = PrimeField::new(32003)
        .ok()
        .and_then(|fp| cfg.reduce(fp))
        .filter(|red| red.validate().is_ok())
        .and_then(|red| full_ideal(r, &red).ok())
        .map(|rs| rs.len());
    Ok(json!({
        "r": r,
        "valid": true,
        "chart": [a, b],
        "points": points,
        "curves": curves,
        "relations_mod_32003": relations,
    }))
}

/// Generators of the Cox ring of `S_r` with their classes.
#[wasm_bindgen]
pub fn negative_curves(r: usize) -> Result<String, JsError> {
    to_js(curves_json(r))
}

/// `(n)`-rulings of `S_r` grouped into families.
#[wasm_bindgen]
pub fn rulings(r: usize, n: u8) -> Result<String, JsError> {
    to_js(rulings_json(r, n))
}

/// Plane forms of the negative curves through `r` points with
/// `p_j = (1 : alpha_j : beta_j)` given as comma separated rationals.
#[wasm_bindgen]
pub fn plane_picture(r: usize, params: &str) -> Result<String, JsError> {
    to_js(picture_json(r, params))
}
