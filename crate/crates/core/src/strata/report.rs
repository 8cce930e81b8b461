//! JSON emission of strata, incidence and spectrum data with sorted keys.

use serde_json::{json, Value};

use super::{incidence_pairs, spectrum_poset, Strata};
use crate::error::Result;
use crate::scalar::Scalar;

fn vecs<T: Scalar>(vs: &[Vec<T>]) -> Value {
    Value::Array(vs.iter().map(|v| Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

fn face_json<T: Scalar>(s: &Strata<T>, index: usize) -> Value {
    let f = s.face(index);
    json!({
        "index": index,
        "dim": f.dim(),
        "level": s.level_of(index),
        "active_set": f.active_set(),
        "generators": vecs(f.generators()),
    })
}

pub fn lattice_report<T: Scalar>(s: &Strata<T>) -> Value {
    let l = s.lattice();
    json!({
        "faces": (0..l.len()).map(|i| face_json(s, i)).collect::<Vec<_>>(),
        "covers": l.covers(),
        "dims": l.dims(),
        "face_count": l.len(),
        "d": s.d(),
    })
}

pub fn strata_report<T: Scalar>(s: &Strata<T>) -> Result<Value> {
    let mut levels = Vec::new();
    for j in 0..=s.d() {
        levels.push(json!({
            "j": j,
            "dim": s.level_dim(j),
            "faces": s.level(j)?,
            "size": s.level(j)?.len(),
        }));
    }
    let mut incidence = Vec::new();
    for j in 1..=s.d() {
        let ip = incidence_pairs(s, j)?;
        incidence.push(json!({
            "j": j,
            "pairs": ip.pairs,
            "xi": ip.xi,
            "eta": ip.eta,
            "uncovered": ip.uncovered,
        }));
    }
    Ok(json!({
        "d": s.d(),
        "dims": s.dims(),
        "level_sizes": s.level_sizes(),
        "levels": levels,
        "incidence": incidence,
        "faces": (0..s.lattice().len()).map(|i| face_json(s, i)).collect::<Vec<_>>(),
        // finite levels are compact
        "levels_compact": true,
    }))
}

pub fn spectrum_report<T: Scalar>(s: &Strata<T>) -> Result<Value> {
    let sp = spectrum_poset(s)?;
    Ok(json!({
        "d": s.d(),
        "dense_level": sp.dense_level,
        "covers": sp.covers,
        "specializations": sp.specializations,
        "strata": sp.strata.iter().map(|b| json!({
            "level": b.level,
            "rank": b.rank,
            "fibers": b.fibers.iter().map(|f| json!({"face": f.face, "basis": vecs(&f.basis)})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    }))
}
