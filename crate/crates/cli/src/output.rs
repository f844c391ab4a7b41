//! JSON encodings. Rationals are strings `"num/den"`, big integers are
//! strings and q-polynomials are exponent → coefficient maps.

use serde_json::{json, Map, Value};
use soergel_core::bsmod::{mask_string, BSElement, BSMorphism, Coeffs};
use soergel_core::lightleaves::{render_bits, Skeleton};
use soergel_core::{LaurentPoly, Polynomial, Scalar, Word};

pub fn scalar(c: &Scalar) -> Value {
    Value::String(format!("{}/{}", c.numer(), c.denom()))
}

pub fn word(w: &Word) -> Value {
    Value::from(w.letters().to_vec())
}

pub fn polynomial(p: &Polynomial, rank: usize) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(m, c)| json!({ "coeff": scalar(c), "exponents": m.exponents(rank) }))
            .collect(),
    )
}

pub fn coeffs(c: &Coeffs, len: usize, rank: usize) -> Value {
    let map: Map<String, Value> = c.iter().map(|(m, p)| (mask_string(*m, len), polynomial(p, rank))).collect();
    Value::Object(map)
}

pub fn element(e: &BSElement, rank: usize) -> Value {
    json!({ "word": word(e.word()), "coeffs": coeffs(e.coeffs(), e.word().len(), rank) })
}

pub fn morphism(f: &BSMorphism, rank: usize) -> Value {
    let n = f.source().len();
    let images: Map<String, Value> = f
        .images()
        .iter()
        .enumerate()
        .map(|(b, img)| (mask_string(b as u64, n), coeffs(img, f.target().len(), rank)))
        .collect();
    json!({
        "source": word(f.source()),
        "target": word(f.target()),
        "degree": f.degree(),
        "images": images,
    })
}

/// Keys are powers of `q`; an odd power of `v` switches every key to `v^k`.
pub fn laurent(p: &LaurentPoly) -> Value {
    let map: Map<String, Value> = match p.q_coefficients() {
        Ok(c) => c.iter().map(|(k, c)| (k.to_string(), Value::String(c.to_string()))).collect(),
        Err(_) => p.terms().map(|(k, c)| (format!("v^{k}"), Value::String(c.to_string()))).collect(),
    };
    Value::Object(map)
}

pub fn skeleton(s: &Skeleton) -> Value {
    let log: Vec<Value> = s
        .path_log
        .iter()
        .map(|(stage, moves)| {
            let moves: Vec<Value> = moves
                .iter()
                .map(|m| json!({ "position": m.position, "first": m.first, "second": m.second }))
                .collect();
            json!({ "stage": stage, "moves": moves })
        })
        .collect();
    json!({
        "bits_i": render_bits(&s.bits_i),
        "bits_j": render_bits(&s.bits_j),
        "target": word(&s.target),
        "weight": s.weight,
        "degree": s.degree(),
        "light": s.is_light(),
        "path_log": log,
    })
}
