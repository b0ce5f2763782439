//! JSON forms of elements, matrices, words and points.
//!
//! Elements are written as strings in the ring's grammar; on input,
//! integers may also be given as JSON numbers.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use crate::sl2::{Mat2, Shape, Word};
use crate::varieties::PointTuple;

pub fn elem_to_json(ring: &Ring, x: &Elem) -> Value {
    Value::String(ring.format(x))
}

/// Reads a field element; ring membership is not checked.
pub fn elem_from_json(ring: &Ring, v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => Ok(ring.parse_elem(s)?),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Elem::from_i64(i)),
            None => Ok(ring.parse_elem(&n.to_string())?),
        },
        other => Err(Error::Format(format!("expected a number or string, got {other}"))),
    }
}

fn elems_to_json(ring: &Ring, xs: &[Elem]) -> Value {
    Value::Array(xs.iter().map(|x| elem_to_json(ring, x)).collect())
}

fn elems_from_json(ring: &Ring, v: &Value) -> Result<Vec<Elem>> {
    v.as_array()
        .ok_or_else(|| Error::Format("expected an array of elements".into()))?
        .iter()
        .map(|x| elem_from_json(ring, x))
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Format(format!("missing field {key:?}")))
}

pub fn mat_to_json(ring: &Ring, m: &Mat2) -> Value {
    json!({
        "a": elem_to_json(ring, &m.a),
        "c": elem_to_json(ring, &m.c),
        "b": elem_to_json(ring, &m.b),
        "d": elem_to_json(ring, &m.d),
    })
}

/// Reads `{"a":…,"c":…,"b":…,"d":…}` and checks that the entries lie in the ring.
pub fn mat_from_json(ring: &Ring, v: &Value) -> Result<Mat2> {
    let obj = v.as_object().ok_or_else(|| Error::Format("matrix must be an object".into()))?;
    let get = |k: &str| -> Result<Elem> {
        let x = elem_from_json(ring, field(obj, k)?)?;
        ring.check(&x)?;
        Ok(x)
    };
    Ok(Mat2::new(get("a")?, get("c")?, get("b")?, get("d")?))
}

pub fn word_to_json(ring: &Ring, w: &Word) -> Value {
    json!({ "shape": w.shape.name(), "entries": elems_to_json(ring, &w.entries) })
}

pub fn point_to_json(ring: &Ring, p: &PointTuple) -> Value {
    json!({
        "shape": p.shape().name(),
        "entries": elems_to_json(ring, p.entries()),
        "integral": p.is_integral(),
    })
}

fn shape_from_json(v: &Value) -> Result<Shape> {
    v.as_str().and_then(Shape::from_name).ok_or_else(|| Error::Format(format!("unknown shape {v}")))
}

/// Reads a point object, or a bare array of entries tagged with `default_shape`.
///
/// The integrality flag is always recomputed.
pub fn point_from_json(ring: &Ring, v: &Value, default_shape: Shape) -> Result<PointTuple> {
    match v {
        Value::Array(_) => Ok(PointTuple::new(ring, default_shape, elems_from_json(ring, v)?)),
        Value::Object(obj) => {
            let shape = match obj.get("shape") {
                Some(s) => shape_from_json(s)?,
                None => default_shape,
            };
            Ok(PointTuple::new(ring, shape, elems_from_json(ring, field(obj, "entries")?)?))
        }
        other => Err(Error::Format(format!("expected a point, got {other}"))),
    }
}
