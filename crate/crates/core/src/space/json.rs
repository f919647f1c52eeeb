//! JSON form of space descriptors.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{ExtReal, Family, SpaceDescriptor};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtRealRepr {
    Num(f64),
    Str(String),
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_finite() {
            ExtRealRepr::Num(self.value()).serialize(serializer)
        } else {
            ExtRealRepr::Str(self.to_string()).serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match ExtRealRepr::deserialize(deserializer)? {
            ExtRealRepr::Num(v) => ExtReal::new(v).map_err(D::Error::custom),
            ExtRealRepr::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Descriptor(format!("missing field {key:?}")))
}

fn ext_real(v: &Value, key: &str) -> Result<ExtReal> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Descriptor(format!("field {key:?}: {e}")))
}

fn real(v: &Value, key: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::Descriptor(format!("field {key:?} must be a number")))
}

impl SpaceDescriptor {
    /// Parses a descriptor such as `{"family":"hoelder","p":1}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = match value {
            Value::String(name) => return Self::from_family_name(name, None),
            Value::Object(obj) => obj,
            _ => return Err(Error::Descriptor("space descriptor must be an object or a family name".into())),
        };
        let family = field(obj, "family")?
            .as_str()
            .ok_or_else(|| Error::Descriptor("field \"family\" must be a string".into()))?;
        let dimension = match obj.get("dimension") {
            None => None,
            Some(v) => Some(
                v.as_u64()
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| Error::Descriptor("\"dimension\" must be a positive integer".into()))?
                    as usize,
            ),
        };
        let space = match family {
            "hoelder" => {
                let p = ext_real(field(obj, "p")?, "p")?;
                SpaceDescriptor::hoelder_n(p, dimension.unwrap_or(2))?
            }
            "hexagon" => SpaceDescriptor::hexagon(real(field(obj, "r")?, "r")?)?,
            "polygon" => {
                let vertices: Vec<[f64; 2]> = serde_json::from_value(field(obj, "vertices")?.clone())
                    .map_err(|e| Error::Descriptor(format!("field \"vertices\": {e}")))?;
                SpaceDescriptor::polygon(vertices)?
            }
            "radial_table" => {
                let samples: Vec<(f64, f64)> = serde_json::from_value(field(obj, "samples")?.clone())
                    .map_err(|e| Error::Descriptor(format!("field \"samples\": {e}")))?;
                SpaceDescriptor::radial_table(samples)?
            }
            "product" => {
                let p = ext_real(field(obj, "p")?, "p")?;
                let left = Self::from_value(field(obj, "left")?)?;
                let right = Self::from_value(field(obj, "right")?)?;
                SpaceDescriptor::product(left, right, p)
            }
            other => return Self::from_family_name(other, dimension),
        };
        if let Some(d) = dimension {
            if d != space.dimension() {
                return Err(Error::Descriptor(format!(
                    "declared dimension {d} does not match the family's dimension {}",
                    space.dimension()
                )));
            }
        }
        Ok(space)
    }

    fn from_family_name(name: &str, dimension: Option<usize>) -> Result<Self> {
        let space = match name {
            "pathological_a" => SpaceDescriptor::pathological_a(),
            "pathological_b" => SpaceDescriptor::pathological_b(),
            "pathological_c" => SpaceDescriptor::pathological_c(),
            other => return Err(Error::Descriptor(format!("unknown family {other:?}"))),
        };
        match dimension {
            Some(d) if d != 2 => Err(Error::UnsupportedDimension { expected: 2, got: d }),
            _ => Ok(space),
        }
    }

    pub fn to_value(&self) -> Value {
        match self.family() {
            Family::Hoelder { p } => json!({"dimension": self.dimension(), "family": "hoelder", "p": p}),
            Family::Hexagon { r } => json!({"dimension": 2, "family": "hexagon", "r": r}),
            Family::PolygonSphere { vertices } => json!({"dimension": 2, "family": "polygon", "vertices": vertices}),
            Family::RadialTable { samples } => json!({"dimension": 2, "family": "radial_table", "samples": samples}),
            Family::Product { left, right, p } => json!({
                "dimension": self.dimension(),
                "family": "product",
                "p": p,
                "left": left.to_value(),
                "right": right.to_value(),
            }),
            Family::PathologicalA => json!({"dimension": 2, "family": "pathological_a"}),
            Family::PathologicalB => json!({"dimension": 2, "family": "pathological_b"}),
            Family::PathologicalC => json!({"dimension": 2, "family": "pathological_c"}),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

impl Serialize for SpaceDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpaceDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        SpaceDescriptor::from_value(&value).map_err(D::Error::custom)
    }
}
