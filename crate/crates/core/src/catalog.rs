//! Named instances of every weight family, and the member lists used by the
//! standard sweeps.

use crate::space::{ExtReal, SpaceDescriptor};
use crate::Result;

fn named(name: &str, space: SpaceDescriptor) -> (String, SpaceDescriptor) {
    (name.to_string(), space)
}

/// Hölder exponents in the standard sweep.
pub const HOELDER_PARAMS: [f64; 7] = [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY];
/// Hexagon parameters in the standard sweep.
pub const HEXAGON_PARAMS: [f64; 7] = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0];
/// Exponents of the products of two lines in the standard sweep.
pub const PRODUCT_PARAMS: [f64; 5] = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];

pub fn regular_octagon() -> Result<SpaceDescriptor> {
    let v = (0..8)
        .map(|k| {
            let t = std::f64::consts::PI * (0.125 + 0.25 * k as f64);
            [t.cos(), t.sin()]
        })
        .collect();
    SpaceDescriptor::polygon(v)
}

/// Ellipse `x²/4 + y² = 1` sampled at 64 direction angles over a half turn.
pub fn ellipse_table() -> Result<SpaceDescriptor> {
    let samples = (0..64)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / 64.0;
            let r = 1.0 / ((t.cos() / 2.0).powi(2) + t.sin().powi(2)).sqrt();
            (t, r)
        })
        .collect();
    SpaceDescriptor::radial_table(samples)
}

/// Every bundled positive definite instance.
pub fn bundled() -> Result<Vec<(String, SpaceDescriptor)>> {
    let mut out = Vec::new();
    for p in HOELDER_PARAMS {
        out.push(named(&format!("hoelder p={}", ExtReal::from(p)), SpaceDescriptor::hoelder(p)));
    }
    out.push(named("hoelder p=1 n=3", SpaceDescriptor::hoelder_n(1.0, 3)?));
    out.push(named("hoelder p=2 n=3", SpaceDescriptor::hoelder_n(2.0, 3)?));
    out.push(named("line", SpaceDescriptor::line()));
    for r in HEXAGON_PARAMS {
        out.push(named(&format!("hexagon r={r}"), SpaceDescriptor::hexagon(r)?));
    }
    out.push(named("regular octagon", regular_octagon()?));
    out.push(named("ellipse table", ellipse_table()?));
    for p in PRODUCT_PARAMS {
        out.push(named(&format!("line x line p={}", ExtReal::from(p)), lines_product(p)));
    }
    out.push(named(
        "hoelder(1) x line p=2",
        SpaceDescriptor::product(SpaceDescriptor::hoelder(1.0), SpaceDescriptor::line(), 2.0),
    ));
    out.push(named("pathological_b", SpaceDescriptor::pathological_b()));
    out.push(named("pathological_c", SpaceDescriptor::pathological_c()));
    Ok(out)
}

pub fn lines_product(p: f64) -> SpaceDescriptor {
    SpaceDescriptor::product(SpaceDescriptor::line(), SpaceDescriptor::line(), p)
}

/// Members of a standard sweep: `hoelder`, `hexagon` or `product`.
pub fn sweep_members(family: &str, params: &[f64]) -> Result<Vec<(String, SpaceDescriptor)>> {
    params
        .iter()
        .map(|&p| {
            let name = format!("{family}({})", ExtReal::from(p));
            let space = match family {
                "hoelder" => SpaceDescriptor::hoelder(p),
                "hexagon" => SpaceDescriptor::hexagon(p)?,
                "product" => lines_product(p),
                other => {
                    return Err(crate::Error::InvalidParameter(format!(
                        "unknown sweep family {other:?}; expected hoelder, hexagon or product"
                    )))
                }
            };
            Ok((name, space))
        })
        .collect()
}

/// Default parameter list of a sweep family.
pub fn default_params(family: &str) -> &'static [f64] {
    match family {
        "hexagon" => &HEXAGON_PARAMS,
        "product" => &PRODUCT_PARAMS,
        _ => &HOELDER_PARAMS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_are_positive_definite() {
        let all = bundled().unwrap();
        assert!(all.len() > 20);
        assert!(all.iter().all(|(_, s)| s.is_positive_definite()));
    }

    #[test]
    fn ellipse_table_matches_closed_form() {
        let e = ellipse_table().unwrap();
        assert!((e.weight(&[2.0, 0.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((e.weight(&[0.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_family() {
        assert!(sweep_members("torus", &[1.0]).is_err());
    }
}
