//! The JSON scheme format read by `tansec hf`.
//!
//! ```json
//! { "ambient": "plane",
//!   "components": [ {"type": "fat", "m": 3, "support": [1, 2, 3]},
//!                   {"type": "32", "support": "rand", "direction": [0, 1, -1]} ] }
//! ```
//!
//! Coordinates are integers reduced mod p. The string `"rand"` in place of a
//! point asks for a random point drawn from the run seed.

use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use tansec_core::sampling::rng_for;
use tansec_core::{Ambient, BiPoint, PlanePoint, PrimeField, SchemeComponent, SchemeSpec, TangentPair};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    ambient: AmbientName,
    #[serde(default)]
    components: Vec<ComponentJson>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AmbientName {
    Plane,
    P1xp1,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coords<T> {
    Given(T),
    Keyword(String),
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum ComponentJson {
    #[serde(rename = "fat")]
    Fat { m: u32, support: Coords<[i64; 3]> },
    #[serde(rename = "simple")]
    Simple { support: Coords<[i64; 3]> },
    #[serde(rename = "32")]
    ThreeTwo { support: Coords<[i64; 3]>, direction: Coords<[i64; 3]> },
    #[serde(rename = "jet")]
    Jet { m: u32, support: Coords<[i64; 3]>, through: Coords<[i64; 3]> },
    #[serde(rename = "crossjet")]
    CrossJet { m1: u32, m2: u32, support: Coords<[i64; 3]>, dir1: Coords<[i64; 3]>, dir2: Coords<[i64; 3]> },
    #[serde(rename = "32bi")]
    ThreeTwoBi { support: Coords<[[i64; 2]; 2]>, cosupport: Coords<[[i64; 2]; 2]> },
}

struct Resolver<'a> {
    f: &'a PrimeField,
    rng: ChaCha8Rng,
}

impl Resolver<'_> {
    fn keyword(s: &str) -> Result<(), String> {
        if s == "rand" {
            Ok(())
        } else {
            Err(format!("unknown coordinate keyword {s:?}, expected \"rand\""))
        }
    }

    fn plane(&mut self, c: &Coords<[i64; 3]>) -> Result<PlanePoint, String> {
        match c {
            Coords::Given(v) => PlanePoint::from_ints(self.f, *v).map_err(|e| e.to_string()),
            Coords::Keyword(s) => Self::keyword(s).map(|_| PlanePoint::random(self.f, &mut self.rng)),
        }
    }

    fn bipoint(&mut self, c: &Coords<[[i64; 2]; 2]>) -> Result<BiPoint, String> {
        match c {
            Coords::Given([l, r]) => BiPoint::from_ints(self.f, *l, *r).map_err(|e| e.to_string()),
            Coords::Keyword(s) => Self::keyword(s).map(|_| BiPoint::random(self.f, &mut self.rng)),
        }
    }

    fn tangent(&mut self, c: &Coords<[[i64; 2]; 2]>) -> Result<TangentPair, String> {
        match c {
            Coords::Given([m1, m2]) => Ok(TangentPair::from_ints(self.f, *m1, *m2)),
            Coords::Keyword(s) => Self::keyword(s).map(|_| TangentPair::random(self.f, &mut self.rng)),
        }
    }

    fn component(&mut self, c: &ComponentJson) -> Result<SchemeComponent, String> {
        Ok(match c {
            ComponentJson::Fat { m, support } => SchemeComponent::Fat { m: *m, support: self.plane(support)? },
            ComponentJson::Simple { support } => SchemeComponent::Simple { support: self.plane(support)? },
            ComponentJson::ThreeTwo { support, direction } => {
                SchemeComponent::ThreeTwoP2 { support: self.plane(support)?, direction: self.plane(direction)? }
            }
            ComponentJson::Jet { m, support, through } => {
                SchemeComponent::Jet { m: *m, support: self.plane(support)?, through: self.plane(through)? }
            }
            ComponentJson::CrossJet { m1, m2, support, dir1, dir2 } => SchemeComponent::CrossJet {
                m1: *m1,
                m2: *m2,
                support: self.plane(support)?,
                dir1: self.plane(dir1)?,
                dir2: self.plane(dir2)?,
            },
            ComponentJson::ThreeTwoBi { support, cosupport } => {
                SchemeComponent::ThreeTwoP1P1 { support: self.bipoint(support)?, cosupport: self.tangent(cosupport)? }
            }
        })
    }
}

/// Parses a scheme, drawing `"rand"` points from `seed`.
pub fn parse_scheme(text: &str, f: &PrimeField, seed: u64) -> Result<SchemeSpec, String> {
    let file: SchemeFile = serde_json::from_str(text).map_err(|e| format!("malformed scheme JSON: {e}"))?;
    let ambient = match file.ambient {
        AmbientName::Plane => Ambient::Plane,
        AmbientName::P1xp1 => Ambient::Biprojective,
    };
    let mut r = Resolver { f, rng: rng_for(seed, &[0x5c4e]) };
    let mut x = SchemeSpec::empty(ambient);
    for (i, c) in file.components.iter().enumerate() {
        let comp = r.component(c).map_err(|e| format!("component {i}: {e}"))?;
        x.push(f, comp).map_err(|e| format!("component {i}: {e}"))?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_component_type() {
        let f = PrimeField::default();
        let plane = r#"{"ambient": "plane", "components": [
            {"type": "fat", "m": 3, "support": [1, 0, 0]},
            {"type": "simple", "support": [0, 1, 0]},
            {"type": "32", "support": [1, 1, 1], "direction": [0, 1, -1]},
            {"type": "jet", "m": 2, "support": [1, 2, 3], "through": "rand"},
            {"type": "crossjet", "m1": 2, "m2": 2, "support": [1, 5, 7], "dir1": [0, 0, 1], "dir2": [0, 1, 0]}
        ]}"#;
        let x = parse_scheme(plane, &f, 0).unwrap();
        assert_eq!(x.length(), 6 + 1 + 5 + 2 + 4);
        let bi = r#"{"ambient": "p1xp1", "components": [
            {"type": "32bi", "support": [[1, 0], [1, 0]], "cosupport": [[0, 1], [0, -1]]}
        ]}"#;
        assert_eq!(parse_scheme(bi, &f, 0).unwrap().ambient(), Ambient::Biprojective);
    }

    #[test]
    fn rejects_bad_input() {
        let f = PrimeField::default();
        assert!(parse_scheme("{", &f, 0).is_err());
        assert!(parse_scheme(r#"{"ambient": "p3"}"#, &f, 0).is_err());
        assert!(parse_scheme(r#"{"ambient": "plane", "components": [{"type": "32bi", "support": "rand", "cosupport": "rand"}]}"#, &f, 0).is_err());
        assert!(parse_scheme(r#"{"ambient": "plane", "components": [{"type": "simple", "support": "random"}]}"#, &f, 0).is_err());
    }

    #[test]
    fn random_points_follow_the_seed() {
        let f = PrimeField::default();
        let text = r#"{"ambient": "plane", "components": [{"type": "simple", "support": "rand"}]}"#;
        assert_eq!(parse_scheme(text, &f, 4).unwrap(), parse_scheme(text, &f, 4).unwrap());
        assert_ne!(parse_scheme(text, &f, 4).unwrap(), parse_scheme(text, &f, 5).unwrap());
    }
}
