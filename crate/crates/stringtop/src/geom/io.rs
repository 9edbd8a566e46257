//! Loop records: the JSON exchange format for polygonal loops.
//!
//! A record is `{"space": "plane" | "torus", "vertices": [["p/q", "p/q"], ...]}`
//! with each coordinate an exact rational written `p/q` (or a plain integer).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::loops::{PolyLoop, Pt, Space};
use super::GeomError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoopRecord {
    pub space: String,
    pub vertices: Vec<[String; 2]>,
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator in {:?}", s))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator in {:?}", s))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {:?}", s));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl LoopRecord {
    pub fn from_loop(lp: &PolyLoop) -> LoopRecord {
        LoopRecord {
            space: match lp.space() {
                Space::Plane => "plane".to_string(),
                Space::Torus => "torus".to_string(),
            },
            vertices: lp
                .vertices()
                .iter()
                .map(|p| [format_rational(&p.x), format_rational(&p.y)])
                .collect(),
        }
    }

    /// Validates and builds the loop. Space names other than `plane`/`torus`
    /// and malformed rationals are contract errors; geometric validation
    /// failures pass through as-is.
    pub fn into_loop(&self) -> Result<PolyLoop, GeomError> {
        let space = match self.space.as_str() {
            "plane" => Space::Plane,
            "torus" => Space::Torus,
            other => {
                return Err(GeomError::contract(format!(
                    "unknown space {:?} (expected \"plane\" or \"torus\")",
                    other
                )))
            }
        };
        let mut pts = Vec::with_capacity(self.vertices.len());
        for [x, y] in &self.vertices {
            let px = parse_rational(x).map_err(GeomError::contract)?;
            let py = parse_rational(y).map_err(GeomError::contract)?;
            pts.push(Pt::new(px, py));
        }
        PolyLoop::new(space, pts)
    }
}
