//! Lossless JSON form of a scheme: exact rationals travel as decimal
//! numerator/denominator strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{AccumulationFrame, Coord, IntegerScheme, LacunaryScheme, SchemeCase};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordDoc {
    Exact(RationalDoc),
    Approx { approx: f64 },
}

/// Serializable mirror of [`LacunaryScheme`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeDocument {
    pub s: usize,
    pub case: SchemeCase,
    pub symbol_id: String,
    pub epsilon: f64,
    pub n_sep: u32,
    pub frame: AccumulationFrame,
    pub centers: Vec<[CoordDoc; 2]>,
    pub radii: Vec<RationalDoc>,
    /// Present for schemes produced by integer rescaling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<String>,
}

fn rat_doc(r: &BigRational) -> RationalDoc {
    RationalDoc {
        num: r.numer().to_string(),
        den: r.denom().to_string(),
    }
}

fn parse_rat(d: &RationalDoc) -> Result<BigRational> {
    let bad = |what: &str| Error::InvalidParameter(format!("malformed rational {what}: {d:?}"));
    let n: BigInt = d.num.parse().map_err(|_| bad("numerator"))?;
    let q: BigInt = d.den.parse().map_err(|_| bad("denominator"))?;
    if q.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, q))
}

fn coord_doc(c: &Coord) -> CoordDoc {
    match c {
        Coord::Exact(r) => CoordDoc::Exact(rat_doc(r)),
        Coord::Approx(v) => CoordDoc::Approx { approx: *v },
    }
}

fn parse_coord(c: &CoordDoc) -> Result<Coord> {
    Ok(match c {
        CoordDoc::Exact(r) => Coord::Exact(parse_rat(r)?),
        CoordDoc::Approx { approx } => Coord::Approx(*approx),
    })
}

impl SchemeDocument {
    pub fn from_scheme(s: &LacunaryScheme) -> Self {
        SchemeDocument {
            s: s.s,
            case: s.case,
            symbol_id: s.symbol_id.clone(),
            epsilon: s.epsilon,
            n_sep: s.n_sep,
            frame: s.frame,
            centers: s.centers.iter().map(|p| [coord_doc(&p[0]), coord_doc(&p[1])]).collect(),
            radii: s.radii.iter().map(rat_doc).collect(),
            scale: None,
        }
    }

    pub fn from_integer_scheme(s: &IntegerScheme) -> Self {
        let mut doc = SchemeDocument::from_scheme(&s.as_scheme());
        doc.scale = Some(s.scale.to_string());
        doc
    }

    pub fn to_scheme(&self) -> Result<LacunaryScheme> {
        if self.centers.len() != self.s || self.radii.len() != self.s {
            return Err(Error::InvalidParameter(format!(
                "scheme document declares s = {} but has {} centers and {} radii",
                self.s,
                self.centers.len(),
                self.radii.len()
            )));
        }
        Ok(LacunaryScheme {
            s: self.s,
            centers: self
                .centers
                .iter()
                .map(|p| Ok([parse_coord(&p[0])?, parse_coord(&p[1])?]))
                .collect::<Result<_>>()?,
            radii: self.radii.iter().map(parse_rat).collect::<Result<_>>()?,
            epsilon: self.epsilon,
            n_sep: self.n_sep,
            case: self.case,
            symbol_id: self.symbol_id.clone(),
            frame: self.frame,
        })
    }
}

impl LacunaryScheme {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SchemeDocument::from_scheme(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<SchemeDocument>(text)?.to_scheme()
    }
}
