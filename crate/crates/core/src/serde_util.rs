//! Serde adapters writing rationals as `"num/den"` strings.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::matrix::QMatrix;
use crate::exact::rational::{self, Rat};

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        rational::to_string(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rational::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rational::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| rational::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Row-major nested arrays of rational strings.
pub mod matrix {
    use super::*;

    pub fn to_rows(m: &QMatrix) -> Vec<Vec<String>> {
        m.to_rows().iter().map(|r| r.iter().map(rational::to_string).collect()).collect()
    }

    pub fn from_rows(rows: &[Vec<String>]) -> crate::error::Result<QMatrix> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(crate::error::Error::Parse("ragged matrix rows".into()));
        }
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| rational::parse(s)).collect::<crate::error::Result<Vec<_>>>())
            .collect::<crate::error::Result<Vec<_>>>()?;
        Ok(QMatrix::from_rows(parsed))
    }

    pub fn serialize<S: Serializer>(m: &QMatrix, s: S) -> Result<S::Ok, S::Error> {
        to_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

pub mod matrix_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[QMatrix], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(matrix::to_rows).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<QMatrix>, D::Error> {
        Vec::<Vec<Vec<String>>>::deserialize(d)?
            .iter()
            .map(|m| matrix::from_rows(m).map_err(serde::de::Error::custom))
            .collect()
    }
}
