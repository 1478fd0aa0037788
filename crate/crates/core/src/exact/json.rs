//! serde adapters for rational vectors, written as fraction strings.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::RatRepr;
use super::Rat;

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<RatRepr>::deserialize(d)?
            .iter()
            .map(|r| r.to_rat().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod rat_vecs {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        Vec::<Vec<RatRepr>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| r.to_rat().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
        v.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        RatRepr::deserialize(d)?
            .to_rat()
            .map_err(serde::de::Error::custom)
    }
}
