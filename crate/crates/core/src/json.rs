//! JSON representation of big integers: a number when it fits in `i64`,
//! otherwise a decimal string.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => Self::Small(v),
            None => Self::Big(n.to_string()),
        }
    }
}

impl From<BigInt> for JsonInt {
    fn from(n: BigInt) -> Self {
        Self::from(&n)
    }
}

impl TryFrom<JsonInt> for BigInt {
    type Error = Error;

    fn try_from(j: JsonInt) -> Result<Self, Error> {
        match j {
            JsonInt::Small(v) => Ok(BigInt::from(v)),
            JsonInt::Big(s) => s.trim().parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        }
    }
}

pub fn to_json_ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(JsonInt::from).collect()
}
