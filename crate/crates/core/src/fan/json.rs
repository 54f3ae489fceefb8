use serde::{Deserialize, Serialize};

use super::{to_i64_vec, Fan, TorusInvariantDivisor};
use crate::linalg::Int;
use crate::{Error, Result};

/// Interchange format: integers only, cones as 0-based ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub coefficients: Vec<i64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl Fan {
    pub fn from_json(text: &str) -> std::result::Result<Fan, ParseError> {
        let raw: FanJson = serde_json::from_str(text)?;
        Ok(Fan::from_i64(raw.dim, &raw.rays, &raw.max_cones)?)
    }

    pub fn to_json(&self) -> Result<FanJson> {
        Ok(FanJson {
            dim: self.dim(),
            rays: self
                .rays()
                .iter()
                .map(|r| to_i64_vec(r))
                .collect::<Result<_>>()?,
            max_cones: self.max_cones().to_vec(),
        })
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json()?).expect("plain data serializes"))
    }
}

impl TorusInvariantDivisor {
    pub fn from_json(text: &str) -> std::result::Result<Self, ParseError> {
        let raw: DivisorJson = serde_json::from_str(text)?;
        Ok(TorusInvariantDivisor::new(
            raw.coefficients.into_iter().map(Int::from).collect(),
        ))
    }

    pub fn to_json(&self) -> Result<DivisorJson> {
        Ok(DivisorJson {
            coefficients: to_i64_vec(&self.coefficients)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::blowup_pn_along_linear;

    #[test]
    fn round_trip() {
        let f = blowup_pn_along_linear(4, 1).unwrap();
        let text = f.to_json_string().unwrap();
        assert_eq!(Fan::from_json(&text).unwrap(), f);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match Fan::from_json("{\"dim\": 2,\n \"rays\": [[1, 0], [0, 1]\n") {
            Err(ParseError::Syntax { line, .. }) => assert!(line >= 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Fan::from_json(r#"{"dim": 1, "rays": [[1.0]], "max_cones": [[0]]}"#),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            Fan::from_json(r#"{"dim": 2, "rays": [[1,0],[0,1],[1,1]], "max_cones": [[0,1,2]]}"#),
            Err(ParseError::Invalid(Error::NonSimplicial(_)))
        ));
    }

    #[test]
    fn divisors() {
        let d = TorusInvariantDivisor::from_json(r#"{"coefficients": [1, -2, 0]}"#).unwrap();
        assert_eq!(d, TorusInvariantDivisor::from_i64(&[1, -2, 0]));
        assert_eq!(d.to_json().unwrap().coefficients, vec![1, -2, 0]);
    }
}
