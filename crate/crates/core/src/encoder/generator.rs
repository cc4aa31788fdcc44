//! Certified generator matrices and their JSON document.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::codeset::{is_valid_generator, Verdict};
use crate::error::{Error, ParseError, Result};
use crate::gfield::field_make;
use crate::linalg::FMatrix;
use crate::sigraph::{inline_list, ProblemSpec};

/// A generator that has passed the validity test for `spec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    spec: ProblemSpec,
    g: FMatrix,
}

impl GeneratorMatrix {
    pub fn certify(spec: &ProblemSpec, g: FMatrix, budget: &Budget) -> Result<Self> {
        match is_valid_generator(spec, &g, budget)? {
            Verdict::Valid => Ok(GeneratorMatrix { spec: spec.clone(), g }),
            Verdict::Invalid(iv) => Err(Error::InvalidGenerator {
                receiver: iv.witness_receiver,
                z: iv.z.to_string(),
            }),
        }
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &FMatrix {
        &self.g
    }

    pub fn into_matrix(self) -> FMatrix {
        self.g
    }

    /// Code length `N`.
    pub fn length(&self) -> usize {
        self.g.cols()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub q: u64,
    pub n: usize,
    #[serde(rename = "N")]
    pub len: usize,
    pub rows: Vec<Vec<u64>>,
}

impl GeneratorDoc {
    pub fn from_matrix(g: &FMatrix) -> Self {
        GeneratorDoc {
            q: g.field().q() as u64,
            n: g.rows(),
            len: g.cols(),
            rows: g
                .row_reps()
                .into_iter()
                .map(|r| r.into_iter().map(u64::from).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> std::result::Result<FMatrix, ParseError> {
        let field = field_make(self.q).map_err(|e| ParseError::field("q", e.to_string()))?;
        if self.rows.len() != self.n {
            return Err(ParseError::field(
                "rows",
                format!("has {} rows, expected n = {}", self.rows.len(), self.n),
            ));
        }
        let mut reps = Vec::with_capacity(self.n);
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.len {
                return Err(ParseError::field(
                    format!("rows[{}]", r + 1),
                    format!("has {} entries, expected N = {}", row.len(), self.len),
                ));
            }
            let mut out = Vec::with_capacity(row.len());
            for (c, &x) in row.iter().enumerate() {
                if x >= self.q {
                    return Err(ParseError::field(
                        format!("rows[{}][{}]", r + 1, c + 1),
                        format!("{x} is not in F_{}", self.q),
                    ));
                }
                out.push(x as u32);
            }
            reps.push(out);
        }
        Ok(FMatrix::from_rows(&field, &reps, self.len).expect("entries checked above"))
    }
}

pub fn parse_generator(text: &str) -> Result<FMatrix> {
    let doc: GeneratorDoc = serde_json::from_str(text).map_err(ParseError::from)?;
    Ok(doc.to_matrix()?)
}

/// Canonical serialization: fixed key order, one row per line.
pub fn serialize_generator(g: &FMatrix) -> String {
    let doc = GeneratorDoc::from_matrix(g);
    let rows: Vec<String> = doc.rows.iter().map(|r| format!("    {}", inline_list(r))).collect();
    let body = if rows.is_empty() {
        "[]".to_string()
    } else {
        format!("[\n{}\n  ]", rows.join(",\n"))
    };
    format!(
        "{{\n  \"q\": {},\n  \"n\": {},\n  \"N\": {},\n  \"rows\": {}\n}}\n",
        doc.q, doc.n, doc.len, body
    )
}
