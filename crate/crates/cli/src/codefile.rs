//! JSON serialization of constructed codes.
//!
//! Rows are lowercase hex strings of the little-endian byte packing: byte
//! `b` holds coordinates `8b..8b+8`, coordinate `8b` in its least significant
//! bit, and each byte is written as two hex digits. Coordinates follow the
//! canonical order of the unpunctured points (Hamming weight, then value).
//! Wide integers are decimal strings.

use serde::{Deserialize, Serialize};

use prm::css::{CodeFamilyParams, CssCode};
use prm::gf2::{BitMatrix, BitVector};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub schema_version: u32,
    pub m: u32,
    pub r: u32,
    pub w: u32,
    pub nu: u32,
    pub n: String,
    pub k: String,
    pub x_stabilizers: Vec<String>,
    pub z_stabilizers: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

pub fn row_to_hex(row: &BitVector) -> String {
    row.to_bytes_le().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn row_from_hex(s: &str, len: usize) -> Result<BitVector, ParseError> {
    if s.len() != 2 * len.div_ceil(8) {
        return Err(ParseError(format!(
            "row has {} hex digits, expected {} for length {len}",
            s.len(),
            2 * len.div_ceil(8)
        )));
    }
    if !s.bytes().all(|c| c.is_ascii_digit() || (b'a'..=b'f').contains(&c)) {
        return Err(ParseError("rows must be lowercase hex".into()));
    }
    let bytes: Vec<u8> = (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).expect("validated hex"))
        .collect();
    BitVector::from_bytes_le(len, &bytes).map_err(|e| ParseError(e.to_string()))
}

fn matrix_to_hex(m: &BitMatrix) -> Vec<String> {
    m.rows().iter().map(row_to_hex).collect()
}

fn matrix_from_hex(rows: &[String], len: usize, name: &str) -> Result<BitMatrix, ParseError> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, s)| row_from_hex(s, len).map_err(|e| ParseError(format!("{name}[{i}]: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    BitMatrix::from_rows(rows, len).map_err(|e| ParseError(e.to_string()))
}

impl CodeFile {
    pub fn from_code(code: &CssCode) -> Self {
        let p = code.params;
        Self {
            schema_version: SCHEMA_VERSION,
            m: p.m,
            r: p.r,
            w: p.w,
            nu: p.nu,
            n: code.n().to_string(),
            k: code.k().to_string(),
            x_stabilizers: matrix_to_hex(&code.x_stabilizers),
            z_stabilizers: matrix_to_hex(&code.z_stabilizers),
            logical_x: matrix_to_hex(&code.logical_x),
            logical_z: matrix_to_hex(&code.logical_z),
        }
    }

    pub fn to_code(&self) -> Result<CssCode, ParseError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(ParseError(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let params = CodeFamilyParams::new(self.m as i64, self.r as i64, self.w as i64)
            .map_err(|e| ParseError(e.to_string()))?;
        if params.nu != self.nu {
            return Err(ParseError(format!("nu = {} but (m, r) give {}", self.nu, params.nu)));
        }
        if params.n().to_string() != self.n || params.k().to_string() != self.k {
            return Err(ParseError(format!(
                "n, k = {}, {} do not match (m, r, w)",
                self.n, self.k
            )));
        }
        let n: usize = self
            .n
            .parse()
            .map_err(|_| ParseError(format!("n = {} is not materializable", self.n)))?;
        let code = CssCode::from_parts(
            params,
            matrix_from_hex(&self.x_stabilizers, n, "x_stabilizers")?,
            matrix_from_hex(&self.z_stabilizers, n, "z_stabilizers")?,
            matrix_from_hex(&self.logical_x, n, "logical_x")?,
            matrix_from_hex(&self.logical_z, n, "logical_z")?,
        )
        .map_err(|e| ParseError(e.to_string()))?;
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code file serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ParseError> {
        serde_json::from_str(s).map_err(|e| ParseError(e.to_string()))
    }
}
