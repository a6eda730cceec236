//! JSON forms of constructible functions and of integrand pieces.
//!
//! ```json
//! {"cells":[{"simplex":["a","b"],"value":"1/2"}]}
//! {"cells":[{"left":["a"],"right":["x","y"],"value":"-1"}]}
//! {"pieces":[{"simplices":[["a","b"]],"constant":"1"},
//!            {"simplices":[["a"]],"values":{"a":"-1"}}]}
//! ```

use std::collections::BTreeMap;

use curvcalc_core::complex::{Simplex, SimplicialComplex};
use curvcalc_core::curvature::Piece;
use curvcalc_core::{ConstructibleFunction, PlFunction, ProductCell, ProductCellComplex};
use serde::{Deserialize, Serialize};

use crate::document::{parse_rational, render_rational, ComplexDocument};
use crate::error::{CliError, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellValue {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub simplex: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub left: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub right: Option<Vec<String>>,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionJson {
    pub cells: Vec<CellValue>,
}

fn value(s: &str) -> Result<curvcalc_core::Rational> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("bad rational {s:?}")))
}

pub fn parse_function(text: &str, doc: &ComplexDocument) -> Result<ConstructibleFunction<Simplex>> {
    let json: FunctionJson = serde_json::from_str(text)?;
    let mut coeffs = BTreeMap::new();
    for c in json.cells {
        let names = c.simplex.ok_or_else(|| CliError::Usage("cell needs a \"simplex\"".into()))?;
        *coeffs.entry(doc.simplex(&names)?).or_insert_with(num_traits::Zero::zero) += value(&c.value)?;
    }
    Ok(ConstructibleFunction::new(doc.complex(), coeffs)?)
}

pub fn render_function(s: &ConstructibleFunction<Simplex>, doc: &ComplexDocument) -> String {
    let cells = s
        .coefficients()
        .iter()
        .map(|(c, v)| CellValue { simplex: Some(doc.simplex_names(c)), left: None, right: None, value: render_rational(v) })
        .collect();
    serde_json::to_string(&FunctionJson { cells }).expect("serializable")
}

pub fn parse_product_function(
    text: &str,
    left: &ComplexDocument,
    right: &ComplexDocument,
    carrier: &ProductCellComplex,
) -> Result<ConstructibleFunction<ProductCell>> {
    let json: FunctionJson = serde_json::from_str(text)?;
    let mut coeffs = BTreeMap::new();
    for c in json.cells {
        let (Some(l), Some(r)) = (c.left, c.right) else {
            return Err(CliError::Usage("product cells need \"left\" and \"right\"".into()));
        };
        let cell = ProductCell::new(left.simplex(&l)?, right.simplex(&r)?);
        *coeffs.entry(cell).or_insert_with(num_traits::Zero::zero) += value(&c.value)?;
    }
    Ok(ConstructibleFunction::new(carrier, coeffs)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceJson {
    simplices: Vec<Vec<String>>,
    #[serde(default)]
    constant: Option<String>,
    #[serde(default)]
    values: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PiecesJson {
    pieces: Vec<PieceJson>,
}

pub fn parse_pieces(text: &str, doc: &ComplexDocument) -> Result<Vec<Piece>> {
    let json: PiecesJson = serde_json::from_str(text)?;
    let mut out = Vec::new();
    for p in json.pieces {
        let gens = p.simplices.iter().map(|names| doc.simplex(names)).collect::<Result<Vec<_>>>()?;
        let complex = SimplicialComplex::from_maximal(gens);
        let alpha = match (p.constant, p.values) {
            (Some(c), None) => PlFunction::constant(&complex, value(&c)?),
            (None, Some(vals)) => {
                let map = vals.iter().map(|(k, v)| Ok((doc.id(k)?, value(v)?))).collect::<Result<BTreeMap<_, _>>>()?;
                PlFunction::new(&complex, map)?
            }
            _ => return Err(CliError::Usage("each piece needs exactly one of \"constant\" or \"values\"".into())),
        };
        out.push(Piece::new(complex, alpha)?);
    }
    Ok(out)
}
