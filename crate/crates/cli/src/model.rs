//! Model files: module/family declarations and equality assertions in the
//! text DSL, plus structure-constant blocks and algebra towers in JSON.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use refcalc_core::bialgebra::{FdAlgebra, FdBialgebra, FdCoalgebra, Tensor3};
use refcalc_core::linalg::Matrix;
use refcalc_core::profinite::{AlgebraTower, LinRecFunctional, LinRecStructure};
use refcalc_core::scalar::{FieldElem, FieldTag};
use refcalc_core::support::ModuleObject;

use crate::dsl::{ParseError, Parser};

#[derive(Debug)]
pub enum ModelError {
    Io(std::io::Error),
    Syntax(ParseError),
    Json(String),
    /// A declaration exists but its content is ill-typed.
    Decl { name: String, message: String },
    DuplicateName(String),
    UnknownName(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Io(e) => write!(f, "io error: {e}"),
            ModelError::Syntax(e) => write!(f, "{e}"),
            ModelError::Json(m) => write!(f, "json error: {m}"),
            ModelError::Decl { name, message } => {
                write!(f, "declaration `{name}`: {message}")
            }
            ModelError::DuplicateName(n) => write!(f, "duplicate declaration name `{n}`"),
            ModelError::UnknownName(n) => write!(f, "unknown declaration `{n}`"),
        }
    }
}

impl From<ParseError> for ModelError {
    fn from(e: ParseError) -> Self {
        ModelError::Syntax(e)
    }
}

impl From<std::io::Error> for ModelError {
    fn from(e: std::io::Error) -> Self {
        ModelError::Io(e)
    }
}

/// Everything a model file can declare.
#[derive(Debug, Default)]
pub struct Model {
    pub modules: Vec<(String, ModuleObject)>,
    pub equalities: Vec<(String, String)>,
    pub linrecs: Vec<(String, LinRecFunctional)>,
    pub bialgebras: Vec<(String, FdBialgebra)>,
    pub towers: Vec<(String, AlgebraTower)>,
}

impl Model {
    pub fn declaration_count(&self) -> usize {
        self.modules.len()
            + self.equalities.len()
            + self.linrecs.len()
            + self.bialgebras.len()
            + self.towers.len()
    }

    pub fn module(&self, name: &str) -> Result<&ModuleObject, ModelError> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| ModelError::UnknownName(name.to_owned()))
    }

    fn check_fresh(&self, name: &str) -> Result<(), ModelError> {
        let taken = self.modules.iter().any(|(n, _)| n == name)
            || self.linrecs.iter().any(|(n, _)| n == name)
            || self.bialgebras.iter().any(|(n, _)| n == name)
            || self.towers.iter().any(|(n, _)| n == name);
        if taken {
            Err(ModelError::DuplicateName(name.to_owned()))
        } else {
            Ok(())
        }
    }
}

/// Parses a model file, dispatching on extension: `.json` files hold one
/// structure-constant block or one tower, anything else is the text DSL.
pub fn parse_model_file(path: &Path) -> Result<Model, ModelError> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_json_model(&text)
    } else {
        parse_text_model(&text)
    }
}

/// Text model:
///
/// ```text
/// # comment
/// module P = { index: Atom A, family: FULL, ring: Q }
/// assert_equal P Q
/// linrec fib = linrec(Q, f = x^2 - x - 1, init = [0, 1], structure = additive)
/// ```
pub fn parse_text_model(text: &str) -> Result<Model, ModelError> {
    let mut model = Model::default();
    let mut offset = 0usize;
    for raw_line in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw_line.len();
        let line = raw_line.trim_end_matches('\n');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        parse_declaration(text, line_start, line, &mut model)?;
    }
    Ok(model)
}

fn parse_declaration(
    full_text: &str,
    line_start: usize,
    line: &str,
    model: &mut Model,
) -> Result<(), ModelError> {
    // Errors keep offsets relative to the whole file.
    let reanchor = |e: ParseError| -> ModelError {
        ModelError::Syntax(ParseError {
            offset: line_start + e.offset,
            line: full_text[..line_start].matches('\n').count() + 1,
            col: e.offset + 1,
            message: e.message,
        })
    };
    let mut p = Parser::new(line);
    if p.eat("module") {
        let name = p.ident().map_err(reanchor)?;
        model.check_fresh(&name)?;
        p.expect("=").map_err(reanchor)?;
        p.expect("{").map_err(reanchor)?;
        p.expect("index").map_err(reanchor)?;
        p.expect(":").map_err(reanchor)?;
        let index = p.index_term().map_err(reanchor)?;
        p.expect(",").map_err(reanchor)?;
        p.expect("family").map_err(reanchor)?;
        p.expect(":").map_err(reanchor)?;
        let family = p.family().map_err(reanchor)?;
        p.expect(",").map_err(reanchor)?;
        p.expect("ring").map_err(reanchor)?;
        p.expect(":").map_err(reanchor)?;
        let ring = p.ring_tag().map_err(reanchor)?;
        p.expect("}").map_err(reanchor)?;
        p.expect_end().map_err(reanchor)?;
        let module = ModuleObject::new(index, family, ring)
            .map_err(|e| ModelError::Decl { name: name.clone(), message: e.to_string() })?;
        model.modules.push((name, module));
        Ok(())
    } else if p.eat("assert_equal") {
        let a = p.ident().map_err(reanchor)?;
        let b = p.ident().map_err(reanchor)?;
        p.expect_end().map_err(reanchor)?;
        model.equalities.push((a, b));
        Ok(())
    } else if p.eat("linrec") {
        let name = p.ident().map_err(reanchor)?;
        model.check_fresh(&name)?;
        p.expect("=").map_err(reanchor)?;
        p.expect("linrec(").map_err(reanchor)?;
        let field = p.field_tag().map_err(reanchor)?;
        p.expect(",").map_err(reanchor)?;
        p.expect("f").map_err(reanchor)?;
        p.expect("=").map_err(reanchor)?;
        let modulus = p.poly(field).map_err(reanchor)?;
        p.expect(",").map_err(reanchor)?;
        p.expect("init").map_err(reanchor)?;
        p.expect("=").map_err(reanchor)?;
        p.expect("[").map_err(reanchor)?;
        let mut init = Vec::new();
        if !p.eat("]") {
            loop {
                let n = p.integer().map_err(reanchor)?;
                init.push(FieldElem::from_i64(n, field));
                if p.eat("]") {
                    break;
                }
                p.expect(",").map_err(reanchor)?;
            }
        }
        p.expect(",").map_err(reanchor)?;
        p.expect("structure").map_err(reanchor)?;
        p.expect("=").map_err(reanchor)?;
        let structure = if p.eat("additive") {
            LinRecStructure::Additive
        } else if p.eat("multiplicative") {
            LinRecStructure::Multiplicative
        } else {
            return Err(reanchor(ParseError {
                offset: 0,
                line: 1,
                col: 1,
                message: "expected additive or multiplicative".into(),
            }));
        };
        p.expect(")").map_err(reanchor)?;
        p.expect_end().map_err(reanchor)?;
        let w = LinRecFunctional::new(modulus, init, structure)
            .map_err(|e| ModelError::Decl { name: name.clone(), message: e.to_string() })?;
        model.linrecs.push((name, w));
        Ok(())
    } else {
        Err(reanchor(ParseError {
            offset: 0,
            line: 1,
            col: 1,
            message: "expected `module`, `assert_equal` or `linrec`".into(),
        }))
    }
}

/// Structure-constant block:
/// `{"field": "Q"|"Fp:<p>", "dim": n, "labels": [...], "mult": [[[...]]],
/// "unit": [...], "comult": [[[...]]], "counit": [...]}` with exact
/// rationals as `"a/b"` strings. `mult`/`unit` alone give an algebra,
/// `comult`/`counit` alone a coalgebra, all four a bialgebra.
#[derive(Debug, Serialize, Deserialize)]
pub struct StructureJson {
    pub field: String,
    pub dim: usize,
    pub labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<Vec<Vec<Value>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<Vec<Vec<Value>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<Value>>,
}

/// Tower file: ordered structure-constant blocks plus transition matrices.
#[derive(Debug, Serialize, Deserialize)]
pub struct TowerJson {
    pub levels: Vec<StructureJson>,
    pub transitions: Vec<Vec<Vec<Value>>>,
}

fn parse_field_tag_str(s: &str) -> Result<FieldTag, ModelError> {
    let mut p = Parser::new(s);
    let tag = p.field_tag().map_err(ModelError::Syntax)?;
    p.expect_end().map_err(ModelError::Syntax)?;
    Ok(tag)
}

fn scalar_from_value(v: &Value, field: FieldTag) -> Result<FieldElem, ModelError> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| ModelError::Json(format!("non-integer number {n}")))?;
            Ok(FieldElem::from_i64(i, field))
        }
        Value::String(s) => FieldElem::parse(s, field)
            .ok_or_else(|| ModelError::Json(format!("bad scalar literal {s:?}"))),
        other => Err(ModelError::Json(format!("expected a scalar, got {other}"))),
    }
}

fn tensor_from_values(
    name: &str,
    vals: &[Vec<Vec<Value>>],
    dim: usize,
    field: FieldTag,
) -> Result<Tensor3, ModelError> {
    if vals.len() != dim || vals.iter().any(|p| p.len() != dim || p.iter().any(|r| r.len() != dim))
    {
        return Err(ModelError::Json(format!(
            "{name} tensor must be {dim}x{dim}x{dim}"
        )));
    }
    vals.iter()
        .map(|plane| {
            plane
                .iter()
                .map(|row| row.iter().map(|v| scalar_from_value(v, field)).collect())
                .collect()
        })
        .collect()
}

fn vector_from_values(
    name: &str,
    vals: &[Value],
    dim: usize,
    field: FieldTag,
) -> Result<Vec<FieldElem>, ModelError> {
    if vals.len() != dim {
        return Err(ModelError::Json(format!("{name} must have length {dim}")));
    }
    vals.iter().map(|v| scalar_from_value(v, field)).collect()
}

pub fn algebra_from_json(block: &StructureJson) -> Result<FdAlgebra, ModelError> {
    let field = parse_field_tag_str(&block.field)?;
    if block.labels.len() != block.dim {
        return Err(ModelError::Json(format!(
            "labels length {} differs from dim {}",
            block.labels.len(),
            block.dim
        )));
    }
    let mult = block
        .mult
        .as_ref()
        .ok_or_else(|| ModelError::Json("missing mult tensor".into()))?;
    let unit = block
        .unit
        .as_ref()
        .ok_or_else(|| ModelError::Json("missing unit vector".into()))?;
    Ok(FdAlgebra {
        field,
        labels: block.labels.clone(),
        mult: tensor_from_values("mult", mult, block.dim, field)?,
        unit: vector_from_values("unit", unit, block.dim, field)?,
    })
}

pub fn coalgebra_from_json(block: &StructureJson) -> Result<FdCoalgebra, ModelError> {
    let field = parse_field_tag_str(&block.field)?;
    let comult = block
        .comult
        .as_ref()
        .ok_or_else(|| ModelError::Json("missing comult tensor".into()))?;
    let counit = block
        .counit
        .as_ref()
        .ok_or_else(|| ModelError::Json("missing counit vector".into()))?;
    Ok(FdCoalgebra {
        field,
        labels: block.labels.clone(),
        comult: tensor_from_values("comult", comult, block.dim, field)?,
        counit: vector_from_values("counit", counit, block.dim, field)?,
    })
}

pub fn bialgebra_from_json(block: &StructureJson) -> Result<FdBialgebra, ModelError> {
    Ok(FdBialgebra {
        algebra: algebra_from_json(block)?,
        coalgebra: coalgebra_from_json(block)?,
    })
}

fn render_scalar(x: &FieldElem) -> Value {
    match x {
        FieldElem::Fp { v, .. } => Value::from(*v),
        FieldElem::Q(_) => Value::from(x.render()),
    }
}

pub fn bialgebra_to_json(b: &FdBialgebra) -> StructureJson {
    let render_tensor = |t: &Tensor3| -> Vec<Vec<Vec<Value>>> {
        t.iter()
            .map(|p| p.iter().map(|r| r.iter().map(render_scalar).collect()).collect())
            .collect()
    };
    StructureJson {
        field: b.field().to_string(),
        dim: b.dim(),
        labels: b.algebra.labels.clone(),
        mult: Some(render_tensor(&b.algebra.mult)),
        unit: Some(b.algebra.unit.iter().map(render_scalar).collect()),
        comult: Some(render_tensor(&b.coalgebra.comult)),
        counit: Some(b.coalgebra.counit.iter().map(render_scalar).collect()),
    }
}

fn tower_from_json(tower: &TowerJson) -> Result<AlgebraTower, ModelError> {
    let levels: Vec<FdAlgebra> =
        tower.levels.iter().map(algebra_from_json).collect::<Result<_, _>>()?;
    let mut transitions = Vec::new();
    for (i, rows) in tower.transitions.iter().enumerate() {
        let target_dim = levels
            .get(i)
            .ok_or_else(|| ModelError::Json("more transitions than levels".into()))?
            .dim();
        let source_dim = levels
            .get(i + 1)
            .ok_or_else(|| ModelError::Json("more transitions than levels".into()))?
            .dim();
        let field = levels[i].field;
        if rows.len() != target_dim || rows.iter().any(|r| r.len() != source_dim) {
            return Err(ModelError::Json(format!(
                "transition {i} must be {target_dim}x{source_dim}"
            )));
        }
        let entries: Vec<FieldElem> = rows
            .iter()
            .flat_map(|r| r.iter().map(|v| scalar_from_value(v, field)))
            .collect::<Result<_, _>>()?;
        transitions.push(
            Matrix::new(field, target_dim, source_dim, entries)
                .map_err(|e| ModelError::Json(e.to_string()))?,
        );
    }
    AlgebraTower::new(levels, transitions)
        .map_err(|e| ModelError::Decl { name: "tower".into(), message: e.to_string() })
}

pub fn parse_json_model(text: &str) -> Result<Model, ModelError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    let mut model = Model::default();
    if value.get("levels").is_some() {
        let tower: TowerJson =
            serde_json::from_value(value).map_err(|e| ModelError::Json(e.to_string()))?;
        model.towers.push(("tower".into(), tower_from_json(&tower)?));
    } else {
        let block: StructureJson =
            serde_json::from_value(value).map_err(|e| ModelError::Json(e.to_string()))?;
        model.bialgebras.push(("bialgebra".into(), bialgebra_from_json(&block)?));
    }
    Ok(model)
}
