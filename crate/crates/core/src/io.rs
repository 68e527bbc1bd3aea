//! JSON presentation files.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cgl::{Bounds, PoissonPresentation};
use crate::error::{Error, Result};
use crate::grading::{GradingData, LieVector};
use crate::pbracket::BracketTable;
use crate::qpoly::{parse, parse_rational, Rational, VarTable};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalField {
    Int(i64),
    Text(String),
}

impl RationalField {
    fn value(&self) -> Result<Rational> {
        match self {
            RationalField::Int(n) => Ok(Rational::from_integer((*n).into())),
            RationalField::Text(s) => parse_rational(s).ok_or_else(|| Error::Input(format!("bad rational `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsField {
    pub nilpotency: Option<usize>,
    pub degree: Option<usize>,
    pub groebner_steps: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laurent: Option<Vec<bool>>,
    /// `"i,j"` with `i > j`, 1-based, to the bracket `{x_i, x_j}`.
    #[serde(default)]
    pub brackets: BTreeMap<String, String>,
    pub grading: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<RationalField>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsField>,
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_presentation(&self) -> Result<PoissonPresentation> {
        if self.field != "QQ" {
            return Err(Error::Input(format!("unsupported field `{}`; only QQ is available", self.field)));
        }
        let n = self.vars.len();
        let flags = self.laurent.clone().unwrap_or_else(|| vec![false; n]);
        let ctx = Arc::new(VarTable::with_flags(&self.vars, &flags)?);
        let mut entries = Vec::new();
        for (key, value) in &self.brackets {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Input(format!("bracket key `{key}` is not of the form \"i,j\"")))?;
            if j == 0 || i <= j || i > n {
                return Err(Error::Input(format!("bracket key `{key}` needs {n} >= i > j >= 1")));
            }
            entries.push(((i - 1, j - 1), parse(value, &ctx)?));
        }
        let table = BracketTable::from_entries(&ctx, entries)?;
        let grading = GradingData::from_matrix(&self.grading, n)?;
        let h = self
            .h
            .as_ref()
            .map(|hs| {
                hs.iter()
                    .map(|v| v.iter().map(RationalField::value).collect::<Result<Vec<_>>>().map(LieVector))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let mut bounds = Bounds::default();
        if let Some(b) = &self.bounds {
            bounds.nilpotency = b.nilpotency.unwrap_or(bounds.nilpotency);
            bounds.degree = b.degree.unwrap_or(bounds.degree);
            bounds.groebner_steps = b.groebner_steps.unwrap_or(bounds.groebner_steps);
        }
        PoissonPresentation::new(&ctx, table, grading, h, bounds)
    }
}

pub fn load_presentation(path: &Path) -> Result<PoissonPresentation> {
    PresentationFile::read(path)?.to_presentation()
}
