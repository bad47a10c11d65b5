use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FirstOrderSystem, HigherOrderSystem, SpecialSecondOrderSystem, TransferFunction};
use crate::densela::{Matrix, C64};
use crate::error::Result;
use crate::reduce::ReducedModel;

/// Any model that can be stored in a JSON model file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    FirstOrder(FirstOrderSystem),
    SecondOrder(SpecialSecondOrderSystem),
    HigherOrder(HigherOrderSystem),
    Reduced(ReducedModel),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub state: usize,
    pub inputs: usize,
    pub outputs: usize,
    /// `N0` for second-order models, order `l` for higher-order models.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inner: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
}

impl Model {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Model::FirstOrder(_) => "first_order",
            Model::SecondOrder(_) => "second_order",
            Model::HigherOrder(_) => "higher_order",
            Model::Reduced(_) => "reduced",
        }
    }

    pub fn dimensions(&self) -> Dimensions {
        let (state, inner, order) = match self {
            Model::FirstOrder(s) => (s.state_dim(), None, None),
            Model::SecondOrder(s) => (s.state_dim(), Some(s.inner_dim()), None),
            Model::HigherOrder(s) => (s.state_dim(), None, Some(s.order())),
            Model::Reduced(r) => (r.first_order.state_dim(), None, None),
        };
        Dimensions {
            state,
            inputs: self.num_inputs(),
            outputs: self.num_outputs(),
            inner,
            order,
        }
    }
}

impl TransferFunction for Model {
    fn num_inputs(&self) -> usize {
        match self {
            Model::FirstOrder(s) => s.num_inputs(),
            Model::SecondOrder(s) => s.num_inputs(),
            Model::HigherOrder(s) => s.num_inputs(),
            Model::Reduced(r) => r.num_inputs(),
        }
    }

    fn num_outputs(&self) -> usize {
        match self {
            Model::FirstOrder(s) => s.num_outputs(),
            Model::SecondOrder(s) => s.num_outputs(),
            Model::HigherOrder(s) => s.num_outputs(),
            Model::Reduced(r) => r.num_outputs(),
        }
    }

    fn eval_transfer(&self, s: C64) -> Result<Matrix> {
        match self {
            Model::FirstOrder(m) => m.eval_transfer(s),
            Model::SecondOrder(m) => m.eval_transfer(s),
            Model::HigherOrder(m) => m.eval_transfer(s),
            Model::Reduced(r) => r.eval_transfer(s),
        }
    }
}

/// Self-describing model artifact: tool/version, config echo, dimensions, model.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub tool: String,
    pub version: String,
    #[serde(default)]
    pub config: serde_json::Value,
    pub dimensions: Dimensions,
    pub model: Model,
}

impl ModelFile {
    pub fn new(model: Model, config: serde_json::Value) -> Self {
        ModelFile {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            dimensions: model.dimensions(),
            model,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Accepts either a full artifact or a bare kind-tagged model object.
    pub fn from_json(text: &str) -> Result<Model> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let model = match value.get("model") {
            Some(m) => serde_json::from_value(m.clone())?,
            None => serde_json::from_value(value)?,
        };
        Ok(model)
    }

    pub fn read(path: &Path) -> Result<Model> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        crate::io::write_atomic(path, self.to_json()?.as_bytes())
    }
}
