//! The JSON input document and its translation into the core types.
//!
//! Letter tokens follow the compact encoding `a3` = α₃, `A3` = α₃⁻¹,
//! `b2` = β₂, `B2` = β₂⁻¹. Unknown fields are rejected so that typos in
//! documents fail loudly.

use obinv_core::page_model::{
    CurveWord, DehnTwist, KnotOnPage, Level, OpenBookSpec, PageSignature, Sign,
};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug)]
pub enum InputError {
    /// The text is not well-formed JSON.
    Syntax(String),
    /// Well-formed JSON that does not match the document schema; carries the
    /// offending field path.
    Schema { path: String, message: String },
    /// Schema-valid data that fails the mathematical validation.
    Invalid(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Syntax(msg) => write!(f, "syntax error: {msg}"),
            InputError::Schema { path, message } => {
                write!(f, "schema error at `{path}`: {message}")
            }
            InputError::Invalid(msg) => write!(f, "invalid document: {msg}"),
        }
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub page: PageDoc,
    pub monodromy: Vec<TwistDoc>,
    pub knot: KnotDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PageDoc {
    pub genus: u32,
    pub holes: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDoc {
    pub word: Vec<String>,
    /// +1 for a positive twist, -1 for a negative one.
    pub sign: i8,
    pub power: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotDoc {
    pub word: Vec<String>,
    #[serde(default)]
    pub level: LevelDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelDoc {
    #[default]
    High,
    Low,
}

impl From<LevelDoc> for Level {
    fn from(l: LevelDoc) -> Level {
        match l {
            LevelDoc::High => Level::High,
            LevelDoc::Low => Level::Low,
        }
    }
}

impl From<Level> for LevelDoc {
    fn from(l: Level) -> LevelDoc {
        match l {
            Level::High => LevelDoc::High,
            Level::Low => LevelDoc::Low,
        }
    }
}

/// Parses a document, separating JSON syntax errors from schema violations
/// (the latter annotated with the field path).
pub fn parse_input(text: &str) -> Result<InputDocument, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize::<_, InputDocument>(de) {
        Ok(doc) => Ok(doc),
        Err(err) => {
            let inner = err.inner();
            if inner.classify() == serde_json::error::Category::Data {
                Err(InputError::Schema {
                    path: err.path().to_string(),
                    message: inner.to_string(),
                })
            } else {
                Err(InputError::Syntax(inner.to_string()))
            }
        }
    }
}

fn parse_word(tokens: &[String], path: &str) -> Result<CurveWord, InputError> {
    CurveWord::parse_tokens(tokens).map_err(|e| InputError::Schema {
        path: path.to_string(),
        message: e.to_string(),
    })
}

impl InputDocument {
    /// Validates and converts into the core open book and knot.
    pub fn to_core(&self) -> Result<(OpenBookSpec, KnotOnPage), InputError> {
        let page = PageSignature::new(self.page.genus as usize, self.page.holes as usize).map_err(
            |e| InputError::Schema {
                path: "page".into(),
                message: e.to_string(),
            },
        )?;
        let mut monodromy = Vec::with_capacity(self.monodromy.len());
        for (i, twist) in self.monodromy.iter().enumerate() {
            let word = parse_word(&twist.word, &format!("monodromy[{i}].word"))?;
            let sign = match twist.sign {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                other => {
                    return Err(InputError::Schema {
                        path: format!("monodromy[{i}].sign"),
                        message: format!("twist signs must be 1 or -1, found {other}"),
                    })
                }
            };
            let twist =
                DehnTwist::new(word, sign, twist.power).map_err(|e| InputError::Schema {
                    path: format!("monodromy[{i}].power"),
                    message: e.to_string(),
                })?;
            monodromy.push(twist);
        }
        let ob = OpenBookSpec::new(page, monodromy)
            .map_err(|e| InputError::Invalid(format!("monodromy: {e}")))?;
        let word = parse_word(&self.knot.word, "knot.word")?;
        let knot = KnotOnPage::new(word, self.knot.level.into())
            .validated(page)
            .map_err(|e| InputError::Invalid(format!("knot: {e}")))?;
        Ok((ob, knot))
    }
}
