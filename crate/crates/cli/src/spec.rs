//! Experiment specs and the small symbol expression language.

use conewh::cone::spec::ConeSpec;
use conewh::wh::KernelSpec;
use conewh::{Error, ExactCone};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::presets;

/// A cone given inline or by preset name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConeRef {
    Named(String),
    Inline(ConeSpec),
}

impl ConeRef {
    pub fn resolve(&self) -> Result<ExactCone, Error> {
        match self {
            ConeRef::Inline(spec) => spec.to_cone(),
            ConeRef::Named(name) => cone_preset(name)?.to_cone(),
        }
    }
}

pub fn cone_preset(name: &str) -> Result<ConeSpec, Error> {
    let text = presets::lookup(presets::CONES, name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown cone preset {name:?}")))?;
    ConeSpec::parse(text)
}

/// A symbol given as a kernel object, a preset name or an expression such as
/// `separable(gaussian(amplitude=-1), rational(zeros=[1], poles=[-3]))`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SymbolRef {
    Text(String),
    Inline(KernelSpec),
}

impl SymbolRef {
    pub fn resolve(&self) -> Result<KernelSpec, Error> {
        let spec = match self {
            SymbolRef::Inline(k) => k.clone(),
            SymbolRef::Text(t) => match presets::lookup(presets::SYMBOLS, t.trim()) {
                Some(text) => serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?,
                None => parse_symbol(t)?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexSpec {
    pub experiment: String,
    pub symbol: SymbolRef,
    pub h: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub sizes: Vec<usize>,
    #[serde(default = "half_line")]
    pub cone: String,
}

fn half_line() -> String {
    "half-line".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchySpec {
    pub experiment: String,
    pub symbol: SymbolRef,
    pub h: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ys: Option<Vec<f64>>,
    #[serde(default = "quarter_plane")]
    pub cone: String,
}

fn quarter_plane() -> String {
    "quarter-plane".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PkSpec {
    pub name: String,
    pub cone: ConeRef,
    /// Exact rational entries.
    pub direction: Vec<String>,
    pub lambdas: Vec<f64>,
    pub radius: f64,
    pub step: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rotation {
    pub plane: [usize; 2],
    pub degrees: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrivSpec {
    pub name: String,
    pub base: ConeRef,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nearby: Vec<ConeRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Rotation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi0: Option<Vec<f64>>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_pairs")]
    pub pairs: usize,
}

fn default_samples() -> usize {
    500
}

fn default_pairs() -> usize {
    2000
}

/// Parses a spec from its JSON text.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("symbol expression: {what} at offset {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, Error> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || b"_-".contains(&self.s[self.pos])) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<f64, Error> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || b"+-.eE".contains(&self.s[self.pos])) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok().and_then(|t| t.parse().ok()).ok_or_else(|| self.err("expected a number"))
    }

    fn value(&mut self) -> Result<Value, Error> {
        if self.eat(b'[') {
            let mut items = Vec::new();
            if !self.eat(b']') {
                loop {
                    items.push(json!(self.number()?));
                    if self.eat(b']') {
                        break;
                    }
                    if !self.eat(b',') {
                        return Err(self.err("expected ',' or ']'"));
                    }
                }
            }
            return Ok(Value::Array(items));
        }
        Ok(json!(self.number()?))
    }

    fn expr(&mut self) -> Result<Value, Error> {
        let name = self.ident()?;
        if let Some(text) = presets::lookup(presets::SYMBOLS, &name) {
            return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
        }
        let mut named = serde_json::Map::new();
        let mut positional = Vec::new();
        if self.eat(b'(') && !self.eat(b')') {
            loop {
                let save = self.pos;
                match self.ident() {
                    Ok(key) if self.eat(b'=') => {
                        named.insert(key, self.value()?);
                    }
                    _ => {
                        self.pos = save;
                        positional.push(self.expr()?);
                    }
                }
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.err("expected ',' or ')'"));
                }
            }
        }
        let get = |k: &str, default: Value| named.get(k).cloned().unwrap_or(default);
        let out = match name.as_str() {
            "zero" => json!({"kind": "zero", "dim": get("dim", json!(1))}),
            "gaussian" => json!({
                "kind": "gaussian",
                "dim": get("dim", json!(1)),
                "amplitude": get("amplitude", json!(1.0)),
                "width": get("width", json!(1.0)),
            }),
            "rational" => json!({"kind": "rational", "zeros": get("zeros", json!([])), "poles": get("poles", json!([]))}),
            "separable" if positional.len() == 2 => json!({"kind": "separable", "x": positional[0], "y": positional[1]}),
            _ => return Err(Error::Parse(format!("unknown symbol {name:?}"))),
        };
        Ok(out)
    }
}

pub fn parse_symbol(text: &str) -> Result<KernelSpec, Error> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.ws();
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        assert_eq!(
            parse_symbol("rational(zeros=[-1], poles=[1])").unwrap(),
            KernelSpec::Rational { zeros: vec![-1.0], poles: vec![1.0] }
        );
        assert_eq!(
            parse_symbol(" gaussian(amplitude = 0.5) ").unwrap(),
            KernelSpec::Gaussian { dim: 1, amplitude: 0.5, width: 1.0 }
        );
        let sep = parse_symbol("separable(gaussian(amplitude=-1), rational-w1)").unwrap();
        assert_eq!(
            sep,
            KernelSpec::Separable {
                x: Box::new(KernelSpec::Gaussian { dim: 1, amplitude: -1.0, width: 1.0 }),
                y: Box::new(KernelSpec::Rational { zeros: vec![1.0], poles: vec![-1.0] }),
            }
        );
        assert!(parse_symbol("gaussian(").is_err());
        assert!(parse_symbol("nonsense(1)").is_err());
        assert!(parse_symbol("zero(dim=2) x").is_err());
    }

    #[test]
    fn presets_resolve() {
        for (name, _) in presets::CONES {
            cone_preset(name).unwrap().to_cone().unwrap();
        }
        for (name, _) in presets::SYMBOLS {
            SymbolRef::Text(name.to_string()).resolve().unwrap();
        }
    }
}
