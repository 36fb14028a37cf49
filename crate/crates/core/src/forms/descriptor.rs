use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::param::{FormParameter, LambdaSpec};
use super::pq::{PseudoQuadraticForm, SesquilinearForm};
use crate::error::{Error, Result};
use crate::matvec::Mat;
use crate::scalar::{DivisionRing, FieldAuto, FiniteField, Gf};

/// JSON form descriptor:
/// `{"scalar": "GF(4)", "sigma": "frobenius", "epsilon": 1, "lambda": "fixed", "gram": [[1]]}`.
///
/// `sigma` is `"id"`, `"frobenius"` or an exponent `e` for `x -> x^(p^e)`;
/// `epsilon` and entries are element codes, and `"-1"` is accepted;
/// `lambda` is `"zero"`, `"trace"`, `"fixed"`, `"full"` or a list of codes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormDescriptor {
    pub scalar: Value,
    #[serde(default)]
    pub sigma: Option<Value>,
    pub epsilon: Value,
    pub lambda: Value,
    pub gram: Vec<Vec<Value>>,
}

fn parse_field(v: &Value) -> Result<FiniteField> {
    let q = match v {
        Value::Number(n) => n.as_u64().ok_or_else(|| Error::Parse("bad field order".into()))?,
        Value::String(s) => {
            let t = s.trim();
            let inner = t
                .strip_prefix("GF(")
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(t);
            inner.parse().map_err(|_| Error::Parse(format!("bad scalar '{s}'")))?
        }
        _ => return Err(Error::Parse("scalar must be a string like GF(4) or an order".into())),
    };
    FiniteField::with_order(u32::try_from(q).map_err(|_| Error::Parse("field too large".into()))?)
}

fn parse_elem(field: &FiniteField, v: &Value) -> Result<Gf> {
    let s = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(Error::Parse(format!("bad element {v}"))),
    };
    if let Some(rest) = s.strip_prefix('-') {
        let x = field.parse_elem(rest)?;
        return Ok(field.neg(&x));
    }
    field.parse_elem(&s)
}

impl FormDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("form descriptor: {e}")))
    }

    pub fn build(&self) -> Result<PseudoQuadraticForm> {
        let field = parse_field(&self.scalar)?;
        let sigma = match &self.sigma {
            None => FieldAuto::identity(),
            Some(Value::String(s)) if s == "id" || s == "identity" => FieldAuto::identity(),
            Some(Value::String(s)) if s == "frobenius" => FieldAuto::frobenius(),
            Some(Value::Number(n)) => FieldAuto::new(
                n.as_u64().ok_or_else(|| Error::Parse("bad sigma exponent".into()))? as u32,
            ),
            Some(other) => return Err(Error::Parse(format!("bad sigma {other}"))),
        };
        let epsilon = parse_elem(&field, &self.epsilon)?;
        let lambda = match &self.lambda {
            Value::String(s) => match s.as_str() {
                "zero" => LambdaSpec::Zero,
                "trace" => LambdaSpec::Trace,
                "fixed" => LambdaSpec::FixedSet,
                "full" => LambdaSpec::Full,
                _ => return Err(Error::Parse(format!("unknown lambda tag '{s}'"))),
            },
            Value::Array(items) => LambdaSpec::Explicit(
                items.iter().map(|x| parse_elem(&field, x)).collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Parse("lambda must be a tag or a list".into())),
        };
        let rows = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| parse_elem(&field, x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let gram = if rows.is_empty() { Mat::zeros(&field, 0, 0) } else { Mat::from_rows(rows)? };
        let param = FormParameter::new(&field, sigma, epsilon, lambda)?;
        PseudoQuadraticForm::new(SesquilinearForm::new(&field, gram, sigma)?, param)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_symplectic() {
        let d = FormDescriptor::from_json(
            r#"{"scalar":"GF(2)","sigma":"id","epsilon":1,"lambda":"full",
                "gram":[[0,1,0,0],[0,0,0,0],[0,0,0,1],[0,0,0,0]]}"#,
        )
        .unwrap();
        let pq = d.build().unwrap();
        assert_eq!(pq.dim(), 4);
        assert!(pq.is_nondegenerate());
    }

    #[test]
    fn negative_epsilon_and_errors() {
        let d = FormDescriptor::from_json(
            r#"{"scalar":"GF(5)","epsilon":"-1","lambda":"full","gram":[[0,1],[0,0]]}"#,
        )
        .unwrap();
        assert_eq!(d.build().unwrap().param().epsilon(), Gf(4));
        assert!(FormDescriptor::from_json("{").is_err());
        let bad = FormDescriptor::from_json(
            r#"{"scalar":"GF(6)","epsilon":1,"lambda":"zero","gram":[[1]]}"#,
        )
        .unwrap();
        assert!(bad.build().is_err());
    }
}
