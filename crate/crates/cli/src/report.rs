use indexmap::IndexMap;
use rrcf_core::{NumError, Real};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ResidualWarning,
    Error,
}

/// One invocation's result. Every number is a decimal string with
/// `digits_believed` significant digits.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: IndexMap<String, String>,
    pub outputs: IndexMap<String, String>,
    pub residuals: IndexMap<String, String>,
    pub digits_requested: u32,
    pub digits_believed: u32,
    pub status: Status,
}

/// Numeric values collected before rendering, so the digit count can be
/// settled once every output is known.
pub struct Draft {
    command: &'static str,
    inputs: IndexMap<String, String>,
    outputs: Vec<(String, Entry)>,
    residuals: Vec<(String, Real)>,
    digits_requested: u32,
    digits_believed: u32,
    status: Status,
}

enum Entry {
    Num(Real),
    Text(String),
}

impl Draft {
    pub fn new(command: &'static str, digits_requested: u32) -> Self {
        Draft {
            command,
            inputs: IndexMap::new(),
            outputs: Vec::new(),
            residuals: Vec::new(),
            digits_requested,
            digits_believed: digits_requested,
            status: Status::Ok,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: &Real) -> &mut Self {
        self.outputs.push((key.into(), Entry::Num(value.clone())));
        self
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.outputs.push((key.into(), Entry::Text(value.into())));
        self
    }

    pub fn residual(&mut self, key: &str, value: &Real) -> &mut Self {
        self.residuals.push((key.into(), value.abs()));
        self
    }

    /// Caps the believed digits; never raises them.
    pub fn believe(&mut self, digits: u32) -> &mut Self {
        self.digits_believed = self.digits_believed.min(digits);
        self
    }

    pub fn warn(&mut self) -> &mut Self {
        if self.status == Status::Ok {
            self.status = Status::ResidualWarning;
        }
        self
    }

    pub fn fail(&mut self, err: &NumError) -> &mut Self {
        self.status = Status::Error;
        self.outputs.push(("error".into(), Entry::Text(err.to_string())));
        self
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn finish(self) -> Report {
        let sig = self.digits_believed.max(1) as usize;
        Report {
            command: self.command.into(),
            inputs: self.inputs,
            outputs: self
                .outputs
                .into_iter()
                .map(|(k, e)| {
                    let v = match e {
                        Entry::Num(r) => r.to_decimal(sig),
                        Entry::Text(s) => s,
                    };
                    (k, v)
                })
                .collect(),
            residuals: self.residuals.into_iter().map(|(k, r)| (k, r.to_decimal(sig))).collect(),
            digits_requested: self.digits_requested,
            digits_believed: self.digits_believed,
            status: self.status,
        }
    }
}

impl Report {
    pub fn to_plain(&self) -> String {
        let status = match self.status {
            Status::Ok => "ok",
            Status::ResidualWarning => "residual_warning",
            Status::Error => "error",
        };
        let mut rows: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("status".into(), status.into()),
            ("digits".into(), format!("{} requested, {} believed", self.digits_requested, self.digits_believed)),
        ];
        for (section, map) in [("input", &self.inputs), ("output", &self.outputs), ("residual", &self.residuals)] {
            rows.extend(map.iter().map(|(k, v)| (format!("{section}.{k}"), v.clone())));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rrcf_core::NumericContext;

    #[test]
    fn renders_with_believed_digits() {
        let ctx = NumericContext::with_digits(50);
        let mut d = Draft::new("demo", 12);
        d.input("x", "1/3").output("third", &ctx.ratio(1, 3)).residual("gap", &ctx.parse("-2.5e-40").unwrap());
        d.believe(8).believe(30);
        let rep = d.finish();
        assert_eq!(rep.digits_believed, 8);
        assert_eq!(rep.outputs["third"], "0.33333333");
        assert_eq!(rep.residuals["gap"], "2.5000000e-40");
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["status"], "ok");
        assert_eq!(json["digits_requested"], 12);
    }

    #[test]
    fn failure_carries_detail() {
        let mut d = Draft::new("demo", 10);
        d.warn().fail(&NumError::DegreeTooHigh(9));
        let rep = d.finish();
        assert_eq!(rep.status, Status::Error);
        assert!(rep.outputs["error"].contains('9'));
        assert!(rep.to_plain().contains("output.error"));
    }
}
