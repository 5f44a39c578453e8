//! Human and machine renderings of command results.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

/// What a command produced: a human report, a structured document, and
/// whether the scientific verdict was positive.
pub struct Output {
    pub human: String,
    pub machine: Value,
    pub positive: bool,
}

impl Output {
    pub fn new<T: Serialize>(command: &str, data: &T, human: String, positive: bool) -> Self {
        let mut machine = serde_json::to_value(data).expect("plain data");
        if let Value::Object(map) = &mut machine {
            map.insert("command".into(), Value::String(command.into()));
            map.insert("verdict".into(), Value::Bool(positive));
        }
        Self {
            human,
            machine,
            positive,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Machine => {
                serde_json::to_string_pretty(&self.machine).expect("plain data") + "\n"
            }
        }
    }
}

/// `x` with 6 significant digits.
pub fn sig(x: f64) -> String {
    sig_digits(x, 6)
}

pub fn sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = digits - 1)
    }
}
