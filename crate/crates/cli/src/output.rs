use std::io::{self, Write};

use lds4_core::{Ball, CBall};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::args::Format;

pub const DIGITS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    /// Pure integer arithmetic.
    Exact,
    /// Every floating quantity is an enclosing ball and every decision was
    /// settled by it.
    Certified,
    /// A certified check came out negative.
    Refuted,
    Undecided,
    NotApplicable,
}

impl Certification {
    fn as_str(&self) -> &'static str {
        match self {
            Certification::Exact => "exact",
            Certification::Certified => "certified",
            Certification::Refuted => "refuted",
            Certification::Undecided => "undecided",
            Certification::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// One result of one command, renderable in any output format.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub precision: Option<u32>,
    pub certification: Certification,
    pub errata: Vec<&'static str>,
    pub table: Table,
    pub plain: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, parameters: Value, result: Value) -> Self {
        Report {
            command: command.to_string(),
            parameters,
            result,
            precision: None,
            certification: Certification::Exact,
            errata: Vec::new(),
            table: Table::default(),
            plain: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn record(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "precision": self.precision,
            "certification": self.certification.as_str(),
            "errata": self.errata,
        })
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.record()),
            Format::Csv => write_csv(&self.table, out),
            Format::Plain => {
                for line in &self.plain {
                    writeln!(out, "{line}")?;
                }
                if !self.errata.is_empty() {
                    writeln!(out, "errata: {}", self.errata.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

fn write_csv(table: &Table, out: &mut impl Write) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Precision,
    Unavailable,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(&self) -> i32 {
        match self {
            ErrorKind::Validation => 2,
            ErrorKind::Precision => 3,
            ErrorKind::Unavailable => 4,
            ErrorKind::Internal => 1,
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            ErrorKind::Validation => "validation",
            ErrorKind::Precision => "precision_exhausted",
            ErrorKind::Unavailable => "unavailable",
            ErrorKind::Internal => "internal",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl ToString) -> Self {
        CliError {
            kind: ErrorKind::Validation,
            message: message.to_string(),
        }
    }

    pub fn precision(message: impl ToString) -> Self {
        CliError {
            kind: ErrorKind::Precision,
            message: message.to_string(),
        }
    }

    pub fn internal(message: impl ToString) -> Self {
        CliError {
            kind: ErrorKind::Internal,
            message: message.to_string(),
        }
    }

    pub fn emit(&self, command: &str, parameters: &Value, format: Format) -> io::Result<()> {
        match format {
            Format::Json => {
                let record = json!({
                    "command": command,
                    "parameters": parameters,
                    "error": {"kind": self.kind.as_str(), "message": self.message},
                });
                println!("{record}");
                Ok(())
            }
            Format::Csv => {
                let mut t = Table::new(&["error", "message"]);
                t.push(vec![self.kind.as_str().into(), self.message.clone()]);
                write_csv(&t, &mut io::stdout().lock())
            }
            Format::Plain => {
                eprintln!("error: {}", self.message);
                Ok(())
            }
        }
    }
}

pub fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

pub fn joined(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn ball(b: &Ball) -> Value {
    json!({"mid": b.midpoint().to_decimal(DIGITS), "radius_log2": b.radius_log2()})
}

pub fn cball(z: &CBall) -> Value {
    let rad = z.radius();
    let radius_log2 = (!rad.is_zero()).then(|| rad.magnitude_exp());
    json!({
        "re": z.re.midpoint().to_decimal(DIGITS),
        "im": z.im.midpoint().to_decimal(DIGITS),
        "radius_log2": radius_log2,
    })
}
