//! Structured command output, rendered as text or JSON from the same values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use mongeampere::hermitian::Signature;
use mongeampere::Cf;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellDoc {
    pub row: String,
    pub column: String,
    pub printed: Option<String>,
    pub computed: String,
    pub ok: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureDoc {
    pub p: usize,
    pub n: usize,
    pub z: usize,
}

impl From<Signature> for SignatureDoc {
    fn from(s: Signature) -> Self {
        SignatureDoc { p: s.p, n: s.n, z: s.z }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub cells: Vec<CellDoc>,
    pub signature: Option<SignatureDoc>,
    pub spectrum: Vec<ComplexDoc>,
    pub residual_max: Option<f64>,
    pub pass: bool,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            command: command.into(),
            inputs: BTreeMap::new(),
            cells: Vec::new(),
            signature: None,
            spectrum: Vec::new(),
            residual_max: None,
            pass: true,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    /// A value with nothing to compare against.
    pub fn value(&mut self, row: &str, column: &str, computed: impl ToString) {
        self.cells.push(CellDoc { row: row.into(), column: column.into(), printed: None, computed: computed.to_string(), ok: None });
    }

    /// A check; failing checks clear `pass`.
    pub fn check(&mut self, row: &str, column: &str, printed: Option<String>, computed: impl ToString, ok: bool) {
        self.pass &= ok;
        self.cells.push(CellDoc { row: row.into(), column: column.into(), printed, computed: computed.to_string(), ok: Some(ok) });
    }

    pub fn set_spectrum(&mut self, v: &[Cf]) {
        self.spectrum = v.iter().map(|z| ComplexDoc { re: z.re, im: z.im }).collect();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "inputs: {}", inputs.join(" "));
        let width = |f: fn(&CellDoc) -> usize| self.cells.iter().map(f).max().unwrap_or(0);
        let wr = width(|c| c.row.chars().count());
        let wc = width(|c| c.column.chars().count());
        let wp = width(|c| c.printed.as_ref().map_or(0, |p| p.chars().count()));
        for c in &self.cells {
            let mut line = format!("{:wr$}  {:wc$}", c.row, c.column, wr = wr, wc = wc);
            if wp > 0 {
                let _ = write!(line, "  {:wp$}", c.printed.as_deref().unwrap_or(""), wp = wp);
            }
            let _ = write!(line, "  {}", c.computed);
            if let Some(ok) = c.ok {
                line.push_str(if ok { "  ok" } else { "  MISMATCH" });
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        if let Some(s) = self.signature {
            let _ = writeln!(out, "signature: ({},{}) z={}", s.p, s.n, s.z);
        }
        if !self.spectrum.is_empty() {
            let parts: Vec<String> = self.spectrum.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
            let _ = writeln!(out, "spectrum: [{}]", parts.join(", "));
        }
        if let Some(r) = self.residual_max {
            let _ = writeln!(out, "residual_max: {r}");
        }
        let _ = writeln!(out, "pass: {}", self.pass);
        out
    }
}
