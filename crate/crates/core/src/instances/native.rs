//! Line-oriented native format:
//!
//! ```text
//! FACLOC v1
//! dims <n_f> <n_c>
//! metric <0|1>
//! f <n_f values>
//! c <n_c values>        (one line per facility)
//! d <n_c values>        (optional)
//! p <n_c values>        (optional, `inf` allowed)
//! end
//! ```
//!
//! Numbers use the shortest decimal form that reads back to the same double.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::Instance;

pub const NATIVE_HEADER: &str = "FACLOC v1";

fn push_line(out: &mut String, key: &str, values: &[f64]) {
    out.push_str(key);
    for v in values {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

pub fn to_native(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{NATIVE_HEADER}");
    let _ = writeln!(out, "dims {} {}", inst.n_facilities(), inst.n_cities());
    let _ = writeln!(out, "metric {}", u8::from(inst.metric_flag()));
    push_line(&mut out, "f", inst.opening_costs());
    for i in 0..inst.n_facilities() {
        push_line(&mut out, "c", inst.cost_row(i));
    }
    if let Some(d) = inst.demands() {
        push_line(&mut out, "d", d);
    }
    if let Some(p) = inst.penalties() {
        push_line(&mut out, "p", p);
    }
    out.push_str("end\n");
    out
}

struct Lines<'a> {
    iter: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn skip_blank(&mut self) {
        while self.iter.next_if(|(_, l)| l.trim().is_empty()).is_some() {}
    }

    fn peek_key(&mut self) -> Option<&'a str> {
        self.skip_blank();
        self.iter.peek().and_then(|(_, l)| l.split_whitespace().next())
    }

    /// Next nonblank line split into its keyword and remaining fields.
    fn expect(&mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        self.skip_blank();
        let Some((n, line)) = self.iter.next() else {
            return Err(Error::parse("line", 0, format!("unexpected end of input, expected {key:?}")));
        };
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some(k) if k == key => Ok((n + 1, fields.collect())),
            other => Err(Error::parse(
                "line",
                n + 1,
                format!("expected {key:?}, found {:?}", other.unwrap_or("")),
            )),
        }
    }

    fn values(&mut self, key: &str, len: usize) -> Result<Vec<f64>> {
        let (line, fields) = self.expect(key)?;
        if fields.len() != len {
            return Err(Error::parse(
                "line",
                line,
                format!("{key} has {} values, expected {len}", fields.len()),
            ));
        }
        fields
            .iter()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::parse("line", line, format!("invalid number {t:?}")))
            })
            .collect()
    }
}

pub fn from_native(text: &str) -> Result<Instance> {
    let mut lines = Lines {
        iter: text.lines().enumerate().peekable(),
    };
    lines.skip_blank();
    match lines.iter.next() {
        Some((_, l)) if l.trim() == NATIVE_HEADER => {}
        Some((n, l)) => {
            return Err(Error::parse("line", n + 1, format!("expected {NATIVE_HEADER:?}, found {:?}", l.trim())))
        }
        None => return Err(Error::parse("line", 0, "empty input")),
    }
    let (line, dims) = lines.expect("dims")?;
    let parse_dim = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| Error::parse("line", line, format!("invalid dimension {t:?}")))
    };
    let [nf, nc] = dims.as_slice() else {
        return Err(Error::parse("line", line, "dims needs two values"));
    };
    let (nf, nc) = (parse_dim(nf)?, parse_dim(nc)?);
    let (line, metric) = lines.expect("metric")?;
    let metric = match metric.as_slice() {
        ["0"] => false,
        ["1"] => true,
        _ => return Err(Error::parse("line", line, "metric must be 0 or 1")),
    };
    let opening = lines.values("f", nf)?;
    let costs = (0..nf).map(|_| lines.values("c", nc)).collect::<Result<Vec<_>>>()?;
    let mut inst = Instance::new(opening, costs)?.with_metric_flag(metric);
    if lines.peek_key() == Some("d") {
        inst = inst.with_demands(lines.values("d", nc)?)?;
    }
    if lines.peek_key() == Some("p") {
        inst = inst.with_penalties(lines.values("p", nc)?)?;
    }
    lines.expect("end")?;
    lines.skip_blank();
    if let Some((n, l)) = lines.iter.next() {
        return Err(Error::parse("line", n + 1, format!("trailing input {:?}", l.trim())));
    }
    Ok(inst)
}
