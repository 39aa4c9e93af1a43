//! CPLEX-style LP text: `Maximize`/`Minimize`, `Subject To`, `Bounds`, `End`.
//!
//! Every variable is listed in the objective (with coefficient 0 if needed), so
//! reading the text back recovers the variable order.

use std::fmt::Write as _;

use super::model::{LpModel, Objective, RowSense};
use crate::error::{Error, Result};

const TERMS_PER_LINE: usize = 8;

fn push_expr(out: &mut String, label: &str, terms: &[(usize, f64)], names: &[String]) {
    let _ = write!(out, " {label}:");
    if terms.is_empty() {
        out.push_str(" 0");
        return;
    }
    for (n, &(k, a)) in terms.iter().enumerate() {
        if n > 0 && n % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if a < 0.0 || (a == 0.0 && a.is_sign_negative()) { '-' } else { '+' };
        let mag = a.abs();
        if n == 0 && sign == '+' {
            out.push(' ');
        } else {
            let _ = write!(out, " {sign} ");
        }
        if mag != 1.0 {
            let _ = write!(out, "{mag} ");
        }
        out.push_str(&names[k]);
    }
}

pub fn export_lp_text(model: &LpModel) -> String {
    let mut out = String::new();
    out.push_str(match model.sense {
        Objective::Maximize => "Maximize\n",
        Objective::Minimize => "Minimize\n",
    });
    let obj: Vec<(usize, f64)> = model.objective.iter().copied().enumerate().collect();
    push_expr(&mut out, "obj", &obj, &model.names);
    out.push('\n');
    out.push_str("Subject To\n");
    for row in &model.rows {
        push_expr(&mut out, &row.name, &row.terms, &model.names);
        let _ = writeln!(out, " {} {}", row.sense.symbol(), row.rhs);
    }
    let bounds: Vec<String> = (0..model.num_vars())
        .filter_map(|k| {
            let (lo, up, name) = (model.lower[k], model.upper[k], &model.names[k]);
            match up {
                Some(u) => Some(format!(" {lo} <= {name} <= {u}")),
                None if lo != 0.0 => Some(format!(" {name} >= {lo}")),
                None => None,
            }
        })
        .collect();
    if !bounds.is_empty() {
        out.push_str("Bounds\n");
        for b in bounds {
            out.push_str(&b);
            out.push('\n');
        }
    }
    out.push_str("End\n");
    out
}

#[derive(PartialEq)]
enum Section {
    Start,
    Objective,
    Rows,
    Bounds,
    Done,
}

fn parse_num(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| Error::parse("line", line, format!("expected a number, found {tok:?}")))
}

/// Reads back text in the subset of the LP format written by [`export_lp_text`].
pub fn import_lp_text(text: &str) -> Result<LpModel> {
    let mut model = LpModel::new(Objective::Maximize);
    let mut section = Section::Start;
    // statements may continue over several lines; collect them with their first line number
    let mut stmts: Vec<(usize, Section, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('\\') {
            continue;
        }
        match trimmed.to_ascii_lowercase().as_str() {
            "maximize" | "minimize" if section == Section::Start => {
                model.sense = if trimmed.eq_ignore_ascii_case("maximize") {
                    Objective::Maximize
                } else {
                    Objective::Minimize
                };
                section = Section::Objective;
                continue;
            }
            "subject to" if section == Section::Objective => {
                section = Section::Rows;
                continue;
            }
            "bounds" if section == Section::Rows => {
                section = Section::Bounds;
                continue;
            }
            "end" if section == Section::Rows || section == Section::Bounds => {
                section = Section::Done;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Start | Section::Done => {
                return Err(Error::parse("line", line, format!("unexpected text {trimmed:?}")));
            }
            _ => {}
        }
        let continues = raw.starts_with("   ") && !stmts.is_empty() && section != Section::Bounds;
        if continues {
            let last = stmts.last_mut().unwrap();
            last.2.push(' ');
            last.2.push_str(trimmed);
        } else {
            let sec = match section {
                Section::Objective => Section::Objective,
                Section::Rows => Section::Rows,
                _ => Section::Bounds,
            };
            stmts.push((line, sec, trimmed.to_string()));
        }
    }
    if section != Section::Done {
        return Err(Error::parse("line", text.lines().count(), "missing End marker"));
    }

    let var = |model: &mut LpModel, name: &str| -> usize {
        model.var_index(name).unwrap_or_else(|| model.add_var(name, 0.0))
    };
    for (line, sec, stmt) in stmts {
        match sec {
            Section::Objective | Section::Rows => {
                let (label, body) = stmt
                    .split_once(':')
                    .ok_or_else(|| Error::parse("line", line, "missing label"))?;
                let mut toks: Vec<&str> = body.split_whitespace().collect();
                let mut sense_rhs = None;
                if sec == Section::Rows {
                    if toks.len() < 2 {
                        return Err(Error::parse("line", line, "row without sense and right-hand side"));
                    }
                    let rhs = parse_num(toks.pop().unwrap(), line)?;
                    let sense = match toks.pop().unwrap() {
                        "<=" => RowSense::Le,
                        ">=" => RowSense::Ge,
                        "=" => RowSense::Eq,
                        other => return Err(Error::parse("line", line, format!("unknown sense {other:?}"))),
                    };
                    sense_rhs = Some((sense, rhs));
                }
                let mut terms = Vec::new();
                let mut sign = 1.0;
                let mut coef: Option<f64> = None;
                for tok in toks {
                    match tok {
                        "+" => sign = 1.0,
                        "-" => sign = -1.0,
                        _ if tok.parse::<f64>().is_ok() => coef = Some(parse_num(tok, line)?),
                        name => {
                            let k = var(&mut model, name);
                            terms.push((k, sign * coef.unwrap_or(1.0)));
                            sign = 1.0;
                            coef = None;
                        }
                    }
                }
                match sense_rhs {
                    None => {
                        for (k, a) in terms {
                            model.objective[k] = a;
                        }
                    }
                    Some((sense, rhs)) => {
                        model.add_row(label.trim(), terms, sense, rhs);
                    }
                }
            }
            _ => {
                let toks: Vec<&str> = stmt.split_whitespace().collect();
                match toks.as_slice() {
                    [lo, "<=", name, "<=", up] => {
                        let k = var(&mut model, name);
                        let (lo, up) = (parse_num(lo, line)?, parse_num(up, line)?);
                        model.set_bounds(k, lo, Some(up));
                    }
                    [name, ">=", lo] => {
                        let k = var(&mut model, name);
                        let lo = parse_num(lo, line)?;
                        model.set_bounds(k, lo, None);
                    }
                    _ => return Err(Error::parse("line", line, format!("unsupported bound {stmt:?}"))),
                }
            }
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::frlp::{build_frlp, FrlpSpec};

    #[test]
    fn one_variable_model() {
        let mut m = LpModel::new(Objective::Maximize);
        let x = m.add_var("x", 1.0);
        m.add_row("c1", vec![(x, 1.0)], RowSense::Le, 1.0);
        let text = export_lp_text(&m);
        assert_eq!(text, "Maximize\n obj: x\nSubject To\n c1: x <= 1\nEnd\n");
        assert_eq!(text.lines().count(), 5);
        assert_eq!(import_lp_text(&text).unwrap(), m);
    }

    #[test]
    fn frlp_round_trip() {
        let m = build_frlp(&FrlpSpec::alg2(3).unwrap());
        let back = import_lp_text(&export_lp_text(&m)).unwrap();
        assert_eq!(back.num_vars(), m.num_vars());
        assert_eq!(back.num_rows(), m.num_rows());
        assert_eq!(back, m);
    }

    #[test]
    fn tradeoff_objective_term() {
        let text = export_lp_text(&build_frlp(&FrlpSpec::tradeoff(1.5, 5).unwrap()));
        let obj: String = text.lines().skip(1).take_while(|l| !l.starts_with("Subject")).collect();
        assert!(obj.contains("- 1.5 f"), "{obj}");
    }

    #[test]
    fn bounds_section() {
        let mut m = LpModel::new(Objective::Minimize);
        let x = m.add_var("x", -2.0);
        let y = m.add_var("y", 0.0);
        m.set_bounds(x, 0.0, Some(3.5));
        m.set_bounds(y, 1.0, None);
        m.add_row("r", vec![(x, 1.0), (y, -1.0)], RowSense::Ge, -4.0);
        let text = export_lp_text(&m);
        assert!(text.contains("Bounds\n 0 <= x <= 3.5\n y >= 1\nEnd\n"), "{text}");
        assert_eq!(import_lp_text(&text).unwrap(), m);
    }

    #[test]
    fn import_rejects_garbage() {
        assert!(import_lp_text("Maximize\n obj: x\n").is_err());
        assert!(import_lp_text("hello").is_err());
        assert!(import_lp_text("Maximize\n obj: x\nSubject To\n c: x << 1\nEnd\n").is_err());
    }
}
