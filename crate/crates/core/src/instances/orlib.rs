use crate::error::{Error, Result};
use crate::model::Instance;

struct Tokens<'a> {
    iter: std::iter::Enumerate<std::str::SplitWhitespace<'a>>,
}

impl<'a> Tokens<'a> {
    fn next_raw(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.iter.next() {
            Some((n, tok)) => Ok((n + 1, tok)),
            None => Err(Error::parse("token", 0, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<f64> {
        let (pos, tok) = self.next_raw(what)?;
        let v: f64 = tok
            .parse()
            .map_err(|_| Error::parse("token", pos, format!("expected {what}, found {tok:?}")))?;
        if !v.is_finite() || v < 0.0 {
            return Err(Error::parse("token", pos, format!("{what} must be finite and nonnegative, found {tok}")));
        }
        Ok(v)
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let (pos, tok) = self.next_raw(what)?;
        tok.parse()
            .map_err(|_| Error::parse("token", pos, format!("expected {what}, found {tok:?}")))
    }
}

/// Parses the OR-Library facility location format: `n_f n_c`, then
/// `capacity opening_cost` per facility, then per city its demand followed by
/// `n_f` allocation costs. The allocation cost covers the whole demand, so
/// `c_ij = cost / d_j` (the raw cost when `d_j = 0`). Capacities are read but
/// not used. Errors report the 1-based token position.
pub fn parse_orlib(text: &str) -> Result<Instance> {
    let mut toks = Tokens {
        iter: text.split_whitespace().enumerate(),
    };
    let nf = toks.count("facility count")?;
    let nc = toks.count("city count")?;
    let mut opening = Vec::with_capacity(nf);
    for _ in 0..nf {
        toks.number("capacity")?;
        opening.push(toks.number("opening cost")?);
    }
    let mut demands = Vec::with_capacity(nc);
    let mut costs = vec![vec![0.0; nc]; nf];
    for j in 0..nc {
        let d = toks.number("demand")?;
        demands.push(d);
        for row in costs.iter_mut() {
            let a = toks.number("allocation cost")?;
            row[j] = if d > 0.0 { a / d } else { a };
        }
    }
    if let Some((n, tok)) = toks.iter.next() {
        return Err(Error::parse("token", n + 1, format!("trailing input {tok:?}")));
    }
    Instance::new(opening, costs)?.with_demands(demands)
}
