#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

impl RowSense {
    pub fn symbol(self) -> &'static str {
        match self {
            RowSense::Le => "<=",
            RowSense::Eq => "=",
            RowSense::Ge => ">=",
        }
    }
}

/// One linear constraint, stored as sparse `(variable, coefficient)` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(usize, f64)>,
    pub sense: RowSense,
    pub rhs: f64,
}

impl Row {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|&(k, a)| a * x[k]).sum()
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.sense {
            RowSense::Le => (lhs - self.rhs).max(0.0),
            RowSense::Ge => (self.rhs - lhs).max(0.0),
            RowSense::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// A linear program over bounded variables.
///
/// Variables have a finite lower bound (default 0) and an optional upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    pub sense: Objective,
    pub objective: Vec<f64>,
    pub names: Vec<String>,
    pub lower: Vec<f64>,
    pub upper: Vec<Option<f64>>,
    pub rows: Vec<Row>,
}

impl LpModel {
    pub fn new(sense: Objective) -> Self {
        LpModel {
            sense,
            objective: Vec::new(),
            names: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Adds a nonnegative variable with the given objective coefficient.
    pub fn add_var(&mut self, name: impl Into<String>, cost: f64) -> usize {
        self.objective.push(cost);
        self.names.push(name.into());
        self.lower.push(0.0);
        self.upper.push(None);
        self.objective.len() - 1
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: Option<f64>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    /// Adds a row; duplicate variable indices are merged.
    pub fn add_row(&mut self, name: impl Into<String>, terms: Vec<(usize, f64)>, sense: RowSense, rhs: f64) -> usize {
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(terms.len());
        for (k, a) in terms {
            match merged.iter_mut().find(|(v, _)| *v == k) {
                Some(slot) => slot.1 += a,
                None => merged.push((k, a)),
            }
        }
        merged.retain(|&(_, a)| a != 0.0);
        self.rows.push(Row {
            name: name.into(),
            terms: merged,
            sense,
            rhs,
        });
        self.rows.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest row or bound violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| r.violation(x)).fold(0.0, f64::max);
        let bounds = (0..self.num_vars())
            .map(|k| {
                let lo = (self.lower[k] - x[k]).max(0.0);
                let hi = self.upper[k].map_or(0.0, |u| (x[k] - u).max(0.0));
                lo.max(hi)
            })
            .fold(0.0, f64::max);
        rows.max(bounds)
    }

    /// Checks indices, finiteness and bounds.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.num_vars();
        if self.names.len() != n || self.lower.len() != n || self.upper.len() != n {
            return Err("variable metadata length mismatch".into());
        }
        for (k, (&lo, up)) in self.lower.iter().zip(&self.upper).enumerate() {
            if !lo.is_finite() {
                return Err(format!("variable {} has a non-finite lower bound", self.names[k]));
            }
            if let Some(u) = up {
                if !u.is_finite() || *u < lo {
                    return Err(format!("variable {} has an invalid upper bound", self.names[k]));
                }
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err("objective has a non-finite coefficient".into());
        }
        for row in &self.rows {
            if !row.rhs.is_finite() {
                return Err(format!("row {} has a non-finite right-hand side", row.name));
            }
            if row.terms.iter().any(|&(k, a)| k >= n || !a.is_finite()) {
                return Err(format!("row {} references an invalid variable or coefficient", row.name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub values: Vec<f64>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}
