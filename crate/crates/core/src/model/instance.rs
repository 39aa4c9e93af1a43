use crate::error::{Error, Result};

/// Bipartite facility location data.
///
/// Connection costs are stored facility-major: the cost between facility `i`
/// and city `j` lives at `costs[i * n_cities + j]`. Demands default to 1 and
/// penalties are absent unless set; both travel with the instance so that file
/// formats round-trip.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    opening: Vec<f64>,
    costs: Vec<f64>,
    n_cities: usize,
    demands: Option<Vec<f64>>,
    penalties: Option<Vec<f64>>,
    metric: bool,
}

fn check_nonneg(what: &str, values: &[f64], allow_inf: bool) -> Result<()> {
    for (k, &v) in values.iter().enumerate() {
        let ok = if allow_inf {
            v >= 0.0 && !v.is_nan()
        } else {
            v.is_finite() && v >= 0.0
        };
        if !ok {
            return Err(Error::Structural(format!("{what}[{k}] = {v} is not a nonnegative number")));
        }
    }
    Ok(())
}

impl Instance {
    /// Builds an instance from opening costs and a facility-major cost matrix.
    pub fn new(opening: Vec<f64>, costs: Vec<Vec<f64>>) -> Result<Self> {
        let n_cities = costs.first().map_or(0, Vec::len);
        if costs.len() != opening.len() {
            return Err(Error::Structural(format!(
                "{} opening costs but {} cost rows",
                opening.len(),
                costs.len()
            )));
        }
        if let Some(row) = costs.iter().position(|r| r.len() != n_cities) {
            return Err(Error::Structural(format!("cost row {row} has the wrong length")));
        }
        Self::from_flat(opening, n_cities, costs.concat())
    }

    pub fn from_flat(opening: Vec<f64>, n_cities: usize, costs: Vec<f64>) -> Result<Self> {
        if costs.len() != opening.len() * n_cities {
            return Err(Error::Structural(format!(
                "cost matrix has {} entries, expected {} x {}",
                costs.len(),
                opening.len(),
                n_cities
            )));
        }
        check_nonneg("f", &opening, false)?;
        check_nonneg("c", &costs, false)?;
        Ok(Instance {
            opening,
            costs,
            n_cities,
            demands: None,
            penalties: None,
            metric: false,
        })
    }

    pub fn with_demands(mut self, demands: Vec<f64>) -> Result<Self> {
        if demands.len() != self.n_cities {
            return Err(Error::Structural(format!(
                "{} demands for {} cities",
                demands.len(),
                self.n_cities
            )));
        }
        check_nonneg("d", &demands, false)?;
        self.demands = Some(demands);
        Ok(self)
    }

    /// Attaches per-city penalties. `f64::INFINITY` means the city must be served.
    pub fn with_penalties(mut self, penalties: Vec<f64>) -> Result<Self> {
        if penalties.len() != self.n_cities {
            return Err(Error::Structural(format!(
                "{} penalties for {} cities",
                penalties.len(),
                self.n_cities
            )));
        }
        check_nonneg("p", &penalties, true)?;
        self.penalties = Some(penalties);
        Ok(self)
    }

    pub fn without_penalties(mut self) -> Self {
        self.penalties = None;
        self
    }

    pub fn without_demands(mut self) -> Self {
        self.demands = None;
        self
    }

    /// Marks the instance as metric. The flag is informational; see [`check_metric`](super::check_metric).
    pub fn with_metric_flag(mut self, metric: bool) -> Self {
        self.metric = metric;
        self
    }

    pub fn n_facilities(&self) -> usize {
        self.opening.len()
    }

    pub fn n_cities(&self) -> usize {
        self.n_cities
    }

    pub fn opening_costs(&self) -> &[f64] {
        &self.opening
    }

    pub fn opening_cost(&self, i: usize) -> f64 {
        self.opening[i]
    }

    #[inline]
    pub fn cost(&self, facility: usize, city: usize) -> f64 {
        self.costs[facility * self.n_cities + city]
    }

    /// Costs from one facility to every city.
    pub fn cost_row(&self, facility: usize) -> &[f64] {
        &self.costs[facility * self.n_cities..(facility + 1) * self.n_cities]
    }

    pub fn demands(&self) -> Option<&[f64]> {
        self.demands.as_deref()
    }

    #[inline]
    pub fn demand(&self, city: usize) -> f64 {
        self.demands.as_ref().map_or(1.0, |d| d[city])
    }

    pub fn has_unit_demands(&self) -> bool {
        self.demands.as_ref().is_none_or(|d| d.iter().all(|&x| x == 1.0))
    }

    pub fn penalties(&self) -> Option<&[f64]> {
        self.penalties.as_deref()
    }

    pub fn metric_flag(&self) -> bool {
        self.metric
    }

    /// Largest finite magnitude among opening and connection costs, at least 1.
    pub fn magnitude(&self) -> f64 {
        self.opening
            .iter()
            .chain(self.costs.iter())
            .fold(1.0_f64, |acc, &v| acc.max(v))
    }

    /// Absolute comparison tolerance used by the solvers on this instance.
    pub fn tolerance(&self) -> f64 {
        1e-9 * self.magnitude()
    }

    /// Copy of the instance with opening costs mapped through `op`.
    pub fn map_opening(&self, op: impl Fn(usize, f64) -> f64) -> Result<Self> {
        let mut out = self.clone();
        out.opening = self.opening.iter().enumerate().map(|(i, &f)| op(i, f)).collect();
        check_nonneg("f", &out.opening, false)?;
        Ok(out)
    }

    /// Copy of the instance with connection costs mapped through `op(i, j, c)`.
    pub fn map_costs(&self, op: impl Fn(usize, usize, f64) -> f64) -> Result<Self> {
        let mut out = self.clone();
        let n = self.n_cities;
        out.costs = self
            .costs
            .iter()
            .enumerate()
            .map(|(k, &c)| op(k / n.max(1), k % n.max(1), c))
            .collect();
        check_nonneg("c", &out.costs, false)?;
        Ok(out)
    }

    /// Restricts the instance to the facilities whose index passes `keep`.
    /// Returns the sub-instance and the map from new to old facility index.
    pub fn select_facilities(&self, keep: impl Fn(usize) -> bool) -> (Self, Vec<usize>) {
        let ids: Vec<usize> = (0..self.n_facilities()).filter(|&i| keep(i)).collect();
        let mut out = self.clone();
        out.opening = ids.iter().map(|&i| self.opening[i]).collect();
        out.costs = ids.iter().flat_map(|&i| self.cost_row(i).iter().copied()).collect();
        (out, ids)
    }
}
