//! Continuous-time dual ascent shared by the restated Algorithm 1, Algorithm 2,
//! phase 1 of JV and the variant solvers.
//!
//! Every active city raises its dual at rate `d_j`. The engine jumps from event
//! to event; between events every quantity is piecewise linear in time, so the
//! next opening time of each facility has a closed form. Equal-time events are
//! processed one at a time in the order: facility opening (lowest index), city
//! connection (lowest city index), city freeze (lowest city index).

use crate::error::{Error, Result};
use crate::model::{EventKind, EventTrace, FreezeReason, Instance};

/// What a city that already has its connections keeps offering to unopened facilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Nothing: connected cities withdraw every contribution (Algorithm 1).
    Withdraw,
    /// The saving `c[cur][j] - c[i][j]` from switching to `i` (Algorithm 2).
    Switch,
    /// Its frozen surplus `alpha_j - c[i][j]`; openings are temporary (JV phase 1).
    Jv,
}

#[derive(Debug, Clone)]
pub(crate) struct Options {
    pub mode: Mode,
    /// Cap each city's dual at its penalty taken from the instance.
    pub penalties: bool,
    /// Number of distinct open facilities each city must reach.
    pub requirement: usize,
    /// Facilities allowed to open. `None` allows all.
    pub allowed: Option<Vec<bool>>,
    /// Facility open (and paid for) from time zero.
    pub preopened: Option<usize>,
    /// Stop once this many cities are fully connected.
    pub target_connected: Option<usize>,
}

impl Options {
    pub fn new(mode: Mode) -> Self {
        Options {
            mode,
            penalties: false,
            requirement: 1,
            allowed: None,
            preopened: None,
            target_connected: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Active,
    Frozen,
    Done,
}

#[derive(Debug, Clone)]
pub(crate) struct Run {
    pub open: Vec<bool>,
    pub open_time: Vec<f64>,
    pub conns: Vec<Vec<usize>>,
    /// Per-unit payment of each city; for a single connection this is the dual `alpha_j`.
    pub alpha: Vec<f64>,
    pub trace: EventTrace,
}

struct Engine<'a> {
    inst: &'a Instance,
    opts: &'a Options,
    tol: f64,
    caps: Vec<f64>,
    order: Vec<Vec<usize>>,
    state: Vec<State>,
    conns: Vec<Vec<usize>>,
    paid: Vec<f64>,
    /// Cost of the current (single) connection, used by `Mode::Switch`.
    current: Vec<f64>,
    open: Vec<bool>,
    open_time: Vec<f64>,
    connected: usize,
    time: f64,
    trace: EventTrace,
}

enum Next {
    Open(usize, f64),
    Connect(usize, usize, f64),
    Freeze(usize, f64),
}

pub(crate) fn run(inst: &Instance, opts: &Options) -> Result<Run> {
    let nf = inst.n_facilities();
    let nc = inst.n_cities();
    if opts.requirement == 0 || opts.requirement > nf.max(1) {
        return Err(Error::Parameter(format!(
            "connectivity requirement {} must lie in 1..={}",
            opts.requirement, nf
        )));
    }
    if opts.requirement > 1 && opts.mode != Mode::Withdraw {
        return Err(Error::Parameter("fault tolerance is only defined for withdrawal semantics".into()));
    }
    if let Some(mask) = &opts.allowed {
        if mask.len() != nf {
            return Err(Error::Structural("facility mask has the wrong length".into()));
        }
    }
    if nc > 0 && nf == 0 {
        return Err(Error::Parameter("instance has cities but no facilities".into()));
    }
    let caps = match (opts.penalties, inst.penalties()) {
        (true, Some(p)) => p.to_vec(),
        _ => vec![f64::INFINITY; nc],
    };
    let order = (0..nf)
        .map(|i| {
            let row = inst.cost_row(i);
            let mut idx: Vec<usize> = (0..nc).collect();
            idx.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
            idx
        })
        .collect();

    let mut engine = Engine {
        inst,
        opts,
        tol: inst.tolerance(),
        caps,
        order,
        state: vec![State::Active; nc],
        conns: vec![Vec::new(); nc],
        paid: vec![0.0; nc],
        current: vec![f64::INFINITY; nc],
        open: vec![false; nf],
        open_time: vec![f64::INFINITY; nf],
        connected: 0,
        time: 0.0,
        trace: EventTrace::new(),
    };
    if let Some(g) = opts.preopened {
        if g >= nf {
            return Err(Error::Structural(format!("preopened facility {g} out of range")));
        }
        engine.open[g] = true;
        engine.open_time[g] = 0.0;
        engine.trace.push(0.0, EventKind::FacilityOpened { facility: g });
    }
    engine.solve()?;

    let Engine {
        state,
        paid,
        caps,
        conns,
        open,
        open_time,
        trace,
        ..
    } = engine;
    let alpha = (0..nc)
        .map(|j| match state[j] {
            State::Frozen => caps[j],
            _ => paid[j],
        })
        .collect();
    Ok(Run {
        open,
        open_time,
        conns,
        alpha,
        trace,
    })
}

impl Engine<'_> {
    fn allowed(&self, i: usize) -> bool {
        self.opts.allowed.as_ref().is_none_or(|m| m[i])
    }

    /// Offer of a non-active city `j` to unopened facility `i`; constant in time.
    fn standing_offer(&self, j: usize, i: usize) -> f64 {
        let c = self.inst.cost(i, j);
        let level = match (self.state[j], self.opts.mode) {
            (State::Active, _) => return 0.0,
            (State::Frozen, _) => self.caps[j],
            (State::Done, Mode::Withdraw) => return 0.0,
            (State::Done, Mode::Switch) => self.current[j],
            (State::Done, Mode::Jv) => self.paid[j],
        };
        self.inst.demand(j) * (level - c).max(0.0)
    }

    /// Earliest time at which unopened facility `i` is fully paid, or infinity.
    fn opening_time(&self, i: usize) -> f64 {
        let standing: f64 = (0..self.inst.n_cities()).map(|j| self.standing_offer(j, i)).sum();
        let remaining = self.inst.opening_cost(i) - standing;
        if remaining <= self.tol {
            return self.time;
        }
        // First t with sum_{active} d_j (t - c_ij)^+ = remaining is the minimum over
        // cost-sorted prefixes of (remaining + sum d c) / (sum d).
        let row = self.inst.cost_row(i);
        let (mut weight, mut weighted, mut best) = (0.0, 0.0, f64::INFINITY);
        for &j in &self.order[i] {
            if self.state[j] != State::Active {
                continue;
            }
            if row[j] >= best {
                break;
            }
            let d = self.inst.demand(j);
            if d <= 0.0 {
                continue;
            }
            weight += d;
            weighted += d * row[j];
            best = best.min((remaining + weighted) / weight);
        }
        best.max(self.time)
    }

    fn next_event(&self) -> Option<Next> {
        let tol = self.tol;
        let mut open: Option<(usize, f64)> = None;
        for i in 0..self.inst.n_facilities() {
            if self.open[i] || !self.allowed(i) {
                continue;
            }
            let t = self.opening_time(i);
            if t.is_finite() && open.is_none_or(|(_, b)| t < b - tol) {
                open = Some((i, t));
            }
        }
        let mut connect: Option<(usize, usize, f64)> = None;
        let mut freeze: Option<(usize, f64)> = None;
        for j in 0..self.inst.n_cities() {
            if self.state[j] != State::Active {
                continue;
            }
            let mut near: Option<(usize, f64)> = None;
            for i in 0..self.inst.n_facilities() {
                if !self.open[i] || self.conns[j].contains(&i) {
                    continue;
                }
                let c = self.inst.cost(i, j);
                if near.is_none_or(|(_, b)| c < b) {
                    near = Some((i, c));
                }
            }
            if let Some((i, c)) = near {
                let t = c.max(self.time);
                if connect.is_none_or(|(_, _, b)| t < b - tol) {
                    connect = Some((j, i, t));
                }
            }
            let cap = self.caps[j];
            if cap.is_finite() {
                let t = cap.max(self.time);
                if freeze.is_none_or(|(_, b)| t < b - tol) {
                    freeze = Some((j, t));
                }
            }
        }
        let t_conn = connect.map_or(f64::INFINITY, |c| c.2);
        let t_freeze = freeze.map_or(f64::INFINITY, |f| f.1);
        if let Some((i, t)) = open {
            if t <= t_conn.min(t_freeze) + tol {
                return Some(Next::Open(i, t));
            }
        }
        if let Some((j, i, t)) = connect {
            if t <= t_freeze + tol {
                return Some(Next::Connect(j, i, t));
            }
        }
        freeze.map(|(j, t)| Next::Freeze(j, t))
    }

    fn solve(&mut self) -> Result<()> {
        loop {
            if self.opts.target_connected.is_some_and(|n| self.connected >= n) {
                return Ok(());
            }
            if !self.state.contains(&State::Active) {
                return Ok(());
            }
            match self.next_event() {
                Some(Next::Open(i, t)) => self.open_facility(i, t),
                Some(Next::Connect(j, i, t)) => {
                    self.advance(t);
                    self.connect(j, i, self.time);
                }
                Some(Next::Freeze(j, t)) => {
                    self.advance(t);
                    self.state[j] = State::Frozen;
                    self.trace.push(
                        self.time,
                        EventKind::CityFrozen {
                            city: j,
                            reason: FreezeReason::Penalty,
                        },
                    );
                }
                None => {
                    return Err(Error::Parameter(
                        "dual ascent stalled: remaining cities can reach no facility".into(),
                    ))
                }
            }
        }
    }

    fn advance(&mut self, t: f64) {
        self.time = self.time.max(t);
    }

    fn connect(&mut self, j: usize, i: usize, level: f64) {
        self.conns[j].push(i);
        self.paid[j] += level;
        self.current[j] = self.inst.cost(i, j);
        self.trace.push(self.time, EventKind::CityConnected { city: j, facility: i });
        if self.conns[j].len() >= self.opts.requirement {
            self.state[j] = State::Done;
            self.connected += 1;
        }
    }

    fn open_facility(&mut self, i: usize, t: f64) {
        self.advance(t);
        self.open[i] = true;
        self.open_time[i] = self.time;
        self.trace.push(self.time, EventKind::FacilityOpened { facility: i });
        let tol = self.tol;
        for j in 0..self.inst.n_cities() {
            let c = self.inst.cost(i, j);
            match self.state[j] {
                State::Active if c <= self.time + tol => self.connect(j, i, self.time),
                State::Frozen if self.caps[j] - c > tol => {
                    let level = self.caps[j];
                    self.connect(j, i, level);
                }
                State::Done if self.opts.mode == Mode::Switch && self.current[j] - c > tol => {
                    self.conns[j].clear();
                    self.conns[j].push(i);
                    self.current[j] = c;
                    self.trace.push(self.time, EventKind::CityConnected { city: j, facility: i });
                }
                _ => {}
            }
        }
    }
}
