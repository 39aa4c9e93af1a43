#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreezeReason {
    /// The city's dual reached its penalty.
    Penalty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    FacilityOpened { facility: usize },
    /// First connection, additional (fault-tolerant) connection, or a switch.
    CityConnected { city: usize, facility: usize },
    CityFrozen { city: usize, reason: FreezeReason },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
}

/// Ordered log of the events of one solver run. Times are nondecreasing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EventTrace {
    events: Vec<Event>,
}

impl EventTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn push(&mut self, time: f64, kind: EventKind) {
        debug_assert!(self.events.last().is_none_or(|e| e.time <= time));
        self.events.push(Event { time, kind });
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn is_time_ordered(&self) -> bool {
        self.events.windows(2).all(|w| w[0].time <= w[1].time)
    }
}
