use serde::{Deserialize, Serialize};

use super::DecisionError;
use crate::models::FiniteModel;

/// Largest universe the decision module handles; event sets are `u32` masks.
pub const MAX_EVENTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub name: String,
    pub occurs: bool,
    pub imaginable: bool,
}

impl Event {
    pub fn new(name: impl Into<String>, occurs: bool, imaginable: bool) -> Self {
        Event {
            name: name.into(),
            occurs,
            imaginable,
        }
    }

    pub fn is_black_swan(&self) -> bool {
        self.occurs && !self.imaginable
    }
}

/// Events with their occurrence and imaginability flags, and optionally a
/// strict order by size of consequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventUniverse {
    events: Vec<Event>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<(usize, usize)>>,
}

/// A set of events as a bitmask over event indices.
pub type EventSet = u32;

pub fn members(set: EventSet) -> impl Iterator<Item = usize> {
    (0..MAX_EVENTS).filter(move |i| set >> i & 1 == 1)
}

impl EventUniverse {
    pub fn new(events: Vec<Event>) -> Result<Self, DecisionError> {
        if events.len() > MAX_EVENTS {
            return Err(DecisionError::BoundsTooLarge {
                what: "events",
                value: events.len(),
                cap: MAX_EVENTS,
            });
        }
        for (i, e) in events.iter().enumerate() {
            if events[..i].iter().any(|f| f.name == e.name) {
                return Err(DecisionError::Duplicate(format!("event `{}`", e.name)));
            }
        }
        Ok(EventUniverse {
            events,
            order: None,
        })
    }

    /// Attaches `less` as the consequence order; it must be a strict order.
    pub fn with_order(mut self, less: Vec<(usize, usize)>) -> Result<Self, DecisionError> {
        let n = self.events.len();
        if let Some(&(a, b)) = less.iter().find(|(a, b)| *a >= n || *b >= n) {
            return Err(DecisionError::UnknownEvent(format!("{}", a.max(b))));
        }
        let mut m = FiniteModel::empty(n).map_err(|_| DecisionError::BoundsTooLarge {
            what: "ordered events",
            value: n,
            cap: crate::models::MAX_DOMAIN,
        })?;
        for &(a, b) in &less {
            m.set_lt(a, b, true).expect("indices checked");
        }
        if !m.is_strict_order() {
            return Err(DecisionError::NotStrictOrder);
        }
        self.order = Some(m.lt_pairs());
        Ok(self)
    }

    /// One event per domain element, named `e0`, `e1`, ... The order is kept
    /// only when `lt` is a strict order.
    pub fn from_model(m: &FiniteModel) -> Self {
        let events = (0..m.size())
            .map(|i| Event::new(format!("e{i}"), m.occ(i), m.img(i)))
            .collect();
        EventUniverse {
            events,
            order: m.is_strict_order().then(|| m.lt_pairs()),
        }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn event(&self, i: usize) -> &Event {
        &self.events[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.events.iter().position(|e| e.name == name)
    }

    pub fn order(&self) -> Option<&[(usize, usize)]> {
        self.order.as_deref()
    }

    pub fn all(&self) -> EventSet {
        ((1u64 << self.events.len()) - 1) as EventSet
    }

    fn filter(&self, keep: impl Fn(&Event) -> bool) -> EventSet {
        self.events
            .iter()
            .enumerate()
            .filter(|(_, e)| keep(e))
            .fold(0, |s, (i, _)| s | 1 << i)
    }

    /// `S`: events that occur and are not imaginable.
    pub fn black_swan_set(&self) -> EventSet {
        self.filter(Event::is_black_swan)
    }

    pub fn occurring(&self) -> EventSet {
        self.filter(|e| e.occurs)
    }

    pub fn unimaginable(&self) -> EventSet {
        self.filter(|e| !e.imaginable)
    }

    /// True when every member is unimaginable (vacuously for the empty set).
    pub fn all_unimaginable(&self, set: EventSet) -> bool {
        set & !self.unimaginable() == 0
    }

    pub fn names(&self, set: EventSet) -> Vec<String> {
        members(set).map(|i| self.events[i].name.clone()).collect()
    }
}
