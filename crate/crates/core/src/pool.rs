//! Ordered candidate pool of (solution, element) pairs shared by both greedy
//! algorithms. The smallest key wins; ties fall to the smallest solution
//! index, then the smallest element id.

use std::collections::BTreeSet;

use crate::objectives::Value;
use crate::solution::ElementId;

pub(crate) type Key = [Value; 4];

pub(crate) struct Pool {
    n: usize,
    order: BTreeSet<(Key, usize, ElementId)>,
    slots: Vec<Option<(Key, Value)>>,
}

impl Pool {
    pub(crate) fn new(r: usize, n: usize) -> Self {
        Pool {
            n,
            order: BTreeSet::new(),
            slots: vec![None; r * n],
        }
    }

    /// Removes the entry for `(z, v)`, returning its stored gain.
    pub(crate) fn remove(&mut self, z: usize, v: ElementId) -> Option<Value> {
        let (key, gain) = self.slots[z * self.n + v].take()?;
        self.order.remove(&(key, z, v));
        Some(gain)
    }

    pub(crate) fn put(&mut self, z: usize, v: ElementId, key: Key, gain: Value) {
        debug_assert!(self.slots[z * self.n + v].is_none());
        self.slots[z * self.n + v] = Some((key, gain));
        self.order.insert((key, z, v));
    }

    pub(crate) fn first(&self) -> Option<(usize, ElementId, Value)> {
        let &(_, z, v) = self.order.first()?;
        let (_, gain) = self.slots[z * self.n + v].expect("ordered entry has a slot");
        Some((z, v, gain))
    }

    pub(crate) fn clear_solution(&mut self, z: usize) {
        for v in 0..self.n {
            self.remove(z, v);
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.order.len()
    }
}
