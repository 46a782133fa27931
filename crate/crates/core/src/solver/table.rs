//! Open-addressing transposition table keyed by the two claim bitsets.
//!
//! The table grows by doubling until the byte budget is reached. Past that an
//! insert that finds no free slot within a short probe window is dropped; the
//! position is simply recomputed later. Entries are never overwritten with
//! another key, so lookups can not return a wrong value.

#[derive(Clone, Copy)]
struct Slot {
    a: u64,
    b: u64,
    value: i8,
}

const EMPTY: Slot = Slot {
    a: u64::MAX,
    b: u64::MAX,
    value: 0,
};

const PROBE_LIMIT: usize = 32;
const INITIAL_SLOTS: usize = 1 << 12;

pub(crate) struct Table {
    slots: Vec<Slot>,
    len: usize,
    max_slots: usize,
    pub(crate) dropped: u64,
}

#[inline]
fn hash(a: u64, b: u64) -> u64 {
    let mut h = a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    h ^= h >> 31;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^ (h >> 29)
}

impl Table {
    pub(crate) fn new(budget_bytes: usize) -> Self {
        let per = std::mem::size_of::<Slot>();
        let mut max_slots = 1usize;
        while max_slots * 2 * per <= budget_bytes.max(per) {
            max_slots *= 2;
        }
        let cap = INITIAL_SLOTS.min(max_slots);
        Table {
            slots: vec![EMPTY; cap],
            len: 0,
            max_slots,
            dropped: 0,
        }
    }

    #[inline]
    pub(crate) fn get(&self, a: u64, b: u64) -> Option<i8> {
        let mask = self.slots.len() - 1;
        let mut i = hash(a, b) as usize & mask;
        for _ in 0..self.window() {
            let s = &self.slots[i];
            if s.a == a && s.b == b {
                return Some(s.value);
            }
            if s.a == u64::MAX && s.b == u64::MAX {
                return None;
            }
            i = (i + 1) & mask;
        }
        None
    }

    pub(crate) fn insert(&mut self, a: u64, b: u64, value: i8) {
        if (self.len + 1) * 2 > self.slots.len() && self.slots.len() < self.max_slots {
            self.grow();
        }
        let mask = self.slots.len() - 1;
        let mut i = hash(a, b) as usize & mask;
        for _ in 0..self.window() {
            let s = &mut self.slots[i];
            if s.a == a && s.b == b {
                s.value = value;
                return;
            }
            if s.a == u64::MAX && s.b == u64::MAX {
                *s = Slot { a, b, value };
                self.len += 1;
                return;
            }
            i = (i + 1) & mask;
        }
        self.dropped += 1;
    }

    #[inline]
    fn window(&self) -> usize {
        if self.slots.len() < self.max_slots {
            self.slots.len()
        } else {
            PROBE_LIMIT
        }
    }

    fn grow(&mut self) {
        let doubled = vec![EMPTY; self.slots.len() * 2];
        let old = std::mem::replace(&mut self.slots, doubled);
        self.len = 0;
        for s in old {
            if !(s.a == u64::MAX && s.b == u64::MAX) {
                self.insert(s.a, s.b, s.value);
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stores_and_drops_without_corruption() {
        let mut t = Table::new(24 * 64);
        for i in 0..1000u64 {
            t.insert(i, i << 20, (i % 3) as i8 - 1);
        }
        assert!(t.len() <= 64);
        assert!(t.dropped > 0);
        for i in 0..1000u64 {
            if let Some(v) = t.get(i, i << 20) {
                assert_eq!(v, (i % 3) as i8 - 1);
            }
        }
    }

    #[test]
    fn grows_within_budget() {
        let mut t = Table::new(1 << 24);
        for i in 0..100_000u64 {
            t.insert(i, 0, 1);
        }
        assert_eq!(t.len(), 100_000);
        assert_eq!(t.dropped, 0);
        assert_eq!(t.get(99_999, 0), Some(1));
        assert_eq!(t.get(100_001, 0), None);
    }
}
