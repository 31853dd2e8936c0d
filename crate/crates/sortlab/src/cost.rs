//! The instrumented array: cost counters, named cursors, and the
//! scanned-elements accounting rule.
//!
//! A *scanned element* is an array access `A[i]` charged per (index variable,
//! index value) pair: repeated accesses through the same cursor at an
//! unchanged position count once, while several cursors sweeping the same
//! range each pay their own traveled distance. Reads and writes are not
//! distinguished. Each cursor reifies one index variable of the algorithm
//! text; pivot extraction and placement go through dedicated one-shot
//! cursors, so they count as scans too.
//!
//! Counting state is one `last_counted` position per cursor: an access counts
//! iff the position differs from the last counted one. The partitioning
//! cursors are monotone within a call, which makes this equal to
//! distinct-position counting at O(1) memory. Cursor scopes reset at each
//! partition call; a subarray rescanned by a recursive call pays again.

/// A sort key. Deliberately not `Ord`: the sorters must compare through
/// [`InstrumentedArray::lt`] and friends so every comparison is counted.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Key(pub i64);

/// Monotonically nondecreasing tallies, zeroed at construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostCounters {
    pub comparisons: u64,
    pub swaps: u64,
    pub scanned_elements: u64,
    pub partition_calls: u64,
}

/// Handle to a registered cursor. Cheap to copy; stale handles (used after
/// their scope ended) are detected via an epoch check.
#[derive(Clone, Copy, Debug)]
pub struct Cursor {
    slot: usize,
    epoch: u64,
}

/// Marker returned by [`InstrumentedArray::scope`]; closing it retires every
/// cursor registered since.
#[derive(Debug)]
#[must_use]
pub struct ScopeMark(usize);

struct CursorSlot {
    name: &'static str,
    pos: usize,
    last_counted: Option<usize>,
    epoch: u64,
}

/// A key array that routes every read, write, swap and comparison through
/// the cost counters. Single-owner, single-thread per sort invocation.
pub struct InstrumentedArray {
    keys: Vec<Key>,
    counters: CostCounters,
    cursors: Vec<CursorSlot>,
    next_epoch: u64,
}

impl InstrumentedArray {
    pub fn from_keys(raw: Vec<i64>) -> Self {
        InstrumentedArray {
            keys: raw.into_iter().map(Key).collect(),
            counters: CostCounters::default(),
            cursors: Vec::new(),
            next_epoch: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Open a cursor scope. Every partition call opens its own scope so that
    /// cursor names can be reused across calls.
    pub fn scope(&self) -> ScopeMark {
        ScopeMark(self.cursors.len())
    }

    /// Retire all cursors registered since `mark`.
    pub fn end_scope(&mut self, mark: ScopeMark) {
        self.cursors.truncate(mark.0);
    }

    /// Register a cursor at `pos`. Creation does not access the array, so no
    /// scan is counted, and `pos` may even be out of bounds as long as the
    /// cursor is never dereferenced there. Panics on a duplicate active name.
    pub fn cursor(&mut self, name: &'static str, pos: usize) -> Cursor {
        assert!(
            self.cursors.iter().all(|c| c.name != name),
            "duplicate active cursor name {name:?}"
        );
        let epoch = self.next_epoch;
        self.next_epoch += 1;
        self.cursors.push(CursorSlot {
            name,
            pos,
            last_counted: None,
            epoch,
        });
        Cursor {
            slot: self.cursors.len() - 1,
            epoch,
        }
    }

    #[inline]
    fn slot(&self, c: Cursor) -> &CursorSlot {
        let s = &self.cursors[c.slot];
        assert!(s.epoch == c.epoch, "cursor used after its scope ended");
        s
    }

    #[inline]
    pub fn position(&self, c: Cursor) -> usize {
        self.slot(c).pos
    }

    #[inline]
    pub fn move_to(&mut self, c: Cursor, pos: usize) {
        let s = &mut self.cursors[c.slot];
        assert!(s.epoch == c.epoch, "cursor used after its scope ended");
        s.pos = pos;
    }

    #[inline]
    pub fn advance(&mut self, c: Cursor, delta: isize) {
        let pos = self.position(c) as isize + delta;
        assert!(pos >= 0, "cursor moved below index 0");
        self.move_to(c, pos as usize);
    }

    /// Apply the scan rule at the cursor's current position.
    #[inline]
    fn touch(&mut self, c: Cursor) -> usize {
        let len = self.keys.len();
        let s = &mut self.cursors[c.slot];
        assert!(s.epoch == c.epoch, "cursor used after its scope ended");
        assert!(
            s.pos < len,
            "cursor {:?} out of bounds: position {} in array of length {}",
            s.name,
            s.pos,
            len
        );
        if s.last_counted != Some(s.pos) {
            self.counters.scanned_elements += 1;
            s.last_counted = Some(s.pos);
        }
        s.pos
    }

    #[inline]
    pub fn read(&mut self, c: Cursor) -> Key {
        let pos = self.touch(c);
        self.keys[pos]
    }

    #[inline]
    pub fn write(&mut self, c: Cursor, k: Key) {
        let pos = self.touch(c);
        self.keys[pos] = k;
    }

    /// Exchange the keys under two cursors. Degenerate swaps (both cursors at
    /// the same position) are permitted and still count one swap.
    #[inline]
    pub fn swap(&mut self, a: Cursor, b: Cursor) {
        let pa = self.touch(a);
        let pb = self.touch(b);
        self.keys.swap(pa, pb);
        self.counters.swaps += 1;
    }

    #[inline]
    pub fn lt(&mut self, a: Key, b: Key) -> bool {
        self.counters.comparisons += 1;
        a.0 < b.0
    }

    #[inline]
    pub fn le(&mut self, a: Key, b: Key) -> bool {
        self.counters.comparisons += 1;
        a.0 <= b.0
    }

    #[inline]
    pub fn gt(&mut self, a: Key, b: Key) -> bool {
        self.counters.comparisons += 1;
        a.0 > b.0
    }

    #[inline]
    pub fn ge(&mut self, a: Key, b: Key) -> bool {
        self.counters.comparisons += 1;
        a.0 >= b.0
    }

    pub fn record_partition_call(&mut self) {
        self.counters.partition_calls += 1;
    }

    /// Snapshot of the current tallies; does not mutate.
    pub fn counters(&self) -> CostCounters {
        self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters = CostCounters::default();
    }

    /// Verification-only view of the keys. Not part of the sorting interface:
    /// sorters must access keys through cursors.
    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn into_keys(self) -> Vec<Key> {
        self.keys
    }
}

/// `true` iff `keys` is ascending.
pub fn is_sorted(keys: &[Key]) -> bool {
    keys.windows(2).all(|w| w[0].0 <= w[1].0)
}

/// `true` iff `keys` and `reference` hold the same multiset of values.
pub fn same_multiset(keys: &[Key], reference: &[i64]) -> bool {
    let mut a: Vec<i64> = keys.iter().map(|k| k.0).collect();
    let mut b = reference.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}
