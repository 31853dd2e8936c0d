//! Classic and dual-pivot quicksort with pivot sampling, operating
//! exclusively through the instrumentation layer.

use crate::cost::InstrumentedArray;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Classic,
    DualPivot,
}

impl Algorithm {
    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Classic => "classic",
            Algorithm::DualPivot => "dual",
        }
    }
}

/// Pivot-selection policy.
///
/// * `ClassicMedian { t }` — the pivot is the median of a sample of 2t+1
///   elements (t = 0 is the plain first-element pivot).
/// * `DualTertiles { t }` — the two pivots are the (t+1)-st and (2t+2)-nd
///   order statistics of a sample of 3t+2 elements (t = 0 takes the two
///   outermost elements as they are).
/// * `Ninther` — the median of three medians, each of three elements.
///
/// Sample elements sit at evenly spaced deterministic positions
/// `left + i*(size-1)/(sampleSize-1)`. If the subarray is smaller than the
/// sample, the scheme degrades to its unsampled form (t = 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingScheme {
    ClassicMedian { t: usize },
    DualTertiles { t: usize },
    Ninther,
}

impl SamplingScheme {
    pub fn sample_size(&self) -> usize {
        match self {
            SamplingScheme::ClassicMedian { t } => 2 * t + 1,
            SamplingScheme::DualTertiles { t } => 3 * t + 2,
            SamplingScheme::Ninther => 9,
        }
    }

    pub fn compatible_with(&self, algorithm: Algorithm) -> bool {
        match self {
            SamplingScheme::ClassicMedian { .. } | SamplingScheme::Ninther => {
                algorithm == Algorithm::Classic
            }
            SamplingScheme::DualTertiles { .. } => algorithm == Algorithm::DualPivot,
        }
    }

    pub fn label(&self) -> String {
        match self {
            SamplingScheme::ClassicMedian { t } => format!("median:{t}"),
            SamplingScheme::DualTertiles { t } => format!("tertiles:{t}"),
            SamplingScheme::Ninther => "ninther".to_string(),
        }
    }
}

impl std::str::FromStr for SamplingScheme {
    type Err = String;

    /// Accepts `median:t`, `tertiles:t` and `ninther`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ninther" {
            return Ok(SamplingScheme::Ninther);
        }
        let (kind, t) = s
            .split_once(':')
            .ok_or_else(|| format!("bad scheme {s:?}: expected median:t, tertiles:t or ninther"))?;
        let t: usize = t
            .parse()
            .map_err(|_| format!("bad sampling parameter in scheme {s:?}"))?;
        match kind {
            "median" => Ok(SamplingScheme::ClassicMedian { t }),
            "tertiles" => Ok(SamplingScheme::DualTertiles { t }),
            _ => Err(format!("unknown scheme kind {kind:?}")),
        }
    }
}

/// Final pivot position(s) after a partitioning step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionOutcome {
    Classic { pivot_pos: usize },
    Dual { ell: usize, g: usize },
}

/// Dual-pivot (Yaroslavskiy) partitioning of `A[left..=right]`.
///
/// The outermost elements must already hold the chosen pivots; this routine
/// orders them (`p = min`, `q = max`), sweeps cursor `k` against `g` with
/// `ell` collecting the small elements, and places both pivots at their final
/// positions `ell` and `g`. Positions left of `ell` hold keys `< p`, positions
/// between hold keys in `[p, q]`, positions right of `g` hold keys `>= q`.
pub fn dual_partition(arr: &mut InstrumentedArray, left: usize, right: usize) -> PartitionOutcome {
    assert!(
        right > left,
        "dual_partition requires at least two elements (left={left}, right={right})"
    );
    arr.record_partition_call();
    let mark = arr.scope();
    let cl = arr.cursor("left", left);
    let cr = arr.cursor("right", right);
    let a = arr.read(cl);
    let b = arr.read(cr);
    let (p, q) = if arr.lt(b, a) { (b, a) } else { (a, b) };
    let ell = arr.cursor("ell", left + 1);
    let g = arr.cursor("g", right - 1);
    let k = arr.cursor("k", left + 1);
    while arr.position(k) <= arr.position(g) {
        let ak = arr.read(k);
        if arr.lt(ak, p) {
            arr.swap(k, ell);
            arr.advance(ell, 1);
        } else if arr.ge(ak, q) {
            loop {
                let ag = arr.read(g);
                if arr.gt(ag, q) && arr.position(k) < arr.position(g) {
                    arr.advance(g, -1);
                } else {
                    break;
                }
            }
            arr.swap(k, g);
            arr.advance(g, -1);
            let ak = arr.read(k);
            if arr.lt(ak, p) {
                arr.swap(k, ell);
                arr.advance(ell, 1);
            }
        }
        arr.advance(k, 1);
    }
    arr.advance(ell, -1);
    arr.advance(g, 1);
    // p and q to their final positions
    let v = arr.read(ell);
    arr.write(cl, v);
    arr.write(ell, p);
    let w = arr.read(g);
    arr.write(cr, w);
    arr.write(g, q);
    let outcome = PartitionOutcome::Dual {
        ell: arr.position(ell),
        g: arr.position(g),
    };
    arr.end_scope(mark);
    outcome
}

/// Hoare crossing-pointer partitioning with the pivot parked at `left`.
///
/// Cursor `i` moves right over keys `< pivot`, cursor `j` moves left over
/// keys `> pivot`; inversions are swapped until the cursors cross, then the
/// pivot is swapped to its final position `j`. The two cursors together
/// cover the subarray once, so the scan toll is n + O(1).
pub fn classic_partition(
    arr: &mut InstrumentedArray,
    left: usize,
    right: usize,
) -> PartitionOutcome {
    assert!(right >= left, "classic_partition on empty range");
    arr.record_partition_call();
    let mark = arr.scope();
    let cl = arr.cursor("left", left);
    let v = arr.read(cl);
    let i = arr.cursor("i", left + 1);
    let j = arr.cursor("j", right);
    loop {
        while arr.position(i) <= right {
            let ai = arr.read(i);
            if arr.lt(ai, v) {
                arr.advance(i, 1);
            } else {
                break;
            }
        }
        loop {
            let aj = arr.read(j);
            if arr.gt(aj, v) {
                arr.advance(j, -1);
            } else {
                break;
            }
        }
        if arr.position(i) >= arr.position(j) {
            break;
        }
        arr.swap(i, j);
        arr.advance(i, 1);
        arr.advance(j, -1);
    }
    let pivot_pos = arr.position(j);
    if pivot_pos != left {
        arr.swap(cl, j);
    }
    arr.end_scope(mark);
    PartitionOutcome::Classic { pivot_pos }
}

/// Evenly spaced sample positions within `[left, left+size)`.
fn sample_positions(left: usize, size: usize, sample: usize) -> Vec<usize> {
    assert!(sample >= 2 && sample <= size);
    (0..sample)
        .map(|i| left + i * (size - 1) / (sample - 1))
        .collect()
}

/// Instrumented exchange insertion sort of the keys at `positions`
/// (ascending array positions; the key sequence may be arbitrary).
fn insertion_sort_positions(arr: &mut InstrumentedArray, positions: &[usize]) {
    if positions.len() < 2 {
        return;
    }
    let mark = arr.scope();
    let lo = arr.cursor("j", positions[0]);
    let hi = arr.cursor("k", positions[0]);
    for idx in 1..positions.len() {
        let mut jj = idx;
        while jj > 0 {
            arr.move_to(lo, positions[jj - 1]);
            arr.move_to(hi, positions[jj]);
            let a = arr.read(lo);
            let b = arr.read(hi);
            if arr.lt(b, a) {
                arr.swap(lo, hi);
                jj -= 1;
            } else {
                break;
            }
        }
    }
    arr.end_scope(mark);
}

/// Sorts `A[left..=right]`; used as the optional small-subarray cutoff.
pub fn insertion_sort(arr: &mut InstrumentedArray, left: usize, right: usize) {
    if right <= left {
        return;
    }
    let positions: Vec<usize> = (left..=right).collect();
    insertion_sort_positions(arr, &positions);
}

fn placement_swap(arr: &mut InstrumentedArray, a: usize, b: usize) {
    if a == b {
        return;
    }
    let mark = arr.scope();
    let ca = arr.cursor("sa", a);
    let cb = arr.cursor("sb", b);
    arr.swap(ca, cb);
    arr.end_scope(mark);
}

/// Move the scheme's pivot(s) into position: the classic median to `left`,
/// the dual tertiles to `left` and `right` (smaller at `left`), the ninther
/// to `left`. The sample is sorted in place by instrumented insertion sort,
/// so selection work is counted like any other work; only swaps move
/// elements, hence the multiset is preserved.
pub fn select_pivots(
    arr: &mut InstrumentedArray,
    left: usize,
    right: usize,
    scheme: SamplingScheme,
) {
    let size = right - left + 1;
    match scheme {
        SamplingScheme::ClassicMedian { t } => {
            let (sample, t) = if size < 2 * t + 1 {
                (1, 0)
            } else {
                (2 * t + 1, t)
            };
            if sample == 1 {
                return; // pivot is A[left] as-is
            }
            let pos = sample_positions(left, size, sample);
            insertion_sort_positions(arr, &pos);
            placement_swap(arr, left, pos[t]);
        }
        SamplingScheme::DualTertiles { t } => {
            debug_assert!(size >= 2);
            let (sample, t) = if size < 3 * t + 2 {
                (2, 0)
            } else {
                (3 * t + 2, t)
            };
            let pos = sample_positions(left, size, sample);
            insertion_sort_positions(arr, &pos);
            placement_swap(arr, left, pos[t]);
            placement_swap(arr, right, pos[2 * t + 1]);
        }
        SamplingScheme::Ninther => {
            if size < 9 {
                return; // degrade to the unsampled classic scheme
            }
            let pos = sample_positions(left, size, 9);
            insertion_sort_positions(arr, &pos[0..3]);
            insertion_sort_positions(arr, &pos[3..6]);
            insertion_sort_positions(arr, &pos[6..9]);
            let medians = [pos[1], pos[4], pos[7]];
            insertion_sort_positions(arr, &medians);
            placement_swap(arr, left, pos[4]);
        }
    }
}

/// Instrumented quicksort with the insertion-sort cutoff disabled, so
/// empirical counts match the recurrence model.
pub fn quicksort(arr: &mut InstrumentedArray, algorithm: Algorithm, scheme: SamplingScheme) {
    quicksort_with_cutoff(arr, algorithm, scheme, None);
}

/// Instrumented quicksort; subarrays of at most `cutoff` elements are
/// insertion-sorted instead of partitioned.
pub fn quicksort_with_cutoff(
    arr: &mut InstrumentedArray,
    algorithm: Algorithm,
    scheme: SamplingScheme,
    cutoff: Option<usize>,
) {
    assert!(
        scheme.compatible_with(algorithm),
        "scheme {} is undefined for algorithm {}",
        scheme.label(),
        algorithm.label()
    );
    if arr.len() < 2 {
        return;
    }
    sort_range(arr, 0, arr.len() - 1, algorithm, scheme, cutoff);
}

fn sort_range(
    arr: &mut InstrumentedArray,
    left: usize,
    right: usize,
    algorithm: Algorithm,
    scheme: SamplingScheme,
    cutoff: Option<usize>,
) {
    if right - left < 1 {
        return;
    }
    if let Some(m) = cutoff {
        if right - left < m {
            insertion_sort(arr, left, right);
            return;
        }
    }
    select_pivots(arr, left, right, scheme);
    match algorithm {
        Algorithm::Classic => {
            let PartitionOutcome::Classic { pivot_pos: p } = classic_partition(arr, left, right)
            else {
                unreachable!()
            };
            if p >= left + 2 {
                sort_range(arr, left, p - 1, algorithm, scheme, cutoff);
            }
            if right >= p + 2 {
                sort_range(arr, p + 1, right, algorithm, scheme, cutoff);
            }
        }
        Algorithm::DualPivot => {
            let PartitionOutcome::Dual { ell, g } = dual_partition(arr, left, right) else {
                unreachable!()
            };
            if ell >= left + 2 {
                sort_range(arr, left, ell - 1, algorithm, scheme, cutoff);
            }
            if g >= ell + 3 {
                sort_range(arr, ell + 1, g - 1, algorithm, scheme, cutoff);
            }
            if right >= g + 2 {
                sort_range(arr, g + 1, right, algorithm, scheme, cutoff);
            }
        }
    }
}

/// Uninstrumented reference implementations of the same algorithms, making
/// the same pivot and swap decisions. Used by the wall-clock benchmark and as
/// the non-interference oracle for the instrumented sorters.
pub mod plain {
    use super::{Algorithm, SamplingScheme};

    pub fn dual_partition(a: &mut [i64], left: usize, right: usize) -> (usize, usize) {
        let (p, q) = if a[right] < a[left] {
            (a[right], a[left])
        } else {
            (a[left], a[right])
        };
        let mut ell = left + 1;
        let mut g = right - 1;
        let mut k = left + 1;
        while k <= g {
            if a[k] < p {
                a.swap(k, ell);
                ell += 1;
            } else if a[k] >= q {
                while a[g] > q && k < g {
                    g -= 1;
                }
                a.swap(k, g);
                g -= 1;
                if a[k] < p {
                    a.swap(k, ell);
                    ell += 1;
                }
            }
            k += 1;
        }
        ell -= 1;
        g += 1;
        a[left] = a[ell];
        a[ell] = p;
        a[right] = a[g];
        a[g] = q;
        (ell, g)
    }

    pub fn classic_partition(a: &mut [i64], left: usize, right: usize) -> usize {
        let v = a[left];
        let mut i = left + 1;
        let mut j = right;
        loop {
            while i <= right && a[i] < v {
                i += 1;
            }
            while a[j] > v {
                j -= 1;
            }
            if i >= j {
                break;
            }
            a.swap(i, j);
            i += 1;
            j -= 1;
        }
        if j != left {
            a.swap(left, j);
        }
        j
    }

    fn insertion_sort_positions(a: &mut [i64], positions: &[usize]) {
        for idx in 1..positions.len() {
            let mut jj = idx;
            while jj > 0 && a[positions[jj]] < a[positions[jj - 1]] {
                a.swap(positions[jj - 1], positions[jj]);
                jj -= 1;
            }
        }
    }

    pub fn insertion_sort(a: &mut [i64], left: usize, right: usize) {
        for idx in left + 1..=right {
            let mut jj = idx;
            while jj > left && a[jj] < a[jj - 1] {
                a.swap(jj - 1, jj);
                jj -= 1;
            }
        }
    }

    pub fn select_pivots(a: &mut [i64], left: usize, right: usize, scheme: SamplingScheme) {
        let size = right - left + 1;
        let positions = |sample: usize| -> Vec<usize> {
            (0..sample)
                .map(|i| left + i * (size - 1) / (sample - 1))
                .collect()
        };
        match scheme {
            SamplingScheme::ClassicMedian { t } => {
                let (sample, t) = if size < 2 * t + 1 {
                    (1, 0)
                } else {
                    (2 * t + 1, t)
                };
                if sample == 1 {
                    return;
                }
                let pos = positions(sample);
                insertion_sort_positions(a, &pos);
                a.swap(left, pos[t]);
            }
            SamplingScheme::DualTertiles { t } => {
                let (sample, t) = if size < 3 * t + 2 {
                    (2, 0)
                } else {
                    (3 * t + 2, t)
                };
                let pos = positions(sample);
                insertion_sort_positions(a, &pos);
                if pos[t] != left {
                    a.swap(left, pos[t]);
                }
                if pos[2 * t + 1] != right {
                    a.swap(right, pos[2 * t + 1]);
                }
            }
            SamplingScheme::Ninther => {
                if size < 9 {
                    return;
                }
                let pos = positions(9);
                insertion_sort_positions(a, &pos[0..3]);
                insertion_sort_positions(a, &pos[3..6]);
                insertion_sort_positions(a, &pos[6..9]);
                insertion_sort_positions(a, &[pos[1], pos[4], pos[7]]);
                a.swap(left, pos[4]);
            }
        }
    }

    pub fn quicksort(
        a: &mut [i64],
        algorithm: Algorithm,
        scheme: SamplingScheme,
        cutoff: Option<usize>,
    ) {
        assert!(scheme.compatible_with(algorithm));
        if a.len() < 2 {
            return;
        }
        sort_range(a, 0, a.len() - 1, algorithm, scheme, cutoff);
    }

    fn sort_range(
        a: &mut [i64],
        left: usize,
        right: usize,
        algorithm: Algorithm,
        scheme: SamplingScheme,
        cutoff: Option<usize>,
    ) {
        if right - left < 1 {
            return;
        }
        if let Some(m) = cutoff {
            if right - left < m {
                insertion_sort(a, left, right);
                return;
            }
        }
        select_pivots(a, left, right, scheme);
        match algorithm {
            Algorithm::Classic => {
                let p = classic_partition(a, left, right);
                if p >= left + 2 {
                    sort_range(a, left, p - 1, algorithm, scheme, cutoff);
                }
                if right >= p + 2 {
                    sort_range(a, p + 1, right, algorithm, scheme, cutoff);
                }
            }
            Algorithm::DualPivot => {
                let (ell, g) = dual_partition(a, left, right);
                if ell >= left + 2 {
                    sort_range(a, left, ell - 1, algorithm, scheme, cutoff);
                }
                if g >= ell + 3 {
                    sort_range(a, ell + 1, g - 1, algorithm, scheme, cutoff);
                }
                if right >= g + 2 {
                    sort_range(a, g + 1, right, algorithm, scheme, cutoff);
                }
            }
        }
    }
}
