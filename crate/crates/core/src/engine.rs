//! Layered state-space engine shared by the exact dynamic programs.
//!
//! Layer `k` holds one entry per reachable state key after the first `k`
//! jobs (in Johnson order) have been placed. Each entry keeps the smallest
//! lag of the first shop position seen for its key, the destination of the
//! last job and a link to its predecessor, so a schedule can be rebuilt by
//! walking the links backwards.

use std::collections::HashMap;
use std::hash::Hash;
use std::time::Instant;

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::model::{evaluate_schedule, Instance, Job, Schedule, Time};

/// Maps each pre-sort shop position to its position after re-sorting.
/// Empty means the identity.
pub type Perm = SmallVec<[u32; 8]>;

pub(crate) const NO_PRED: u32 = u32::MAX;

/// One stored state of a layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry<P> {
    /// Smallest T-lag of shop position 1 among schedules reaching the key.
    pub delta1: Time,
    /// Position, in the predecessor's ordering, that received the last job.
    pub dest: u32,
    /// Index of the predecessor in the previous layer.
    pub pred: u32,
    pub perm: Perm,
    pub payload: P,
}

impl<P> Entry<P> {
    fn rank(&self) -> (Time, u32, u32) {
        (self.delta1, self.dest, self.pred)
    }

    /// Min-merge order: smaller `delta1`, then smaller destination, then
    /// smaller predecessor. Predecessor indices follow key order because
    /// layers are sorted.
    pub(crate) fn beats(&self, other: &Self) -> bool {
        self.rank() < other.rank()
    }
}

/// Reachable states after `k` jobs, sorted by key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer<K, P> {
    pub k: usize,
    pub entries: Vec<(K, Entry<P>)>,
}

impl<K: Ord, P> Layer<K, P> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Entry<P>> {
        self.entries
            .binary_search_by(|(k, _)| k.cmp(key))
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

pub(crate) trait StateSpace: Sync {
    type Key: Clone + Eq + Hash + Ord + Send + Sync;
    type Payload: Clone + Send + Sync;

    fn m(&self) -> usize;

    fn root(&self) -> (Self::Key, Self::Payload);

    /// Emits the successor of `entry` for every destination position.
    /// `r_done` is the R-work of the jobs already placed.
    fn successors(
        &self,
        key: &Self::Key,
        entry: &Entry<Self::Payload>,
        pred: u32,
        job: Job,
        r_done: Time,
        out: &mut Vec<(Self::Key, Entry<Self::Payload>)>,
    ) -> Result<()>;

    /// Makespan of a final state; `r_done` is the total R-work.
    fn makespan(&self, key: &Self::Key, entry: &Entry<Self::Payload>, r_done: Time)
        -> Result<Time>;
}

pub(crate) fn root_layer<S: StateSpace>(space: &S) -> Layer<S::Key, S::Payload> {
    let (key, payload) = space.root();
    Layer {
        k: 0,
        entries: vec![(
            key,
            Entry {
                delta1: 0,
                dest: 0,
                pred: NO_PRED,
                perm: Perm::new(),
                payload,
            },
        )],
    }
}

type Table<S> = HashMap<<S as StateSpace>::Key, Entry<<S as StateSpace>::Payload>>;

fn merge_into<K: Eq + Hash, P>(table: &mut HashMap<K, Entry<P>>, key: K, entry: Entry<P>) {
    use std::collections::hash_map::Entry as Slot;
    match table.entry(key) {
        Slot::Vacant(v) => {
            v.insert(entry);
        }
        Slot::Occupied(mut o) => {
            if entry.beats(o.get()) {
                o.insert(entry);
            }
        }
    }
}

fn expand_chunk<S: StateSpace>(
    space: &S,
    entries: &[(S::Key, Entry<S::Payload>)],
    offset: usize,
    job: Job,
    r_done: Time,
) -> Result<Table<S>> {
    let mut table = HashMap::with_capacity(entries.len() * 2);
    let mut buf = Vec::with_capacity(space.m());
    for (i, (key, entry)) in entries.iter().enumerate() {
        buf.clear();
        space.successors(key, entry, (offset + i) as u32, job, r_done, &mut buf)?;
        for (k, e) in buf.drain(..) {
            merge_into(&mut table, k, e);
        }
    }
    Ok(table)
}

/// Expands `layer` by one job. With a thread pool the layer is split into
/// chunks whose tables are min-merged; the merge is associative and
/// commutative, so the result does not depend on scheduling.
pub(crate) fn expand<S: StateSpace>(
    space: &S,
    layer: &Layer<S::Key, S::Payload>,
    job: Job,
    r_done: Time,
    pool: Option<&rayon::ThreadPool>,
) -> Result<Layer<S::Key, S::Payload>> {
    if layer.entries.len() > NO_PRED as usize {
        return Err(Error::Overflow);
    }
    let table = match pool {
        Some(pool) if layer.entries.len() >= 1024 => {
            let chunk = layer.entries.len().div_ceil(pool.current_num_threads() * 4);
            pool.install(|| {
                layer
                    .entries
                    .par_chunks(chunk)
                    .enumerate()
                    .map(|(c, part)| expand_chunk(space, part, c * chunk, job, r_done))
                    .try_reduce(HashMap::new, |mut a, mut b| {
                        if a.len() < b.len() {
                            std::mem::swap(&mut a, &mut b);
                        }
                        for (k, e) in b {
                            merge_into(&mut a, k, e);
                        }
                        Ok(a)
                    })
            })?
        }
        _ => expand_chunk(space, &layer.entries, 0, job, r_done)?,
    };
    let mut entries: Vec<_> = table.into_iter().collect();
    entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(Layer {
        k: layer.k + 1,
        entries,
    })
}

/// Tuning knobs shared by the exact solvers.
#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Worker threads for layer expansion; 0 or 1 means sequential.
    pub threads: usize,
    /// Keep only two layers and report the makespan without a schedule.
    pub value_only: bool,
    /// Sort shops into a canonical order before keying (exact DP only; the
    /// canonical DP always sorts).
    pub canonical: bool,
    /// Abort with [`Error::Timeout`] once this instant has passed.
    pub deadline: Option<Instant>,
}

impl SolveOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn value_only(mut self) -> Self {
        self.value_only = true;
        self
    }

    pub fn canonical(mut self) -> Self {
        self.canonical = true;
        self
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }
}

/// Reachable-state counts per layer, `layer_sizes[k]` for `k = 0..=n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    pub layer_sizes: Vec<usize>,
}

impl DpStats {
    pub fn peak_layer(&self) -> usize {
        self.layer_sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn total_states(&self) -> usize {
        self.layer_sizes.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpOutcome {
    pub makespan: Time,
    /// `None` in value-only mode.
    pub schedule: Option<Schedule>,
    pub stats: DpStats,
}

fn check_deadline(deadline: Option<Instant>) -> Result<()> {
    match deadline {
        Some(d) if Instant::now() >= d => Err(Error::Timeout),
        _ => Ok(()),
    }
}

fn build_pool(threads: usize) -> Result<Option<rayon::ThreadPool>> {
    if threads <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map(Some)
        .map_err(|e| Error::ThreadPool(e.to_string()))
}

/// Runs the layered program over `instance` (jobs taken in Johnson order)
/// and rebuilds an optimal schedule unless `value_only` is set.
pub(crate) fn run<S: StateSpace>(
    space: &S,
    instance: &Instance,
    opts: &SolveOptions,
) -> Result<DpOutcome> {
    let m = space.m();
    let order = instance.johnson_order();
    let pool = build_pool(opts.threads)?;

    let mut layers = vec![root_layer(space)];
    let mut sizes = vec![1];
    let mut r_done: Time = 0;
    for &j in &order {
        check_deadline(opts.deadline)?;
        let job = instance.jobs()[j];
        let next = expand(space, layers.last().unwrap(), job, r_done, pool.as_ref())?;
        r_done += job.r;
        sizes.push(next.len());
        if opts.value_only {
            layers.clear();
        }
        layers.push(next);
    }

    let last = layers.last().unwrap();
    let mut best: Option<(Time, usize)> = None;
    for (i, (key, entry)) in last.entries.iter().enumerate() {
        let c = space.makespan(key, entry, r_done)?;
        if best.is_none_or(|(b, _)| c < b) {
            best = Some((c, i));
        }
    }
    let (makespan, mut idx) = best.expect("final layer is never empty");
    let stats = DpStats { layer_sizes: sizes };
    if opts.value_only {
        return Ok(DpOutcome {
            makespan,
            schedule: None,
            stats,
        });
    }

    // labels[pos] is the physical shop sitting at position `pos`.
    let mut labels: Vec<usize> = (0..m).collect();
    let mut by_position = vec![0usize; order.len()];
    for k in (1..layers.len()).rev() {
        let entry = &layers[k].entries[idx].1;
        let post = |p: usize| {
            if entry.perm.is_empty() {
                p
            } else {
                entry.perm[p] as usize
            }
        };
        by_position[k - 1] = labels[post(entry.dest as usize)];
        labels = (0..m).map(|p| labels[post(p)]).collect();
        idx = entry.pred as usize;
    }

    let mut assignment = vec![0usize; instance.n()];
    for (pos, &j) in order.iter().enumerate() {
        assignment[j] = by_position[pos];
    }
    let schedule = evaluate_schedule(instance, &assignment)?;
    debug_assert_eq!(schedule.makespan, makespan);
    Ok(DpOutcome {
        makespan,
        schedule: Some(schedule),
        stats,
    })
}

/// Stable-sorts `statuses` by `cmp` and returns the pre-to-post position map.
pub(crate) fn sort_with_perm<T: Copy>(
    statuses: &mut SmallVec<[T; 8]>,
    mut cmp: impl FnMut(&T, &T) -> std::cmp::Ordering,
) -> Perm {
    let mut idx: SmallVec<[u32; 8]> = (0..statuses.len() as u32).collect();
    idx.sort_by(|&a, &b| cmp(&statuses[a as usize], &statuses[b as usize]));
    let mut perm: Perm = SmallVec::from_elem(0, statuses.len());
    let before = statuses.clone();
    for (post, &pre) in idx.iter().enumerate() {
        perm[pre as usize] = post as u32;
        statuses[post] = before[pre as usize];
    }
    perm
}
