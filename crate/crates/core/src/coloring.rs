//! Exact vertex colouring of small graphs given as 64-bit adjacency masks.
//!
//! DSATUR ordering drives both the greedy upper bound and the exact
//! decision search; a greedy clique gives the lower bound.

pub(crate) const MAX_NODES: usize = 64;

const UNCOLORED: u8 = u8::MAX;

/// Size of a maximal clique grown greedily from every start vertex; a lower
/// bound on the chromatic number.
pub(crate) fn greedy_clique(adj: &[u64]) -> usize {
    let mut best = 0;
    for start in 0..adj.len() {
        let mut size = 1;
        let mut candidates = adj[start];
        while candidates != 0 {
            let mut pick = candidates.trailing_zeros() as usize;
            let mut pick_deg = 0;
            let mut rest = candidates;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let d = (adj[v] & candidates).count_ones();
                if d > pick_deg {
                    pick = v;
                    pick_deg = d;
                }
            }
            size += 1;
            candidates &= adj[pick];
        }
        best = best.max(size);
    }
    best
}

struct Search<'a> {
    adj: &'a [u64],
    colors: usize,
    assignment: Vec<u8>,
    /// Number of neighbours of each vertex holding each colour.
    counts: Vec<u8>,
    /// Bit c set when some neighbour holds colour c.
    seen: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64], colors: usize) -> Self {
        let n = adj.len();
        Search {
            adj,
            colors,
            assignment: vec![UNCOLORED; n],
            counts: vec![0; n * colors.max(1)],
            seen: vec![0; n],
        }
    }

    /// Uncoloured vertex with the most distinct neighbour colours, ties to
    /// the most uncoloured neighbours, then the lowest index.
    fn select(&self, uncolored: u64) -> usize {
        let mut best = usize::MAX;
        let mut key = (0u32, 0u32);
        let mut rest = uncolored;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let k = (
                self.seen[v].count_ones(),
                (self.adj[v] & uncolored).count_ones(),
            );
            if best == usize::MAX || k > key {
                best = v;
                key = k;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.assignment[v] = c as u8;
        let mut rest = self.adj[v];
        while rest != 0 {
            let n = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let slot = &mut self.counts[n * self.colors + c];
            *slot += 1;
            self.seen[n] |= 1 << c;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.assignment[v] = UNCOLORED;
        let mut rest = self.adj[v];
        while rest != 0 {
            let n = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let slot = &mut self.counts[n * self.colors + c];
            *slot -= 1;
            if *slot == 0 {
                self.seen[n] &= !(1 << c);
            }
        }
    }

    fn solve(&mut self, uncolored: u64, used: usize) -> bool {
        if uncolored == 0 {
            return true;
        }
        let v = self.select(uncolored);
        // Colours beyond `used` are interchangeable; try only the first.
        let limit = self.colors.min(used + 1);
        for c in 0..limit {
            if self.seen[v] & (1 << c) != 0 {
                continue;
            }
            self.assign(v, c);
            if self.solve(uncolored & !(1 << v), used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }

    fn greedy(&mut self) -> usize {
        let mut uncolored = all_nodes(self.adj.len());
        let mut used = 0;
        while uncolored != 0 {
            let v = self.select(uncolored);
            let c = (!self.seen[v]).trailing_zeros() as usize;
            self.assign(v, c);
            used = used.max(c + 1);
            uncolored &= !(1 << v);
        }
        used
    }
}

fn all_nodes(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Proper colouring with at most `colors` colours, if one exists.
pub(crate) fn color_with(adj: &[u64], colors: usize) -> Option<Vec<u8>> {
    debug_assert!(adj.len() <= MAX_NODES);
    if adj.is_empty() {
        return Some(Vec::new());
    }
    if colors == 0 {
        return None;
    }
    let mut search = Search::new(adj, colors);
    search
        .solve(all_nodes(adj.len()), 0)
        .then_some(search.assignment)
}

/// Chromatic number and an optimal colouring, or `None` when the chromatic
/// number is at least `bound`.
pub(crate) fn chromatic_number_below(adj: &[u64], bound: usize) -> Option<(usize, Vec<u8>)> {
    debug_assert!(adj.len() <= MAX_NODES);
    if adj.is_empty() {
        return (bound > 0).then(|| (0, Vec::new()));
    }
    let lower = greedy_clique(adj);
    if lower >= bound {
        return None;
    }
    let mut greedy = Search::new(adj, MAX_NODES);
    let upper = greedy.greedy();
    for k in lower..upper.min(bound) {
        if let Some(c) = color_with(adj, k) {
            return Some((k, c));
        }
    }
    (upper < bound).then_some((upper, greedy.assignment))
}

pub(crate) fn chromatic_number(adj: &[u64]) -> (usize, Vec<u8>) {
    chromatic_number_below(adj, usize::MAX).expect("unbounded search always succeeds")
}
