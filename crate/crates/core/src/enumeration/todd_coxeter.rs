//! HLT coset enumeration.
//!
//! Cosets are processed in increasing order. For each live coset every
//! relator is scanned and filled, defining new cosets as the scan requires;
//! then any entries still missing in that row are defined left to right.
//! Coincidences are handled by a union-find over coset numbers, always
//! keeping the smaller number.
//!
//! When the table reaches `cap` rows, dead rows are compacted away and, if
//! enabled, a lookahead pass (scanning without defining) runs before the
//! enumeration gives up.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::coset_table::CosetTable;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

pub const DEFAULT_CAP: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Maximum number of table rows held at once.
    pub cap: usize,
    pub lookahead: bool,
}

impl EnumerationOptions {
    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap,
            ..Self::default()
        }
    }
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            lookahead: true,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkStats {
    pub definitions: u64,
    pub coincidences: u64,
    pub max_live: u64,
    pub compactions: u64,
    pub lookaheads: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite { index: usize, table: CosetTable },
    CapExceeded { cosets_defined: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationOutcome {
    pub verdict: Verdict,
    pub work: WorkStats,
    /// Wall-clock time, kept out of certificates so they stay reproducible.
    pub elapsed: Duration,
}

impl EnumerationOutcome {
    pub fn index(&self) -> Option<usize> {
        match &self.verdict {
            Verdict::Finite { index, .. } => Some(*index),
            Verdict::CapExceeded { .. } => None,
        }
    }

    pub fn table(&self) -> Option<&CosetTable> {
        match &self.verdict {
            Verdict::Finite { table, .. } => Some(table),
            Verdict::CapExceeded { .. } => None,
        }
    }
}

/// Index of the subgroup generated by `subgroup` in the group presented by
/// `p`, or `CapExceeded`.
pub fn enumerate(p: &Presentation, subgroup: &[Word], cap: usize) -> Result<EnumerationOutcome> {
    enumerate_with(p, subgroup, EnumerationOptions::with_cap(cap))
}

pub fn enumerate_with(
    p: &Presentation,
    subgroup: &[Word],
    options: EnumerationOptions,
) -> Result<EnumerationOutcome> {
    if options.cap == 0 {
        return Err(Error::params("cap must be at least 1"));
    }
    for w in subgroup {
        p.check_word(w)?;
    }
    let start = Instant::now();

    let mut relators: Vec<Vec<u32>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_identity())
        .map(|r| r.letters().collect())
        .collect();
    relators.sort_by_key(Vec::len);
    let subgroup: Vec<Vec<u32>> = subgroup.iter().map(|w| w.letters().collect()).collect();

    let mut e = Enumerator::new(2 * p.rank(), options);
    let verdict = e.run(&relators, &subgroup);
    log::debug!(
        "enumeration: {:?} after {} definitions, {} coincidences",
        verdict.as_ref().map(|t| t.degree()),
        e.stats.definitions,
        e.stats.coincidences
    );
    let verdict = match verdict {
        Some(table) => Verdict::Finite {
            index: table.degree(),
            table,
        },
        None => Verdict::CapExceeded {
            cosets_defined: e.stats.definitions + 1,
        },
    };
    Ok(EnumerationOutcome {
        verdict,
        work: e.stats,
        elapsed: start.elapsed(),
    })
}

/// Row capacity exhausted during a definition.
struct Full;

struct Enumerator {
    width: usize,
    options: EnumerationOptions,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: u64,
    queue: Vec<u32>,
    stats: WorkStats,
}

impl Enumerator {
    fn new(width: usize, options: EnumerationOptions) -> Self {
        let mut e = Self {
            width,
            options,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            queue: Vec::new(),
            stats: WorkStats::default(),
        };
        e.push_row();
        e
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn push_row(&mut self) -> u32 {
        let n = self.parent.len() as u32;
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(UNDEF, self.width));
        self.live += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        n
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.width + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, d: u32) {
        self.table[c as usize * self.width + x as usize] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent.get(c as usize) == Some(&c)
    }

    fn define(&mut self, c: u32, x: u32) -> Result<(), Full> {
        if self.rows() >= self.options.cap {
            return Err(Full);
        }
        let d = self.push_row();
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.stats.definitions += 1;
        Ok(())
    }

    fn run(&mut self, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> Option<CosetTable> {
        // Subgroup generators are scanned once from coset 0, which never dies.
        let mut pending = 0;
        while pending < subgroup.len() {
            match self.scan_and_fill(0, &subgroup[pending]) {
                Ok(()) => pending += 1,
                Err(Full) => {
                    if !self.make_room(relators) {
                        return None;
                    }
                }
            }
        }

        let mut alpha = 0u32;
        'cosets: while (alpha as usize) < self.rows() {
            let mut k = 0;
            while k < relators.len() && self.is_live(alpha) {
                match self.scan_and_fill(alpha, &relators[k]) {
                    Ok(()) => k += 1,
                    Err(Full) => {
                        {
                            let a = self.room_for(alpha, relators)?;
                            alpha = a
                        }
                        k = 0;
                    }
                }
            }
            let mut x = 0;
            while x < self.width && self.is_live(alpha) {
                if self.get(alpha, x as u32) == UNDEF && self.define(alpha, x as u32).is_err() {
                    {
                        let a = self.room_for(alpha, relators)?;
                        alpha = a
                    }
                    continue 'cosets;
                }
                x += 1;
            }
            alpha += 1;
            while (alpha as usize) < self.rows() && !self.is_live(alpha) {
                alpha += 1;
            }
        }
        self.compact();
        Some(self.finish())
    }

    /// Frees rows while coset `alpha` is being processed. Returns the number
    /// of the coset to resume at: `alpha` renumbered, or the next live coset
    /// if a lookahead killed it.
    fn room_for(&mut self, alpha: u32, relators: &[Vec<u32>]) -> Option<u32> {
        let mut alpha = self.compact_tracking(alpha);
        if self.rows() < self.options.cap {
            return Some(alpha);
        }
        if !self.options.lookahead {
            return None;
        }
        self.stats.lookaheads += 1;
        self.lookahead(relators);
        alpha = (alpha..self.rows() as u32)
            .find(|&c| self.is_live(c))
            .unwrap_or(self.rows() as u32);
        let resume = (0..alpha).filter(|&c| self.is_live(c)).count() as u32;
        self.compact();
        (self.rows() < self.options.cap).then_some(resume)
    }

    fn make_room(&mut self, relators: &[Vec<u32>]) -> bool {
        self.room_for(0, relators).is_some()
    }

    /// Scan every relator from every live coset without defining anything,
    /// recording deductions and coincidences.
    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        let mut c = 0u32;
        while (c as usize) < self.rows() {
            if self.is_live(c) {
                for r in relators {
                    if !self.is_live(c) {
                        break;
                    }
                    self.scan(c, r, false).ok();
                }
            }
            c += 1;
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, w: &[u32]) -> Result<(), Full> {
        self.scan(alpha, w, true)
    }

    fn scan(&mut self, alpha: u32, w: &[u32], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut b = alpha;
        let mut i = 0usize;
        let mut j = w.len() - 1;
        loop {
            while i <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                if i == j {
                    if f != alpha {
                        self.coincidence(f, alpha);
                    }
                    return Ok(());
                }
                i += 1;
            }
            while j >= i && self.get(b, w[j] ^ 1) != UNDEF {
                b = self.get(b, w[j] ^ 1);
                if j == i {
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
                j -= 1;
            }
            if i == j {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k == l {
            return;
        }
        let (keep, kill) = if k < l { (k, l) } else { (l, k) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
        self.live -= 1;
        self.stats.coincidences += 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let gamma = self.queue[head];
            head += 1;
            for x in 0..self.width as u32 {
                let delta = self.get(gamma, x);
                if delta == UNDEF {
                    continue;
                }
                self.set(delta, x ^ 1, UNDEF);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_x = self.get(mu, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != UNDEF {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    fn compact(&mut self) {
        self.compact_tracking(0);
    }

    /// Removes dead rows, preserving the order of live ones. Returns the new
    /// number of coset `track`, which must be live.
    fn compact_tracking(&mut self, track: u32) -> u32 {
        let n = self.rows();
        let mut label = vec![UNDEF; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.is_live(c) {
                label[c as usize] = next;
                next += 1;
            }
        }
        if next as usize == n {
            return track;
        }
        self.stats.compactions += 1;
        let mut table = Vec::with_capacity(next as usize * self.width);
        for c in 0..n as u32 {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.width as u32 {
                let d = self.get(c, x);
                table.push(if d == UNDEF { UNDEF } else { label[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        label[track as usize]
    }

    fn finish(&self) -> CosetTable {
        let rows = (0..self.rows())
            .map(|c| self.table[c * self.width..(c + 1) * self.width].to_vec())
            .collect();
        CosetTable::from_rows(self.width / 2, rows)
            .expect("closed enumeration produced a malformed table")
            .standardized()
    }
}
