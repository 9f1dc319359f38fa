//! Low-index subgroups by backtracking over partial coset tables.
//!
//! Entries are chosen at the first undefined position in row-major order, so
//! every table produced is standardized. After each choice all relators are
//! traced from all cosets, filling single gaps and pruning contradictions.
//! A complete table is reported only if no re-rooting at another coset gives
//! a lexicographically smaller table, which keeps one table per conjugacy
//! class of subgroups.

use std::ops::ControlFlow;

use super::coset_table::CosetTable;
use crate::error::{Error, Result};
use crate::presentation::Presentation;

const UNDEF: u32 = u32::MAX;

/// All transitive actions of degree at most `max_degree`, one per conjugacy
/// class of subgroups, in search order.
pub fn low_index_search(p: &Presentation, max_degree: usize) -> Result<Vec<CosetTable>> {
    let mut out = Vec::new();
    for_each_table(p, max_degree, false, |t| {
        out.push(t);
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

/// Visit every conjugacy-class representative of degree at most
/// `max_degree` (exactly `max_degree` when `exact`), stopping early on
/// `Break`.
pub fn for_each_table<B, F>(
    p: &Presentation,
    max_degree: usize,
    exact: bool,
    mut visit: F,
) -> Result<Option<B>>
where
    F: FnMut(CosetTable) -> ControlFlow<B>,
{
    if max_degree == 0 {
        return Err(Error::params("max degree must be at least 1"));
    }
    if max_degree >= UNDEF as usize {
        return Err(Error::params("max degree too large"));
    }
    let relators: Vec<Vec<u32>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_identity())
        .map(|r| r.letters().collect())
        .collect();
    let search = Search {
        width: 2 * p.rank(),
        max_degree,
        exact,
        relators,
    };
    let mut root = Partial {
        cosets: 1,
        entries: vec![UNDEF; 2 * p.rank()],
    };
    if !search.close(&mut root) {
        return Ok(None);
    }
    Ok(match search.descend(root, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    })
}

#[derive(Clone)]
struct Partial {
    cosets: usize,
    entries: Vec<u32>,
}

struct Search {
    width: usize,
    max_degree: usize,
    exact: bool,
    relators: Vec<Vec<u32>>,
}

impl Search {
    #[inline]
    fn get(&self, t: &Partial, c: u32, x: u32) -> u32 {
        t.entries[c as usize * self.width + x as usize]
    }

    #[inline]
    fn set(&self, t: &mut Partial, c: u32, x: u32, d: u32) {
        t.entries[c as usize * self.width + x as usize] = d;
    }

    fn descend<B, F>(&self, t: Partial, visit: &mut F) -> ControlFlow<B>
    where
        F: FnMut(CosetTable) -> ControlFlow<B>,
    {
        let Some(slot) = t.entries.iter().position(|&e| e == UNDEF) else {
            return self.report(&t, visit);
        };
        let c = (slot / self.width) as u32;
        let x = (slot % self.width) as u32;
        for d in 0..t.cosets as u32 {
            if self.get(&t, d, x ^ 1) != UNDEF {
                continue;
            }
            let mut next = t.clone();
            self.set(&mut next, c, x, d);
            self.set(&mut next, d, x ^ 1, c);
            if self.close(&mut next) {
                self.descend(next, visit)?;
            }
        }
        if t.cosets < self.max_degree {
            let mut next = t;
            let d = next.cosets as u32;
            next.cosets += 1;
            next.entries.extend(std::iter::repeat_n(UNDEF, self.width));
            self.set(&mut next, c, x, d);
            self.set(&mut next, d, x ^ 1, c);
            if self.close(&mut next) {
                self.descend(next, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn report<B, F>(&self, t: &Partial, visit: &mut F) -> ControlFlow<B>
    where
        F: FnMut(CosetTable) -> ControlFlow<B>,
    {
        if self.exact && t.cosets != self.max_degree {
            return ControlFlow::Continue(());
        }
        let rows: Vec<Vec<u32>> = t
            .entries
            .chunks(self.width.max(1))
            .map(<[u32]>::to_vec)
            .collect();
        let rows = if self.width == 0 {
            vec![Vec::new()]
        } else {
            rows
        };
        let table = CosetTable::from_rows(self.width / 2, rows)
            .expect("complete low-index table is malformed");
        let minimal = (1..t.cosets as u32).all(|root| table.rerooted(root).rows() >= table.rows());
        if minimal {
            visit(table)
        } else {
            ControlFlow::Continue(())
        }
    }

    /// Trace every relator from every coset until nothing changes. Returns
    /// false on a contradiction.
    fn close(&self, t: &mut Partial) -> bool {
        loop {
            let mut changed = false;
            for c in 0..t.cosets as u32 {
                for r in &self.relators {
                    match self.trace(t, c, r) {
                        Trace::Contradiction => return false,
                        Trace::Deduced => changed = true,
                        Trace::Nothing => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn trace(&self, t: &mut Partial, c: u32, w: &[u32]) -> Trace {
        let mut f = c;
        let mut i = 0usize;
        while i < w.len() && self.get(t, f, w[i]) != UNDEF {
            f = self.get(t, f, w[i]);
            i += 1;
        }
        if i == w.len() {
            return if f == c {
                Trace::Nothing
            } else {
                Trace::Contradiction
            };
        }
        let mut b = c;
        let mut j = w.len() - 1;
        while j > i && self.get(t, b, w[j] ^ 1) != UNDEF {
            b = self.get(t, b, w[j] ^ 1);
            j -= 1;
        }
        if j > i {
            return Trace::Nothing;
        }
        // Exactly one gap at position i: f·w[i] must be b.
        if self.get(t, b, w[i] ^ 1) != UNDEF {
            return Trace::Contradiction;
        }
        self.set(t, f, w[i], b);
        self.set(t, b, w[i] ^ 1, f);
        Trace::Deduced
    }
}

enum Trace {
    Nothing,
    Deduced,
    Contradiction,
}
