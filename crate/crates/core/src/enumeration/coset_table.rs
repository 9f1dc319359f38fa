use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// A complete coset table: `rows[c][2g]` is `c·g`, `rows[c][2g + 1]` is
/// `c·g⁻¹`. Coset 0 is the subgroup itself. Cosets act on the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetTable {
    rank: usize,
    rows: Vec<Vec<u32>>,
}

#[inline]
pub(crate) fn inverse_column(column: usize) -> usize {
    column ^ 1
}

impl CosetTable {
    /// Build from raw rows; the table is checked for shape and for mutually
    /// inverse column pairs.
    pub fn from_rows(rank: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Self { rank, rows };
        t.check_shape()?;
        Ok(t)
    }

    /// One permutation per generator, each given as the image list of
    /// `0..degree`.
    pub fn from_permutations(perms: &[Vec<u32>]) -> Result<Self> {
        let degree = perms.first().map_or(1, Vec::len);
        let mut rows = vec![vec![0u32; 2 * perms.len()]; degree];
        for (g, perm) in perms.iter().enumerate() {
            if perm.len() != degree {
                return Err(Error::InvalidTable(format!(
                    "permutation {g} has degree {} instead of {degree}",
                    perm.len()
                )));
            }
            let mut seen = vec![false; degree];
            for (point, &image) in perm.iter().enumerate() {
                let slot = seen.get_mut(image as usize).ok_or_else(|| {
                    Error::InvalidTable(format!("image {image} out of range in permutation {g}"))
                })?;
                if *slot {
                    return Err(Error::InvalidTable(format!(
                        "permutation {g} is not injective"
                    )));
                }
                *slot = true;
                rows[point][2 * g] = image;
                rows[image as usize][2 * g + 1] = point as u32;
            }
        }
        Self::from_rows(perms.len(), rows)
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("table has no cosets".into()));
        }
        for (c, row) in self.rows.iter().enumerate() {
            if row.len() != 2 * self.rank {
                return Err(Error::InvalidTable(format!(
                    "row {c} has {} columns, expected {}",
                    row.len(),
                    2 * self.rank
                )));
            }
            for (x, &d) in row.iter().enumerate() {
                if d as usize >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry ({c}, {x}) = {d} is out of range"
                    )));
                }
                if self.rows[d as usize][inverse_column(x)] as usize != c {
                    return Err(Error::InvalidTable(format!(
                        "columns {x} and {} are not mutually inverse at coset {c}",
                        inverse_column(x)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of cosets, i.e. the degree of the permutation action.
    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn entry(&self, coset: u32, column: usize) -> u32 {
        self.rows[coset as usize][column]
    }

    /// The coset reached from `coset` by reading `w` left to right.
    pub fn act(&self, coset: u32, w: &Word) -> u32 {
        w.letters()
            .fold(coset, |c, x| self.rows[c as usize][x as usize])
    }

    /// Image list of generator `g`.
    pub fn permutation(&self, g: usize) -> Vec<u32> {
        self.rows.iter().map(|row| row[2 * g]).collect()
    }

    pub fn permutations(&self) -> Vec<Vec<u32>> {
        (0..self.rank).map(|g| self.permutation(g)).collect()
    }

    /// Replays every relator from every coset, checks that each subgroup
    /// generator fixes coset 0, and that the action is transitive.
    pub fn validate(&self, relators: &[Word], subgroup: &[Word]) -> Result<()> {
        self.check_shape()?;
        for w in relators.iter().chain(subgroup) {
            if let Some(g) = w.max_generator() {
                if g as usize >= self.rank {
                    return Err(Error::GeneratorOutOfRange {
                        index: g,
                        rank: self.rank,
                    });
                }
            }
        }
        for (i, r) in relators.iter().enumerate() {
            for c in 0..self.degree() as u32 {
                let end = self.act(c, r);
                if end != c {
                    return Err(Error::InvalidTable(format!(
                        "relator {i} traced from coset {c} ends at {end}"
                    )));
                }
            }
        }
        for (i, w) in subgroup.iter().enumerate() {
            let end = self.act(0, w);
            if end != 0 {
                return Err(Error::InvalidTable(format!(
                    "subgroup generator {i} moves coset 0 to {end}"
                )));
            }
        }
        let reached = self.bfs_order(0).len();
        if reached != self.degree() {
            return Err(Error::InvalidTable(format!(
                "action is not transitive: {reached} of {} cosets reachable",
                self.degree()
            )));
        }
        Ok(())
    }

    /// Cosets in breadth-first order from `root`, scanning columns in order.
    fn bfs_order(&self, root: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        let mut order = vec![root];
        seen[root as usize] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            for &d in &self.rows[c as usize] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        order
    }

    /// Renumber so that cosets appear in first-visit order from `root`.
    /// Rooting at a coset other than 0 gives the table of a conjugate
    /// subgroup. Requires a transitive table.
    pub fn rerooted(&self, root: u32) -> Self {
        let order = self.bfs_order(root);
        let mut label = vec![0u32; self.degree()];
        for (new, &old) in order.iter().enumerate() {
            label[old as usize] = new as u32;
        }
        let rows = order
            .iter()
            .map(|&old| {
                self.rows[old as usize]
                    .iter()
                    .map(|&d| label[d as usize])
                    .collect()
            })
            .collect();
        Self {
            rank: self.rank,
            rows,
        }
    }

    pub fn standardized(&self) -> Self {
        self.rerooted(0)
    }

    pub fn is_standard(&self) -> bool {
        self.bfs_order(0)
            .iter()
            .enumerate()
            .all(|(i, &c)| i as u32 == c)
    }

    /// Whether the images of generators `g` and `h` commute.
    pub fn generators_commute(&self, g: usize, h: usize) -> bool {
        self.rows.iter().all(|row| {
            self.rows[row[2 * g] as usize][2 * h] == self.rows[row[2 * h] as usize][2 * g]
        })
    }
}
