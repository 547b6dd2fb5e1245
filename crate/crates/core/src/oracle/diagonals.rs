//! Crossing paths through one diagonal per unit square of a `t × t` grid of
//! points.
//!
//! Points are `(row, col)` with row 0 at the top. The square with top-left
//! corner `(r, c)` carries `/`, joining `(r+1, c)` and `(r, c+1)`, or `\`,
//! joining `(r, c)` and `(r+1, c+1)`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAssignment {
    t: usize,
    /// Row-major over squares; `true` is `/`.
    bits: Vec<bool>,
}

impl DiagonalAssignment {
    pub fn new(t: usize, bits: Vec<bool>) -> Result<Self> {
        if t < 2 {
            return Err(Error::invalid("diagonal grids need t >= 2"));
        }
        if bits.len() != (t - 1) * (t - 1) {
            return Err(Error::invalid(format!("expected {} diagonals, got {}", (t - 1) * (t - 1), bits.len())));
        }
        Ok(DiagonalAssignment { t, bits })
    }

    /// Parses a row-major string of `0` (`\`) and `1` (`/`).
    pub fn from_bitstring(t: usize, s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::invalid(format!("unexpected character {c:?} in assignment"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(t, bits)
    }

    /// The assignment whose square `i` (row-major) is `/` iff bit `i` of `mask` is set.
    pub fn from_mask(t: usize, mask: u64) -> Result<Self> {
        let squares = (t.max(1) - 1) * (t.max(1) - 1);
        if squares > 64 {
            return Err(Error::invalid("masks cover at most 64 squares"));
        }
        Self::new(t, (0..squares).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    fn neighbours(&self, (r, c): (usize, usize)) -> Vec<(usize, usize)> {
        let t = self.t;
        let mut out = Vec::with_capacity(4);
        // the four squares around (r, c)
        for (sr, sc) in [(r.wrapping_sub(1), c.wrapping_sub(1)), (r.wrapping_sub(1), c), (r, c.wrapping_sub(1)), (r, c)]
        {
            if sr >= t - 1 || sc >= t - 1 {
                continue;
            }
            let slash = self.bits[sr * (t - 1) + sc];
            let (a, b) = if slash { ((sr + 1, sc), (sr, sc + 1)) } else { ((sr, sc), (sr + 1, sc + 1)) };
            if a == (r, c) {
                out.push(b);
            } else if b == (r, c) {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for DiagonalAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingDirection {
    LeftRight,
    TopBottom,
}

impl fmt::Display for CrossingDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingDirection::LeftRight => "left-right",
            CrossingDirection::TopBottom => "top-bottom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingPath {
    pub direction: CrossingDirection,
    /// Grid points `(row, col)` along the path.
    pub points: Vec<(usize, usize)>,
}

fn bfs(
    a: &DiagonalAssignment,
    sources: Vec<(usize, usize)>,
    target: impl Fn((usize, usize)) -> bool,
) -> Option<Vec<(usize, usize)>> {
    let t = a.t;
    let idx = |(r, c): (usize, usize)| r * t + c;
    let mut prev = vec![usize::MAX; t * t];
    let mut seen = vec![false; t * t];
    let mut queue = VecDeque::new();
    for s in sources {
        seen[idx(s)] = true;
        queue.push_back(s);
    }
    while let Some(p) = queue.pop_front() {
        if target(p) {
            let mut path = vec![p];
            let mut cur = idx(p);
            while prev[cur] != usize::MAX {
                cur = prev[cur];
                path.push((cur / t, cur % t));
            }
            path.reverse();
            return Some(path);
        }
        for q in a.neighbours(p) {
            if !seen[idx(q)] {
                seen[idx(q)] = true;
                prev[idx(q)] = idx(p);
                queue.push_back(q);
            }
        }
    }
    None
}

/// A shortest path of diagonals joining the left and right columns, or
/// failing that the top and bottom rows.
///
/// # Panics
///
/// If neither crossing exists; every assignment has one.
pub fn diagonal_crossing(a: &DiagonalAssignment) -> CrossingPath {
    let t = a.t;
    let found = bfs(a, (0..t).map(|r| (r, 0)).collect(), |(_, c)| c == t - 1)
        .map(|points| CrossingPath { direction: CrossingDirection::LeftRight, points })
        .or_else(|| {
            bfs(a, (0..t).map(|c| (0, c)).collect(), |(r, _)| r == t - 1)
                .map(|points| CrossingPath { direction: CrossingDirection::TopBottom, points })
        });
    let path = found.unwrap_or_else(|| panic!("no crossing path for t = {t}, assignment {a}"));
    assert!(path.points.len() >= t, "crossing path shorter than t for assignment {a}");
    path
}
