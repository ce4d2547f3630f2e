//! Exact enumeration and counting of rotation-puzzle solutions.
//!
//! Each occupied cell gets a candidate domain: the distinct orientation
//! sequences of its tile, held as a bitmask. Deduplication by color
//! sequence therefore happens at candidate construction, which realizes
//! the counting convention structurally. Propagation is arc consistency
//! over joint edges; search picks the cell with the smallest open domain,
//! breaking ties by lexicographic coordinate.

use crate::hex::{Color, ColorSequence, Direction, HexCoord};
use crate::puzzle::{validate_solution, PuzzleInstance, Solution, Violation};
use std::collections::BTreeMap;

/// A small set of colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn single(c: Color) -> ColorSet {
        ColorSet(1 << color_index(c))
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << color_index(c);
    }

    pub fn contains(&self, c: Color) -> bool {
        self.0 & (1 << color_index(c)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        Color::ALL.into_iter().filter(|c| self.contains(*c))
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<T: IntoIterator<Item = Color>>(iter: T) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

fn color_index(c: Color) -> usize {
    match c {
        Color::Red => 0,
        Color::Yellow => 1,
        Color::Blue => 2,
        Color::Green => 3,
    }
}

/// Forces the color of one cell edge to lie in `allowed`. Used by the
/// gadget harness to drive input ports without auxiliary tiles.
#[derive(Debug, Clone, Copy)]
pub struct EdgeConstraint {
    pub cell: HexCoord,
    pub edge: Direction,
    pub allowed: ColorSet,
}

/// Result of a counting run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolutionCount {
    pub count: u64,
    /// False when a caller-supplied cap stopped enumeration early.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("known solution {index} does not validate: {first}")]
    InvalidKnownSolution { index: usize, first: Violation },
}

struct Board {
    coords: Vec<HexCoord>,
    orients: Vec<Vec<ColorSequence>>,
    /// `support[cell][dir][color]` = bitmask of orientations showing
    /// `color` on edge `dir`.
    support: Vec<[[u8; 4]; 6]>,
    /// `(neighbor index, direction from this cell)` per cell.
    neighbors: Vec<Vec<(usize, Direction)>>,
}

impl Board {
    fn new(inst: &PuzzleInstance, constraints: &[EdgeConstraint]) -> (Board, Vec<u8>) {
        let coords: Vec<HexCoord> = inst.shape().collect();
        let index: BTreeMap<HexCoord, usize> =
            coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut orients = Vec::with_capacity(coords.len());
        let mut support = Vec::with_capacity(coords.len());
        let mut neighbors = Vec::with_capacity(coords.len());
        let mut domains = Vec::with_capacity(coords.len());
        for &c in &coords {
            let tile = inst.tile_at(c).unwrap();
            let os = tile.distinct_orientations();
            debug_assert!(os.len() <= 6);
            let mut sup = [[0u8; 4]; 6];
            for (bit, seq) in os.iter().enumerate() {
                for d in Direction::ALL {
                    sup[d.index()][color_index(seq.at(d))] |= 1 << bit;
                }
            }
            domains.push(((1u16 << os.len()) - 1) as u8);
            orients.push(os);
            support.push(sup);
            neighbors.push(
                Direction::ALL
                    .into_iter()
                    .filter_map(|d| index.get(&c.neighbor(d)).map(|&i| (i, d)))
                    .collect(),
            );
        }
        let board = Board {
            coords,
            orients,
            support,
            neighbors,
        };
        for con in constraints {
            if let Some(&i) = index.get(&con.cell) {
                let mut mask = 0u8;
                for c in con.allowed.iter() {
                    mask |= board.support[i][con.edge.index()][color_index(c)];
                }
                domains[i] &= mask;
            }
        }
        (board, domains)
    }

    /// Colors cell `i` can currently show on edge `d`.
    fn edge_colors(&self, domains: &[u8], i: usize, d: Direction) -> ColorSet {
        let dom = domains[i];
        let sup = &self.support[i][d.index()];
        let mut set = ColorSet::EMPTY;
        for (ci, c) in Color::ALL.into_iter().enumerate() {
            if sup[ci] & dom != 0 {
                set.insert(c);
            }
        }
        set
    }

    /// Arc consistency from a seed worklist. Returns false on a wipeout.
    fn propagate(&self, domains: &mut [u8], mut work: Vec<usize>) -> bool {
        let mut queued = vec![false; domains.len()];
        for &w in &work {
            queued[w] = true;
        }
        while let Some(x) = work.pop() {
            queued[x] = false;
            for &(y, d) in &self.neighbors[x] {
                let from_x = self.edge_colors(domains, x, d);
                let mut allowed = 0u8;
                let sup = &self.support[y][d.opposite().index()];
                for (ci, c) in Color::ALL.into_iter().enumerate() {
                    if from_x.contains(c) {
                        allowed |= sup[ci];
                    }
                }
                let new = domains[y] & allowed;
                if new != domains[y] {
                    if new == 0 {
                        return false;
                    }
                    domains[y] = new;
                    if !queued[y] {
                        queued[y] = true;
                        work.push(y);
                    }
                }
            }
        }
        true
    }

    fn solution(&self, domains: &[u8]) -> Solution {
        let mut realized = BTreeMap::new();
        for (i, &c) in self.coords.iter().enumerate() {
            let bit = domains[i].trailing_zeros() as usize;
            realized.insert(c, self.orients[i][bit]);
        }
        Solution::new(realized)
    }

    /// Depth-first enumeration. `on_solution` returns false to stop early;
    /// the overall return is false when the search was stopped.
    fn search(&self, domains: &mut Vec<u8>, on_solution: &mut dyn FnMut(Solution) -> bool) -> bool {
        let pick = domains
            .iter()
            .enumerate()
            .filter(|(_, &d)| d.count_ones() > 1)
            .min_by_key(|(i, &d)| (d.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(cell) = pick else {
            return on_solution(self.solution(domains));
        };
        let dom = domains[cell];
        for bit in 0..8 {
            let single = 1u8 << bit;
            if dom & single == 0 {
                continue;
            }
            let mut child = domains.clone();
            child[cell] = single;
            if self.propagate(&mut child, vec![cell]) && !self.search(&mut child, on_solution) {
                return false;
            }
        }
        true
    }

    fn run(&self, mut domains: Vec<u8>, on_solution: &mut dyn FnMut(Solution) -> bool) {
        if domains.iter().any(|&d| d == 0) {
            return;
        }
        let all: Vec<usize> = (0..domains.len()).collect();
        if !self.propagate(&mut domains, all) {
            return;
        }
        self.search(&mut domains, on_solution);
    }
}

/// Enumerate solutions (all of them, or up to `cap`), with the port-edge
/// constraints used by the gadget harness.
pub fn enumerate_with_constraints(
    inst: &PuzzleInstance,
    constraints: &[EdgeConstraint],
    cap: Option<usize>,
) -> (Vec<Solution>, bool) {
    let (board, domains) = Board::new(inst, constraints);
    let mut out = Vec::new();
    let mut exhausted = true;
    board.run(domains, &mut |sol| {
        if cap == Some(out.len()) {
            exhausted = false;
            return false;
        }
        out.push(sol);
        true
    });
    (out, exhausted)
}

/// Count solutions without materializing them, optionally stopping at `cap`.
pub fn count_with_constraints(
    inst: &PuzzleInstance,
    constraints: &[EdgeConstraint],
    cap: Option<u64>,
) -> SolutionCount {
    let (board, domains) = Board::new(inst, constraints);
    let mut count = 0u64;
    let mut exhausted = true;
    board.run(domains, &mut |_| {
        count += 1;
        if cap == Some(count) {
            exhausted = false;
            return false;
        }
        true
    });
    SolutionCount { count, exhausted }
}

/// All solutions of the instance, deduplicated by color sequence, plus an
/// exhausted flag (false only when `cap` stopped the enumeration).
pub fn enumerate_solutions(inst: &PuzzleInstance, cap: Option<usize>) -> (Vec<Solution>, bool) {
    enumerate_with_constraints(inst, &[], cap)
}

/// The exact number of solutions.
pub fn count_solutions(inst: &PuzzleInstance) -> SolutionCount {
    count_with_constraints(inst, &[], None)
}

/// Whether the instance has exactly one solution (enumeration capped at 2).
pub fn is_unique(inst: &PuzzleInstance) -> bool {
    count_with_constraints(inst, &[], Some(2)).count == 1
}

/// Whether a solution outside `known` exists; returns a witness when so.
///
/// Every member of `known` must validate against the instance.
pub fn has_another_solution(
    inst: &PuzzleInstance,
    known: &[Solution],
) -> Result<Option<Solution>, SolverError> {
    for (index, sol) in known.iter().enumerate() {
        let (ok, violations) = validate_solution(inst, sol);
        if !ok {
            return Err(SolverError::InvalidKnownSolution {
                index,
                first: violations.into_iter().next().unwrap(),
            });
        }
    }
    let mut distinct: Vec<&Solution> = Vec::new();
    for s in known {
        if !distinct.contains(&s) {
            distinct.push(s);
        }
    }
    let (sols, _) = enumerate_solutions(inst, Some(distinct.len() + 1));
    Ok(sols.into_iter().find(|s| !distinct.iter().any(|k| *k == s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hex::HexCoord;

    fn inst(text: &str) -> PuzzleInstance {
        PuzzleInstance::parse(text).unwrap()
    }

    #[test]
    fn empty_instance_has_the_empty_solution() {
        let i = inst("tantrix k=3\n");
        let (sols, exhausted) = enumerate_solutions(&i, None);
        assert!(exhausted);
        assert_eq!(sols.len(), 1);
        assert!(sols[0].realized().is_empty());
    }

    #[test]
    fn single_tile_counts_match_orientation_counts() {
        // one all-red tile: a single orientation
        let i = inst("tantrix k=2\n0 0 t8\n");
        let (sols, _) = enumerate_solutions(&i, None);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].serialize(), "0 0 rrrrrr\n");

        // three-color tile 1 has six distinct orientations
        let i = inst("tantrix k=3\n0 0 t1\n");
        assert_eq!(count_solutions(&i), SolutionCount { count: 6, exhausted: true });

        // two-color tile 3 has three
        let i = inst("tantrix k=2\n0 0 t3\n");
        assert_eq!(count_solutions(&i).count, 3);

        // the counting convention: a single all-blue tile counts once
        let i = inst("tantrix k=2\n0 0 t7\n");
        assert_eq!(count_solutions(&i).count, 1);
    }

    #[test]
    fn every_enumerated_solution_validates() {
        let i = inst("tantrix k=3\n0 0 t1\n0 1 t9\n1 1 t4\n");
        let (sols, exhausted) = enumerate_solutions(&i, None);
        assert!(exhausted);
        assert!(!sols.is_empty());
        for s in &sols {
            let (ok, v) = validate_solution(&i, s);
            assert!(ok, "{v:?}");
        }
        // no duplicates
        let mut dedup = sols.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), sols.len());
    }

    #[test]
    fn cap_stops_enumeration() {
        let i = inst("tantrix k=3\n0 0 t1\n");
        let (sols, exhausted) = enumerate_solutions(&i, Some(2));
        assert_eq!(sols.len(), 2);
        assert!(!exhausted);
        let c = count_with_constraints(&i, &[], Some(3));
        assert_eq!(c, SolutionCount { count: 3, exhausted: false });
    }

    #[test]
    fn unsolvable_instance() {
        // all-blue against all-red can never match
        let i = inst("tantrix k=2\n0 0 t7\n0 1 t8\n");
        assert_eq!(count_solutions(&i).count, 0);
        assert!(!is_unique(&i));
    }

    #[test]
    fn unique_detection() {
        let i = inst("tantrix k=2\n0 0 t7\n0 1 t7\n");
        assert!(is_unique(&i));
        let i = inst("tantrix k=2\n0 0 t1\n");
        assert!(!is_unique(&i));
    }

    #[test]
    fn edge_constraints_force_ports() {
        // force the bottom edge of a two-color wire tile to blue: the
        // vertical blue line is then the only survivor
        let i = inst("tantrix k=2\n0 0 t3\n");
        let con = EdgeConstraint {
            cell: HexCoord::new(0, 0),
            edge: Direction::from_index(3).unwrap(),
            allowed: ColorSet::single(Color::Blue),
        };
        let (sols, _) = enumerate_with_constraints(&i, &[con], None);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].serialize(), "0 0 brrbrr\n");
    }

    #[test]
    fn another_solution_queries() {
        let i = inst("tantrix k=2\n0 0 t8\n");
        let (sols, _) = enumerate_solutions(&i, None);
        assert_eq!(has_another_solution(&i, &sols).unwrap(), None);
        // with an empty known list this is solvability
        assert!(has_another_solution(&i, &[]).unwrap().is_some());
        // invalid known solutions are rejected
        let bogus = Solution::parse("0 0 bbbbbb\n").unwrap();
        assert!(has_another_solution(&i, &[bogus]).is_err());
    }

    #[test]
    fn isolated_tiles_always_solvable() {
        let i = inst("tantrix k=3\n0 0 t1\n5 5 t7\n");
        assert!(count_solutions(&i).count > 0);
    }
}
