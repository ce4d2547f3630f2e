//! Finite rotation-puzzle instances, the edge-matching solution condition,
//! and the instance/solution text formats.
//!
//! Instance format (one tile per line, `#` starts a comment):
//!
//! ```text
//! tantrix k=3
//! 0 0 t1
//! 0 1 t5
//! ```
//!
//! Solution format: `a b <6-char colorseq>` lines, coordinates sorted
//! lexicographically. Unoccupied neighbors impose no constraint.

use crate::hex::{direction_between, ColorSequence, HexCoord};
use crate::tiles::{tile_set, TileSet, TileType};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A finite shape function: a map from occupied cells to tile types.
#[derive(Debug, Clone)]
pub struct PuzzleInstance {
    k: usize,
    tile_set: TileSet,
    placements: BTreeMap<HexCoord, TileType>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PuzzleError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("coordinate {0} is already occupied")]
    Occupied(HexCoord),
    #[error(transparent)]
    Catalog(#[from] crate::tiles::CatalogError),
}

impl PuzzleInstance {
    pub fn new(k: usize) -> Result<Self, PuzzleError> {
        Ok(PuzzleInstance {
            k,
            tile_set: tile_set(k)?,
            placements: BTreeMap::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn tile_set(&self) -> &TileSet {
        &self.tile_set
    }

    /// Place a catalogued tile; rejects double occupancy.
    pub fn place(&mut self, at: HexCoord, tile_id: usize) -> Result<(), PuzzleError> {
        let tile = *self.tile_set.tile(tile_id)?;
        if self.placements.contains_key(&at) {
            return Err(PuzzleError::Occupied(at));
        }
        self.placements.insert(at, tile);
        Ok(())
    }

    pub fn tile_at(&self, at: HexCoord) -> Option<&TileType> {
        self.placements.get(&at)
    }

    /// Occupied cells in sorted order.
    pub fn shape(&self) -> impl Iterator<Item = HexCoord> + '_ {
        self.placements.keys().copied()
    }

    pub fn placements(&self) -> &BTreeMap<HexCoord, TileType> {
        &self.placements
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    /// Occupied neighbor pairs, each listed once.
    pub fn adjacent_pairs(&self) -> Vec<(HexCoord, HexCoord)> {
        let mut out = Vec::new();
        for &x in self.placements.keys() {
            for y in x.neighbors() {
                if x < y && self.placements.contains_key(&y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PuzzleError> {
        let err = |line: usize, msg: String| PuzzleError::Parse { line, msg };
        let mut lines = numbered_lines(text);
        let (header_no, header) = lines
            .next()
            .ok_or_else(|| err(1, "empty instance file".into()))?;
        let k = header
            .strip_prefix("tantrix k=")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| err(header_no, format!("expected `tantrix k=<k>`, got `{header}`")))?;
        let mut inst = PuzzleInstance::new(k).map_err(|e| err(header_no, e.to_string()))?;
        for (no, line) in lines {
            let (coord, rest) = parse_coord(line, no)?;
            let id = rest
                .strip_prefix('t')
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| err(no, format!("expected tile id `t<n>`, got `{rest}`")))?;
            inst.place(coord, id).map_err(|e| err(no, e.to_string()))?;
        }
        Ok(inst)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("tantrix k={}\n", self.k);
        for (c, t) in &self.placements {
            writeln!(out, "{} {} t{}", c.a, c.b, t.id).unwrap();
        }
        out
    }
}

/// An orientation assignment: a realized color sequence for every occupied
/// cell. Solutions are identified by these sequences, so tiles whose
/// symmetric rotations repeat a sequence contribute a single solution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    realized: BTreeMap<HexCoord, ColorSequence>,
}

impl Solution {
    pub fn new(realized: BTreeMap<HexCoord, ColorSequence>) -> Self {
        Solution { realized }
    }

    pub fn realized(&self) -> &BTreeMap<HexCoord, ColorSequence> {
        &self.realized
    }

    pub fn sequence_at(&self, c: HexCoord) -> Option<&ColorSequence> {
        self.realized.get(&c)
    }

    pub fn parse(text: &str) -> Result<Self, PuzzleError> {
        let mut realized = BTreeMap::new();
        for (no, line) in numbered_lines(text) {
            let (coord, rest) = parse_coord(line, no)?;
            let seq = ColorSequence::parse(rest).ok_or_else(|| PuzzleError::Parse {
                line: no,
                msg: format!("expected 6-character color sequence, got `{rest}`"),
            })?;
            if realized.insert(coord, seq).is_some() {
                return Err(PuzzleError::Parse {
                    line: no,
                    msg: format!("duplicate coordinate {coord}"),
                });
            }
        }
        Ok(Solution { realized })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (c, s) in &self.realized {
            writeln!(out, "{} {} {}", c.a, c.b, s).unwrap();
        }
        out
    }
}

/// Non-comment lines with 1-based numbers.
fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_coord(line: &str, no: usize) -> Result<(HexCoord, &str), PuzzleError> {
    let err = |msg: String| PuzzleError::Parse { line: no, msg };
    let mut parts = line.split_whitespace();
    let a = parts
        .next()
        .and_then(|s| s.parse::<i64>().ok())
        .ok_or_else(|| err(format!("expected `a b ...`, got `{line}`")))?;
    let b = parts
        .next()
        .and_then(|s| s.parse::<i64>().ok())
        .ok_or_else(|| err(format!("expected `a b ...`, got `{line}`")))?;
    let rest = parts.next().ok_or_else(|| err("missing third field".into()))?;
    if parts.next().is_some() {
        return Err(err(format!("trailing garbage in `{line}`")));
    }
    Ok((HexCoord::new(a, b), rest))
}

/// A reason a candidate solution fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Solution domain differs from the instance shape at this cell.
    ShapeMismatch(HexCoord),
    /// Realized sequence is not an orientation of the placed tile.
    NotAnOrientation(HexCoord),
    /// The two tiles disagree at their joint edge.
    EdgeMismatch { x: HexCoord, y: HexCoord },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ShapeMismatch(c) => write!(f, "shape mismatch at {c}"),
            Violation::NotAnOrientation(c) => {
                write!(f, "sequence at {c} is not an orientation of the placed tile")
            }
            Violation::EdgeMismatch { x, y } => {
                write!(f, "colors disagree at the joint edge of {x} and {y}")
            }
        }
    }
}

/// Check every solution invariant; violations are data, not failures.
pub fn validate_solution(inst: &PuzzleInstance, sol: &Solution) -> (bool, Vec<Violation>) {
    let mut violations = Vec::new();
    for c in inst.shape() {
        match sol.sequence_at(c) {
            None => violations.push(Violation::ShapeMismatch(c)),
            Some(seq) => {
                if !inst
                    .tile_at(c)
                    .unwrap()
                    .distinct_orientations()
                    .contains(seq)
                {
                    violations.push(Violation::NotAnOrientation(c));
                }
            }
        }
    }
    for &c in sol.realized().keys() {
        if inst.tile_at(c).is_none() {
            violations.push(Violation::ShapeMismatch(c));
        }
    }
    for (x, y) in inst.adjacent_pairs() {
        let (Some(sx), Some(sy)) = (sol.sequence_at(x), sol.sequence_at(y)) else {
            continue;
        };
        let d = direction_between(x, y).unwrap();
        if sx.at(d) != sy.at(d.opposite()) {
            violations.push(Violation::EdgeMismatch { x, y });
        }
    }
    (violations.is_empty(), violations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> ColorSequence {
        ColorSequence::parse(s).unwrap()
    }

    #[test]
    fn parse_and_roundtrip() {
        let inst = PuzzleInstance::parse("tantrix k=3\n0 0 t1\n").unwrap();
        assert_eq!(inst.k(), 3);
        assert_eq!(inst.len(), 1);
        assert_eq!(inst.tile_at(HexCoord::new(0, 0)).unwrap().id, 1);

        let text = "tantrix k=2\n# a comment\n1 -2 t5\n0 0 t3\n";
        let inst = PuzzleInstance::parse(text).unwrap();
        let round = PuzzleInstance::parse(&inst.serialize()).unwrap();
        assert_eq!(inst.serialize(), round.serialize());
        // sorted output: header plus two lines, (0,0) first
        assert_eq!(inst.serialize(), "tantrix k=2\n0 0 t3\n1 -2 t5\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = PuzzleInstance::parse("tantrix k=3\n0 0 t1\n0 0 t2\n").unwrap_err();
        assert_eq!(
            e,
            PuzzleError::Parse {
                line: 3,
                msg: "coordinate (0,0) is already occupied".into()
            }
        );
        assert!(PuzzleInstance::parse("tantrix k=7\n").is_err());
        assert!(PuzzleInstance::parse("tantrix k=3\n0 0 t99\n").is_err());
        assert!(PuzzleInstance::parse("tantrix k=3\n0 0\n").is_err());
        assert!(PuzzleInstance::parse("").is_err());
    }

    #[test]
    fn validate_basic_cases() {
        // A single tile in any legal orientation is valid.
        let inst = PuzzleInstance::parse("tantrix k=2\n0 0 t1\n").unwrap();
        let sol = Solution::parse("0 0 rbbrrr\n").unwrap();
        assert!(validate_solution(&inst, &sol).0);

        // Two adjacent all-blue tiles match everywhere.
        let inst = PuzzleInstance::parse("tantrix k=2\n0 0 t7\n0 1 t7\n").unwrap();
        let sol = Solution::parse("0 0 bbbbbb\n0 1 bbbbbb\n").unwrap();
        assert!(validate_solution(&inst, &sol).0);

        // All-blue next to all-red fails at the joint edge.
        let inst = PuzzleInstance::parse("tantrix k=2\n0 0 t7\n0 1 t8\n").unwrap();
        let sol = Solution::parse("0 0 bbbbbb\n0 1 rrrrrr\n").unwrap();
        let (ok, violations) = validate_solution(&inst, &sol);
        assert!(!ok);
        assert_eq!(
            violations,
            vec![Violation::EdgeMismatch {
                x: HexCoord::new(0, 0),
                y: HexCoord::new(0, 1)
            }]
        );
    }

    #[test]
    fn validate_rejects_wrong_orientation_and_shape() {
        let inst = PuzzleInstance::parse("tantrix k=2\n0 0 t1\n").unwrap();
        let sol = Solution::parse("0 0 bbbbbb\n").unwrap();
        let (ok, v) = validate_solution(&inst, &sol);
        assert!(!ok);
        assert_eq!(v, vec![Violation::NotAnOrientation(HexCoord::new(0, 0))]);

        let sol = Solution::new(BTreeMap::new());
        assert!(!validate_solution(&inst, &sol).0);

        let mut extra = BTreeMap::new();
        extra.insert(HexCoord::new(0, 0), seq("bbrrrr"));
        extra.insert(HexCoord::new(5, 5), seq("bbrrrr"));
        assert!(!validate_solution(&inst, &Solution::new(extra)).0);
    }

    #[test]
    fn edge_check_is_symmetric() {
        let inst = PuzzleInstance::parse("tantrix k=2\n0 0 t7\n0 1 t8\n").unwrap();
        let sol = Solution::parse("0 0 bbbbbb\n0 1 rrrrrr\n").unwrap();
        // the single violation is reported once regardless of pair order
        let (_, v) = validate_solution(&inst, &sol);
        assert_eq!(v.len(), 1);
    }
}
