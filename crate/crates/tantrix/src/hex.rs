//! Hexagonal coordinate system: coordinates, the six-neighbor relation,
//! edge directions, and rotation arithmetic on color sequences.
//!
//! Cells live on `Z^2`. Two distinct points `(a,b)` and `(c,d)` are
//! neighbors iff `(a = c and |b-d| = 1)` or `(|a-c| = 1 and b = d)` or
//! `(a-c = 1 and b-d = 1)` or `(a-c = -1 and b-d = -1)`, which gives every
//! cell exactly six neighbors. Edge indices run clockwise; edge 0 is the
//! `(0,1)` neighbor. Opposite edges differ by 3, forced by hexagon
//! geometry. Which compass direction edge 0 faces is a pure rendering
//! convention with no effect on the puzzle model.

use std::fmt;

/// A cell of the hexagonal grid, addressed by two unbounded integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexCoord {
    pub a: i64,
    pub b: i64,
}

impl HexCoord {
    pub const fn new(a: i64, b: i64) -> Self {
        HexCoord { a, b }
    }

    /// Translate by a delta.
    pub const fn offset(self, da: i64, db: i64) -> Self {
        HexCoord {
            a: self.a + da,
            b: self.b + db,
        }
    }

    /// The six neighbors, in clockwise edge order.
    pub fn neighbors(self) -> [HexCoord; 6] {
        let mut out = [self; 6];
        for (i, dir) in Direction::ALL.iter().enumerate() {
            out[i] = self.neighbor(*dir);
        }
        out
    }

    /// The neighbor across edge `d`.
    pub fn neighbor(self, d: Direction) -> HexCoord {
        let (da, db) = d.delta();
        self.offset(da, db)
    }
}

impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// One of the six edge directions of a hexagonal cell, indexed clockwise.
///
/// Index 0 is the `(0,1)` neighbor; the deltas in index order are
/// `(0,1), (1,1), (1,0), (0,-1), (-1,-1), (-1,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(u8);

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction(0),
        Direction(1),
        Direction(2),
        Direction(3),
        Direction(4),
        Direction(5),
    ];

    const DELTAS: [(i64, i64); 6] = [(0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)];

    /// Construct from a clockwise edge index in `0..6`.
    pub fn from_index(i: usize) -> Option<Direction> {
        (i < 6).then(|| Direction(i as u8))
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn delta(self) -> (i64, i64) {
        Self::DELTAS[self.0 as usize]
    }

    /// The edge on the far side: same physical edge seen from the neighbor.
    pub const fn opposite(self) -> Direction {
        Direction((self.0 + 3) % 6)
    }

    /// Mirror across the vertical axis: index `i` maps to `(6 - i) mod 6`.
    pub const fn mirrored(self) -> Direction {
        Direction((6 - self.0) % 6)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The direction `d` with `x.neighbor(d) == y`, if `x` and `y` are adjacent.
pub fn direction_between(x: HexCoord, y: HexCoord) -> Option<Direction> {
    let (da, db) = (y.a - x.a, y.b - x.b);
    Direction::ALL
        .into_iter()
        .find(|d| d.delta() == (da, db))
}

/// A line color. Tiles use at most four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Yellow,
    Blue,
    Green,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::Red, Color::Yellow, Color::Blue, Color::Green];

    pub const fn code(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Yellow => 'y',
            Color::Blue => 'b',
            Color::Green => 'g',
        }
    }

    pub fn from_code(c: char) -> Option<Color> {
        match c {
            'r' => Some(Color::Red),
            'y' => Some(Color::Yellow),
            'b' => Some(Color::Blue),
            'g' => Some(Color::Green),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// The six edge colors of a tile read clockwise from edge 0.
///
/// Serializes as a 6-character string over `{r,y,b,g}`, e.g. `"yrrbby"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSequence([Color; 6]);

impl ColorSequence {
    pub const fn new(colors: [Color; 6]) -> Self {
        ColorSequence(colors)
    }

    /// Parse a 6-character color string.
    pub fn parse(s: &str) -> Option<ColorSequence> {
        let mut colors = [Color::Red; 6];
        let mut n = 0;
        for (i, ch) in s.chars().enumerate() {
            if i >= 6 {
                return None;
            }
            colors[i] = Color::from_code(ch)?;
            n += 1;
        }
        (n == 6).then_some(ColorSequence(colors))
    }

    pub const fn colors(&self) -> &[Color; 6] {
        &self.0
    }

    /// Color at edge `d`.
    pub fn at(&self, d: Direction) -> Color {
        self.0[d.index()]
    }

    /// Rotate the tile clockwise by `r` steps: the color formerly at edge
    /// `i` moves to edge `(i + r) mod 6`, so `out[i] = self[(i - r) mod 6]`.
    pub fn rotate(&self, r: usize) -> ColorSequence {
        assert!(r < 6, "rotation out of range: {r}");
        let mut out = [Color::Red; 6];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[(i + 6 - r) % 6];
        }
        ColorSequence(out)
    }

    /// Mirror across the vertical axis: edge `i` swaps with `(6 - i) mod 6`.
    pub fn mirrored(&self) -> ColorSequence {
        let mut out = [Color::Red; 6];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[(6 - i) % 6];
        }
        ColorSequence(out)
    }

    /// Whether the 2-character string `uv` occurs among the six clockwise
    /// windows `(i, i+1 mod 6)` of the sequence.
    pub fn contains_substring(&self, u: Color, v: Color) -> bool {
        (0..6).any(|i| self.0[i] == u && self.0[(i + 1) % 6] == v)
    }

    /// All six cyclic rotations with duplicates removed, in rotation order.
    pub fn distinct_rotations(&self) -> Vec<ColorSequence> {
        let mut out: Vec<ColorSequence> = Vec::with_capacity(6);
        for r in 0..6 {
            let s = self.rotate(r);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// Lexicographically smallest rotation; identifies the rotation orbit.
    pub fn canonical(&self) -> ColorSequence {
        (0..6).map(|r| self.rotate(r)).min().unwrap()
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> ColorSequence {
        ColorSequence::parse(s).unwrap()
    }

    #[test]
    fn neighbors_of_origin() {
        let n = HexCoord::new(0, 0).neighbors();
        let expected = [(0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)];
        for (got, (a, b)) in n.iter().zip(expected) {
            assert_eq!(*got, HexCoord::new(a, b));
        }
    }

    #[test]
    fn neighbors_translate() {
        let base = HexCoord::new(0, 0).neighbors();
        let moved = HexCoord::new(2, 3).neighbors();
        for (m, b) in moved.iter().zip(base) {
            assert_eq!(*m, b.offset(2, 3));
        }
    }

    #[test]
    fn neighbor_relation_matches_disjunction() {
        // Independent re-implementation of the four-clause neighbor
        // condition, checked against the offset table.
        let cond = |x: HexCoord, y: HexCoord| {
            let (a, b, c, d) = (x.a, x.b, y.a, y.b);
            (x != y)
                && ((a == c && (b - d).abs() == 1)
                    || ((a - c).abs() == 1 && b == d)
                    || (a - c == 1 && b - d == 1)
                    || (a - c == -1 && b - d == -1))
        };
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let x = HexCoord::new(0, 0);
                let y = HexCoord::new(a, b);
                assert_eq!(x.neighbors().contains(&y), cond(x, y), "y = {y}");
            }
        }
    }

    #[test]
    fn neighbor_symmetry() {
        let x = HexCoord::new(-1, -1);
        assert!(x.neighbors().contains(&HexCoord::new(0, 0)));
    }

    #[test]
    fn opposite_involution() {
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!(d.opposite().index(), (d.index() + 3) % 6);
            let (da, db) = d.delta();
            assert_eq!(d.opposite().delta(), (-da, -db));
        }
    }

    #[test]
    fn direction_between_adjacent() {
        let o = HexCoord::new(0, 0);
        assert_eq!(
            direction_between(o, HexCoord::new(0, 1)).unwrap().index(),
            0
        );
        assert_eq!(direction_between(o, HexCoord::new(5, 5)), None);
        let d = direction_between(o, HexCoord::new(-1, -1)).unwrap();
        assert_eq!(d.index(), 4);
        assert_eq!(d, Direction::from_index(1).unwrap().opposite());
    }

    #[test]
    fn direction_between_antisymmetric() {
        let x = HexCoord::new(3, -2);
        for d in Direction::ALL {
            let y = x.neighbor(d);
            assert_eq!(direction_between(x, y), Some(d));
            assert_eq!(direction_between(y, x), Some(d.opposite()));
        }
    }

    #[test]
    fn rotate_basics() {
        // Table of two-color orientations, tile 1: orientation 1 -> 2.
        assert_eq!(seq("bbrrrr").rotate(1), seq("rbbrrr"));
        assert_eq!(seq("yrrbby").rotate(0), seq("yrrbby"));
        // Tile 3 of the two-color set has period 3.
        assert_eq!(seq("brrbrr").rotate(3), seq("brrbrr"));
    }

    #[test]
    fn rotate_group_action() {
        let s = seq("rbryyb");
        for p in 0..6 {
            for q in 0..6 {
                assert_eq!(s.rotate(p).rotate(q), s.rotate((p + q) % 6));
            }
        }
    }

    #[test]
    fn rotate_preserves_color_multiset() {
        let s = seq("brbyyr");
        let mut base: Vec<Color> = s.colors().to_vec();
        base.sort();
        for r in 0..6 {
            let mut rot: Vec<Color> = s.rotate(r).colors().to_vec();
            rot.sort();
            assert_eq!(rot, base);
        }
    }

    #[test]
    fn mirror_involution_and_edge_map() {
        let s = seq("rbryyb");
        assert_eq!(s.mirrored().mirrored(), s);
        for d in Direction::ALL {
            assert_eq!(s.mirrored().at(d), s.at(d.mirrored()));
        }
    }

    #[test]
    fn substring_windows_are_cyclic() {
        let s = seq("yrrbby");
        assert!(s.contains_substring(Color::Yellow, Color::Red));
        // wrap-around window (5,0)
        assert!(s.contains_substring(Color::Yellow, Color::Yellow));
        assert!(!s.contains_substring(Color::Blue, Color::Red));
    }

    #[test]
    fn distinct_rotations_period() {
        assert_eq!(seq("brrbrr").distinct_rotations().len(), 3);
        assert_eq!(seq("bbbbbb").distinct_rotations().len(), 1);
        assert_eq!(seq("yrrbby").distinct_rotations().len(), 6);
    }
}
