//! The fixed tile sets T1-T4: canonical color sequences, distinct
//! orientations, and the substring-occurrence table used by the gadget
//! case analyses.
//!
//! A tile has three lines, each connecting two edges. The four kinds are
//! distinguished by their chord structure:
//!
//! * `Rond` - three short arcs, edge pairs `(0,1) (2,3) (4,5)`
//! * `Brid` - a straight line and two short arcs, `(0,3) (1,2) (4,5)`
//! * `Chin` - a straight line and two long arcs, `(0,3) (1,5) (2,4)`
//! * `Sint` - a short arc and two crossing long arcs, `(0,2) (1,5) (3,4)`
//!
//! For tiles whose three lines have distinct colors the matching is
//! recoverable from the color sequence; for the one- and two-color sets the
//! kind is part of the published catalog and stored explicitly.

use crate::hex::{Color, ColorSequence};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    Rond,
    Brid,
    Chin,
    Sint,
}

impl TileKind {
    pub const ALL: [TileKind; 4] = [TileKind::Rond, TileKind::Brid, TileKind::Chin, TileKind::Sint];

    /// Canonical edge pairing of the three lines.
    pub const fn matching(self) -> [(usize, usize); 3] {
        match self {
            TileKind::Rond => [(0, 1), (2, 3), (4, 5)],
            TileKind::Brid => [(0, 3), (1, 2), (4, 5)],
            TileKind::Chin => [(0, 3), (1, 5), (2, 4)],
            TileKind::Sint => [(0, 2), (1, 5), (3, 4)],
        }
    }

    /// Whether some rotation of the canonical matching pairs equal colors
    /// in `seq`, i.e. the kind can realize the sequence.
    pub fn realizes(self, seq: &ColorSequence) -> bool {
        let colors = seq.colors();
        (0..6).any(|r| {
            self.matching()
                .iter()
                .all(|&(i, j)| colors[(i + r) % 6] == colors[(j + r) % 6])
        })
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TileKind::Rond => "Rond",
            TileKind::Brid => "Brid",
            TileKind::Chin => "Chin",
            TileKind::Sint => "Sint",
        };
        write!(f, "{s}")
    }
}

/// One catalogued tile: its 1-based index within its set, kind, and
/// canonical color sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TileType {
    pub id: usize,
    pub kind: TileKind,
    pub base_sequence: ColorSequence,
}

impl TileType {
    /// The cyclic rotations of the base sequence with duplicates removed,
    /// in rotation order. The length divides 6.
    pub fn distinct_orientations(&self) -> Vec<ColorSequence> {
        self.base_sequence.distinct_rotations()
    }
}

/// A complete tile set for `k` colors.
#[derive(Debug, Clone)]
pub struct TileSet {
    pub k: usize,
    pub palette: Vec<Color>,
    pub tiles: Vec<TileType>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("color count k must be in 1..=4, got {0}")]
    BadColorCount(usize),
    #[error("tile id t{0} is not in the {1}-color tile set")]
    UnknownTile(usize, usize),
}

impl TileSet {
    /// Look up a tile by its 1-based catalog id.
    pub fn tile(&self, id: usize) -> Result<&TileType, CatalogError> {
        self.tiles
            .iter()
            .find(|t| t.id == id)
            .ok_or(CatalogError::UnknownTile(id, self.k))
    }

    /// The tile (if any) whose rotation orbit contains `seq`.
    pub fn tile_with_sequence(&self, seq: &ColorSequence) -> Option<&TileType> {
        let canon = seq.canonical();
        self.tiles
            .iter()
            .find(|t| t.base_sequence.canonical() == canon)
    }

    /// The mirror image of a tile, which is again a tile of the same set.
    pub fn mirrored_tile(&self, tile: &TileType) -> &TileType {
        self.tile_with_sequence(&tile.base_sequence.mirrored())
            .expect("tile sets are closed under mirroring")
    }

    /// Occurrence matrix of 2-character substrings in the tiles' cyclic
    /// color sequences. Rows follow the published order: the `k` doubled
    /// letters first, then the ordered mixed pairs.
    pub fn substring_table(&self) -> SubstringTable {
        let pairs = substring_row_order(&self.palette);
        let mut rows = Vec::with_capacity(pairs.len());
        for (u, v) in &pairs {
            let row: Vec<bool> = self
                .tiles
                .iter()
                .map(|t| t.base_sequence.contains_substring(*u, *v))
                .collect();
            rows.push(row);
        }
        SubstringTable { pairs, rows }
    }
}

/// Row labels in catalog order: for the three-color palette this is
/// `bb rr yy br rb by yb ry yr`.
fn substring_row_order(palette: &[Color]) -> Vec<(Color, Color)> {
    use Color::*;
    let order = [Blue, Red, Yellow, Green];
    let pal: Vec<Color> = order.iter().copied().filter(|c| palette.contains(c)).collect();
    let mut pairs: Vec<(Color, Color)> = pal.iter().map(|&c| (c, c)).collect();
    for i in 0..pal.len() {
        for j in (i + 1)..pal.len() {
            pairs.push((pal[i], pal[j]));
            pairs.push((pal[j], pal[i]));
        }
    }
    pairs
}

/// Presence matrix of 2-character substrings per tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstringTable {
    pub pairs: Vec<(Color, Color)>,
    pub rows: Vec<Vec<bool>>,
}

impl SubstringTable {
    pub fn present(&self, u: Color, v: Color, tile_index: usize) -> bool {
        let row = self
            .pairs
            .iter()
            .position(|&(a, b)| (a, b) == (u, v))
            .expect("substring pair not in palette");
        self.rows[row][tile_index]
    }
}

fn seq(s: &str) -> ColorSequence {
    ColorSequence::parse(s).expect("catalog literal")
}

/// The catalogued tile set for `k` colors.
///
/// Palettes: T1 = {red}, T2 = {red, blue}, T3 = {red, yellow, blue},
/// T4 = all four. Cardinalities are 1, 8, 14, 56.
pub fn tile_set(k: usize) -> Result<TileSet, CatalogError> {
    use Color::*;
    use TileKind::*;
    let make = |entries: &[(TileKind, &str)]| -> Vec<TileType> {
        entries
            .iter()
            .enumerate()
            .map(|(i, (kind, s))| TileType {
                id: i + 1,
                kind: *kind,
                base_sequence: seq(s),
            })
            .collect()
    };
    let set = match k {
        1 => TileSet {
            k,
            palette: vec![Red],
            tiles: make(&[(Sint, "rrrrrr")]),
        },
        2 => TileSet {
            k,
            palette: vec![Red, Blue],
            tiles: make(&[
                (Rond, "bbrrrr"),
                (Rond, "rrbbbb"),
                (Brid, "brrbrr"),
                (Brid, "rbbrbb"),
                (Chin, "rbrrrb"),
                (Chin, "brbbbr"),
                (Sint, "bbbbbb"),
                (Sint, "rrrrrr"),
            ]),
        },
        3 => TileSet {
            k,
            palette: vec![Red, Yellow, Blue],
            tiles: make(&[
                (Rond, "yrrbby"),
                (Rond, "ryybbr"),
                (Brid, "yrrybb"),
                (Brid, "ryyrbb"),
                (Brid, "brrbyy"),
                (Chin, "yrbybr"),
                (Chin, "rbyryb"),
                (Chin, "brybyr"),
                (Sint, "brbyyr"),
                (Sint, "bybrry"),
                (Sint, "ryrbby"),
                (Sint, "rbryyb"),
                (Sint, "ybyrrb"),
                (Sint, "yrybbr"),
            ]),
        },
        4 => TileSet {
            k,
            palette: vec![Red, Yellow, Blue, Green],
            tiles: generate_distinct_line_tiles(&[Red, Yellow, Blue, Green]),
        },
        _ => return Err(CatalogError::BadColorCount(k)),
    };
    debug_assert!(set
        .tiles
        .iter()
        .all(|t| t.kind.realizes(&t.base_sequence)));
    Ok(set)
}

/// All tiles over the palette whose three lines carry distinct colors, one
/// representative per rotation orbit. With distinct line colors the chord
/// matching is recoverable from the sequence, so no two kinds produce the
/// same orbit and each orbit appears exactly once. Ordered by kind
/// (Rond, Brid, Chin, Sint), then by canonical sequence.
fn generate_distinct_line_tiles(palette: &[Color]) -> Vec<TileType> {
    let mut tiles: Vec<TileType> = Vec::new();
    for kind in TileKind::ALL {
        let mut orbit_reps: Vec<ColorSequence> = Vec::new();
        for &c0 in palette {
            for &c1 in palette {
                for &c2 in palette {
                    if c0 == c1 || c0 == c2 || c1 == c2 {
                        continue;
                    }
                    let mut colors = [Color::Red; 6];
                    for (line, &color) in kind.matching().iter().zip([c0, c1, c2].iter()) {
                        colors[line.0] = color;
                        colors[line.1] = color;
                    }
                    let canon = ColorSequence::new(colors).canonical();
                    if !orbit_reps.contains(&canon) {
                        orbit_reps.push(canon);
                    }
                }
            }
        }
        orbit_reps.sort();
        for rep in orbit_reps {
            tiles.push(TileType {
                id: tiles.len() + 1,
                kind,
                base_sequence: rep,
            });
        }
    }
    tiles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hex::Color::*;

    #[test]
    fn cardinalities() {
        assert_eq!(tile_set(1).unwrap().tiles.len(), 1);
        assert_eq!(tile_set(2).unwrap().tiles.len(), 8);
        assert_eq!(tile_set(3).unwrap().tiles.len(), 14);
        assert_eq!(tile_set(4).unwrap().tiles.len(), 56);
        assert!(tile_set(0).is_err());
        assert!(tile_set(5).is_err());
    }

    #[test]
    fn catalog_entries_match_published_tables() {
        let t2 = tile_set(2).unwrap();
        assert_eq!(t2.tile(1).unwrap().base_sequence, seq("bbrrrr"));
        assert_eq!(t2.tile(5).unwrap().base_sequence, seq("rbrrrb"));
        assert_eq!(t2.tile(5).unwrap().kind, TileKind::Chin);
        assert_eq!(t2.tile(8).unwrap().base_sequence, seq("rrrrrr"));
        let t3 = tile_set(3).unwrap();
        assert_eq!(t3.tile(1).unwrap().base_sequence, seq("yrrbby"));
        assert_eq!(t3.tile(9).unwrap().base_sequence, seq("brbyyr"));
        assert_eq!(t3.tile(9).unwrap().kind, TileKind::Sint);
        assert_eq!(t3.tile(14).unwrap().base_sequence, seq("yrybbr"));
        assert!(t3.tile(15).is_err());
    }

    #[test]
    fn orientation_counts() {
        let t2 = tile_set(2).unwrap();
        assert_eq!(
            t2.tile(3)
                .unwrap()
                .distinct_orientations()
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>(),
            ["brrbrr", "rbrrbr", "rrbrrb"]
        );
        assert_eq!(t2.tile(7).unwrap().distinct_orientations().len(), 1);
        let t3 = tile_set(3).unwrap();
        for t in &t3.tiles {
            assert_eq!(t.distinct_orientations().len(), 6, "t{}", t.id);
        }
    }

    #[test]
    fn distinct_color_rule() {
        // Every T3/T4 tile uses exactly three distinct colors.
        for k in [3, 4] {
            for t in &tile_set(k).unwrap().tiles {
                let mut cs: Vec<Color> = t.base_sequence.colors().to_vec();
                cs.sort();
                cs.dedup();
                assert_eq!(cs.len(), 3, "k={k} t{}", t.id);
            }
        }
    }

    #[test]
    fn no_shared_orbits_within_a_set() {
        for k in 1..=4 {
            let ts = tile_set(k).unwrap();
            let mut canons: Vec<ColorSequence> =
                ts.tiles.iter().map(|t| t.base_sequence.canonical()).collect();
            canons.sort();
            canons.dedup();
            assert_eq!(canons.len(), ts.tiles.len(), "k={k}");
        }
    }

    #[test]
    fn generator_reproduces_t3_orbits() {
        let generated = generate_distinct_line_tiles(&[Red, Yellow, Blue]);
        let t3 = tile_set(3).unwrap();
        assert_eq!(generated.len(), 14);
        for t in &t3.tiles {
            let canon = t.base_sequence.canonical();
            let g = generated
                .iter()
                .find(|g| g.base_sequence == canon)
                .unwrap_or_else(|| panic!("t{} missing from generated set", t.id));
            assert_eq!(g.kind, t.kind, "t{}", t.id);
        }
    }

    #[test]
    fn substring_table_spot_checks() {
        let t3 = tile_set(3).unwrap();
        let table = t3.substring_table();
        assert!(table.present(Blue, Blue, 0)); // t1
        assert!(!table.present(Blue, Blue, 4)); // t5
        assert!(!table.present(Red, Red, 13)); // t14
        let t2 = tile_set(2).unwrap();
        let table2 = t2.substring_table();
        // the all-blue tile contains bb only
        for (i, &(u, v)) in table2.pairs.clone().iter().enumerate() {
            let expect = (u, v) == (Blue, Blue);
            assert_eq!(table2.rows[i][6], expect);
        }
    }

    #[test]
    fn mirroring_stays_in_set() {
        for k in 1..=4 {
            let ts = tile_set(k).unwrap();
            for t in &ts.tiles {
                let m = ts.mirrored_tile(t);
                assert_eq!(m.kind, t.kind, "k={k} t{}", t.id);
            }
        }
    }

    #[test]
    fn kind_consistency() {
        for k in 1..=4 {
            for t in &tile_set(k).unwrap().tiles {
                assert!(t.kind.realizes(&t.base_sequence), "k={k} t{}", t.id);
            }
        }
    }
}
