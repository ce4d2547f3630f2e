//! Circuit-simulating subpuzzles: footprints with typed boundary ports and
//! a semantic contract, a verification harness that certifies each gadget
//! exhaustively, and a search-based synthesizer used to reconstruct tile
//! assignments from partial information.
//!
//! Truth values ride on edge colors: blue is true, red is false. A gadget
//! is accepted only by [`verify_gadget`]; the stored footprints are data,
//! the harness is the source of truth. Input ports are driven by
//! constraining the port edge's candidate domain directly, so verification
//! needs no auxiliary tiles.

use crate::hex::{Color, ColorSequence, Direction, HexCoord};
use crate::puzzle::{PuzzleError, PuzzleInstance};
use crate::solver::{enumerate_with_constraints, ColorSet, EdgeConstraint};
use crate::tiles::{tile_set, TileSet, TileType};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Truth encoding: blue is true, red is false.
pub fn color_to_bool(c: Color) -> Option<bool> {
    match c {
        Color::Blue => Some(true),
        Color::Red => Some(false),
        _ => None,
    }
}

pub fn bool_to_color(v: bool) -> Color {
    if v {
        Color::Blue
    } else {
        Color::Red
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortRole {
    Input,
    Output,
}

/// A boundary edge of the footprint carrying a truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Port {
    pub cell: HexCoord,
    pub edge: Direction,
    pub role: PortRole,
}

/// Required behavior for one combination of input values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractRow {
    pub inputs: Vec<Color>,
    pub expected_count: u64,
    /// Expected output colors in port order; `None` when the row only
    /// constrains the count (TEST rows and the free BOOL row).
    pub expected_outputs: Option<Vec<Color>>,
}

/// Truth table plus per-input solution count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contract {
    pub rows: Vec<ContractRow>,
    /// BOOL-style gadgets: the solutions' output tuples must cover blue
    /// and red exactly once each.
    pub free_output_cover: bool,
}

impl Contract {
    /// Unique solution per input tuple, outputs given by `f`.
    pub fn function(n_inputs: usize, n_outputs: usize, f: impl Fn(&[bool]) -> Vec<bool>) -> Contract {
        let mut rows = Vec::new();
        for bits in 0..(1u32 << n_inputs) {
            let inputs: Vec<bool> = (0..n_inputs).map(|i| bits & (1 << i) != 0).collect();
            let outputs = f(&inputs);
            assert_eq!(outputs.len(), n_outputs);
            rows.push(ContractRow {
                inputs: inputs.iter().map(|&v| bool_to_color(v)).collect(),
                expected_count: 1,
                expected_outputs: Some(outputs.iter().map(|&v| bool_to_color(v)).collect()),
            });
        }
        Contract {
            rows,
            free_output_cover: false,
        }
    }

    /// Zero inputs, exactly two solutions, output covering blue and red.
    pub fn free_boolean() -> Contract {
        Contract {
            rows: vec![ContractRow {
                inputs: vec![],
                expected_count: 2,
                expected_outputs: None,
            }],
            free_output_cover: true,
        }
    }

    /// Solvable (uniquely) only when the input is `accept`.
    pub fn test(accept: Color) -> Contract {
        let reject = if accept == Color::Blue {
            Color::Red
        } else {
            Color::Blue
        };
        Contract {
            rows: vec![
                ContractRow {
                    inputs: vec![accept],
                    expected_count: 1,
                    expected_outputs: None,
                },
                ContractRow {
                    inputs: vec![reject],
                    expected_count: 0,
                    expected_outputs: None,
                },
            ],
            free_output_cover: false,
        }
    }
}

/// A footprint of tile placements with typed ports and a contract.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub name: String,
    pub k: usize,
    pub footprint: BTreeMap<HexCoord, TileType>,
    pub ports: Vec<Port>,
    pub contract: Contract,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("no {0} gadget is catalogued for k={1}")]
    Uncatalogued(String, usize),
    #[error("stamping collision at {0}")]
    Collision(HexCoord),
    #[error(transparent)]
    Puzzle(#[from] PuzzleError),
    #[error("gadget file: {0}")]
    Format(String),
}

impl Gadget {
    pub fn input_ports(&self) -> impl Iterator<Item = &Port> {
        self.ports.iter().filter(|p| p.role == PortRole::Input)
    }

    pub fn output_ports(&self) -> impl Iterator<Item = &Port> {
        self.ports.iter().filter(|p| p.role == PortRole::Output)
    }

    /// Build the bare puzzle instance of this footprint.
    pub fn instance(&self) -> Result<PuzzleInstance, GadgetError> {
        let mut inst = PuzzleInstance::new(self.k)?;
        for (&c, t) in &self.footprint {
            inst.place(c, t.id)?;
        }
        Ok(inst)
    }

    /// Translate the footprint by `origin` and add it to `into`.
    /// Collisions are rejected naming the coordinate.
    pub fn stamp(&self, origin: HexCoord, into: &PuzzleInstance) -> Result<PuzzleInstance, GadgetError> {
        let mut out = into.clone();
        for (&c, t) in &self.footprint {
            let at = c.offset(origin.a, origin.b);
            if out.tile_at(at).is_some() {
                return Err(GadgetError::Collision(at));
            }
            out.place(at, t.id)?;
        }
        Ok(out)
    }

    /// Mirror image across the vertical axis: coordinates map by
    /// `(a, b) -> (-a, b - a)`, edges by `i -> (6 - i) mod 6`, and each
    /// tile becomes the catalogued tile with the reversed color sequence.
    pub fn mirrored(&self, name: &str) -> Gadget {
        let ts = tile_set(self.k).expect("valid k");
        let mirror = |c: HexCoord| HexCoord::new(-c.a, c.b - c.a);
        let footprint = self
            .footprint
            .iter()
            .map(|(&c, t)| (mirror(c), *ts.mirrored_tile(t)))
            .collect();
        let ports = self
            .ports
            .iter()
            .map(|p| Port {
                cell: mirror(p.cell),
                edge: p.edge.mirrored(),
                role: p.role,
            })
            .collect();
        Gadget {
            name: name.to_string(),
            k: self.k,
            footprint,
            ports,
            contract: self.contract.clone(),
        }
    }

    /// Translate all coordinates so the minimum `b` becomes 0 and the
    /// input ports' columns keep their relative offsets from zero.
    pub fn normalized(&self) -> Gadget {
        let min_b = self.footprint.keys().map(|c| c.b).min().unwrap_or(0);
        let shift = |c: HexCoord| HexCoord::new(c.a, c.b - min_b);
        Gadget {
            name: self.name.clone(),
            k: self.k,
            footprint: self.footprint.iter().map(|(&c, t)| (shift(c), *t)).collect(),
            ports: self
                .ports
                .iter()
                .map(|p| Port {
                    cell: shift(p.cell),
                    edge: p.edge,
                    role: p.role,
                })
                .collect(),
            contract: self.contract.clone(),
        }
    }

    /// Serialize to the gadget file format: the instance format preceded
    /// by a `ports:` section.
    pub fn serialize(&self) -> String {
        let mut out = format!("tantrix k={}\n", self.k);
        out.push_str("ports:\n");
        for p in &self.ports {
            let role = match p.role {
                PortRole::Input => "in",
                PortRole::Output => "out",
            };
            writeln!(out, "port {role} {} {} {}", p.cell.a, p.cell.b, p.edge).unwrap();
        }
        for (c, t) in &self.footprint {
            writeln!(out, "{} {} t{}", c.a, c.b, t.id).unwrap();
        }
        out
    }

    /// Parse a gadget file; the contract is supplied by the caller since
    /// it is determined by the gadget's role, not the data file.
    pub fn parse(name: &str, text: &str, contract: Contract) -> Result<Gadget, GadgetError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let bad = |line: usize, msg: String| GadgetError::Format(format!("line {line}: {msg}"));
        let (_, header) = lines
            .next()
            .ok_or_else(|| GadgetError::Format("empty gadget file".into()))?;
        let k = header
            .strip_prefix("tantrix k=")
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| bad(1, format!("expected `tantrix k=<k>`, got `{header}`")))?;
        let ts = tile_set(k).map_err(|e| GadgetError::Format(e.to_string()))?;
        let mut ports = Vec::new();
        let mut footprint = BTreeMap::new();
        let mut in_ports = false;
        for (no, line) in lines {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == "ports:" {
                in_ports = true;
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.first() == Some(&"port") {
                if !in_ports {
                    return Err(bad(no, "port line outside ports: section".into()));
                }
                if fields.len() != 5 {
                    return Err(bad(no, format!("expected `port in|out a b edge`, got `{line}`")));
                }
                let role = match fields[1] {
                    "in" => PortRole::Input,
                    "out" => PortRole::Output,
                    other => return Err(bad(no, format!("bad port role `{other}`"))),
                };
                let a: i64 = fields[2].parse().map_err(|_| bad(no, "bad coordinate".into()))?;
                let b: i64 = fields[3].parse().map_err(|_| bad(no, "bad coordinate".into()))?;
                let e: usize = fields[4].parse().map_err(|_| bad(no, "bad edge index".into()))?;
                let edge = Direction::from_index(e).ok_or_else(|| bad(no, "edge index out of range".into()))?;
                ports.push(Port {
                    cell: HexCoord::new(a, b),
                    edge,
                    role,
                });
                continue;
            }
            in_ports = false;
            if fields.len() != 3 {
                return Err(bad(no, format!("expected `a b t<id>`, got `{line}`")));
            }
            let a: i64 = fields[0].parse().map_err(|_| bad(no, "bad coordinate".into()))?;
            let b: i64 = fields[1].parse().map_err(|_| bad(no, "bad coordinate".into()))?;
            let id = fields[2]
                .strip_prefix('t')
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| bad(no, format!("expected tile id, got `{}`", fields[2])))?;
            let tile = *ts.tile(id).map_err(|e| bad(no, e.to_string()))?;
            if footprint.insert(HexCoord::new(a, b), tile).is_some() {
                return Err(bad(no, format!("duplicate coordinate ({a},{b})")));
            }
        }
        Ok(Gadget {
            name: name.to_string(),
            k,
            footprint,
            ports,
            contract,
        })
    }
}

/// Result of verifying one contract row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub inputs: Vec<Color>,
    pub expected_count: u64,
    pub observed_count: u64,
    pub expected_outputs: Option<Vec<Color>>,
    /// Output tuples observed across the enumerated solutions.
    pub observed_outputs: Vec<Vec<Color>>,
    pub pass: bool,
}

/// Per-input verification outcome; pass iff every row met its contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetReport {
    pub gadget: String,
    pub k: usize,
    pub rows: Vec<RowReport>,
    pub pass: bool,
}

impl GadgetReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} (k={}): {}\n",
            self.gadget,
            self.k,
            if self.pass { "PASS" } else { "FAIL" }
        );
        for r in &self.rows {
            let ins: String = r.inputs.iter().map(|c| c.code()).collect();
            let outs: Vec<String> = r
                .observed_outputs
                .iter()
                .map(|t| t.iter().map(|c| c.code()).collect())
                .collect();
            writeln!(
                out,
                "  in [{}] -> count {} (want {}), out [{}] {}",
                ins,
                r.observed_count,
                r.expected_count,
                outs.join(","),
                if r.pass { "ok" } else { "FAIL" }
            )
            .unwrap();
        }
        out
    }
}

/// Exhaustively check a gadget against its contract. For each input tuple
/// the footprint is solved with the input port edges constrained to the
/// tuple's colors; the row passes iff the solution count is exact and
/// every solution shows the contracted output colors. Only the generic
/// solver is used; no gadget-specific reasoning lives here.
pub fn verify_gadget(g: &Gadget) -> Result<GadgetReport, GadgetError> {
    let inst = g.instance()?;
    let inputs: Vec<&Port> = g.input_ports().collect();
    let outputs: Vec<&Port> = g.output_ports().collect();
    let mut rows = Vec::new();
    let mut all_output_tuples: Vec<Vec<Color>> = Vec::new();
    for row in &g.contract.rows {
        assert_eq!(row.inputs.len(), inputs.len(), "contract arity mismatch");
        let constraints: Vec<EdgeConstraint> = inputs
            .iter()
            .zip(&row.inputs)
            .map(|(p, &c)| EdgeConstraint {
                cell: p.cell,
                edge: p.edge,
                allowed: ColorSet::single(c),
            })
            .collect();
        let cap = (row.expected_count + 1) as usize;
        let (sols, _) = enumerate_with_constraints(&inst, &constraints, Some(cap));
        let observed_outputs: Vec<Vec<Color>> = sols
            .iter()
            .map(|s| {
                outputs
                    .iter()
                    .map(|p| s.sequence_at(p.cell).unwrap().at(p.edge))
                    .collect()
            })
            .collect();
        let count_ok = sols.len() as u64 == row.expected_count;
        let outputs_ok = match &row.expected_outputs {
            Some(want) => observed_outputs.iter().all(|got| got == want),
            None => true,
        };
        all_output_tuples.extend(observed_outputs.iter().cloned());
        rows.push(RowReport {
            inputs: row.inputs.clone(),
            expected_count: row.expected_count,
            observed_count: sols.len() as u64,
            expected_outputs: row.expected_outputs.clone(),
            observed_outputs,
            pass: count_ok && outputs_ok,
        });
    }
    let mut pass = rows.iter().all(|r| r.pass);
    if g.contract.free_output_cover {
        let mut tuples = all_output_tuples;
        tuples.sort();
        tuples.dedup();
        let mut want = vec![vec![Color::Blue], vec![Color::Red]];
        want.sort();
        pass &= tuples == want;
    }
    Ok(GadgetReport {
        gadget: g.name.clone(),
        k: g.k,
        rows,
        pass,
    })
}

/// Outcome of a synthesis search.
#[derive(Debug, Clone)]
pub enum SynthesisOutcome {
    Found(Gadget),
    /// The whole space was searched without success.
    Exhausted,
    /// The node budget ran out before the space was covered.
    BudgetExceeded,
}

/// Search for a tile assignment on `shape` extending `fixed` whose
/// verification passes the contract. Deterministic given the tile set's
/// catalog order. Free cells are filled in the given order; partial
/// assignments are pruned with arc-consistency over every contract row,
/// with undecided cells holding wildcard domains.
pub fn synthesize_gadget(
    shape: &[HexCoord],
    fixed: &BTreeMap<HexCoord, TileType>,
    ports: &[Port],
    contract: &Contract,
    ts: &TileSet,
    node_budget: u64,
) -> SynthesisOutcome {
    let free: Vec<HexCoord> = shape.iter().copied().filter(|c| !fixed.contains_key(c)).collect();
    let mut search = Synth::new(shape, ports, contract, ts, node_budget);
    let mut assignment = fixed.clone();
    let exhausted = search.dfs(&free, &mut assignment);
    match (search.result, exhausted) {
        (Some(g), _) => SynthesisOutcome::Found(g),
        (None, true) => SynthesisOutcome::Exhausted,
        (None, false) => SynthesisOutcome::BudgetExceeded,
    }
}

struct Synth<'a> {
    ts: &'a TileSet,
    shape: Vec<HexCoord>,
    ports: Vec<Port>,
    contract: &'a Contract,
    /// Bitmask over the tile set's orientation space, per catalogued tile.
    tile_masks: Vec<u128>,
    wildcard: u128,
    /// `support[dir][color]` over the orientation space.
    support: [[u128; 4]; 6],
    /// Per shape cell: (neighbor shape index, direction).
    neighbors: Vec<Vec<(usize, Direction)>>,
    /// Row-constant domain seeds: per contract row, per cell, the port
    /// forcing mask (all-ones where unconstrained).
    row_seeds: Vec<Vec<u128>>,
    /// Per row: (cell index, support mask) for each contracted output.
    row_out_checks: Vec<Vec<(usize, u128)>>,
    nodes: u64,
    budget: u64,
    result: Option<Gadget>,
}

fn seq_color_index(c: Color) -> usize {
    match c {
        Color::Red => 0,
        Color::Yellow => 1,
        Color::Blue => 2,
        Color::Green => 3,
    }
}

impl<'a> Synth<'a> {
    fn new(
        shape: &[HexCoord],
        ports: &[Port],
        contract: &'a Contract,
        ts: &'a TileSet,
        budget: u64,
    ) -> Synth<'a> {
        let mut all_seqs: Vec<ColorSequence> = ts
            .tiles
            .iter()
            .flat_map(|t| t.distinct_orientations())
            .collect();
        all_seqs.sort();
        all_seqs.dedup();
        assert!(all_seqs.len() <= 128, "orientation space exceeds mask width");
        let position = |s: &ColorSequence| all_seqs.binary_search(s).unwrap();
        let tile_masks: Vec<u128> = ts
            .tiles
            .iter()
            .map(|t| {
                t.distinct_orientations()
                    .iter()
                    .fold(0u128, |m, s| m | (1 << position(s)))
            })
            .collect();
        let wildcard = tile_masks.iter().fold(0u128, |a, b| a | b);
        let mut support = [[0u128; 4]; 6];
        for (i, s) in all_seqs.iter().enumerate() {
            for d in Direction::ALL {
                support[d.index()][seq_color_index(s.at(d))] |= 1 << i;
            }
        }
        let index: BTreeMap<HexCoord, usize> =
            shape.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let neighbors: Vec<Vec<(usize, Direction)>> = shape
            .iter()
            .map(|&c| {
                Direction::ALL
                    .into_iter()
                    .filter_map(|d| index.get(&c.neighbor(d)).map(|&j| (j, d)))
                    .collect()
            })
            .collect();
        let input_ports: Vec<&Port> = ports.iter().filter(|p| p.role == PortRole::Input).collect();
        let output_ports: Vec<&Port> = ports.iter().filter(|p| p.role == PortRole::Output).collect();
        let mut row_seeds = Vec::new();
        let mut row_out_checks = Vec::new();
        for row in &contract.rows {
            let mut seeds = vec![u128::MAX; shape.len()];
            for (p, &color) in input_ports.iter().zip(&row.inputs) {
                if let Some(&i) = index.get(&p.cell) {
                    seeds[i] &= support[p.edge.index()][seq_color_index(color)];
                }
            }
            row_seeds.push(seeds);
            let mut checks = Vec::new();
            if let Some(want) = &row.expected_outputs {
                for (p, &color) in output_ports.iter().zip(want) {
                    if let Some(&i) = index.get(&p.cell) {
                        checks.push((i, support[p.edge.index()][seq_color_index(color)]));
                    }
                }
            }
            row_out_checks.push(checks);
        }
        Synth {
            ts,
            shape: shape.to_vec(),
            ports: ports.to_vec(),
            contract,
            tile_masks,
            wildcard,
            support,
            neighbors,
            row_seeds,
            row_out_checks,
            nodes: 0,
            budget,
            result: None,
        }
    }

    /// Returns true when the subtree was fully explored.
    fn dfs(&mut self, free: &[HexCoord], assignment: &mut BTreeMap<HexCoord, TileType>) -> bool {
        if self.result.is_some() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if !self.feasible(assignment) {
            return true;
        }
        let Some((&cell, rest)) = free.split_first() else {
            let g = Gadget {
                name: "synthesized".into(),
                k: self.ts.k,
                footprint: assignment.clone(),
                ports: self.ports.clone(),
                contract: self.contract.clone(),
            };
            if verify_gadget(&g).map(|r| r.pass).unwrap_or(false) {
                self.result = Some(g);
            }
            return true;
        };
        let mut complete = true;
        for ti in 0..self.ts.tiles.len() {
            let tile = self.ts.tiles[ti];
            assignment.insert(cell, tile);
            complete &= self.dfs(rest, assignment);
            assignment.remove(&cell);
            if self.result.is_some() {
                return true;
            }
        }
        complete
    }

    fn feasible(&self, assignment: &BTreeMap<HexCoord, TileType>) -> bool {
        let base: Vec<u128> = self
            .shape
            .iter()
            .map(|c| match assignment.get(c) {
                Some(t) => self.tile_masks[t.id - 1],
                None => self.wildcard,
            })
            .collect();
        for (row, (seeds, out_checks)) in self
            .contract
            .rows
            .iter()
            .zip(self.row_seeds.iter().zip(&self.row_out_checks))
        {
            if row.expected_count == 0 {
                // emptiness is fine and over-solvability is caught at the leaf
                continue;
            }
            let mut domains: Vec<u128> = base.iter().zip(seeds).map(|(b, s)| b & s).collect();
            if !self.ac(&mut domains) {
                return false;
            }
            if out_checks.iter().any(|&(i, mask)| domains[i] & mask == 0) {
                return false;
            }
        }
        true
    }

    /// Arc consistency over bitmask domains; false on wipeout.
    fn ac(&self, domains: &mut [u128]) -> bool {
        let mut work: Vec<usize> = (0..domains.len()).collect();
        let mut queued = vec![true; domains.len()];
        while let Some(x) = work.pop() {
            queued[x] = false;
            if domains[x] == 0 {
                return false;
            }
            for &(y, d) in &self.neighbors[x] {
                let sup_x = &self.support[d.index()];
                let sup_y = &self.support[d.opposite().index()];
                let mut allowed = 0u128;
                for ci in 0..4 {
                    if domains[x] & sup_x[ci] != 0 {
                        allowed |= sup_y[ci];
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
}
