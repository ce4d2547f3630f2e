//! Boolean circuits as straight-line AND/NOT programs, CNF input,
//! brute-force model counting, and the lowering of circuits onto parallel
//! tracks with explicit fan-out, track shifts, and crossings.
//!
//! The layered form is the compiler's input: a sequence of rows, each
//! applying one primitive to one track (or an adjacent pair), with values
//! flowing upward on vertical tracks. Crossings become `Cross` rows for
//! the three-color pipeline; the two-color pipeline has no crossing
//! primitive and instead expands each exchange into a planar AND/NOT
//! sub-circuit built from three exclusive-or blocks.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("instruction {0} references a later or missing value")]
    BadReference(usize),
    #[error("the first {0} instructions must be the inputs")]
    BadInputPrefix(usize),
    #[error("assignment length {got} does not match input count {want}")]
    AssignmentLength { got: usize, want: usize },
    #[error("{0} inputs exceed the brute-force bound of 30")]
    TooManyInputs(usize),
    #[error("formula must have at least one variable")]
    NoVariables,
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("literal {lit} out of range for {n} variables")]
    LiteralRange { lit: i64, n: usize },
}

/// CNF formula: clauses of nonzero signed 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub n_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self, CircuitError> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CircuitError::EmptyClause(i + 1));
            }
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > n_vars {
                    return Err(CircuitError::LiteralRange { lit, n: n_vars });
                }
            }
        }
        Ok(CnfFormula { n_vars, clauses })
    }

    /// Parse DIMACS text: `p cnf <vars> <clauses>` then zero-terminated
    /// clauses; `c` lines are comments.
    pub fn parse_dimacs(text: &str) -> Result<Self, CircuitError> {
        let mut n_vars: Option<usize> = None;
        let mut declared = 0usize;
        let mut clauses: Vec<Vec<i64>> = Vec::new();
        let mut current: Vec<i64> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: String| CircuitError::Dimacs { line: no + 1, msg };
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if n_vars.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(err(format!("expected `p cnf <vars> <clauses>`, got `{line}`")));
                }
                n_vars = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| err("bad variable count".into()))?,
                );
                declared = fields[2]
                    .parse()
                    .map_err(|_| err("bad clause count".into()))?;
                continue;
            }
            if n_vars.is_none() {
                return Err(err("clause before problem line".into()));
            }
            for tok in line.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| err(format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    if current.is_empty() {
                        return Err(err("empty clause".into()));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let n = n_vars.ok_or(CircuitError::Dimacs {
            line: 1,
            msg: "missing problem line".into(),
        })?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if declared != clauses.len() {
            return Err(CircuitError::Dimacs {
                line: 1,
                msg: format!("declared {declared} clauses, found {}", clauses.len()),
            });
        }
        CnfFormula::new(n, clauses)
    }

    pub fn serialize_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = assignment[(lit.unsigned_abs() as usize) - 1];
                if lit > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// One computation step of a straight-line program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instr {
    Input,
    Not(usize),
    And(usize, usize),
}

/// A boolean circuit over AND and NOT: the first `n_inputs` instructions
/// are the inputs, every reference points strictly earlier, and the last
/// instruction is the designated output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub n_inputs: usize,
    pub instrs: Vec<Instr>,
}

impl Circuit {
    pub fn new(n_inputs: usize, instrs: Vec<Instr>) -> Result<Self, CircuitError> {
        if instrs.len() < n_inputs || instrs[..n_inputs].iter().any(|i| *i != Instr::Input) {
            return Err(CircuitError::BadInputPrefix(n_inputs));
        }
        for (i, instr) in instrs.iter().enumerate() {
            match *instr {
                Instr::Input => {
                    if i >= n_inputs {
                        return Err(CircuitError::BadInputPrefix(n_inputs));
                    }
                }
                Instr::Not(j) => {
                    if j >= i {
                        return Err(CircuitError::BadReference(i));
                    }
                }
                Instr::And(j, k) => {
                    if j > k || k >= i {
                        return Err(CircuitError::BadReference(i));
                    }
                }
            }
        }
        Ok(Circuit { n_inputs, instrs })
    }

    pub fn output(&self) -> usize {
        self.instrs.len() - 1
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool, CircuitError> {
        if assignment.len() != self.n_inputs {
            return Err(CircuitError::AssignmentLength {
                got: assignment.len(),
                want: self.n_inputs,
            });
        }
        let mut values: Vec<bool> = Vec::with_capacity(self.instrs.len());
        for (i, instr) in self.instrs.iter().enumerate() {
            let v = match *instr {
                Instr::Input => assignment[i],
                Instr::Not(j) => !values[j],
                Instr::And(j, k) => values[j] && values[k],
            };
            values.push(v);
        }
        Ok(values[self.output()])
    }

    /// Brute-force satisfying-assignment count; a desk-scale oracle only.
    pub fn count_sat(&self) -> Result<u64, CircuitError> {
        if self.n_inputs > 30 {
            return Err(CircuitError::TooManyInputs(self.n_inputs));
        }
        let mut count = 0;
        let mut assignment = vec![false; self.n_inputs];
        for bits in 0u64..(1 << self.n_inputs) {
            for (i, slot) in assignment.iter_mut().enumerate() {
                *slot = bits & (1 << i) != 0;
            }
            if self.evaluate(&assignment)? {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Translate a CNF formula to an AND/NOT circuit computing it, variable
/// for variable: the satisfying-assignment sets are literally identical.
/// Disjunction is expressed through De Morgan's law.
pub fn cnf_to_circuit(f: &CnfFormula) -> Result<Circuit, CircuitError> {
    if f.n_vars == 0 {
        return Err(CircuitError::NoVariables);
    }
    let n = f.n_vars;
    let mut instrs: Vec<Instr> = vec![Instr::Input; n];
    let push = |instrs: &mut Vec<Instr>, i: Instr| -> usize {
        instrs.push(i);
        instrs.len() - 1
    };
    let mut clause_vals: Vec<usize> = Vec::new();
    for clause in &f.clauses {
        // ¬(¬l1 ∧ ¬l2 ∧ ...)
        let mut acc: Option<usize> = None;
        for &lit in clause {
            let var = (lit.unsigned_abs() as usize) - 1;
            let negated = if lit > 0 {
                push(&mut instrs, Instr::Not(var))
            } else {
                var
            };
            acc = Some(match acc {
                None => negated,
                Some(a) => {
                    let (lo, hi) = (a.min(negated), a.max(negated));
                    push(&mut instrs, Instr::And(lo, hi))
                }
            });
        }
        let clause_val = push(&mut instrs, Instr::Not(acc.unwrap()));
        clause_vals.push(clause_val);
    }
    match clause_vals.len() {
        0 => {
            // no clauses: every assignment satisfies; x1 ∨ ¬x1
            let nx = push(&mut instrs, Instr::Not(0));
            let both = push(&mut instrs, Instr::And(0, nx));
            push(&mut instrs, Instr::Not(both));
        }
        1 => {
            // ensure the clause value is the final instruction
            if *clause_vals.last().unwrap() != instrs.len() - 1 {
                let v = clause_vals[0];
                let nn = push(&mut instrs, Instr::Not(v));
                push(&mut instrs, Instr::Not(nn));
            }
        }
        _ => {
            let mut acc = clause_vals[0];
            for &c in &clause_vals[1..] {
                let (lo, hi) = (acc.min(c), acc.max(c));
                acc = push(&mut instrs, Instr::And(lo, hi));
            }
        }
    }
    Circuit::new(n, instrs)
}

/// One primitive applied by a layered row; all other tracks pass through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOp {
    /// Negate the value on this track.
    Not(usize),
    /// Conjoin tracks `(t, t+1)`; the result lands on `t`, `t+1` empties.
    And(usize),
    /// Duplicate track `t` onto the empty track `t+1`.
    Copy(usize),
    /// Move the value from `t` to the empty track `t-1`.
    MoveL(usize),
    /// Move the value from `t` to the empty track `t+1`.
    MoveR(usize),
    /// Exchange the values on tracks `(t, t+1)`. Three-color rows only.
    Cross(usize),
}

/// A circuit lowered onto vertical tracks.
#[derive(Debug, Clone)]
pub struct LayeredCircuit {
    pub k: usize,
    pub n_inputs: usize,
    pub n_tracks: usize,
    /// Track of each input's source, in input order.
    pub input_tracks: Vec<usize>,
    /// Inputs whose value is never read; their sources still count, but
    /// no wire is extended above them.
    pub unused_inputs: Vec<bool>,
    pub rows: Vec<RowOp>,
    pub output_track: usize,
}

impl LayeredCircuit {
    /// Simulate the rows on a boolean assignment. Occupancy violations
    /// are reported as errors since they indicate a lowering bug.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool, CircuitError> {
        if assignment.len() != self.n_inputs {
            return Err(CircuitError::AssignmentLength {
                got: assignment.len(),
                want: self.n_inputs,
            });
        }
        let mut state: Vec<Option<bool>> = vec![None; self.n_tracks];
        for (i, &t) in self.input_tracks.iter().enumerate() {
            if !self.unused_inputs[i] {
                state[t] = Some(assignment[i]);
            }
        }
        let bug = |row: usize| CircuitError::Dimacs {
            line: row,
            msg: "row applied to tracks in the wrong occupancy state".into(),
        };
        for (no, op) in self.rows.iter().enumerate() {
            match *op {
                RowOp::Not(t) => {
                    let v = state[t].ok_or(bug(no))?;
                    state[t] = Some(!v);
                }
                RowOp::And(t) => {
                    let a = state[t].ok_or(bug(no))?;
                    let b = state[t + 1].ok_or(bug(no))?;
                    state[t] = Some(a && b);
                    state[t + 1] = None;
                }
                RowOp::Copy(t) => {
                    let v = state[t].ok_or(bug(no))?;
                    if state[t + 1].is_some() {
                        return Err(bug(no));
                    }
                    state[t + 1] = Some(v);
                }
                RowOp::MoveL(t) => {
                    let v = state[t].ok_or(bug(no))?;
                    if state[t - 1].is_some() {
                        return Err(bug(no));
                    }
                    state[t - 1] = Some(v);
                    state[t] = None;
                }
                RowOp::MoveR(t) => {
                    let v = state[t].ok_or(bug(no))?;
                    if state[t + 1].is_some() {
                        return Err(bug(no));
                    }
                    state[t + 1] = Some(v);
                    state[t] = None;
                }
                RowOp::Cross(t) => {
                    let a = state[t].ok_or(bug(no))?;
                    let b = state[t + 1].ok_or(bug(no))?;
                    state[t] = Some(b);
                    state[t + 1] = Some(a);
                }
            }
        }
        state[self.output_track].ok_or(bug(self.rows.len()))
    }
}

/// Values sit on slots spaced four tracks apart, leaving scratch tracks
/// for copies, gathers, and exchanges.
const SLOT_STRIDE: usize = 4;

fn slot_track(s: usize) -> usize {
    SLOT_STRIDE * s + 1
}

struct Lowering {
    k: usize,
    rows: Vec<RowOp>,
    /// Live circuit value per slot.
    slots: Vec<Option<usize>>,
    /// Remaining consumptions per circuit value.
    uses: Vec<usize>,
}

impl Lowering {
    fn slot_of(&self, value: usize) -> usize {
        self.slots
            .iter()
            .position(|v| *v == Some(value))
            .expect("value must be live")
    }

    fn free_slot_right_of(&mut self, s: usize) {
        // shift every live value in slots > s one slot right, rightmost
        // first; pure moves, nothing crosses anything
        if s + 1 >= self.slots.len() {
            self.slots.resize(s + 2, None);
            return;
        }
        if self.slots[s + 1].is_none() {
            return;
        }
        self.slots.push(None);
        let last = self.slots.len() - 1;
        for i in (s + 1..last).rev() {
            if self.slots[i].is_some() {
                let from = slot_track(i);
                for t in from..slot_track(i + 1) {
                    self.rows.push(RowOp::MoveR(t));
                }
                self.slots[i + 1] = self.slots[i].take();
            }
        }
    }

    /// Duplicate the value at slot `s` into slot `s+1`.
    fn copy_at(&mut self, s: usize) {
        self.free_slot_right_of(s);
        let t = slot_track(s);
        self.rows.push(RowOp::Copy(t));
        for step in t + 1..slot_track(s + 1) {
            self.rows.push(RowOp::MoveR(step));
        }
        self.slots[s + 1] = self.slots[s];
    }

    /// Exchange the values on slots `s` and `s+1`.
    fn swap_slots(&mut self, s: usize) {
        let q = slot_track(s);
        if self.k == 3 {
            self.rows.push(RowOp::MoveL(q + 4));
            self.rows.push(RowOp::MoveL(q + 3));
            self.rows.push(RowOp::MoveL(q + 2));
            self.rows.push(RowOp::Cross(q));
            self.rows.push(RowOp::MoveR(q + 1));
            self.rows.push(RowOp::MoveR(q + 2));
            self.rows.push(RowOp::MoveR(q + 3));
        } else {
            self.two_color_swap(q);
        }
        self.slots.swap(s, s + 1);
    }

    /// The planar AND/NOT exchange: three exclusive-or blocks, each built
    /// from four conjunctions with explicit fan-out. Works entirely inside
    /// the window `q..=q+5`, with the operands entering at `q` and `q+4`.
    fn two_color_swap(&mut self, q: usize) {
        use RowOp::*;
        let r = &mut self.rows;
        // bring the right operand to q+2
        r.push(MoveL(q + 4));
        r.push(MoveL(q + 3));
        // x1 = a xor b at q+1, preserving b at q+4
        r.extend(xor_preserving_right(q));
        // b1 = b xor x1 = a at q+3, preserving x1 at q+1
        r.extend(xor_preserving_left(q + 1));
        // x2 = x1 xor b1 = b at q+1, preserving b1 at q+4
        r.push(MoveL(q + 1));
        r.push(MoveL(q + 3));
        r.extend(xor_preserving_right(q));
        // home the left result; the right one is already at q+4
        r.push(MoveL(q + 1));
    }

    /// Bring the values at slots `sl < sr` next to each other and conjoin;
    /// the result lands on slot `sl` and `sr` empties.
    fn and_slots(&mut self, sl: usize, sr: usize) {
        // walk the right operand leftward: empty slots are crossed with
        // moves, live slots are exchanged
        let mut s = sr;
        while s > sl + 1 {
            if self.slots[s - 1].is_none() {
                let from = slot_track(s);
                for t in ((slot_track(s - 1))..from).rev() {
                    self.rows.push(RowOp::MoveL(t + 1));
                    let _ = t;
                }
                self.slots[s - 1] = self.slots[s].take();
                s -= 1;
            } else {
                self.swap_slots(s - 1);
                s -= 1;
            }
        }
        // adjacent slots: close the 4-track gap and conjoin
        let q = slot_track(sl);
        self.rows.push(RowOp::MoveL(q + 4));
        self.rows.push(RowOp::MoveL(q + 3));
        self.rows.push(RowOp::MoveL(q + 2));
        self.rows.push(RowOp::And(q));
        self.slots[sl + 1] = None;
    }

    /// Account one consumption of `value`; duplicates it first when more
    /// consumers follow. Returns the slot holding the copy to consume.
    fn consume(&mut self, value: usize) -> usize {
        let s = self.slot_of(value);
        self.uses[value] -= 1;
        if self.uses[value] > 0 {
            self.copy_at(s);
            return s + 1;
        }
        s
    }
}

/// Emit the 13 rows computing `u xor v` with `u` at `a`, `v` at `a+2`:
/// the result lands on `a+1` and a preserved copy of `v` on `a+4`.
fn xor_preserving_right(a: usize) -> Vec<RowOp> {
    use RowOp::*;
    vec![
        Copy(a + 2),
        Copy(a + 3),
        Copy(a),
        And(a + 1),  // u ∧ v
        Not(a + 1),  // c1 = nand(u, v)
        Copy(a + 1),
        And(a),      // u ∧ c1
        Not(a),      // c2 = ¬u ∨ v
        And(a + 2),  // c1 ∧ v
        Not(a + 2),  // c3 = u ∨ ¬v
        MoveR(a),
        And(a + 1),  // c2 ∧ c3 = xnor
        Not(a + 1),
    ]
}

/// Emit the 13 rows computing `u xor v` with `u` at `a`, `v` at `a+3`:
/// the result lands on `a+2` and `u` itself survives at `a`.
fn xor_preserving_left(a: usize) -> Vec<RowOp> {
    use RowOp::*;
    vec![
        Copy(a + 3),
        Copy(a),
        Copy(a + 1),
        And(a + 2),  // u ∧ v
        Not(a + 2),  // c1
        Copy(a + 2),
        And(a + 1),  // u ∧ c1
        Not(a + 1),  // c2
        And(a + 3),  // c1 ∧ v
        Not(a + 3),  // c3
        MoveR(a + 1),
        And(a + 2),  // xnor
        Not(a + 2),
    ]
}

/// Lower a circuit onto tracks for the `k`-color pipeline.
///
/// Inputs occupy slots left to right; each instruction is scheduled in
/// order, operands gathered to adjacency, and a gate's output takes the
/// leftmost operand's slot. Instructions whose value is never read are
/// dropped before layout; unread inputs stay as sources with nothing
/// above them.
pub fn layerize(c: &Circuit, k: usize) -> Result<LayeredCircuit, CircuitError> {
    assert!(k == 2 || k == 3, "pipelines exist for k = 2 and k = 3");
    let n = c.n_inputs;
    let output = c.output();
    // backward liveness: which instructions feed the output
    let mut live = vec![false; c.instrs.len()];
    live[output] = true;
    for i in (0..c.instrs.len()).rev() {
        if !live[i] {
            continue;
        }
        match c.instrs[i] {
            Instr::Input => {}
            Instr::Not(j) => live[j] = true,
            Instr::And(j, l) => {
                live[j] = true;
                live[l] = true;
            }
        }
    }
    // consumption counts among live instructions
    let mut uses = vec![0usize; c.instrs.len()];
    for (i, instr) in c.instrs.iter().enumerate() {
        if !live[i] {
            continue;
        }
        match *instr {
            Instr::Input => {}
            Instr::Not(j) => uses[j] += 1,
            Instr::And(j, l) => {
                uses[j] += 1;
                uses[l] += 1;
            }
        }
    }
    uses[output] += 1; // the test harness reads it

    let mut low = Lowering {
        k,
        rows: Vec::new(),
        slots: (0..n).map(|i| live[i].then_some(i)).collect(),
        uses,
    };
    for (i, instr) in c.instrs.iter().enumerate().skip(n) {
        if !live[i] {
            continue;
        }
        match *instr {
            Instr::Input => unreachable!("inputs form the prefix"),
            Instr::Not(j) => {
                let s = low.consume(j);
                low.rows.push(RowOp::Not(slot_track(s)));
                low.slots[s] = Some(i);
            }
            Instr::And(j, l) => {
                let (sj, sl) = if j == l {
                    let s = low.consume(j);
                    let s2 = low.consume(j);
                    (s.min(s2), s.max(s2))
                } else {
                    let sj = low.consume(j);
                    let sl = low.consume(l);
                    (sj.min(sl), sj.max(sl))
                };
                low.and_slots(sj, sl);
                low.slots[sj] = Some(i);
            }
        }
    }
    let out_slot = low.slot_of(output);
    let n_tracks = slot_track(low.slots.len()) + 2;
    Ok(LayeredCircuit {
        k,
        n_inputs: n,
        n_tracks,
        input_tracks: (0..n).map(slot_track).collect(),
        unused_inputs: (0..n).map(|i| !live[i]).collect(),
        rows: low.rows,
        output_track: slot_track(out_slot),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::new(n, clauses.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn dimacs_roundtrip() {
        let text = "c example\np cnf 3 2\n1 -2 0\n2 3 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.n_vars, 3);
        assert_eq!(f.clauses, vec![vec![1, -2], vec![2, 3]]);
        let f2 = CnfFormula::parse_dimacs(&f.serialize_dimacs()).unwrap();
        assert_eq!(f, f2);
    }

    #[test]
    fn dimacs_errors() {
        assert!(CnfFormula::parse_dimacs("1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 1 1\n5 0\n").is_err());
    }

    #[test]
    fn circuit_validation() {
        assert!(Circuit::new(1, vec![Instr::Input, Instr::Not(0)]).is_ok());
        assert!(Circuit::new(1, vec![Instr::Not(0)]).is_err());
        assert!(Circuit::new(1, vec![Instr::Input, Instr::And(1, 0)]).is_err());
        assert!(Circuit::new(2, vec![Instr::Input, Instr::Input, Instr::And(1, 0)]).is_err());
    }

    #[test]
    fn evaluate_gates() {
        let c = Circuit::new(2, vec![Instr::Input, Instr::Input, Instr::And(0, 1)]).unwrap();
        assert!(c.evaluate(&[true, true]).unwrap());
        assert!(!c.evaluate(&[true, false]).unwrap());
        let c = Circuit::new(1, vec![Instr::Input, Instr::Not(0)]).unwrap();
        assert!(!c.evaluate(&[true]).unwrap());
        // double negation
        let c = Circuit::new(1, vec![Instr::Input, Instr::Not(0), Instr::Not(1)]).unwrap();
        for v in [false, true] {
            assert_eq!(c.evaluate(&[v]).unwrap(), v);
        }
        assert!(c.evaluate(&[true, false]).is_err());
    }

    #[test]
    fn count_sat_basics() {
        // tautology x ∨ ¬x
        let f = cnf(1, &[&[1, -1]]);
        assert_eq!(cnf_to_circuit(&f).unwrap().count_sat().unwrap(), 2);
        // contradiction x ∧ ¬x
        let f = cnf(1, &[&[1], &[-1]]);
        assert_eq!(cnf_to_circuit(&f).unwrap().count_sat().unwrap(), 0);
        // three independent inputs conjoined
        let f = cnf(3, &[&[1], &[2], &[3]]);
        assert_eq!(cnf_to_circuit(&f).unwrap().count_sat().unwrap(), 1);
        // x1 ∨ x2 has three models
        let f = cnf(2, &[&[1, 2]]);
        assert_eq!(cnf_to_circuit(&f).unwrap().count_sat().unwrap(), 3);
    }

    #[test]
    fn cnf_to_circuit_preserves_models_exactly() {
        // every assignment agrees between clause evaluation and circuit
        let formulas = [
            cnf(1, &[&[1]]),
            cnf(2, &[&[1, 2]]),
            cnf(3, &[&[1, -2], &[2, 3], &[-1, -3]]),
            cnf(4, &[&[1, 2, 3], &[-2, -3, 4], &[1, -4]]),
            cnf(2, &[]),
        ];
        for f in &formulas {
            let c = cnf_to_circuit(f).unwrap();
            assert_eq!(c.n_inputs, f.n_vars);
            for bits in 0u32..(1 << f.n_vars) {
                let a: Vec<bool> = (0..f.n_vars).map(|i| bits & (1 << i) != 0).collect();
                assert_eq!(c.evaluate(&a).unwrap(), f.evaluate(&a), "{f:?} {a:?}");
            }
        }
    }

    fn check_layered(c: &Circuit, k: usize) {
        let lc = layerize(c, k).unwrap();
        for bits in 0u32..(1 << c.n_inputs) {
            let a: Vec<bool> = (0..c.n_inputs).map(|i| bits & (1 << i) != 0).collect();
            assert_eq!(
                lc.evaluate(&a).unwrap(),
                c.evaluate(&a).unwrap(),
                "k={k} assignment {a:?}"
            );
        }
    }

    #[test]
    fn layered_matches_source_on_small_circuits() {
        let samples = [
            cnf(1, &[&[1]]),
            cnf(1, &[&[-1]]),
            cnf(2, &[&[1, 2]]),
            cnf(2, &[&[1], &[2]]),
            cnf(3, &[&[1, 3]]),
            cnf(3, &[&[1, -2], &[2, 3], &[-1, -3]]),
            cnf(4, &[&[1, 2, 3], &[-2, -3, 4], &[1, -4], &[4]]),
            cnf(5, &[&[1, 4], &[2, -5], &[-3, 5], &[3]]),
        ];
        for f in &samples {
            let c = cnf_to_circuit(f).unwrap();
            check_layered(&c, 2);
            check_layered(&c, 3);
        }
    }

    #[test]
    fn layered_handles_distant_operands_and_reuse() {
        // And(x1, x3) with x2 in between, x1 reused afterwards
        let c = Circuit::new(
            3,
            vec![
                Instr::Input,
                Instr::Input,
                Instr::Input,
                Instr::And(0, 2),
                Instr::And(0, 1),
                Instr::And(3, 4),
            ],
        )
        .unwrap();
        check_layered(&c, 2);
        check_layered(&c, 3);
        // squaring a value: And(j, j)
        let c = Circuit::new(1, vec![Instr::Input, Instr::And(0, 0)]).unwrap();
        check_layered(&c, 2);
        check_layered(&c, 3);
    }

    #[test]
    fn unused_inputs_are_sources_without_wires() {
        // output = x2; x1 unused
        let f = cnf(2, &[&[2]]);
        let c = cnf_to_circuit(&f).unwrap();
        let lc = layerize(&c, 3).unwrap();
        assert!(lc.unused_inputs[0]);
        assert!(!lc.unused_inputs[1]);
        check_layered(&c, 3);
    }

    #[test]
    fn no_crossings_without_need() {
        // straight chain: no Cross rows expected
        let f = cnf(2, &[&[1], &[2]]);
        let c = cnf_to_circuit(&f).unwrap();
        let lc = layerize(&c, 3).unwrap();
        assert!(lc.rows.iter().all(|r| !matches!(r, RowOp::Cross(_))));
    }

    #[test]
    fn two_color_swap_template_swaps() {
        // run the raw template on all four combinations
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            let mut low = Lowering {
                k: 2,
                rows: Vec::new(),
                slots: vec![Some(0), Some(1)],
                uses: vec![1, 1],
            };
            low.swap_slots(0);
            let lc = LayeredCircuit {
                k: 2,
                n_inputs: 2,
                n_tracks: slot_track(2) + 4,
                input_tracks: vec![slot_track(0), slot_track(1)],
                unused_inputs: vec![false, false],
                rows: low.rows,
                output_track: slot_track(0),
            };
            // left output is b, right output is a
            let state_check = |out_track: usize, want: bool| {
                let mut lc2 = lc.clone();
                lc2.output_track = out_track;
                assert_eq!(lc2.evaluate(&[a, b]).unwrap(), Some(want).unwrap());
            };
            state_check(slot_track(0), b);
            state_check(slot_track(1), a);
        }
    }

    #[test]
    fn three_color_swap_is_a_cross() {
        let mut low = Lowering {
            k: 3,
            rows: Vec::new(),
            slots: vec![Some(0), Some(1)],
            uses: vec![1, 1],
        };
        low.swap_slots(0);
        assert!(low.rows.iter().any(|r| matches!(r, RowOp::Cross(_))));
        assert_eq!(low.rows.len(), 7);
    }
}
