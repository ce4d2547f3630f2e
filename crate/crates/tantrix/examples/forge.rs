//! Reconstruction workbench for the builtin subpuzzles.
//!
//! Re-derives the stored footprints from first principles: each target is
//! posed as a shape + ports + contract and handed to the synthesizer. Run
//! with a list of targets (or `all`) to search and print the results in
//! the gadget file format:
//!
//! ```text
//! cargo run --release --example forge -- wire2 bool2
//! ```

use std::collections::BTreeMap;
use std::time::Instant;
use tantrix::gadgets::{
    synthesize_gadget, verify_gadget, Contract, Gadget, Port, PortRole, SynthesisOutcome,
};
use tantrix::hex::{Direction, HexCoord};
use tantrix::tiles::{tile_set, TileSet, TileType};

fn c(a: i64, b: i64) -> HexCoord {
    HexCoord::new(a, b)
}

fn port(role: PortRole, a: i64, b: i64, e: usize) -> Port {
    Port {
        cell: c(a, b),
        edge: Direction::from_index(e).unwrap(),
        role,
    }
}

fn pin(a: i64, b: i64) -> Port {
    port(PortRole::Input, a, b, 3)
}

fn pout(a: i64, b: i64) -> Port {
    port(PortRole::Output, a, b, 0)
}

struct Target {
    name: &'static str,
    ts: TileSet,
    shape: Vec<HexCoord>,
    fixed: BTreeMap<HexCoord, TileType>,
    ports: Vec<Port>,
    contract: Contract,
    budget: u64,
}

fn fixed(ts: &TileSet, cells: &[(i64, i64, usize)]) -> BTreeMap<HexCoord, TileType> {
    cells
        .iter()
        .map(|&(a, b, id)| (c(a, b), *ts.tile(id).unwrap()))
        .collect()
}

fn wire_contract() -> Contract {
    Contract::function(1, 1, |v| vec![v[0]])
}

fn not_contract() -> Contract {
    Contract::function(1, 1, |v| vec![!v[0]])
}

fn copy_contract() -> Contract {
    Contract::function(1, 2, |v| vec![v[0], v[0]])
}

fn nor_contract() -> Contract {
    Contract::function(2, 1, |v| vec![!v[0] && !v[1]])
}

fn cross_contract() -> Contract {
    Contract::function(2, 2, |v| vec![v[1], v[0]])
}

fn targets(which: &str) -> Vec<Target> {
    let t2 = tile_set(2).unwrap();
    let t3 = tile_set(3).unwrap();
    let mut out = Vec::new();
    let want = |n: &str| which == "all" || which == n;

    if want("bool2") {
        out.push(Target {
            name: "bool2",
            ts: t2.clone(),
            shape: vec![c(0, 0), c(0, 1), c(1, 0), c(1, 1)],
            fixed: BTreeMap::new(),
            ports: vec![pout(0, 1)],
            contract: Contract::free_boolean(),
            budget: 10_000_000,
        });
    }
    if want("not2") {
        // column a,c,e,f with flanks b,d and wire stub x, after the
        // two-color gate description
        out.push(Target {
            name: "not2",
            ts: t2.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(0, 2),
                c(0, 3),
                c(1, 1),
                c(-1, 1),
                c(1, 3),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pout(0, 3)],
            contract: not_contract(),
            budget: 50_000_000,
        });
    }
    if want("move2") {
        out.push(Target {
            name: "move2",
            ts: t2.clone(),
            shape: vec![c(0, 0), c(0, 1), c(1, 1), c(1, 2), c(2, 2), c(2, 3)],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pout(2, 3)],
            contract: wire_contract(),
            budget: 50_000_000,
        });
    }
    if want("copy2") {
        out.push(Target {
            name: "copy2",
            ts: t2.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(-1, 0),
                c(-1, 1),
                c(-2, 1),
                c(-2, 2),
                c(-2, 3),
                c(1, 1),
                c(1, 2),
                c(2, 3),
                c(-1, 2),
                c(2, 2),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pout(-2, 3), pout(2, 3)],
            contract: copy_contract(),
            budget: 200_000_000,
        });
    }
    if want("nor2") {
        out.push(Target {
            name: "nor2",
            ts: t2.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(0, 2),
                c(0, 3),
                c(2, 0),
                c(2, 1),
                c(1, 1),
                c(-1, 0),
                c(1, 2),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pin(2, 0), pout(0, 3)],
            contract: nor_contract(),
            budget: 200_000_000,
        });
    }
    if want("nor2c") {
        // narrow variant with the arc tile pinned at the junction and a
        // denser stub neighborhood
        out.push(Target {
            name: "nor2c",
            ts: t2.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(0, 2),
                c(0, 3),
                c(2, 0),
                c(2, 1),
                c(1, 1),
                c(-1, 0),
                c(1, 2),
                c(2, 2),
            ],
            fixed: fixed(&t2, &[(0, 1, 1)]),
            ports: vec![pin(0, 0), pin(2, 0), pout(0, 3)],
            contract: nor_contract(),
            budget: 500_000_000,
        });
    }
    if want("nor3c") {
        out.push(Target {
            name: "nor3c",
            ts: t3.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(0, 2),
                c(0, 3),
                c(2, 0),
                c(2, 1),
                c(1, 1),
                c(-1, 0),
                c(1, 2),
                c(2, 2),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pin(2, 0), pout(0, 3)],
            contract: nor_contract(),
            budget: 500_000_000,
        });
    }
    // binary cores with inputs two tracks apart and the result leaving
    // through the middle column
    let wide_gate_shape = || {
        vec![
            c(0, 0),
            c(0, 1),
            c(1, 1),
            c(1, 2),
            c(4, 0),
            c(4, 1),
            c(3, 1),
            c(3, 0),
            c(2, 1),
            c(3, 2),
            c(2, 2),
            c(2, 3),
        ]
    };
    let wide_ports = || vec![pin(0, 0), pin(4, 0), pout(2, 3)];
    if want("nor2w") {
        out.push(Target {
            name: "nor2w",
            ts: t2.clone(),
            shape: wide_gate_shape(),
            fixed: BTreeMap::new(),
            ports: wide_ports(),
            contract: nor_contract(),
            budget: 500_000_000,
        });
    }
    if want("and2w") {
        out.push(Target {
            name: "and2w",
            ts: t2.clone(),
            shape: wide_gate_shape(),
            fixed: BTreeMap::new(),
            ports: wide_ports(),
            contract: Contract::function(2, 1, |v| vec![v[0] && v[1]]),
            budget: 500_000_000,
        });
    }
    if want("nor3w") {
        out.push(Target {
            name: "nor3w",
            ts: t3.clone(),
            shape: wide_gate_shape(),
            fixed: BTreeMap::new(),
            ports: wide_ports(),
            contract: nor_contract(),
            budget: 500_000_000,
        });
    }
    if want("and3w") {
        out.push(Target {
            name: "and3w",
            ts: t3.clone(),
            shape: wide_gate_shape(),
            fixed: BTreeMap::new(),
            ports: wide_ports(),
            contract: Contract::function(2, 1, |v| vec![v[0] && v[1]]),
            budget: 500_000_000,
        });
    }
    if want("bool3") {
        out.push(Target {
            name: "bool3",
            ts: t3.clone(),
            shape: vec![c(0, 0), c(0, 1), c(1, 0), c(1, 1)],
            fixed: BTreeMap::new(),
            ports: vec![pout(0, 1)],
            contract: Contract::free_boolean(),
            budget: 10_000_000,
        });
    }
    if want("not3") {
        // a,b,c,d column with side tiles y,x,w; c,d are the wire pair and
        // the named side types are t13 (x) and t10 (w)
        out.push(Target {
            name: "not3",
            ts: t3.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(0, 2),
                c(0, 3),
                c(1, 1),
                c(1, 2),
                c(1, 3),
            ],
            fixed: fixed(&t3, &[(0, 2, 5), (0, 3, 5), (1, 2, 13), (1, 3, 10)]),
            ports: vec![pin(0, 0), pout(0, 3)],
            contract: not_contract(),
            budget: 50_000_000,
        });
    }
    if want("not3free") {
        out.push(Target {
            name: "not3free",
            ts: t3.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(0, 2),
                c(0, 3),
                c(1, 1),
                c(1, 2),
                c(1, 3),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pout(0, 3)],
            contract: not_contract(),
            budget: 500_000_000,
        });
    }
    if want("move3") {
        out.push(Target {
            name: "move3",
            ts: t3.clone(),
            shape: vec![c(0, 0), c(0, 1), c(1, 1), c(1, 2), c(2, 2), c(2, 3)],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pout(2, 3)],
            contract: wire_contract(),
            budget: 100_000_000,
        });
    }
    if want("copy3") {
        out.push(Target {
            name: "copy3",
            ts: t3.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(-1, 0),
                c(-1, 1),
                c(-2, 1),
                c(-2, 2),
                c(-2, 3),
                c(1, 1),
                c(1, 2),
                c(2, 3),
                c(-1, 2),
                c(2, 2),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pout(-2, 3), pout(2, 3)],
            contract: copy_contract(),
            budget: 500_000_000,
        });
    }
    if want("nor3") {
        out.push(Target {
            name: "nor3",
            ts: t3.clone(),
            shape: vec![
                c(0, 0),
                c(0, 1),
                c(0, 2),
                c(0, 3),
                c(2, 0),
                c(2, 1),
                c(1, 1),
                c(-1, 0),
                c(1, 2),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pin(2, 0), pout(0, 3)],
            contract: nor_contract(),
            budget: 500_000_000,
        });
    }
    if want("cross3") {
        out.push(Target {
            name: "cross3",
            ts: t3.clone(),
            shape: vec![
                c(0, 0),
                c(1, 1),
                c(4, 0),
                c(3, 0),
                c(3, 1),
                c(2, 1),
                c(2, 2),
                c(1, 2),
                c(0, 2),
                c(0, 3),
                c(3, 2),
                c(4, 3),
            ],
            fixed: BTreeMap::new(),
            ports: vec![pin(0, 0), pin(4, 0), pout(0, 3), pout(4, 3)],
            contract: cross_contract(),
            budget: 2_000_000_000,
        });
    }
    out
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        eprintln!("usage: forge <target|all>...");
        std::process::exit(2);
    }
    for arg in &args {
        for t in targets(arg) {
            let start = Instant::now();
            print!("== {} ... ", t.name);
            let free_count = t.shape.iter().filter(|c| !t.fixed.contains_key(c)).count();
            println!("({} free cells over {} tiles)", free_count, t.ts.tiles.len());
            match synthesize_gadget(&t.shape, &t.fixed, &t.ports, &t.contract, &t.ts, t.budget) {
                SynthesisOutcome::Found(g) => {
                    let g = Gadget {
                        name: t.name.to_string(),
                        ..g
                    };
                    let report = verify_gadget(&g).unwrap();
                    println!(
                        "FOUND in {:?}, verify: {}",
                        start.elapsed(),
                        if report.pass { "PASS" } else { "FAIL" }
                    );
                    println!("{}", g.serialize());
                }
                SynthesisOutcome::Exhausted => {
                    println!("EXHAUSTED in {:?}", start.elapsed());
                }
                SynthesisOutcome::BudgetExceeded => {
                    println!("BUDGET EXCEEDED in {:?}", start.elapsed());
                }
            }
        }
    }
}
