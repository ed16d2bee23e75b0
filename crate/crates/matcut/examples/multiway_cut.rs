//! Independent multiway cuts separating three terminals around a hub.
use matcut::ffmatrix::{FieldPrime, DEFAULT_PRIME};
use matcut::graph::MultiGraph;
use matcut::label::{fmt_set, set};
use matcut::matroid::LinearMatroid;
use matcut::mwc::{imwcut_with, is_minimal_multiway_cut, MwcInstance, MwcOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = MultiGraph::new();
    for (u, v) in [("x", "h"), ("y", "h"), ("z", "h"), ("x", "p"), ("p", "y"), ("y", "r"), ("r", "z")] {
        g.add_edge(u, v, 1);
    }
    let p = FieldPrime::new(DEFAULT_PRIME)?;
    let matroid = LinearMatroid::free(p, ["h", "p", "r"]).truncate(3, 7)?;
    let terminals = set(["x", "y", "z"]);
    let inst = MwcInstance { graph: g.clone(), matroid, terminals: terminals.clone(), special: terminals.clone(), k: 3, q: 0 };
    let (family, stats) = imwcut_with(&inst, &MwcOptions::default())?;
    println!("{} cut(s), {} recursive calls", family.len(), stats.calls);
    for cut in family.iter() {
        println!("  {} minimal: {}", fmt_set(cut), is_minimal_multiway_cut(&g, &terminals, cut));
    }
    Ok(())
}
