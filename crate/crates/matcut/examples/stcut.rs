//! Independent (s,t) vertex cuts in a small grid-like graph where the matroid
//! forbids picking both vertices of the middle column.
use matcut::ffmatrix::{FFMatrix, FieldPrime, DEFAULT_PRIME};
use matcut::graph::MultiGraph;
use matcut::label::{fmt_set, set, Label};
use matcut::matroid::LinearMatroid;
use matcut::stcut::{givc_solve_with, solve_min_budget, GivcOptions, StCutInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = MultiGraph::new();
    for (u, v) in [("s", "a1"), ("s", "b1"), ("a1", "a2"), ("b1", "b2"), ("a2", "t"), ("b2", "t"), ("a1", "b1")] {
        g.add_edge(u, v, 1);
    }
    let p = FieldPrime::new(DEFAULT_PRIME)?;
    // a1 and b1 share a column vector, so {a1, b1} is dependent.
    let labels: Vec<Label> = ["a1", "b1", "a2", "b2"].into_iter().map(Label::new).collect();
    let matrix = FFMatrix::from_rows(p, &[vec![1, 1, 0, 1], vec![0, 0, 1, 1]])?;
    let matroid = LinearMatroid::new(matrix, labels)?;
    let inst = StCutInstance { graph: g, matroid, s: "s".into(), t: "t".into(), special: set(["s", "t"]), k: 2, q: 0 };

    let (family, report) = givc_solve_with(&inst, &GivcOptions::default())?;
    println!("k = 2: {} cut(s) after {} branches", family.len(), report.branches);
    for cut in family.iter() {
        println!("  {}", fmt_set(cut));
    }
    if let Some((k, f)) = solve_min_budget(&inst, &GivcOptions::default())? {
        println!("smallest independent cut has size {k}; {} representative(s)", f.len());
    }
    Ok(())
}
