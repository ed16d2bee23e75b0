//! Independent odd cycle transversal of a 5-cycle with a chord.
use matcut::cyclehit::ioct_solve_with_stats;
use matcut::ffmatrix::{FFMatrix, FieldPrime, DEFAULT_PRIME};
use matcut::graph::MultiGraph;
use matcut::label::{fmt_set, Label};
use matcut::matroid::LinearMatroid;
use matcut::stcut::GivcOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = MultiGraph::new();
    for (u, v) in [("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v0"), ("v0", "v2")] {
        g.add_edge(u, v, 1);
    }
    let p = FieldPrime::new(DEFAULT_PRIME)?;
    // v0 and v2 are parallel: only one of them may be picked.
    let labels: Vec<Label> = (0..5).map(|i| Label::new(format!("v{i}"))).collect();
    let matrix = FFMatrix::from_rows(p, &[vec![1, 0, 1, 0, 1], vec![0, 1, 0, 1, 1]])?;
    let m = LinearMatroid::new(matrix, labels)?;
    for k in 1..=2 {
        let (sol, stats) = ioct_solve_with_stats(&g, &m, k, &GivcOptions::default())?;
        let shown = sol.map(|s| fmt_set(&s)).unwrap_or_else(|| "none".into());
        println!("k = {k}: {shown} ({} cut instances)", stats.cut_instances);
    }
    Ok(())
}
