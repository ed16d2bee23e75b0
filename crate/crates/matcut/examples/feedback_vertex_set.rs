//! Independent feedback vertex set on two triangles joined by a path, with a
//! partition matroid that allows one vertex from each triangle.
use matcut::graph::MultiGraph;
use matcut::label::{fmt_set, set};
use matcut::matroid::{Matroid, OracleMatroid, PartitionMatroid};
use matcut::cyclehit::ifvs_solve_with_stats;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = MultiGraph::new();
    for (u, v) in [("a", "b"), ("b", "c"), ("c", "a"), ("c", "m"), ("m", "d"), ("d", "e"), ("e", "f"), ("f", "d")] {
        g.add_edge(u, v, 1);
    }
    let blocks = PartitionMatroid::new(vec![set(["a", "b", "c"]), set(["d", "e", "f"]), set(["m"])])?;
    let ground = blocks.ground();
    let m = OracleMatroid::new(ground, 3, move |x| blocks.is_independent(x).unwrap_or(false));
    for k in 1..=2 {
        let (sol, stats) = ifvs_solve_with_stats(&g, &m, k)?;
        match sol {
            Some(s) => println!("k = {k}: {} (kernel size {})", fmt_set(&s), stats.kernel_size),
            None => println!("k = {k}: none"),
        }
    }
    Ok(())
}
