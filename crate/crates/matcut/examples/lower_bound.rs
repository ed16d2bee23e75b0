//! Query counts of probing strategies on the hidden-cut family.
use matcut::oracle::{gen_gpq, query_count_probe, ExhaustiveCuts, ProbeStrategy, SkipLast, SkipTwo};

fn main() {
    let lb = gen_gpq(2, 3, &[1, 3]);
    println!("G(2,3): {} vertices, hidden cut {}", lb.graph.num_vertices(), matcut::label::fmt_set(&lb.hidden));
    let strategies: [(&str, &dyn ProbeStrategy); 3] =
        [("exhaustive", &ExhaustiveCuts), ("skip-last", &SkipLast), ("skip-two", &SkipTwo)];
    for (p, q) in [(1, 4), (2, 3), (3, 2)] {
        for (name, s) in strategies {
            let r = query_count_probe(s, p, q);
            println!("p={p} q={q} {name:>10}: worst {} queries, {} wrong", r.worst_queries, r.wrong.len());
        }
    }
}
