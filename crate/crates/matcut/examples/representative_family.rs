//! Shrinking a family of pairs to a 1-representative subfamily over a
//! uniform matroid, then checking it by brute force.
use matcut::ffmatrix::{FieldPrime, DEFAULT_PRIME};
use matcut::label::{set, Label};
use matcut::matroid::{for_each_subset, LinearMatroid};
use matcut::repfam::{rep_bound, rep_family, verify_rep, SetFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let names: Vec<Label> = (0..7).map(|i| Label::new(format!("e{i}"))).collect();
    let m = LinearMatroid::free(FieldPrime::new(DEFAULT_PRIME)?, names.clone()).truncate(3, 11)?;
    let mut pairs = Vec::new();
    for_each_subset(names.len(), 2, |ix| pairs.push(set(ix.iter().map(|&i| names[i].clone()))));
    let full = SetFamily::new(2, pairs)?;
    let rep = rep_family(&m, &full, 1, 5)?;
    println!("{} pairs -> {} kept (bound {})", full.len(), rep.len(), rep_bound(2, 1));
    println!("represents: {}", verify_rep(&m, &rep, &full, 1)?);
    Ok(())
}
