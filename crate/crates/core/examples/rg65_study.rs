//! Correlates all 46 measures with the RG-65 ratings and clusters them by
//! correlation distance.
//!
//! ```text
//! cargo run --release --example rg65_study [RG65_FILE]
//! ```

use std::path::PathBuf;

use semnet::measures::SimGroup;
use semnet::output::sig6;
use semnet::rg65::{correlation_distance_matrix, evaluate_all, hierarchical_cluster, load_rg65, Linkage};
use semnet::wordnet::{load_dict_dir, resolve_dict_dir};
use semnet::{IcFormula, SimFormula};

fn main() -> semnet::Result<()> {
    let g = load_dict_dir(&resolve_dict_dir(None))?;
    let path = std::env::args().nth(1).map_or_else(|| PathBuf::from("data/rg65/rg65.tsv"), PathBuf::from);
    let table = evaluate_all(&g, load_rg65(&path)?)?;
    println!("{} pairs, {} excluded", table.pairs.len(), table.excluded.len());

    for row in &table.rows {
        println!("{:<26} r = {:<10} p = {}", row.measure.to_string(), sig6(row.pearson_r), sig6(row.p_value));
    }
    for group in [SimGroup::Path, SimGroup::Subsumer, SimGroup::IcBased] {
        println!("mean r {group:?}: {}", sig6(table.group_mean(group)));
    }
    for ic in IcFormula::ALL {
        println!("mean r over IC-based measures on {}: {}", ic.id(), sig6(table.ic_mean(ic)));
    }
    let lin = table.row(SimFormula::Lin(IcFormula::SanchezBatet)).expect("evaluated");
    println!("lin:sanchez-batet r = {}", sig6(lin.pearson_r));

    let (labels, vectors) = table.score_vectors();
    let matrix = correlation_distance_matrix(&vectors)?;
    for linkage in [Linkage::Average, Linkage::Complete] {
        let tree = hierarchical_cluster(&matrix, linkage)?;
        let (left, right) = tree.top_split().expect("more than one leaf");
        let name = |ix: &[usize]| ix.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ");
        println!("\n{linkage:?} linkage top split\n  [{}]\n  [{}]", name(&left), name(&right));
    }
    Ok(())
}
