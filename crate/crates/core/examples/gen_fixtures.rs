//! Regenerates `fixtures/r_matrix_constants.json`.

use osp_yangian::superspace::fixtures;
use osp_yangian::SuperSpace;

fn main() {
    let table: Vec<_> = [(3, 1), (4, 1), (5, 1), (6, 1), (3, 2)]
        .into_iter()
        .map(|(n, m)| fixtures::compute(&SuperSpace::new(n, m).unwrap()))
        .collect();
    println!("{}", serde_json::to_string_pretty(&table).unwrap());
}
