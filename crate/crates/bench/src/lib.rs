//! Fixtures shared by the benches.

use specrewriter_core::essence::{parse_spec, Specification};
use specrewriter_core::eval::Instance;
use specrewriter_core::instances::{edge_list_to_param, EdgeList};

pub const RELATION_SPEC: &str = include_str!("../../../data/kfold_colouring.essence");

pub fn original() -> Specification {
    parse_spec(RELATION_SPEC).expect("shipped spec parses")
}

/// 4-cycle, 3 colours, 1 per node: small enough to enumerate in milliseconds.
pub fn cycle4() -> Instance {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0)].into_iter().collect();
    edge_list_to_param(&EdgeList { n: 4, edges }.symmetrized(), 3, 1)
}
