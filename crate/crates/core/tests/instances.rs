use proptest::prelude::*;
use specrewriter_core::essence::parse_spec;
use specrewriter_core::eval::{Env, DEFAULT_MAX_GROUND};
use specrewriter_core::instances::*;

const RELATION_SPEC: &str = include_str!("../../../data/kfold_colouring.essence");

#[test]
fn full_grid_has_624_points() {
    let cfg = GridConfig::full();
    let count = cfg.n_values.len() * cfg.edge_density_percents.len() * cfg.cpn_values.len() * cfg.colours_multipliers.len();
    assert_eq!(count, 624);
}

#[test]
fn small_multiplier_grid() {
    let cfg = GridConfig {
        n_values: vec![2, 3, 4],
        edge_density_percents: vec![50],
        cpn_values: vec![1, 2],
        colours_multipliers: vec![2],
        colour_offsets: vec![],
        seed: 7,
        directed: false,
    };
    let grid = generate_grid(&cfg).unwrap();
    assert_eq!(grid.len(), 6);
    assert_eq!(grid.iter().map(|g| g.number_colours).collect::<Vec<_>>(), vec![2, 4, 2, 4, 2, 4]);
}

#[test]
fn desk_grid_has_54_points() {
    let grid = generate_grid(&GridConfig::desk()).unwrap();
    assert_eq!(grid.len(), 54);
    assert!(grid.iter().all(|g| (g.cpn..=g.cpn + 2).contains(&g.number_colours)));
}

#[test]
fn same_seed_same_grid() {
    let a = generate_grid(&GridConfig::desk()).unwrap();
    let b = generate_grid(&GridConfig::desk()).unwrap();
    assert_eq!(a, b);
    let other = generate_grid(&GridConfig { seed: 99, ..GridConfig::desk() }).unwrap();
    assert_ne!(a, other);
}

#[test]
fn invalid_configs() {
    let bad = [
        GridConfig { n_values: vec![], ..GridConfig::desk() },
        GridConfig { edge_density_percents: vec![0], ..GridConfig::desk() },
        GridConfig { edge_density_percents: vec![101], ..GridConfig::desk() },
        GridConfig { cpn_values: vec![0], ..GridConfig::desk() },
        GridConfig { colour_offsets: vec![], ..GridConfig::desk() },
        GridConfig { colours_multipliers: vec![2], ..GridConfig::desk() },
    ];
    for cfg in bad {
        assert!(generate_grid(&cfg).is_err(), "{cfg:?}");
    }
}

#[test]
fn generated_instances_load() {
    let spec = parse_spec(RELATION_SPEC).unwrap();
    for g in generate_grid(&GridConfig::desk()).unwrap() {
        Env::for_instance(&spec, &g.instance(), DEFAULT_MAX_GROUND).unwrap();
        assert!(g.graph.is_symmetric());
    }
}

#[test]
fn edge_list_examples() {
    assert_eq!(read_edge_list("").unwrap(), EdgeList::default());
    assert_eq!(read_edge_list("0 0").unwrap_err(), EdgeListError::SelfLoopError { line: 1, vertex: 0 });
    let g = read_edge_list("0 1\n1 0\n0 1\n").unwrap();
    assert_eq!(g.n, 2);
    assert_eq!(g.edges.len(), 2);
    let g = read_edge_list_with("n 5\n# comment\n0 1\n\n2 3 # trailing\n", Orientation::Directed).unwrap();
    assert_eq!(g.n, 5);
    assert_eq!(g.edges.into_iter().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    for bad in ["0", "0 x", "n 2\n0 5", "0 1\nn 3", "0 1 2"] {
        assert!(matches!(read_edge_list(bad), Err(EdgeListError::ParseError { .. })), "{bad}");
    }
}

#[test]
fn edge_list_text_round_trip() {
    let g = dodecahedral();
    assert_eq!(read_edge_list_with(&g.to_text(), Orientation::Directed).unwrap(), g);
}

#[test]
fn dodecahedral_shape() {
    let g = dodecahedral();
    assert_eq!(g.n, 20);
    assert_eq!(g.edges.len(), 60);
    assert!(g.is_symmetric());
    for v in 0..20 {
        assert_eq!(g.edges.iter().filter(|e| e.0 == v).count(), 3, "vertex {v} is not cubic");
    }
    // No triangles or 4-cycles: girth 5.
    let adj = |a, b| g.edges.contains(&(a, b));
    for a in 0..20 {
        for b in 0..20 {
            for c in 0..20 {
                assert!(!(adj(a, b) && adj(b, c) && adj(c, a)));
                for d in 0..20 {
                    if a != c && b != d && adj(a, b) && adj(b, c) && adj(c, d) && adj(d, a) {
                        panic!("4-cycle {a} {b} {c} {d}");
                    }
                }
            }
        }
    }
    let inst = edge_list_to_param(&g, 15, 5);
    assert_eq!(inst.bindings["coloursPerNode"], specrewriter_core::Value::Int(5));
}

proptest! {
    #[test]
    fn directed_edge_count_exact(n in 0usize..12, d in 1u32..=100, seed: u64) {
        let g = sample_edges(n, d, seed, true);
        prop_assert_eq!(g.edges.len(), target_edge_count(n, d));
        prop_assert!(g.edges.iter().all(|&(u, v)| u != v && u < n && v < n));
    }

    #[test]
    fn undirected_edge_count_even(n in 0usize..12, d in 1u32..=100, seed: u64) {
        let g = sample_edges(n, d, seed, false);
        let t = target_edge_count(n, d);
        prop_assert_eq!(g.edges.len(), t - t % 2);
        prop_assert!(g.is_symmetric());
    }
}

#[test]
fn shipped_dodecahedral_file_matches() {
    let text = include_str!("../../../data/dodecahedral.edges");
    let g = read_edge_list(text).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.starts_with('n')).count(), 30);
    assert_eq!(g, dodecahedral());
}
