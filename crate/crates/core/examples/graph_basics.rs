// Parse an edge list, carve out subgraphs and ego-nets, and hide edges for
// link prediction.

use subvec::graph::{ego_net, induced_subgraph, make_link_split, parse_edge_list, Hops};

const EDGES: &str = "\
# a triangle with a tail
a b
b c
c a
c d
d e
e c
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let parsed = parse_edge_list(EDGES.as_bytes())?;
    let g = parsed.graph;
    println!(
        "{} nodes, {} edges, average degree {:.2}",
        g.node_count(),
        g.edge_count(),
        g.average_degree()
    );

    let ids = g.node_ids(["a", "b", "c"])?;
    let tri = induced_subgraph(&g, &ids, 0)?;
    println!("induced on a,b,c: {} edges", tri.edge_count());
    assert_eq!(tri.edge_count(), 3);

    let c = g.node_id("c").expect("c is a node");
    for hops in [Hops::One, Hops::Two] {
        let ego = ego_net(&g, c, hops)?;
        let labels: Vec<&str> = ego.nodes().iter().map(|&v| g.label(v)).collect();
        println!("{}-hop ego-net of c: {labels:?}", hops.count());
    }

    let split = make_link_split(&g, 40.0, 1)?;
    println!(
        "hid {} of {} targeted edges (shortfall: {}), train graph connected: {}",
        split.hidden_edges.len(),
        split.target,
        split.shortfall,
        split.train_graph.is_connected()
    );
    assert!(split.train_graph.is_connected());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("graph basics");
}
