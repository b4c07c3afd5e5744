use polytile_core::graphs::{
    extended_tiling_line_graph, line_graph, polygon_line_tiling, tiling_edge_labels, tiling_line_graph, Graph,
    VertexLabel,
};

// The strand graph built directly from labels must coincide with the line
// graph of the tiling once each edge of the tiling is given its strand name.
#[test]
fn line_graph_of_tiling_is_the_strand_graph() {
    for n in 2..=7 {
        for t in 0..=6 {
            let l = line_graph(&polygon_line_tiling(n, t).unwrap());
            let names = tiling_edge_labels(n, t).unwrap();
            let relabeled = Graph::from_edges(names, l.edges()).unwrap();
            let g = tiling_line_graph(n, t).unwrap();
            assert_eq!(g.vertex_count(), relabeled.vertex_count(), "n = {n}, t = {t}");
            let map: Vec<usize> = (0..g.vertex_count()).map(|v| relabeled.index_of(g.label(v)).unwrap()).collect();
            assert!(g.is_isomorphism(&relabeled, &map), "n = {n}, t = {t}");
        }
    }
}

#[test]
fn extended_graph_is_induced_in_the_next_tiling_graph() {
    for n in [3, 6] {
        for t in 0..=5 {
            let h = extended_tiling_line_graph(n, t).unwrap();
            let next = tiling_line_graph(n, t + 1).unwrap();
            let keep: Vec<usize> = h.labels().iter().map(|&l| next.index_of(l).unwrap()).collect();
            let induced = next.induced_subgraph(&keep).unwrap();
            let map: Vec<usize> = (0..h.vertex_count()).map(|v| induced.index_of(h.label(v)).unwrap()).collect();
            assert!(h.is_isomorphism(&induced, &map), "n = {n}, t = {t}");
            assert!(h.index_of(VertexLabel::B { i: t as u32 + 1, j: 1 }).is_some());
            assert!(h.index_of(VertexLabel::C { i: t as u32 + 1, j: 1 }).is_some());
        }
    }
}

#[test]
fn vertex_and_edge_counts() {
    for n in 2..=8usize {
        for t in 1..=6usize {
            let p = polygon_line_tiling(n, t).unwrap();
            // 2n - 1 new edges per gon after the first, 2n for the first
            assert_eq!(p.edge_count(), (2 * n - 1) * t + 1);
            let g = tiling_line_graph(n, t).unwrap();
            assert_eq!(g.vertex_count(), p.edge_count());
            let degree_sum: usize = (0..p.vertex_count()).map(|v| p.degree(v) * (p.degree(v) - 1) / 2).sum();
            assert_eq!(g.edge_count(), degree_sum);
        }
    }
}

#[test]
fn graph_json_round_trip() {
    let g = extended_tiling_line_graph(3, 2).unwrap();
    let back = Graph::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);
    assert_eq!(back.digest(), g.digest());
}
