//! Raster round trip: graph -> mask -> skeleton -> graph recovers length.

use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use roadchange::geometry::Point2;
use roadchange::graph::{NodeId, RoadGraph};
use roadchange::raster::{rasterize_graph, GeoTransform};
use roadchange::skeleton::{extract_graph, skeletonize};

fn grid_graph(side: usize, spacing: f64, origin: f64) -> RoadGraph<f64> {
    let mut g = RoadGraph::new();
    for y in 0..side {
        for x in 0..side {
            g.add_node(Point2::new(
                origin + x as f64 * spacing,
                origin + y as f64 * spacing,
            ));
        }
    }
    for y in 0..side {
        for x in 0..side {
            let id = y * side + x;
            if x + 1 < side {
                let (a, b) = (NodeId(id), NodeId(id + 1));
                let (pa, pb) = (g.node(a).position, g.node(b).position);
                g.add_edge(a, b, vec![pa, pb]);
            }
            if y + 1 < side {
                let (a, b) = (NodeId(id), NodeId(id + side));
                let (pa, pb) = (g.node(a).position, g.node(b).position);
                g.add_edge(a, b, vec![pa, pb]);
            }
        }
    }
    g
}

#[test]
fn grid_total_length_survives_raster_roundtrip() {
    // edges spaced 40 m apart, 2 m buffer (>= 4 buffer-widths apart),
    // 0.5 m/px
    let spacing = 40.0;
    let g = grid_graph(4, spacing, 10.0);
    let world = spacing * 3.0 + 20.0;
    let px = (world / 0.5).ceil() as usize;
    let geo = GeoTransform::new(0.0, world, 0.5, 0.5);
    let mask = rasterize_graph(&g, &geo, px, px, 2.0);
    let skeleton = skeletonize(&mask);
    assert!(skeleton.find_thick_block().is_none());
    assert_eq!(
        skeleton.mask().component_count_8(),
        mask.component_count_8()
    );
    let recovered = extract_graph(&skeleton, &geo);
    assert!(recovered.validate().is_none());
    let truth = g.total_length();
    let got = recovered.total_length();
    let rel = (got - truth).abs() / truth;
    assert!(
        rel <= 0.15,
        "length {got:.1} vs {truth:.1}: {:.1}% off",
        rel * 100.0
    );
}

#[test]
fn random_polyline_scenes_recover_length() {
    for seed in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = RoadGraph::new();
        // a few well-separated horizontal strokes with mild jitter
        let lanes = rng.gen_range(3..6);
        for lane in 0..lanes {
            let y = 20.0 + lane as f64 * 30.0;
            let x0 = rng.gen_range(5.0..15.0);
            let x1 = rng.gen_range(105.0..125.0);
            let mid_y = y + rng.gen_range(-4.0..4.0);
            let a = g.add_node(Point2::new(x0, y));
            let b = g.add_node(Point2::new(x1, y));
            g.add_edge(
                a,
                b,
                vec![
                    Point2::new(x0, y),
                    Point2::new((x0 + x1) / 2.0, mid_y),
                    Point2::new(x1, y),
                ],
            );
        }
        let geo = GeoTransform::new(0.0, 170.0, 0.5, 0.5);
        let mask = rasterize_graph(&g, &geo, 280, 340, 2.0);
        let skeleton = skeletonize(&mask);
        assert!(skeleton.find_thick_block().is_none(), "seed {seed}");
        assert_eq!(
            skeleton.mask().component_count_8(),
            mask.component_count_8(),
            "seed {seed}"
        );
        let recovered = extract_graph(&skeleton, &geo);
        let rel = (recovered.total_length() - g.total_length()).abs() / g.total_length();
        assert!(rel <= 0.15, "seed {seed}: {:.1}% off", rel * 100.0);
    }
}
