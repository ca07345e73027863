//! Scratch parameter probes (temporary, not part of the suite).

use geomds::dist::apsp;
use geomds::embed::{sgd_layout, DilationMode, Embedding, LayoutConfig};
use geomds::geometry::Geometry;
use geomds::graph;
use geomds::metrics::distortion;
use geomds::schedule::ScheduleKind;

#[test]
#[ignore]
fn probe_octahedron_schedules() {
    let g = graph::octahedron();
    let dm = apsp(&g).unwrap();
    for (name, schedule) in [
        ("piecewise", ScheduleKind::piecewise()),
        ("fixed0.05", ScheduleKind::fixed()),
        ("frac_sqrt", ScheduleKind::FracSqrtT),
        ("frac_t", ScheduleKind::FracT),
    ] {
        for epochs in [300usize, 1000] {
            let mut vals = Vec::new();
            for seed in 0..10 {
                let cfg = LayoutConfig {
                    schedule,
                    max_epochs: epochs,
                    ..LayoutConfig::new(Geometry::sphere()).with_seed(seed)
                };
                let (emb, _) = sgd_layout(&dm, &cfg).unwrap();
                let t = geomds::embed::target_distances(&dm, cfg.dilation).unwrap();
                vals.push(distortion(&emb, &t).unwrap());
            }
            let ok = vals.iter().filter(|v| **v < 0.02).count();
            println!(
                "octa {name} e{epochs}: {ok}/10 ok, {:?}",
                vals.iter().map(|v| (v * 1000.0).round() / 1000.0).collect::<Vec<_>>()
            );
        }
    }
}

#[test]
#[ignore]
fn probe_octahedron_caps() {
    let g = graph::octahedron();
    let dm = apsp(&g).unwrap();
    for cap in [0.1, 0.2, 0.3, 0.5, 1.0] {
        for (name, schedule) in [
            ("piecewise", ScheduleKind::piecewise()),
            ("fixed0.05", ScheduleKind::fixed()),
        ] {
            let mut vals = Vec::new();
            for seed in 0..10 {
                let cfg = LayoutConfig {
                    schedule,
                    lr_cap: cap,
                    ..LayoutConfig::new(Geometry::sphere()).with_seed(seed)
                };
                let (emb, _) = sgd_layout(&dm, &cfg).unwrap();
                let t = geomds::embed::target_distances(&dm, cfg.dilation).unwrap();
                vals.push(distortion(&emb, &t).unwrap());
            }
            let ok = vals.iter().filter(|v| **v < 0.02).count();
            println!(
                "octa cap {cap} {name}: {ok}/10 ok, {:?}",
                vals.iter().map(|v| (v * 1000.0).round() / 1000.0).collect::<Vec<_>>()
            );
        }
    }
    // effect of cap on the other criterion-2 graphs and the cities case
    for cap in [0.1, 0.3] {
        for (name, dm2) in [
            ("C10", apsp(&graph::cycle(10)).unwrap()),
            ("C20", apsp(&graph::cycle(20)).unwrap()),
            (
                "cities30",
                geomds::geometry::pairwise_distances(&geomds::geometry::sample_uniform(
                    Geometry::sphere(),
                    30,
                    0.0,
                    2024,
                ))
                .unwrap(),
            ),
        ] {
            let mut vals = Vec::new();
            for seed in 0..5 {
                let cfg = LayoutConfig {
                    lr_cap: cap,
                    ..LayoutConfig::new(Geometry::sphere()).with_seed(seed)
                };
                let (emb, _) = sgd_layout(&dm2, &cfg).unwrap();
                let t = geomds::embed::target_distances(&dm2, cfg.dilation).unwrap();
                vals.push(((distortion(&emb, &t).unwrap()) * 1000.0).round() / 1000.0);
            }
            println!("{name} cap {cap}: {vals:?}");
        }
    }
}

#[test]
#[ignore]
fn probe_grid17_binary_weights() {
    use geomds::embed::WeightPolicy;
    let g = graph::grid(17, 17);
    let dm = apsp(&g).unwrap();
    for weights in [WeightPolicy::InverseSquare, WeightPolicy::Binary] {
        for (geometry, dilation) in [
            (Geometry::sphere(), DilationMode::Heuristic),
            (Geometry::Euclidean, DilationMode::None),
        ] {
            let mut vals = Vec::new();
            for seed in 0..3 {
                let cfg = LayoutConfig {
                    weights,
                    dilation,
                    ..LayoutConfig::new(geometry).with_seed(seed)
                };
                let (emb, _) = sgd_layout(&dm, &cfg).unwrap();
                let t = geomds::embed::target_distances(&dm, dilation).unwrap();
                vals.push(((distortion(&emb, &t).unwrap()) * 10000.0).round() / 10000.0);
            }
            println!("grid17 {weights:?} {}: {vals:?}", geometry.name());
        }
    }
}

#[test]
#[ignore]
fn probe_grid17_floor() {
    // distortion of the natural integer-grid layout at its best uniform scale
    let n = 17usize;
    let g = graph::grid(n, n);
    let dm = apsp(&g).unwrap();
    let coords: Vec<[f64; 2]> = (0..n * n)
        .map(|v| [(v / n) as f64, (v % n) as f64])
        .collect();
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..200 {
        let s = 0.5 + k as f64 * 0.005;
        let emb = Embedding {
            geometry: Geometry::Euclidean,
            coords: coords.iter().map(|c| [c[0] * s, c[1] * s]).collect(),
            dilation: 1.0,
        };
        let d = distortion(&emb, &dm).unwrap();
        if d < best.0 {
            best = (d, s);
        }
    }
    println!("grid17 natural-layout floor: distortion {:.4} at scale {:.3}", best.0, best.1);

    for epochs in [300usize, 1000, 3000] {
        let mut vals = Vec::new();
        for seed in 0..3 {
            let cfg = LayoutConfig {
                max_epochs: epochs,
                ..LayoutConfig::new(Geometry::Euclidean).with_seed(seed)
            };
            let (emb, _) = sgd_layout(&dm, &cfg).unwrap();
            vals.push(distortion(&emb, &dm).unwrap());
        }
        println!("grid17 euclid e{epochs}: {vals:?}");
    }
    for epochs in [300usize, 1000] {
        let mut vals = Vec::new();
        for seed in 0..3 {
            let cfg = LayoutConfig {
                max_epochs: epochs,
                ..LayoutConfig::new(Geometry::sphere()).with_seed(seed)
            };
            let (emb, _) = sgd_layout(&dm, &cfg).unwrap();
            let t = geomds::embed::target_distances(&dm, DilationMode::Heuristic).unwrap();
            vals.push(distortion(&emb, &t).unwrap());
        }
        println!("grid17 sphere e{epochs}: {vals:?}");
    }
}
