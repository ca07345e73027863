//! Standalone SVG emission for projected layouts.

use crate::embed::Embedding;
use crate::error::Result;
use crate::graph::Graph;
use crate::project::{build_scene, ProjectionKind, ProjectionScene};

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Canvas width in pixels; height follows the scene aspect ratio.
    pub width: f64,
    pub vertex_radius: f64,
    /// Geodesic samples per edge. Straight chords would misrepresent long
    /// arcs under every projection.
    pub edge_segments: usize,
    /// Opacity for hidden-hemisphere content; 0 omits it entirely.
    pub hidden_opacity: f64,
    /// Draw vertex labels when the graph has them.
    pub draw_labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800.0,
            vertex_radius: 3.0,
            edge_segments: 16,
            hidden_opacity: 0.15,
            draw_labels: false,
        }
    }
}

/// Renders a layout as a standalone SVG 1.1 document. Deterministic: the
/// same inputs produce byte-identical output.
pub fn render_svg(
    emb: &Embedding,
    g: &Graph,
    kind: &ProjectionKind,
    opts: &RenderOptions,
) -> Result<String> {
    let scene = build_scene(emb, g, kind, opts.edge_segments)?;
    Ok(scene_to_svg(&scene, g, opts))
}

struct Frame {
    scale: f64,
    min: [f64; 2],
    max_y: f64,
    pad: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn fit(scene: &ProjectionScene, width: f64) -> Frame {
        let [min_x, min_y, max_x, max_y] = scene.bbox;
        let span_x = (max_x - min_x).max(1e-9);
        let span_y = (max_y - min_y).max(1e-9);
        let pad = width * 0.05;
        let scale = (width - 2.0 * pad) / span_x;
        Frame {
            scale,
            min: [min_x, min_y],
            max_y,
            pad,
            width,
            height: span_y * scale + 2.0 * pad,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            self.pad + (p[0] - self.min[0]) * self.scale,
            self.pad + (self.max_y - p[1]) * self.scale,
        )
    }
}

fn fmt(v: f64) -> String {
    // fixed precision keeps output deterministic and diffs readable
    format!("{v:.2}")
}

fn scene_to_svg(scene: &ProjectionScene, g: &Graph, opts: &RenderOptions) -> String {
    let frame = Frame::fit(scene, opts.width);
    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
         version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt(frame.width),
        fmt(frame.height),
        fmt(frame.width),
        fmt(frame.height)
    ));

    if let Some(r) = scene.frame_radius {
        // sphere horizon / hyperbolic disk boundary, drawn as a path so that
        // <circle> elements are reserved for vertices
        let (cx, cy) = frame.map([0.0, 0.0]);
        let rp = r * frame.scale;
        svg.push_str(&format!(
            "  <path d=\"M {} {} A {} {} 0 1 0 {} {} A {} {} 0 1 0 {} {} Z\" \
             fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n",
            fmt(cx - rp),
            fmt(cy),
            fmt(rp),
            fmt(rp),
            fmt(cx + rp),
            fmt(cy),
            fmt(rp),
            fmt(rp),
            fmt(cx - rp),
            fmt(cy)
        ));
    }

    for runs in &scene.edges {
        for run in runs {
            if !run.visible && opts.hidden_opacity <= 0.0 {
                continue;
            }
            let mut d = String::new();
            for (k, p) in run.points.iter().enumerate() {
                let (x, y) = frame.map(*p);
                d.push_str(if k == 0 { "M " } else { "L " });
                d.push_str(&format!("{} {} ", fmt(x), fmt(y)));
            }
            let opacity = if run.visible {
                String::new()
            } else {
                format!(" stroke-opacity=\"{}\"", opts.hidden_opacity)
            };
            svg.push_str(&format!(
                "  <path d=\"{}\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"{}/>\n",
                d.trim_end(),
                opacity
            ));
        }
    }

    for v in &scene.vertices {
        if !v.visible && opts.hidden_opacity <= 0.0 {
            continue;
        }
        let (x, y) = frame.map(v.pos);
        let opacity = if v.visible {
            String::new()
        } else {
            format!(" fill-opacity=\"{}\"", opts.hidden_opacity)
        };
        svg.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1f77b4\"{}/>\n",
            fmt(x),
            fmt(y),
            fmt(opts.vertex_radius),
            opacity
        ));
    }

    if opts.draw_labels {
        if let Some(labels) = g.labels() {
            for (v, label) in scene.vertices.iter().zip(labels) {
                if !v.visible && opts.hidden_opacity <= 0.0 {
                    continue;
                }
                let (x, y) = frame.map(v.pos);
                svg.push_str(&format!(
                    "  <text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#333333\">{}</text>\n",
                    fmt(x + opts.vertex_radius + 2.0),
                    fmt(y + 3.0),
                    escape(label)
                ));
            }
        }
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::apsp;
    use crate::embed::{sgd_layout, LayoutConfig};
    use crate::geometry::{Geometry, SphericalPoint};
    use crate::graph;

    #[test]
    fn single_vertex_renders_one_circle() {
        let emb = Embedding {
            geometry: Geometry::sphere(),
            coords: vec![[0.3, 1.0]],
            dilation: 1.0,
        };
        let g = Graph::new(1, []).unwrap();
        let kind = ProjectionKind::orthographic(SphericalPoint::new(0.0, 0.0));
        let svg = render_svg(&emb, &g, &kind, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn render_is_deterministic() {
        let g = graph::octahedron();
        let dm = apsp(&g).unwrap();
        let (emb, _) = sgd_layout(&dm, &LayoutConfig::default()).unwrap();
        let kind = ProjectionKind::orthographic(SphericalPoint::new(0.2, 0.4));
        let a = render_svg(&emb, &g, &kind, &RenderOptions::default()).unwrap();
        let b = render_svg(&emb, &g, &kind, &RenderOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn orthographic_edges_stay_in_disk() {
        let g = graph::octahedron();
        let dm = apsp(&g).unwrap();
        let (emb, _) = sgd_layout(&dm, &LayoutConfig::default().with_seed(2)).unwrap();
        let kind = ProjectionKind::orthographic(SphericalPoint::new(0.0, 0.0));
        let scene = build_scene(&emb, &g, &kind, 16).unwrap();
        for runs in &scene.edges {
            for run in runs {
                for p in &run.points {
                    assert!(p[0] * p[0] + p[1] * p[1] <= 1.0 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn hidden_content_can_be_omitted() {
        let emb = Embedding {
            geometry: Geometry::sphere(),
            coords: vec![[0.0, 0.0], [0.0, 2.9]],
            dilation: 1.0,
        };
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let kind = ProjectionKind::orthographic(SphericalPoint::new(0.0, 0.0));
        let faint = render_svg(&emb, &g, &kind, &RenderOptions::default()).unwrap();
        assert!(faint.contains("stroke-opacity"));
        let omit = render_svg(
            &emb,
            &g,
            &kind,
            &RenderOptions {
                hidden_opacity: 0.0,
                ..RenderOptions::default()
            },
        )
        .unwrap();
        assert!(!omit.contains("stroke-opacity"));
    }

    #[test]
    fn planar_layouts_render_directly() {
        let g = graph::cycle(6);
        let dm = apsp(&g).unwrap();
        for geometry in [Geometry::Euclidean, Geometry::Hyperbolic] {
            let (emb, _) = sgd_layout(&dm, &LayoutConfig::new(geometry)).unwrap();
            let svg = render_svg(
                &emb,
                &g,
                &ProjectionKind::Mercator, // ignored for planar layouts
                &RenderOptions::default(),
            )
            .unwrap();
            assert_eq!(svg.matches("<circle").count(), 6);
            assert_eq!(svg.matches("<path").count(), 6 + usize::from(geometry == Geometry::Hyperbolic));
        }
    }
}
