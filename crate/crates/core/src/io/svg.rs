//! SVG snapshot of a document. Exact coordinates are rounded to
//! [`SVG_DECIMALS`] decimals here and nowhere else.

use std::fmt::Write;

use super::document::{DocError, Document, Object};
use crate::geom::{midpoint_set, Point, PointSet};

pub const SVG_DECIMALS: usize = 6;

struct Layer {
    class: &'static str,
    points: Vec<(f64, f64)>,
    polyline: bool,
}

fn floats(points: &[Point]) -> Vec<(f64, f64)> {
    points.iter().map(Point::to_f64).collect()
}

fn layers(doc: &Document) -> Result<Vec<Layer>, DocError> {
    let mut out = Vec::new();
    let chain = |name: &str| match doc.objects.get(name) {
        Some(Object::Chain { points }) => Some(points.clone()),
        _ => None,
    };
    if let (Some(a), Some(b)) = (chain("P"), chain("Q")) {
        let sa: PointSet = a.iter().collect();
        let sb: PointSet = b.iter().collect();
        out.push(Layer { class: "mid", points: floats(&midpoint_set(&sa, &sb).to_vec()), polyline: false });
        out.push(Layer { class: "p", points: floats(&a), polyline: false });
        out.push(Layer { class: "q", points: floats(&b), polyline: false });
        if doc.has_level() {
            let w = doc.level_data()?;
            if w.witness.iter().all(|&(i, j)| i < a.len() && j < b.len()) {
                let pts: Vec<Point> = w.witness.iter().map(|&(i, j)| a[i].midpoint(&b[j])).collect();
                out.push(Layer { class: "witness", points: floats(&pts), polyline: true });
            }
        }
    }
    if let Some(Object::Points { points }) = doc.objects.get("points") {
        out.push(Layer { class: "pts", points: floats(points), polyline: false });
    }
    if doc.has_graph() {
        let (graph, placement) = doc.drawing()?;
        if let Some(pl) = placement {
            let pick =
                |ids: &[crate::graphs::VertexId]| ids.iter().filter_map(|x| pl.get(x).cloned()).collect::<Vec<_>>();
            let mut mids: Vec<Point> =
                graph.edges().iter().filter_map(|(a, b)| Some(pl.get(a)?.midpoint(pl.get(b)?))).collect();
            mids.sort();
            out.push(Layer { class: "p", points: floats(&pick(graph.u())), polyline: false });
            out.push(Layer { class: "q", points: floats(&pick(graph.v())), polyline: false });
            out.push(Layer { class: "witness", points: floats(&mids), polyline: true });
        }
    }
    if out.iter().all(|l| l.points.is_empty()) {
        return Err(DocError::Nothing("render"));
    }
    Ok(out)
}

fn num(x: f64) -> String {
    let s = format!("{x:.prec$}", prec = SVG_DECIMALS);
    if s.starts_with("-") && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_owned()
    } else {
        s
    }
}

/// Renders P, Q, the midpoint set and the witness chain in separate styles.
/// The y axis points up.
pub fn render_svg(doc: &Document) -> Result<String, DocError> {
    let layers = layers(doc)?;
    let all = layers.iter().flat_map(|l| l.points.iter());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = span * 0.05;
    let r = span * 0.006;
    let (vx, vy, vw, vh) = (x0 - pad, -(y1 + pad), x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        num(vx),
        num(vy),
        num(vw),
        num(vh),
        (800.0 * vh / vw).round().max(1.0)
    )
    .unwrap();
    writeln!(
        s,
        "<style>.p{{fill:#1f77b4}}.q{{fill:#d62728}}.mid{{fill:#bbbbbb}}.pts{{fill:#333333}}.witness{{fill:#2ca02c}}.chain{{fill:none;stroke:#2ca02c;stroke-width:{}}}</style>",
        num(r * 0.5)
    )
    .unwrap();
    for layer in &layers {
        writeln!(s, r#"<g class="layer-{}">"#, layer.class).unwrap();
        if layer.polyline && layer.points.len() > 1 {
            let pts: Vec<String> = layer.points.iter().map(|&(x, y)| format!("{},{}", num(x), num(-y))).collect();
            writeln!(s, r#"<polyline class="chain" points="{}"/>"#, pts.join(" ")).unwrap();
        }
        for &(x, y) in &layer.points {
            writeln!(s, r#"<circle class="{}" cx="{}" cy="{}" r="{}"/>"#, layer.class, num(x), num(-y), num(r))
                .unwrap();
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}
