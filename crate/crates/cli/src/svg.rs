//! Static SVG drawing of a dual polygon: edges labelled by taxa, one chord per diagonal.

use std::f64::consts::PI;
use std::fmt::Write;

use csn::polygon::chord_endpoints;
use csn::{PolygonRep, Scalar};

const SIZE: f64 = 400.0;
const RADIUS: f64 = 150.0;

fn vertex(i: usize, n: usize) -> (f64, f64) {
    // vertex 0 at the top, proceeding clockwise
    let angle = -PI / 2.0 + 2.0 * PI * i as f64 / n as f64;
    (SIZE / 2.0 + RADIUS * angle.cos(), SIZE / 2.0 + RADIUS * angle.sin())
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render_polygon<T: Scalar>(p: &PolygonRep<T>, decimal: bool) -> String {
    let n = p.n();
    let seq = p.ordering().as_slice();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(&format!("dual polygon for ordering {}", p.ordering())));
    let points: Vec<String> = (0..n).map(|i| vertex(i, n)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(
        out,
        r#"  <polygon class="boundary" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        points.join(" ")
    );
    // edge i runs from vertex i to vertex i+1 and carries taxon seq[i]
    for (i, taxon) in seq.iter().enumerate() {
        let (x0, y0) = vertex(i, n);
        let (x1, y1) = vertex((i + 1) % n, n);
        let (mx, my) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let scale = 1.0 + 18.0 / RADIUS;
        let (lx, ly) = (SIZE / 2.0 + (mx - SIZE / 2.0) * scale, SIZE / 2.0 + (my - SIZE / 2.0) * scale);
        let _ = writeln!(
            out,
            r#"  <text class="taxon" x="{lx:.2}" y="{ly:.2}" text-anchor="middle" dominant-baseline="middle" font-family="sans-serif" font-size="14">{taxon}</text>"#
        );
    }
    for d in p.diagonals() {
        let (a, b) = chord_endpoints(p.ordering(), d).expect("diagonals are circular for their ordering");
        let (x0, y0) = vertex(a, n);
        let (x1, y1) = vertex(b, n);
        let mut label = d.to_string();
        if let Some(w) = p.weights().and_then(|w| w.get(d)) {
            label.push_str(&format!(" weight {}", if decimal { w.to_f64().to_string() } else { w.render() }));
        }
        let _ = writeln!(
            out,
            r#"  <line class="chord" x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="steelblue" stroke-width="2"><title>{}</title></line>"#,
            escape(&label)
        );
    }
    out.push_str("</svg>\n");
    out
}
