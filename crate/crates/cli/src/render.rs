//! Arc diagrams (SVG) and DOT output for book embeddings.

use std::fmt::Write;

use halin_book::BookEmbedding;

use crate::document::Labels;

const STEP: f64 = 48.0;
const MARGIN: f64 = 32.0;
const LEGEND_ROW: f64 = 18.0;

/// Colour of page `k` out of `pages`, evenly spaced around the hue circle.
pub fn page_color(k: usize, pages: usize) -> String {
    let hue = (k * 360) / pages.max(1);
    format!("hsl({hue},70%,42%)")
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Vertices left to right in spine order, every edge a semicircle above
/// the line coloured by its page, and a legend underneath.
pub fn svg(emb: &BookEmbedding, labels: &Labels) -> String {
    let spine: Vec<_> = emb.spine().iter().collect();
    let n = spine.len();
    let pages = emb.page_count();
    let x = |p: usize| MARGIN + STEP * p as f64;
    let max_radius = STEP * n.saturating_sub(1) as f64 / 2.0;
    let baseline = MARGIN + max_radius;
    let width = 2.0 * MARGIN + STEP * n.saturating_sub(1) as f64;
    let height = baseline + 2.0 * MARGIN + LEGEND_ROW * pages as f64;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"  <title>{pages}-page matching book embedding</title>"#
    )
    .unwrap();
    writeln!(
        out,
        r##"  <line x1="{}" y1="{baseline}" x2="{}" y2="{baseline}" stroke="#999" stroke-width="1"/>"##,
        x(0),
        x(n.saturating_sub(1))
    )
    .unwrap();
    for (k, page) in emb.pages().iter().enumerate() {
        let color = page_color(k, pages);
        writeln!(
            out,
            r#"  <g class="page" data-page="{k}" stroke="{color}" fill="none" stroke-width="2">"#
        )
        .unwrap();
        for &e in page {
            let (a, b) = e.endpoints();
            let (pa, pb) = (
                emb.spine().position(a).expect("validated"),
                emb.spine().position(b).expect("validated"),
            );
            let (lo, hi) = (pa.min(pb), pa.max(pb));
            let r = (x(hi) - x(lo)) / 2.0;
            writeln!(
                out,
                r#"    <path d="M {} {baseline} A {r} {r} 0 0 1 {} {baseline}"><title>{}</title></path>"#,
                x(lo),
                x(hi),
                escape(&labels.edge_text(e))
            )
            .unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }
    for (p, v) in spine.iter().enumerate() {
        writeln!(
            out,
            r#"  <circle cx="{}" cy="{baseline}" r="4" fill="black"/>"#,
            x(p)
        )
        .unwrap();
        writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            x(p),
            baseline + 18.0,
            escape(labels.name(*v))
        )
        .unwrap();
    }
    let legend_top = baseline + 2.0 * MARGIN;
    writeln!(
        out,
        r#"  <g class="legend" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    for k in 0..pages {
        let y = legend_top + LEGEND_ROW * k as f64;
        writeln!(
            out,
            r#"    <rect x="{MARGIN}" y="{}" width="12" height="12" fill="{}"/>"#,
            y - 10.0,
            page_color(k, pages)
        )
        .unwrap();
        writeln!(
            out,
            r#"    <text x="{}" y="{y}">page {k}</text>"#,
            MARGIN + 18.0
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

fn dot_color(k: usize, pages: usize) -> String {
    format!("{:.3} 0.700 0.800", k as f64 / pages.max(1) as f64)
}

fn dot_id(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph; nodes are pinned in spine order and every edge
/// carries a `page` attribute.
pub fn dot(emb: &BookEmbedding, labels: &Labels) -> String {
    let pages = emb.page_count();
    let mut out = String::from("graph book {\n");
    for (p, v) in emb.spine().iter().enumerate() {
        writeln!(
            out,
            "  {} [pos=\"{},0!\", spine={p}];",
            dot_id(labels.name(v)),
            p as f64 * STEP
        )
        .unwrap();
    }
    for (k, page) in emb.pages().iter().enumerate() {
        for &e in page {
            let [a, b] = labels.pair(e);
            writeln!(
                out,
                "  {} -- {} [page={k}, color=\"{}\"];",
                dot_id(&a),
                dot_id(&b),
                dot_color(k, pages)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
