//! Deterministic SVG drawings of planar instances.

use std::fmt::Write;

use num_traits::ToPrimitive;
use skeleta_core::morse::MorseData;
use skeleta_core::skeleton::Skeleton;
use skeleta_core::Vector;

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error("instance has no drawing positions")]
    MissingPositions,
    #[error("drawing needs 2-dimensional positions, found dimension {0}")]
    NotPlanar(usize),
    #[error("{0} positions for {1} vertices")]
    Count(usize, usize),
}

const SIZE: f64 = 400.0;
const MARGIN: f64 = 40.0;
const RADIUS: f64 = 12.0;

/// Positions are indexed like `skel.ids()`. Edges carry arrows toward the
/// upper endpoint when `morse` is given.
pub fn render(skel: &Skeleton, positions: &[Vector], morse: Option<&MorseData>) -> Result<String, SvgError> {
    if positions.len() != skel.num_vertices() {
        return Err(SvgError::Count(positions.len(), skel.num_vertices()));
    }
    if let Some(p) = positions.iter().find(|p| p.dim() != 2) {
        return Err(SvgError::NotPlanar(p.dim()));
    }
    let pts: Vec<(f64, f64)> = positions
        .iter()
        .map(|p| (p.0[0].to_f64().unwrap_or(0.0), p.0[1].to_f64().unwrap_or(0.0)))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // SVG's y axis points down.
    let screen: Vec<(f64, f64)> =
        pts.iter().map(|&(x, y)| (MARGIN + (x - x0) * scale, SIZE - MARGIN - (y - y0) * scale)).collect();

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    if morse.is_some() {
        let _ = writeln!(
            s,
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" markerHeight="8" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#
        );
    }
    for (p, q) in skel.edges() {
        let (from, to) = match morse {
            Some(m) if m.phi(q) < m.phi(p) => (q, p),
            _ => (p, q),
        };
        let (a, b) = (screen[from], screen[to]);
        let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt().max(1e-9);
        let (ux, uy) = ((b.0 - a.0) / len, (b.1 - a.1) / len);
        let marker = if morse.is_some() { r#" marker-end="url(#arrow)""# } else { "" };
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"{marker}/>"#,
            a.0 + ux * RADIUS,
            a.1 + uy * RADIUS,
            b.0 - ux * RADIUS,
            b.1 - uy * RADIUS,
        );
    }
    for (p, &(x, y)) in screen.iter().enumerate() {
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{RADIUS}" fill="white" stroke="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" font-size="10" text-anchor="middle" font-family="monospace">{}</text>"#,
            y + 3.5,
            escape(skel.id(p))
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
