//! Two-layer drawings as standalone SVG.
//!
//! Fixed layer on the left (position 0 at the top), free layer on the right
//! in the given order. The shorter column is centred against the longer one.
//! All coordinates are integers, so output is byte-stable.

use std::fmt::Write;

use crate::crossings::count_crossings;
use crate::instance::{Instance, Ordering};

pub const WIDTH: u32 = 400;
pub const LEFT_X: u32 = 100;
pub const RIGHT_X: u32 = 300;
/// y of the first row.
pub const TOP_MARGIN: u32 = 70;
pub const ROW_SPACING: u32 = 40;
pub const RADIUS: u32 = 6;
const BOTTOM_MARGIN: u32 = 30;
const LABEL_GAP: u32 = 12;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Panics if `ord` does not fit `inst`.
pub fn emit_two_layer_svg(inst: &Instance, ord: &Ordering) -> String {
    let crossings = count_crossings(inst, ord).expect("ordering must match the instance");
    let rows = inst.n_fixed().max(inst.n_free()).max(1) as u32;
    let height = TOP_MARGIN + (rows - 1) * ROW_SPACING + BOTTOM_MARGIN;
    let offset = |len: usize| (rows - (len as u32).max(1)) * ROW_SPACING / 2;
    let fixed_y = |a: usize| TOP_MARGIN + offset(inst.n_fixed()) + a as u32 * ROW_SPACING;
    let pos = ord.positions();
    let free_y = |v: usize| TOP_MARGIN + offset(inst.n_free()) + pos[v] as u32 * ROW_SPACING;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">crossings: {crossings}</text>"#,
        WIDTH / 2
    );
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1.5">"#);
    for &(a, v) in inst.edges() {
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT_X}" y1="{}" x2="{RIGHT_X}" y2="{}"/>"#,
            fixed_y(a),
            free_y(v)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="13">"#);
    for a in 0..inst.n_fixed() {
        let y = fixed_y(a);
        let _ = writeln!(
            s,
            r#"<circle cx="{LEFT_X}" cy="{y}" r="{RADIUS}" fill="steelblue"/><text x="{}" y="{}" text-anchor="end">{}</text>"#,
            LEFT_X - LABEL_GAP,
            y + 4,
            escape(&inst.fixed_label(a))
        );
    }
    for &v in ord.as_slice() {
        let y = free_y(v);
        let _ = writeln!(
            s,
            r#"<circle cx="{RIGHT_X}" cy="{y}" r="{RADIUS}" fill="darkorange"/><text x="{}" y="{}">{}</text>"#,
            RIGHT_X + LABEL_GAP,
            y + 4,
            escape(&inst.free_label(v))
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_drawing() {
        let inst = Instance::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let svg = emit_two_layer_svg(&inst, &Ordering::identity(2));
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(">crossings: 0</text>"));
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.contains(r#"<line x1="100" y1="70" x2="300" y2="70"/>"#));
        assert!(svg.contains(r#"<line x1="100" y1="110" x2="300" y2="110"/>"#));
    }

    #[test]
    fn k22_title() {
        let inst = Instance::new(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let svg = emit_two_layer_svg(&inst, &Ordering::identity(2));
        assert!(svg.contains(">crossings: 1</text>"));
    }

    #[test]
    fn shorter_column_is_centred() {
        let inst = Instance::new(3, 1, [(0, 0), (2, 0)]).unwrap();
        let svg = emit_two_layer_svg(&inst, &Ordering::identity(1));
        assert!(svg.contains(r#"<circle cx="300" cy="110""#));
    }

    #[test]
    fn deterministic_and_escaped() {
        let inst = Instance::new(1, 1, [(0, 0)])
            .unwrap()
            .with_labels(crate::instance::Labels {
                fixed: vec!["a<b".into()],
                free: vec!["x&y".into()],
            })
            .unwrap();
        let one = emit_two_layer_svg(&inst, &Ordering::identity(1));
        assert_eq!(one, emit_two_layer_svg(&inst, &Ordering::identity(1)));
        assert!(one.contains("a&lt;b") && one.contains("x&amp;y"));
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::new(0, 0, []).unwrap();
        let svg = emit_two_layer_svg(&inst, &Ordering::identity(0));
        assert!(svg.contains("crossings: 0"));
    }
}
