//! Two-layer straight-line drawings as SVG.

use std::fmt::Write;

use oscm_gaps::{count_gaps, BipartiteInstance, NodeId, NodeKind, Permutation};

use crate::error::CliError;

/// Pixels per unit of horizontal spacing.
const UNIT: i64 = 40;
const MARGIN: i64 = 40;
const TOP_Y: i64 = 40;
const BOTTOM_Y: i64 = 160;
const R: i64 = 8;
const PAD: i64 = 14;
const DUMMY_FILL: &str = "#8a2be2";

fn x(pos: usize) -> i64 {
    MARGIN + UNIT * pos as i64
}

fn glyph(s: &mut String, id: NodeId, kind: NodeKind, cx: i64, cy: i64, label_dy: i64) {
    match kind {
        NodeKind::Real => {
            let _ = writeln!(s, r#"<circle class="real" cx="{cx}" cy="{cy}" r="{R}" fill="white" stroke="black"/>"#);
        }
        NodeKind::Dummy => {
            let _ = writeln!(
                s,
                r#"<rect class="dummy" x="{}" y="{}" width="{}" height="{}" fill="{DUMMY_FILL}" stroke="black"/>"#,
                cx - R,
                cy - R,
                2 * R,
                2 * R
            );
        }
    }
    let _ = writeln!(s, r#"<text x="{cx}" y="{}" text-anchor="middle">{}</text>"#, cy + label_dy, id.0);
}

/// Bottom row in the fixed order, top row in `pi2`; dummies are squares and every gap gets a
/// dashed outline.
pub fn draw(inst: &BipartiteInstance, pi2: &Permutation) -> Result<String, CliError> {
    pi2.ensure_covers(inst.top_ids())
        .map_err(|e| CliError::Input(format!("permutation does not match instance: {e}")))?;
    let pi1 = inst.pi1();
    let bottom_kind = |id: NodeId| inst.bottom().iter().find(|n| n.id == id).map_or(NodeKind::Real, |n| n.kind);
    let cols = pi1.len().max(pi2.len()).max(1);
    let width = 2 * MARGIN + UNIT * (cols as i64 - 1);
    let height = BOTTOM_Y + MARGIN;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">"#
    );
    for &(b, t) in inst.edges() {
        let (Some(pb), Some(pt)) = (pi1.position(b), pi2.position(t)) else {
            continue;
        };
        let _ = writeln!(
            s,
            r#"<line class="edge" x1="{}" y1="{BOTTOM_Y}" x2="{}" y2="{TOP_Y}" stroke="gray"/>"#,
            x(pb),
            x(pt)
        );
    }
    for &(start, end) in &count_gaps(inst, pi2).runs {
        let _ = writeln!(
            s,
            r#"<rect class="gap" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-dasharray="4 3"/>"#,
            x(start) - PAD,
            TOP_Y - PAD,
            x(end) - x(start) + 2 * PAD,
            2 * PAD
        );
    }
    for (pos, id) in pi1.iter().enumerate() {
        glyph(&mut s, id, bottom_kind(id), x(pos), BOTTOM_Y, R + 12);
    }
    for (pos, id) in pi2.iter().enumerate() {
        let kind = inst.top_kind(id).unwrap_or(NodeKind::Real);
        glyph(&mut s, id, kind, x(pos), TOP_Y, -(R + 8));
    }
    s.push_str("</svg>\n");
    Ok(s)
}
