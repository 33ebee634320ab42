//! Plot of a planar body, its lattice points and the spindles of its lifting region.

use std::fmt::Write;

use unilift_core::lifting::RegionUnion;
use unilift_core::rational::rat_to_f64;
use unilift_core::{AffineLattice, Polytope, RatVec};

use crate::commands::{CliError, CliResult};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7"];

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, p: &RatVec) -> (f64, f64) {
        let x = rat_to_f64(&p[0]);
        let y = rat_to_f64(&p[1]);
        (MARGIN + (x - self.x0) * self.scale, MARGIN + (self.y1 - y) * self.scale)
    }

    fn path(&self, pts: &[RatVec]) -> String {
        pts.iter()
            .map(|p| {
                let (x, y) = self.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Vertices of a planar polygon in counter-clockwise order.
fn ccw(p: &Polytope) -> Vec<RatVec> {
    let c = p.vertex_centroid().to_f64();
    let mut v: Vec<RatVec> = p.vertices().to_vec();
    v.sort_by(|a, b| {
        let angle = |q: &RatVec| {
            let q = q.to_f64();
            (q[1] - c[1]).atan2(q[0] - c[0])
        };
        angle(a).total_cmp(&angle(b))
    });
    v
}

/// `window` is `xmin, ymin, xmax, ymax`; the default pads the bounding box by one.
pub fn render(
    b: &Polytope,
    lattice: &AffineLattice,
    region: &RegionUnion,
    window: Option<&RatVec>,
    guard: u64,
) -> CliResult<String> {
    if b.dim() != 2 {
        return Err(CliError::Usage("--svg needs a planar body".into()));
    }
    let (lo, hi) = match window {
        Some(w) => (RatVec::new(vec![w[0].clone(), w[1].clone()]), RatVec::new(vec![w[2].clone(), w[3].clone()])),
        None => {
            let (lo, hi) = b.bbox();
            let one = RatVec::from_ints(&[1, 1]);
            (&lo - &one, &hi + &one)
        }
    };
    let frame_box = Polytope::from_box(&lo, &hi)?;
    let (lo_f, hi_f) = (lo.to_f64(), hi.to_f64());
    let span = (hi_f[0] - lo_f[0]).max(hi_f[1] - lo_f[1]);
    let frame = Frame { x0: lo_f[0], y1: hi_f[1], scale: SIZE / span };
    let width = 2.0 * MARGIN + (hi_f[0] - lo_f[0]) * frame.scale;
    let height = 2.0 * MARGIN + (hi_f[1] - lo_f[1]) * frame.scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for piece in region.pieces() {
        let color = PALETTE[piece.facet % PALETTE.len()];
        let pts = if piece.polytope.is_full_dim() { ccw(&piece.polytope) } else { piece.polytope.vertices().to_vec() };
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.45" stroke="{color}" stroke-width="1"/>"#,
            frame.path(&pts)
        );
    }
    let _ = writeln!(out, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, frame.path(&ccw(b)));
    for z in lattice.points_in(&frame_box, guard)? {
        let (x, y) = frame.map(&z);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
    }
    let (fx, fy) = frame.map(region.anchor());
    let _ = writeln!(out, r#"<circle cx="{fx:.2}" cy="{fy:.2}" r="4" fill="red"/>"#);
    out.push_str("</svg>\n");
    Ok(out)
}
