//! SVG figures: intervals as solid segments with endpoint dots, detected
//! planar loci as dashed overlays.

use serde_json::Value;
use svg::node::element::path::Data;
use svg::node::element::{Circle, Group, Path, Rectangle};
use svg::Document;
use trapezoid_core::{Exact, Scalar};

use crate::report::{Locus, PencilJson, ReportFile};

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const CONIC_SAMPLES: usize = 400;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// `a x + b y + c = 0`.
    Line([f64; 3]),
    /// `q1 x² + q2 xy + q3 y² + q4 x + q5 y + q6 = 0`.
    Conic([f64; 6]),
    Point([f64; 2]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    pub shape: Shape,
    /// Index into the palette: one per detected structure.
    pub group: usize,
}

fn num(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => Exact::parse(s).ok().map(|q| q.to_f64()),
        _ => None,
    }
}

fn nums<const N: usize>(v: &[Value]) -> Option<[f64; N]> {
    let out: Vec<f64> = v.iter().map(num).collect::<Option<_>>()?;
    out.try_into().ok()
}

fn locus_shape(l: &Locus) -> Option<Shape> {
    match l {
        Locus::Line { coeffs } => nums(coeffs).map(Shape::Line),
        Locus::Conic { coeffs, .. } => nums(coeffs).map(Shape::Conic),
        _ => None,
    }
}

/// Planar overlays of a report: pullback lines of concurrencies, pencil
/// centers of coplanarities and endpoint curves of reguli.
pub fn overlays_from_report(report: &ReportFile) -> Vec<Overlay> {
    let mut out = Vec::new();
    let mut group = 0;
    let s = &report.structures;
    for w in &s.concurrencies {
        for l in w.initial_line.iter().chain(&w.terminal_line) {
            if let Some(c) = nums(l) {
                out.push(Overlay {
                    shape: Shape::Line(c),
                    group,
                });
            }
        }
        group += 1;
    }
    for w in &s.coplanarities {
        if let Some(PencilJson::Center { center, .. }) = &w.pencil {
            if let Some(p) = nums(center) {
                out.push(Overlay {
                    shape: Shape::Point(p),
                    group,
                });
            }
        }
        group += 1;
    }
    for r in &s.reguli {
        for ruling in &r.rulings {
            for l in [&ruling.initial, &ruling.terminal] {
                if let Some(shape) = locus_shape(l) {
                    out.push(Overlay { shape, group });
                }
            }
        }
        group += 1;
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Bounds {
    /// Bounding box of the intervals with a 5% margin on each side.
    fn of(intervals: &[[f64; 4]]) -> Self {
        let xs = intervals.iter().flat_map(|i| [i[0], i[2]]);
        let ys = intervals.iter().flat_map(|i| [i[1], i[3]]);
        let (mut x0, mut x1) = min_max(xs);
        let (mut y0, mut y1) = min_max(ys);
        if !(x0.is_finite() && y0.is_finite()) {
            (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let (w, h) = ((x1 - x0).max(span * 0.1), (y1 - y0).max(span * 0.1));
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let (hw, hh) = (w * 0.55, h * 0.55);
        Bounds {
            x0: cx - hw,
            x1: cx + hw,
            y0: cy - hh,
            y1: cy + hh,
        }
    }

    fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    fn inside(&self, x: f64, y: f64) -> bool {
        let eps = 1e-9 * self.width().max(self.height());
        x >= self.x0 - eps && x <= self.x1 + eps && y >= self.y0 - eps && y <= self.y1 + eps
    }
}

fn min_max(it: impl Iterator<Item = f64>) -> (f64, f64) {
    it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Screen coordinates flip y so the figure reads in the usual orientation.
fn screen(x: f64, y: f64) -> (f64, f64) {
    (x, -y)
}

fn clip_line(c: [f64; 3], b: &Bounds) -> Option<((f64, f64), (f64, f64))> {
    let [a, bb, cc] = c;
    let mut hits = Vec::new();
    if bb.abs() > 1e-12 {
        for x in [b.x0, b.x1] {
            let y = -(a * x + cc) / bb;
            if b.inside(x, y) {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [b.y0, b.y1] {
            let x = -(bb * y + cc) / a;
            if b.inside(x, y) {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    Some((*hits.first()?, *hits.last()?))
}

/// Polylines tracing the conic inside the box, one per connected run of a
/// root branch of the quadratic in `y`.
fn trace_conic(q: [f64; 6], b: &Bounds) -> Vec<Vec<(f64, f64)>> {
    let [q1, q2, q3, q4, q5, q6] = q;
    let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut current: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    for k in 0..=CONIC_SAMPLES {
        let x = b.x0 + b.width() * k as f64 / CONIC_SAMPLES as f64;
        let (qa, qb, qc) = (q3, q2 * x + q5, q1 * x * x + q4 * x + q6);
        let roots: [Option<f64>; 2] = if qa.abs() < 1e-12 {
            [(qb.abs() > 1e-12).then(|| -qc / qb), None]
        } else {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                [None, None]
            } else {
                let s = disc.sqrt();
                [Some((-qb + s) / (2.0 * qa)), Some((-qb - s) / (2.0 * qa))]
            }
        };
        for (branch, root) in roots.iter().enumerate() {
            match root.filter(|&y| b.inside(x, y)) {
                Some(y) => current[branch].push((x, y)),
                None => {
                    let run = std::mem::take(&mut current[branch]);
                    if run.len() > 1 {
                        runs.push(run);
                    }
                }
            }
        }
    }
    runs.extend(current.into_iter().filter(|r| r.len() > 1));
    runs
}

fn polyline(points: &[(f64, f64)]) -> Data {
    let mut data = Data::new().move_to(screen(points[0].0, points[0].1));
    for &(x, y) in &points[1..] {
        data = data.line_to(screen(x, y));
    }
    data
}

/// Renders intervals `[a, b, c, d]` and overlays as an SVG 1.1 document.
/// Each interval is exactly one `<path class="interval">`.
pub fn render_svg(intervals: &[[f64; 4]], overlays: &[Overlay]) -> String {
    let b = Bounds::of(intervals);
    let unit = b.width().max(b.height());
    let stroke = unit * 0.003;
    let dot = unit * 0.006;
    let dash = format!("{} {}", unit * 0.015, unit * 0.01);

    let mut segments = Group::new().set("id", "intervals");
    let mut dots = Group::new().set("id", "endpoints");
    for iv in intervals {
        let data = Data::new().move_to(screen(iv[0], iv[1])).line_to(screen(iv[2], iv[3]));
        segments = segments.add(
            Path::new()
                .set("class", "interval")
                .set("d", data)
                .set("stroke", "black")
                .set("stroke-width", stroke)
                .set("fill", "none"),
        );
        let (ix, iy) = screen(iv[0], iv[1]);
        let (tx, ty) = screen(iv[2], iv[3]);
        dots = dots
            .add(Circle::new().set("cx", ix).set("cy", iy).set("r", dot).set("fill", "black"))
            .add(
                Circle::new()
                    .set("cx", tx)
                    .set("cy", ty)
                    .set("r", dot)
                    .set("fill", "white")
                    .set("stroke", "black")
                    .set("stroke-width", stroke * 0.5),
            );
    }

    let mut extra = Group::new().set("id", "overlays");
    for o in overlays {
        let color = PALETTE[o.group % PALETTE.len()];
        let dashed = |d: Data| {
            Path::new()
                .set("class", "locus")
                .set("d", d)
                .set("stroke", color)
                .set("stroke-width", stroke)
                .set("stroke-dasharray", dash.as_str())
                .set("fill", "none")
        };
        match &o.shape {
            Shape::Line(c) => {
                if let Some((p, q)) = clip_line(*c, &b) {
                    extra = extra.add(dashed(polyline(&[p, q])));
                }
            }
            Shape::Conic(c) => {
                for run in trace_conic(*c, &b) {
                    extra = extra.add(dashed(polyline(&run)));
                }
            }
            Shape::Point([x, y]) => {
                let (sx, sy) = screen(*x, *y);
                extra = extra.add(
                    Circle::new()
                        .set("class", "center")
                        .set("cx", sx)
                        .set("cy", sy)
                        .set("r", dot * 1.5)
                        .set("fill", "none")
                        .set("stroke", color)
                        .set("stroke-width", stroke),
                );
            }
        }
    }

    let (vx, vy) = (b.x0, -b.y1);
    let doc = Document::new()
        .set("viewBox", (vx, vy, b.width(), b.height()))
        .set("width", 640)
        .set("height", (640.0 * b.height() / b.width()).round())
        .add(
            Rectangle::new()
                .set("x", vx)
                .set("y", vy)
                .set("width", b.width())
                .set("height", b.height())
                .set("fill", "white"),
        )
        .add(extra)
        .add(segments)
        .add(dots);
    doc.to_string()
}
