//! SVG 1.1 pictures of layouts, uphill drawings and graph drawings.

use std::fmt::Write as _;

use crate::bookembed::Page;
use crate::expand::GraphDrawing;
use crate::graph::Color;
use crate::layout::PointLayout;
use crate::rational::Point;
use crate::uphill::UphillDrawing;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 1.0;

struct Canvas {
    min: (f64, f64),
    max: (f64, f64),
    body: String,
}

impl Canvas {
    fn new(points: impl Iterator<Item = Point>) -> Canvas {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            let (x, y) = p.to_f64();
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        if !min.0.is_finite() {
            min = (0.0, 0.0);
            max = (0.0, 0.0);
        }
        Canvas {
            min: (min.0 - MARGIN, min.1 - MARGIN),
            max: (max.0 + MARGIN, max.1 + MARGIN),
            body: String::new(),
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let (x, y) = p.to_f64();
        ((x - self.min.0) * UNIT, (self.max.1 - y) * UNIT)
    }

    fn open(&mut self, id: &str) {
        let _ = writeln!(self.body, "<g id=\"{id}\">");
    }

    fn close(&mut self) {
        self.body.push_str("</g>\n");
    }

    fn polyline(&mut self, pts: &[Point], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(self.body, "<polyline points=\"{}\" fill=\"none\" {style}/>", coords.join(" "));
    }

    fn dot(&mut self, p: Point, fill: &str, title: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"{fill}\" stroke=\"black\"><title>{title}</title></circle>"
        );
    }

    fn blocks(&mut self, layout: &PointLayout) {
        self.open("blocks");
        for b in &layout.blocks {
            let pts: Vec<Point> = layout.points[b.start..b.end]
                .iter()
                .map(|p| p.location)
                .collect();
            if pts.is_empty() {
                continue;
            }
            let (a, c) = pts.iter().fold((self.map(pts[0]), self.map(pts[0])), |(lo, hi), &p| {
                let q = self.map(p);
                ((lo.0.min(q.0), lo.1.min(q.1)), (hi.0.max(q.0), hi.1.max(q.1)))
            });
            let pad = UNIT * 0.3;
            let _ = writeln!(
                self.body,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#dddddd\" stroke=\"none\"/>",
                a.0 - pad,
                a.1 - pad,
                c.0 - a.0 + 2.0 * pad,
                c.1 - a.1 + 2.0 * pad
            );
        }
        self.close();
    }

    fn finish(self) -> String {
        let w = (self.max.0 - self.min.0) * UNIT;
        let h = (self.max.1 - self.min.1) * UNIT;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n{}</svg>\n",
            self.body
        )
    }
}

pub fn color_fill(c: Color) -> String {
    format!("hsl({:.0},70%,55%)", (c as f64 * 137.508) % 360.0)
}

/// The layout's blocks and the spinal path drawing.
pub fn uphill_svg(ud: &UphillDrawing, layout: &PointLayout) -> String {
    let mut cv = Canvas::new(ud.edges.iter().flat_map(|e| e.points.iter().copied()).chain(layout.points.iter().map(|p| p.location)));
    cv.blocks(layout);
    cv.open("spinal-path");
    for e in &ud.edges {
        cv.polyline(&e.points, "stroke=\"black\" stroke-width=\"1.5\"");
    }
    cv.close();
    cv.open("vertices");
    for (i, &v) in ud.vertices.iter().enumerate() {
        cv.dot(v, "white", &format!("item {i}"));
    }
    cv.close();
    cv.finish()
}

/// Layers: block shading, spinal path, upper-page edges, lower-page edges,
/// vertices.
pub fn drawing_svg(d: &GraphDrawing, layout: &PointLayout, ud: Option<&UphillDrawing>) -> String {
    let mut cv = Canvas::new(
        d.edges
            .iter()
            .flat_map(|e| e.polyline.points.iter().copied())
            .chain(layout.points.iter().map(|p| p.location)),
    );
    cv.blocks(layout);
    cv.open("spinal-path");
    if let Some(ud) = ud {
        for e in &ud.edges {
            cv.polyline(&e.points, "stroke=\"#999999\" stroke-dasharray=\"4,3\"");
        }
    }
    cv.close();
    for (id, page, stroke) in [("above-page", Page::Above, "#1f5fbf"), ("below-page", Page::Below, "#bf3f1f")] {
        cv.open(id);
        for e in d.edges.iter().filter(|e| e.pages.first() == Some(&page)) {
            cv.polyline(&e.polyline.points, &format!("stroke=\"{stroke}\" stroke-width=\"1.5\""));
        }
        cv.close();
    }
    cv.open("vertices");
    for v in &d.vertices {
        cv.dot(v.location, &color_fill(v.color), &format!("vertex {} color {}", v.id, v.color));
    }
    cv.close();
    cv.finish()
}
