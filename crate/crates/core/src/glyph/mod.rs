//! Vector glyphs: closed Bézier contours in font units, y-up, origin at the
//! em-box left-bottom corner.

mod affine;
pub mod source;
mod svg;

pub use affine::{
    content_to_editor_params, content_to_grid_affine, editor_params_to_content,
    grid_to_content_affine, AffineError, ContentAffine, GridAffine, RenderFrame,
};
pub use svg::{parse_svg_path, to_svg_path, PathError};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// One segment; the start point is the previous segment's endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Segment {
    Line(Point),
    Quadratic(Point, Point),
    Cubic(Point, Point, Point),
}

impl Segment {
    pub fn endpoint(&self) -> Point {
        match *self {
            Segment::Line(p) => p,
            Segment::Quadratic(_, p) => p,
            Segment::Cubic(_, _, p) => p,
        }
    }

    /// All points of the segment (control points and endpoint).
    pub fn points_mut(&mut self) -> impl Iterator<Item = &mut Point> {
        let pts: Vec<&mut Point> = match self {
            Segment::Line(p) => vec![p],
            Segment::Quadratic(c, p) => vec![c, p],
            Segment::Cubic(c1, c2, p) => vec![c1, c2, p],
        };
        pts.into_iter()
    }
}

/// A closed contour: the last segment ends exactly at `start`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contour {
    pub start: Point,
    pub segments: Vec<Segment>,
}

impl Contour {
    pub fn is_closed(&self) -> bool {
        self.segments
            .last()
            .map(|s| s.endpoint() == self.start)
            .unwrap_or(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BBox {
    fn empty_at(p: Point) -> BBox {
        BBox { min_x: p.x, min_y: p.y, max_x: p.x, max_y: p.y }
    }

    fn include(&mut self, p: Point) {
        self.min_x = self.min_x.min(p.x);
        self.min_y = self.min_y.min(p.y);
        self.max_x = self.max_x.max(p.x);
        self.max_y = self.max_y.max(p.y);
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * (self.min_x + self.max_x), 0.5 * (self.min_y + self.max_y))
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    /// Left-bottom corner: the editor's component transform origin.
    pub fn origin(&self) -> Point {
        Point::new(self.min_x, self.min_y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VectorGlyph {
    pub units_per_em: u32,
    pub contours: Vec<Contour>,
}

impl VectorGlyph {
    pub fn new(units_per_em: u32, contours: Vec<Contour>) -> VectorGlyph {
        VectorGlyph { units_per_em, contours }
    }

    pub fn empty(units_per_em: u32) -> VectorGlyph {
        VectorGlyph { units_per_em, contours: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.contours.is_empty()
    }

    /// Tight bounding box including Bézier extrema. `None` when empty.
    pub fn bbox(&self) -> Option<BBox> {
        let first = self.contours.first()?;
        let mut bb = BBox::empty_at(first.start);
        for contour in &self.contours {
            bb.include(contour.start);
            let mut prev = contour.start;
            for seg in &contour.segments {
                segment_bbox(&mut bb, prev, seg);
                prev = seg.endpoint();
            }
        }
        Some(bb)
    }

    /// Transform every anchor and control point by `m`. Affine maps preserve
    /// Bézier form, so segment types are unchanged.
    pub fn apply_affine(&self, m: &ContentAffine) -> Result<VectorGlyph, AffineError> {
        if !m.is_invertible() {
            return Err(AffineError::Singular);
        }
        let contours = self
            .contours
            .iter()
            .map(|contour| {
                let mut c = contour.clone();
                c.start = m.apply(c.start);
                for seg in &mut c.segments {
                    for p in seg.points_mut() {
                        *p = m.apply(*p);
                    }
                }
                c
            })
            .collect();
        Ok(VectorGlyph { units_per_em: self.units_per_em, contours })
    }
}

/// Concatenate contours in input order. No boolean path operations: overlap
/// removal stays a designer task and the output stays editable.
pub fn merge(glyphs: &[VectorGlyph]) -> Result<VectorGlyph, AffineError> {
    let first = glyphs.first().ok_or(AffineError::EmptyMerge)?;
    let upem = first.units_per_em;
    let mut contours = Vec::new();
    for g in glyphs {
        if g.units_per_em != upem {
            return Err(AffineError::UnitsMismatch { expected: upem, found: g.units_per_em });
        }
        contours.extend(g.contours.iter().cloned());
    }
    Ok(VectorGlyph { units_per_em: upem, contours })
}

fn segment_bbox(bb: &mut BBox, start: Point, seg: &Segment) {
    bb.include(seg.endpoint());
    match *seg {
        Segment::Line(_) => {}
        Segment::Quadratic(c, p1) => {
            for (p0, pc, pe) in [(start.x, c.x, p1.x), (start.y, c.y, p1.y)] {
                // Extremum of the quadratic at t = (p0-c)/(p0-2c+p1).
                let denom = p0 - 2.0 * pc + pe;
                if denom.abs() > 1e-12 {
                    let t = (p0 - pc) / denom;
                    if t > 0.0 && t < 1.0 {
                        bb.include(quad_at_point(start, c, p1, t));
                    }
                }
            }
        }
        Segment::Cubic(c1, c2, p1) => {
            for axis_x in [true, false] {
                let (p0, q1, q2, p3) = if axis_x {
                    (start.x, c1.x, c2.x, p1.x)
                } else {
                    (start.y, c1.y, c2.y, p1.y)
                };
                // B'(t) roots: 3at^2 + 2bt + c with a,b,c below.
                let a = -p0 + 3.0 * q1 - 3.0 * q2 + p3;
                let b = 2.0 * (p0 - 2.0 * q1 + q2);
                let c = q1 - p0;
                for t in quadratic_roots(3.0 * a, b, c) {
                    if t > 0.0 && t < 1.0 {
                        bb.include(cubic_at_point(start, c1, c2, p1, t));
                    }
                }
            }
        }
    }
}

fn quad_at(p0: f64, c: f64, p1: f64, t: f64) -> f64 {
    let u = 1.0 - t;
    u * u * p0 + 2.0 * u * t * c + t * t * p1
}

fn quad_at_point(s: Point, c: Point, p: Point, t: f64) -> Point {
    Point::new(quad_at(s.x, c.x, p.x, t), quad_at(s.y, c.y, p.y, t))
}

fn cubic_at_point(s: Point, c1: Point, c2: Point, p: Point, t: f64) -> Point {
    let u = 1.0 - t;
    let w0 = u * u * u;
    let w1 = 3.0 * u * u * t;
    let w2 = 3.0 * u * t * t;
    let w3 = t * t * t;
    Point::new(
        w0 * s.x + w1 * c1.x + w2 * c2.x + w3 * p.x,
        w0 * s.y + w1 * c1.y + w2 * c2.y + w3 * p.y,
    )
}

/// Real roots of ax^2 + bx + c (degenerates to linear when a ~ 0).
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a.abs() < 1e-12 {
        if b.abs() < 1e-12 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    vec![(-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a)]
}
