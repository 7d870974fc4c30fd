//! Affine transforms in two coordinate systems and the bridge between them.
//!
//! A [`GridAffine`] is a sampler matrix: it maps *output* sample locations to
//! *input* locations in normalized [-1, 1] coordinates, so content moves by
//! its inverse. A [`ContentAffine`] acts directly on font-unit points
//! (column convention, `p' = M p`). The bridge conjugates with the
//! normalization map `N` of a [`RenderFrame`]:
//!
//! ```text
//!     M = N^-1 . inv(aug(theta)) . N
//! ```
//!
//! `N` sends font units to normalized sampling coordinates: font y grows up
//! while image rows grow down, so `N` carries the y flip; pixel centers sit
//! at x_n = (2j+1)/W - 1 (half-pixel convention), which makes the continuous
//! map depend only on units-per-em and the frame's centering offset.

use super::Point;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AffineError {
    #[error("affine transform is singular")]
    Singular,
    #[error("merge of zero glyphs")]
    EmptyMerge,
    #[error("units-per-em mismatch: expected {expected}, found {found}")]
    UnitsMismatch { expected: u32, found: u32 },
}

/// 2x3 sampler matrix, row-major `[s_x, k_x, t_x, k_y, s_y, t_y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridAffine {
    pub theta: [f64; 6],
}

impl GridAffine {
    pub fn identity() -> GridAffine {
        GridAffine { theta: [1.0, 0.0, 0.0, 0.0, 1.0, 0.0] }
    }

    pub fn from_rows(theta: [f64; 6]) -> GridAffine {
        GridAffine { theta }
    }

    pub fn is_identity(&self) -> bool {
        self.theta == [1.0, 0.0, 0.0, 0.0, 1.0, 0.0]
    }

    pub fn det(&self) -> f64 {
        let [sx, kx, _, ky, sy, _] = self.theta;
        sx * sy - kx * ky
    }

    /// Inverse of the augmented 3x3 matrix, as affine rows.
    pub fn invert_aug(&self) -> Result<[f64; 6], AffineError> {
        let [sx, kx, tx, ky, sy, ty] = self.theta;
        let det = sx * sy - kx * ky;
        if det.abs() < 1e-12 {
            return Err(AffineError::Singular);
        }
        let a = sy / det;
        let b = -kx / det;
        let d = -ky / det;
        let e = sx / det;
        // Translation: -A^-1 t.
        let c = -(a * tx + b * ty);
        let f = -(d * tx + e * ty);
        Ok([a, b, c, d, e, f])
    }
}

/// 3x3 font-unit transform with implicit last row (0, 0, 1), row-major
/// `[a, b, c, d, e, f]` for rows `[a b c; d e f]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContentAffine {
    pub m: [f64; 6],
}

impl ContentAffine {
    pub fn identity() -> ContentAffine {
        ContentAffine { m: [1.0, 0.0, 0.0, 0.0, 1.0, 0.0] }
    }

    pub fn from_rows(m: [f64; 6]) -> ContentAffine {
        ContentAffine { m }
    }

    pub fn translation(dx: f64, dy: f64) -> ContentAffine {
        ContentAffine { m: [1.0, 0.0, dx, 0.0, 1.0, dy] }
    }

    pub fn scale(sx: f64, sy: f64) -> ContentAffine {
        ContentAffine { m: [sx, 0.0, 0.0, 0.0, sy, 0.0] }
    }

    pub fn det(&self) -> f64 {
        self.m[0] * self.m[4] - self.m[1] * self.m[3]
    }

    pub fn is_invertible(&self) -> bool {
        self.det().abs() >= 1e-12
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.m[0] * p.x + self.m[1] * p.y + self.m[2],
            self.m[3] * p.x + self.m[4] * p.y + self.m[5],
        )
    }

    /// `self . other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &ContentAffine) -> ContentAffine {
        let a = self.m;
        let b = other.m;
        ContentAffine {
            m: [
                a[0] * b[0] + a[1] * b[3],
                a[0] * b[1] + a[1] * b[4],
                a[0] * b[2] + a[1] * b[5] + a[2],
                a[3] * b[0] + a[4] * b[3],
                a[3] * b[1] + a[4] * b[4],
                a[3] * b[2] + a[4] * b[5] + a[5],
            ],
        }
    }

    pub fn invert(&self) -> Result<ContentAffine, AffineError> {
        let [a, b, c, d, e, f] = self.m;
        let det = a * e - b * d;
        if det.abs() < 1e-12 {
            return Err(AffineError::Singular);
        }
        let ia = e / det;
        let ib = -b / det;
        let id = -d / det;
        let ie = a / det;
        Ok(ContentAffine {
            m: [ia, ib, -(ia * c + ib * f), id, ie, -(id * c + ie * f)],
        })
    }
}

/// Rendering geometry: a square image of `size` pixels covering the whole em
/// box, plus the centering translation (font units) applied at render time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RenderFrame {
    pub size: usize,
    pub units_per_em: u32,
    /// Centering translation (dx, dy) applied to the glyph before scaling.
    pub offset: (f64, f64),
}

impl RenderFrame {
    pub fn new(size: usize, units_per_em: u32) -> RenderFrame {
        assert!(size >= 8, "frame size must be at least 8 pixels");
        RenderFrame { size, units_per_em, offset: (0.0, 0.0) }
    }

    pub fn with_offset(mut self, dx: f64, dy: f64) -> RenderFrame {
        self.offset = (dx, dy);
        self
    }

    /// Coefficients of the normalization map N: x_n = s*X + p, y_n = -s*Y + q.
    fn n_coeffs(&self) -> (f64, f64, f64) {
        let u = self.units_per_em as f64;
        let s = 2.0 / u;
        let p = 2.0 * self.offset.0 / u - 1.0;
        let q = 1.0 - 2.0 * self.offset.1 / u;
        (s, p, q)
    }
}

/// Convert a sampler matrix to the font-unit transform that moves content
/// the same way: `M = N^-1 . inv(aug(theta)) . N`, written in closed form so
/// an exact-identity sampler yields the exact identity transform.
pub fn grid_to_content_affine(
    theta: &GridAffine,
    frame: &RenderFrame,
) -> Result<ContentAffine, AffineError> {
    let [a, b, c, d, e, f] = theta.invert_aug()?;
    let (s, p, q) = frame.n_coeffs();
    Ok(ContentAffine {
        m: [
            a,
            -b,
            (a * p + b * q + c - p) / s,
            -d,
            e,
            (q - d * p - e * q - f) / s,
        ],
    })
}

/// Inverse conversion: the sampler whose content motion equals `m` under
/// `frame`. `grid_to_content_affine(content_to_grid_affine(m))` round-trips.
pub fn content_to_grid_affine(
    m: &ContentAffine,
    frame: &RenderFrame,
) -> Result<GridAffine, AffineError> {
    let (s, p, q) = frame.n_coeffs();
    let [m0, m1, m2, m3, m4, m5] = m.m;
    // A = N . M . N^-1, the content motion in normalized coordinates.
    let motion = ContentAffine {
        m: [
            m0,
            -m1,
            p - m0 * p + m1 * q + s * m2,
            -m3,
            m4,
            m3 * p - m4 * q - s * m5 + q,
        ],
    };
    let inv = motion.invert()?;
    Ok(GridAffine { theta: inv.m })
}

/// Flatten a content transform into the editor convention: parameters act in
/// component-local coordinates whose origin is the component bbox left-bottom
/// corner, flattened as `[s_x, k_x, k_y, s_y, t_x, t_y]`.
pub fn content_to_editor_params(m: &ContentAffine, component_bbox_origin: Point) -> [f64; 6] {
    let o = component_bbox_origin;
    let [a, b, c, d, e, f] = m.m;
    // M' = T^-1 . M . T with T the translation placing the local origin at
    // the bbox corner; the linear block is unchanged.
    let tx = c + (a - 1.0) * o.x + b * o.y;
    let ty = f + d * o.x + (e - 1.0) * o.y;
    [a, b, d, e, tx, ty]
}

/// Inverse of [`content_to_editor_params`] for the same origin.
pub fn editor_params_to_content(params: &[f64; 6], component_bbox_origin: Point) -> ContentAffine {
    let o = component_bbox_origin;
    let [a, b, d, e, tx, ty] = *params;
    ContentAffine {
        m: [
            a,
            b,
            tx - ((a - 1.0) * o.x + b * o.y),
            d,
            e,
            ty - (d * o.x + (e - 1.0) * o.y),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_sampler_converts_to_exact_identity() {
        let frame = RenderFrame::new(256, 1000);
        let m = grid_to_content_affine(&GridAffine::identity(), &frame).unwrap();
        assert_eq!(m.m, ContentAffine::identity().m);
    }

    #[test]
    fn normalized_x_shift_moves_content_left_by_half_em() {
        // Sampling shift +1 in normalized x at W=256, U=1000, zero centering.
        // Pushing a point through N, inv(aug(theta)), N^-1 by hand gives a
        // content translation of -500 font units (half the em).
        let frame = RenderFrame::new(256, 1000);
        let theta = GridAffine::from_rows([1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        let m = grid_to_content_affine(&theta, &frame).unwrap();
        assert!((m.m[2] - (-500.0)).abs() < 1e-9, "tx = {}", m.m[2]);
        assert!(m.m[5].abs() < 1e-9);
        assert_eq!(m.m[0], 1.0);
        assert_eq!(m.m[4], 1.0);
    }

    #[test]
    fn double_sampler_scale_halves_content_about_frame_center() {
        let frame = RenderFrame::new(256, 1000);
        let theta = GridAffine::from_rows([2.0, 0.0, 0.0, 0.0, 2.0, 0.0]);
        let m = grid_to_content_affine(&theta, &frame).unwrap();
        assert!((m.m[0] - 0.5).abs() < 1e-12);
        assert!((m.m[4] - 0.5).abs() < 1e-12);
        // The frame center (U/2, U/2) is the fixed point.
        let center = Point::new(500.0, 500.0);
        let moved = m.apply(center);
        assert!((moved.x - 500.0).abs() < 1e-9);
        assert!((moved.y - 500.0).abs() < 1e-9);
    }

    #[test]
    fn grid_content_round_trip_on_points() {
        let mut rng = crate::rng::SplitMix64::new(42);
        for _ in 0..50 {
            let frame = RenderFrame::new(256, 1000)
                .with_offset(rng.range_f64(-200.0, 200.0), rng.range_f64(-200.0, 200.0));
            let theta = GridAffine::from_rows([
                rng.range_f64(0.5, 1.5),
                rng.range_f64(-0.2, 0.2),
                rng.range_f64(-0.5, 0.5),
                rng.range_f64(-0.2, 0.2),
                rng.range_f64(0.5, 1.5),
                rng.range_f64(-0.5, 0.5),
            ]);
            let m = grid_to_content_affine(&theta, &frame).unwrap();
            let back = content_to_grid_affine(&m, &frame).unwrap();
            let m2 = grid_to_content_affine(&back, &frame).unwrap();
            for _ in 0..4 {
                let p = Point::new(rng.range_f64(0.0, 1000.0), rng.range_f64(0.0, 1000.0));
                let a = m.apply(p);
                let b = m2.apply(p);
                assert!((a.x - b.x).abs() < 1e-6 && (a.y - b.y).abs() < 1e-6);
            }
            for (t, u) in theta.theta.iter().zip(back.theta.iter()) {
                assert!((t - u).abs() < 1e-9, "theta {t} vs {u}");
            }
        }
    }

    #[test]
    fn editor_reorder_at_origin() {
        let m = ContentAffine::from_rows([2.0, 0.0, 10.0, 0.0, 3.0, 20.0]);
        let params = content_to_editor_params(&m, Point::new(0.0, 0.0));
        assert_eq!(params, [2.0, 0.0, 0.0, 3.0, 10.0, 20.0]);
    }

    #[test]
    fn editor_identity_any_origin() {
        let params =
            content_to_editor_params(&ContentAffine::identity(), Point::new(123.0, -45.0));
        assert_eq!(params, [1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn pure_translation_commutes_with_origin_shift() {
        let m = ContentAffine::translation(5.0, 7.0);
        let params = content_to_editor_params(&m, Point::new(100.0, 200.0));
        assert_eq!(params, [1.0, 0.0, 0.0, 1.0, 5.0, 7.0]);
    }

    #[test]
    fn editor_params_round_trip() {
        let mut rng = crate::rng::SplitMix64::new(7);
        for _ in 0..100 {
            let m = ContentAffine::from_rows([
                rng.range_f64(0.3, 2.0),
                rng.range_f64(-0.5, 0.5),
                rng.range_f64(-800.0, 800.0),
                rng.range_f64(-0.5, 0.5),
                rng.range_f64(0.3, 2.0),
                rng.range_f64(-800.0, 800.0),
            ]);
            let origin = Point::new(rng.range_f64(-500.0, 500.0), rng.range_f64(-500.0, 500.0));
            let params = content_to_editor_params(&m, origin);
            let back = editor_params_to_content(&params, origin);
            for (a, b) in m.m.iter().zip(back.m.iter()) {
                assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn singular_sampler_rejected() {
        let theta = GridAffine::from_rows([1.0, 1.0, 0.0, 1.0, 1.0, 0.0]);
        assert!(theta.invert_aug().is_err());
    }

    #[test]
    fn affine_inverse_composes_to_identity() {
        let m = ContentAffine::from_rows([0.8, 0.1, 50.0, -0.05, 1.2, -30.0]);
        let composed = m.compose(&m.invert().unwrap());
        for (got, want) in composed.m.iter().zip(ContentAffine::identity().m.iter()) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
