//! SVG path-data subset: M/m, L/l, H/h, V/v, Q/q, C/c, Z/z with decimal
//! numbers. Arcs are unsupported; fonts do not use them.

use super::{Contour, Point, Segment};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PathError {
    #[error("empty path")]
    Empty,
    #[error("unknown command `{0}`")]
    UnknownCommand(char),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("unexpected end of data in `{0}` command")]
    Truncated(char),
    #[error("path data must start with a move command")]
    NoInitialMove,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Command(char),
    Number(f64),
}

fn tokenize(d: &str) -> Result<Vec<Token>, PathError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = d.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            if !"MmLlHhVvQqCcZz".contains(c) {
                return Err(PathError::UnknownCommand(c));
            }
            out.push(Token::Command(c));
            i += 1;
        } else {
            let start = i;
            // Sign, digits, dot, digits, exponent.
            if bytes[i] == '+' || bytes[i] == '-' {
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == '.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == 'e' || bytes[i] == 'E') {
                i += 1;
                if i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = bytes[start..i].iter().collect();
            let value: f64 = text
                .parse()
                .map_err(|_| PathError::BadNumber(text.clone()))?;
            if !value.is_finite() {
                return Err(PathError::BadNumber(text));
            }
            out.push(Token::Number(value));
        }
    }
    Ok(out)
}

struct Builder {
    contours: Vec<Contour>,
    start: Point,
    cur: Point,
    segments: Vec<Segment>,
    open: bool,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            contours: Vec::new(),
            start: Point::new(0.0, 0.0),
            cur: Point::new(0.0, 0.0),
            segments: Vec::new(),
            open: false,
        }
    }

    fn move_to(&mut self, p: Point) {
        self.finish(false);
        self.start = p;
        self.cur = p;
        self.open = true;
    }

    fn push(&mut self, seg: Segment) {
        self.cur = seg.endpoint();
        self.segments.push(seg);
    }

    /// Close the running subpath. Unclosed subpaths get an implicit line.
    fn finish(&mut self, explicit_close: bool) {
        if self.open && !self.segments.is_empty() {
            if self.cur != self.start {
                self.segments.push(Segment::Line(self.start));
            }
            self.contours.push(Contour {
                start: self.start,
                segments: std::mem::take(&mut self.segments),
            });
        } else {
            self.segments.clear();
        }
        self.open = false;
        if explicit_close {
            self.cur = self.start;
        }
    }
}

/// Parse path data into closed contours.
pub fn parse_svg_path(d: &str) -> Result<Vec<Contour>, PathError> {
    let tokens = tokenize(d)?;
    if tokens.is_empty() {
        return Err(PathError::Empty);
    }

    let mut b = Builder::new();
    let mut i = 0usize;
    let mut cmd: Option<char> = None;

    let take = |tokens: &[Token], i: &mut usize, cmd: char| -> Result<f64, PathError> {
        match tokens.get(*i) {
            Some(Token::Number(v)) => {
                *i += 1;
                Ok(*v)
            }
            _ => Err(PathError::Truncated(cmd)),
        }
    };

    while i < tokens.len() {
        let c = match &tokens[i] {
            Token::Command(c) => {
                i += 1;
                cmd = Some(*c);
                *c
            }
            Token::Number(_) => match cmd {
                // Implicit repetition; M/m repeat as L/l.
                Some('M') => {
                    cmd = Some('L');
                    'L'
                }
                Some('m') => {
                    cmd = Some('l');
                    'l'
                }
                Some(c) => c,
                None => return Err(PathError::NoInitialMove),
            },
        };
        if b.contours.is_empty() && !b.open && !matches!(c, 'M' | 'm') {
            return Err(PathError::NoInitialMove);
        }
        match c {
            'M' | 'm' => {
                let x = take(&tokens, &mut i, c)?;
                let y = take(&tokens, &mut i, c)?;
                let p = if c == 'm' && b.open || c == 'm' && !b.contours.is_empty() {
                    Point::new(b.cur.x + x, b.cur.y + y)
                } else if c == 'm' {
                    // First moveto of the path: treated as absolute.
                    Point::new(x, y)
                } else {
                    Point::new(x, y)
                };
                b.move_to(p);
            }
            'L' | 'l' => {
                let x = take(&tokens, &mut i, c)?;
                let y = take(&tokens, &mut i, c)?;
                let p = if c == 'l' {
                    Point::new(b.cur.x + x, b.cur.y + y)
                } else {
                    Point::new(x, y)
                };
                b.push(Segment::Line(p));
            }
            'H' | 'h' => {
                let x = take(&tokens, &mut i, c)?;
                let p = if c == 'h' {
                    Point::new(b.cur.x + x, b.cur.y)
                } else {
                    Point::new(x, b.cur.y)
                };
                b.push(Segment::Line(p));
            }
            'V' | 'v' => {
                let y = take(&tokens, &mut i, c)?;
                let p = if c == 'v' {
                    Point::new(b.cur.x, b.cur.y + y)
                } else {
                    Point::new(b.cur.x, y)
                };
                b.push(Segment::Line(p));
            }
            'Q' | 'q' => {
                let cx = take(&tokens, &mut i, c)?;
                let cy = take(&tokens, &mut i, c)?;
                let x = take(&tokens, &mut i, c)?;
                let y = take(&tokens, &mut i, c)?;
                let (ctrl, end) = if c == 'q' {
                    (
                        Point::new(b.cur.x + cx, b.cur.y + cy),
                        Point::new(b.cur.x + x, b.cur.y + y),
                    )
                } else {
                    (Point::new(cx, cy), Point::new(x, y))
                };
                b.push(Segment::Quadratic(ctrl, end));
            }
            'C' | 'c' => {
                let x1 = take(&tokens, &mut i, c)?;
                let y1 = take(&tokens, &mut i, c)?;
                let x2 = take(&tokens, &mut i, c)?;
                let y2 = take(&tokens, &mut i, c)?;
                let x = take(&tokens, &mut i, c)?;
                let y = take(&tokens, &mut i, c)?;
                let (c1, c2, end) = if c == 'c' {
                    (
                        Point::new(b.cur.x + x1, b.cur.y + y1),
                        Point::new(b.cur.x + x2, b.cur.y + y2),
                        Point::new(b.cur.x + x, b.cur.y + y),
                    )
                } else {
                    (Point::new(x1, y1), Point::new(x2, y2), Point::new(x, y))
                };
                b.push(Segment::Cubic(c1, c2, end));
            }
            'Z' | 'z' => b.finish(true),
            other => return Err(PathError::UnknownCommand(other)),
        }
    }
    b.finish(false);

    if b.contours.is_empty() {
        return Err(PathError::Empty);
    }
    Ok(b.contours)
}

/// Serialize contours to path data. A trailing straight closing edge is
/// emitted as `Z`, so `parse_svg_path(to_svg_path(x))` reproduces `x`.
pub fn to_svg_path(contours: &[Contour]) -> String {
    let mut out = String::new();
    for contour in contours {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&format!("M {} {}", contour.start.x, contour.start.y));
        let n = contour.segments.len();
        for (i, seg) in contour.segments.iter().enumerate() {
            let closing_line =
                i + 1 == n && matches!(seg, Segment::Line(p) if *p == contour.start);
            if closing_line {
                break;
            }
            match seg {
                Segment::Line(p) => out.push_str(&format!(" L {} {}", p.x, p.y)),
                Segment::Quadratic(c, p) => {
                    out.push_str(&format!(" Q {} {} {} {}", c.x, c.y, p.x, p.y))
                }
                Segment::Cubic(c1, c2, p) => out.push_str(&format!(
                    " C {} {} {} {} {} {}",
                    c1.x, c1.y, c2.x, c2.y, p.x, p.y
                )),
            }
        }
        out.push_str(" Z");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_parses_to_three_lines() {
        let contours = parse_svg_path("M 0 0 L 10 0 L 10 10 Z").unwrap();
        assert_eq!(contours.len(), 1);
        let c = &contours[0];
        assert_eq!(c.start, Point::new(0.0, 0.0));
        assert_eq!(c.segments.len(), 3, "closing line included");
        assert!(c.is_closed());
        assert_eq!(c.segments[2], Segment::Line(Point::new(0.0, 0.0)));
    }

    #[test]
    fn cubic_then_implicit_close() {
        let contours = parse_svg_path("M0,0 C 0 10 10 10 10 0 Z").unwrap();
        let c = &contours[0];
        assert_eq!(c.segments.len(), 2);
        assert!(matches!(c.segments[0], Segment::Cubic(..)));
        assert!(matches!(c.segments[1], Segment::Line(_)));
    }

    #[test]
    fn relative_commands_resolve() {
        // Hand resolution: l 5 5 -> (5,5); h -5 -> (0,5); z closes to (0,0).
        let contours = parse_svg_path("M 0 0 l 5 5 h -5 z").unwrap();
        let c = &contours[0];
        let endpoints: Vec<Point> = c.segments.iter().map(|s| s.endpoint()).collect();
        assert_eq!(
            endpoints,
            vec![Point::new(5.0, 5.0), Point::new(0.0, 5.0), Point::new(0.0, 0.0)]
        );
    }

    #[test]
    fn implicit_lineto_after_move() {
        let contours = parse_svg_path("M 0 0 10 0 10 10 Z").unwrap();
        assert_eq!(contours[0].segments.len(), 3);
    }

    #[test]
    fn unclosed_subpath_closed_with_line() {
        let contours = parse_svg_path("M 0 0 L 10 0 L 10 10").unwrap();
        assert!(contours[0].is_closed());
        assert_eq!(contours[0].segments.len(), 3);
    }

    #[test]
    fn two_subpaths() {
        let contours = parse_svg_path("M 0 0 L 1 0 L 1 1 Z M 5 5 L 6 5 L 6 6 Z").unwrap();
        assert_eq!(contours.len(), 2);
        assert_eq!(contours[1].start, Point::new(5.0, 5.0));
    }

    #[test]
    fn unknown_command_rejected() {
        assert_eq!(
            parse_svg_path("M 0 0 A 1 1 0 0 0 5 5 Z").unwrap_err(),
            PathError::UnknownCommand('A')
        );
    }

    #[test]
    fn bad_number_rejected() {
        assert!(matches!(
            parse_svg_path("M 0 0 L 1..2 0 Z"),
            Err(PathError::BadNumber(_))
        ));
    }

    #[test]
    fn empty_path_rejected() {
        assert_eq!(parse_svg_path("").unwrap_err(), PathError::Empty);
        assert_eq!(parse_svg_path("   ").unwrap_err(), PathError::Empty);
    }

    #[test]
    fn triangle_round_trips_to_same_text() {
        let d = "M 0 0 L 10 0 L 10 10 Z";
        let contours = parse_svg_path(d).unwrap();
        assert_eq!(to_svg_path(&contours), d);
    }

    #[test]
    fn empty_contour_list_serializes_to_empty_string() {
        assert_eq!(to_svg_path(&[]), "");
    }

    #[test]
    fn scientific_notation_numbers() {
        let contours = parse_svg_path("M 0 0 L 1e2 0 L 1e2 1.5e1 Z").unwrap();
        assert_eq!(contours[0].segments[0].endpoint(), Point::new(100.0, 0.0));
    }

    #[test]
    fn round_trip_preserves_geometry() {
        let d = "M 10.5 -3 Q 20 40 30 0 C 1 2 3 4 -5 6.25 Z M 0 0 L 4 0 V 4 H 0 Z";
        let first = parse_svg_path(d).unwrap();
        let second = parse_svg_path(&to_svg_path(&first)).unwrap();
        assert_eq!(first.len(), second.len());
        for (a, b) in first.iter().zip(&second) {
            assert_eq!(a.segments.len(), b.segments.len());
            let mut pa = a.start;
            let mut pb = b.start;
            assert!((pa.x - pb.x).abs() < 1e-6 && (pa.y - pb.y).abs() < 1e-6);
            for (sa, sb) in a.segments.iter().zip(&b.segments) {
                assert_eq!(std::mem::discriminant(sa), std::mem::discriminant(sb));
                pa = sa.endpoint();
                pb = sb.endpoint();
                assert!((pa.x - pb.x).abs() < 1e-6 && (pa.y - pb.y).abs() < 1e-6);
            }
        }
    }
}
