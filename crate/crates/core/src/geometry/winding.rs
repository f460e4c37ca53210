use super::{GeometryError, LatticePath};

/// A point in the continuous plane containing the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Signed number of counterclockwise turns `path` makes around `p`.
///
/// Casts a ray from `p` straight down (towards smaller `y`) and sums signed
/// crossings: an eastbound edge below `p` counts `+1`, a westbound one `-1`.
/// Vertical edges are parallel to the ray and never cross it transversally.
pub fn winding_number(path: &LatticePath, p: Point) -> Result<i32, GeometryError> {
    if !path.is_closed() {
        return Err(GeometryError::PathNotClosed);
    }
    let degenerate = || GeometryError::DegeneratePoint { x: p.x, y: p.y };

    let mut winding = 0;
    for edge in path.edges() {
        let (a, b) = (edge.from(), edge.to());
        let (ax, ay, bx, by) = (a.x as f64, a.y as f64, b.x as f64, b.y as f64);
        if edge.is_horizontal() {
            let (lo, hi) = (ax.min(bx), ax.max(bx));
            if ay > p.y || p.x < lo || p.x > hi {
                continue;
            }
            // Touching an endpoint or lying on the edge itself has no
            // well-defined crossing.
            if ay == p.y || p.x == lo || p.x == hi {
                return Err(degenerate());
            }
            winding += if bx > ax { 1 } else { -1 };
        } else if ax == p.x && ay.min(by) <= p.y {
            return Err(degenerate());
        }
    }
    Ok(winding)
}
