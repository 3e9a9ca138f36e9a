use std::collections::HashMap;

use serde::Serialize;

/// A chain of contour points. Closed chains do not repeat the first point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

impl Polyline {
    /// Even-odd point-in-polygon test; meaningful for closed chains.
    pub fn contains(&self, p: (f64, f64)) -> bool {
        let pts = &self.points;
        let mut inside = false;
        let mut j = pts.len() - 1;
        for i in 0..pts.len() {
            let (xi, yi) = pts[i];
            let (xj, yj) = pts[j];
            if (yi > p.1) != (yj > p.1) && p.0 < (xj - xi) * (p.1 - yi) / (yj - yi) + xi {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    /// Signed shoelace area.
    pub fn area(&self) -> f64 {
        let pts = &self.points;
        let n = pts.len();
        (0..n)
            .map(|i| {
                let (x0, y0) = pts[i];
                let (x1, y1) = pts[(i + 1) % n];
                x0 * y1 - x1 * y0
            })
            .sum::<f64>()
            / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Edge {
    // between (i, j) and (i+1, j)
    H(usize, usize),
    // between (i, j) and (i, j+1)
    V(usize, usize),
}

/// Crossing fraction along the grid edge between two corners.
pub type EdgeLocator<'a> = &'a dyn Fn((usize, usize), (usize, usize)) -> f64;

/// Level set of `values[j][i]` by marching squares.
///
/// Points come back in fractional grid coordinates `(i, j)`. `locate` gives
/// the crossing fraction along an edge from its first to its second corner;
/// pass `None` for linear interpolation. Saddle cells are resolved by the
/// cell-centre average.
pub fn marching_squares(values: &[Vec<f64>], level: f64, locate: Option<EdgeLocator<'_>>) -> Vec<Polyline> {
    let ny = values.len();
    if ny < 2 {
        return Vec::new();
    }
    let nx = values[0].len();
    let above = |i: usize, j: usize| values[j][i] > level;

    let mut segments: Vec<[Edge; 2]> = Vec::new();
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let c = [above(i, j), above(i + 1, j), above(i + 1, j + 1), above(i, j + 1)];
            let bottom = Edge::H(i, j);
            let right = Edge::V(i + 1, j);
            let top = Edge::H(i, j + 1);
            let left = Edge::V(i, j);
            let mut cut = Vec::with_capacity(4);
            if c[0] != c[1] {
                cut.push(bottom);
            }
            if c[1] != c[2] {
                cut.push(right);
            }
            if c[2] != c[3] {
                cut.push(top);
            }
            if c[3] != c[0] {
                cut.push(left);
            }
            match cut.len() {
                0 => {}
                2 => segments.push([cut[0], cut[1]]),
                4 => {
                    let centre = (values[j][i] + values[j][i + 1] + values[j + 1][i + 1] + values[j + 1][i]) / 4.0;
                    let joined = (centre > level) == c[0];
                    if joined {
                        // Corner 0's side runs through the centre: isolate corners 1 and 3.
                        segments.push([bottom, right]);
                        segments.push([top, left]);
                    } else {
                        segments.push([left, bottom]);
                        segments.push([right, top]);
                    }
                }
                _ => unreachable!("a square has an even number of sign changes"),
            }
        }
    }

    let point = |e: Edge| -> (f64, f64) {
        let (p0, p1) = match e {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
        };
        let t = match locate {
            Some(f) => f(p0, p1),
            None => {
                let (v0, v1) = (values[p0.1][p0.0], values[p1.1][p1.0]);
                (level - v0) / (v1 - v0)
            }
        };
        let t = t.clamp(0.0, 1.0);
        (p0.0 as f64 + t * (p1.0 - p0.0) as f64, p0.1 as f64 + t * (p1.1 - p0.1) as f64)
    };

    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, s) in segments.iter().enumerate() {
        for e in s {
            by_edge.entry(*e).or_default().push(k);
        }
    }

    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let walk = |start: usize, from: Edge, used: &mut Vec<bool>| -> (Vec<Edge>, bool) {
        let mut chain = vec![from];
        let mut seg = start;
        let mut at = from;
        loop {
            used[seg] = true;
            let s = segments[seg];
            let next = if s[0] == at { s[1] } else { s[0] };
            if next == from {
                return (chain, true);
            }
            chain.push(next);
            at = next;
            match by_edge[&at].iter().find(|&&k| !used[k]) {
                Some(&k) => seg = k,
                None => return (chain, false),
            }
        }
    };

    // Open chains start at edges touched by a single segment.
    for k in 0..segments.len() {
        if used[k] {
            continue;
        }
        if let Some(&e) = segments[k].iter().find(|e| by_edge[e].len() == 1) {
            let (chain, _) = walk(k, e, &mut used);
            out.push(Polyline { points: chain.into_iter().map(point).collect(), closed: false });
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            let (chain, closed) = walk(k, segments[k][0], &mut used);
            out.push(Polyline { points: chain.into_iter().map(point).collect(), closed });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, f: impl Fn(f64, f64) -> f64) -> Vec<Vec<f64>> {
        (0..n).map(|j| (0..n).map(|i| f(i as f64, j as f64)).collect()).collect()
    }

    #[test]
    fn circle_is_one_closed_chain() {
        let v = grid(41, |x, y| 100.0 - (x - 20.0).powi(2) - (y - 20.0).powi(2));
        let c = marching_squares(&v, 0.0, None);
        assert_eq!(c.len(), 1);
        assert!(c[0].closed);
        for &(x, y) in &c[0].points {
            let r = ((x - 20.0).powi(2) + (y - 20.0).powi(2)).sqrt();
            assert!((r - 10.0).abs() < 0.1, "{r}");
        }
        assert!((c[0].area().abs() - std::f64::consts::PI * 100.0).abs() < 2.0);
        assert!(c[0].contains((20.0, 20.0)));
        assert!(!c[0].contains((2.0, 2.0)));
    }

    #[test]
    fn clipped_circle_is_open() {
        let v = grid(21, |x, y| 100.0 - x * x - (y - 10.0).powi(2));
        let c = marching_squares(&v, 0.0, None);
        assert_eq!(c.len(), 1);
        assert!(!c[0].closed);
    }

    #[test]
    fn two_blobs() {
        let v = grid(40, |x, y| {
            let a = 16.0 - (x - 10.0).powi(2) - (y - 10.0).powi(2);
            let b = 16.0 - (x - 30.0).powi(2) - (y - 30.0).powi(2);
            a.max(b)
        });
        let c = marching_squares(&v, 0.0, None);
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|p| p.closed));
    }

    #[test]
    fn custom_locator_is_used() {
        let v = grid(3, |x, _| x - 0.5);
        let c = marching_squares(&v, 0.0, Some(&|_, _| 0.25));
        assert_eq!(c.len(), 1);
        assert!(c[0].points.iter().all(|p| (p.0 - 0.25).abs() < 1e-15));
    }
}
