//! The seven spins of a quadrilateral network as points of the Fano plane.
//! Lines are the seven admissible triads: four sides-and-diagonal pairs
//! through each of the three diagonals, plus the diagonal triad `(x, y, z)`.

use std::fmt;

use serde::Serialize;

use crate::regge::{Diagonal, SevenSpinNetwork};

/// Point labels in index order.
pub const FANO_LABELS: [char; 7] = ['a', 'b', 'c', 'd', 'x', 'y', 'z'];

const LINES: [[usize; 3]; 7] = [
    [0, 1, 4], // a b x
    [2, 3, 4], // c d x
    [0, 2, 5], // a c y
    [1, 3, 5], // b d y
    [0, 3, 6], // a d z
    [1, 2, 6], // b c z
    [4, 5, 6], // x y z
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FanoPlane {
    pub labels: [char; 7],
    pub lines: [[usize; 3]; 7],
    /// Sides and diagonal ranges, when built from a network.
    pub network: Option<SevenSpinNetwork>,
}

impl FanoPlane {
    /// The bare incidence structure.
    pub fn standard() -> Self {
        FanoPlane { labels: FANO_LABELS, lines: LINES, network: None }
    }

    /// Indices of the lines through `point`.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        (0..7).filter(|&l| self.lines[l].contains(&point)).collect()
    }

    /// `"(a,b,x)"` style label of line `k`.
    pub fn line_label(&self, k: usize) -> String {
        let [i, j, l] = self.lines[k];
        format!("({},{},{})", self.labels[i], self.labels[j], self.labels[l])
    }

    /// Check the projective-plane axioms: every line has three points, every
    /// point lies on three lines, any two points share exactly one line and
    /// any two lines meet in exactly one point.
    pub fn validate(&self) -> Result<(), String> {
        for (k, l) in self.lines.iter().enumerate() {
            if l.iter().any(|&p| p >= 7) || l[0] == l[1] || l[1] == l[2] || l[0] == l[2] {
                return Err(format!("line {k} is not three distinct points"));
            }
        }
        for p in 0..7 {
            let n = self.lines_through(p).len();
            if n != 3 {
                return Err(format!("point {} lies on {n} lines", self.labels[p]));
            }
        }
        for p in 0..7 {
            for q in p + 1..7 {
                let n = self.lines.iter().filter(|l| l.contains(&p) && l.contains(&q)).count();
                if n != 1 {
                    return Err(format!("points {} and {} share {n} lines", self.labels[p], self.labels[q]));
                }
            }
        }
        for i in 0..7 {
            for j in i + 1..7 {
                let n = self.lines[i].iter().filter(|p| self.lines[j].contains(p)).count();
                if n != 1 {
                    return Err(format!("lines {i} and {j} meet in {n} points"));
                }
            }
        }
        Ok(())
    }

    fn point_value(&self, p: usize) -> Option<String> {
        let n = self.network.as_ref()?;
        Some(match p {
            0..=3 => n.quad.sides()[p].to_string(),
            _ => {
                let (lo, hi) = n.range(Diagonal::ALL[p - 4]);
                format!("{lo}..{hi}")
            }
        })
    }
}

/// Incidence structure of the seven spins of `n`.
pub fn fano_incidence(n: &SevenSpinNetwork) -> FanoPlane {
    FanoPlane { network: Some(*n), ..FanoPlane::standard() }
}

impl fmt::Display for FanoPlane {
    /// One row per line, followed by the values of its points when known.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..7 {
            write!(f, "{}", self.line_label(k))?;
            if self.network.is_some() {
                for &p in &self.lines[k] {
                    write!(f, "  {}={}", self.labels[p], self.point_value(p).unwrap_or_default())?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
