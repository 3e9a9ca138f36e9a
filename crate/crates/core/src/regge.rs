//! The seven-spin network: four quadrilateral sides `a, b, c, d` and the
//! three diagonals `x = j_ab = j_cd`, `y = j_ac = j_bd`, `z = j_ad = j_bc`,
//! brought to canonical form under Regge and permutation symmetry.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numeric::{half_int_range, HalfInt};
use crate::wigner::SixJ;
use crate::Error;

/// Quadrilateral sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadSpins {
    pub a: HalfInt,
    pub b: HalfInt,
    pub c: HalfInt,
    pub d: HalfInt,
}

impl QuadSpins {
    pub fn new(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt) -> Self {
        QuadSpins { a, b, c, d }
    }

    pub fn from_twice(t: [i64; 4]) -> Self {
        let [a, b, c, d] = t.map(HalfInt::from_twice);
        QuadSpins { a, b, c, d }
    }

    pub fn from_int(t: [i64; 4]) -> Self {
        let [a, b, c, d] = t.map(HalfInt::from_int);
        QuadSpins { a, b, c, d }
    }

    pub fn sides(&self) -> [HalfInt; 4] {
        [self.a, self.b, self.c, self.d]
    }

    fn from_sides(s: [HalfInt; 4]) -> Self {
        QuadSpins { a: s[0], b: s[1], c: s[2], d: s[3] }
    }

    /// Non-negative sides, integer perimeter, and no side longer than the
    /// other three together.
    pub fn closes(&self) -> bool {
        let s = self.sides();
        let sum: i64 = s.iter().map(|j| j.twice()).sum();
        let max = s.iter().map(|j| j.twice()).max().unwrap();
        s.iter().all(|j| j.twice() >= 0) && sum % 2 == 0 && 2 * max <= sum
    }

    /// `s = (a+b+c+d)/2`.
    pub fn semi_perimeter(&self) -> Option<HalfInt> {
        (self.a + self.b + self.c + self.d).halve()
    }

    /// `j -> s - j` on every side.
    pub fn regge_image(&self) -> Option<QuadSpins> {
        let s = self.semi_perimeter()?;
        Some(QuadSpins::from_sides(self.sides().map(|j| s - j)))
    }

    pub fn max_spin(&self) -> HalfInt {
        *self.sides().iter().max().unwrap()
    }

    /// `Π (2j+1)`, the dimension of the uncoupled four-spin space.
    pub fn product_dim(&self) -> i64 {
        self.sides().iter().map(|j| j.dim()).product()
    }
}

impl fmt::Display for QuadSpins {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// One of the three recoupling diagonals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diagonal {
    X,
    Y,
    Z,
}

impl Diagonal {
    pub const ALL: [Diagonal; 3] = [Diagonal::X, Diagonal::Y, Diagonal::Z];

    /// The two side pairs the diagonal couples, as side indices (a=0 .. d=3).
    pub fn pairing(self) -> [[usize; 2]; 2] {
        match self {
            Diagonal::X => [[0, 1], [2, 3]],
            Diagonal::Y => [[0, 2], [1, 3]],
            Diagonal::Z => [[0, 3], [1, 2]],
        }
    }

    fn from_pairing(p: [[usize; 2]; 2]) -> Diagonal {
        let first = if p[0].contains(&0) { p[0] } else { p[1] };
        let partner = if first[0] == 0 { first[1] } else { first[0] };
        match partner {
            1 => Diagonal::X,
            2 => Diagonal::Y,
            3 => Diagonal::Z,
            _ => unreachable!("side 0 always pairs with another side"),
        }
    }

    pub fn label(self) -> char {
        match self {
            Diagonal::X => 'x',
            Diagonal::Y => 'y',
            Diagonal::Z => 'z',
        }
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl std::str::FromStr for Diagonal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "x" => Ok(Diagonal::X),
            "y" => Ok(Diagonal::Y),
            "z" => Ok(Diagonal::Z),
            _ => Err(Error::Invalid(format!("unknown diagonal `{s}` (expected x, y or z)"))),
        }
    }
}

/// The xz, xy and yz screens.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Screen {
    Xz,
    Xy,
    Yz,
}

impl Screen {
    pub const ALL: [Screen; 3] = [Screen::Xz, Screen::Xy, Screen::Yz];

    /// Horizontal and vertical plot variables.
    pub fn axes(self) -> (Diagonal, Diagonal) {
        match self {
            Screen::Xz => (Diagonal::X, Diagonal::Z),
            Screen::Xy => (Diagonal::X, Diagonal::Y),
            Screen::Yz => (Diagonal::Y, Diagonal::Z),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Screen::Xz => "xz",
            Screen::Xy => "xy",
            Screen::Yz => "yz",
        }
    }

    fn for_axes(p: Diagonal, q: Diagonal) -> Option<(Screen, bool)> {
        Screen::ALL.into_iter().find_map(|s| {
            let (u, v) = s.axes();
            if (u, v) == (p, q) {
                Some((s, false))
            } else if (u, v) == (q, p) {
                Some((s, true))
            } else {
                None
            }
        })
    }
}

impl std::str::FromStr for Screen {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "xz" | "zx" => Ok(Screen::Xz),
            "xy" | "yx" => Ok(Screen::Xy),
            "yz" | "zy" => Ok(Screen::Yz),
            _ => Err(Error::Invalid(format!("unknown screen `{s}` (expected xz, xy or yz)"))),
        }
    }
}

/// An entry of a screen template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Fixed(HalfInt),
    Free(Diagonal),
}

/// A 6j symbol with two free diagonals, one of the three screen symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScreenSymbol {
    pub screen: Screen,
    pub slots: [Slot; 6],
}

impl ScreenSymbol {
    /// The symbol at horizontal value `u` and vertical value `v`.
    pub fn at(&self, u: HalfInt, v: HalfInt) -> SixJ {
        let (du, _) = self.screen.axes();
        SixJ {
            j: self.slots.map(|s| match s {
                Slot::Fixed(j) => j,
                Slot::Free(d) if d == du => u,
                Slot::Free(_) => v,
            }),
        }
    }

    /// Entries as reals, with `shift` added to every entry: the edge lengths
    /// of the associated tetrahedron in symbol layout.
    pub fn lengths(&self, u: f64, v: f64, shift: f64) -> [f64; 6] {
        let (du, _) = self.screen.axes();
        self.slots.map(|s| match s {
            Slot::Fixed(j) => j.to_f64() + shift,
            Slot::Free(d) if d == du => u + shift,
            Slot::Free(_) => v + shift,
        })
    }
}

impl fmt::Display for ScreenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Fixed(j) => j.to_string(),
                Slot::Free(d) => d.label().to_string(),
            })
            .collect();
        write!(f, "{{{} {} {}; {} {} {}}}", e[0], e[1], e[2], e[3], e[4], e[5])
    }
}

/// Canonical quadrilateral plus the diagonal ranges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SevenSpinNetwork {
    pub quad: QuadSpins,
    pub x_range: (HalfInt, HalfInt),
    pub y_range: (HalfInt, HalfInt),
    pub z_range: (HalfInt, HalfInt),
    /// Whether the Regge map was applied to reach `quad`.
    pub regge_applied: bool,
    /// `quad` side `i` came from original side `origin[i]`.
    pub origin: [usize; 4],
}

impl SevenSpinNetwork {
    pub fn range(&self, d: Diagonal) -> (HalfInt, HalfInt) {
        match d {
            Diagonal::X => self.x_range,
            Diagonal::Y => self.y_range,
            Diagonal::Z => self.z_range,
        }
    }

    pub fn values(&self, d: Diagonal) -> impl Iterator<Item = HalfInt> + Clone {
        let (lo, hi) = self.range(d);
        half_int_range(lo, hi)
    }

    /// `2a + 1`.
    pub fn dim(&self) -> usize {
        self.quad.a.dim() as usize
    }

    /// The canonical diagonal that plays the role of `original` in the
    /// quadrilateral before canonicalization.
    pub fn canonical_diagonal(&self, original: Diagonal) -> Diagonal {
        Diagonal::ALL
            .into_iter()
            .find(|&d| {
                let p = d.pairing().map(|pair| pair.map(|i| self.origin[i]));
                Diagonal::from_pairing(p) == original
            })
            .expect("permutations of sides permute the diagonals")
    }

    pub fn screen_symbol(&self, screen: Screen) -> ScreenSymbol {
        let QuadSpins { a, b, c, d } = self.quad;
        let f = Slot::Fixed;
        let slots = match screen {
            Screen::Xz => [f(a), f(b), Slot::Free(Diagonal::X), f(c), f(d), Slot::Free(Diagonal::Z)],
            Screen::Xy => [f(a), f(b), Slot::Free(Diagonal::X), f(d), f(c), Slot::Free(Diagonal::Y)],
            Screen::Yz => [f(a), f(c), Slot::Free(Diagonal::Y), f(b), f(d), Slot::Free(Diagonal::Z)],
        };
        ScreenSymbol { screen, slots }
    }

    /// The symbol with diagonal `p` set to `pv` and `q` to `qv`.
    pub fn symbol(&self, p: Diagonal, pv: HalfInt, q: Diagonal, qv: HalfInt) -> Option<SixJ> {
        let (screen, swapped) = Screen::for_axes(p, q)?;
        let sym = self.screen_symbol(screen);
        Some(if swapped { sym.at(qv, pv) } else { sym.at(pv, qv) })
    }
}

/// Canonical form: Regge map iff it lowers the smallest side (ties go to the
/// lexicographically smaller sorted quadruple), then sides sorted ascending.
pub fn canonicalize(q: &QuadSpins) -> Result<SevenSpinNetwork, Error> {
    if !q.closes() {
        return Err(Error::Closure(*q));
    }
    let image = q.regge_image().expect("closed quadrilaterals have integer perimeter");

    let sorted = |sides: [HalfInt; 4]| {
        let mut idx = [0usize, 1, 2, 3];
        idx.sort_by_key(|&i| (sides[i], i));
        (idx.map(|i| sides[i]), idx)
    };
    let (orig_sorted, orig_idx) = sorted(q.sides());
    let (img_sorted, img_idx) = sorted(image.sides());
    let use_image = (img_sorted[0], img_sorted) < (orig_sorted[0], orig_sorted);
    let (sides, origin) = if use_image { (img_sorted, img_idx) } else { (orig_sorted, orig_idx) };
    let [a, b, c, d] = sides;
    let canonical = QuadSpins::new(a, b, c, d);

    // Full-width ranges need d - c <= b - a, equivalently a + d <= b + c.
    if (a + d) > (b + c) {
        return Err(Error::NonCanonicalResidual { original: *q, canonical });
    }

    Ok(SevenSpinNetwork {
        quad: canonical,
        x_range: (b - a, b + a),
        y_range: (c - a, c + a),
        z_range: (d - a, d + a),
        regge_applied: use_image,
        origin,
    })
}

/// The xz, xy and yz symbols `{a b x; c d z}`, `{a b x; d c y}`, `{a c y; b d z}`.
pub fn screen_symbols(n: &SevenSpinNetwork) -> [ScreenSymbol; 3] {
    Screen::ALL.map(|s| n.screen_symbol(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::radical_eq;
    use crate::wigner::sixj_exact;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn generic_case_is_already_canonical() {
        let n = canonicalize(&QuadSpins::from_int([30, 45, 55, 60])).unwrap();
        assert_eq!(n.quad, QuadSpins::from_int([30, 45, 55, 60]));
        assert!(!n.regge_applied);
        assert_eq!(n.x_range, (HalfInt::from_int(15), HalfInt::from_int(75)));
        assert_eq!(n.y_range, (HalfInt::from_int(25), HalfInt::from_int(85)));
        assert_eq!(n.z_range, (HalfInt::from_int(30), HalfInt::from_int(90)));
        for d in Diagonal::ALL {
            assert_eq!(n.values(d).count(), 61);
        }
    }

    #[test]
    fn regge_lowers_the_minimum() {
        let n = canonicalize(&QuadSpins::from_int([1, 1, 1, 2])).unwrap();
        assert!(n.regge_applied);
        assert_eq!(n.quad, QuadSpins::from_twice([1, 3, 3, 3]));
        assert_eq!(n.values(Diagonal::X).count(), 2);
        assert_eq!(n.x_range, (h(2), h(4)));
    }

    #[test]
    fn fully_symmetric_case() {
        let n = canonicalize(&QuadSpins::from_int([100; 4])).unwrap();
        assert_eq!(n.quad, QuadSpins::from_int([100; 4]));
        for d in Diagonal::ALL {
            assert_eq!(n.range(d), (HalfInt::ZERO, HalfInt::from_int(200)));
            assert_eq!(n.values(d).count(), 201);
        }
    }

    #[test]
    fn closure_violation_is_an_error() {
        assert!(matches!(canonicalize(&QuadSpins::from_int([1, 1, 1, 5])), Err(Error::Closure(_))));
        assert!(matches!(canonicalize(&QuadSpins::from_twice([1, 2, 2, 2])), Err(Error::Closure(_))));
    }

    #[test]
    fn screen_templates() {
        let n = canonicalize(&QuadSpins::from_int([30, 45, 55, 60])).unwrap();
        assert_eq!(n.screen_symbol(Screen::Xz).to_string(), "{30 45 x; 55 60 z}");
        let n = canonicalize(&QuadSpins::from_int([100, 110, 130, 140])).unwrap();
        assert_eq!(n.screen_symbol(Screen::Xy).to_string(), "{100 110 x; 140 130 y}");
        let n = canonicalize(&QuadSpins::from_int([100; 4])).unwrap();
        assert_eq!(n.screen_symbol(Screen::Yz).to_string(), "{100 100 y; 100 100 z}");
    }

    #[test]
    fn screen_symbols_pair_sides_as_their_diagonals_say() {
        let n = canonicalize(&QuadSpins::from_twice([3, 5, 7, 9])).unwrap();
        let [a, b, c, d] = n.quad.sides();
        let (x, y, z) = (h(101), h(102), h(103));
        let expect = |s: SixJ, pairs: &[[HalfInt; 3]]| {
            let mut got: Vec<_> = s.triads().to_vec();
            let mut want: Vec<_> = pairs.iter().map(|p| crate::numeric::Triad::new(p[0], p[1], p[2])).collect();
            got.sort();
            want.sort();
            assert_eq!(got, want, "{s}");
        };
        expect(n.symbol(Diagonal::X, x, Diagonal::Z, z).unwrap(), &[[a, b, x], [c, d, x], [a, d, z], [b, c, z]]);
        expect(n.symbol(Diagonal::X, x, Diagonal::Y, y).unwrap(), &[[a, b, x], [c, d, x], [a, c, y], [b, d, y]]);
        expect(n.symbol(Diagonal::Y, y, Diagonal::Z, z).unwrap(), &[[a, c, y], [b, d, y], [a, d, z], [b, c, z]]);
        assert_eq!(n.symbol(Diagonal::Z, z, Diagonal::X, x), n.symbol(Diagonal::X, x, Diagonal::Z, z));
        assert!(n.symbol(Diagonal::X, x, Diagonal::X, x).is_none());
    }

    #[test]
    fn canonical_form_is_idempotent_and_preserves_values() {
        for t in 0..6usize.pow(4) {
            let tw = [t % 6, t / 6 % 6, t / 36 % 6, t / 216 % 6].map(|v| v as i64);
            let q = QuadSpins::from_twice(tw);
            let Ok(n) = canonicalize(&q) else { continue };
            assert_eq!(canonicalize(&n.quad).unwrap().quad, n.quad);
            for xt in 0..=10 {
                for zt in 0..=10 {
                    let (x, z) = (h(xt), h(zt));
                    let orig = sixj_exact(&SixJ::new(q.a, q.b, x, q.c, q.d, z)).exact;
                    let dx = n.canonical_diagonal(Diagonal::X);
                    let dz = n.canonical_diagonal(Diagonal::Z);
                    let canon = sixj_exact(&n.symbol(dx, x, dz, z).unwrap()).exact;
                    assert!(radical_eq(&orig, &canon), "{q} x={x} z={z}");
                }
            }
        }
    }
}
