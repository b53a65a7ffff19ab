//! Billiards in the unit equilateral triangle `Q = (0,0), (1,0), (½, √3/2)`.
//!
//! Reflections of `Q` tile the plane by the triangular lattice spanned by
//! `e₁ = (1, 0)` and `e₂ = (½, √3/2)`. Lattice coordinates `(u, v)` of a
//! point `u·e₁ + v·e₂` are rational at every tiling vertex; cell edges are
//! the lines `u = n`, `v = n` and `u + v = n`. A ray of slope `σ` has the
//! lattice direction `(√3 − σ, 2σ)`, so all incidence questions reduce to
//! signs of elements of Q(√3).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{QuadExt, Rational};
use crate::error::Error;

/// Point of the plane with coordinates in Q(√3).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QPoint {
    pub x: QuadExt,
    pub y: QuadExt,
}

impl QPoint {
    pub fn new(x: QuadExt, y: QuadExt) -> Self {
        QPoint { x, y }
    }

    /// `u·e₁ + v·e₂`.
    pub fn from_lattice(u: &QuadExt, v: &QuadExt) -> Self {
        let half = Rational::half();
        QPoint {
            x: u + &v.scale(&half),
            y: v * &QuadExt::sqrt3_times(half),
        }
    }

    pub fn from_lattice_rational(u: &Rational, v: &Rational) -> Self {
        Self::from_lattice(&QuadExt::rational(u.clone()), &QuadExt::rational(v.clone()))
    }

    pub fn add(&self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, c: &QuadExt) -> QPoint {
        QPoint::new(&self.x * c, &self.y * c)
    }

    pub fn dot(&self, o: &QPoint) -> QuadExt {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &QPoint) -> QuadExt {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

/// Mirror image of `p` in the line through `a` and `b`.
pub fn reflect_point(p: &QPoint, a: &QPoint, b: &QPoint) -> QPoint {
    let d = b.sub(a);
    let w = p.sub(a);
    let proj = d.scale(&(&w.dot(&d) / &d.dot(&d)));
    a.add(&proj.scale(&QuadExt::from(2)))
        .add(&w.scale(&QuadExt::from(-1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Up,
    Down,
}

/// Family of tiling lines: `u = n`, `v = n` or `u + v = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeFamily {
    U,
    V,
    W,
}

const FAMILIES: [EdgeFamily; 3] = [EdgeFamily::U, EdgeFamily::V, EdgeFamily::W];

/// How the walk entered a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Entry {
    Start,
    /// Reflection across an edge of the previous cell.
    Edge(EdgeFamily),
    /// The ray passed through a tiling vertex.
    Vertex,
}

/// A cell `(col, row, orientation)` of the triangular tiling. Up cells have
/// lattice vertices `(i,j), (i+1,j), (i,j+1)`; down cells
/// `(i+1,j), (i,j+1), (i+1,j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellIndex {
    pub col: i64,
    pub row: i64,
    pub orientation: Orientation,
}

impl CellIndex {
    pub fn lattice_vertices(&self) -> [(Rational, Rational); 3] {
        let (i, j) = (self.col, self.row);
        let p = |u: i64, v: i64| (Rational::from(u), Rational::from(v));
        match self.orientation {
            Orientation::Up => [p(i, j), p(i + 1, j), p(i, j + 1)],
            Orientation::Down => [p(i + 1, j), p(i, j + 1), p(i + 1, j + 1)],
        }
    }

    pub fn lattice_incenter(&self) -> (Rational, Rational) {
        let off = match self.orientation {
            Orientation::Up => Rational::new(1, 3),
            Orientation::Down => Rational::new(2, 3),
        };
        (
            Rational::from(self.col) + &off,
            Rational::from(self.row) + &off,
        )
    }

    /// Lattice vertices of `H(α)`, the `α`-scaling of the cell about its
    /// incenter.
    pub fn lattice_obstacle(&self, alpha: &Rational) -> [(Rational, Rational); 3] {
        let (cu, cv) = self.lattice_incenter();
        self.lattice_vertices()
            .map(|(u, v)| (&cu + &(alpha * &(u - &cu)), &cv + &(alpha * &(v - &cv))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleCell {
    pub index: CellIndex,
    /// Position in the walk, starting at 0 for the base triangle.
    pub step: usize,
    pub entry: Entry,
    pub vertices: [QPoint; 3],
    pub incenter: QPoint,
}

impl TriangleCell {
    fn new(index: CellIndex, step: usize, entry: Entry) -> Self {
        let vertices = index
            .lattice_vertices()
            .map(|(u, v)| QPoint::from_lattice_rational(&u, &v));
        let (cu, cv) = index.lattice_incenter();
        TriangleCell {
            index,
            step,
            entry,
            vertices,
            incenter: QPoint::from_lattice_rational(&cu, &cv),
        }
    }

    /// Vertices of `H(α)` in Cartesian coordinates.
    pub fn obstacle(&self, alpha: &Rational) -> [QPoint; 3] {
        self.index
            .lattice_obstacle(alpha)
            .map(|(u, v)| QPoint::from_lattice_rational(&u, &v))
    }
}

/// Checks `0 < slope < √3`.
pub fn check_wedge_slope(slope: &QuadExt) -> Result<(), Error> {
    if !slope.is_positive() || slope >= &QuadExt::sqrt3() {
        return Err(Error::SlopeOutsideWedge(slope.to_string()));
    }
    Ok(())
}

/// Lattice direction of the ray `y = slope·x`, positive in both
/// coordinates inside the wedge.
fn lattice_direction(slope: &QuadExt) -> (QuadExt, QuadExt) {
    (&QuadExt::sqrt3() - slope, slope.scale(&Rational::from(2)))
}

/// A crossing of the ray with the tiling lines.
#[derive(Clone, Debug)]
struct Crossing {
    /// Families crossed (one for an edge, all three at a vertex).
    families: Vec<EdgeFamily>,
    /// Index `n` of each crossed line, aligned with `families`.
    lines: Vec<u64>,
    /// Crossing parameter `n / rate` of the first family.
    numer: u64,
    rate: QuadExt,
}

impl Crossing {
    fn time(&self) -> QuadExt {
        &QuadExt::from(self.numer as i64) / &self.rate
    }

    fn is_vertex(&self) -> bool {
        self.families.len() > 1
    }
}

/// Exact walk of the ray through the tiling by comparing the next crossing
/// parameter of each line family.
#[derive(Clone, Debug)]
struct Walker {
    du: QuadExt,
    dv: QuadExt,
    rates: [QuadExt; 3],
    crossed: [u64; 3],
}

impl Walker {
    fn new(slope: &QuadExt) -> Self {
        let (du, dv) = lattice_direction(slope);
        let dw = &du + &dv;
        Walker {
            rates: [du.clone(), dv.clone(), dw],
            du,
            dv,
            crossed: [0; 3],
        }
    }

    fn cell(&self) -> CellIndex {
        let [cu, cv, cw] = self.crossed;
        CellIndex {
            col: cu as i64,
            row: cv as i64,
            orientation: if cw == cu + cv {
                Orientation::Up
            } else {
                Orientation::Down
            },
        }
    }

    /// Sign of `(n_f / r_f) − (n_g / r_g)`.
    fn cmp_next(&self, f: usize, g: usize) -> Ordering {
        let nf = Rational::from(self.crossed[f] + 1);
        let ng = Rational::from(self.crossed[g] + 1);
        (&self.rates[g].scale(&nf) - &self.rates[f].scale(&ng))
            .sign()
            .cmp(&0)
    }

    fn advance(&mut self) -> Crossing {
        let mut best = vec![0usize];
        for f in 1..3 {
            match self.cmp_next(f, best[0]) {
                Ordering::Less => best = vec![f],
                Ordering::Equal => best.push(f),
                Ordering::Greater => {}
            }
        }
        let numer = self.crossed[best[0]] + 1;
        let rate = self.rates[best[0]].clone();
        let mut families = Vec::with_capacity(best.len());
        let mut lines = Vec::with_capacity(best.len());
        for &f in &best {
            self.crossed[f] += 1;
            families.push(FAMILIES[f]);
            lines.push(self.crossed[f]);
        }
        Crossing {
            families,
            lines,
            numer,
            rate,
        }
    }

    /// `cross(d, P)` for a lattice point `P`.
    fn side(&self, u: &Rational, v: &Rational) -> QuadExt {
        &self.du.scale(v) - &self.dv.scale(u)
    }
}

/// The ray's contact with one scaled cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    Miss,
    /// Touches the boundary only.
    Grazing,
    Interior,
}

fn classify(walker: &Walker, cell: &CellIndex, alpha: &Rational) -> Contact {
    let signs = cell
        .lattice_obstacle(alpha)
        .map(|(u, v)| walker.side(&u, &v).sign());
    let pos = signs.iter().any(|&s| s > 0);
    let neg = signs.iter().any(|&s| s < 0);
    let zero = signs.contains(&0);
    match (pos && neg, zero) {
        (true, _) => Contact::Interior,
        (false, true) => Contact::Grazing,
        (false, false) => Contact::Miss,
    }
}

/// Smallest `α` at which the line meets `H(α)` of `cell`, or `None` if it
/// misses the whole cell.
fn contact_scale(walker: &Walker, cell: &CellIndex) -> Option<QuadExt> {
    let (cu, cv) = cell.lattice_incenter();
    let g0 = walker.side(&cu, &cv);
    if g0.is_zero() {
        return Some(QuadExt::zero());
    }
    let s0 = g0.sign();
    cell.lattice_vertices()
        .iter()
        .filter_map(|(u, v)| {
            let gv = walker.side(&(u - &cu), &(v - &cv));
            (gv.sign() == -s0).then(|| -(&g0 / &gv))
        })
        .min()
}

/// Cells crossed through their interior, in order along the ray.
fn walk_cells(slope: &QuadExt, horizon: usize) -> (Walker, Vec<(CellIndex, Entry)>) {
    let mut walker = Walker::new(slope);
    let mut cells = Vec::with_capacity(horizon);
    if horizon > 0 {
        cells.push((walker.cell(), Entry::Start));
    }
    while cells.len() < horizon {
        let c = walker.advance();
        let entry = if c.is_vertex() {
            Entry::Vertex
        } else {
            Entry::Edge(c.families[0])
        };
        cells.push((walker.cell(), entry));
    }
    (walker, cells)
}

/// The first `horizon` cells of the tiling crossed by `y = slope·x`.
pub fn triangle_cells_along_ray(
    slope: &QuadExt,
    horizon: usize,
) -> Result<Vec<TriangleCell>, Error> {
    check_wedge_slope(slope)?;
    let (_, cells) = walk_cells(slope, horizon);
    Ok(cells
        .into_iter()
        .enumerate()
        .map(|(step, (idx, entry))| TriangleCell::new(idx, step, entry))
        .collect())
}

/// Exact smallest obstacle scale met within the first `horizon` cells,
/// with the step where it occurs.
pub fn triangle_contact_scale_within(
    slope: &QuadExt,
    horizon: usize,
) -> Result<(QuadExt, usize), Error> {
    check_wedge_slope(slope)?;
    let (walker, cells) = walk_cells(slope, horizon);
    cells
        .iter()
        .enumerate()
        .filter_map(|(step, (c, _))| contact_scale(&walker, c).map(|a| (a, step)))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or_else(|| Error::OutOfRange("horizon must be at least 1".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleHit {
    pub cell: TriangleCell,
    pub contact: Contact,
}

/// Contact census of the ray with `{H_n(α)}` over the first `horizon` cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleContactReport {
    pub slope: QuadExt,
    pub alpha: Rational,
    pub horizon: usize,
    pub first_hit: Option<TriangleHit>,
    pub grazing_cells: usize,
    pub interior_cells: usize,
}

fn check_alpha(alpha: &Rational) -> Result<(), Error> {
    if !alpha.is_positive() || alpha >= &Rational::one() {
        return Err(Error::OutOfRange(format!(
            "alpha = {alpha} must lie in (0, 1)"
        )));
    }
    Ok(())
}

/// First cell (within `horizon`) whose closed obstacle `H(α)` meets the ray.
/// A `None` only means "no hit within the horizon".
pub fn triangle_obstruction_check(
    slope: &QuadExt,
    alpha: &Rational,
    horizon: usize,
) -> Result<Option<TriangleHit>, Error> {
    check_wedge_slope(slope)?;
    check_alpha(alpha)?;
    let mut walker = Walker::new(slope);
    let mut entry = Entry::Start;
    for step in 0..horizon {
        if step > 0 {
            let c = walker.advance();
            entry = if c.is_vertex() {
                Entry::Vertex
            } else {
                Entry::Edge(c.families[0])
            };
        }
        let idx = walker.cell();
        match classify(&walker, &idx, alpha) {
            Contact::Miss => {}
            contact => {
                return Ok(Some(TriangleHit {
                    cell: TriangleCell::new(idx, step, entry),
                    contact,
                }))
            }
        }
    }
    Ok(None)
}

/// Like [`triangle_obstruction_check`] but scans the whole horizon and
/// counts grazing and interior contacts.
pub fn triangle_contact_report(
    slope: &QuadExt,
    alpha: &Rational,
    horizon: usize,
) -> Result<TriangleContactReport, Error> {
    check_wedge_slope(slope)?;
    check_alpha(alpha)?;
    let (walker, cells) = walk_cells(slope, horizon);
    let mut report = TriangleContactReport {
        slope: slope.clone(),
        alpha: alpha.clone(),
        horizon,
        first_hit: None,
        grazing_cells: 0,
        interior_cells: 0,
    };
    for (step, (idx, entry)) in cells.iter().enumerate() {
        let contact = classify(&walker, idx, alpha);
        match contact {
            Contact::Miss => continue,
            Contact::Grazing => report.grazing_cells += 1,
            Contact::Interior => report.interior_cells += 1,
        }
        if report.first_hit.is_none() {
            report.first_hit = Some(TriangleHit {
                cell: TriangleCell::new(*idx, step, *entry),
                contact,
            });
        }
    }
    Ok(report)
}

/// Bisection bracket for the smallest obstacle met by one path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstacleBracket {
    pub slope: QuadExt,
    /// No hit within the horizon at this scale (horizon-qualified).
    pub lower: Rational,
    /// A hit was found at this scale.
    pub upper: Rational,
    pub horizon: usize,
    pub tolerance: Rational,
}

/// Default bisection tolerance.
pub fn default_tolerance() -> Rational {
    Rational::new(1, 1024)
}

/// Default number of cells walked.
pub const DEFAULT_HORIZON: usize = 10_000;

/// Brackets the least `α` at which `H(α)` meets the path by bisection on
/// `[0, 1]`, using exact hit tests over the first `horizon` cells.
pub fn triangle_min_obstacle(
    slope: &QuadExt,
    horizon: usize,
    tolerance: &Rational,
) -> Result<ObstacleBracket, Error> {
    check_wedge_slope(slope)?;
    if horizon == 0 {
        return Err(Error::OutOfRange("horizon must be at least 1".into()));
    }
    if !tolerance.is_positive() {
        return Err(Error::OutOfRange(format!(
            "tolerance {tolerance} must be positive"
        )));
    }
    let (walker, cells) = walk_cells(slope, horizon);
    let hits = |alpha: &Rational| {
        cells
            .iter()
            .any(|(c, _)| classify(&walker, c, alpha) != Contact::Miss)
    };
    let bracket = |lower: Rational, upper: Rational| ObstacleBracket {
        slope: slope.clone(),
        lower,
        upper,
        horizon,
        tolerance: tolerance.clone(),
    };
    if hits(&Rational::zero()) {
        return Ok(bracket(Rational::zero(), Rational::zero()));
    }
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    while &hi - &lo > *tolerance {
        let mid = (&lo + &hi) / Rational::from(2);
        if hits(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(bracket(lo, hi))
}

/// Side of the base triangle struck by the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableSide {
    /// From `(0,0)` to `(1,0)`.
    Bottom,
    /// From `(0,0)` to `(½, √3/2)`.
    Left,
    /// From `(1,0)` to `(½, √3/2)`.
    Right,
}

impl TableSide {
    /// Direction vector of the side.
    pub fn direction(&self) -> QPoint {
        let half = Rational::half();
        match self {
            TableSide::Bottom => QPoint::new(QuadExt::one(), QuadExt::zero()),
            TableSide::Left => {
                QPoint::new(QuadExt::rational(half.clone()), QuadExt::sqrt3_times(half))
            }
            TableSide::Right => {
                QPoint::new(QuadExt::rational(-half.clone()), QuadExt::sqrt3_times(half))
            }
        }
    }
}

/// Integer affine map of lattice coordinates `p ↦ A·p + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct LatticeIsometry {
    a: [[i64; 2]; 2],
    b: [i64; 2],
}

impl LatticeIsometry {
    const IDENTITY: Self = LatticeIsometry {
        a: [[1, 0], [0, 1]],
        b: [0, 0],
    };

    /// Reflection across the tiling line of `family` with index `n`.
    fn reflection(family: EdgeFamily, n: i64) -> Self {
        match family {
            // (u, v) ↦ (2n − u, u + v − n)
            EdgeFamily::U => LatticeIsometry {
                a: [[-1, 0], [1, 1]],
                b: [2 * n, -n],
            },
            // (u, v) ↦ (u + v − n, 2n − v)
            EdgeFamily::V => LatticeIsometry {
                a: [[1, 1], [0, -1]],
                b: [-n, 2 * n],
            },
            // (u, v) ↦ (n − v, n − u)
            EdgeFamily::W => LatticeIsometry {
                a: [[0, -1], [-1, 0]],
                b: [n, n],
            },
        }
    }

    /// `self ∘ other`
    fn compose(&self, other: &Self) -> Self {
        let a = &self.a;
        let o = &other.a;
        LatticeIsometry {
            a: [
                [
                    a[0][0] * o[0][0] + a[0][1] * o[1][0],
                    a[0][0] * o[0][1] + a[0][1] * o[1][1],
                ],
                [
                    a[1][0] * o[0][0] + a[1][1] * o[1][0],
                    a[1][0] * o[0][1] + a[1][1] * o[1][1],
                ],
            ],
            b: [
                a[0][0] * other.b[0] + a[0][1] * other.b[1] + self.b[0],
                a[1][0] * other.b[0] + a[1][1] * other.b[1] + self.b[1],
            ],
        }
    }

    fn apply(&self, u: &QuadExt, v: &QuadExt) -> (QuadExt, QuadExt) {
        let c = |k: i64| Rational::from(k);
        (
            &(&u.scale(&c(self.a[0][0])) + &v.scale(&c(self.a[0][1]))) + &QuadExt::from(self.b[0]),
            &(&u.scale(&c(self.a[1][0])) + &v.scale(&c(self.a[1][1]))) + &QuadExt::from(self.b[1]),
        )
    }
}

/// Billiard path in `Q` starting at the origin corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePath {
    pub slope: QuadExt,
    /// Folded segments inside `Q`; segment `k` ends at strike `k + 1`.
    pub segments: Vec<(QPoint, QPoint)>,
    /// The same segments along the straight ray.
    pub unfolded: Vec<(QPoint, QPoint)>,
    /// Side struck at the end of each segment.
    pub struck_sides: Vec<TableSide>,
    /// The path ran into a corner of `Q` and stopped there.
    pub terminated_at_corner: bool,
}

fn table_side(u: &QuadExt, v: &QuadExt) -> TableSide {
    if v.is_zero() {
        TableSide::Bottom
    } else if u.is_zero() {
        TableSide::Left
    } else {
        TableSide::Right
    }
}

/// Folds the ray into `Q` through `n_strikes` boundary hits. The path stops
/// early if it reaches a corner of the table.
pub fn triangle_path_segments(slope: &QuadExt, n_strikes: usize) -> Result<TrianglePath, Error> {
    check_wedge_slope(slope)?;
    if n_strikes == 0 {
        return Err(Error::OutOfRange("n_strikes must be at least 1".into()));
    }
    let mut walker = Walker::new(slope);
    let (du, dv) = (walker.du.clone(), walker.dv.clone());
    let mut fold = LatticeIsometry::IDENTITY;
    let mut prev = (QuadExt::zero(), QuadExt::zero());
    let mut path = TrianglePath {
        slope: slope.clone(),
        segments: Vec::with_capacity(n_strikes),
        unfolded: Vec::with_capacity(n_strikes),
        struck_sides: Vec::with_capacity(n_strikes),
        terminated_at_corner: false,
    };
    for _ in 0..n_strikes {
        let crossing = walker.advance();
        let t = crossing.time();
        let here = (&du * &t, &dv * &t);
        let a = fold.apply(&prev.0, &prev.1);
        let b = fold.apply(&here.0, &here.1);
        path.unfolded.push((
            QPoint::from_lattice(&prev.0, &prev.1),
            QPoint::from_lattice(&here.0, &here.1),
        ));
        path.segments.push((
            QPoint::from_lattice(&a.0, &a.1),
            QPoint::from_lattice(&b.0, &b.1),
        ));
        path.struck_sides.push(table_side(&b.0, &b.1));
        if crossing.is_vertex() {
            path.terminated_at_corner = true;
            break;
        }
        let n = crossing.lines[0] as i64;
        fold = fold.compose(&LatticeIsometry::reflection(crossing.families[0], n));
        prev = here;
    }
    Ok(path)
}

/// Every cell of the wedge with `col + row < levels`.
pub fn wedge_cells(levels: i64) -> Vec<TriangleCell> {
    let mut out = Vec::new();
    for row in 0..levels {
        for col in 0..levels - row {
            for orientation in [Orientation::Up, Orientation::Down] {
                if orientation == Orientation::Down && col + row + 1 >= levels {
                    continue;
                }
                out.push(TriangleCell::new(
                    CellIndex {
                        col,
                        row,
                        orientation,
                    },
                    0,
                    Entry::Start,
                ));
            }
        }
    }
    out
}

/// Parses `p/q`, `p`, `sqrt3`, `sqrt3*p/q` or `p/q*sqrt3`.
pub fn parse_slope(s: &str) -> Result<QuadExt, Error> {
    let s = s.trim();
    let strip = |t: &str| -> Option<String> {
        t.strip_prefix("sqrt3*")
            .or_else(|| t.strip_suffix("*sqrt3"))
            .map(str::to_owned)
    };
    if s == "sqrt3" {
        return Ok(QuadExt::sqrt3());
    }
    match strip(s) {
        Some(rest) => Ok(QuadExt::sqrt3_times(rest.parse()?)),
        None => Ok(QuadExt::rational(s.parse()?)),
    }
}
