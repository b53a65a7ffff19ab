use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::Error;
use crate::viewobstruct::{min_scale_for_direction, obstruction_witness, Direction};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }
}

/// Triangle-wave fold `u ↦ 1 − |1 − (u mod 2)|` onto `[0, 1]`.
pub fn fold_coord(u: &Rational) -> Rational {
    let two = Rational::from(2);
    let m = u - &(Rational::from_integer((u / &two).floor()) * &two);
    Rational::one() - (Rational::one() - m).abs()
}

/// Maps a point of the unfolded first quadrant back onto the unit table.
pub fn fold_ray_point(p: &Point2) -> Result<Point2, Error> {
    if p.x.is_negative() || p.y.is_negative() {
        return Err(Error::OutOfRange(format!(
            "({}, {}) is not in the first quadrant",
            p.x, p.y
        )));
    }
    Ok(Point2::new(fold_coord(&p.x), fold_coord(&p.y)))
}

/// Billiard path in the unit square starting at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarePath {
    pub slope: Rational,
    /// Folded segments inside `[0,1]²`.
    pub segments: Vec<(Point2, Point2)>,
    /// The same segments on the straight ray `y = slope·x`.
    pub unfolded: Vec<(Point2, Point2)>,
}

fn check_slope(slope: &Rational) -> Result<(), Error> {
    if !slope.is_positive() {
        return Err(Error::OutOfRange(format!("slope {slope} must be positive")));
    }
    Ok(())
}

/// First `n_segments` segments of the billiard path of the given initial
/// slope, obtained by cutting the ray `y = slope·x` at grid lines and
/// folding. A corner hit folds both coordinates at once.
pub fn square_path_segments(slope: &Rational, n_segments: usize) -> Result<SquarePath, Error> {
    check_slope(slope)?;
    if n_segments == 0 {
        return Err(Error::OutOfRange("n_segments must be at least 1".into()));
    }
    let mut segments = Vec::with_capacity(n_segments);
    let mut unfolded = Vec::with_capacity(n_segments);
    let mut x = Rational::zero();
    for _ in 0..n_segments {
        let next_vertical = Rational::from_integer(x.floor() + 1);
        let next_horizontal = Rational::from_integer((slope * &x).floor() + 1) / slope;
        let x1 = next_vertical.min(next_horizontal);
        let a = Point2::new(x.clone(), slope * &x);
        let b = Point2::new(x1.clone(), slope * &x1);
        segments.push((fold_ray_point(&a)?, fold_ray_point(&b)?));
        unfolded.push((a, b));
        x = x1;
    }
    Ok(SquarePath {
        slope: slope.clone(),
        segments,
        unfolded,
    })
}

/// Lowest-terms direction `(q, p)` of the slope `p/q`.
pub fn slope_direction(slope: &Rational) -> Result<Direction, Error> {
    check_slope(slope)?;
    let p =
        u64::try_from(slope.numer()).map_err(|_| Error::OutOfRange("slope too large".into()))?;
    let q =
        u64::try_from(slope.denom()).map_err(|_| Error::OutOfRange("slope too large".into()))?;
    Direction::new(vec![q, p])
}

/// Smallest side `α` of the centred square `G(α)` met by the path.
pub fn square_min_obstacle(slope: &Rational) -> Result<Rational, Error> {
    Ok(min_scale_for_direction(&slope_direction(slope)?))
}

/// Point where the path comes closest (in the max-norm) to the table
/// centre, and whether it lies inside `G(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareObstacleContact {
    pub slope: Rational,
    pub alpha: Rational,
    pub unfolded_point: Point2,
    pub table_point: Point2,
    /// `max(|x − ½|, |y − ½|)` at the table point.
    pub depth: Rational,
    pub grazing: bool,
}

/// Contact of the path with `G(α)`, or `None` if the path misses it.
pub fn square_obstacle_contact(
    slope: &Rational,
    alpha: &Rational,
) -> Result<Option<SquareObstacleContact>, Error> {
    let dir = slope_direction(slope)?;
    let Some(w) = obstruction_witness(&dir, alpha)? else {
        return Ok(None);
    };
    let (q, p) = (dir.coords()[0], dir.coords()[1]);
    let unfolded_point = Point2::new(
        Rational::from(q) * &w.hit_time,
        Rational::from(p) * &w.hit_time,
    );
    let table_point = fold_ray_point(&unfolded_point)?;
    let depth = (&table_point.x - &Rational::half())
        .abs()
        .max((&table_point.y - &Rational::half()).abs());
    Ok(Some(SquareObstacleContact {
        slope: slope.clone(),
        alpha: alpha.clone(),
        grazing: w.grazing,
        unfolded_point,
        table_point,
        depth,
    }))
}
