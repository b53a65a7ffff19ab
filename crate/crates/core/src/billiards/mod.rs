//! Billiards in the unit square and the unit equilateral triangle.
//!
//! Unfolding a billiard path (reflecting the table instead of the path)
//! turns it into a straight ray through a tiling of the plane by copies of
//! the table; a centred obstacle in the table becomes the same obstacle
//! centred in every tile.

mod square;
mod triangle;

pub use square::{
    fold_coord, fold_ray_point, slope_direction, square_min_obstacle, square_obstacle_contact,
    square_path_segments, Point2, SquareObstacleContact, SquarePath,
};
pub use triangle::{
    check_wedge_slope, default_tolerance, parse_slope, reflect_point, triangle_cells_along_ray,
    triangle_contact_report, triangle_contact_scale_within, triangle_min_obstacle,
    triangle_obstruction_check, triangle_path_segments, wedge_cells, CellIndex, Contact,
    EdgeFamily, Entry, ObstacleBracket, Orientation, QPoint, TableSide, TriangleCell,
    TriangleContactReport, TriangleHit, TrianglePath, DEFAULT_HORIZON,
};
