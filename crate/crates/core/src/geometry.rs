//! Boxes, point clouds and set metrics: point-to-box distance and
//! projection, diameter, directed/Hausdorff distances, a clustered-spread
//! estimate of the Kuratowski measure, and deterministic lattice samplers.
//!
//! All operations are pure over immutable inputs and use the Euclidean norm.

use std::fmt;

use thiserror::Error;

use crate::exec::{self, ExecMode};

/// A point of R^n.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Point {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Point {
        Point::new(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An axis-aligned box `[lower_1, upper_1] x ... x [lower_n, upper_n]`.
/// Nonempty by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Box {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Box {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Box, GeometryError> {
        if lower.len() != upper.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (i, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() {
                return Err(GeometryError::NonFiniteBounds);
            }
            if l > u {
                return Err(GeometryError::InvalidBounds {
                    index: i,
                    lower: l,
                    upper: u,
                });
            }
        }
        Ok(Box { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.dim() == self.dim()
            && x.coords()
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&c, (&l, &u))| l <= c && c <= u)
    }
}

/// A finite ordered list of points, all of the same dimension. May be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Point>,
}

impl PointCloud {
    pub fn empty(dim: usize) -> PointCloud {
        PointCloud {
            dim,
            points: Vec::new(),
        }
    }

    pub fn from_points(dim: usize, points: Vec<Point>) -> Result<PointCloud, GeometryError> {
        for p in &points {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(PointCloud { dim, points })
    }

    pub fn push(&mut self, p: Point) -> Result<(), GeometryError> {
        if p.dim() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        self.points.push(p);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }
}

/// A dense linear operator between the two spaces, stored row-major
/// (`rows` = target dimension, `cols` = source dimension).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl LinearOperator {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<LinearOperator, GeometryError> {
        if data.len() != rows * cols {
            return Err(GeometryError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if !data.iter().all(|v| v.is_finite()) {
            return Err(GeometryError::NonFiniteBounds);
        }
        Ok(LinearOperator { rows, cols, data })
    }

    pub fn identity(n: usize) -> LinearOperator {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        LinearOperator {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Matrix-vector product on a raw slice.
    pub fn apply_slice(&self, x: &[f64]) -> Result<Vec<f64>, GeometryError> {
        if x.len() != self.cols {
            return Err(GeometryError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            *o = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation undefined on an empty point cloud")]
    EmptyCloud,
    #[error("inflation radius must be nonnegative, got {0}")]
    NegativeInflation(f64),
    #[error("lattice step must be positive, got {0}")]
    NonPositiveStep(f64),
    #[error("cluster count must be at least 1")]
    ZeroClusterCount,
    #[error("box bound {index}: lower {lower} exceeds upper {upper}")]
    InvalidBounds { index: usize, lower: f64, upper: f64 },
    #[error("bounds and operator entries must be finite")]
    NonFiniteBounds,
}

pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Euclidean distance from `x` to the box, computed coordinatewise.
/// Zero exactly when `x` lies in the box.
pub fn distance_to_box(x: &Point, b: &Box) -> Result<f64, GeometryError> {
    distance_to_box_slice(x.coords(), b)
}

pub(crate) fn distance_to_box_slice(x: &[f64], b: &Box) -> Result<f64, GeometryError> {
    if x.len() != b.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: b.dim(),
            got: x.len(),
        });
    }
    let mut sum = 0.0;
    for (&c, (&l, &u)) in x.iter().zip(b.lower.iter().zip(&b.upper)) {
        let excess = if c < l {
            l - c
        } else if c > u {
            c - u
        } else {
            0.0
        };
        sum += excess * excess;
    }
    Ok(sum.sqrt())
}

/// Nearest point of the box (coordinatewise clamp); the gap to `x` equals
/// [`distance_to_box`].
pub fn project_to_box(x: &Point, b: &Box) -> Result<Point, GeometryError> {
    if x.dim() != b.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: b.dim(),
            got: x.dim(),
        });
    }
    let coords = x
        .coords()
        .iter()
        .zip(b.lower.iter().zip(&b.upper))
        .map(|(&c, (&l, &u))| c.clamp(l, u))
        .collect();
    Ok(Point::new(coords))
}

/// Maximum pairwise Euclidean distance; zero for empty or singleton clouds.
pub fn diameter(a: &PointCloud) -> f64 {
    diameter_with(a, ExecMode::default())
}

pub fn diameter_with(a: &PointCloud, mode: ExecMode) -> f64 {
    let pts = a.points();
    if pts.len() < 2 {
        return 0.0;
    }
    exec::max_over(pts.len() - 1, mode, |i| {
        let pi = pts[i].coords();
        let mut best = f64::NEG_INFINITY;
        for pj in &pts[i + 1..] {
            best = best.max(euclid(pi, pj.coords()));
        }
        best
    })
}

/// Directed distance `sup_{a in A} min_{b in B} |a - b|`. Zero when `A` is
/// empty; errors when `B` is empty.
pub fn directed_distance(a: &PointCloud, b: &PointCloud) -> Result<f64, GeometryError> {
    directed_distance_with(a, b, ExecMode::default())
}

pub fn directed_distance_with(
    a: &PointCloud,
    b: &PointCloud,
    mode: ExecMode,
) -> Result<f64, GeometryError> {
    if b.is_empty() {
        return Err(GeometryError::EmptyCloud);
    }
    if a.dim() != b.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let av = a.points();
    let bv = b.points();
    Ok(exec::max_over(av.len(), mode, |i| {
        let p = av[i].coords();
        let mut best = f64::INFINITY;
        for q in bv {
            best = best.min(euclid(p, q.coords()));
        }
        best
    }))
}

/// Hausdorff distance `max(D(A,B), D(B,A))`; both clouds must be nonempty.
pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64, GeometryError> {
    hausdorff_with(a, b, ExecMode::default())
}

pub fn hausdorff_with(
    a: &PointCloud,
    b: &PointCloud,
    mode: ExecMode,
) -> Result<f64, GeometryError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptyCloud);
    }
    let ab = directed_distance_with(a, b, mode)?;
    let ba = directed_distance_with(b, a, mode)?;
    Ok(ab.max(ba))
}

/// Clustered-spread surrogate for the Kuratowski measure of noncompactness:
/// the smallest found value of the max part diameter over partitions of `A`
/// into at most `k` parts. Greedy farthest-point seeding plus local
/// refinement; the result is an upper bound on the optimal partition value
/// and is nonincreasing in `k`.
pub fn kuratowski_estimate(a: &PointCloud, k: usize) -> Result<f64, GeometryError> {
    kuratowski_partition(a, k).map(|(value, _)| value)
}

/// As [`kuratowski_estimate`], also returning the partition that attains the
/// reported value (`assignment[i]` is the part index of point `i`).
pub fn kuratowski_partition(
    a: &PointCloud,
    k: usize,
) -> Result<(f64, Vec<usize>), GeometryError> {
    if k == 0 {
        return Err(GeometryError::ZeroClusterCount);
    }
    let n = a.len();
    if n == 0 {
        return Ok((0.0, Vec::new()));
    }
    if distinct_count(a) <= k {
        return Ok((0.0, singleton_assignment(a, k)));
    }
    let pts = a.points();
    let mut best_value = diameter(a);
    let mut best_assignment = vec![0usize; n];
    for parts in 2..=k.min(n) {
        for start in [0usize, farthest_from(pts, 0)] {
            let seeds = gonzales_seeds(pts, parts, start);
            let mut assignment = assign_to_seeds(pts, &seeds);
            if pts.len() <= 160 {
                refine_assignment(pts, parts, &mut assignment);
            }
            let value = max_part_diameter(pts, parts, &assignment);
            if value < best_value {
                best_value = value;
                best_assignment = assignment;
            }
        }
    }
    Ok((best_value, best_assignment))
}

fn distinct_count(a: &PointCloud) -> usize {
    let mut keys: Vec<Vec<u64>> = a
        .iter()
        .map(|p| p.coords().iter().map(|c| c.to_bits()).collect())
        .collect();
    keys.sort();
    keys.dedup();
    keys.len()
}

fn singleton_assignment(a: &PointCloud, k: usize) -> Vec<usize> {
    // Identical points share a part; at most k parts by the distinct count.
    let mut seen: Vec<(Vec<u64>, usize)> = Vec::new();
    let mut assignment = Vec::with_capacity(a.len());
    for p in a.iter() {
        let key: Vec<u64> = p.coords().iter().map(|c| c.to_bits()).collect();
        let part = match seen.iter().find(|(k2, _)| *k2 == key) {
            Some((_, part)) => *part,
            None => {
                let part = seen.len();
                seen.push((key, part));
                part
            }
        };
        assignment.push(part.min(k - 1));
    }
    assignment
}

fn farthest_from(pts: &[Point], origin: usize) -> usize {
    let mut best = origin;
    let mut best_dist = f64::NEG_INFINITY;
    for (j, p) in pts.iter().enumerate() {
        let d = euclid(pts[origin].coords(), p.coords());
        if d > best_dist {
            best_dist = d;
            best = j;
        }
    }
    best
}

fn gonzales_seeds(pts: &[Point], parts: usize, start: usize) -> Vec<usize> {
    let mut seeds = vec![start];
    let mut dist: Vec<f64> = pts
        .iter()
        .map(|p| euclid(pts[start].coords(), p.coords()))
        .collect();
    while seeds.len() < parts {
        let mut next = 0;
        let mut best = f64::NEG_INFINITY;
        for (j, &d) in dist.iter().enumerate() {
            if d > best {
                best = d;
                next = j;
            }
        }
        seeds.push(next);
        for (j, d) in dist.iter_mut().enumerate() {
            let nd = euclid(pts[next].coords(), pts[j].coords());
            if nd < *d {
                *d = nd;
            }
        }
    }
    seeds
}

fn assign_to_seeds(pts: &[Point], seeds: &[usize]) -> Vec<usize> {
    pts.iter()
        .map(|p| {
            let mut part = 0;
            let mut best = f64::INFINITY;
            for (s, &seed) in seeds.iter().enumerate() {
                let d = euclid(p.coords(), pts[seed].coords());
                if d < best {
                    best = d;
                    part = s;
                }
            }
            part
        })
        .collect()
}

fn part_diameter(pts: &[Point], assignment: &[usize], part: usize) -> f64 {
    let members: Vec<&Point> = pts
        .iter()
        .zip(assignment)
        .filter(|(_, &a)| a == part)
        .map(|(p, _)| p)
        .collect();
    let mut best: f64 = 0.0;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            best = best.max(euclid(members[i].coords(), members[j].coords()));
        }
    }
    best
}

fn max_part_diameter(pts: &[Point], parts: usize, assignment: &[usize]) -> f64 {
    (0..parts)
        .map(|part| part_diameter(pts, assignment, part))
        .fold(0.0, f64::max)
}

/// Greedy point moves, first improvement, bounded passes. Only used on small
/// clouds; the objective recomputation is quadratic per move.
fn refine_assignment(pts: &[Point], parts: usize, assignment: &mut Vec<usize>) {
    for _ in 0..4 {
        let mut improved = false;
        let mut objective = max_part_diameter(pts, parts, assignment);
        for i in 0..pts.len() {
            let original = assignment[i];
            for target in 0..parts {
                if target == original {
                    continue;
                }
                assignment[i] = target;
                let candidate = max_part_diameter(pts, parts, assignment);
                if candidate + 1e-15 < objective {
                    objective = candidate;
                    improved = true;
                    break;
                }
                assignment[i] = original;
            }
        }
        if !improved {
            break;
        }
    }
}

/// Axis-aligned lattice over the box with step `h`, both endpoints included
/// per axis, in lexicographic order (first axis most significant).
pub fn grid_sample(b: &Box, h: f64) -> Result<PointCloud, GeometryError> {
    if !(h > 0.0) {
        return Err(GeometryError::NonPositiveStep(h));
    }
    let dim = b.dim();
    let counts: Vec<usize> = (0..dim)
        .map(|i| axis_steps(b.upper[i] - b.lower[i], h) + 1)
        .collect();
    let total: usize = counts.iter().product();
    let mut points = Vec::with_capacity(total);
    let mut index = vec![0usize; dim];
    loop {
        let coords: Vec<f64> = (0..dim)
            .map(|i| axis_coord(b.lower[i], b.upper[i], h, index[i], counts[i]))
            .collect();
        points.push(Point::new(coords));
        // odometer increment, last axis fastest
        let mut axis = dim;
        loop {
            if axis == 0 {
                return PointCloud::from_points(dim, points);
            }
            axis -= 1;
            index[axis] += 1;
            if index[axis] < counts[axis] {
                break;
            }
            index[axis] = 0;
        }
    }
}

/// Number of lattice steps covering a span of `len` at step `h`: the exact
/// ceil of `len/h`, guarded against ratios a hair above an integer.
fn axis_steps(len: f64, h: f64) -> usize {
    let steps = (len / h - 1e-9).ceil();
    if steps <= 0.0 {
        0
    } else {
        steps as usize
    }
}

fn axis_coord(lower: f64, upper: f64, h: f64, j: usize, count: usize) -> f64 {
    if j + 1 == count && count > 1 {
        upper
    } else if j == 0 {
        lower
    } else {
        lower + j as f64 * h
    }
}

/// The box grown by `eps` on every side. With the Euclidean point-to-set
/// distance this is a superset of `{x : d(x, B) <= eps}`, used as a safe
/// sampling region for candidates.
pub fn inflate(b: &Box, eps: f64) -> Result<Box, GeometryError> {
    if eps < 0.0 {
        return Err(GeometryError::NegativeInflation(eps));
    }
    Box::new(
        b.lower.iter().map(|&l| l - eps).collect(),
        b.upper.iter().map(|&u| u + eps).collect(),
    )
}

/// Matrix-vector product.
pub fn apply_operator(a: &LinearOperator, x: &Point) -> Result<Point, GeometryError> {
    a.apply_slice(x.coords()).map(Point::new)
}

/// Lattice points `center + j*h` (integer `j`) within the closed Euclidean
/// ball of radius `radius`, ordered by distance from the center, ties broken
/// lexicographically on `j`. The ordering makes the grid of a smaller ball a
/// prefix of the grid of a larger one on the same lattice.
#[derive(Debug, Clone)]
pub struct BallGrid {
    points: Vec<Point>,
    norms: Vec<f64>,
}

impl BallGrid {
    pub fn build(center: &[f64], radius: f64, h: f64) -> Result<BallGrid, GeometryError> {
        if !(h > 0.0) {
            return Err(GeometryError::NonPositiveStep(h));
        }
        if radius < 0.0 {
            return Err(GeometryError::NegativeInflation(radius));
        }
        let dim = center.len();
        let jmax = (radius / h + 1e-9).floor() as i64;
        let mut entries: Vec<(f64, Vec<i64>)> = Vec::new();
        let mut j = vec![-jmax; dim];
        'outer: loop {
            let norm_sq: f64 = j.iter().map(|&ji| (ji as f64 * h).powi(2)).sum();
            if norm_sq <= radius * radius {
                entries.push((norm_sq, j.clone()));
            }
            let mut axis = dim;
            loop {
                if axis == 0 {
                    break 'outer;
                }
                axis -= 1;
                j[axis] += 1;
                if j[axis] <= jmax {
                    break;
                }
                j[axis] = -jmax;
            }
        }
        entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp(&b.1)));
        let norms = entries.iter().map(|(n, _)| n.sqrt()).collect();
        let points = entries
            .into_iter()
            .map(|(_, j)| {
                Point::new(
                    j.iter()
                        .zip(center)
                        .map(|(&ji, &c)| c + ji as f64 * h)
                        .collect(),
                )
            })
            .collect();
        Ok(BallGrid { points, norms })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of leading grid points within `radius` of the center.
    pub fn prefix_len(&self, radius: f64) -> usize {
        self.norms.partition_point(|&n| n <= radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cloud(points: &[&[f64]]) -> PointCloud {
        PointCloud::from_points(
            points[0].len(),
            points.iter().map(|p| Point::new(p.to_vec())).collect(),
        )
        .unwrap()
    }

    fn interval(l: f64, u: f64) -> Box {
        Box::new(vec![l], vec![u]).unwrap()
    }

    fn unit_square() -> Box {
        Box::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap()
    }

    #[test]
    fn distance_to_box_examples() {
        assert_eq!(
            distance_to_box(&Point::new(vec![0.5]), &interval(-1.0, 0.0)).unwrap(),
            0.5
        );
        assert_eq!(
            distance_to_box(&Point::new(vec![1.0, 1.0]), &unit_square()).unwrap(),
            0.0
        );
        assert_eq!(
            distance_to_box(&Point::new(vec![2.0, 3.0]), &unit_square()).unwrap(),
            5.0f64.sqrt()
        );
        assert!(distance_to_box(&Point::new(vec![1.0]), &unit_square()).is_err());
    }

    #[test]
    fn projection_examples() {
        let p = project_to_box(&Point::new(vec![0.5]), &interval(-1.0, 0.0)).unwrap();
        assert_eq!(p.coords(), &[0.0]);
        let p = project_to_box(&Point::new(vec![-2.0, 0.5]), &unit_square()).unwrap();
        assert_eq!(p.coords(), &[0.0, 0.5]);
        let inside = Point::new(vec![0.25, 0.75]);
        assert_eq!(project_to_box(&inside, &unit_square()).unwrap(), inside);
    }

    #[test]
    fn projection_gap_equals_distance() {
        let b = Box::new(vec![-1.0, 0.0, 2.0], vec![0.0, 1.0, 3.0]).unwrap();
        let x = Point::new(vec![1.5, 0.5, -1.0]);
        let proj = project_to_box(&x, &b).unwrap();
        let d = distance_to_box(&x, &b).unwrap();
        assert!((euclid(x.coords(), proj.coords()) - d).abs() < 1e-15);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&cloud(&[&[0.0, 0.0]])), 0.0);
        assert_eq!(diameter(&PointCloud::empty(2)), 0.0);
        let two = cloud(&[&[-1.0, -1.0], &[1.0, 1.0]]);
        assert_eq!(diameter(&two), 8.0f64.sqrt());
    }

    #[test]
    fn diameter_matches_brute_force_on_random_cloud() {
        let mut state = 0x12345678u64;
        let mut next = || {
            // xorshift, deterministic
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        let pts: Vec<Point> = (0..100)
            .map(|_| Point::new(vec![next(), next(), next()]))
            .collect();
        let c = PointCloud::from_points(3, pts).unwrap();
        let mut oracle: f64 = 0.0;
        for i in 0..c.len() {
            for j in 0..c.len() {
                let d: f64 = c.points()[i]
                    .coords()
                    .iter()
                    .zip(c.points()[j].coords())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                oracle = oracle.max(d);
            }
        }
        assert_eq!(diameter(&c), oracle);
        assert_eq!(diameter_with(&c, ExecMode::Sequential), oracle);
    }

    #[test]
    fn directed_distance_examples() {
        let a = cloud(&[&[0.0, 0.0], &[2.0, 0.0]]);
        let b = cloud(&[&[1.0, 0.0]]);
        assert_eq!(directed_distance(&a, &b).unwrap(), 1.0);
        assert_eq!(directed_distance(&a, &a).unwrap(), 0.0);
        let single = cloud(&[&[0.0, 0.0]]);
        let bigger = cloud(&[&[0.0, 0.0], &[5.0, 5.0]]);
        assert_eq!(directed_distance(&single, &bigger).unwrap(), 0.0);
        assert_eq!(
            directed_distance(&a, &PointCloud::empty(2)),
            Err(GeometryError::EmptyCloud)
        );
    }

    #[test]
    fn hausdorff_examples() {
        let a = cloud(&[&[0.0, 0.0], &[2.0, 0.0]]);
        let b = cloud(&[&[1.0, 0.0]]);
        assert_eq!(hausdorff(&a, &b).unwrap(), 1.0);
        assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        let p = cloud(&[&[0.0, 0.0]]);
        let q = cloud(&[&[1.0, 0.0]]);
        assert_eq!(hausdorff(&p, &q).unwrap(), 1.0);
        assert!(hausdorff(&p, &PointCloud::empty(2)).is_err());
    }

    #[test]
    fn kuratowski_small_cases() {
        let two = cloud(&[&[-1.0, -1.0], &[1.0, 1.0]]);
        assert_eq!(kuratowski_estimate(&two, 1).unwrap(), 8.0f64.sqrt());
        assert_eq!(kuratowski_estimate(&two, 2).unwrap(), 0.0);
        assert_eq!(kuratowski_estimate(&PointCloud::empty(2), 3).unwrap(), 0.0);
        assert!(kuratowski_estimate(&two, 0).is_err());
    }

    #[test]
    fn kuratowski_two_blobs_matches_exhaustive_partition() {
        // 10 points around (-1,-1) and 10 around (1,1), radius 0.01.
        let mut pts = Vec::new();
        for s in [-1.0, 1.0] {
            for i in 0..10 {
                let angle = i as f64 * std::f64::consts::PI / 5.0;
                pts.push(Point::new(vec![
                    s + 0.01 * angle.cos(),
                    s + 0.01 * angle.sin(),
                ]));
            }
        }
        let c = PointCloud::from_points(2, pts).unwrap();
        let heuristic = kuratowski_estimate(&c, 2).unwrap();
        assert!(heuristic <= 0.04, "heuristic {heuristic} > 0.04");

        // Exhaustive sweep over all 2-part assignments.
        let n = c.len();
        let mut dist = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..n {
                dist[i][j] = euclid(c.points()[i].coords(), c.points()[j].coords());
            }
        }
        // Point n-1 is pinned to part 0, halving the mask space.
        let mut exact = f64::INFINITY;
        for mask in 0u32..(1 << (n - 1)) {
            let side = |i: usize| if i == n - 1 { 0 } else { (mask >> i) & 1 };
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    if side(i) == side(j) {
                        worst = worst.max(dist[i][j]);
                    }
                }
            }
            exact = exact.min(worst);
        }
        assert!(heuristic >= exact - 1e-12);
        assert!((heuristic - exact).abs() < 1e-12, "blob split should be found");
    }

    #[test]
    fn kuratowski_nonincreasing_in_k() {
        let pts: Vec<Point> = (0..9)
            .map(|i| Point::new(vec![(i % 3) as f64, (i / 3) as f64 * 2.0]))
            .collect();
        let c = PointCloud::from_points(2, pts).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..=9 {
            let v = kuratowski_estimate(&c, k).unwrap();
            assert!(v <= prev + 1e-12, "k={k}: {v} > {prev}");
            prev = v;
        }
        assert_eq!(kuratowski_estimate(&c, 9).unwrap(), 0.0);
    }

    #[test]
    fn grid_sample_examples() {
        let g = grid_sample(&interval(0.0, 1.0), 0.5).unwrap();
        let coords: Vec<f64> = g.iter().map(|p| p.coords()[0]).collect();
        assert_eq!(coords, vec![0.0, 0.5, 1.0]);

        let g = grid_sample(&Box::new(vec![-1.0, -1.0], vec![0.0, 0.0]).unwrap(), 1.0).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.points()[0].coords(), &[-1.0, -1.0]);
        assert_eq!(g.points()[3].coords(), &[0.0, 0.0]);

        // Step wider than the edge: endpoints survive.
        let g = grid_sample(&interval(0.0, 0.3), 0.5).unwrap();
        let coords: Vec<f64> = g.iter().map(|p| p.coords()[0]).collect();
        assert_eq!(coords, vec![0.0, 0.3]);

        assert!(grid_sample(&interval(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn grid_sample_cardinality() {
        let b = Box::new(vec![0.0, -0.5, 2.0], vec![1.0, 0.7, 2.0]).unwrap();
        let h = 0.3;
        let g = grid_sample(&b, h).unwrap();
        let expected: usize = (0..3)
            .map(|i| ((b.upper()[i] - b.lower()[i]) / h - 1e-9).ceil().max(0.0) as usize + 1)
            .product();
        assert_eq!(g.len(), expected);
        // 1.0/0.3 -> 4 steps, 1.2/0.3 -> 4 steps, degenerate axis -> 1 point
        assert_eq!(g.len(), 5 * 5 * 1);
    }

    #[test]
    fn inflate_examples() {
        let b = inflate(&interval(-1.0, 0.0), 0.1).unwrap();
        assert_eq!(b.lower(), &[-1.1]);
        assert_eq!(b.upper(), &[0.1]);
        let same = inflate(&unit_square(), 0.0).unwrap();
        assert_eq!(same, unit_square());
        assert!(inflate(&unit_square(), -0.5).is_err());
    }

    #[test]
    fn inflated_box_covers_eps_neighborhood() {
        // Points at box distance <= eps always land inside the inflated box.
        let b = Box::new(vec![-1.0, 0.5], vec![0.0, 2.0]).unwrap();
        let eps = 0.25;
        let inflated = inflate(&b, eps).unwrap();
        let probe = grid_sample(&inflate(&b, 1.0).unwrap(), 0.13).unwrap();
        for p in probe.iter() {
            if distance_to_box(p, &b).unwrap() <= eps {
                assert!(inflated.contains(p), "{p} escapes the inflated box");
            }
        }
    }

    #[test]
    fn operator_examples() {
        let id = LinearOperator::identity(1);
        assert_eq!(
            apply_operator(&id, &Point::new(vec![0.7])).unwrap().coords(),
            &[0.7]
        );
        let scale = LinearOperator::new(1, 1, vec![2.0]).unwrap();
        assert_eq!(
            apply_operator(&scale, &Point::new(vec![0.5]))
                .unwrap()
                .coords(),
            &[1.0]
        );
        let a = LinearOperator::new(3, 2, vec![1.0, -2.0, 0.5, 4.0, 3.0, 0.0]).unwrap();
        let x = Point::new(vec![2.0, 1.0]);
        let out = apply_operator(&a, &x).unwrap();
        let expected: Vec<f64> = (0..3)
            .map(|r| a.data()[2 * r] * 2.0 + a.data()[2 * r + 1] * 1.0)
            .collect();
        assert_eq!(out.coords(), expected.as_slice());
        assert!(apply_operator(&a, &Point::new(vec![1.0])).is_err());
    }

    #[test]
    fn ball_grid_is_sorted_and_nested() {
        let g = BallGrid::build(&[0.0, 0.0], 0.5, 0.1).unwrap();
        assert_eq!(g.points()[0].coords(), &[0.0, 0.0]);
        for w in g.norms.windows(2) {
            assert!(w[0] <= w[1]);
        }
        let small = BallGrid::build(&[0.0, 0.0], 0.3, 0.1).unwrap();
        let prefix = g.prefix_len(0.3);
        assert_eq!(prefix, small.len());
        for (a, b) in small.points().iter().zip(&g.points()[..prefix]) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ball_grid_radius_zero_is_center() {
        let g = BallGrid::build(&[1.5, -2.0], 0.0, 0.25).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.points()[0].coords(), &[1.5, -2.0]);
    }
}
