//! Exact Hausdorff distance between finite point sets.
//!
//! Nearest-neighbour queries go through a uniform bucket grid over the target
//! set. A query searches square rings of cells outward from the cell holding
//! its projection onto the grid's bounding box; once `k` rings are done every
//! unvisited point is at least `k` cell widths away, so the search stops as
//! soon as the best distance found is within that bound. Distances are computed
//! exactly as in a brute-force double loop, so results agree bit for bit.

use num_complex::Complex64;
use rayon::prelude::*;

use super::PointCloud;

/// Pairs below this count use the plain double loop.
const BRUTE_FORCE_LIMIT: usize = 4096;

/// Cap on cells per axis.
const MAX_CELLS_PER_AXIS: usize = 4096;

/// Cap on total cells relative to the point count.
const MAX_CELLS_PER_POINT: usize = 16;

struct Grid<'a> {
    points: &'a [Complex64],
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    cell: f64,
    nx: usize,
    ny: usize,
    /// `starts[i]..starts[i + 1]` indexes `order` for cell `i`.
    starts: Vec<usize>,
    order: Vec<u32>,
}

impl<'a> Grid<'a> {
    fn new(points: &'a [Complex64]) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for z in points {
            x0 = x0.min(z.re);
            y0 = y0.min(z.im);
            x1 = x1.max(z.re);
            y1 = y1.max(z.im);
        }
        let (w, h) = (x1 - x0, y1 - y0);
        let target = (points.len() / 2).max(1) as f64;
        let cell = if w > 0.0 && h > 0.0 {
            (w * h / target).sqrt()
        } else {
            w.max(h) / target
        };
        let floor = w.max(h) / (MAX_CELLS_PER_AXIS - 1) as f64;
        let clamp = |cell: f64| {
            let cell = if cell > floor { cell } else { floor };
            if cell > 0.0 {
                cell
            } else {
                1.0
            }
        };
        let mut grid = Self::build(points, [x0, y0, x1, y1], clamp(cell));
        // Fractal sets fill a small part of their bounding box, so refine
        // while occupied cells hold many points on average.
        for _ in 0..3 {
            let occupied = grid
                .starts
                .windows(2)
                .filter(|s| s[1] > s[0])
                .count()
                .max(1);
            let load = points.len() as f64 / occupied as f64;
            let refined = clamp(grid.cell * (2.0 / load).sqrt());
            let (nx, ny) = ((w / refined) as usize + 1, (h / refined) as usize + 1);
            if load <= 4.0 || refined >= grid.cell || nx * ny > MAX_CELLS_PER_POINT * points.len() {
                break;
            }
            grid = Self::build(points, [x0, y0, x1, y1], refined);
        }
        grid
    }

    fn build(points: &'a [Complex64], [x0, y0, x1, y1]: [f64; 4], cell: f64) -> Self {
        let nx = ((x1 - x0) / cell) as usize + 1;
        let ny = ((y1 - y0) / cell) as usize + 1;
        let mut grid = Self {
            points,
            x0,
            y0,
            x1,
            y1,
            cell,
            nx,
            ny,
            starts: vec![0; nx * ny + 1],
            order: vec![0; points.len()],
        };
        let cells: Vec<usize> = points
            .iter()
            .map(|z| {
                let (i, j) = grid.cell_of(*z);
                j * nx + i
            })
            .collect();
        for &c in &cells {
            grid.starts[c + 1] += 1;
        }
        for i in 0..nx * ny {
            grid.starts[i + 1] += grid.starts[i];
        }
        let mut fill = grid.starts.clone();
        for (idx, &c) in cells.iter().enumerate() {
            grid.order[fill[c]] = idx as u32;
            fill[c] += 1;
        }
        grid
    }

    fn cell_of(&self, z: Complex64) -> (usize, usize) {
        let x = z.re.clamp(self.x0, self.x1);
        let y = z.im.clamp(self.y0, self.y1);
        let i = (((x - self.x0) / self.cell) as usize).min(self.nx - 1);
        let j = (((y - self.y0) / self.cell) as usize).min(self.ny - 1);
        (i, j)
    }

    fn scan_cell(&self, i: usize, j: usize, q: Complex64, best: &mut f64) {
        let c = j * self.nx + i;
        for &idx in &self.order[self.starts[c]..self.starts[c + 1]] {
            let d = (self.points[idx as usize] - q).norm_sqr();
            if d < *best {
                *best = d;
            }
        }
    }

    /// Squared distance from `q` to its nearest grid point, or some value
    /// `≤ enough` once the nearest point is known to be at least that close.
    fn nearest_sqr(&self, q: Complex64, enough: f64) -> f64 {
        let (ci, cj) = self.cell_of(q);
        let (ci, cj) = (ci as isize, cj as isize);
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        let max_ring = (ci.max(nx - 1 - ci)).max(cj.max(ny - 1 - cj));
        let mut best = f64::INFINITY;
        for k in 0..=max_ring {
            let j_lo = cj - k;
            let j_hi = cj + k;
            for i in (ci - k).max(0)..=(ci + k).min(nx - 1) {
                for j in [j_lo, j_hi] {
                    if (0..ny).contains(&j) {
                        self.scan_cell(i as usize, j as usize, q, &mut best);
                    }
                    if k == 0 {
                        break;
                    }
                }
            }
            if k > 0 {
                for j in (j_lo + 1).max(0)..=(j_hi - 1).min(ny - 1) {
                    for i in [ci - k, ci + k] {
                        if (0..nx).contains(&i) {
                            self.scan_cell(i as usize, j as usize, q, &mut best);
                        }
                    }
                }
            }
            // Unvisited points are at least k cells from the clamped query,
            // and clamping onto the bounding box only shortens distances.
            // The 1e-9 shrink absorbs cell-assignment rounding at cell edges.
            let reach = k as f64 * self.cell * (1.0 - 1e-9);
            if best <= reach * reach || best <= enough {
                break;
            }
        }
        best
    }
}

fn directed_brute(from: &[Complex64], to: &[Complex64]) -> f64 {
    from.iter()
        .map(|p| {
            to.iter()
                .map(|q| (p - q).norm_sqr())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
        .sqrt()
}

/// `sup_{p ∈ from} min_{q ∈ to} |p − q|`.
pub fn directed_hausdorff(from: &PointCloud, to: &PointCloud) -> f64 {
    let (from, to) = (from.points(), to.points());
    if from.len().saturating_mul(to.len()) <= BRUTE_FORCE_LIMIT {
        return directed_brute(from, to);
    }
    let grid = Grid::new(to);
    // Queries closer than the running maximum cannot raise it, so each
    // search may stop as soon as it gets that close.
    from.par_iter()
        .fold(|| 0.0f64, |max, &p| max.max(grid.nearest_sqr(p, max)))
        .reduce(|| 0.0, f64::max)
        .sqrt()
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &PointCloud, b: &PointCloud) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cloud(points: &[(f64, f64)]) -> PointCloud {
        PointCloud::new(points.iter().map(|&(x, y)| Complex64::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn small_examples() {
        let a = cloud(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(hausdorff_distance(&a, &a), 0.0);
        assert_eq!(
            hausdorff_distance(&cloud(&[(0.0, 0.0)]), &cloud(&[(1.0, 0.0)])),
            1.0
        );
        assert_eq!(hausdorff_distance(&a, &cloud(&[(0.5, 0.0)])), 0.5);
    }

    #[test]
    fn grid_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..20 {
            let n = 200 + trial * 50;
            let mut gen = |n: usize, spread: f64| {
                let pts: Vec<Complex64> = (0..n)
                    .map(|_| {
                        Complex64::new(
                            rng.random_range(-spread..spread),
                            rng.random_range(-spread..spread),
                        )
                    })
                    .collect();
                PointCloud::new(pts).unwrap()
            };
            let a = gen(n, 1.0);
            let b = gen(n / 2 + 1, 0.3 + trial as f64 * 0.1);
            let brute =
                directed_brute(a.points(), b.points()).max(directed_brute(b.points(), a.points()));
            assert_eq!(hausdorff_distance(&a, &b), brute);
        }
    }

    #[test]
    fn degenerate_layouts() {
        // collinear and coincident point sets
        let line: Vec<(f64, f64)> = (0..300).map(|k| (k as f64 / 299.0, 0.0)).collect();
        let same: Vec<(f64, f64)> = vec![(0.25, 0.0); 100];
        let (a, b) = (cloud(&line), cloud(&same));
        let brute =
            directed_brute(a.points(), b.points()).max(directed_brute(b.points(), a.points()));
        assert_eq!(hausdorff_distance(&a, &b), brute);
        let far = cloud(&vec![(10.0, -3.0); 100]);
        let brute =
            directed_brute(a.points(), far.points()).max(directed_brute(far.points(), a.points()));
        assert_eq!(hausdorff_distance(&a, &far), brute);
    }
}
