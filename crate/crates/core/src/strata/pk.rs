//! Sampled Painlevé–Kuratowski limits on a bounded grid window.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SampledSet {
    pub points: Vec<Vec<f64>>,
    pub tag: String,
}

impl SampledSet {
    pub fn new(points: Vec<Vec<f64>>, tag: impl Into<String>) -> Self {
        SampledSet { points, tag: tag.into() }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, x: &[f64]) -> f64 {
        self.points.iter().map(|p| dist(p, x)).fold(f64::INFINITY, f64::min)
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Uniform grid on the box `[lo, hi]` with spacing `step`.
#[derive(Clone, Debug, PartialEq)]
pub struct PkGrid {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub step: f64,
}

impl PkGrid {
    pub fn cube(dim: usize, radius: f64, step: f64) -> Self {
        PkGrid { lo: vec![-radius; dim], hi: vec![radius; dim], step }
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        let counts: Vec<usize> =
            self.lo.iter().zip(&self.hi).map(|(l, h)| ((h - l) / self.step + 1e-9).floor() as usize + 1).collect();
        let total: usize = counts.iter().product();
        (0..total)
            .map(|mut k| {
                counts
                    .iter()
                    .zip(&self.lo)
                    .map(|(&c, &l)| {
                        let i = k % c;
                        k /= c;
                        l + i as f64 * self.step
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn sample_on_grid(grid: &PkGrid, member: impl Fn(&[f64]) -> bool, tag: impl Into<String>) -> SampledSet {
    SampledSet::new(grid.points().into_iter().filter(|p| member(p)).collect(), tag)
}

/// Hausdorff distance between finite sets (`∞` if exactly one is empty).
pub fn hausdorff(a: &SampledSet, b: &SampledSet) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    let ab = a.points.iter().map(|p| b.distance(p)).fold(0.0, f64::max);
    let ba = b.points.iter().map(|p| a.distance(p)).fold(0.0, f64::max);
    ab.max(ba)
}

/// `max_{g ∈ grid} |d_A(g) − d_B(g)|` for distance functions of closed sets.
pub fn window_hausdorff(grid: &PkGrid, da: impl Fn(&[f64]) -> f64, db: impl Fn(&[f64]) -> f64) -> f64 {
    grid.points().iter().map(|g| (da(g) - db(g)).abs()).fold(0.0, f64::max)
}

fn tail_len(n: usize) -> usize {
    (n / 2).max(2).min(n)
}

fn check(seq: &[SampledSet], eps: f64) -> Result<()> {
    if seq.len() < 2 {
        return Err(Error::EmptyInput);
    }
    if eps.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::InvalidInput(format!("resolution must be positive, got {eps}")));
    }
    Ok(())
}

/// Grid points within `eps` of each of the last `K` sets (`K` = half the sequence, at least 2).
pub fn pk_liminf(seq: &[SampledSet], eps: f64, grid: &PkGrid) -> Result<SampledSet> {
    check(seq, eps)?;
    let tail = &seq[seq.len() - tail_len(seq.len())..];
    Ok(sample_on_grid(grid, |g| tail.iter().all(|s| s.distance(g) <= eps), "liminf"))
}

/// Grid points within `eps` of at least one set of every tail block.
pub fn pk_limsup(seq: &[SampledSet], eps: f64, grid: &PkGrid) -> Result<SampledSet> {
    check(seq, eps)?;
    let tail = &seq[seq.len() - tail_len(seq.len())..];
    let block = tail.len().div_ceil(2);
    Ok(sample_on_grid(grid, |g| tail.chunks(block).all(|c| c.iter().any(|s| s.distance(g) <= eps)), "limsup"))
}

/// Both limits and whether they coincide within `eps`.
pub fn pk_converges(seq: &[SampledSet], eps: f64, grid: &PkGrid) -> Result<(SampledSet, SampledSet, bool)> {
    let lo = pk_liminf(seq, eps, grid)?;
    let hi = pk_limsup(seq, eps, grid)?;
    let ok = hausdorff(&lo, &hi) <= eps;
    Ok((lo, hi, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escaping_point_leaves_window() {
        let grid = PkGrid::cube(1, 3.0, 0.5);
        let seq: Vec<SampledSet> =
            (1..=10).map(|k| SampledSet::new(vec![vec![0.0], vec![k as f64]], format!("A{k}"))).collect();
        let (lo, hi, ok) = pk_converges(&seq, 0.1, &grid).unwrap();
        assert_eq!(lo.points, vec![vec![0.0]]);
        assert_eq!(hi.points, vec![vec![0.0]]);
        assert!(ok);
    }

    #[test]
    fn constant_sequence() {
        let grid = PkGrid::cube(1, 2.0, 0.5);
        let a = sample_on_grid(&grid, |x| x[0] >= 0.0, "A");
        let seq = vec![a.clone(); 4];
        let (lo, hi, ok) = pk_converges(&seq, 0.1, &grid).unwrap();
        assert_eq!(lo, SampledSet { tag: "liminf".into(), ..a.clone() });
        assert_eq!(hi.points, a.points);
        assert!(ok);
    }

    #[test]
    fn alternating_sequence_does_not_converge() {
        let grid = PkGrid::cube(1, 2.0, 0.5);
        let seq: Vec<SampledSet> =
            (0..8).map(|k| SampledSet::new(vec![vec![if k % 2 == 0 { 1.0 } else { -1.0 }]], "alt")).collect();
        let (lo, hi, ok) = pk_converges(&seq, 0.1, &grid).unwrap();
        assert!(lo.is_empty());
        assert_eq!(hi.points.len(), 2);
        assert!(!ok);
    }

    #[test]
    fn rejects_short_input() {
        let grid = PkGrid::cube(1, 1.0, 0.5);
        assert_eq!(pk_liminf(&[], 0.1, &grid).unwrap_err(), Error::EmptyInput);
    }
}
