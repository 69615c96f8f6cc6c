//! Direct quadrature against the split chirp-FFT path.

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{random_field, SpaceTimeGrid};
use crate::transforms::{Path, Transform};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub direct_s: Option<f64>,
    pub fast_s: Option<f64>,
    pub speedup: Option<f64>,
    /// Relative L² distance between the two outputs.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub transform: Transform,
    pub dims: Vec<usize>,
    /// Timings are the minimum over this many repetitions.
    pub repeats: usize,
    pub seed: u64,
    /// Paths to time; the deviation column always compares both.
    pub paths: Vec<Path>,
}

impl BenchConfig {
    pub fn new(transform: Transform, dims: Vec<usize>) -> Self {
        Self { transform, dims, repeats: 3, seed: 0, paths: vec![Path::Direct, Path::Fast] }
    }
}

fn min_time<F: FnMut() -> Result<()>>(repeats: usize, mut f: F) -> Result<f64> {
    let mut best = f64::INFINITY;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        f()?;
        best = best.min(start.elapsed().as_secs_f64());
    }
    Ok(best)
}

pub fn bench_sweep(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.dims.is_empty() || cfg.dims.iter().any(|&n| n == 0) {
        return Err(Error::Domain(format!("bench dims must be positive, got {:?}", cfg.dims)));
    }
    if cfg.paths.is_empty() {
        return Err(Error::Domain("bench needs at least one path".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.dims.len());
    for &n in &cfg.dims {
        let g = SpaceTimeGrid::centered([n; 4], [6.0 / n as f64; 4])?;
        let f = random_field(&g, &mut rng);
        let wg = cfg.transform.conjugate_grid(&g)?;
        let direct = cfg.transform.forward(&f, &wg, Path::Direct)?;
        let fast = cfg.transform.forward(&f, &wg, Path::Fast)?;
        let max_deviation = fast.relative_l2(&direct)?;
        let time = |path: Path| -> Result<Option<f64>> {
            if cfg.paths.contains(&path) {
                min_time(cfg.repeats, || cfg.transform.forward(&f, &wg, path).map(|_| ())).map(Some)
            } else {
                Ok(None)
            }
        };
        let direct_s = time(Path::Direct)?;
        let fast_s = time(Path::Fast)?;
        log::info!("bench n={n}: direct {direct_s:?}s fast {fast_s:?}s");
        let speedup = direct_s.zip(fast_s).map(|(d, f)| d / f);
        rows.push(BenchRow { n, direct_s, fast_s, speedup, max_deviation });
    }
    Ok(rows)
}

/// True when every row has a speedup larger than the row before.
pub fn speedup_is_monotone(rows: &[BenchRow]) -> bool {
    rows.iter().all(|r| r.speedup.is_some()) && rows.windows(2).all(|w| w[1].speedup > w[0].speedup)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "direct_s", "fast_s", "speedup", "max_deviation"])?;
    for r in rows {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        w.write_record([
            r.n.to_string(),
            opt(r.direct_s),
            opt(r.fast_s),
            r.speedup.map(|x| x.to_string()).unwrap_or_default(),
            format!("{:e}", r.max_deviation),
        ])?;
    }
    w.flush()?;
    Ok(())
}
