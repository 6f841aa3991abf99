//! Parallel drivers for the multi-start analyses.

use cpv_core::analysis::probe::random_starts;
use cpv_core::analysis::{fiber_probe_start, summarize, DescentOptions, FiberProbeReport};
use cpv_core::su3::{weyl_projection, WeylPoint};
use cpv_core::vortex::momentum_map;
use cpv_core::{ProjectivePoint, VortexConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Starts are drawn sequentially from stream `stream` of `seed` and descended
/// in parallel, so the report does not depend on the thread count.
pub fn parallel_fiber_probe(
    gammas: &[f64],
    mu: &WeylPoint,
    n_starts: usize,
    seed: u64,
    stream: u64,
) -> cpv_core::Result<FiberProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let starts = random_starts(gammas, n_starts, &mut rng)?;
    let opts = DescentOptions::default();
    let outcomes = starts.par_iter().map(|s| fiber_probe_start(s, mu, &opts)).collect();
    Ok(summarize(mu, outcomes))
}

const CHUNK: usize = 1024;

/// `sample_polytope` in fixed-size chunks, chunk `k` drawing from stream `k` of `seed`.
pub fn parallel_sample_polytope(gammas: &[f64], n: usize, seed: u64) -> cpv_core::Result<Vec<WeylPoint>> {
    let chunks: Vec<Vec<WeylPoint>> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let len = CHUNK.min(n - k * CHUNK);
            (0..len)
                .map(|_| {
                    let pts = gammas.iter().map(|_| ProjectivePoint::random(&mut rng)).collect();
                    VortexConfig::new(pts, gammas.to_vec()).map(|c| weyl_projection(&momentum_map(&c)))
                })
                .collect()
        })
        .collect::<cpv_core::Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}
