use num_complex::Complex64;

use super::{argmax_first, hill_climb, random_pure_state, stream_rng, SearchConfig, CHUNK};
use crate::fur::OutcomeSet;
use crate::linalg::PureState;
use crate::par::map_indexed;
use crate::Result;

fn certainty(s: &OutcomeSet, amps: &[Complex64]) -> f64 {
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    s.outcomes()
        .iter()
        .zip(s.weights())
        .map(|(x, w)| {
            let ov: Complex64 = x
                .amplitudes()
                .iter()
                .zip(amps)
                .map(|(a, b)| a.conj() * b)
                .sum();
            w * ov.norm_sqr()
        })
        .sum::<f64>()
        / norm
}

/// Largest certainty `Σ_i p_i |⟨x_i|ψ⟩|²` found over Haar-random pure states,
/// optionally polished by a hill-climb from the best sample.
pub fn max_certainty_search(s: &OutcomeSet, cfg: &SearchConfig) -> Result<(f64, PureState)> {
    let d = s.dim();
    let chunks = cfg.samples.div_ceil(CHUNK);
    let per_chunk = map_indexed(chunks, |k| -> Result<(f64, PureState)> {
        let mut rng = stream_rng(cfg.seed, k as u64);
        let count = CHUNK.min(cfg.samples - k * CHUNK);
        let mut best: Option<(f64, PureState)> = None;
        for _ in 0..count {
            let psi = random_pure_state(d, &mut rng)?;
            let v = certainty(s, psi.amplitudes());
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, psi));
            }
        }
        Ok(best.expect("chunks are nonempty"))
    });
    let sampled = per_chunk.into_iter().collect::<Result<Vec<_>>>()?;
    let (mut value, mut state) = argmax_first(sampled).expect("samples >= 1");
    if cfg.refine {
        let (v, amps) = hill_climb(state.amplitudes().to_vec(), |a| certainty(s, a), true);
        if v > value {
            state = PureState::normalized(amps)?;
            value = s.certainty_of_pure(&state)?;
        }
    }
    Ok((value, state))
}
