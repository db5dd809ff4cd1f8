use num_complex::Complex64;

use super::{argmax_first, gram_schmidt, haar_basis, hill_climb, stream_rng, SearchConfig, CHUNK};
use crate::bases::{computational_basis, Basis};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::par::map_indexed;
use crate::porac::PoracGame;
use crate::{Error, Result};

/// Limit on `d^N` for the decoder search.
pub const MAX_SEARCH_STRINGS: u128 = 1_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PoracSearchResult {
    /// Best success probability found, with optimal pure encodings.
    pub value: f64,
    /// Decoding bases attaining it; basis 0 is the computational basis.
    pub decoders: Vec<Basis>,
}

/// `1/(N d^N) Σ_x λ_max(Σ_y |b^y_{x_y}⟩⟨b^y_{x_y}|)`: the success of the given
/// decoders when every string is encoded in the best pure state.
pub fn optimal_encoding_success(game: PoracGame, decoders: &[Basis]) -> Result<f64> {
    let (n, d) = (game.n(), game.d());
    let per_string = map_indexed(game.string_count(), |x| -> Result<f64> {
        let mut m = ComplexMatrix::zeros(d);
        for (y, basis) in decoders.iter().enumerate() {
            let v = basis.vector(game.dit(x, y)).amplitudes();
            for r in 0..d {
                for c in 0..d {
                    m[(r, c)] += v[r] * v[c].conj();
                }
            }
        }
        Ok(hermitian_eigenvalues(&m)?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max))
    });
    let total = per_string.into_iter().sum::<Result<f64>>()?;
    Ok(total / (n as f64 * game.string_count() as f64))
}

fn flatten(bases: &[Basis]) -> Vec<Complex64> {
    bases
        .iter()
        .flat_map(|b| {
            b.vectors()
                .iter()
                .flat_map(|v| v.amplitudes().iter().copied())
        })
        .collect()
}

fn unflatten(raw: &[Complex64], d: usize) -> Result<Vec<Basis>> {
    raw.chunks(d * d)
        .map(|chunk| gram_schmidt(chunk.chunks(d).map(<[_]>::to_vec).collect(), "search"))
        .collect()
}

/// Random search over rank-one projective decoders for the `N→1` game. Basis 0
/// is fixed to the computational basis since a common unitary does not change
/// the value. With `refine`, the best decoders are polished by a hill-climb
/// over their (re-orthonormalized) amplitudes.
pub fn max_porac_search(game: PoracGame, cfg: &SearchConfig) -> Result<PoracSearchResult> {
    let size = game.string_count_u128();
    if size > MAX_SEARCH_STRINGS {
        return Err(Error::SizeLimit {
            what: "decoder search d^N",
            size,
            limit: MAX_SEARCH_STRINGS,
        });
    }
    let (n, d) = (game.n(), game.d());
    let fixed = computational_basis(d)?;
    let evaluate = |free: &[Basis]| -> Result<f64> {
        let mut all = Vec::with_capacity(n);
        all.push(fixed.clone());
        all.extend_from_slice(free);
        optimal_encoding_success(game, &all)
    };

    let chunks = cfg.samples.div_ceil(CHUNK);
    let per_chunk = map_indexed(chunks, |k| -> Result<(f64, Vec<Basis>)> {
        let mut rng = stream_rng(cfg.seed, k as u64);
        let count = CHUNK.min(cfg.samples - k * CHUNK);
        let mut best: Option<(f64, Vec<Basis>)> = None;
        for _ in 0..count {
            let free = (1..n)
                .map(|_| haar_basis(d, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let v = evaluate(&free)?;
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, free));
            }
        }
        Ok(best.expect("chunks are nonempty"))
    });
    let sampled = per_chunk.into_iter().collect::<Result<Vec<_>>>()?;
    let (mut value, mut free) = argmax_first(sampled).expect("samples >= 1");

    if cfg.refine && n > 1 {
        let objective = |raw: &[Complex64]| {
            unflatten(raw, d)
                .and_then(|bases| evaluate(&bases))
                .unwrap_or(f64::NEG_INFINITY)
        };
        let (v, raw) = hill_climb(flatten(&free), objective, false);
        if v > value {
            free = unflatten(&raw, d)?;
            value = evaluate(&free)?;
        }
    }

    let mut decoders = vec![fixed];
    decoders.extend(free);
    Ok(PoracSearchResult { value, decoders })
}
