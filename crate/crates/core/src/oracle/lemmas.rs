use crate::bases::Basis;
use crate::bloch::{dot, to_bloch};
use crate::fur::fur_bound_mub;
use crate::linalg::projector;
use crate::par::map_indexed;
use crate::porac::PoracGame;
use crate::{Error, Result};

/// Bloch vectors of every basis vector, indexed `[i][outcome]`.
fn bloch_table(bases: &[Basis]) -> Result<(PoracGame, Vec<Vec<Vec<f64>>>)> {
    let first = bases
        .first()
        .ok_or_else(|| Error::InvalidGame("at least one basis is required".into()))?;
    let d = first.dim();
    if let Some(b) = bases.iter().find(|b| b.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: b.dim(),
        });
    }
    let game = PoracGame::new(bases.len(), d)?;
    game.ensure_enumerable()?;
    let table = bases
        .iter()
        .map(|b| {
            b.vectors()
                .iter()
                .map(|v| to_bloch(&projector(v)).components().to_vec())
                .collect()
        })
        .collect();
    Ok((game, table))
}

/// `|Σ_i x⃗_i|` for every string `x`, in string order.
fn summed_norms(game: PoracGame, table: &[Vec<Vec<f64>>]) -> Vec<f64> {
    map_indexed(game.string_count(), |x| {
        let mut sum = vec![0.0; table[0][0].len()];
        for (y, per_outcome) in table.iter().enumerate() {
            for (acc, c) in sum.iter_mut().zip(&per_outcome[game.dit(x, y)]) {
                *acc += c;
            }
        }
        dot(&sum, &sum).sqrt()
    })
}

/// `Σ_x |Σ_i x⃗_i|²` over all `d^N` outcome strings, where `x⃗_i` is the Bloch
/// vector of outcome `x_i` of basis `i`. Equals `((d-1)/(2d)) N d^N` for any bases.
pub fn lemma3_sum(bases: &[Basis]) -> Result<f64> {
    let (game, table) = bloch_table(bases)?;
    Ok(summed_norms(game, &table).iter().map(|r| r * r).sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiReport {
    /// `Φ = Σ_x Σ_i x⃗_i · b⃗_x` with `b⃗_x` of pure length along `Σ_i x⃗_i`.
    pub phi: f64,
    /// `sqrt(N) (d-1) d^N / (2d)`.
    pub bound: f64,
    /// `1/d + 2Φ/(N d^N)`.
    pub implied_success: f64,
    pub quantum_upper_bound: f64,
    pub holds: bool,
    pub saturated: bool,
}

/// Evaluates `Φ` for the given decoding bases with the per-string optimal
/// Bloch vector and compares it with its Cauchy–Schwarz bound.
pub fn phi_bound_check(decodings: &[Basis], tol: f64) -> Result<PhiReport> {
    let (game, table) = bloch_table(decodings)?;
    let (n, d) = (game.n() as f64, game.d() as f64);
    let strings = game.string_count() as f64;
    let r = ((d - 1.0) / (2.0 * d)).sqrt();
    let phi: f64 = summed_norms(game, &table).iter().map(|s| r * s).sum();
    let bound = n.sqrt() * (d - 1.0) * strings / (2.0 * d);
    let implied_success = 1.0 / d + 2.0 * phi / (n * strings);
    let quantum_upper_bound = fur_bound_mub(game.n(), game.d());
    Ok(PhiReport {
        phi,
        bound,
        implied_success,
        quantum_upper_bound,
        holds: phi <= bound + tol && implied_success <= quantum_upper_bound + tol,
        saturated: (implied_success - quantum_upper_bound).abs() <= tol,
    })
}
