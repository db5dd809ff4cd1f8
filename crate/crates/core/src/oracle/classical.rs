use num_rational::Ratio;

use crate::par::map_indexed;
use crate::porac::{ClassicalStrategy, Guess, PoracGame};
use crate::{Error, Result};

/// Limit on the number of encoders `d^(d^N)`.
pub const MAX_ENCODERS: u128 = 1_000_000;

/// Decodes encoder `e` as the base-`d` digits of `e`, one per string.
fn encoder_of(mut e: usize, strings: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; strings];
    for slot in out.iter_mut().rev() {
        *slot = e % d;
        e /= d;
    }
    out
}

/// Best decoder for a fixed encoder: for each message and question, the dit
/// that is most often correct (smallest on ties). Returns the number of
/// correct `(x, y)` pairs and the table.
fn best_decoder(game: PoracGame, encoder: &[usize]) -> (u64, Vec<Vec<Guess>>) {
    let (n, d) = (game.n(), game.d());
    // counts[m][y][v] = #{x : encoder[x] = m, x_y = v}
    let mut counts = vec![vec![vec![0u64; d]; n]; d];
    for (x, &m) in encoder.iter().enumerate() {
        for (y, row) in counts[m].iter_mut().enumerate() {
            row[game.dit(x, y)] += 1;
        }
    }
    let mut correct = 0;
    let table = counts
        .iter()
        .map(|per_y| {
            per_y
                .iter()
                .map(|c| {
                    let (v, best) =
                        c.iter()
                            .enumerate()
                            .fold((0, 0), |acc, (v, &k)| if k > acc.1 { (v, k) } else { acc });
                    correct += best;
                    Guess::Dit(v)
                })
                .collect()
        })
        .collect();
    (correct, table)
}

/// Exact optimum of the `N→1` random access code over all deterministic
/// one-dit classical strategies. Not parity-constrained, so it may exceed the
/// noncontextual bound.
///
/// Every encoder is enumerated; for each one the optimal decoder is the
/// per-(message, question) majority vote, which makes this equal to the
/// maximum over all encoder/decoder pairs.
pub fn classical_bruteforce_rac(n: usize, d: usize) -> Result<(Ratio<u64>, ClassicalStrategy)> {
    let game = PoracGame::new(n, d)?;
    game.ensure_enumerable()?;
    let strings = game.string_count();
    let encoders = (d as u128)
        .checked_pow(strings as u32)
        .filter(|&e| e <= MAX_ENCODERS)
        .ok_or(Error::SizeLimit {
            what: "classical encoders d^(d^N)",
            size: (d as f64).powf(strings as f64).min(u128::MAX as f64) as u128,
            limit: MAX_ENCODERS,
        })? as usize;
    let scores = map_indexed(encoders, |e| {
        best_decoder(game, &encoder_of(e, strings, d)).0
    });
    let (best_e, best) =
        scores
            .iter()
            .enumerate()
            .fold((0, 0), |acc, (e, &s)| if s > acc.1 { (e, s) } else { acc });
    let encoder = encoder_of(best_e, strings, d);
    let (_, decoder) = best_decoder(game, &encoder);
    let strategy = ClassicalStrategy::new(game, encoder, decoder, "bruteforce-unconstrained")?;
    let value = Ratio::new(best, (strings * n) as u64);
    debug_assert_eq!(value, strategy.success_exact());
    Ok((value, strategy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::porac::noncontextual_bound;

    #[test]
    fn known_optima() {
        assert_eq!(classical_bruteforce_rac(2, 2).unwrap().0, Ratio::new(3, 4));
        assert_eq!(classical_bruteforce_rac(3, 2).unwrap().0, Ratio::new(3, 4));
        assert_eq!(classical_bruteforce_rac(1, 3).unwrap().0, Ratio::new(1, 1));
    }

    #[test]
    fn returned_strategy_attains_value() {
        for (n, d) in [(2, 2), (3, 2), (2, 3)] {
            let (v, s) = classical_bruteforce_rac(n, d).unwrap();
            assert_eq!(s.success_exact(), v);
            assert!(v >= noncontextual_bound(n, d));
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            classical_bruteforce_rac(2, 4),
            Err(Error::SizeLimit { .. })
        ));
        assert!(matches!(
            classical_bruteforce_rac(5, 2),
            Err(Error::SizeLimit { .. })
        ));
    }
}
