//! The N→1 d-level parity-oblivious random access code (PORAC) game.
//!
//! Alice receives a uniformly random string `x ∈ {0..d-1}^N` and prepares a
//! system; Bob receives a uniformly random question `y ∈ {0..N-1}` and must
//! output `x_y`. Strings are indexed big-endian: dit 0 is the most significant
//! digit, so index order is lexicographic order.

mod parity;
mod strategies;

pub use parity::{
    parity_oblivious_measurement_check, parity_oblivious_state_check, parity_set,
    ObliviousnessReport, ParityConvention, ParitySet, Violation,
};
pub use strategies::{
    classical_po_strategy, decode_prob_closed_form, encode_2d, naive_parity_strategy,
    paper_2d_strategy, qubit_3to1_strategy, qubit_yz_strategy, ClassicalStrategy, Guess,
    QuantumStrategy, Question,
};

use num_rational::Ratio;

use crate::fur::fur_bound_mub;
use crate::par::map_indexed;
use crate::{Error, Result};

/// Limit on `d^N` for operations that enumerate every string.
pub const MAX_STRINGS: u128 = 1_000_000;
/// Limit on `d^N · N` Born evaluations in [`success_probability`].
pub const MAX_EVALUATIONS: u128 = 10_000_000;

/// Game parameters: `n` dits over an alphabet of size `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PoracGame {
    n: usize,
    d: usize,
}

impl PoracGame {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGame(
                "the string needs at least one dit".into(),
            ));
        }
        if d < 2 {
            return Err(Error::InvalidDimension { got: d, min: 2 });
        }
        if (d as u128)
            .checked_pow(n as u32)
            .is_none_or(|s| s > u64::MAX as u128)
        {
            return Err(Error::InvalidGame(format!("{d}^{n} strings overflow")));
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `d^N` as an exact count.
    pub fn string_count_u128(&self) -> u128 {
        (self.d as u128).pow(self.n as u32)
    }

    /// `d^N`; only meaningful after [`PoracGame::ensure_enumerable`].
    pub fn string_count(&self) -> usize {
        self.string_count_u128() as usize
    }

    pub fn ensure_enumerable(&self) -> Result<()> {
        let size = self.string_count_u128();
        if size > MAX_STRINGS {
            return Err(Error::SizeLimit {
                what: "string space d^N",
                size,
                limit: MAX_STRINGS,
            });
        }
        Ok(())
    }

    /// Dits of string `index`, most significant first.
    pub fn dits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = index % self.d;
            index /= self.d;
        }
        out
    }

    /// Dit `y` of string `index`.
    pub fn dit(&self, index: usize, y: usize) -> usize {
        let shift = self.n - 1 - y;
        (index / self.d.pow(shift as u32)) % self.d
    }

    pub fn index_of(&self, dits: &[usize]) -> Result<usize> {
        if dits.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: dits.len(),
            });
        }
        dits.iter().try_fold(0usize, |acc, &x| {
            if x >= self.d {
                Err(Error::DitOutOfRange { dit: x, d: self.d })
            } else {
                Ok(acc * self.d + x)
            }
        })
    }

    /// Parity `x·s = Σ_i x_i s_i mod d`.
    pub fn parity(&self, index: usize, s: &[usize]) -> usize {
        self.dits(index)
            .iter()
            .zip(s)
            .map(|(x, s)| x * s)
            .sum::<usize>()
            % self.d
    }
}

/// Anything that assigns Bob's output distribution `p(b | x, y)`.
pub trait Protocol: Sync {
    fn game(&self) -> PoracGame;

    /// Probability that Bob outputs `b` on string index `x` and question `y`.
    fn response(&self, x: usize, y: usize, b: usize) -> f64;
}

/// Average success `1/(d^N N) Σ_x Σ_y p(b = x_y | x, y)` by exhaustive enumeration.
pub fn success_probability<P: Protocol + ?Sized>(protocol: &P) -> Result<f64> {
    let game = protocol.game();
    game.ensure_enumerable()?;
    let evaluations = game.string_count_u128() * game.n as u128;
    if evaluations > MAX_EVALUATIONS {
        return Err(Error::SizeLimit {
            what: "Born evaluations d^N·N",
            size: evaluations,
            limit: MAX_EVALUATIONS,
        });
    }
    let per_string = map_indexed(game.string_count(), |x| {
        (0..game.n)
            .map(|y| protocol.response(x, y, game.dit(x, y)))
            .sum::<f64>()
    });
    let total: f64 = per_string.iter().sum();
    Ok(total / (game.string_count() as f64 * game.n as f64))
}

/// Preparation-noncontextual bound `(N + d - 1)/(d N)`.
pub fn noncontextual_bound(n: usize, d: usize) -> Ratio<u64> {
    Ratio::new((n + d - 1) as u64, (d * n) as u64)
}

/// Quantum upper bound `(1/d)(1 + (d-1)/sqrt(N))` for rank-one projective decoding.
pub fn quantum_upper_bound(n: usize, d: usize) -> f64 {
    fur_bound_mub(n, d)
}

pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn string_indexing() {
        let g = PoracGame::new(3, 2).unwrap();
        assert_eq!(g.string_count(), 8);
        assert_eq!(g.dits(6), vec![1, 1, 0]);
        assert_eq!(g.index_of(&[1, 1, 0]).unwrap(), 6);
        for x in 0..8 {
            assert_eq!(g.index_of(&g.dits(x)).unwrap(), x);
            for y in 0..3 {
                assert_eq!(g.dit(x, y), g.dits(x)[y]);
            }
        }
        assert!(matches!(
            g.index_of(&[0, 2, 0]),
            Err(Error::DitOutOfRange { .. })
        ));
        let g = PoracGame::new(2, 5).unwrap();
        assert_eq!(g.parity(g.index_of(&[3, 4]).unwrap(), &[1, 2]), (3 + 8) % 5);
    }

    #[test]
    fn game_validation() {
        assert!(PoracGame::new(0, 2).is_err());
        assert!(PoracGame::new(2, 1).is_err());
        assert!(matches!(
            PoracGame::new(21, 2).unwrap().ensure_enumerable(),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn noncontextual_examples() {
        assert_eq!(noncontextual_bound(2, 2), Ratio::new(3, 4));
        assert_eq!(noncontextual_bound(3, 2), Ratio::new(2, 3));
        assert_eq!(noncontextual_bound(2, 3), Ratio::new(2, 3));
        assert_eq!(noncontextual_bound(1, 4), Ratio::new(1, 1));
    }

    #[test]
    fn quantum_bound_examples() {
        assert_abs_diff_eq!(quantum_upper_bound(2, 2), 0.8535534, epsilon = 1e-7);
        assert_abs_diff_eq!(quantum_upper_bound(3, 2), 0.7886751, epsilon = 1e-7);
        assert_abs_diff_eq!(
            quantum_upper_bound(2, 3),
            (1.0 + 2.0 / 2f64.sqrt()) / 3.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(quantum_upper_bound(2, 3), 0.804738, epsilon = 1e-6);
    }

    #[test]
    fn quantum_bound_dominates_noncontextual() {
        for n in 2..=10 {
            for d in 2..=10 {
                let q = quantum_upper_bound(n, d);
                let nc = ratio_to_f64(noncontextual_bound(n, d));
                assert!(q > nc, "N = {n}, d = {d}: {q} vs {nc}");
            }
        }
        assert_abs_diff_eq!(quantum_upper_bound(1, 4), 1.0);
    }
}
