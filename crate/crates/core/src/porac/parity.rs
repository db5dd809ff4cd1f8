use std::fmt;
use std::str::FromStr;

use super::{PoracGame, Protocol, QuantumStrategy};
use crate::linalg::ComplexMatrix;
use crate::par::map_indexed;
use crate::{Error, Result};

/// Limit on `|Par| · d^N` (parity vectors times strings) for the audits.
pub const MAX_AUDIT_WORK: u128 = 100_000_000;

/// Which parity vectors `s` the obliviousness constraint ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ParityConvention {
    /// `s` with at most `d - 2` zero entries.
    #[default]
    Paper,
    /// `s` with at least two nonzero entries.
    Hamming2,
}

impl fmt::Display for ParityConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Paper => "paper",
            Self::Hamming2 => "hamming2",
        })
    }
}

impl FromStr for ParityConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Self::Paper),
            "hamming2" => Ok(Self::Hamming2),
            other => Err(Error::Unsupported(format!(
                "unknown parity convention {other:?} (expected paper or hamming2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParitySet {
    game: PoracGame,
    elements: Vec<Vec<usize>>,
    convention: ParityConvention,
}

impl ParitySet {
    pub fn game(&self) -> PoracGame {
        self.game
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn convention(&self) -> ParityConvention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Enumerates the parity vectors of `game` in lexicographic order.
pub fn parity_set(game: PoracGame, convention: ParityConvention) -> Result<ParitySet> {
    game.ensure_enumerable()?;
    let d = game.d();
    let elements = (0..game.string_count())
        .map(|i| game.dits(i))
        .filter(|s| {
            let zeros = s.iter().filter(|&&v| v == 0).count();
            match convention {
                ParityConvention::Paper => zeros + 2 <= d,
                ParityConvention::Hamming2 => s.len() - zeros >= 2,
            }
        })
        .collect();
    Ok(ParitySet {
        game,
        elements,
        convention,
    })
}

/// One failed comparison between parity classes `l` and `l_prime` of `s`.
/// `y` and `b` are set for measurement-level checks only.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub s: Vec<usize>,
    pub y: Option<usize>,
    pub b: Option<usize>,
    pub l: usize,
    pub l_prime: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObliviousnessReport {
    pub max_violation: f64,
    /// Comparison attaining `max_violation`; `None` when nothing was compared.
    pub witness: Option<Violation>,
    pub passed: bool,
    pub tol: f64,
}

impl ObliviousnessReport {
    fn from_worst(worst: Option<Violation>, tol: f64) -> Self {
        let max_violation = worst.as_ref().map_or(0.0, |v| v.value);
        Self {
            max_violation,
            witness: worst,
            passed: max_violation <= tol,
            tol,
        }
    }
}

fn check_compatible(game: PoracGame, parity: &ParitySet) -> Result<()> {
    if parity.game != game {
        return Err(Error::InvalidGame(format!(
            "parity set built for N={}, d={} but strategy plays N={}, d={}",
            parity.game.n(),
            parity.game.d(),
            game.n(),
            game.d()
        )));
    }
    game.ensure_enumerable()?;
    let work = parity.len() as u128 * game.string_count_u128();
    if work > MAX_AUDIT_WORK {
        return Err(Error::SizeLimit {
            what: "parity audit |Par|·d^N",
            size: work,
            limit: MAX_AUDIT_WORK,
        });
    }
    Ok(())
}

/// Class label of every string for parity vector `s`.
fn classes(game: PoracGame, s: &[usize]) -> Vec<usize> {
    (0..game.string_count())
        .map(|x| game.parity(x, s))
        .collect()
}

/// Keeps the first maximum in iteration order so ties resolve deterministically.
fn worst_of(candidates: impl IntoIterator<Item = Option<Violation>>) -> Option<Violation> {
    candidates
        .into_iter()
        .flatten()
        .fold(None, |best: Option<Violation>, v| match best {
            Some(b) if b.value >= v.value => Some(b),
            _ => Some(v),
        })
}

/// Checks `Σ_{x·s=l} p(b|x,y) = Σ_{x·s=l'} p(b|x,y)` for every `s`, `y`, `b`
/// and every pair of nonempty parity classes.
pub fn parity_oblivious_measurement_check<P: Protocol + ?Sized>(
    strategy: &P,
    parity: &ParitySet,
    tol: f64,
) -> Result<ObliviousnessReport> {
    let game = strategy.game();
    check_compatible(game, parity)?;
    let (n, d) = (game.n(), game.d());
    let table = map_indexed(game.string_count(), |x| {
        (0..n)
            .flat_map(|y| (0..d).map(move |b| (y, b)))
            .map(|(y, b)| strategy.response(x, y, b))
            .collect::<Vec<f64>>()
    });
    let per_s = map_indexed(parity.len(), |i| {
        let s = &parity.elements[i];
        let labels = classes(game, s);
        let mut sums = vec![vec![0.0; n * d]; d];
        let mut nonempty = vec![false; d];
        for (x, &l) in labels.iter().enumerate() {
            nonempty[l] = true;
            for (acc, p) in sums[l].iter_mut().zip(&table[x]) {
                *acc += p;
            }
        }
        let present: Vec<usize> = (0..d).filter(|&l| nonempty[l]).collect();
        let mut worst: Option<Violation> = None;
        for (a, &l) in present.iter().enumerate() {
            for &lp in &present[a + 1..] {
                for (k, (a, b)) in sums[l].iter().zip(&sums[lp]).enumerate() {
                    let value = (a - b).abs();
                    if worst.as_ref().is_none_or(|w| value > w.value) {
                        worst = Some(Violation {
                            s: s.clone(),
                            y: Some(k / d),
                            b: Some(k % d),
                            l,
                            l_prime: lp,
                            value,
                        });
                    }
                }
            }
        }
        worst
    });
    Ok(ObliviousnessReport::from_worst(worst_of(per_s), tol))
}

/// Checks that the uniform mixtures of encoded states over each parity class
/// coincide entrywise. Sufficient for obliviousness under any measurement.
pub fn parity_oblivious_state_check(
    strategy: &QuantumStrategy,
    parity: &ParitySet,
    tol: f64,
) -> Result<ObliviousnessReport> {
    let game = strategy.game();
    check_compatible(game, parity)?;
    let d = game.d();
    let per_s = map_indexed(parity.len(), |i| {
        let s = &parity.elements[i];
        let labels = classes(game, s);
        let mut sums = vec![ComplexMatrix::zeros(d); d];
        let mut counts = vec![0usize; d];
        for (x, &l) in labels.iter().enumerate() {
            counts[l] += 1;
            let a = strategy.encoding(x).amplitudes();
            for r in 0..d {
                for c in 0..d {
                    sums[l][(r, c)] += a[r] * a[c].conj();
                }
            }
        }
        let averages: Vec<(usize, ComplexMatrix)> = (0..d)
            .filter(|&l| counts[l] > 0)
            .map(|l| (l, sums[l].scale_real(1.0 / counts[l] as f64)))
            .collect();
        let mut worst: Option<Violation> = None;
        for (a, (l, ma)) in averages.iter().enumerate() {
            for (lp, mb) in &averages[a + 1..] {
                let value = ma.max_abs_diff(mb).expect("same dimension");
                if worst.as_ref().is_none_or(|w| value > w.value) {
                    worst = Some(Violation {
                        s: s.clone(),
                        y: None,
                        b: None,
                        l: *l,
                        l_prime: *lp,
                        value,
                    });
                }
            }
        }
        worst
    });
    Ok(ObliviousnessReport::from_worst(worst_of(per_s), tol))
}
