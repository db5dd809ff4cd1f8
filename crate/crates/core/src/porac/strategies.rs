use num_rational::Ratio;

use super::{noncontextual_bound, PoracGame, Protocol};
use crate::bases::{clock_z, computational_basis, fourier_basis, qubit_basis, Basis};
use crate::bloch::{from_bloch, BlochVector};
use crate::linalg::{inner, root_of_unity, PureState};
use crate::{Error, Result};

/// Pure-state encoding of every string plus one decoding basis per question.
/// Outcome `k` of `decoders[y]` is read as the guess `x_y = k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumStrategy {
    game: PoracGame,
    encodings: Vec<PureState>,
    decoders: Vec<Basis>,
    label: String,
}

impl QuantumStrategy {
    pub fn new(
        game: PoracGame,
        encodings: Vec<PureState>,
        decoders: Vec<Basis>,
        label: impl Into<String>,
    ) -> Result<Self> {
        game.ensure_enumerable()?;
        if encodings.len() != game.string_count() {
            return Err(Error::DimensionMismatch {
                expected: game.string_count(),
                found: encodings.len(),
            });
        }
        if decoders.len() != game.n() {
            return Err(Error::DimensionMismatch {
                expected: game.n(),
                found: decoders.len(),
            });
        }
        for dim in encodings
            .iter()
            .map(PureState::dim)
            .chain(decoders.iter().map(Basis::dim))
        {
            if dim != game.d() {
                return Err(Error::DimensionMismatch {
                    expected: game.d(),
                    found: dim,
                });
            }
        }
        Ok(Self {
            game,
            encodings,
            decoders,
            label: label.into(),
        })
    }

    pub fn encoding(&self, x: usize) -> &PureState {
        &self.encodings[x]
    }

    pub fn encodings(&self) -> &[PureState] {
        &self.encodings
    }

    pub fn decoders(&self) -> &[Basis] {
        &self.decoders
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl Protocol for QuantumStrategy {
    fn game(&self) -> PoracGame {
        self.game
    }

    fn response(&self, x: usize, y: usize, b: usize) -> f64 {
        inner(self.decoders[y].vector(b), &self.encodings[x])
            .expect("dimensions validated at construction")
            .norm_sqr()
    }
}

fn n_d_squared(d: usize) -> f64 {
    2.0 + 2.0 / (d as f64).sqrt()
}

fn check_dit(x: usize, d: usize) -> Result<()> {
    if x < d {
        Ok(())
    } else {
        Err(Error::DitOutOfRange { dit: x, d })
    }
}

/// `|ψ_{x0 x1}⟩ = X^{x0} Z^{x1} (|0⟩ + |e_0⟩)/N_d` with `N_d = sqrt(2 + 2/sqrt(d))`.
pub fn encode_2d(x0: usize, x1: usize, d: usize) -> Result<PureState> {
    check_dit(x0, d)?;
    check_dit(x1, d)?;
    let e0 = fourier_basis(d)?.vector(0).clone();
    let norm = n_d_squared(d).sqrt();
    let mut amps: Vec<_> = e0.amplitudes().iter().map(|a| a / norm).collect();
    amps[0] += 1.0 / norm;
    let psi00 = PureState::new(amps)?;
    let z = clock_z(d)?.pow(x1 as u32);
    // X^{x0} is a cyclic shift of the amplitudes
    let zpsi = z.apply(psi00.amplitudes())?;
    let shifted = (0..d).map(|q| zpsi[(q + d - x0) % d]).collect();
    PureState::normalized(shifted)
}

/// Which dit Bob is asked for in the 2-dit game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Question {
    /// `x_0`, decoded in the computational basis.
    First,
    /// `x_1`, decoded in the Fourier basis.
    Second,
}

/// Closed-form outcome probabilities of the 2-dit strategy:
///
/// - `First`:  `|⟨p|ψ⟩|²   = |δ_{x0,p} + ω^{x1(p-x0)}/sqrt(d)|² / N_d²`
/// - `Second`: `|⟨e_p|ψ⟩|² = |ω^{-x0 x1} δ_{x1,p} + ω^{-p x0}/sqrt(d)|² / N_d²`
pub fn decode_prob_closed_form(
    x0: usize,
    x1: usize,
    p: usize,
    which: Question,
    d: usize,
) -> Result<f64> {
    for v in [x0, x1, p] {
        check_dit(v, d)?;
    }
    let s = 1.0 / (d as f64).sqrt();
    let (xi, x1i, pi) = (x0 as i64, x1 as i64, p as i64);
    let amp = match which {
        Question::First => {
            let delta = if x0 == p { 1.0 } else { 0.0 };
            root_of_unity(x1i * (pi - xi), d) * s + delta
        }
        Question::Second => {
            let delta = if x1 == p { 1.0 } else { 0.0 };
            root_of_unity(-xi * x1i, d) * delta + root_of_unity(-pi * xi, d) * s
        }
    };
    Ok(amp.norm_sqr() / n_d_squared(d))
}

/// 2→1 strategy: encode with [`encode_2d`], decode `x_0` in the computational
/// basis and `x_1` in the Fourier basis. Success is `(1 + 1/sqrt(d))/2`.
pub fn paper_2d_strategy(d: usize) -> Result<QuantumStrategy> {
    let game = PoracGame::new(2, d)?;
    let encodings = (0..game.string_count())
        .map(|x| {
            let dits = game.dits(x);
            encode_2d(dits[0], dits[1], d)
        })
        .collect::<Result<_>>()?;
    QuantumStrategy::new(
        game,
        encodings,
        vec![computational_basis(d)?, fourier_basis(d)?],
        format!("paper2d(d={d})"),
    )
}

/// Qubit state from a Bloch vector in the `(I + r·σ)/2` convention, via the
/// Γ-normalized representation.
fn qubit_from_unit_bloch(r: [f64; 3]) -> Result<PureState> {
    let op = from_bloch(&BlochVector::from_qubit_convention(r)?)?;
    PureState::from_rank_one(&op.matrix)
}

fn sign(bit: usize) -> f64 {
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

/// 3→1 qubit strategy: string `b0 b1 b2` is encoded with unit Bloch vector
/// `(±1, ±1, ±1)/sqrt(3)` (component `i` positive iff `b_i = 0`) and bit `i` is
/// decoded along axis `i` (σx, σy, σz).
pub fn qubit_3to1_strategy() -> Result<QuantumStrategy> {
    let game = PoracGame::new(3, 2)?;
    let k = 1.0 / 3f64.sqrt();
    let encodings = (0..game.string_count())
        .map(|x| {
            let b = game.dits(x);
            qubit_from_unit_bloch([sign(b[0]) * k, sign(b[1]) * k, sign(b[2]) * k])
        })
        .collect::<Result<_>>()?;
    let decoders = vec![
        qubit_basis([1.0, 0.0, 0.0], "sigma_x")?,
        qubit_basis([0.0, 1.0, 0.0], "sigma_y")?,
        qubit_basis([0.0, 0.0, 1.0], "sigma_z")?,
    ];
    QuantumStrategy::new(game, encodings, decoders, "qubit3to1")
}

/// 2→1 qubit strategy with unit Bloch vectors `(0, ±1, ±1)/sqrt(2)`; bit 0 is
/// decoded along σy and bit 1 along σz.
pub fn qubit_yz_strategy() -> Result<QuantumStrategy> {
    let game = PoracGame::new(2, 2)?;
    let k = std::f64::consts::FRAC_1_SQRT_2;
    let encodings = (0..game.string_count())
        .map(|x| {
            let b = game.dits(x);
            qubit_from_unit_bloch([0.0, sign(b[0]) * k, sign(b[1]) * k])
        })
        .collect::<Result<_>>()?;
    let decoders = vec![
        qubit_basis([0.0, 1.0, 0.0], "sigma_y")?,
        qubit_basis([0.0, 0.0, 1.0], "sigma_z")?,
    ];
    QuantumStrategy::new(game, encodings, decoders, "qubit-yz")
}

/// Deliberately leaky strategy: `x ↦ |x_0 + .. + x_{N-1} mod d⟩`, every question
/// decoded in the computational basis. It broadcasts the all-ones parity.
pub fn naive_parity_strategy(n: usize, d: usize) -> Result<QuantumStrategy> {
    let game = PoracGame::new(n, d)?;
    game.ensure_enumerable()?;
    let encodings = (0..game.string_count())
        .map(|x| PureState::basis_state(d, game.dits(x).iter().sum::<usize>() % d))
        .collect::<Result<_>>()?;
    let decoders = vec![computational_basis(d)?; n];
    QuantumStrategy::new(game, encodings, decoders, format!("naive(N={n},d={d})"))
}

/// Bob's rule for one (message, question) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guess {
    Dit(usize),
    /// Uniformly random output.
    Uniform,
}

/// Classical one-dit message strategy: `encoder[x]` is the message in `0..d`
/// and `decoder[m][y]` Bob's rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalStrategy {
    game: PoracGame,
    encoder: Vec<usize>,
    decoder: Vec<Vec<Guess>>,
    label: String,
}

impl ClassicalStrategy {
    pub fn new(
        game: PoracGame,
        encoder: Vec<usize>,
        decoder: Vec<Vec<Guess>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        game.ensure_enumerable()?;
        let d = game.d();
        if encoder.len() != game.string_count() {
            return Err(Error::DimensionMismatch {
                expected: game.string_count(),
                found: encoder.len(),
            });
        }
        if let Some(&m) = encoder.iter().find(|&&m| m >= d) {
            return Err(Error::DitOutOfRange { dit: m, d });
        }
        if decoder.len() != d || decoder.iter().any(|row| row.len() != game.n()) {
            return Err(Error::InvalidGame("decoder must be a d × N table".into()));
        }
        for row in &decoder {
            for g in row {
                if let Guess::Dit(v) = g {
                    check_dit(*v, d)?;
                }
            }
        }
        Ok(Self {
            game,
            encoder,
            decoder,
            label: label.into(),
        })
    }

    pub fn encoder(&self) -> &[usize] {
        &self.encoder
    }

    pub fn decoder(&self) -> &[Vec<Guess>] {
        &self.decoder
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Exact average success probability.
    pub fn success_exact(&self) -> Ratio<u64> {
        let g = self.game;
        let d = g.d() as u64;
        // numerator over d · d^N · N: a correct deterministic guess counts d, a uniform guess 1
        let mut num = 0u64;
        for (x, &m) in self.encoder.iter().enumerate() {
            for y in 0..g.n() {
                num += match self.decoder[m][y] {
                    Guess::Dit(v) if v == g.dit(x, y) => d,
                    Guess::Dit(_) => 0,
                    Guess::Uniform => 1,
                };
            }
        }
        Ratio::new(num, d * g.string_count() as u64 * g.n() as u64)
    }
}

impl Protocol for ClassicalStrategy {
    fn game(&self) -> PoracGame {
        self.game
    }

    fn response(&self, x: usize, y: usize, b: usize) -> f64 {
        match self.decoder[self.encoder[x]][y] {
            Guess::Dit(v) => f64::from(u8::from(v == b)),
            Guess::Uniform => 1.0 / self.game.d() as f64,
        }
    }
}

/// Alice sends `x_0`; Bob answers it exactly for `y = 0` and guesses uniformly
/// otherwise. Success `1/N + (N-1)/(N d) = (N + d - 1)/(d N)`.
pub fn classical_po_strategy(n: usize, d: usize) -> Result<(ClassicalStrategy, Ratio<u64>)> {
    let game = PoracGame::new(n, d)?;
    game.ensure_enumerable()?;
    let encoder = (0..game.string_count()).map(|x| game.dit(x, 0)).collect();
    let decoder = (0..d)
        .map(|m| {
            (0..n)
                .map(|y| {
                    if y == 0 {
                        Guess::Dit(m)
                    } else {
                        Guess::Uniform
                    }
                })
                .collect()
        })
        .collect();
    let strategy = ClassicalStrategy::new(game, encoder, decoder, "send-first-dit")?;
    let value = strategy.success_exact();
    debug_assert_eq!(value, noncontextual_bound(n, d));
    Ok((strategy, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::born_probability;
    use crate::linalg::projector;
    use crate::porac::{ratio_to_f64, success_probability};
    use approx::assert_abs_diff_eq;

    fn target(d: usize) -> f64 {
        0.5 * (1.0 + 1.0 / (d as f64).sqrt())
    }

    #[test]
    fn encode_examples() {
        let z0 = PureState::basis_state(2, 0).unwrap();
        let psi = encode_2d(0, 0, 2).unwrap();
        assert_abs_diff_eq!(
            born_probability(&projector(&psi), &z0).unwrap(),
            target(2),
            epsilon = 1e-12
        );

        let psi = encode_2d(1, 0, 2).unwrap();
        let z1 = PureState::basis_state(2, 1).unwrap();
        assert_abs_diff_eq!(psi.probability_of(&z1).unwrap(), target(2), epsilon = 1e-12);

        let psi = encode_2d(2, 1, 3).unwrap();
        let e1 = fourier_basis(3).unwrap().vector(1).clone();
        assert_abs_diff_eq!(psi.probability_of(&e1).unwrap(), target(3), epsilon = 1e-12);

        assert!(matches!(
            encode_2d(3, 0, 3),
            Err(Error::DitOutOfRange { dit: 3, d: 3 })
        ));
    }

    #[test]
    fn encoding_matches_operator_definition() {
        // X^{x0} Z^{x1} |ψ_00⟩ with X as an explicit matrix
        use crate::bases::shift_x;
        for d in [2, 3, 4] {
            let psi00 = encode_2d(0, 0, d).unwrap();
            for x0 in 0..d {
                for x1 in 0..d {
                    let u =
                        &shift_x(d).unwrap().pow(x0 as u32) * &clock_z(d).unwrap().pow(x1 as u32);
                    let expected = psi00.evolve(&u).unwrap();
                    let got = encode_2d(x0, x1, d).unwrap();
                    assert_abs_diff_eq!(inner(&expected, &got).unwrap().re, 1.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        for d in 2..=7 {
            for x in 0..d {
                assert_abs_diff_eq!(
                    decode_prob_closed_form(x, (x + 1) % d, x, Question::First, d).unwrap(),
                    target(d),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    decode_prob_closed_form((x + 2) % d, x, x, Question::Second, d).unwrap(),
                    target(d),
                    epsilon = 1e-12
                );
            }
        }
        let p = decode_prob_closed_form(0, 1, 1, Question::First, 2).unwrap();
        assert_abs_diff_eq!(p, 0.5 / (2.0 + 2f64.sqrt()), epsilon = 1e-15);
        assert_abs_diff_eq!(p, 0.146447, epsilon = 1e-6);
        assert_abs_diff_eq!(
            p + decode_prob_closed_form(0, 1, 0, Question::First, 2).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn closed_form_matches_simulation() {
        for d in 2..=7 {
            let comp = computational_basis(d).unwrap();
            let four = fourier_basis(d).unwrap();
            for x0 in 0..d {
                for x1 in 0..d {
                    let psi = encode_2d(x0, x1, d).unwrap();
                    let (mut s0, mut s1) = (0.0, 0.0);
                    for p in 0..d {
                        let a = decode_prob_closed_form(x0, x1, p, Question::First, d).unwrap();
                        let b = decode_prob_closed_form(x0, x1, p, Question::Second, d).unwrap();
                        assert_abs_diff_eq!(
                            a,
                            psi.probability_of(comp.vector(p)).unwrap(),
                            epsilon = 1e-12
                        );
                        assert_abs_diff_eq!(
                            b,
                            psi.probability_of(four.vector(p)).unwrap(),
                            epsilon = 1e-12
                        );
                        s0 += a;
                        s1 += b;
                    }
                    assert_abs_diff_eq!(s0, 1.0, epsilon = 1e-12);
                    assert_abs_diff_eq!(s1, 1.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn paper_strategy_success() {
        assert_abs_diff_eq!(
            success_probability(&paper_2d_strategy(2).unwrap()).unwrap(),
            0.8535534,
            epsilon = 1e-7
        );
        assert_abs_diff_eq!(
            success_probability(&paper_2d_strategy(3).unwrap()).unwrap(),
            0.788675,
            epsilon = 1e-6
        );
        for d in 2..=7 {
            let s = success_probability(&paper_2d_strategy(d).unwrap()).unwrap();
            assert_abs_diff_eq!(s, target(d), epsilon = 1e-12);
            assert!(s > ratio_to_f64(noncontextual_bound(2, d)));
            assert!(s <= crate::porac::quantum_upper_bound(2, d) + 1e-12);
        }
        assert_abs_diff_eq!(
            success_probability(&paper_2d_strategy(4).unwrap()).unwrap(),
            0.75,
            epsilon = 1e-12
        );
    }

    #[test]
    fn qubit_strategies() {
        let s = success_probability(&qubit_3to1_strategy().unwrap()).unwrap();
        assert_abs_diff_eq!(s, 0.788675, epsilon = 1e-6);
        assert_abs_diff_eq!(s, target(3), epsilon = 1e-12);
        assert!(s > 2.0 / 3.0);

        let s = success_probability(&qubit_yz_strategy().unwrap()).unwrap();
        assert_abs_diff_eq!(s, target(2), epsilon = 1e-12);
    }

    #[test]
    fn fixed_state_guessing_gives_one_over_d() {
        for (n, d) in [(2, 3), (3, 2), (2, 5)] {
            let game = PoracGame::new(n, d).unwrap();
            let psi =
                PureState::normalized((0..d).map(|k| crate::linalg::c(1.0, k as f64)).collect())
                    .unwrap();
            let strat = QuantumStrategy::new(
                game,
                vec![psi; game.string_count()],
                vec![fourier_basis(d).unwrap(); n],
                "fixed",
            )
            .unwrap();
            assert_abs_diff_eq!(
                success_probability(&strat).unwrap(),
                1.0 / d as f64,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn strategy_validation() {
        let game = PoracGame::new(2, 2).unwrap();
        let z = PureState::basis_state(2, 0).unwrap();
        assert!(QuantumStrategy::new(
            game,
            vec![z.clone(); 3],
            vec![computational_basis(2).unwrap(); 2],
            "x"
        )
        .is_err());
        assert!(QuantumStrategy::new(
            game,
            vec![z; 4],
            vec![computational_basis(3).unwrap(); 2],
            "x"
        )
        .is_err());
    }

    #[test]
    fn classical_po_values() {
        assert_eq!(classical_po_strategy(2, 2).unwrap().1, Ratio::new(3, 4));
        assert_eq!(classical_po_strategy(3, 2).unwrap().1, Ratio::new(2, 3));
        assert_eq!(classical_po_strategy(2, 5).unwrap().1, Ratio::new(3, 5));
        for n in 1..=4 {
            for d in 2..=5 {
                let (strategy, value) = classical_po_strategy(n, d).unwrap();
                assert_eq!(value, noncontextual_bound(n, d));
                assert_abs_diff_eq!(
                    success_probability(&strategy).unwrap(),
                    ratio_to_f64(value),
                    epsilon = 1e-12
                );
            }
        }
    }
}
