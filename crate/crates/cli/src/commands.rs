use fur_porac::bases::{computational_basis, mub_family, Basis};
use fur_porac::fur::{fur_bound_general, fur_bound_mub, tight_fur_two, OutcomeSet};
use fur_porac::oracle::{
    classical_bruteforce_rac, haar_basis, lemma3_sum, max_certainty_search, max_porac_search,
    phi_bound_check, stream_rng, SearchConfig,
};
use fur_porac::porac::{
    naive_parity_strategy, noncontextual_bound, paper_2d_strategy,
    parity_oblivious_measurement_check, parity_oblivious_state_check, parity_set,
    quantum_upper_bound, qubit_3to1_strategy, qubit_yz_strategy, ratio_to_f64, success_probability,
    PoracGame, QuantumStrategy, Violation,
};
use fur_porac::{Error, Result};

use crate::report::{Provenance, RunReport};
use crate::{
    BasisChoice, Cli, Command, GameArgs, OracleArgs, OracleTask, StrategyArgs, StrategyKind,
    VerifyArgs, ANALYTIC_TOL, SEARCH_TOL,
};

/// Stream reserved for drawing random outcome vectors and bases, disjoint
/// from the per-chunk streams of the searches.
const INPUT_STREAM: u64 = u64::MAX;

/// Executes the parsed command. Errors are usage-level problems (invalid or
/// unsupported parameters, size limits); failed checks are reported through
/// [`RunReport::pass`].
pub fn run(cli: &Cli) -> Result<RunReport> {
    match &cli.command {
        Command::Bounds(a) => bounds(a),
        Command::Simulate(a) => simulate(a),
        Command::VerifyPo(a) => verify_po(a),
        Command::Oracle(a) => oracle(a),
    }
}

fn game_params(r: &mut RunReport, g: &GameArgs) {
    r.param("n", g.n).param("d", g.d);
}

fn bounds(a: &GameArgs) -> Result<RunReport> {
    let game = PoracGame::new(a.n, a.d)?;
    let tol = a.tol.unwrap_or(ANALYTIC_TOL);
    let mut r = RunReport::new("bounds", tol);
    game_params(&mut r, a);
    let nc = noncontextual_bound(game.n(), game.d());
    let qu = quantum_upper_bound(game.n(), game.d());
    r.push_exact("noncontextual", nc, Provenance::Analytic)
        .push(
            "fur_mub_bound",
            fur_bound_mub(game.n(), game.d()),
            Provenance::Analytic,
        )
        .push("quantum_upper", qu, Provenance::Analytic)
        .require(qu >= ratio_to_f64(nc) - tol);
    if game.n() == 2 {
        let achieved = success_probability(&paper_2d_strategy(game.d())?)?;
        r.push("achieved", achieved, Provenance::Simulated)
            .require(achieved <= qu + tol);
    }
    Ok(r)
}

fn build_strategy(kind: StrategyKind, n: usize, d: usize) -> Result<(QuantumStrategy, f64)> {
    let unsupported = |needs: &str| {
        Err(Error::Unsupported(format!(
            "strategy {} needs {needs}, got N={n}, d={d}",
            strategy_name(kind)
        )))
    };
    let two_outcome = |d: usize| 0.5 * (1.0 + 1.0 / (d as f64).sqrt());
    match kind {
        StrategyKind::Paper2d if n == 2 => Ok((paper_2d_strategy(d)?, two_outcome(d))),
        StrategyKind::Paper2d => unsupported("N = 2"),
        StrategyKind::Qubit3to1 if (n, d) == (3, 2) => Ok((qubit_3to1_strategy()?, two_outcome(3))),
        StrategyKind::Qubit3to1 => unsupported("N = 3, d = 2"),
        StrategyKind::QubitYz if (n, d) == (2, 2) => Ok((qubit_yz_strategy()?, two_outcome(2))),
        StrategyKind::QubitYz => unsupported("N = 2, d = 2"),
        StrategyKind::Naive => {
            let expected = if n == 1 { 1.0 } else { 1.0 / d as f64 };
            Ok((naive_parity_strategy(n, d)?, expected))
        }
    }
}

fn strategy_name(kind: StrategyKind) -> &'static str {
    match kind {
        StrategyKind::Paper2d => "paper2d",
        StrategyKind::Qubit3to1 => "qubit3to1",
        StrategyKind::QubitYz => "qubit-yz",
        StrategyKind::Naive => "naive",
    }
}

fn simulate(a: &StrategyArgs) -> Result<RunReport> {
    let g = &a.game;
    let (strategy, expected) = build_strategy(a.strategy, g.n, g.d)?;
    let tol = g.tol.unwrap_or(ANALYTIC_TOL);
    let mut r = RunReport::new("simulate", tol);
    game_params(&mut r, g);
    r.param("strategy", strategy_name(a.strategy));
    let success = success_probability(&strategy)?;
    let nc = noncontextual_bound(g.n, g.d);
    r.push("success", success, Provenance::Simulated)
        .push("expected", expected, Provenance::Analytic)
        .push_exact("noncontextual", nc, Provenance::Analytic)
        .require((success - expected).abs() <= tol)
        .require(success > ratio_to_f64(nc));
    Ok(r)
}

fn describe(kind: &str, v: &Violation) -> String {
    let s: Vec<String> = v.s.iter().map(ToString::to_string).collect();
    let mut out = format!("{kind} witness: s=({})", s.join(","));
    if let (Some(y), Some(b)) = (v.y, v.b) {
        out.push_str(&format!(" y={y} b={b}"));
    }
    out.push_str(&format!(
        " l={} l'={} violation={:e}",
        v.l, v.l_prime, v.value
    ));
    out
}

fn verify_po(a: &VerifyArgs) -> Result<RunReport> {
    let g = &a.strategy.game;
    let (strategy, _) = build_strategy(a.strategy.strategy, g.n, g.d)?;
    let tol = g.tol.unwrap_or(ANALYTIC_TOL);
    let parity = parity_set(PoracGame::new(g.n, g.d)?, a.convention)?;
    let m = parity_oblivious_measurement_check(&strategy, &parity, tol)?;
    let s = parity_oblivious_state_check(&strategy, &parity, tol)?;
    let mut r = RunReport::new("verify-po", tol);
    game_params(&mut r, g);
    r.param("strategy", strategy_name(a.strategy.strategy))
        .param("convention", a.convention)
        .push("parity_vectors", parity.len() as f64, Provenance::Analytic)
        .push(
            "measurement_violation",
            m.max_violation,
            Provenance::Simulated,
        )
        .push("state_violation", s.max_violation, Provenance::Simulated)
        .require(m.passed)
        .require(s.passed);
    if !m.passed {
        r.note(describe(
            "measurement",
            m.witness.as_ref().expect("failure has a witness"),
        ));
    }
    if !s.passed {
        r.note(describe(
            "state",
            s.witness.as_ref().expect("failure has a witness"),
        ));
    }
    Ok(r)
}

fn input_bases(choice: BasisChoice, n: usize, d: usize, seed: u64) -> Result<Vec<Basis>> {
    match choice {
        BasisChoice::Mub if n == 1 => Ok(vec![computational_basis(d)?]),
        BasisChoice::Mub => Ok(mub_family(d, n)?.into_bases()),
        BasisChoice::Random => {
            let mut rng = stream_rng(seed, INPUT_STREAM);
            (0..n).map(|_| haar_basis(d, &mut rng)).collect()
        }
    }
}

fn bases_name(choice: BasisChoice) -> &'static str {
    match choice {
        BasisChoice::Mub => "mub",
        BasisChoice::Random => "random",
    }
}

fn oracle(a: &OracleArgs) -> Result<RunReport> {
    let search = matches!(a.task, OracleTask::Certainty | OracleTask::Porac);
    let tol = a
        .tol
        .unwrap_or(if search { SEARCH_TOL } else { ANALYTIC_TOL });
    let mut r = RunReport::new("oracle", tol);
    r.param("n", a.n).param("d", a.d);
    let cfg = SearchConfig::new(a.samples, a.seed, !a.no_refine, tol)?;
    if search {
        r.param("seed", a.seed)
            .param("samples", a.samples)
            .param("refine", !a.no_refine);
    }
    match a.task {
        OracleTask::Certainty => {
            r.param("task", "certainty")
                .param("bases", bases_name(a.bases));
            let bases = input_bases(a.bases, a.n, a.d, a.seed)?;
            let outcomes = bases.iter().map(|b| b.vector(0).clone()).collect();
            let set = OutcomeSet::uniform(outcomes)?;
            let report = fur_bound_general(&set)?;
            let (value, _) = max_certainty_search(&set, &cfg)?;
            r.push("oracle_max", value, Provenance::Oracle)
                .push("general_bound", report.bound, Provenance::Analytic)
                .push("gap", report.bound - value, Provenance::Oracle)
                .require(value <= report.bound + tol);
            if a.n == 2 {
                let tight = tight_fur_two(&set.outcomes()[0], &set.outcomes()[1])?.bound;
                r.push("tight_two_bound", tight, Provenance::Analytic)
                    .require(value <= tight + tol);
            }
            if !report.maximizer_physical {
                r.note("the Bloch point attaining the general bound is not a state");
            }
        }
        OracleTask::Porac => {
            r.param("task", "porac");
            let game = PoracGame::new(a.n, a.d)?;
            let found = max_porac_search(game, &cfg)?;
            let bound = quantum_upper_bound(a.n, a.d);
            r.push("oracle_max", found.value, Provenance::Oracle)
                .push("quantum_upper", bound, Provenance::Analytic)
                .push_exact(
                    "noncontextual",
                    noncontextual_bound(a.n, a.d),
                    Provenance::Analytic,
                )
                .push("gap", bound - found.value, Provenance::Oracle)
                .require(found.value <= bound + tol);
        }
        OracleTask::Classical => {
            r.param("task", "classical");
            let (best, _) = classical_bruteforce_rac(a.n, a.d)?;
            let po = noncontextual_bound(a.n, a.d);
            r.push_exact("unconstrained_optimum", best, Provenance::Oracle)
                .push_exact("po_bound", po, Provenance::Analytic)
                .require(ratio_to_f64(best) >= ratio_to_f64(po) - tol)
                .note("unconstrained: deterministic strategies without the parity-obliviousness constraint");
        }
        OracleTask::Lemma3 => {
            r.param("task", "lemma3")
                .param("bases", bases_name(a.bases));
            if a.bases == BasisChoice::Random {
                r.param("seed", a.seed);
            }
            let value = lemma3_sum(&input_bases(a.bases, a.n, a.d, a.seed)?)?;
            let d = a.d as f64;
            let formula = (d - 1.0) / (2.0 * d) * a.n as f64 * d.powi(a.n as i32);
            r.push("lemma3_sum", value, Provenance::Oracle)
                .push("formula", formula, Provenance::Analytic)
                .require((value - formula).abs() <= tol);
        }
        OracleTask::Phi => {
            r.param("task", "phi").param("bases", bases_name(a.bases));
            if a.bases == BasisChoice::Random {
                r.param("seed", a.seed);
            }
            let p = phi_bound_check(&input_bases(a.bases, a.n, a.d, a.seed)?, tol)?;
            r.push("phi", p.phi, Provenance::Oracle)
                .push("phi_bound", p.bound, Provenance::Analytic)
                .push("implied_success", p.implied_success, Provenance::Oracle)
                .push("quantum_upper", p.quantum_upper_bound, Provenance::Analytic)
                .push(
                    "saturated",
                    f64::from(u8::from(p.saturated)),
                    Provenance::Oracle,
                )
                .require(p.holds);
            if p.saturated {
                r.note("saturated");
            }
        }
    }
    Ok(r)
}
