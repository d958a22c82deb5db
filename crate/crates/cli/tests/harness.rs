use approx::assert_relative_eq;
use otto_harness::config::{parse_config, ScenarioConfig, SweepParam};
use otto_harness::figures::{emit_figures, FIG3_FILE};
use otto_harness::output::{report_csv, to_json};
use otto_harness::sweep::point_config;
use otto_harness::{run_scenario, run_sweep};
use quantum_otto::internal::temperature_for_b_population;
use quantum_otto::LevelSystem;

const BASE: &str = r#"
[gas]
T1 = 20.0
T3 = 1.0
R = 1.3333333333333333
Cv = 1.0
N = 1.0

[levels]
eps_a = 11.0
eps_b = 1.0
eps_c = 0.0
"#;

/// Sign of `(1 - eta0) w_l - eta0 q_m`, computed from scratch.
fn oracle_gain_sign(t1: f64, t3: f64, r: f64, eps: [f64; 3]) -> f64 {
    let pops = |t: f64| {
        let w = eps.map(|e| (-e / t).exp());
        let z: f64 = w.iter().sum();
        w.map(|x| x / z)
    };
    let (hot, p_b3) = (pops(t1), pops(t3)[1]);
    let eta0 = 1.0 - 1.0 / r;
    let w_l = (eps[0] - eps[1]) * (hot[0] - p_b3);
    let q_m = (eps[1] - eps[2]) * (hot[0] + hot[1] - 2.0 * p_b3);
    (1.0 - eta0) * w_l - eta0 * q_m
}

#[test]
fn sweep_flip_brackets_bisected_boundary() {
    let cfg = parse_config(&format!(
        "{BASE}\n[sweep]\nT3 = {{ min = 0.2, max = 5.0, steps = 97 }}\n"
    ))
    .unwrap();
    let table = run_sweep(&cfg).unwrap();
    let flags: Vec<bool> = table
        .rows
        .iter()
        .map(|r| r.report.as_ref().unwrap().flags.enhanced)
        .collect();
    let flips: Vec<usize> = (1..flags.len())
        .filter(|&i| flags[i] != flags[i - 1])
        .collect();
    assert!(!flips.is_empty(), "no regime change across the sweep");

    let r = 4.0 / 3.0;
    for i in flips {
        let (mut lo, mut hi) = (table.rows[i - 1].params[0], table.rows[i].params[0]);
        let s_lo = oracle_gain_sign(20.0, lo, r, [11.0, 1.0, 0.0]).signum();
        assert_ne!(
            s_lo,
            oracle_gain_sign(20.0, hi, r, [11.0, 1.0, 0.0]).signum()
        );
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if oracle_gain_sign(20.0, mid, r, [11.0, 1.0, 0.0]).signum() == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!(table.rows[i - 1].params[0] <= lo && hi <= table.rows[i].params[0]);
    }
}

#[test]
fn single_point_sweep_matches_run() {
    let cfg = parse_config(&format!(
        "{BASE}\n[sweep]\nT3 = {{ min = 0.7, max = 0.7, steps = 1 }}\n"
    ))
    .unwrap();
    let table = run_sweep(&cfg).unwrap();
    assert_eq!(table.rows.len(), 1);
    let direct = run_scenario(&cfg.with_param(SweepParam::T3, 0.7)).unwrap();
    assert_eq!(table.rows[0].report.as_ref().unwrap(), &direct);
}

#[test]
fn argmax_row_reproduces_run() {
    let cfg = parse_config(&format!(
        "{BASE}\n[sweep]\nT3 = {{ min = 0.2, max = 3.0, steps = 15 }}\neps_b = {{ min = 0.5, max = 8.0, steps = 16 }}\n"
    ))
    .unwrap();
    let table = run_sweep(&cfg).unwrap();
    let best = table.argmax.clone().unwrap();
    let report = run_scenario(&point_config(&cfg, &best.params)).unwrap();
    assert_eq!(report.gain(), best.gain);
    for row in table.rows.iter().filter_map(|r| r.report.as_ref()) {
        assert!(row.gain() <= best.gain);
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let cfg = parse_config(BASE).unwrap();
    let a = run_scenario(&cfg).unwrap();
    let b = run_scenario(&cfg).unwrap();
    assert_eq!(to_json(&a), to_json(&b));
    assert_eq!(report_csv(&a), report_csv(&b));
    let sweep_cfg = parse_config(&format!(
        "{BASE}\n[sweep]\neps_b = {{ min = 0.5, max = 8.0, steps = 40 }}\n"
    ))
    .unwrap();
    assert_eq!(
        to_json(&run_sweep(&sweep_cfg).unwrap()),
        to_json(&run_sweep(&sweep_cfg).unwrap())
    );
}

#[test]
fn classical_worked_example() {
    let cfg = parse_config(
        "[gas]\nT1 = 600.0\nT3 = 300.0\nR = 1.5\nCv = 1.0\n[levels]\neps_a = 2.0\neps_b = 1.0\neps_c = 0.0\n",
    )
    .unwrap();
    let c = run_scenario(&cfg).unwrap().classical;
    assert_relative_eq!(c.t2, 400.0, max_relative = 1e-14);
    assert_relative_eq!(c.t4, 450.0, max_relative = 1e-14);
    assert_relative_eq!(c.wg, 200.0, max_relative = 1e-14);
    assert_relative_eq!(c.ww, 150.0, max_relative = 1e-14);
    assert_relative_eq!(c.q_in, 150.0, max_relative = 1e-14);
    assert_relative_eq!(c.q_out, 100.0, max_relative = 1e-14);
    assert_relative_eq!(c.eta0, 1.0 / 3.0, max_relative = 1e-14);
}

/// eta0 = 1/4, levels (11, 1, 0), T1 far above every gap and p_b at T3 equal to 0.1.
fn reference_regime() -> ScenarioConfig {
    let levels = LevelSystem::new(11.0, 1.0, 0.0).unwrap();
    let t3 = temperature_for_b_population(&levels, 0.1).unwrap();
    let t1 = 1e7 * levels.gap_ac();
    parse_config(&format!(
        "[gas]\nT1 = {t1:e}\nT3 = {t3:e}\nR = {}\nCv = 1.0\n[levels]\neps_a = 11.0\neps_b = 1.0\neps_c = 0.0\n",
        4.0 / 3.0
    ))
    .unwrap()
}

#[test]
fn reference_regime_is_enhanced() {
    let r = run_scenario(&reference_regime()).unwrap();
    let a = r.afterburner;
    assert_relative_eq!(a.p_b3, 0.1, epsilon = 1e-12);
    assert!(a.enhanced && r.flags.inversion && r.flags.second_law_ok);
    assert_relative_eq!(a.enhancement_lhs.unwrap(), 30.0, epsilon = 1e-9);
    assert_relative_eq!(a.enhancement_rhs.unwrap(), 2.0, epsilon = 1e-5);
}

#[test]
fn gain_shrinks_as_cold_b_population_rises() {
    let base = reference_regime();
    let levels = LevelSystem::new(11.0, 1.0, 0.0).unwrap();
    let gains: Vec<f64> = [0.05, 0.1, 0.2, 0.3, 0.33]
        .iter()
        .map(|&p| {
            let t3 = temperature_for_b_population(&levels, p).unwrap();
            run_scenario(&base.with_param(SweepParam::T3, t3))
                .unwrap()
                .gain()
        })
        .collect();
    assert!(gains.iter().all(|&g| g > 0.0));
    assert!(gains.windows(2).all(|w| w[1] < w[0]), "{gains:?}");
}

#[test]
fn nearly_equal_reservoirs_give_no_inversion() {
    let t3 = 1e4;
    let cfg = parse_config(&format!(
        "[gas]\nT1 = {:e}\nT3 = {t3:e}\nR = {:e}\nCv = 1e9\n[levels]\neps_a = 11.0\neps_b = 1.0\neps_c = 0.0\n",
        t3 * (1.0 + 1e-9),
        1.0 + 1e-10
    ))
    .unwrap();
    let r = run_scenario(&cfg).unwrap();
    assert!(!r.flags.inversion && !r.flags.enhanced);
    assert!((r.afterburner.eta_qo - r.classical.eta0).abs() < 1e-6);
}

#[test]
fn fig3_settles_on_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    emit_figures(&reference_regime(), dir.path()).unwrap();
    let text = std::fs::read_to_string(dir.path().join(FIG3_FILE)).unwrap();
    assert!(text.ends_with('\n'));
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows[0][0], 0.0);
    for x in &rows[0][1..] {
        assert_relative_eq!(*x, 1.0 / 3.0, epsilon = 1e-6);
    }
    let last = rows.last().unwrap();
    for (x, y) in last[1..].iter().zip([0.1, 0.1, 0.8]) {
        assert!((x - y).abs() <= 1e-10, "{last:?}");
    }
}
