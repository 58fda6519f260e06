use sbpcpr::harness::{run_advection, ExperimentConfig};
use sbpcpr::time::{integrate, rk4_step, IntegrationConfig};

fn decay_error(steps: usize) -> f64 {
    let config = IntegrationConfig::new(1.0, steps);
    let out = integrate(|u: &f64| Ok(-*u), 1.0, &config, |u| (*u, 0.0)).unwrap();
    (out.state - (-1.0f64).exp()).abs()
}

#[test]
fn fourth_order_convergence() {
    for steps in [10, 20, 40] {
        let ratio = decay_error(steps) / decay_error(2 * steps);
        assert!((14.0..=18.0).contains(&ratio), "steps {steps}: ratio {ratio}");
    }
}

#[test]
fn vector_state_matches_scalar() {
    let dt = 0.05;
    let mut rhs = |u: &Vec<f64>| Ok(u.iter().map(|v| -2.0 * v).collect::<Vec<_>>());
    let v = rk4_step(&mut rhs, &vec![1.0, 3.0], dt).unwrap();
    let s = rk4_step(&mut |u: &f64| Ok(-2.0 * u), &1.0, dt).unwrap();
    assert_eq!(v, vec![s, 3.0 * s]);
}

#[test]
fn samples_are_strictly_increasing() {
    let config = IntegrationConfig::new(2.0, 95).with_sample_every(7);
    let out = integrate(|u: &f64| Ok(-*u), 1.0, &config, |u| (*u, 0.0)).unwrap();
    let ts: Vec<f64> = out.series.samples.iter().map(|s| s.t).collect();
    assert!(ts.windows(2).all(|w| w[1] > w[0]));
    assert!((ts.last().unwrap() - 2.0).abs() < 1e-14);
    assert_eq!(ts.len(), 1 + 95 / 7 + 1);
}

#[test]
fn unstable_advection_blows_up_early() {
    let run = run_advection(&ExperimentConfig::advection_fig2('b').unwrap()).unwrap();
    let t = run.series().blowup_time.expect("blow-up");
    assert!(t < 4.0);
    assert!(run.outcome.state.iter().all(|v| v.is_finite()));
}

#[test]
fn runs_are_deterministic() {
    let mut cfg = ExperimentConfig::advection_fig2('a').unwrap();
    cfg.steps = 400;
    cfg.t_final = 0.16;
    let a = run_advection(&cfg).unwrap();
    let b = run_advection(&cfg).unwrap();
    assert_eq!(a.series(), b.series());
}
