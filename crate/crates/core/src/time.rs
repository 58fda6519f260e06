//! Classical fourth-order Runge-Kutta time stepping with diagnostics sampling
//! and blow-up detection.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Vector-space operations needed by the Runge-Kutta update.
pub trait State: Clone {
    /// `self += a * x`
    fn axpy(&mut self, a: f64, x: &Self);
    /// Largest magnitude; NaN if any entry is NaN.
    fn max_abs(&self) -> f64;
}

impl State for f64 {
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }

    fn max_abs(&self) -> f64 {
        self.abs()
    }
}

impl State for Vec<f64> {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x) {
            *s += a * v;
        }
    }

    fn max_abs(&self) -> f64 {
        max_abs_of(self.iter())
    }
}

impl State for DMatrix<f64> {
    fn axpy(&mut self, a: f64, x: &Self) {
        self.zip_apply(x, |s, v| *s += a * v);
    }

    fn max_abs(&self) -> f64 {
        max_abs_of(self.iter())
    }
}

fn max_abs_of<'a>(values: impl Iterator<Item = &'a f64>) -> f64 {
    let mut m = 0.0_f64;
    for v in values {
        if v.is_nan() {
            return f64::NAN;
        }
        m = m.max(v.abs());
    }
    m
}

/// `u + dt/6 (k1 + 2 k2 + 2 k3 + k4)`
pub fn rk4_step<S, F>(rhs: &mut F, u: &S, dt: f64) -> Result<S>
where
    S: State,
    F: FnMut(&S) -> Result<S>,
{
    let k1 = rhs(u)?;
    let mut stage = u.clone();
    stage.axpy(0.5 * dt, &k1);
    let k2 = rhs(&stage)?;
    stage = u.clone();
    stage.axpy(0.5 * dt, &k2);
    let k3 = rhs(&stage)?;
    stage = u.clone();
    stage.axpy(dt, &k3);
    let k4 = rhs(&stage)?;

    let mut next = u.clone();
    next.axpy(dt / 6.0, &k1);
    next.axpy(dt / 3.0, &k2);
    next.axpy(dt / 3.0, &k3);
    next.axpy(dt / 6.0, &k4);
    Ok(next)
}

pub const DEFAULT_BLOWUP_THRESHOLD: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub t_final: f64,
    pub steps: usize,
    pub sample_every: usize,
    pub blowup_threshold: f64,
}

impl IntegrationConfig {
    pub fn new(t_final: f64, steps: usize) -> Self {
        IntegrationConfig {
            t_final,
            steps,
            sample_every: 10,
            blowup_threshold: DEFAULT_BLOWUP_THRESHOLD,
        }
    }

    pub fn with_sample_every(mut self, sample_every: usize) -> Self {
        self.sample_every = sample_every;
        self
    }

    pub fn dt(&self) -> f64 {
        self.t_final / self.steps as f64
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidConfig(format!("t_final must be positive, got {}", self.t_final)));
        }
        if self.steps == 0 {
            return Err(Error::InvalidConfig("steps must be at least 1".into()));
        }
        if self.sample_every == 0 {
            return Err(Error::InvalidConfig("sample_every must be at least 1".into()));
        }
        if !(self.blowup_threshold > 0.0) {
            return Err(Error::InvalidConfig("blow-up threshold must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub momentum: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagnosticsSeries {
    pub samples: Vec<Sample>,
    pub blowup_time: Option<f64>,
}

impl DiagnosticsSeries {
    pub fn blew_up(&self) -> bool {
        self.blowup_time.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct IntegrationOutcome<S> {
    /// Last state that passed the blow-up check.
    pub state: S,
    /// Time of `state`.
    pub t: f64,
    pub steps_taken: usize,
    pub series: DiagnosticsSeries,
}

impl<S> IntegrationOutcome<S> {
    pub fn blew_up(&self) -> bool {
        self.series.blew_up()
    }
}

/// Advances `u0` by `config.steps` RK4 steps.
///
/// `diagnostics` returns `(momentum, energy)` and is sampled at `t = 0`, every
/// `sample_every` steps, and after the final step. Integration stops early when
/// a state becomes non-finite or exceeds the blow-up threshold; the time of the
/// offending step is recorded in the series.
pub fn integrate<S, F, G>(mut rhs: F, u0: S, config: &IntegrationConfig, mut diagnostics: G) -> Result<IntegrationOutcome<S>>
where
    S: State,
    F: FnMut(&S) -> Result<S>,
    G: FnMut(&S) -> (f64, f64),
{
    config.validate()?;
    let dt = config.dt();
    let mut series = DiagnosticsSeries::default();
    let mut record = |t: f64, u: &S, series: &mut DiagnosticsSeries| {
        let (momentum, energy) = diagnostics(u);
        series.samples.push(Sample { t, momentum, energy });
    };

    let mut u = u0;
    record(0.0, &u, &mut series);
    let mut t = 0.0;
    for step in 1..=config.steps {
        let t_next = step as f64 * dt;
        let next = match rk4_step(&mut rhs, &u, dt) {
            Ok(next) => next,
            Err(Error::NonFinite) => {
                series.blowup_time = Some(t_next);
                return Ok(IntegrationOutcome { state: u, t, steps_taken: step - 1, series });
            }
            Err(e) => return Err(e),
        };
        let size = next.max_abs();
        if !(size <= config.blowup_threshold) {
            series.blowup_time = Some(t_next);
            return Ok(IntegrationOutcome { state: u, t, steps_taken: step - 1, series });
        }
        u = next;
        t = t_next;
        if step % config.sample_every == 0 || step == config.steps {
            record(t, &u, &mut series);
        }
    }
    Ok(IntegrationOutcome {
        state: u,
        t,
        steps_taken: config.steps,
        series,
    })
}
