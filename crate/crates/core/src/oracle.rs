//! Deterministic grid quadrature over the simplex, used in tests as an
//! independent check on both samplers.
//!
//! A midpoint rule on a uniform barycentric grid integrates
//! `functional * density` and `density` separately; the ratio
//! self-normalizes, cancelling the quadrature bias to first order. Only
//! meant for small concentrations; production paths use analytic moments
//! or the direct sampler.

use crate::error::{Error, Result};
use crate::posterior::{DirichletParams, SimplexPoint};

/// Largest concentration sum the grid can resolve.
pub const MAX_CONCENTRATION_SUM: f64 = 200.0;

/// Resolution bounds keeping the grid both meaningful and affordable
/// (the point count grows with the cube of the resolution).
pub const MIN_RESOLUTION: u32 = 20;
pub const MAX_RESOLUTION: u32 = 512;

/// A quadrature request: points per simplex dimension plus the target
/// Dirichlet.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub resolution: u32,
    pub params: DirichletParams,
}

/// The posterior functionals the oracle can integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    /// Added value dP(A,B).
    DeltaPAb,
    /// Marginal P(A=1).
    ProbA,
    /// Conditional P(A=1|B=1).
    ProbAGivenB,
    /// Indicator of dP(A,B) < 0; its expectation is the lower tail mass.
    IndicatorDeltaPNegative,
}

impl Functional {
    fn eval(&self, p: &SimplexPoint) -> f64 {
        match self {
            Functional::DeltaPAb => p.delta_p_ab(),
            Functional::ProbA => p.prob_a(),
            Functional::ProbAGivenB => p.prob_a_given_b(),
            Functional::IndicatorDeltaPNegative => {
                if p.delta_p_ab() < 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Self-normalized midpoint-rule expectation of `functional` under
/// Dirichlet(params).
pub fn grid_expectation(spec: &GridSpec, functional: Functional) -> Result<f64> {
    spec.params.validate()?;
    if spec.resolution < MIN_RESOLUTION || spec.resolution > MAX_RESOLUTION {
        return Err(Error::Config(format!(
            "grid resolution {} outside [{MIN_RESOLUTION}, {MAX_RESOLUTION}]",
            spec.resolution
        )));
    }
    if spec.params.sum() > MAX_CONCENTRATION_SUM {
        return Err(Error::OracleRange(format!(
            "concentration sum {} exceeds {MAX_CONCENTRATION_SUM}; use analytic moments instead",
            spec.params.sum()
        )));
    }

    let r = spec.resolution as usize;
    let h = 1.0 / spec.resolution as f64;
    let alpha = spec.params.as_array();
    let log_weight = |p: &SimplexPoint| -> f64 {
        (alpha[0] - 1.0) * p.p00.ln()
            + (alpha[1] - 1.0) * p.p01.ln()
            + (alpha[2] - 1.0) * p.p10.ln()
            + (alpha[3] - 1.0) * p.p11.ln()
    };

    // Pass 1: the largest log weight, so pass 2 can exponentiate safely.
    let mut max_lw = f64::NEG_INFINITY;
    for_each_midpoint(r, h, |p| {
        let lw = log_weight(&p);
        if lw > max_lw {
            max_lw = lw;
        }
    });
    if !max_lw.is_finite() {
        return Err(Error::OracleRange(
            "density vanished on the entire grid".into(),
        ));
    }

    // Pass 2: compensated sums of the weight and the weighted functional.
    let mut wsum = 0.0;
    let mut wc = 0.0;
    let mut fsum = 0.0;
    let mut fc = 0.0;
    let add = |acc: &mut f64, comp: &mut f64, x: f64| {
        let y = x - *comp;
        let t = *acc + y;
        *comp = (t - *acc) - y;
        *acc = t;
    };
    for_each_midpoint(r, h, |p| {
        let w = (log_weight(&p) - max_lw).exp();
        add(&mut wsum, &mut wc, w);
        add(&mut fsum, &mut fc, w * functional.eval(&p));
    });
    if wsum <= 0.0 {
        return Err(Error::OracleRange("quadrature weights summed to zero".into()));
    }
    Ok(fsum / wsum)
}

/// Visit the midpoint of every grid cell whose center lies strictly
/// inside the simplex.
fn for_each_midpoint(r: usize, h: f64, mut visit: impl FnMut(SimplexPoint)) {
    for i in 0..r {
        let p01 = (i as f64 + 0.5) * h;
        for j in 0..r {
            let p10 = (j as f64 + 0.5) * h;
            if p01 + p10 >= 1.0 {
                break;
            }
            for k in 0..r {
                let p11 = (k as f64 + 0.5) * h;
                let p00 = 1.0 - p01 - p10 - p11;
                if p00 <= 0.0 {
                    break;
                }
                visit(SimplexPoint {
                    p00,
                    p01,
                    p10,
                    p11,
                });
            }
        }
    }
}
