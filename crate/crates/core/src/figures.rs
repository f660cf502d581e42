//! Parameter sets and curve generation for the two reference plots.
//!
//! Both plots use `Gamma = 1`, so times are in units of `1 / Gamma`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rayon::prelude::*;

use crate::cat_states::CatSpec;
use crate::channel::ChannelSpec;
use crate::error::Result;
use crate::purity::{hybrid_time_grid, interference_weight, linear_time_grid, PurityCurve};

pub const FIGURE1_T_MAX: f64 = 15.0;
pub const FIGURE1_SAMPLES: usize = 200;
pub const FIGURE2_T_MAX: f64 = 0.125;
pub const FIGURE2_SAMPLES: usize = 201;
/// Asymptotic purity of the thermal baths in both plots.
pub const BATH_PURITY: f64 = 0.5;
/// Thermal occupation paired with `M = 2 + 2i` in the first plot.
pub const TILTED_BATH_N: f64 = 2.5;

#[derive(Debug, Clone, PartialEq)]
pub struct FigureCurve {
    pub label: &'static str,
    pub curve: PurityCurve,
    pub interference: Vec<f64>,
}

/// Cat and channel behind each curve of the first plot, by label.
pub fn figure1_configs() -> Result<Vec<(&'static str, CatSpec, ChannelSpec)>> {
    let thermal = ChannelSpec::thermal_with_purity(1.0, BATH_PURITY)?;
    let tilted = ChannelSpec::new(1.0, TILTED_BATH_N, 2.0, 2.0)?;
    Ok(vec![
        ("dotted", CatSpec::new(1.0, FRAC_PI_4, 0.0, 0.0, 0.0)?, thermal),
        ("dashed", CatSpec::new(100.0, FRAC_PI_4, 0.0, 0.0, 0.0)?, thermal),
        ("continuous", CatSpec::new(100.0, FRAC_PI_4, 0.0, 0.0, 0.0)?, tilted),
        ("dot-dashed", CatSpec::new(10.0, FRAC_PI_4, 2.0, 0.0, 0.0)?, thermal),
    ])
}

/// Cat and channel behind each curve of the second plot: `|beta0|^2 = 16`,
/// optimally oriented (`xi = pi/2`), with squeezing 0, 1 and 1.5.
pub fn figure2_configs() -> Result<Vec<(&'static str, CatSpec, ChannelSpec)>> {
    let thermal = ChannelSpec::thermal_with_purity(1.0, BATH_PURITY)?;
    Ok(vec![
        ("r0=0", CatSpec::new(4.0, FRAC_PI_2, 0.0, 0.0, 0.0)?, thermal),
        ("r0=1", CatSpec::new(4.0, FRAC_PI_2, 1.0, 0.0, 0.0)?, thermal),
        ("r0=1.5", CatSpec::new(4.0, FRAC_PI_2, 1.5, 0.0, 0.0)?, thermal),
    ])
}

fn sample_all(configs: Vec<(&'static str, CatSpec, ChannelSpec)>, times: &[f64]) -> Result<Vec<FigureCurve>> {
    configs
        .into_par_iter()
        .map(|(label, spec, ch)| {
            let curve = PurityCurve::sample(&spec, &ch, times)?;
            let interference = times
                .iter()
                .map(|&t| interference_weight(&spec, &ch, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(FigureCurve { label, curve, interference })
        })
        .collect()
}

/// First plot on a hybrid grid with `samples` points up to `t_max`.
pub fn figure1_with(t_max: f64, samples: usize) -> Result<Vec<FigureCurve>> {
    sample_all(figure1_configs()?, &hybrid_time_grid(t_max, samples)?)
}

pub fn figure1() -> Result<Vec<FigureCurve>> {
    figure1_with(FIGURE1_T_MAX, FIGURE1_SAMPLES)
}

/// Second plot on an evenly spaced grid.
pub fn figure2_with(t_max: f64, samples: usize) -> Result<Vec<FigureCurve>> {
    sample_all(figure2_configs()?, &linear_time_grid(t_max, samples)?)
}

pub fn figure2() -> Result<Vec<FigureCurve>> {
    figure2_with(FIGURE2_T_MAX, FIGURE2_SAMPLES)
}
