use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::motifs::MotifSet;
use crate::numerics::dft;

/// Scaling applied to motif Fourier coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CoefficientScaling {
    /// Plain `Σ_j m_j e^{−2πi jk/τ}`.
    Unnormalized,
    /// Divided by `√τ`, so a unit motif has unit spectral energy.
    #[default]
    Unitary,
}

impl CoefficientScaling {
    pub fn label(self) -> &'static str {
        match self {
            Self::Unnormalized => "unnormalized",
            Self::Unitary => "unitary",
        }
    }
}

impl fmt::Display for CoefficientScaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CoefficientScaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unnormalized" => Ok(Self::Unnormalized),
            "unitary" => Ok(Self::Unitary),
            other => Err(Error::Parse(format!("unknown coefficient scaling '{other}'"))),
        }
    }
}

/// Fourier coefficients of all motifs, each paired with its motif's weight
/// share `q = ω_i / Σ_j ω_j`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoefficientCloud {
    pub points: Vec<(Complex64, f64)>,
    pub scaling: CoefficientScaling,
}

impl CoefficientCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn coefficient_cloud(set: &MotifSet, scaling: CoefficientScaling) -> Result<CoefficientCloud> {
    let total: f64 = set.weights().iter().sum();
    if set.is_empty() || total <= 0.0 {
        return Ok(CoefficientCloud { points: Vec::new(), scaling });
    }
    let factor = match scaling {
        CoefficientScaling::Unnormalized => 1.0,
        CoefficientScaling::Unitary => 1.0 / (set.tau() as f64).sqrt(),
    };
    let mut points = Vec::with_capacity(set.len() * set.tau());
    for (m, w) in set.motifs().iter().zip(set.weights()) {
        let q = w / total;
        points.extend(dft(m)?.into_iter().map(|z| (z * factor, q)));
    }
    Ok(CoefficientCloud { points, scaling })
}

/// Square grid `[−h, h)²` of cells with side `side`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub side: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { half_width: 7.0, side: 0.05 }
    }
}

impl GridSpec {
    pub fn new(half_width: f64, side: f64) -> Result<Self> {
        let g = Self { half_width, side };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.half_width > 0.0 && self.side > 0.0, "grid extent and cell side must be positive");
        let cells = 2.0 * self.half_width / self.side;
        ensure!(
            (cells - cells.round()).abs() <= 1e-9 * cells,
            "cell side {} does not tile the grid width {}",
            self.side,
            2.0 * self.half_width
        );
        Ok(())
    }

    pub fn cells_per_axis(&self) -> usize {
        (2.0 * self.half_width / self.side).round() as usize
    }

    pub fn total_cells(&self) -> usize {
        self.cells_per_axis().pow(2)
    }

    fn axis_index(&self, x: f64) -> Option<usize> {
        let per_unit = self.cells_per_axis() as f64 / (2.0 * self.half_width);
        let idx = ((x + self.half_width) * per_unit).floor();
        (idx >= 0.0 && idx < self.cells_per_axis() as f64).then_some(idx as usize)
    }

    /// Half-open cell containing `z`, or `None` outside the grid.
    pub fn cell(&self, z: Complex64) -> Option<(usize, usize)> {
        Some((self.axis_index(z.re)?, self.axis_index(z.im)?))
    }
}

/// Both richness measures of one cloud.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AreaMeasures {
    pub cells_visited: usize,
    pub relative_area: f64,
    pub weighted_relative_area: f64,
    pub discarded_points: usize,
}

pub fn area_measures(cloud: &CoefficientCloud, grid: &GridSpec) -> Result<AreaMeasures> {
    grid.validate()?;
    let mut cells: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
    let mut discarded = 0;
    for &(z, q) in &cloud.points {
        match grid.cell(z) {
            Some(c) => {
                let e = cells.entry(c).or_insert((0.0, 0));
                e.0 += q;
                e.1 += 1;
            }
            None => discarded += 1,
        }
    }
    let total = grid.total_cells() as f64;
    let mean_sum: f64 = cells.values().map(|&(s, k)| s / k as f64).sum();
    Ok(AreaMeasures {
        cells_visited: cells.len(),
        relative_area: cells.len() as f64 / total,
        weighted_relative_area: mean_sum / total,
        discarded_points: discarded,
    })
}

/// Fraction of grid cells hit by at least one coefficient.
pub fn relative_area(cloud: &CoefficientCloud, grid: &GridSpec) -> Result<f64> {
    Ok(area_measures(cloud, grid)?.relative_area)
}

/// Sum over visited cells of the mean weight share, over the cell count.
pub fn weighted_relative_area(cloud: &CoefficientCloud, grid: &GridSpec) -> Result<f64> {
    Ok(area_measures(cloud, grid)?.weighted_relative_area)
}
