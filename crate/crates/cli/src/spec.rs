use std::path::PathBuf;

use casimir::{DielectricModelF64, Prescription, QuadratureSettings};

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Sweep,
    Fig1,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Plates,
    /// Sphere of radius `radius_um` above a plate, via the proximity force approximation.
    SpherePlate { radius_um: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// `steps` equally spaced points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min > 0.0 && min.is_finite() && max.is_finite()) {
            return Err(CliError::Usage(format!("range minimum must be positive (got {min})")));
        }
        if !(max > min) {
            return Err(CliError::Usage(format!("range is empty: {min}:{max}")));
        }
        if steps < 2 {
            return Err(CliError::Usage(format!("sweeps need at least 2 steps (got {steps})")));
        }
        Ok(Self { min, max, steps })
    }

    /// Parses `MIN:MAX`.
    pub fn parse(s: &str, steps: usize) -> Result<Self> {
        let bad = || CliError::Usage(format!("invalid range '{s}'; expected MIN:MAX"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi, steps)
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..=n)
            .map(|i| if i == n { self.max } else { self.min + (self.max - self.min) * i as f64 / n as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Range(Range),
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        match self {
            Self::Fixed(v) => vec![*v],
            Self::Range(r) => r.points(),
        }
    }
}

/// Fully resolved description of one CLI invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub model: Option<DielectricModelF64>,
    pub prescription: Prescription,
    pub geometry: Geometry,
    pub a_um: Axis,
    pub t_kelvin: Axis,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub quad: QuadratureSettings,
    pub entropy: bool,
}

impl RunSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            model: None,
            prescription: Prescription::AsIs,
            geometry: Geometry::Plates,
            a_um: Axis::Fixed(1.0),
            t_kelvin: Axis::Fixed(300.0),
            format: if command == Command::Eval { Format::Json } else { Format::Csv },
            output: None,
            quad: QuadratureSettings::default(),
            entropy: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for a in self.a_um.points() {
            if !(a > 0.0 && a.is_finite()) {
                return Err(CliError::Usage(format!("a must be positive (got {a})")));
            }
        }
        for t in self.t_kelvin.points() {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("T must be non-negative (got {t})")));
            }
        }
        if let Geometry::SpherePlate { radius_um } = self.geometry {
            if !(radius_um > 0.0 && radius_um.is_finite()) {
                return Err(CliError::Usage(format!("R must be positive (got {radius_um})")));
            }
        }
        if matches!(self.command, Command::Eval | Command::Sweep) && self.model.is_none() {
            return Err(CliError::Usage("--model is required".into()));
        }
        if self.command == Command::Eval
            && (matches!(self.a_um, Axis::Range(_)) || matches!(self.t_kelvin, Axis::Range(_)))
        {
            return Err(CliError::Usage("eval takes a single a and T; use sweep for ranges".into()));
        }
        self.quad.validate()?;
        Ok(())
    }

    pub fn model_or_usage(&self) -> Result<DielectricModelF64> {
        self.model.ok_or_else(|| CliError::Usage("--model is required".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_points_hit_both_ends() {
        let r = Range::parse("1:5", 41).unwrap();
        let p = r.points();
        assert_eq!(p.len(), 41);
        assert_eq!((p[0], p[40]), (1.0, 5.0));
        assert!((p[30] - 4.0).abs() < 1e-15);
        assert!(p.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn range_validation() {
        assert!(Range::parse("0:5", 3).is_err());
        assert!(Range::parse("2:1", 3).is_err());
        assert!(Range::parse("1:2", 1).is_err());
        assert!(Range::parse("1-2", 3).is_err());
    }

    #[test]
    fn spec_validation() {
        let mut s = RunSpec::new(Command::Eval);
        s.model = Some(DielectricModelF64::IdealMetal);
        assert!(s.validate().is_ok());
        s.a_um = Axis::Fixed(-1.0);
        assert!(s.validate().unwrap_err().to_string().contains("a must be positive"));
        let s = RunSpec::new(Command::Sweep);
        assert!(s.validate().is_err());
    }
}
