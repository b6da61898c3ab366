//! Measurement-trace ingestion and model-vs-experiment comparison.
//!
//! Traces are CSV files with header `t_s,v_volts` and an optional third
//! `p_pa` pressure column. Sampling must be uniform (within 1e-6 relative);
//! scope exports in vendor binary formats must be converted externally.
//!
//! The dominant frequency is located on a Hann-windowed DFT magnitude peak
//! refined by parabolic interpolation of the log-magnitudes, which resolves
//! well below one bin width.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lem::{Excitation, HarvesterModel};

const UNIFORMITY_TOL: f64 = 1e-6;
const MIN_SAMPLES: usize = 16;

/// A voltage-vs-time record from the wind rig.
#[derive(Debug, Clone)]
pub struct MeasurementTrace {
    pub time_s: Vec<f64>,
    pub voltage_v: Vec<f64>,
    pub pressure_pa: Option<Vec<f64>>,
    pub sample_rate_hz: f64,
}

impl MeasurementTrace {
    /// Build a trace from parallel arrays, checking monotonicity and
    /// sampling uniformity.
    pub fn new(time_s: Vec<f64>, voltage_v: Vec<f64>, pressure_pa: Option<Vec<f64>>) -> Result<Self> {
        if time_s.len() != voltage_v.len() {
            return Err(Error::Config(format!(
                "trace columns differ in length: {} times vs {} voltages",
                time_s.len(),
                voltage_v.len()
            )));
        }
        if let Some(p) = &pressure_pa {
            if p.len() != time_s.len() {
                return Err(Error::Config("trace pressure column length mismatch".into()));
            }
        }
        if time_s.len() < 2 {
            return Err(Error::Config("trace needs at least 2 samples".into()));
        }
        if time_s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("trace time must be strictly increasing".into()));
        }
        let n = time_s.len();
        let dt_mean = (time_s[n - 1] - time_s[0]) / (n - 1) as f64;
        for w in time_s.windows(2) {
            let dt = w[1] - w[0];
            if ((dt - dt_mean) / dt_mean).abs() > UNIFORMITY_TOL {
                return Err(Error::Config(format!(
                    "trace sampling not uniform (dt {dt:e} vs mean {dt_mean:e}): resample required"
                )));
            }
        }
        Ok(MeasurementTrace {
            time_s,
            voltage_v,
            pressure_pa,
            sample_rate_hz: 1.0 / dt_mean,
        })
    }

    /// Parse a `t_s,v_volts[,p_pa]` CSV document.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = rdr
            .headers()
            .map_err(|e| Error::Config(format!("trace header: {e}")))?
            .clone();
        let cols: Vec<&str> = headers.iter().collect();
        let has_pressure = match cols.as_slice() {
            ["t_s", "v_volts"] => false,
            ["t_s", "v_volts", "p_pa"] => true,
            other => {
                return Err(Error::Config(format!(
                    "trace header must be t_s,v_volts[,p_pa], got {}",
                    other.join(",")
                )))
            }
        };
        let mut time = Vec::new();
        let mut volts = Vec::new();
        let mut pressure = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::Config(format!("trace row {}: {e}", i + 2)))?;
            let parse = |field: usize, name: &str| -> Result<f64> {
                record
                    .get(field)
                    .ok_or_else(|| Error::Config(format!("trace row {}: missing {name}", i + 2)))?
                    .parse::<f64>()
                    .map_err(|e| Error::Config(format!("trace row {}: {name}: {e}", i + 2)))
            };
            time.push(parse(0, "t_s")?);
            volts.push(parse(1, "v_volts")?);
            if has_pressure {
                pressure.push(parse(2, "p_pa")?);
            }
        }
        MeasurementTrace::new(time, volts, if has_pressure { Some(pressure) } else { None })
    }

    pub fn from_path(path: &std::path::Path) -> Result<(Self, Vec<u8>)> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
        let text = std::str::from_utf8(&bytes)
            .map_err(|e| Error::Config(format!("{}: not UTF-8: {e}", path.display())))?;
        let trace = Self::from_csv(text)?;
        Ok((trace, bytes))
    }

    /// Mean of the pressure channel, when present.
    pub fn mean_pressure_pa(&self) -> Option<f64> {
        self.pressure_pa
            .as_ref()
            .map(|p| p.iter().sum::<f64>() / p.len() as f64)
    }

    /// Summary statistics. Needs at least 16 samples.
    pub fn stats(&self) -> Result<TraceStats> {
        let n = self.voltage_v.len();
        if n < MIN_SAMPLES {
            return Err(Error::Config(format!(
                "trace statistics need >= {MIN_SAMPLES} samples (got {n})"
            )));
        }
        let v = &self.voltage_v;
        let v_max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let v_min = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let v_rms = (v.iter().map(|x| x * x).sum::<f64>() / n as f64).sqrt();
        Ok(TraceStats {
            n_samples: n,
            duration_s: self.time_s[n - 1] - self.time_s[0],
            sample_rate_hz: self.sample_rate_hz,
            v_max,
            v_min,
            v_pp: v_max - v_min,
            v_rms,
            dominant_freq_hz: self.dominant_frequency(),
            positive_peak_mean_v: self.positive_peak_mean(),
        })
    }

    /// Hann-windowed DFT peak with parabolic log-magnitude interpolation.
    /// `None` for constant (or effectively silent) traces.
    fn dominant_frequency(&self) -> Option<f64> {
        let n = self.voltage_v.len();
        let mean = self.voltage_v.iter().sum::<f64>() / n as f64;
        let mut buf: Vec<Complex<f64>> = self
            .voltage_v
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let w = 0.5
                    * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / (n - 1) as f64).cos());
                Complex::new((v - mean) * w, 0.0)
            })
            .collect();
        if buf.iter().all(|c| c.re == 0.0) {
            return None;
        }
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);

        let half = n / 2;
        let mags: Vec<f64> = buf[..half].iter().map(|c| c.norm()).collect();
        let (k, peak) = mags
            .iter()
            .enumerate()
            .skip(1)
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())?;
        if *peak <= 0.0 {
            return None;
        }
        let mut bin = k as f64;
        if k + 1 < half && k >= 1 && mags[k - 1] > 0.0 && mags[k + 1] > 0.0 {
            let a = mags[k - 1].ln();
            let b = peak.ln();
            let c = mags[k + 1].ln();
            let denom = a - 2.0 * b + c;
            if denom < 0.0 {
                let delta = 0.5 * (a - c) / denom;
                bin += delta.clamp(-0.5, 0.5);
            }
        }
        Some(bin * self.sample_rate_hz / n as f64)
    }

    /// Mean of the strictly positive local maxima (per-cycle peaks).
    fn positive_peak_mean(&self) -> Option<f64> {
        let v = &self.voltage_v;
        let mut peaks = Vec::new();
        for i in 1..v.len() - 1 {
            if v[i] > 0.0 && v[i] > v[i - 1] && v[i] >= v[i + 1] {
                peaks.push(v[i]);
            }
        }
        if peaks.is_empty() {
            None
        } else {
            Some(peaks.iter().sum::<f64>() / peaks.len() as f64)
        }
    }
}

/// Summary statistics of a measurement trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceStats {
    pub n_samples: usize,
    pub duration_s: f64,
    pub sample_rate_hz: f64,
    pub v_max: f64,
    pub v_min: f64,
    pub v_pp: f64,
    pub v_rms: f64,
    /// DFT peak frequency; absent for constant traces.
    pub dominant_freq_hz: Option<f64>,
    /// Mean of positive per-cycle peaks; absent when no positive peak exists.
    pub positive_peak_mean_v: Option<f64>,
}

/// Relative-error convention used by [`compare`]: |model - measured| / measured.
pub const ERROR_CONVENTION: &str = "abs(model - measured) / measured";

/// Model-vs-measurement comparison at a pressure band.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    /// Model open-circuit voltage at the nominal pressure (V).
    pub model_voltage_v: f64,
    /// Model voltage at the low/high edge of the pressure band (V).
    pub model_voltage_lo_v: f64,
    pub model_voltage_hi_v: f64,
    pub measured_vmax_v: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_positive_peak_v: Option<f64>,
    /// |model - measured| / measured against the trace maximum.
    pub rel_error_vmax: f64,
    /// Same convention against the positive-peak statistic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_error_positive_peak: Option<f64>,
    pub pressure_pa: f64,
    pub pressure_tol_pa: f64,
    /// Drive frequency (Hz) or null for the static evaluation.
    pub excitation_hz: Option<f64>,
    /// Denominator convention of the relative errors.
    pub convention: &'static str,
}

/// Compare the model prediction against a measured trace at
/// `pressure_pa +/- pressure_tol_pa`. The voltage band edges follow from
/// linearity in pressure.
pub fn compare(
    model: &HarvesterModel,
    trace: &MeasurementTrace,
    pressure_pa: f64,
    pressure_tol_pa: f64,
    excitation: Excitation,
) -> Result<ComparisonReport> {
    if !(pressure_pa > 0.0) {
        return Err(Error::Config(format!(
            "comparison pressure must be > 0 (got {pressure_pa})"
        )));
    }
    if !(pressure_tol_pa >= 0.0 && pressure_tol_pa < pressure_pa) {
        return Err(Error::Config(format!(
            "pressure tolerance must lie in [0, pressure) (got {pressure_tol_pa})"
        )));
    }
    let stats = trace.stats()?;
    if !(stats.v_max > 0.0) {
        return Err(Error::Config(format!(
            "trace maximum must be > 0 for a relative comparison (got {})",
            stats.v_max
        )));
    }
    let v_model = model.voltage_at_pressure(pressure_pa, excitation)?;
    let scale_lo = (pressure_pa - pressure_tol_pa) / pressure_pa;
    let scale_hi = (pressure_pa + pressure_tol_pa) / pressure_pa;
    Ok(ComparisonReport {
        model_voltage_v: v_model,
        model_voltage_lo_v: v_model * scale_lo,
        model_voltage_hi_v: v_model * scale_hi,
        measured_vmax_v: stats.v_max,
        measured_positive_peak_v: stats.positive_peak_mean_v,
        rel_error_vmax: (v_model - stats.v_max).abs() / stats.v_max,
        rel_error_positive_peak: stats
            .positive_peak_mean_v
            .map(|p| (v_model - p).abs() / p),
        pressure_pa,
        pressure_tol_pa,
        excitation_hz: match excitation {
            Excitation::Static => None,
            Excitation::Frequency(f) => Some(f),
        },
        convention: ERROR_CONVENTION,
    })
}
