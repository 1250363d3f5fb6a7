use serde::{Deserialize, Serialize};

use super::data::classify;
use super::stats::mean;
use super::{DataInterval, EncoderConfig};
use crate::error::{Error, Result};
use crate::it2::{FouClass, It2Fou};

/// Support endpoints of one embedded type-1 set. For a left shoulder `a_mf`
/// is where membership starts to fall; for a right shoulder `b_mf` is where
/// it reaches one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedT1 {
    pub a_mf: f64,
    pub b_mf: f64,
}

impl EmbeddedT1 {
    pub fn apex(&self) -> f64 {
        (self.a_mf + self.b_mf) / 2.0
    }

    pub fn admissible(&self, scale_max: f64) -> bool {
        self.a_mf >= 0.0 && self.b_mf <= scale_max
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FsPart {
    pub fou: It2Fou,
    pub class: FouClass,
    pub embedded: Vec<EmbeddedT1>,
    /// Intervals that made it into the FOU.
    pub used: usize,
}

/// Maps a data interval to the type-1 set with the same mean and spread.
pub fn embedded_t1(iv: &DataInterval, class: FouClass, scale_max: f64) -> EmbeddedT1 {
    let (a, b) = (iv.a, iv.b);
    match class {
        FouClass::Interior => EmbeddedT1 {
            a_mf: 0.5 * ((a + b) - 2f64.sqrt() * (b - a)),
            b_mf: 0.5 * ((a + b) + 2f64.sqrt() * (b - a)),
        },
        FouClass::LeftShoulder => EmbeddedT1 {
            a_mf: (a + b) / 2.0 - (b - a) / 6f64.sqrt(),
            b_mf: (a + b) / 2.0 + 6f64.sqrt() * (b - a) / 3.0,
        },
        FouClass::RightShoulder => {
            let (a2, b2) = (scale_max - b, scale_max - a);
            EmbeddedT1 {
                a_mf: scale_max - (a2 + b2) / 2.0 - 6f64.sqrt() * (b2 - a2) / 3.0,
                b_mf: scale_max - (a2 + b2) / 2.0 + (b2 - a2) / 6f64.sqrt(),
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum LowerApex {
    /// Lines through the extreme parameters of the whole family.
    Envelope,
    /// The actual legs of the right-most-starting and left-most-ending sets.
    ActualLegs,
}

/// Lower function bounded by a rising leg `(l0, 0) -> (lc, 1)` and a falling
/// leg `(rc, 1) -> (r0, 0)`; the apex sits where the legs cross.
fn lower_from_legs(l0: f64, lc: f64, rc: f64, r0: f64) -> Result<[f64; 5]> {
    if l0 >= r0 {
        return Err(Error::DegenerateFou(format!(
            "lower support [{l0}, {r0}] is empty"
        )));
    }
    if lc <= rc {
        return Ok([l0, lc, rc, r0, 1.0]);
    }
    let (rise, fall) = (lc - l0, r0 - rc);
    let x = (l0 * fall + r0 * rise) / (fall + rise);
    let h = ((x - l0) / rise).clamp(0.0, 1.0);
    if h <= 0.0 {
        return Err(Error::DegenerateFou("lower membership height is zero".into()));
    }
    Ok([l0, x, x, r0, h])
}

fn fs_part(survivors: &[DataInterval], cfg: &EncoderConfig, apex: LowerApex) -> Result<FsPart> {
    if survivors.is_empty() {
        return Err(Error::EmptyInput);
    }
    let class = classify(survivors, cfg);
    let m = cfg.scale_max;
    let embedded: Vec<EmbeddedT1> = survivors
        .iter()
        .map(|iv| embedded_t1(iv, class, m))
        .filter(|e| e.admissible(m))
        .collect();
    if embedded.is_empty() {
        return Err(Error::AllEmbeddedInadmissible);
    }
    let min_by = |f: fn(&EmbeddedT1) -> f64| embedded.iter().map(f).fold(f64::INFINITY, f64::min);
    let max_by = |f: fn(&EmbeddedT1) -> f64| embedded.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let (a_lo, a_hi) = (min_by(|e| e.a_mf), max_by(|e| e.a_mf));
    let (b_lo, b_hi) = (min_by(|e| e.b_mf), max_by(|e| e.b_mf));

    let fou = match class {
        FouClass::LeftShoulder => It2Fou::new([0.0, 0.0, a_hi, b_hi], [0.0, 0.0, a_lo, b_lo, 1.0], class)?,
        FouClass::RightShoulder => It2Fou::new([a_lo, b_lo, m, m], [a_hi, b_hi, m, m, 1.0], class)?,
        FouClass::Interior => {
            let (c_lo, c_hi) = (min_by(EmbeddedT1::apex), max_by(EmbeddedT1::apex));
            let lmf = match apex {
                LowerApex::Envelope => lower_from_legs(a_hi, c_hi, c_lo, b_lo)?,
                LowerApex::ActualLegs => {
                    let left = embedded.iter().find(|e| e.a_mf == a_hi).expect("max is attained");
                    let right = embedded.iter().find(|e| e.b_mf == b_lo).expect("min is attained");
                    lower_from_legs(left.a_mf, left.apex(), right.apex(), right.b_mf)?
                }
            };
            It2Fou::new([a_lo, c_lo, c_hi, b_hi], lmf, class)?
        }
    };
    Ok(FsPart {
        fou,
        class,
        used: embedded.len(),
        embedded,
    })
}

/// Embedded type-1 sets enveloped into a FOU.
pub fn ia_fs_part(survivors: &[DataInterval], cfg: &EncoderConfig) -> Result<FsPart> {
    fs_part(survivors, cfg, LowerApex::Envelope)
}

/// As [`ia_fs_part`], with the interior lower apex placed where the actual legs
/// of the extreme embedded sets cross.
pub fn eia_fs_part(survivors: &[DataInterval], cfg: &EncoderConfig) -> Result<FsPart> {
    fs_part(survivors, cfg, LowerApex::ActualLegs)
}

/// Interval shared by all survivors, anchored to the scale edge for shoulders.
pub fn hma_overlap(survivors: &[DataInterval], class: FouClass, scale_max: f64) -> Result<(f64, f64)> {
    let max_a = survivors.iter().map(|i| i.a).fold(f64::NEG_INFINITY, f64::max);
    let min_b = survivors.iter().map(|i| i.b).fold(f64::INFINITY, f64::min);
    match class {
        FouClass::LeftShoulder => Ok((0.0, min_b)),
        FouClass::RightShoulder => Ok((max_a, scale_max)),
        FouClass::Interior if max_a > min_b => Err(Error::EmptyOverlap {
            max_left: max_a,
            min_right: min_b,
        }),
        FouClass::Interior => Ok((max_a, min_b)),
    }
}

/// FOU from the parts of the survivors left over once the common overlap is
/// removed. The upper function spans the extreme residual endpoints and the
/// lower one their means; both reach height one on the overlap.
pub fn hma_fs_part(survivors: &[DataInterval], cfg: &EncoderConfig) -> Result<FsPart> {
    if survivors.len() < 2 {
        return Err(Error::InsufficientSurvivors {
            needed: 2,
            got: survivors.len(),
        });
    }
    let class = classify(survivors, cfg);
    let m = cfg.scale_max;
    let (o_a, o_b) = hma_overlap(survivors, class, m)?;
    let a: Vec<f64> = survivors.iter().map(|i| i.a).collect();
    let b: Vec<f64> = survivors.iter().map(|i| i.b).collect();
    let min_a = a.iter().copied().fold(f64::INFINITY, f64::min);
    let max_b = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean_a = mean(&a).clamp(min_a, o_a.max(min_a));
    let mean_b = mean(&b).clamp(o_b.min(max_b), max_b);

    let fou = match class {
        FouClass::LeftShoulder => It2Fou::new([0.0, 0.0, o_b, max_b], [0.0, 0.0, o_b, mean_b, 1.0], class)?,
        FouClass::RightShoulder => It2Fou::new([min_a, o_a, m, m], [mean_a, o_a, m, m, 1.0], class)?,
        FouClass::Interior => It2Fou::new([min_a, o_a, o_b, max_b], [mean_a, o_a, o_b, mean_b, 1.0], class)?,
    };
    Ok(FsPart {
        fou,
        class,
        embedded: Vec::new(),
        used: survivors.len(),
    })
}
