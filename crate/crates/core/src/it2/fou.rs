use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const AUDIT_POINTS: usize = 64;
const AUDIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FouClass {
    #[serde(rename = "left")]
    LeftShoulder,
    Interior,
    #[serde(rename = "right")]
    RightShoulder,
}

impl fmt::Display for FouClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FouClass::LeftShoulder => "left",
            FouClass::Interior => "interior",
            FouClass::RightShoulder => "right",
        })
    }
}

/// Trapezoid `(a, b, c, d)` with apex height `height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub height: f64,
}

impl Trapezoid {
    pub fn new(a: f64, b: f64, c: f64, d: f64, height: f64) -> Result<Self> {
        let ok = [a, b, c, d, height].iter().all(|v| v.is_finite())
            && a <= b
            && b <= c
            && c <= d
            && height > 0.0
            && height <= 1.0;
        if !ok {
            return Err(Error::InvalidFou(format!(
                "trapezoid ({a}, {b}, {c}, {d}) with height {height} is not ordered or has height outside (0, 1]"
            )));
        }
        Ok(Trapezoid { a, b, c, d, height })
    }

    pub fn membership(&self, x: f64) -> f64 {
        let Trapezoid { a, b, c, d, height } = *self;
        if x < a || x > d {
            0.0
        } else if x < b {
            height * (x - a) / (b - a)
        } else if x <= c {
            height
        } else {
            height * (d - x) / (d - c)
        }
    }

    fn shifted(&self, delta: f64) -> Self {
        Trapezoid {
            a: self.a + delta,
            b: self.b + delta,
            c: self.c + delta,
            d: self.d + delta,
            height: self.height,
        }
    }
}

/// Interval type-2 word model: a normal upper trapezoid and a lower
/// trapezoid nested inside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFou", into = "RawFou")]
pub struct It2Fou {
    umf: Trapezoid,
    lmf: Trapezoid,
    class: FouClass,
}

#[derive(Serialize, Deserialize)]
struct RawFou {
    class: FouClass,
    umf: [f64; 4],
    lmf: [f64; 5],
}

impl TryFrom<RawFou> for It2Fou {
    type Error = Error;

    fn try_from(raw: RawFou) -> Result<Self> {
        It2Fou::new(raw.umf, raw.lmf, raw.class)
    }
}

impl From<It2Fou> for RawFou {
    fn from(f: It2Fou) -> Self {
        RawFou {
            class: f.class,
            umf: f.umf_params(),
            lmf: f.lmf_params(),
        }
    }
}

impl It2Fou {
    pub fn new(umf: [f64; 4], lmf: [f64; 5], class: FouClass) -> Result<Self> {
        let [a, b, c, d] = umf;
        let [e, f, g, h, hl] = lmf;
        let umf = Trapezoid::new(a, b, c, d, 1.0)?;
        let lmf = Trapezoid::new(e, f, g, h, hl)?;
        if e < a || h > d {
            return Err(Error::InvalidFou(format!(
                "lower support [{e}, {h}] leaves upper support [{a}, {d}]"
            )));
        }
        let fou = It2Fou { umf, lmf, class };
        let audit = (0..AUDIT_POINTS)
            .map(|i| a + (d - a) * i as f64 / (AUDIT_POINTS - 1) as f64)
            .chain([e, f, g, h]);
        for x in audit {
            let (lo, up) = (lmf.membership(x), umf.membership(x));
            if lo > up + AUDIT_TOLERANCE {
                return Err(Error::InvalidFou(format!(
                    "lower membership {lo} exceeds upper membership {up} at x = {x}"
                )));
            }
        }
        Ok(fou)
    }

    /// A FOU whose lower and upper functions coincide.
    pub fn type1(umf: [f64; 4], class: FouClass) -> Result<Self> {
        let [a, b, c, d] = umf;
        It2Fou::new(umf, [a, b, c, d, 1.0], class)
    }

    pub fn umf(&self) -> &Trapezoid {
        &self.umf
    }

    pub fn lmf(&self) -> &Trapezoid {
        &self.lmf
    }

    pub fn class(&self) -> FouClass {
        self.class
    }

    pub fn umf_params(&self) -> [f64; 4] {
        [self.umf.a, self.umf.b, self.umf.c, self.umf.d]
    }

    pub fn lmf_params(&self) -> [f64; 5] {
        [self.lmf.a, self.lmf.b, self.lmf.c, self.lmf.d, self.lmf.height]
    }

    /// Upper support `[a, d]`.
    pub fn support(&self) -> (f64, f64) {
        (self.umf.a, self.umf.d)
    }

    pub fn shifted(&self, delta: f64) -> Self {
        It2Fou {
            umf: self.umf.shifted(delta),
            lmf: self.lmf.shifted(delta),
            class: self.class,
        }
    }
}

/// `(lower, upper)` membership at `x`.
pub fn fou_membership_bounds(fou: &It2Fou, x: f64) -> (f64, f64) {
    let lo = fou.lmf.membership(x);
    let up = fou.umf.membership(x);
    (lo.min(up), up)
}
