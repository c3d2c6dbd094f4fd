//! Isolated fixed points of a circle action and their weight data.
//!
//! A fixed point is reduced to what the localization formula needs: the
//! positive rotation weights on the tangent 2-planes and the orientation
//! sign. Weights are kept sorted, so two points with the same multiset of
//! weights compare equal.
//!
//! [`LinearAction`] produces this data for `g.[z_0:...:z_n] = [g^{a_0} z_0 : ... : g^{a_n} z_n]`
//! on `CP^n`: at `p_i` the complex weights are `a_j - a_i` (`j != i`), the
//! oriented weights are their absolute values, and the sign is `(-1)^{N_i}`
//! with `N_i` the number of negative complex weights.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orientation sign of a fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^count`.
    pub fn from_parity(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSign(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    label: String,
    sign: Sign,
    weights: Vec<u64>,
}

impl FixedPoint {
    pub fn new(label: impl Into<String>, sign: Sign, mut weights: Vec<u64>) -> Result<Self> {
        let label = label.into();
        if weights.is_empty() {
            return Err(Error::EmptyWeights(label));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeight(0));
        }
        weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or(Error::Overflow("summing weights"))?;
        weights.sort_unstable();
        Ok(FixedPoint {
            label,
            sign,
            weights,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Weights in ascending order.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Sum of the weights; the exponent of the leading `s`-power this point
    /// contributes to the localization series.
    pub fn weight_sum(&self) -> u64 {
        // overflow was ruled out in `new`
        self.weights.iter().sum()
    }
}

/// The fixed-point set of a circle action on a `2n`-dimensional manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPointData {
    half_dim: usize,
    points: Vec<FixedPoint>,
}

impl FixedPointData {
    pub fn new(half_dim: usize, points: Vec<FixedPoint>) -> Result<Self> {
        if half_dim == 0 {
            return Err(Error::InvalidHalfDim(0));
        }
        if points.is_empty() {
            return Err(Error::NoFixedPoints);
        }
        let mut seen = HashSet::new();
        for p in &points {
            if p.weights.len() != half_dim {
                return Err(Error::WeightCountMismatch {
                    label: p.label.clone(),
                    expected: half_dim,
                    found: p.weights.len(),
                });
            }
            if !seen.insert(p.label.as_str()) {
                return Err(Error::DuplicateLabel(p.label.clone()));
            }
        }
        Ok(FixedPointData { half_dim, points })
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn point(&self, label: &str) -> Option<&FixedPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    pub fn max_weight_sum(&self) -> u64 {
        self.points
            .iter()
            .map(FixedPoint::weight_sum)
            .max()
            .unwrap_or(0)
    }

    /// Multiplies every weight by `factor`, keeping labels and signs.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidScale(0));
        }
        let points = self
            .points
            .iter()
            .map(|p| {
                let weights = p
                    .weights
                    .iter()
                    .map(|w| {
                        w.checked_mul(factor)
                            .ok_or(Error::Overflow("scaling weights"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                FixedPoint::new(p.label.clone(), p.sign, weights)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FixedPointData {
            half_dim: self.half_dim,
            points,
        })
    }
}

/// Exponent vector `(a_0, ..., a_n)` of a linear circle action on `CP^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearAction {
    exponents: Vec<i64>,
}

impl LinearAction {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::TooFewExponents(exponents.len()));
        }
        let mut seen = HashSet::new();
        for &a in &exponents {
            if !seen.insert(a) {
                return Err(Error::NonIsolatedFixedPoints(a));
            }
        }
        Ok(LinearAction { exponents })
    }

    /// The action `[z_0 : g z_1 : g^2 z_2 : ... : g^n z_n]` on `CP^n`.
    pub fn cp_standard(n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidDimension(n));
        }
        let top = i64::try_from(n).map_err(|_| Error::Overflow("building exponents"))?;
        Ok(LinearAction {
            exponents: (0..=top).collect(),
        })
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Complex dimension `n` of the projective space acted on.
    pub fn dim(&self) -> usize {
        self.exponents.len() - 1
    }

    /// Adds `shift` to every exponent. The fixed-point data does not change.
    pub fn translated(&self, shift: i64) -> Result<Self> {
        let exponents = self
            .exponents
            .iter()
            .map(|a| {
                a.checked_add(shift)
                    .ok_or(Error::Overflow("translating exponents"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearAction { exponents })
    }

    /// Multiplies every exponent by `factor >= 1`.
    pub fn scaled(&self, factor: i64) -> Result<Self> {
        if factor < 1 {
            return Err(Error::InvalidScale(factor.unsigned_abs()));
        }
        let exponents = self
            .exponents
            .iter()
            .map(|a| {
                a.checked_mul(factor)
                    .ok_or(Error::Overflow("scaling exponents"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearAction { exponents })
    }

    /// Fixed points `p_0, ..., p_n` with oriented weights and signs.
    pub fn fixed_point_data(&self) -> Result<FixedPointData> {
        let points = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, &ai)| {
                let weights = self
                    .exponents
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &aj)| aj.abs_diff(ai))
                    .collect();
                let negative = self.exponents.iter().filter(|&&aj| aj < ai).count();
                FixedPoint::new(format!("p_{i}"), Sign::from_parity(negative), weights)
            })
            .collect::<Result<Vec<_>>>()?;
        FixedPointData::new(self.dim(), points)
    }
}

/// Standard action on `CP^n`.
pub fn cp_standard_action(n: u64) -> Result<LinearAction> {
    LinearAction::cp_standard(n)
}

/// Fixed-point data of a linear action.
pub fn fixed_point_data(action: &LinearAction) -> Result<FixedPointData> {
    action.fixed_point_data()
}

/// Closed form `m(m+1) + k^2` for the weight sum at `p_{m+k}` of the standard
/// action on `CP^{2m}`.
pub fn cp_weight_sum_formula(m: u64, k: i64) -> Result<u64> {
    if m < 1 {
        return Err(Error::InvalidDimension(m));
    }
    if k.unsigned_abs() > m {
        return Err(Error::IndexOutOfRange { m, k });
    }
    let kk = k.unsigned_abs();
    m.checked_mul(m + 1)
        .and_then(|base| kk.checked_mul(kk).and_then(|sq| base.checked_add(sq)))
        .ok_or(Error::Overflow("evaluating m(m+1) + k^2"))
}

// ----- document format -----

#[derive(Deserialize)]
#[serde(untagged)]
enum IntField {
    Int(i64),
    Text(String),
}

impl IntField {
    fn value(&self, what: &str) -> Result<i64> {
        match self {
            IntField::Int(v) => Ok(*v),
            IntField::Text(s) => {
                let t = s.trim().replace('\u{2212}', "-");
                t.strip_prefix('+')
                    .unwrap_or(&t)
                    .parse()
                    .map_err(|_| Error::Malformed(format!("{what} {s:?} is not an integer")))
            }
        }
    }
}

#[derive(Deserialize)]
struct RawPoint {
    label: String,
    sign: IntField,
    weights: Vec<IntField>,
}

#[derive(Deserialize)]
struct RawDocument {
    half_dim: IntField,
    points: Vec<RawPoint>,
}

#[derive(Serialize)]
struct PointOut<'a> {
    label: &'a str,
    sign: i64,
    weights: &'a [u64],
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    half_dim: usize,
    points: Vec<PointOut<'a>>,
}

fn parse_sign(field: &IntField) -> Result<Sign> {
    if let IntField::Text(s) = field {
        match s.trim() {
            "+" => return Ok(Sign::Plus),
            "-" | "\u{2212}" => return Ok(Sign::Minus),
            _ => {}
        }
    }
    let v = field
        .value("sign")
        .map_err(|_| Error::InvalidSign(describe(field)))?;
    Sign::try_from(v)
}

fn describe(field: &IntField) -> String {
    match field {
        IntField::Int(v) => v.to_string(),
        IntField::Text(s) => s.clone(),
    }
}

/// Parses a JSON fixed-point document and validates every invariant.
///
/// Integer fields may be JSON numbers or decimal strings, and signs may also
/// be written `"+"` / `"-"`. Unknown top-level fields are ignored, so report
/// documents produced by the CLI parse back as their underlying data.
pub fn parse_fixed_point_data(document: &str) -> Result<FixedPointData> {
    let raw: RawDocument =
        serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;
    let half_dim = raw.half_dim.value("half_dim")?;
    let half_dim = usize::try_from(half_dim)
        .ok()
        .filter(|&n| n > 0)
        .ok_or(Error::InvalidHalfDim(half_dim))?;
    let points = raw
        .points
        .into_iter()
        .map(|p| {
            let sign = parse_sign(&p.sign)?;
            let weights = p
                .weights
                .iter()
                .map(|w| {
                    let v = w.value("weight")?;
                    u64::try_from(v)
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or(Error::InvalidWeight(v))
                })
                .collect::<Result<Vec<_>>>()?;
            FixedPoint::new(p.label, sign, weights)
        })
        .collect::<Result<Vec<_>>>()?;
    FixedPointData::new(half_dim, points)
}

pub(crate) fn document_value(data: &FixedPointData) -> serde_json::Value {
    let doc = DocumentOut {
        half_dim: data.half_dim,
        points: data
            .points
            .iter()
            .map(|p| PointOut {
                label: &p.label,
                sign: p.sign.value(),
                weights: &p.weights,
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("document is always serializable")
}

/// Pretty-printed JSON; points in stored order, weights ascending.
pub fn serialize_fixed_point_data(data: &FixedPointData) -> String {
    serde_json::to_string_pretty(&document_value(data)).expect("document is always serializable")
}
