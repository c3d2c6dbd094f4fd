//! Localization series of the equivariant Â-genus and the weight-sum
//! obstruction to spin structures.
//!
//! For fixed-point data `{(w_p, eps_p)}` the series is
//!
//! ```text
//! sum_p eps_p * prod_i s^{w_{p,i}} / (1 - s^{2 w_{p,i}})
//!   = sum_p eps_p * s^{|w_p|} * prod_i (1 + s^{2 w_{p,i}} + s^{4 w_{p,i}} + ...)
//! ```
//!
//! in the variable `s = t^{1/2}`. On a spin manifold it vanishes identically.
//! Each fixed point contributes nothing below `s^{|w_p|}`, so a point whose
//! weight sum is strictly below every weight sum of opposite sign leaves a
//! term that nothing can cancel, and the manifold cannot be spin.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::fixedpoints::{cp_standard_action, FixedPoint, FixedPointData, Sign};
use crate::series::TruncatedSeries;

/// Contribution of a single fixed point, truncated at `order`.
pub fn fixed_point_contribution(point: &FixedPoint, order: usize) -> TruncatedSeries {
    let lead = match usize::try_from(point.weight_sum()) {
        Ok(k) if k <= order => k,
        _ => return TruncatedSeries::zero(order),
    };
    let mut acc = TruncatedSeries::monomial(point.sign().value(), lead, order)
        .expect("lead exponent is within order");
    for &w in point.weights() {
        let g = TruncatedSeries::geometric(w, order).expect("weights are positive");
        acc = &acc * &g;
    }
    acc
}

/// The localization series summed over all fixed points.
pub fn ahat_equivariant_series(data: &FixedPointData, order: usize) -> TruncatedSeries {
    data.points()
        .par_iter()
        .map(|p| fixed_point_contribution(p, order))
        .reduce(|| TruncatedSeries::zero(order), |a, b| &a + &b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Some fixed point beats every opposite-sign weight sum.
    NotSpin,
    /// The minimal weight sums of the two sign classes tie. This proves
    /// nothing either way.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotSpin => "NOT_SPIN",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub witness: Option<String>,
    /// Minimal weight sum over points with sign `+1`.
    pub min_sum_plus: Option<u64>,
    /// Minimal weight sum over points with sign `-1`.
    pub min_sum_minus: Option<u64>,
    pub detail: String,
}

/// First point (in input order) of the given sign with minimal weight sum.
fn minimal_point(data: &FixedPointData, sign: Sign) -> Option<&FixedPoint> {
    data.points()
        .iter()
        .filter(|p| p.sign() == sign)
        .fold(None, |best: Option<&FixedPoint>, p| match best {
            Some(b) if b.weight_sum() <= p.weight_sum() => Some(b),
            _ => Some(p),
        })
}

/// Decides the weight-sum obstruction.
///
/// The minimum weight sum is taken within each sign class. If they differ,
/// or one class is empty, the first point achieving the smaller minimum is
/// the witness and the verdict is [`Verdict::NotSpin`]. Equal minima give
/// [`Verdict::Inconclusive`].
pub fn spin_obstruction_check(data: &FixedPointData) -> ObstructionReport {
    let plus = minimal_point(data, Sign::Plus);
    let minus = minimal_point(data, Sign::Minus);
    let min_sum_plus = plus.map(FixedPoint::weight_sum);
    let min_sum_minus = minus.map(FixedPoint::weight_sum);

    let witness = match (plus, minus) {
        (Some(p), Some(m)) if p.weight_sum() == m.weight_sum() => None,
        (Some(p), Some(m)) => Some(if p.weight_sum() < m.weight_sum() {
            p
        } else {
            m
        }),
        (Some(only), None) | (None, Some(only)) => Some(only),
        (None, None) => unreachable!("fixed-point data is never empty"),
    };

    match witness {
        Some(q) => {
            let (sign, label, sum) = (q.sign(), q.label(), q.weight_sum());
            let detail = match minimal_point(data, sign.opposite()) {
                None => format!(
                    "every fixed point has sign {sign}; {label} (weight sum {sum}) \
                     contributes {sign}s^{sum} and nothing of opposite sign can cancel it"
                ),
                Some(other) => format!(
                    "{label} has sign {sign} and weight sum {sum}, strictly below the minimal \
                     weight sum {} among points of sign {}; its term {sign}s^{sum} cannot \
                     cancel, so the series is nonzero and no spin structure exists",
                    other.weight_sum(),
                    sign.opposite()
                ),
            };
            ObstructionReport {
                verdict: Verdict::NotSpin,
                witness: Some(q.label().to_owned()),
                min_sum_plus,
                min_sum_minus,
                detail,
            }
        }
        None => ObstructionReport {
            verdict: Verdict::Inconclusive,
            witness: None,
            min_sum_plus,
            min_sum_minus,
            detail: format!(
                "both sign classes reach the minimal weight sum {}; the obstruction does not apply",
                min_sum_plus.unwrap_or_default()
            ),
        },
    }
}

/// Whether `CP^n` admits a spin structure: exactly when `n` is odd.
///
/// `n` must be at least 1.
pub fn is_cpn_spin(n: u64) -> bool {
    debug_assert!(n >= 1, "CP^n needs n >= 1");
    n % 2 == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub order: usize,
    pub series: TruncatedSeries,
    pub is_zero: bool,
    pub lowest_term: Option<(usize, BigInt)>,
}

pub fn verify_vanishing(data: &FixedPointData, order: usize) -> VanishingReport {
    let series = ahat_equivariant_series(data, order);
    let lowest_term = series.lowest_term().map(|(k, c)| (k, c.clone()));
    VanishingReport {
        order,
        is_zero: lowest_term.is_none(),
        lowest_term,
        series,
    }
}

/// Three independent signals on the standard action on `CP^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub n: u64,
    pub order: usize,
    pub parity_spin: bool,
    pub vanishing: VanishingReport,
    pub obstruction: ObstructionReport,
    pub notes: Vec<String>,
    pub disagreements: Vec<String>,
}

impl CrossValidation {
    pub fn is_consistent(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Checks that the parity rule, the vanishing of the series up to `order`,
/// and the obstruction verdict agree for the standard action on `CP^n`.
///
/// A zero series for even `n` is not counted as a disagreement when `order`
/// is below the witness's weight sum, since the uncancelled term lies past
/// the truncation; a note says so instead.
pub fn cross_validate(n: u64, order: usize) -> Result<CrossValidation> {
    let data = cp_standard_action(n)?.fixed_point_data()?;
    let parity_spin = is_cpn_spin(n);
    let vanishing = verify_vanishing(&data, order);
    let obstruction = spin_obstruction_check(&data);
    let mut notes = Vec::new();
    let mut disagreements = Vec::new();

    let obstructed = obstruction.verdict == Verdict::NotSpin;
    if parity_spin == obstructed {
        disagreements.push(format!(
            "parity says CP^{n} is {}spin but the obstruction check returned {}",
            if parity_spin { "" } else { "not " },
            obstruction.verdict
        ));
    }

    if parity_spin && !vanishing.is_zero {
        let (k, c) = vanishing
            .lowest_term
            .as_ref()
            .expect("nonzero series has a lowest term");
        disagreements.push(format!(
            "CP^{n} is spin but the series has the nonzero term {c}*s^{k}"
        ));
    }
    if !parity_spin && vanishing.is_zero {
        let visible_from = obstruction
            .witness
            .as_deref()
            .and_then(|w| data.point(w))
            .map(FixedPoint::weight_sum);
        match visible_from {
            Some(w) if w > order as u64 => notes.push(format!(
                "order {order} is below the witness weight sum {w}; the nonzero term is not yet visible"
            )),
            _ => disagreements.push(format!(
                "CP^{n} is not spin but the series vanishes up to order {order}"
            )),
        }
    }
    if let (Some((k, _)), Some(w)) = (
        vanishing.lowest_term.as_ref(),
        obstruction.witness.as_deref().and_then(|w| data.point(w)),
    ) {
        if *k as u64 != w.weight_sum() {
            disagreements.push(format!(
                "lowest exponent {k} differs from the witness weight sum {}",
                w.weight_sum()
            ));
        }
    }

    Ok(CrossValidation {
        n,
        order,
        parity_spin,
        vanishing,
        obstruction,
        notes,
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixedpoints::{FixedPoint, LinearAction};
    use proptest::prelude::*;

    fn standard(n: u64) -> FixedPointData {
        cp_standard_action(n).unwrap().fixed_point_data().unwrap()
    }

    fn coeffs(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn cp1_vanishes() {
        assert!(ahat_equivariant_series(&standard(1), 20).is_zero());
    }

    #[test]
    fn cp2_series_frozen() {
        // expanded independently by counting solutions of sum 2 w_i c_i = k - |w|
        let s = ahat_equivariant_series(&standard(2), 12);
        assert_eq!(
            coeffs(&s),
            vec![0, 0, -1, 2, -2, 2, -3, 4, -4, 4, -5, 6, -6]
        );
        assert_eq!(s.lowest_term(), Some((2, &BigInt::from(-1))));
    }

    #[test]
    fn cp3_and_cp5_vanish() {
        assert!(ahat_equivariant_series(&standard(3), 60).is_zero());
        let r = verify_vanishing(&standard(5), 60);
        assert!(r.is_zero);
        assert_eq!(r.lowest_term, None);
    }

    #[test]
    fn cp4_and_cp6_leading_terms() {
        let r = verify_vanishing(&standard(4), 30);
        assert!(!r.is_zero);
        assert_eq!(r.lowest_term, Some((6, BigInt::from(1))));
        assert_eq!(coeffs(&r.series)[6..=12], [1, -2, 2, -4, 7, -8, 10]);
        let r = verify_vanishing(&standard(6), 40);
        assert_eq!(r.lowest_term, Some((12, BigInt::from(-1))));
        assert_eq!(coeffs(&r.series)[36..=40], [-633, 732, -836, 954, -1092]);
    }

    #[test]
    fn weight_sum_past_order_contributes_zero() {
        let p = FixedPoint::new("big", Sign::Plus, vec![u64::MAX / 2]).unwrap();
        assert!(fixed_point_contribution(&p, 10).is_zero());
        let p = FixedPoint::new("edge", Sign::Minus, vec![3, 2]).unwrap();
        let c = fixed_point_contribution(&p, 5);
        assert_eq!(coeffs(&c), vec![0, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn obstruction_cp2() {
        let r = spin_obstruction_check(&standard(2));
        assert_eq!(r.verdict, Verdict::NotSpin);
        assert_eq!(r.witness.as_deref(), Some("p_1"));
        assert_eq!(r.min_sum_minus, Some(2));
        assert_eq!(r.min_sum_plus, Some(3));
    }

    #[test]
    fn obstruction_cp3_inconclusive() {
        let r = spin_obstruction_check(&standard(3));
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.witness, None);
        assert_eq!((r.min_sum_plus, r.min_sum_minus), (Some(4), Some(4)));
    }

    #[test]
    fn obstruction_even_cp() {
        for m in 1..=5u64 {
            let d = standard(2 * m);
            let r = spin_obstruction_check(&d);
            assert_eq!(r.verdict, Verdict::NotSpin);
            assert_eq!(r.witness, Some(format!("p_{m}")));
            let w = d.point(r.witness.as_deref().unwrap()).unwrap();
            assert_eq!(w.weight_sum(), m * (m + 1));
        }
    }

    #[test]
    fn one_sided_and_tie_breaking() {
        let pts = vec![
            FixedPoint::new("a", Sign::Minus, vec![3]).unwrap(),
            FixedPoint::new("b", Sign::Minus, vec![2]).unwrap(),
            FixedPoint::new("c", Sign::Minus, vec![2]).unwrap(),
        ];
        let d = FixedPointData::new(1, pts).unwrap();
        let r = spin_obstruction_check(&d);
        assert_eq!(r.verdict, Verdict::NotSpin);
        assert_eq!(r.witness.as_deref(), Some("b"));
        assert_eq!((r.min_sum_plus, r.min_sum_minus), (None, Some(2)));
        // two tied minimal points of the same sign give coefficient -2
        let s = ahat_equivariant_series(&d, 6);
        assert_eq!(s.lowest_term(), Some((2, &BigInt::from(-2))));
    }

    #[test]
    fn parity() {
        assert!(is_cpn_spin(1));
        assert!(!is_cpn_spin(2));
        assert!(is_cpn_spin(7));
    }

    #[test]
    fn cross_validation_examples() {
        for (n, order) in [(2, 20), (3, 60), (1, 20)] {
            let r = cross_validate(n, order).unwrap();
            assert!(r.is_consistent(), "{n}: {:?}", r.disagreements);
        }
        assert!(cross_validate(1, 20).unwrap().vanishing.is_zero);
        assert!(!cross_validate(2, 20).unwrap().vanishing.is_zero);
        // order too small to see CP^4's leading s^6
        let r = cross_validate(4, 3).unwrap();
        assert!(r.is_consistent());
        assert_eq!(r.notes.len(), 1);
        assert!(cross_validate(0, 3).is_err());
    }

    #[test]
    fn general_action_series_is_translation_invariant() {
        let a = LinearAction::new(vec![3, -1, 4, 0]).unwrap();
        let b = a.translated(17).unwrap();
        assert_eq!(
            ahat_equivariant_series(&a.fixed_point_data().unwrap(), 30),
            ahat_equivariant_series(&b.fixed_point_data().unwrap(), 30)
        );
    }

    fn abstract_data() -> impl Strategy<Value = FixedPointData> {
        (1usize..=4).prop_flat_map(|n| {
            prop::collection::vec((prop::bool::ANY, prop::collection::vec(1u64..=6, n)), 1..=6)
                .prop_map(move |pts| {
                    let points = pts
                        .into_iter()
                        .enumerate()
                        .map(|(i, (plus, w))| {
                            let sign = if plus { Sign::Plus } else { Sign::Minus };
                            FixedPoint::new(format!("q{i}"), sign, w).unwrap()
                        })
                        .collect();
                    FixedPointData::new(n, points).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn obstruction_matches_series(d in abstract_data()) {
            let order = (d.max_weight_sum() as usize) + 2;
            let r = spin_obstruction_check(&d);
            let s = ahat_equivariant_series(&d, order);
            if r.verdict == Verdict::NotSpin {
                let q = d.point(r.witness.as_deref().unwrap()).unwrap();
                let w = q.weight_sum();
                let ties = d.points().iter().filter(|p| p.weight_sum() == w).count() as i64;
                let (k, c) = s.lowest_term().unwrap();
                prop_assert_eq!(k as u64, w);
                prop_assert_eq!(c.clone(), BigInt::from(q.sign().value() * ties));
            } else {
                prop_assert_eq!(r.min_sum_plus, r.min_sum_minus);
            }
        }

        #[test]
        fn scaling_dilates_series(d in abstract_data(), lambda in 2u64..=3) {
            let order = 40;
            let scaled = d.scaled(lambda).unwrap();
            prop_assert_eq!(
                ahat_equivariant_series(&scaled, order),
                ahat_equivariant_series(&d, order).dilate(lambda as usize).unwrap()
            );
            let (a, b) = (spin_obstruction_check(&d), spin_obstruction_check(&scaled));
            prop_assert_eq!(a.verdict, b.verdict);
            prop_assert_eq!(a.witness, b.witness);
        }

        #[test]
        fn truncation_monotone(d in abstract_data(), m in 0usize..=20) {
            let hi = verify_vanishing(&d, 30).series;
            let lo = verify_vanishing(&d, m).series;
            prop_assert_eq!(hi.truncate(m), lo);
        }
    }
}
