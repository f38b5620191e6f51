//! Exact maximizer for ratios of two products of affine functions.
//!
//! Every power optimization in this crate reduces, in one scalar variable, to
//! maximizing
//!
//! ```text
//!         (n1 P + n0)(m1 P + m0)
//! f(P) =  ----------------------
//!         (d1 P + d0)(e1 P + e0)
//! ```
//!
//! over an interval on which both denominator factors are strictly positive.
//! Expanding numerator and denominator to quadratics `Q1`, `Q2`, the cubic
//! terms of `Q1'Q2 - Q1 Q2'` cancel identically, so the derivative's sign is
//! carried by a quadratic `q(P)`. The global maximum on `[lo, hi]` therefore
//! lies at an endpoint or at a real root of `q` inside the interval; the
//! solver evaluates that candidate set and never needs case analysis over the
//! derivative's sign patterns.

use std::fmt;

/// `f(P) = [(n1 P + n0)(m1 P + m0)] / [(d1 P + d0)(e1 P + e0)]`.
///
/// Both denominator factors must be strictly positive on the interval passed
/// to [`maximize_on_interval`]; this is checked at solve time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearRatioObjective {
    pub n1: f64,
    pub n0: f64,
    pub m1: f64,
    pub m0: f64,
    pub d1: f64,
    pub d0: f64,
    pub e1: f64,
    pub e0: f64,
}

impl BilinearRatioObjective {
    pub fn new(n: (f64, f64), m: (f64, f64), d: (f64, f64), e: (f64, f64)) -> Self {
        Self { n1: n.0, n0: n.1, m1: m.0, m0: m.1, d1: d.0, d0: d.1, e1: e.0, e0: e.1 }
    }

    pub fn eval(&self, p: f64) -> f64 {
        ((self.n1 * p + self.n0) * (self.m1 * p + self.m0))
            / ((self.d1 * p + self.d0) * (self.e1 * p + self.e0))
    }

    fn denominators_positive_on(&self, iv: Interval) -> bool {
        // Affine factors are monotone, so positivity at both endpoints is
        // positivity on the whole interval.
        let d = |p: f64| self.d1 * p + self.d0;
        let e = |p: f64| self.e1 * p + self.e0;
        d(iv.lo) > 0.0 && d(iv.hi) > 0.0 && e(iv.lo) > 0.0 && e(iv.hi) > 0.0
    }

    /// Coefficients `(q2, q1, q0)` of `q(P) = Q1'(P) Q2(P) - Q1(P) Q2'(P)`,
    /// which has the sign of `f'(P)` wherever the denominator is positive.
    pub fn derivative_quadratic(&self) -> (f64, f64, f64) {
        let a2 = self.n1 * self.m1;
        let a1 = self.n1 * self.m0 + self.n0 * self.m1;
        let a0 = self.n0 * self.m0;
        let b2 = self.d1 * self.e1;
        let b1 = self.d1 * self.e0 + self.d0 * self.e1;
        let b0 = self.d0 * self.e0;
        let q2 = a2 * b1 - a1 * b2;
        let q1 = 2.0 * (a2 * b0 - a0 * b2);
        let q0 = a1 * b0 - a0 * b1;
        (q2, q1, q0)
    }
}

/// A closed interval `[lo, hi]`; `lo > hi` encodes the empty interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn empty() -> Self {
        Self { lo: 1.0, hi: 0.0 }
    }

    pub fn is_empty(&self) -> bool {
        // NaN endpoints also count as empty.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        !(self.lo <= self.hi)
    }

    pub fn intersect(&self, other: Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.min(other.hi) }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.lo <= p && p <= self.hi
    }
}

/// Output of [`maximize_on_interval`]: the argmax, its value, every candidate
/// examined, and the derivative-quadratic roots that fell inside the interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub argmax: f64,
    pub value: f64,
    pub candidates: Vec<(f64, f64)>,
    pub stationary_roots: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FractionalError {
    EmptyInterval,
    /// A denominator factor is not strictly positive somewhere on the
    /// interval; the objective is undefined there.
    DenominatorNonPositive,
}

impl fmt::Display for FractionalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FractionalError::EmptyInterval => f.write_str("empty interval"),
            FractionalError::DenominatorNonPositive => {
                f.write_str("denominator not strictly positive on the interval")
            }
        }
    }
}

impl std::error::Error for FractionalError {}

/// Relative threshold below which the quadratic's leading (then linear)
/// coefficient is treated as zero.
const DEGENERATE_REL: f64 = 1e-14;
/// Roots closer than this to an endpoint are merged into the endpoint.
const ENDPOINT_MERGE: f64 = 1e-12;

/// Real roots of `q2 x^2 + q1 x + q0`, ascending, using the numerically
/// stable formulation that avoids cancellation when `q1^2 >> |4 q2 q0|`.
pub fn quadratic_roots(q2: f64, q1: f64, q0: f64) -> Vec<f64> {
    let scale = q1.abs().max(q0.abs()).max(1.0);
    if q2.abs() < DEGENERATE_REL * scale {
        // Effectively linear.
        if q1.abs() < DEGENERATE_REL * q0.abs().max(1.0) {
            return vec![];
        }
        return vec![-q0 / q1];
    }
    let disc = q1 * q1 - 4.0 * q2 * q0;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    if sq == 0.0 {
        return vec![-q1 / (2.0 * q2)];
    }
    let u = if q1 >= 0.0 { -(q1 + sq) / 2.0 } else { (sq - q1) / 2.0 };
    let (r1, r2) = if u == 0.0 {
        (0.0, -q1 / q2)
    } else {
        (u / q2, q0 / u)
    };
    if r1 <= r2 {
        vec![r1, r2]
    } else {
        vec![r2, r1]
    }
}

/// Maximize the objective on `[iv.lo, iv.hi]` by evaluating the endpoints and
/// every interior root of the derivative quadratic. Ties go to the smaller
/// `P` (transmit power is the currency being saved).
pub fn maximize_on_interval(
    obj: &BilinearRatioObjective,
    iv: Interval,
) -> Result<SolveResult, FractionalError> {
    if iv.is_empty() {
        return Err(FractionalError::EmptyInterval);
    }
    if !obj.denominators_positive_on(iv) {
        return Err(FractionalError::DenominatorNonPositive);
    }

    let (q2, q1, q0) = obj.derivative_quadratic();
    let mut candidates = vec![iv.lo];
    if iv.hi > iv.lo {
        candidates.push(iv.hi);
    }
    let mut stationary_roots = Vec::new();
    for r in quadratic_roots(q2, q1, q0) {
        let merge = |ep: f64| (r - ep).abs() <= ENDPOINT_MERGE * ep.abs().max(1.0);
        if merge(iv.lo) || merge(iv.hi) {
            continue;
        }
        if iv.lo < r && r < iv.hi {
            stationary_roots.push(r);
            candidates.push(r);
        }
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut examined = Vec::with_capacity(candidates.len());
    let mut argmax = candidates[0];
    let mut best = obj.eval(argmax);
    examined.push((argmax, best));
    for &p in &candidates[1..] {
        let v = obj.eval(p);
        examined.push((p, v));
        if v > best {
            best = v;
            argmax = p;
        }
    }

    Ok(SolveResult { argmax, value: best, candidates: examined, stationary_roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EPS: f64 = 1e-9;

    #[test]
    fn derivative_quadratic_worked_example() {
        // f = (2P+1)(P+2)/[(P+1)(3P+2)]  ->  q(P) = -5P^2 - 4P.
        let obj = BilinearRatioObjective::new((2.0, 1.0), (1.0, 2.0), (1.0, 1.0), (3.0, 2.0));
        let (q2, q1, q0) = obj.derivative_quadratic();
        assert_eq!((q2, q1, q0), (-5.0, -4.0, 0.0));
    }

    #[test]
    fn derivative_quadratic_constant_objective() {
        let obj = BilinearRatioObjective::new((0.0, 2.0), (0.0, 3.0), (0.0, 1.0), (0.0, 6.0));
        assert_eq!(obj.derivative_quadratic(), (0.0, 0.0, 0.0));
    }

    #[test]
    fn derivative_quadratic_moebius() {
        // f = (2P+1)/(P+1): q = 2(P+1) - (2P+1) = 1.
        let obj = BilinearRatioObjective::new((2.0, 1.0), (0.0, 1.0), (1.0, 1.0), (0.0, 1.0));
        assert_eq!(obj.derivative_quadratic(), (0.0, 0.0, 1.0));
    }

    #[test]
    fn maximize_monotone_boundary() {
        let obj = BilinearRatioObjective::new((2.0, 1.0), (0.0, 1.0), (1.0, 1.0), (0.0, 1.0));
        let r = maximize_on_interval(&obj, Interval::new(0.0, 3.0)).unwrap();
        assert_eq!(r.argmax, 3.0);
        assert!((r.value - 1.75).abs() < EPS);
        assert!(r.stationary_roots.is_empty());
    }

    #[test]
    fn maximize_strictly_decreasing() {
        // q(P) = -P(5P+4) <= 0 on [0, 10]: max at the left endpoint.
        let obj = BilinearRatioObjective::new((2.0, 1.0), (1.0, 2.0), (1.0, 1.0), (3.0, 2.0));
        let r = maximize_on_interval(&obj, Interval::new(0.0, 10.0)).unwrap();
        assert_eq!(r.argmax, 0.0);
        assert!((r.value - 1.0).abs() < EPS);
        // Independent check against a dense grid.
        let mut grid_best = f64::NEG_INFINITY;
        for i in 0..=100_000 {
            let p = 10.0 * i as f64 / 100_000.0;
            grid_best = grid_best.max(obj.eval(p));
        }
        assert!(r.value >= grid_best - 1e-12);
    }

    #[test]
    fn maximize_interior_root() {
        // f = (2P+0.5)/[(P+1)(0.1P+1)] on [0,10]: interior root of
        // 0.2P^2 + 0.1P - 1.45 = 0 at P ~= 2.4542, value ~= 1.2572.
        let obj = BilinearRatioObjective::new((2.0, 0.5), (0.0, 1.0), (1.0, 1.0), (0.1, 1.0));
        let r = maximize_on_interval(&obj, Interval::new(0.0, 10.0)).unwrap();
        let root = (-0.1 + (0.01f64 + 4.0 * 0.2 * 1.45).sqrt()) / 0.4;
        assert!((r.argmax - root).abs() < 1e-3);
        assert!((r.argmax - 2.4542).abs() < 1e-3);
        assert!((r.value - 1.2572).abs() < 1e-3);
        assert_eq!(r.stationary_roots.len(), 1);
        // Cross-check with a dense grid.
        let mut grid_best = f64::NEG_INFINITY;
        for i in 0..=100_000 {
            let p = 10.0 * i as f64 / 100_000.0;
            grid_best = grid_best.max(obj.eval(p));
        }
        assert!(r.value >= grid_best - 1e-9);
    }

    #[test]
    fn degenerate_constant_returns_lo() {
        let obj = BilinearRatioObjective::new((0.0, 2.0), (0.0, 3.0), (0.0, 1.0), (0.0, 6.0));
        let r = maximize_on_interval(&obj, Interval::new(0.5, 4.0)).unwrap();
        assert_eq!(r.argmax, 0.5);
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn errors() {
        let obj = BilinearRatioObjective::new((1.0, 1.0), (0.0, 1.0), (1.0, 1.0), (0.0, 1.0));
        assert_eq!(
            maximize_on_interval(&obj, Interval::empty()).unwrap_err(),
            FractionalError::EmptyInterval
        );
        // Denominator factor (P - 2) crosses zero on [0, 3].
        let bad = BilinearRatioObjective::new((1.0, 1.0), (0.0, 1.0), (1.0, -2.0), (0.0, 1.0));
        assert_eq!(
            maximize_on_interval(&bad, Interval::new(0.0, 3.0)).unwrap_err(),
            FractionalError::DenominatorNonPositive
        );
    }

    #[test]
    fn quadratic_roots_stability() {
        // q1^2 >> 4 q2 q0: the naive formula would cancel catastrophically.
        let roots = quadratic_roots(1.0, -1e8, 1.0);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1e-8).abs() < 1e-14);
        assert!((roots[1] - 1e8).abs() < 1.0);
        // Double root.
        let roots = quadratic_roots(1.0, -2.0, 1.0);
        assert_eq!(roots, vec![1.0]);
        // No real roots.
        assert!(quadratic_roots(1.0, 0.0, 1.0).is_empty());
    }

    fn arb_objective() -> impl Strategy<Value = BilinearRatioObjective> {
        // Denominator factors built positive on [0, 10]: positive intercept,
        // slope bounded below so the factor stays positive at P = 10.
        let coeff = -2.0..2.0f64;
        let pos = 0.1..5.0f64;
        (coeff.clone(), coeff.clone(), coeff.clone(), coeff, pos.clone(), pos.clone(), pos, 0.1..5.0f64)
            .prop_map(|(n1, n0, m1, m0, d0, e0, ds, es)| {
                // d1 in (-d0/10 * 0.99, ..) keeps d1*10 + d0 > 0.
                let d1 = ds - 0.099 * d0;
                let e1 = es - 0.099 * e0;
                BilinearRatioObjective::new((n1, n0), (m1, m0), (d1, d0), (e1, e0))
            })
    }

    proptest! {
        // Sign of q matches the sign of a central finite difference away from
        // the roots of q.
        #[test]
        fn derivative_sign_matches_finite_differences(obj in arb_objective(), seed in 0u64..1000) {
            let (q2, q1, q0) = obj.derivative_quadratic();
            let roots = quadratic_roots(q2, q1, q0);
            let mut s = seed;
            for _ in 0..100 {
                // Cheap deterministic LCG over the interval interior.
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let p = 0.05 + 9.9 * ((s >> 11) as f64 / (1u64 << 53) as f64);
                if roots.iter().any(|r| (p - r).abs() < 1e-3) {
                    continue;
                }
                let q = (q2 * p + q1) * p + q0;
                let h = 1e-6 * p.max(1.0);
                let fd = obj.eval(p + h) - obj.eval(p - h);
                let qscale = q2.abs().max(q1.abs()).max(q0.abs()).max(1.0);
                if q.abs() > 1e-7 * qscale && fd.abs() > 1e-15 {
                    prop_assert_eq!(q > 0.0, fd > 0.0, "sign mismatch at p={} (q={}, fd={})", p, q, fd);
                }
            }
        }

        // The argmax is always an endpoint or a stationary root.
        #[test]
        fn candidate_set_closure(obj in arb_objective(), lo in 0.0..4.0f64, len in 0.1..6.0f64) {
            let iv = Interval::new(lo, lo + len);
            let r = maximize_on_interval(&obj, iv).unwrap();
            let is_endpoint = r.argmax == iv.lo || r.argmax == iv.hi;
            let is_root = r.stationary_roots.contains(&r.argmax);
            prop_assert!(is_endpoint || is_root);
            // The returned value dominates every examined candidate.
            for &(_, v) in &r.candidates {
                prop_assert!(r.value >= v);
            }
        }
    }
}
