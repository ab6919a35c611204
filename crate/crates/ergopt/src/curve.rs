//! The convex piecewise-linear map `t -> max ergodic average of f + t*g`.
//!
//! Every cycle `c` contributes the line `mean_c(f) + t * mean_c(g)`; the
//! curve is the upper envelope of these finitely many lines, so it is convex
//! and piecewise linear with slopes drawn from the cycle `g`-means. The
//! envelope is computed exactly by recursive bisection without enumerating
//! cycles: at a parameter `t` the critical structure of `f + t*g` yields the
//! value and the one-sided slopes (the endpoints of the directional interval
//! of `g`), which pin down the supporting lines to the right and left. Two
//! supporting lines either explain the whole interval between their base
//! points or their intersection exposes a parameter where the curve lies
//! strictly above — each recursion certifies a new slope, and slopes live
//! in a finite set, so the recursion terminates.
//!
//! Breakpoints — the interior parameters where the slope jumps — are exactly
//! the points where the curve is not differentiable.

use crate::critical::critical_structure;
use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::weight::Weight;

/// One affine piece of the envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment<T> {
    pub slope: T,
    pub intercept: T,
}

impl<T: Weight> Segment<T> {
    fn at(&self, t: &T) -> T {
        self.slope.clone() * t.clone() + self.intercept.clone()
    }
}

/// Exact convex piecewise-linear curve on a closed parameter interval.
///
/// `segments[i]` is active on `[x_i, x_{i+1}]` where
/// `x_0 = t_lo < breakpoints[0] < ... < breakpoints[k-1] < x_{k+1} = t_hi`.
/// Slopes increase strictly from segment to segment (equal slopes are merged
/// at construction); values are always recomputed from slope and intercept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaCurve<T> {
    t_lo: T,
    t_hi: T,
    segments: Vec<Segment<T>>,
    breakpoints: Vec<T>,
}

/// Computes the curve of `t -> max ergodic average of (f + t*g)` on
/// `[t_lo, t_hi]`, exactly.
pub fn compute_curve<T: Weight>(
    f: &TransitionGraph<T>,
    g: &TransitionGraph<T>,
    t_lo: &T,
    t_hi: &T,
) -> Result<BetaCurve<T>> {
    if !f.same_structure(g) {
        return Err(Error::EdgeSetMismatch("f and g must weight one edge set".into()));
    }
    if t_lo >= t_hi {
        return Err(Error::InvalidInterval(format!("[{t_lo}, {t_hi}] is empty or reversed")));
    }
    let lo = point_data(f, g, t_lo)?;
    let hi = point_data(f, g, t_hi)?;
    let mut pieces = Vec::new();
    fill_envelope(f, g, t_lo, &lo, t_hi, &hi, &mut pieces)?;

    // merge collinear neighbours (recursion joints inside one segment)
    let mut segments: Vec<Segment<T>> = Vec::new();
    for piece in pieces {
        match segments.last() {
            Some(last) if last.slope == piece.slope => {
                debug_assert_eq!(last.intercept, piece.intercept, "equal slopes must be collinear");
            }
            _ => segments.push(piece),
        }
    }
    let breakpoints: Vec<T> = segments
        .windows(2)
        .map(|pair| {
            // intersection of consecutive supporting lines
            (pair[0].intercept.clone() - pair[1].intercept.clone())
                / (pair[1].slope.clone() - pair[0].slope.clone())
        })
        .collect();
    debug_assert!(breakpoints.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(breakpoints.iter().all(|b| *t_lo < *b && *b < *t_hi));
    debug_assert!(segments.windows(2).all(|w| w[0].slope < w[1].slope));
    Ok(BetaCurve { t_lo: t_lo.clone(), t_hi: t_hi.clone(), segments, breakpoints })
}

/// Value and one-sided slopes of the curve at `t`, from the critical
/// structure of the combined weighting.
struct PointData<T> {
    value: T,
    slope_left: T,
    slope_right: T,
}

fn point_data<T: Weight>(
    f: &TransitionGraph<T>,
    g: &TransitionGraph<T>,
    t: &T,
) -> Result<PointData<T>> {
    let combined = f.combine(g, t)?;
    let cs = critical_structure(&combined)?;
    let interval = cs.directional_interval(g)?;
    Ok(PointData { value: cs.lambda().clone(), slope_left: interval.lower, slope_right: interval.upper })
}

/// Emits the envelope pieces covering `[a, b]` in order, given the data at
/// both ends. The supporting line to the right of `a` has slope
/// `a_data.slope_right`; to the left of `b`, slope `b_data.slope_left`.
fn fill_envelope<T: Weight>(
    f: &TransitionGraph<T>,
    g: &TransitionGraph<T>,
    a: &T,
    a_data: &PointData<T>,
    b: &T,
    b_data: &PointData<T>,
    out: &mut Vec<Segment<T>>,
) -> Result<()> {
    let line_a = Segment {
        slope: a_data.slope_right.clone(),
        intercept: a_data.value.clone() - a_data.slope_right.clone() * a.clone(),
    };
    let line_b = Segment {
        slope: b_data.slope_left.clone(),
        intercept: b_data.value.clone() - b_data.slope_left.clone() * b.clone(),
    };
    debug_assert!(line_a.slope <= line_b.slope, "convexity orders one-sided slopes");
    if line_a.slope == line_b.slope {
        // single affine stretch; both supporting lines coincide
        debug_assert_eq!(line_a.at(b), b_data.value);
        out.push(line_a);
        return Ok(());
    }
    // distinct slopes: supporting lines cross strictly inside (a, b)
    let cross = (line_b.intercept.clone() - line_a.intercept.clone())
        / (line_a.slope.clone() - line_b.slope.clone());
    debug_assert!(*a < cross && cross < *b);
    let cross_data = point_data(f, g, &cross)?;
    if cross_data.value == line_a.at(&cross) {
        // the two lines meet on the curve: they are the whole envelope here
        out.push(line_a);
        out.push(line_b);
        return Ok(());
    }
    // curve lies strictly above both lines at the crossing: new slopes exist
    // on both sides
    fill_envelope(f, g, a, a_data, &cross, &cross_data, out)?;
    fill_envelope(f, g, &cross, &cross_data, b, b_data, out)
}

impl<T: Weight> BetaCurve<T> {
    pub fn domain(&self) -> (&T, &T) {
        (&self.t_lo, &self.t_hi)
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    /// Interior parameters where the slope changes — exactly the points of
    /// non-differentiability.
    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    fn segment_index(&self, t: &T) -> usize {
        self.breakpoints.iter().take_while(|b| *b < t).count()
    }

    /// Exact curve value at `t` in the closed domain.
    pub fn evaluate(&self, t: &T) -> Result<T> {
        if *t < self.t_lo || *t > self.t_hi {
            return Err(Error::OutOfDomain(t.to_string()));
        }
        Ok(self.segments[self.segment_index(t)].at(t))
    }

    /// Left and right derivatives at `t` in the open domain. Equal unless
    /// `t` is a breakpoint.
    pub fn one_sided_derivatives(&self, t: &T) -> Result<(T, T)> {
        if *t <= self.t_lo || *t >= self.t_hi {
            return Err(Error::OutOfDomain(t.to_string()));
        }
        if let Some(pos) = self.breakpoints.iter().position(|b| b == t) {
            return Ok((self.segments[pos].slope.clone(), self.segments[pos + 1].slope.clone()));
        }
        let slope = self.segments[self.segment_index(t)].slope.clone();
        Ok((slope.clone(), slope))
    }

    /// True iff the left and right derivatives at `t` agree.
    pub fn is_differentiable_at(&self, t: &T) -> Result<bool> {
        let (left, right) = self.one_sided_derivatives(t)?;
        Ok(left == right)
    }

    /// The finite exceptional set: all breakpoints (hence Lebesgue-null).
    pub fn nondifferentiability_set(&self) -> Vec<T> {
        self.breakpoints.clone()
    }

    /// Plot-ready table: one record per domain endpoint and breakpoint,
    /// with the adjacent slopes on both sides (endpoint records repeat the
    /// single adjacent slope).
    pub fn table(&self) -> Vec<(T, T, T, T)> {
        let first = &self.segments[0];
        let last = &self.segments[self.segments.len() - 1];
        let mut rows = Vec::with_capacity(self.breakpoints.len() + 2);
        rows.push((
            self.t_lo.clone(),
            first.at(&self.t_lo),
            first.slope.clone(),
            first.slope.clone(),
        ));
        for (i, b) in self.breakpoints.iter().enumerate() {
            rows.push((
                b.clone(),
                self.segments[i].at(b),
                self.segments[i].slope.clone(),
                self.segments[i + 1].slope.clone(),
            ));
        }
        rows.push((
            self.t_hi.clone(),
            last.at(&self.t_hi),
            last.slope.clone(),
            last.slope.clone(),
        ));
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxmean::beta;
    use crate::Rational;
    use num_traits::Signed;

    fn qi(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn two_loops_f() -> TransitionGraph<Rational> {
        TransitionGraph::new(
            2,
            vec![(0, 0, qi(1)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(2))],
        )
        .unwrap()
    }

    fn two_loops_g() -> TransitionGraph<Rational> {
        TransitionGraph::new(
            2,
            vec![(0, 0, qi(1)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(0))],
        )
        .unwrap()
    }

    /// envelope of max(2, 1 + t) on [0, 3]: one breakpoint at 1
    #[test]
    fn worked_example_envelope() {
        let curve = compute_curve(&two_loops_f(), &two_loops_g(), &qi(0), &qi(3)).unwrap();
        assert_eq!(curve.breakpoints(), &[qi(1)]);
        assert_eq!(curve.segments().len(), 2);
        assert_eq!(curve.segments()[0], Segment { slope: qi(0), intercept: qi(2) });
        assert_eq!(curve.segments()[1], Segment { slope: qi(1), intercept: qi(1) });
        assert_eq!(curve.evaluate(&qi(1)).unwrap(), qi(2));
        assert_eq!(curve.evaluate(&q(1, 2)).unwrap(), qi(2));
        assert_eq!(curve.evaluate(&qi(3)).unwrap(), qi(4));
    }

    #[test]
    fn zero_direction_is_one_flat_segment() {
        let f = two_loops_f();
        let zero = f.with_weights(vec![qi(0); 4]).unwrap();
        let curve = compute_curve(&f, &zero, &qi(0), &qi(1)).unwrap();
        assert!(curve.breakpoints().is_empty());
        assert_eq!(curve.segments(), &[Segment { slope: qi(0), intercept: qi(2) }]);
        assert!(curve.nondifferentiability_set().is_empty());
    }

    /// g = f gives the scaling line (1 + t) * beta(f) while 1 + t >= 0
    #[test]
    fn self_direction_is_a_single_scaling_line() {
        let f = two_loops_f();
        let curve = compute_curve(&f, &f, &q(-1, 2), &qi(2)).unwrap();
        assert!(curve.breakpoints().is_empty());
        assert_eq!(curve.segments(), &[Segment { slope: qi(2), intercept: qi(2) }]);
        for t in [q(-1, 2), qi(0), q(3, 4), qi(2)] {
            let expected = (qi(1) + t.clone()) * qi(2);
            assert_eq!(curve.evaluate(&t).unwrap(), expected);
        }
    }

    #[test]
    fn one_sided_derivatives_at_and_off_breakpoints() {
        let curve = compute_curve(&two_loops_f(), &two_loops_g(), &qi(0), &qi(3)).unwrap();
        assert_eq!(curve.one_sided_derivatives(&qi(1)).unwrap(), (qi(0), qi(1)));
        assert_eq!(curve.one_sided_derivatives(&q(1, 2)).unwrap(), (qi(0), qi(0)));
        assert_eq!(curve.one_sided_derivatives(&qi(2)).unwrap(), (qi(1), qi(1)));
        assert!(!curve.is_differentiable_at(&qi(1)).unwrap());
        assert!(curve.is_differentiable_at(&q(1, 2)).unwrap());
        assert_eq!(curve.nondifferentiability_set(), vec![qi(1)]);
    }

    #[test]
    fn domain_edges_are_out_of_open_domain() {
        let curve = compute_curve(&two_loops_f(), &two_loops_g(), &qi(0), &qi(3)).unwrap();
        assert!(matches!(curve.one_sided_derivatives(&qi(0)), Err(Error::OutOfDomain(_))));
        assert!(matches!(curve.one_sided_derivatives(&qi(3)), Err(Error::OutOfDomain(_))));
        assert!(matches!(curve.evaluate(&qi(4)), Err(Error::OutOfDomain(_))));
        assert!(matches!(curve.evaluate(&qi(-1)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn reversed_interval_is_rejected() {
        let err = compute_curve(&two_loops_f(), &two_loops_g(), &qi(3), &qi(0)).unwrap_err();
        assert!(matches!(err, Error::InvalidInterval(_)));
    }

    /// three loops with value/slope pairs (4, 0), (3, 1), (0, 3):
    /// envelope on [0, 3] has breakpoints at 1 and 3/2
    fn three_regimes() -> (TransitionGraph<Rational>, TransitionGraph<Rational>) {
        let arcs_f = vec![
            (0, 0, qi(4)),
            (0, 1, qi(0)),
            (1, 1, qi(3)),
            (1, 2, qi(0)),
            (2, 0, qi(0)),
            (2, 2, qi(0)),
        ];
        let arcs_g = vec![
            (0, 0, qi(0)),
            (0, 1, qi(0)),
            (1, 1, qi(1)),
            (1, 2, qi(0)),
            (2, 0, qi(0)),
            (2, 2, qi(3)),
        ];
        (
            TransitionGraph::new(3, arcs_f).unwrap(),
            TransitionGraph::new(3, arcs_g).unwrap(),
        )
    }

    #[test]
    fn two_breakpoint_envelope() {
        let (f, g) = three_regimes();
        let curve = compute_curve(&f, &g, &qi(0), &qi(3)).unwrap();
        assert_eq!(curve.breakpoints(), &[qi(1), q(3, 2)]);
        let slopes: Vec<Rational> = curve.segments().iter().map(|s| s.slope.clone()).collect();
        assert_eq!(slopes, vec![qi(0), qi(1), qi(3)]);
        assert_eq!(curve.nondifferentiability_set(), vec![qi(1), q(3, 2)]);
        assert_eq!(curve.evaluate(&qi(1)).unwrap(), qi(4));
        assert_eq!(curve.evaluate(&q(3, 2)).unwrap(), q(9, 2));
    }

    /// pointwise agreement with freshly recomputed maxima on a rational grid
    #[test]
    fn envelope_matches_fresh_beta_everywhere() {
        let (f, g) = three_regimes();
        let curve = compute_curve(&f, &g, &qi(0), &qi(3)).unwrap();
        for j in 0..=60 {
            let t = q(j, 20);
            let fresh = beta(&f.combine(&g, &t).unwrap()).unwrap();
            assert_eq!(curve.evaluate(&t).unwrap(), fresh, "mismatch at t = {t}");
        }
    }

    /// convexity and the Lipschitz bound by the direction's sup norm
    #[test]
    fn midpoint_convexity_and_lipschitz() {
        let (f, g) = three_regimes();
        let curve = compute_curve(&f, &g, &qi(0), &qi(3)).unwrap();
        let sup = g.weights().map(|w| w.abs()).max().unwrap();
        for i in 0..=12 {
            for j in (i + 1)..=12 {
                let (a, b) = (q(i, 4), q(j, 4));
                let va = curve.evaluate(&a).unwrap();
                let vb = curve.evaluate(&b).unwrap();
                let mid = (a.clone() + b.clone()) / qi(2);
                assert!(
                    curve.evaluate(&mid).unwrap() <= (va.clone() + vb.clone()) / qi(2),
                    "midpoint convexity fails on [{a}, {b}]"
                );
                assert!(
                    (va - vb).abs() <= sup.clone() * (a.clone() - b.clone()).abs(),
                    "Lipschitz bound fails on [{a}, {b}]"
                );
            }
        }
    }

    #[test]
    fn table_rows_cover_endpoints_and_breakpoints() {
        let curve = compute_curve(&two_loops_f(), &two_loops_g(), &qi(0), &qi(3)).unwrap();
        let table = curve.table();
        assert_eq!(table.len(), 3);
        assert_eq!(table[0], (qi(0), qi(2), qi(0), qi(0)));
        assert_eq!(table[1], (qi(1), qi(2), qi(0), qi(1)));
        assert_eq!(table[2], (qi(3), qi(4), qi(1), qi(1)));
    }
}
