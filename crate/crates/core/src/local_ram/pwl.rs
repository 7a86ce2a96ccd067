//! Exact piecewise-linear functions and integer step functions on
//! rational intervals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Continuous piecewise-linear function on [x₀, x_last], stored as its
/// vertices with collinear interior vertices removed. Two values are equal
/// iff they define the same function on the same domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewiseLinear {
    points: Vec<(Q, Q)>,
}

impl PiecewiseLinear {
    /// Vertices with strictly increasing abscissae, at least two.
    pub fn from_points(points: Vec<(Q, Q)>) -> Self {
        assert!(points.len() >= 2, "need at least two vertices");
        assert!(
            points.windows(2).all(|w| w[0].0 < w[1].0),
            "abscissae must increase"
        );
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(points.len());
        for pt in points {
            if out.len() >= 2 {
                let (x0, y0) = &out[out.len() - 2];
                let (x1, y1) = &out[out.len() - 1];
                let s01 = (y1 - y0) / (x1 - x0);
                let s12 = (&pt.1 - y1) / (&pt.0 - x1);
                if s01 == s12 {
                    out.pop();
                }
            }
            out.push(pt);
        }
        PiecewiseLinear { points: out }
    }

    /// x ↦ x on [lo, hi].
    pub fn identity(lo: Q, hi: Q) -> Self {
        Self::from_points(vec![(lo.clone(), lo), (hi.clone(), hi)])
    }

    pub fn domain(&self) -> (&Q, &Q) {
        (&self.points[0].0, &self.points[self.points.len() - 1].0)
    }

    pub fn vertices(&self) -> &[(Q, Q)] {
        &self.points
    }

    /// Interior vertices, where the slope changes.
    pub fn breakpoints(&self) -> Vec<Q> {
        self.points[1..self.points.len() - 1]
            .iter()
            .map(|(x, _)| x.clone())
            .collect()
    }

    /// Slope of each linear piece, left to right.
    pub fn slopes(&self) -> Vec<Q> {
        self.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.slopes().iter().all(|s| s.is_positive())
    }

    /// Value at x, `None` outside the domain.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return None;
        }
        let idx = self.points.partition_point(|(px, _)| px < x);
        if idx < self.points.len() && &self.points[idx].0 == x {
            return Some(self.points[idx].1.clone());
        }
        let (x0, y0) = &self.points[idx - 1];
        let (x1, y1) = &self.points[idx];
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }

    /// Inverse function; requires strictly increasing.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_strictly_increasing() {
            return None;
        }
        Some(Self::from_points(
            self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        ))
    }

    /// self ∘ inner, on the part of inner's domain mapped into self's
    /// domain. Assumes inner is increasing.
    pub fn compose(&self, inner: &Self) -> Option<Self> {
        let inv = inner.inverse()?;
        let (lo, hi) = self.domain();
        let mut xs: Vec<Q> = inner.points.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(self.points.iter().filter_map(|(y, _)| inv.eval(y)));
        xs.sort();
        xs.dedup();
        let pts: Vec<(Q, Q)> = xs
            .into_iter()
            .filter_map(|x| {
                let y = inner.eval(&x)?;
                if &y < lo || &y > hi {
                    return None;
                }
                Some((x, self.eval(&y)?))
            })
            .collect();
        if pts.len() < 2 {
            return None;
        }
        Some(Self::from_points(pts))
    }

    /// Restriction to [lo, hi] ⊆ domain.
    pub fn restrict(&self, lo: &Q, hi: &Q) -> Option<Self> {
        let (dlo, dhi) = self.domain();
        if lo < dlo || hi > dhi || lo >= hi {
            return None;
        }
        let mut pts = vec![(lo.clone(), self.eval(lo)?)];
        pts.extend(
            self.points
                .iter()
                .filter(|(x, _)| x > lo && x < hi)
                .cloned(),
        );
        pts.push((hi.clone(), self.eval(hi)?));
        Some(Self::from_points(pts))
    }

    /// Continue the last linear piece up to `hi`.
    pub fn extend_to(&self, hi: &Q) -> Self {
        let (_, dhi) = self.domain();
        if hi <= dhi {
            return self.clone();
        }
        let slope = self.slopes().pop().expect("at least one piece");
        let (x1, y1) = self.points.last().unwrap();
        let mut pts = self.points.clone();
        pts.push((hi.clone(), y1 + slope * (hi - x1)));
        Self::from_points(pts)
    }

    /// x ↦ self(x - dx) + dy, on the shifted domain.
    pub fn shift(&self, dx: &Q, dy: &Q) -> Self {
        Self::from_points(
            self.points
                .iter()
                .map(|(x, y)| (x + dx, y + dy))
                .collect(),
        )
    }
}

impl PiecewiseLinear {
    /// One line per vertex: "a=0: 0, slope 1/2", the last without slope.
    pub fn table(&self) -> Vec<String> {
        let slopes = self.slopes();
        self.points
            .iter()
            .enumerate()
            .map(|(i, (x, y))| match slopes.get(i) {
                Some(s) => format!("a={}: {}, slope {}", render_q(x), render_q(y), render_q(s)),
                None => format!("a={}: {}", render_q(x), render_q(y)),
            })
            .collect()
    }
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table().join("; "))
    }
}

/// Integer-valued step function on [start, ∞), left-continuous at its
/// jumps: value `values[0]` on [start, breaks[0]], `values[i]` on
/// (breaks[i-1], breaks[i]], and `values.last()` beyond the last break.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepFunction {
    start: Q,
    breaks: Vec<Q>,
    values: Vec<u64>,
}

impl StepFunction {
    /// Builds and merges equal neighbouring pieces.
    pub fn new(start: Q, breaks: Vec<Q>, values: Vec<u64>) -> Self {
        assert_eq!(values.len(), breaks.len() + 1);
        assert!(breaks.windows(2).all(|w| w[0] < w[1]));
        assert!(breaks.first().map_or(true, |b| *b > start));
        let mut out_b: Vec<Q> = Vec::new();
        let mut out_v: Vec<u64> = vec![values[0]];
        for (b, v) in breaks.into_iter().zip(values.into_iter().skip(1)) {
            if *out_v.last().unwrap() == v {
                continue;
            }
            out_b.push(b);
            out_v.push(v);
        }
        StepFunction {
            start,
            breaks: out_b,
            values: out_v,
        }
    }

    pub fn constant(start: Q, v: u64) -> Self {
        Self::new(start, Vec::new(), vec![v])
    }

    pub fn start(&self) -> &Q {
        &self.start
    }

    pub fn breaks(&self) -> &[Q] {
        &self.breaks
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn eval(&self, x: &Q) -> Option<u64> {
        if x < &self.start {
            return None;
        }
        let idx = self.breaks.partition_point(|b| b < x);
        Some(self.values[idx])
    }

    /// F(x) = ∫_start^x, as a piecewise-linear function on [start, end].
    pub fn integral(&self, end: &Q) -> PiecewiseLinear {
        assert!(end > &self.start);
        let mut pts = vec![(self.start.clone(), Q::zero())];
        let mut acc = Q::zero();
        let mut x0 = self.start.clone();
        for (b, v) in self.breaks.iter().zip(&self.values) {
            if b >= end {
                break;
            }
            acc += (b - &x0) * Q::from_integer((*v).into());
            pts.push((b.clone(), acc.clone()));
            x0 = b.clone();
        }
        let v = self.eval(end).expect("end inside domain");
        acc += (end - &x0) * Q::from_integer(v.into());
        pts.push((end.clone(), acc));
        PiecewiseLinear::from_points(pts)
    }

    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lo = self.start.clone();
        let mut open = false;
        for (b, v) in self.breaks.iter().zip(&self.values) {
            let l = if open { "(" } else { "[" };
            write!(f, "{v} on {l}{lo}, {b}]; ")?;
            lo = b.clone();
            open = true;
        }
        let l = if open { "(" } else { "[" };
        write!(f, "{} on {l}{lo}, inf)", self.values.last().unwrap())
    }
}

/// Render a rational as "num/den" (or "num" for integers).
pub fn render_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
