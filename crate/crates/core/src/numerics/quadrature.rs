//! Adaptive bisection with a 15-point Gauss–Legendre panel rule.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Order of the Gauss–Legendre panel rule.
pub const PANEL_ORDER: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lower: f64,
    pub upper: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Number of equal panels the interval is split into before adapting.
    pub initial_panels: usize,
}

impl QuadratureSpec {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
            initial_panels: 16,
        }
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    pub fn with_initial_panels(mut self, initial_panels: usize) -> Self {
        self.initial_panels = initial_panels;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lower.is_finite() && self.upper.is_finite() && self.lower < self.upper) {
            return Err(Error::InvalidParameter(format!(
                "quadrature bounds must satisfy lower < upper, got [{}, {}]",
                self.lower, self.upper
            )));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_subdivisions < 1 || self.initial_panels < 1 {
            return Err(Error::InvalidParameter(
                "max_subdivisions and initial_panels must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

fn panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let (nodes, weights) = panel_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights) {
        sum += f(mid + half * x) * *w;
    }
    sum * half
}

struct Panel {
    a: f64,
    b: f64,
    left: Complex64,
    right: Complex64,
    error: f64,
}

impl Panel {
    fn new<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, whole: Complex64) -> Self {
        let m = 0.5 * (a + b);
        let left = panel(f, a, m);
        let right = panel(f, m, b);
        let error = (left + right - whole).norm();
        Self {
            a,
            b,
            left,
            right,
            error,
        }
    }

    fn value(&self) -> Complex64 {
        self.left + self.right
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrates a complex-valued integrand over `[spec.lower, spec.upper]`.
///
/// Panels are bisected in order of decreasing error estimate until the
/// summed estimate meets `max(abs_tol, rel_tol·|I|)`. Each panel's error is
/// the difference between its 15-point value and the sum over its halves.
pub fn integrate_complex<F>(f: F, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    spec.validate()?;
    let n0 = spec.initial_panels;
    let width = (spec.upper - spec.lower) / n0 as f64;
    let mut heap = BinaryHeap::with_capacity(n0 + 2 * spec.max_subdivisions);
    let mut evaluations = 0;
    for i in 0..n0 {
        let a = spec.lower + width * i as f64;
        let b = if i + 1 == n0 {
            spec.upper
        } else {
            spec.lower + width * (i + 1) as f64
        };
        let whole = panel(&f, a, b);
        heap.push(Panel::new(&f, a, b, whole));
        evaluations += 3 * PANEL_ORDER;
    }
    let mut subdivisions = 0;
    loop {
        let (value, error) = totals(&heap);
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "integrand produced a non-finite value".into(),
            ));
        }
        if error <= spec.abs_tol.max(spec.rel_tol * value.norm()) {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                subdivisions,
                evaluations,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                estimate: value,
                error_estimate: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let m = 0.5 * (worst.a + worst.b);
        heap.push(Panel::new(&f, worst.a, m, worst.left));
        heap.push(Panel::new(&f, m, worst.b, worst.right));
        evaluations += 4 * PANEL_ORDER;
        subdivisions += 1;
    }
}

/// Sum over panels in left-to-right order so the result does not depend on
/// heap layout.
fn totals(heap: &BinaryHeap<Panel>) -> (Complex64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for p in panels {
        value += p.value();
        error += p.error;
    }
    (value, error)
}
