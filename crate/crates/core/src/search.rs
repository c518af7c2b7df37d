//! One-dimensional global minimization: a dense grid pass followed by
//! golden-section refinement around the best grid points.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizer and value found by a search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub arg: f64,
    pub value: f64,
}

/// Golden-section search for a local minimum of `f` on `[a, b]`.
///
/// Stops once the bracket is narrower than `xtol`. The endpoints are also
/// compared so that a monotone function returns the boundary value.
pub fn golden_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, xtol: f64) -> Extremum {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut best = {
        let fa = f(lo);
        let fb = f(hi);
        if fb < fa {
            Extremum { arg: hi, value: fb }
        } else {
            Extremum { arg: lo, value: fa }
        }
    };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iters = 0;
    while hi - lo > xtol && iters < 200 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iters += 1;
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v < best.value {
            best = Extremum { arg: x, value: v };
        }
    }
    best
}

/// Settings for [`grid_min`].
#[derive(Debug, Clone, Copy)]
pub struct GridSearch {
    /// Maximum grid spacing.
    pub step: f64,
    /// Number of best grid points refined by golden section.
    pub refine_best: usize,
    /// Bracket width at which refinement stops.
    pub xtol: f64,
}

impl GridSearch {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            refine_best: 4,
            xtol: 1e-9,
        }
    }
}

/// Uniform grid on `[a, b]` with spacing at most `step`, endpoints included.
pub fn grid(a: f64, b: f64, step: f64) -> Vec<f64> {
    if b <= a {
        return vec![a];
    }
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| if i == n { b } else { a + (b - a) * i as f64 / n as f64 })
        .collect()
}

/// Global minimum of `f` over `[a, b]`: grid pass, then golden refinement in
/// the neighbouring cells of the `refine_best` lowest local grid minima.
///
/// Also returns the grid samples so callers can build diagnostics.
pub fn grid_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: GridSearch) -> (Extremum, Vec<(f64, f64)>) {
    let xs = grid(a, b, opts.step);
    let samples: Vec<(f64, f64)> = xs.iter().map(|&x| (x, f(x))).collect();
    let n = samples.len();

    let mut candidates: Vec<usize> = (0..n)
        .filter(|&i| {
            let v = samples[i].1;
            (i == 0 || v <= samples[i - 1].1) && (i + 1 == n || v <= samples[i + 1].1)
        })
        .collect();
    candidates.sort_by(|&i, &j| samples[i].1.total_cmp(&samples[j].1));
    candidates.truncate(opts.refine_best.max(1));

    let mut best = samples
        .iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .map(|&(arg, value)| Extremum { arg, value })
        .unwrap_or(Extremum {
            arg: a,
            value: f64::NAN,
        });

    for i in candidates {
        let lo = samples[i.saturating_sub(1)].0;
        let hi = samples[(i + 1).min(n - 1)].0;
        if hi > lo {
            let e = golden_min(f, lo, hi, opts.xtol);
            if e.value < best.value {
                best = e;
            }
        }
    }
    (best, samples)
}

/// Global maximum, by minimizing `-f`.
pub fn grid_max<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: GridSearch) -> Extremum {
    let neg = |x: f64| -f(x);
    let (e, _) = grid_min(&neg, a, b, opts);
    Extremum {
        arg: e.arg,
        value: -e.value,
    }
}
