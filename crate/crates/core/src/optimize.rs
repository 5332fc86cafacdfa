//! Small derivative-free and quasi-Newton optimizers used by the solvers.

/// Golden-section search for a maximum of `f` on `[lo, hi]`, assuming `f` is
/// unimodal there. Stops once the bracket is narrower than `tol`.
///
/// Returns `(x_max, f_max)`.
pub fn golden_max<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // The endpoints themselves are never sampled; compare them too so that
    // maxima sitting on the bracket edge are not lost.
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [a, b] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Options for [`multistart_max`].
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Points in the uniform pre-scan.
    pub grid: usize,
    /// Minimum number of grid points refined by golden section.
    pub starts: usize,
    /// Final bracket width.
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            grid: 257,
            starts: 8,
            tol: 1e-12,
        }
    }
}

/// Global maximization of a scalar function on `[lo, hi]`.
///
/// A uniform pre-scan selects every local maximum of the sampled values plus
/// the best `starts` samples; each is refined by golden section inside its
/// neighbouring grid cells. Ties are broken towards the smaller abscissa.
pub fn multistart_max<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, opts: ScanOptions) -> (f64, f64) {
    let n = opts.grid.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();

    let mut starts: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || fs[i] >= fs[i - 1];
            let right = i == n - 1 || fs[i] >= fs[i + 1];
            left && right
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| fs[j].total_cmp(&fs[i]).then(i.cmp(&j)));
    starts.extend(order.into_iter().take(opts.starts));
    starts.sort_unstable();
    starts.dedup();

    let mut best = (xs[0], fs[0]);
    for (&x, &fx) in xs.iter().zip(&fs) {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    for i in starts {
        let a = xs[i.saturating_sub(1)];
        let b = xs[(i + 1).min(n - 1)];
        let cand = golden_max(f, a, b, opts.tol);
        if cand.1 > best.1 || (cand.1 == best.1 && cand.0 < best.0) {
            best = cand;
        }
    }
    best
}

/// Bisection for a root of `g` on `[a, b]` given `g(a) > 0 > g(b)` (or the
/// reverse). Stops when `|g| <= gtol` or the bracket collapses.
pub fn bisect<G: Fn(f64) -> f64>(g: &G, mut a: f64, mut b: f64, gtol: f64) -> (f64, f64) {
    let mut ga = g(a);
    let mut mid = 0.5 * (a + b);
    let mut gm = g(mid);
    for _ in 0..200 {
        mid = 0.5 * (a + b);
        gm = g(mid);
        if gm.abs() <= gtol || mid <= a || mid >= b {
            break;
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    (mid, gm)
}

/// Result of [`bfgs_minimize`].
#[derive(Clone, Debug)]
pub struct BfgsResult<const N: usize> {
    pub x: [f64; N],
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
}

/// BFGS with an Armijo backtracking line search on a fixed-dimension problem.
pub fn bfgs_minimize<const N: usize, F, G>(f: &F, grad: &G, x0: [f64; N], gtol: f64, max_iter: usize) -> BfgsResult<N>
where
    F: Fn(&[f64; N]) -> f64,
    G: Fn(&[f64; N]) -> [f64; N],
{
    let mut x = x0;
    let mut fx = f(&x);
    let mut g = grad(&x);
    let mut h = [[0.0; N]; N];
    for (i, row) in h.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let norm = |v: &[f64; N]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let mut iterations = 0;
    while iterations < max_iter {
        if norm(&g) <= gtol {
            break;
        }
        iterations += 1;
        let mut dir = [0.0; N];
        for i in 0..N {
            dir[i] = -(0..N).map(|j| h[i][j] * g[j]).sum::<f64>();
        }
        let mut slope: f64 = (0..N).map(|i| dir[i] * g[i]).sum();
        if slope >= 0.0 {
            // Lost positive definiteness; restart from steepest descent.
            for (i, row) in h.iter_mut().enumerate() {
                *row = [0.0; N];
                row[i] = 1.0;
            }
            dir = g.map(|v| -v);
            slope = -(0..N).map(|i| g[i] * g[i]).sum::<f64>();
        }
        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut xn = x;
            for i in 0..N {
                xn[i] += step * dir[i];
            }
            let fxn = f(&xn);
            if fxn <= fx + 1e-4 * step * slope {
                accepted = Some((xn, fxn));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fxn)) = accepted else { break };
        let gn = grad(&xn);
        let s: [f64; N] = std::array::from_fn(|i| xn[i] - x[i]);
        let y: [f64; N] = std::array::from_fn(|i| gn[i] - g[i]);
        let sy: f64 = (0..N).map(|i| s[i] * y[i]).sum();
        if sy > 1e-300 {
            let rho = 1.0 / sy;
            let hy: [f64; N] = std::array::from_fn(|i| (0..N).map(|j| h[i][j] * y[j]).sum());
            let yhy: f64 = (0..N).map(|i| y[i] * hy[i]).sum();
            for i in 0..N {
                for j in 0..N {
                    h[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        let progress = fx - fxn;
        x = xn;
        fx = fxn;
        g = gn;
        if progress == 0.0 && norm(&s) == 0.0 {
            break;
        }
    }
    BfgsResult {
        x,
        value: fx,
        grad_norm: norm(&g),
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_quadratic_peak() {
        let (x, fx) = golden_max(&|x: f64| -(x - 0.3).powi(2), -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!(fx.abs() < 1e-12);
    }

    #[test]
    fn golden_handles_kink_and_edges() {
        let (x, _) = golden_max(&|x: f64| -(x - 0.25).abs(), 0.0, 1.0, 1e-13);
        assert!((x - 0.25).abs() < 1e-12);
        let (x, _) = golden_max(&|x: f64| x, 0.0, 1.0, 1e-12);
        assert_eq!(x, 1.0);
    }

    #[test]
    fn multistart_picks_global_of_bimodal() {
        let f = |x: f64| (-(x + 2.0).powi(2)).exp() + 1.5 * (-(x - 3.0).powi(2) * 4.0).exp();
        let (x, _) = multistart_max(&f, -10.0, 10.0, ScanOptions::default());
        assert!((x - 3.0).abs() < 1e-3);
    }

    #[test]
    fn bfgs_rosenbrock() {
        let f = |v: &[f64; 2]| (1.0 - v[0]).powi(2) + 100.0 * (v[1] - v[0] * v[0]).powi(2);
        let g = |v: &[f64; 2]| {
            [
                -2.0 * (1.0 - v[0]) - 400.0 * v[0] * (v[1] - v[0] * v[0]),
                200.0 * (v[1] - v[0] * v[0]),
            ]
        };
        let r = bfgs_minimize(&f, &g, [-1.2, 1.0], 1e-10, 1000);
        assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn bisect_root() {
        let (x, _) = bisect(&|x: f64| 2.0 - x * x, 0.0, 2.0, 1e-14);
        assert!((x - 2f64.sqrt()).abs() < 1e-12);
    }
}
