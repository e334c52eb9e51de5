//! Scalar root bracketing and bisection.

/// Bisects `f` on `[lo, hi]`, which must bracket a sign change.
///
/// Stops once the bracket is narrower than `tol` or stops shrinking in
/// floating point.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < tol || mid <= lo || mid >= hi {
            return mid;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Scans `[lo, hi]` with `probes` uniform intervals and returns every bracket
/// `(a, b)` across which `f` changes sign, in increasing order.
pub fn sign_changes<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, probes: usize) -> Vec<(f64, f64)> {
    let step = (hi - lo) / probes as f64;
    let mut out = Vec::new();
    let mut a = lo;
    let mut fa = f(a);
    for k in 1..=probes {
        let b = if k == probes { hi } else { lo + step * k as f64 };
        let fb = f(b);
        if fa == 0.0 || (fa < 0.0) != (fb < 0.0) {
            out.push((a, b));
        }
        a = b;
        fa = fb;
    }
    out
}
