//! Deterministic derivative-free maximization in two variables.
//!
//! The objectives here (daemonic value over Bloch angles, switch output
//! value over purification parameters) are smooth and low-dimensional, so a
//! coarse global grid followed by a Nelder-Mead simplex from the grid argmax
//! converges quickly and, with fixed seed points and tie-breaking, is fully
//! reproducible.

/// Value improvements at or below this are treated as plateau noise: the
/// incumbent point, earlier in the deterministic scan order, is kept. The
/// objectives here can be exactly flat along whole parameter directions
/// (φ at a basis-state purification, the measurement azimuth at α = 0), and
/// without this cushion the argmax would land wherever rounding noise
/// happened to peak.
pub const TIE_TOL: f64 = 1e-12;

/// Result of a 2D maximization.
#[derive(Debug, Clone, Copy)]
pub struct Maximum {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

impl Maximum {
    /// Replaces `self` when `other` improves by more than [`TIE_TOL`].
    pub fn take_if_better(&mut self, other: Maximum) {
        if other.value > self.value + TIE_TOL {
            *self = other;
        }
    }
}

/// Scans `f` over the Cartesian grid of `xs` × `ys` and returns the best
/// point. Ties (within [`TIE_TOL`]) keep the lexicographically smallest
/// (x index, y index).
pub fn grid_argmax(xs: &[f64], ys: &[f64], mut f: impl FnMut(f64, f64) -> f64) -> Maximum {
    assert!(!xs.is_empty() && !ys.is_empty());
    let mut best = Maximum {
        x: xs[0],
        y: ys[0],
        value: f64::NEG_INFINITY,
    };
    for &x in xs {
        for &y in ys {
            let value = f(x, y);
            if value > best.value + TIE_TOL {
                best = Maximum { x, y, value };
            }
        }
    }
    best
}

/// `n` evenly spaced values covering [lo, hi] inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

/// `n` evenly spaced values over [lo, hi) — for periodic coordinates.
pub fn linspace_open(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1);
    let step = (hi - lo) / n as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

/// Nelder-Mead refinement of a maximum from `start`, with initial simplex
/// edge `scale`. Stops when the simplex value spread drops below `value_tol`
/// or after `max_iter` reflections. Returns the best vertex ever seen.
pub fn nelder_mead_2d(
    mut f: impl FnMut(f64, f64) -> f64,
    start: (f64, f64),
    scale: (f64, f64),
    value_tol: f64,
    max_iter: usize,
) -> Maximum {
    // minimize the negated objective with the textbook coefficients
    let mut g = |p: [f64; 2]| -f(p[0], p[1]);
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex = [
        [start.0, start.1],
        [start.0 + scale.0, start.1],
        [start.0, start.1 + scale.1],
    ];
    let mut values = simplex.map(&mut g);

    for _ in 0..max_iter {
        // order ascending by value (best first); stable by construction
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        if (values[2] - values[0]).abs() <= value_tol {
            break;
        }

        let centroid = [
            (simplex[0][0] + simplex[1][0]) / 2.0,
            (simplex[0][1] + simplex[1][1]) / 2.0,
        ];
        let reflect = [
            centroid[0] + alpha * (centroid[0] - simplex[2][0]),
            centroid[1] + alpha * (centroid[1] - simplex[2][1]),
        ];
        let fr = g(reflect);

        if fr < values[0] {
            let expand = [
                centroid[0] + gamma * (reflect[0] - centroid[0]),
                centroid[1] + gamma * (reflect[1] - centroid[1]),
            ];
            let fe = g(expand);
            if fe < fr {
                simplex[2] = expand;
                values[2] = fe;
            } else {
                simplex[2] = reflect;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflect;
            values[2] = fr;
        } else {
            let contract = [
                centroid[0] + rho * (simplex[2][0] - centroid[0]),
                centroid[1] + rho * (simplex[2][1] - centroid[1]),
            ];
            let fc = g(contract);
            if fc < values[2] {
                simplex[2] = contract;
                values[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        simplex[0][0] + sigma * (simplex[i][0] - simplex[0][0]),
                        simplex[0][1] + sigma * (simplex[i][1] - simplex[0][1]),
                    ];
                    values[i] = g(simplex[i]);
                }
            }
        }
    }

    let best = (0..3)
        .min_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap())
        .unwrap();
    Maximum {
        x: simplex[best][0],
        y: simplex[best][1],
        value: -values[best],
    }
}

/// Axis-aligned greedy polish with halving steps.
///
/// The simplex above can collapse along a value-flat ridge and stall half a
/// grid cell off the maximum; this pass cannot. From `start`, each level
/// greedily takes ±x/±y moves that improve by more than [`TIE_TOL`], then
/// halves both steps, for `levels` halvings from the initial `scale`.
pub fn compass_polish_2d(
    mut f: impl FnMut(f64, f64) -> f64,
    start: Maximum,
    scale: (f64, f64),
    levels: usize,
    max_evals: usize,
) -> Maximum {
    let mut best = start;
    let (mut sx, mut sy) = scale;
    let mut evals = 0usize;
    for _ in 0..levels {
        loop {
            let candidates = [
                (best.x + sx, best.y),
                (best.x - sx, best.y),
                (best.x, best.y + sy),
                (best.x, best.y - sy),
            ];
            let mut improved = false;
            for (x, y) in candidates {
                if evals >= max_evals {
                    return best;
                }
                let value = f(x, y);
                evals += 1;
                if value > best.value + TIE_TOL {
                    best = Maximum { x, y, value };
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        sx *= 0.5;
        sy *= 0.5;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refines_smooth_peak_to_tolerance() {
        let f = |x: f64, y: f64| 1.0 - (x - 0.3).powi(2) - 2.0 * (y + 0.7).powi(2);
        let coarse = grid_argmax(&linspace(-2.0, 2.0, 9), &linspace(-2.0, 2.0, 9), f);
        let refined = nelder_mead_2d(f, (coarse.x, coarse.y), (0.5, 0.5), 1e-12, 400);
        assert!((refined.value - 1.0).abs() <= 1e-9);
        assert!((refined.x - 0.3).abs() <= 1e-4);
        assert!((refined.y + 0.7).abs() <= 1e-4);
    }

    #[test]
    fn grid_tie_break_is_lexicographic() {
        let flat = |_: f64, _: f64| 1.0;
        let m = grid_argmax(&[0.0, 1.0], &[0.0, 1.0], flat);
        assert_eq!((m.x, m.y), (0.0, 0.0));
        // plateau noise below TIE_TOL does not move the argmax
        let noisy = |x: f64, y: f64| 1.0 + 1e-14 * (x + y);
        let m = grid_argmax(&[0.0, 1.0], &[0.0, 1.0], noisy);
        assert_eq!((m.x, m.y), (0.0, 0.0));
    }

    #[test]
    fn compass_polish_resolves_flat_ridge() {
        // flat in y, curved in x: the simplex failure mode
        let f = |x: f64, _: f64| -(x - 0.37).powi(2);
        let start = Maximum {
            x: 0.3,
            y: 1.0,
            value: f(0.3, 1.0),
        };
        let m = compass_polish_2d(f, start, (0.05, 0.05), 40, 4000);
        assert!((m.value - 0.0).abs() <= 1e-12);
        assert!((m.x - 0.37).abs() <= 1e-6);
        // never walks along the flat direction
        assert_eq!(m.y, 1.0);
    }

    #[test]
    fn linspace_covers_endpoints() {
        let v = linspace(0.0, 1.0, 5);
        assert_eq!(v.first().copied(), Some(0.0));
        assert_eq!(v.last().copied(), Some(1.0));
        let open = linspace_open(0.0, 1.0, 4);
        assert_eq!(open, vec![0.0, 0.25, 0.5, 0.75]);
    }
}
