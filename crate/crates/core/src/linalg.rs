use num_complex::Complex64;

/// Solves a small dense complex system by Gaussian elimination with full pivoting.
///
/// A pivot that is zero relative to the matrix scale marks an undetermined
/// direction (a bound state decoupled from the continuum); the corresponding
/// unknown is set to zero and the rest of the solution stays well defined.
pub(crate) fn solve_small<const N: usize>(mut m: [[Complex64; N]; N], mut rhs: [Complex64; N]) -> [Complex64; N] {
    // Rows carry different units; equilibrate before judging pivots.
    for (row, b) in m.iter_mut().zip(rhs.iter_mut()) {
        let scale = row.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if scale > 0.0 {
            row.iter_mut().for_each(|z| *z /= scale);
            *b /= scale;
        }
    }
    let tiny = 8.0 * f64::EPSILON;
    let mut col_of: [usize; N] = std::array::from_fn(|i| i);
    let mut rank = N;

    for step in 0..N {
        let (mut pr, mut pc, mut best) = (step, step, -1.0);
        for (r, row) in m.iter().enumerate().skip(step) {
            for (c, z) in row.iter().enumerate().skip(step) {
                if z.norm() > best {
                    (pr, pc, best) = (r, c, z.norm());
                }
            }
        }
        if best <= tiny {
            rank = step;
            break;
        }
        m.swap(step, pr);
        rhs.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
            col_of.swap(step, pc);
        }
        let pivot = m[step][step];
        for r in step + 1..N {
            let factor = m[r][step] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in step..N {
                let sub = factor * m[step][c];
                m[r][c] -= sub;
            }
            let sub = factor * rhs[step];
            rhs[r] -= sub;
        }
    }

    let mut y = [Complex64::new(0.0, 0.0); N];
    for i in (0..rank).rev() {
        let mut acc = rhs[i];
        for c in i + 1..rank {
            acc -= m[i][c] * y[c];
        }
        y[i] = acc / m[i][i];
    }
    let mut x = [Complex64::new(0.0, 0.0); N];
    for (i, &col) in col_of.iter().enumerate() {
        x[col] = y[i];
    }
    x
}
