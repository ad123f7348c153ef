//! Direct solver for a tridiagonal block bordered by two dense rows/columns.
//!
//! The chain block is factored by elimination from its last row upward. For
//! the scattering systems this starts every waveguide at an outgoing (or far)
//! end, where each pivot equals −ξ e^{−ik} and never approaches zero, and it
//! reaches the hard wall of CRW-b last.

use num_complex::Complex64;

use super::hamiltonian::SparseOperator;
use super::OracleError;
use crate::linalg::solve_small;

const BORDER: usize = 2;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone)]
pub struct BorderedSolver {
    chain_len: usize,
    lower: Vec<Complex64>,
    pivots: Vec<Complex64>,
    /// u_i / pivot_{i+1} multipliers of the upward sweep.
    multipliers: Vec<Complex64>,
    /// Border columns restricted to the chain block.
    border_cols: [Vec<(usize, Complex64)>; BORDER],
    /// Border rows restricted to the chain block.
    border_rows: [Vec<(usize, Complex64)>; BORDER],
    /// Chain-block solutions against each border column.
    chain_responses: [Vec<Complex64>; BORDER],
    schur: [[Complex64; BORDER]; BORDER],
}

impl BorderedSolver {
    pub fn factor(matrix: &SparseOperator, chain_len: usize) -> Result<Self, OracleError> {
        if matrix.dim() != chain_len + BORDER {
            return Err(OracleError::Structure(format!(
                "expected {} rows, found {}",
                chain_len + BORDER,
                matrix.dim()
            )));
        }
        let mut lower = vec![ZERO; chain_len];
        let mut diag = vec![ZERO; chain_len];
        let mut upper = vec![ZERO; chain_len];
        let mut border_cols: [Vec<(usize, Complex64)>; BORDER] = Default::default();
        let mut border_rows: [Vec<(usize, Complex64)>; BORDER] = Default::default();
        let mut corner = [[ZERO; BORDER]; BORDER];

        for i in 0..chain_len {
            for &(j, v) in matrix.row(i) {
                if j >= chain_len {
                    border_cols[j - chain_len].push((i, v));
                } else if j == i {
                    diag[i] = v;
                } else if j + 1 == i {
                    lower[i] = v;
                } else if j == i + 1 {
                    upper[i] = v;
                } else {
                    return Err(OracleError::Structure(format!("entry ({i}, {j}) outside the band")));
                }
            }
        }
        for b in 0..BORDER {
            for &(j, v) in matrix.row(chain_len + b) {
                if j >= chain_len {
                    corner[b][j - chain_len] = v;
                } else {
                    border_rows[b].push((j, v));
                }
            }
        }

        let mut pivots = vec![ZERO; chain_len];
        let mut multipliers = vec![ZERO; chain_len];
        if chain_len > 0 {
            pivots[chain_len - 1] = diag[chain_len - 1];
        }
        for i in (0..chain_len).rev() {
            if i + 1 < chain_len {
                multipliers[i] = upper[i] / pivots[i + 1];
                pivots[i] = diag[i] - multipliers[i] * lower[i + 1];
            }
            if pivots[i].norm() == 0.0 || !pivots[i].is_finite() {
                return Err(OracleError::Singular { row: i });
            }
        }

        let mut solver = Self {
            chain_len,
            lower,
            pivots,
            multipliers,
            border_cols,
            border_rows,
            chain_responses: Default::default(),
            schur: corner,
        };
        for b in 0..BORDER {
            let mut col = vec![ZERO; chain_len];
            for &(i, v) in &solver.border_cols[b] {
                col[i] = v;
            }
            solver.chain_responses[b] = solver.solve_chain(col);
        }
        for r in 0..BORDER {
            for c in 0..BORDER {
                let coupling: Complex64 =
                    solver.border_rows[r].iter().map(|&(j, v)| v * solver.chain_responses[c][j]).sum();
                solver.schur[r][c] -= coupling;
            }
        }
        Ok(solver)
    }

    fn solve_chain(&self, mut rhs: Vec<Complex64>) -> Vec<Complex64> {
        let n = self.chain_len;
        for i in (0..n.saturating_sub(1)).rev() {
            let carry = self.multipliers[i] * rhs[i + 1];
            rhs[i] -= carry;
        }
        for i in 0..n {
            let coupled = if i > 0 { self.lower[i] * rhs[i - 1] } else { ZERO };
            rhs[i] = (rhs[i] - coupled) / self.pivots[i];
        }
        rhs
    }

    /// Solves `matrix · x = rhs`.
    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.chain_len;
        let chain = self.solve_chain(rhs[..n].to_vec());
        let mut reduced = [ZERO; BORDER];
        for b in 0..BORDER {
            let coupling: Complex64 = self.border_rows[b].iter().map(|&(j, v)| v * chain[j]).sum();
            reduced[b] = rhs[n + b] - coupling;
        }
        let border = solve_small(self.schur, reduced);
        let mut x = chain;
        for b in 0..BORDER {
            for (xi, yi) in x.iter_mut().zip(&self.chain_responses[b]) {
                *xi -= border[b] * yi;
            }
        }
        x.extend_from_slice(&border);
        x
    }
}
