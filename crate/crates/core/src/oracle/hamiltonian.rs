use num_complex::Complex64;

use crate::params::RouterParams;

/// Index map of the truncated single-excitation basis.
///
/// Order: CRW-a sites u = −L..=L, CRW-b sites v = 1..=N+len_b, then |f⟩, |e⟩.
/// The waveguide sites form a tridiagonal "chain block"; |f⟩ and |e⟩ border it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeLayout {
    pub half_len_a: usize,
    pub n_junction: usize,
    pub len_b: usize,
}

impl LatticeLayout {
    pub fn new(half_len_a: usize, n_junction: u32, len_b: usize) -> Self {
        Self { half_len_a, n_junction: n_junction as usize, len_b }
    }

    pub fn a_sites(&self) -> usize {
        2 * self.half_len_a + 1
    }

    /// Largest kept index v on CRW-b.
    pub fn b_last(&self) -> usize {
        self.n_junction + self.len_b
    }

    pub fn chain_len(&self) -> usize {
        self.a_sites() + self.b_last()
    }

    pub fn dim(&self) -> usize {
        self.chain_len() + 2
    }

    pub fn a(&self, u: i64) -> usize {
        debug_assert!(u.unsigned_abs() as usize <= self.half_len_a);
        (u + self.half_len_a as i64) as usize
    }

    pub fn b(&self, v: usize) -> usize {
        debug_assert!((1..=self.b_last()).contains(&v));
        self.a_sites() + v - 1
    }

    pub fn f(&self) -> usize {
        self.chain_len()
    }

    pub fn e(&self) -> usize {
        self.chain_len() + 1
    }

    pub fn a_range(&self) -> std::ops::RangeInclusive<i64> {
        -(self.half_len_a as i64)..=self.half_len_a as i64
    }
}

/// Row-wise sparse complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self { rows: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `value` to entry (i, j).
    pub fn add(&mut self, i: usize, j: usize, value: Complex64) {
        match self.rows[i].iter_mut().find(|(c, _)| *c == j) {
            Some((_, v)) => *v += value,
            None => {
                self.rows[i].push((j, value));
                self.rows[i].sort_by_key(|(c, _)| *c);
            }
        }
    }

    /// Adds a real symmetric pair (i, j) and (j, i); skips exact zeros.
    fn add_symmetric(&mut self, i: usize, j: usize, value: f64) {
        if value != 0.0 {
            self.add(i, j, Complex64::new(value, 0.0));
            self.add(j, i, Complex64::new(value, 0.0));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.rows[i].iter().find(|(c, _)| *c == j).map_or(Complex64::new(0.0, 0.0), |(_, v)| *v)
    }

    pub fn row(&self, i: usize) -> &[(usize, Complex64)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.rows.iter().map(|row| row.iter().map(|(c, v)| v * x[*c]).sum()).collect()
    }

    /// `shift · I + scale · self`.
    pub fn affine(&self, shift: Complex64, scale: Complex64) -> Self {
        let mut out =
            Self { rows: self.rows.iter().map(|row| row.iter().map(|(c, v)| (*c, scale * v)).collect()).collect() };
        for i in 0..out.dim() {
            out.add(i, i, shift);
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| row.iter().all(|(j, v)| self.get(*j, i) == v.conj()))
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.dim();
        let mut dense = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                dense[i][*j] = *v;
            }
        }
        dense
    }
}

/// Single-excitation Hamiltonian of the truncated T-bulge, no elimination.
///
/// The waveguide and |f⟩ states carry one c-mode photon, so their diagonals
/// include ω_c; the |e⟩ state has absorbed it and sits at ω_e alone.
/// Site u = 0 and site v = N are not linked directly; v = 1 ends at a hard wall.
pub fn assemble_hamiltonian(params: &RouterParams, layout: &LatticeLayout) -> SparseOperator {
    let mut h = SparseOperator::zeros(layout.dim());
    let on = |x: f64| Complex64::new(x, 0.0);

    for u in layout.a_range() {
        h.add(layout.a(u), layout.a(u), on(params.omega_a + params.omega_c));
        if u < layout.half_len_a as i64 {
            h.add_symmetric(layout.a(u), layout.a(u + 1), -params.xi_a);
        }
    }
    for v in 1..=layout.b_last() {
        h.add(layout.b(v), layout.b(v), on(params.omega_b + params.omega_c));
        if v < layout.b_last() {
            h.add_symmetric(layout.b(v), layout.b(v + 1), -params.xi_b);
        }
    }
    h.add(layout.f(), layout.f(), on(params.omega_f + params.omega_c));
    h.add(layout.e(), layout.e(), on(params.omega_e));
    h.add_symmetric(layout.a(0), layout.f(), params.g_a);
    h.add_symmetric(layout.b(layout.n_junction), layout.f(), params.g_b);
    h.add_symmetric(layout.f(), layout.e(), params.g_c);
    h
}
