#![allow(dead_code)]

use num_complex::Complex;
use proptest::prelude::*;
use qsep_core::{BellState, CMatrix};

/// A random 2x2 density matrix `G G^dagger / Tr(G G^dagger)`.
pub fn density2() -> impl Strategy<Value = CMatrix> {
    prop::array::uniform8(-1.0f64..1.0).prop_filter_map("degenerate", |g| {
        let gm = CMatrix::from_row_major(
            2,
            vec![
                Complex::new(g[0], g[1]),
                Complex::new(g[2], g[3]),
                Complex::new(g[4], g[5]),
                Complex::new(g[6], g[7]),
            ],
        )
        .unwrap();
        let rho = &gm * &gm.adjoint();
        let tr = rho.trace().re;
        (tr > 1e-3).then(|| rho.scale(1.0 / tr))
    })
}

/// A random Hermitian matrix of dimension `dim`.
pub fn hermitian(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim).prop_map(move |v| {
        let g =
            CMatrix::from_row_major(dim, v.chunks(2).map(|c| Complex::new(c[0], c[1])).collect())
                .unwrap();
        (&g + &g.adjoint()).scale(0.5)
    })
}

/// Uniform point of the physical tetrahedron, by rejection from [-3, 1]^3.
pub fn physical_state() -> impl Strategy<Value = BellState> {
    (-3.0f64..=1.0, -3.0f64..=1.0, -3.0f64..=1.0)
        .prop_map(|(x, y, z)| BellState::new(x, y, z))
        .prop_filter("unphysical", |s| s.is_physical())
}

/// Grid over [-3, 1]^3 restricted to physical points.
pub fn physical_grid(points: usize) -> Vec<BellState> {
    let step = 4.0 / (points - 1) as f64;
    let mut out = Vec::new();
    for i in 0..points {
        for j in 0..points {
            for k in 0..points {
                let s = BellState::new(
                    -3.0 + step * i as f64,
                    -3.0 + step * j as f64,
                    -3.0 + step * k as f64,
                );
                if s.is_physical() {
                    out.push(s);
                }
            }
        }
    }
    out
}
