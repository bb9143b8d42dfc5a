//! Rigid Δ-filtered modules over N_s(A_2) for arbitrary dimension filtrations,
//! built greedily from Δ(x_i), Δ(y_j) and the two-step extensions E(i, j).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::NsqAlgebra;
use crate::linalg::{Field, Matrix};
use crate::qh::{delta_decomposition, standard_module, LayeredIndex, QhError};
use crate::quiver::{DimFiltration, StairArrow};
use crate::repmod::{ext_dim, Module, ModuleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum A2Error {
    #[error("E(i, j) needs s ≥ i > j ≥ 1, got i = {i}, j = {j}, s = {s}")]
    Index { i: usize, j: usize, s: usize },
    #[error("the base quiver is not x → y")]
    NotA2,
    #[error(transparent)]
    Qh(#[from] QhError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

const X: usize = 0;
const Y: usize = 1;

fn check_a2(n: &NsqAlgebra) -> Result<(), A2Error> {
    let q = n.base();
    let ok = q.n_vertices() == 2 && q.n_arrows() == 1 && q.arrows()[0].source == X && q.arrows()[0].target == Y;
    if ok {
        Ok(())
    } else {
        Err(A2Error::NotA2)
    }
}

/// A summand type produced by the algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum A2Summand {
    DeltaX(usize),
    DeltaY(usize),
    E(usize, usize),
}

impl fmt::Display for A2Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A2Summand::DeltaX(i) => write!(f, "Δ(x_{i})"),
            A2Summand::DeltaY(j) => write!(f, "Δ(y_{j})"),
            A2Summand::E(i, j) => write!(f, "E({i},{j})"),
        }
    }
}

/// E(i, j): one-dimensional at x_i..x_s and y_j..y_s, identity verticals, a_t = 1 for t ≥ i.
pub fn e_module(n: &NsqAlgebra, field: Field, i: usize, j: usize) -> Result<Module, A2Error> {
    check_a2(n)?;
    let s = n.s();
    if !(s >= i && i > j && j >= 1) {
        return Err(A2Error::Index { i, j, s });
    }
    let st = n.staircase();
    let lower = |v: usize| if v == X { i } else { j };
    let dims: Vec<usize> = (0..st.quiver().n_vertices())
        .map(|v| {
            let (b, t) = st.split(v);
            usize::from(t >= lower(b))
        })
        .collect();
    let action = st
        .quiver()
        .arrows()
        .iter()
        .zip(st.kinds())
        .map(|(a, k)| {
            let on = match *k {
                StairArrow::Vertical { vertex, layer } => layer >= lower(vertex),
                StairArrow::Diagonal { layer, .. } => layer >= i,
            };
            if on {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dims[a.target], dims[a.source])
            }
        })
        .collect();
    Ok(Module::new(n.algebra(), field, dims, action)?)
}

pub fn summand_module(n: &NsqAlgebra, field: Field, x: A2Summand) -> Result<Module, A2Error> {
    match x {
        A2Summand::DeltaX(i) => Ok(standard_module(n, field, LayeredIndex::new(X, i))),
        A2Summand::DeltaY(j) => Ok(standard_module(n, field, LayeredIndex::new(Y, j))),
        A2Summand::E(i, j) => e_module(n, field, i, j),
    }
}

/// The greedy pairing on Δ-multiplicities, returned as summands with multiplicities.
pub fn a2_summands(n: &NsqAlgebra, dd: &DimFiltration) -> Result<BTreeMap<A2Summand, usize>, A2Error> {
    check_a2(n)?;
    let m = delta_decomposition(n, dd)?;
    let s = n.s();
    let mut xh: Vec<usize> = (1..=s).map(|t| m.at(X, t)).collect();
    let mut yh: Vec<usize> = (1..=s).map(|t| m.at(Y, t)).collect();
    let mut out = BTreeMap::new();
    while let Some(i0) = xh.iter().position(|&c| c > 0) {
        let i = i0 + 1;
        match (0..i0).rev().find(|&j0| yh[j0] > 0) {
            Some(j0) => {
                *out.entry(A2Summand::E(i, j0 + 1)).or_insert(0) += 1;
                yh[j0] -= 1;
            }
            None => *out.entry(A2Summand::DeltaX(i)).or_insert(0) += 1,
        }
        xh[i0] -= 1;
    }
    for (j0, &c) in yh.iter().enumerate() {
        if c > 0 {
            out.insert(A2Summand::DeltaY(j0 + 1), c);
        }
    }
    Ok(out)
}

/// Output of the algorithm with its exact rigidity certificate.
#[derive(Debug, Clone)]
pub struct A2Result {
    pub module: Module,
    pub summands: BTreeMap<A2Summand, usize>,
    pub ext1: usize,
}

pub fn a2_rigid_module(n: &NsqAlgebra, field: Field, dd: &DimFiltration) -> Result<A2Result, A2Error> {
    let summands = a2_summands(n, dd)?;
    let mut parts = Vec::new();
    for (&x, &c) in &summands {
        let m = summand_module(n, field, x)?;
        parts.extend(std::iter::repeat_n(m, c));
    }
    let module = Module::direct_sum_all(n.algebra(), field, &parts.iter().collect::<Vec<_>>());
    let ext1 = ext_dim(&module, &module, 1)?;
    Ok(A2Result { module, summands, ext1 })
}
