//! Standard, costandard and tilting modules of N_s(Q), Δ-filtration tests and
//! Δ-dimension vectors.

use std::fmt;

use serde::Serialize;

use crate::algebra::NsqAlgebra;
use crate::linalg::{Field, Matrix};
use crate::quiver::{DimFiltration, DimVector, StairArrow};
use crate::repmod::{self, Module, Subspace};

/// The simple S(i_t): base vertex `i`, layer `t` in 1..=s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LayeredIndex {
    pub vertex: usize,
    pub layer: usize,
}

impl LayeredIndex {
    pub fn new(vertex: usize, layer: usize) -> LayeredIndex {
        LayeredIndex { vertex, layer }
    }
}

impl fmt::Display for LayeredIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vertex, self.layer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QhError {
    #[error("negative Δ-multiplicity {value} at vertex {vertex} layer {layer}")]
    NegativeMultiplicity { vertex: String, layer: usize, value: i64 },
    #[error("dimension vector has {got} layers of length {got_n}, expected {s} of length {n}")]
    WrongShape { s: usize, n: usize, got: usize, got_n: usize },
}

fn check_index(n: &NsqAlgebra, idx: LayeredIndex) {
    assert!(
        idx.vertex < n.base().n_vertices() && (1..=n.s()).contains(&idx.layer),
        "layered index {idx} out of range"
    );
}

pub fn projective(n: &NsqAlgebra, field: Field, idx: LayeredIndex) -> Module {
    check_index(n, idx);
    repmod::projective(n.algebra(), field, n.vertex(idx.vertex, idx.layer))
}

pub fn injective(n: &NsqAlgebra, field: Field, idx: LayeredIndex) -> Module {
    check_index(n, idx);
    repmod::injective(n.algebra(), field, n.vertex(idx.vertex, idx.layer))
}

pub fn simple(n: &NsqAlgebra, field: Field, idx: LayeredIndex) -> Module {
    check_index(n, idx);
    Module::simple(n.algebra(), field, n.vertex(idx.vertex, idx.layer))
}

/// Δ(i_t): one-dimensional at i_t, …, i_s with identity verticals and zero diagonals.
pub fn standard_module(n: &NsqAlgebra, field: Field, idx: LayeredIndex) -> Module {
    check_index(n, idx);
    let st = n.staircase();
    let dims: Vec<usize> = (0..st.quiver().n_vertices())
        .map(|v| {
            let (i, t) = st.split(v);
            usize::from(i == idx.vertex && t >= idx.layer)
        })
        .collect();
    let action = st
        .quiver()
        .arrows()
        .iter()
        .zip(st.kinds())
        .map(|(a, k)| match *k {
            StairArrow::Vertical { vertex, layer } if vertex == idx.vertex && layer >= idx.layer => Matrix::identity(field, 1),
            _ => Matrix::zeros(field, dims[a.target], dims[a.source]),
        })
        .collect();
    Module::new_unchecked(n.algebra(), field, dims, action)
}

/// ∇(i_t): the kernel of I(i_t) → I(i_{t−1}) for t ≥ 2, and for t = 1 the largest
/// submodule of I(i_1) whose composition factors lie in layers > 1 or at i_1.
pub fn costandard_module(n: &NsqAlgebra, field: Field, idx: LayeredIndex) -> Module {
    check_index(n, idx);
    if idx.layer == 1 {
        return costandard_by_support(n, field, idx);
    }
    let alg = n.algebra();
    let st = n.staircase();
    let top = n.vertex(idx.vertex, idx.layer);
    let below = n.vertex(idx.vertex, idx.layer - 1);
    let i_top = repmod::injective(alg, field, top);
    let b = alg
        .arrow(st.vertical(idx.vertex, idx.layer - 1))
        .expect("vertical arrows are nonzero for s ≥ 2");
    // φ ↦ φ(b·−) on the dual bases of paths ending at i_t and at i_{t−1}
    let components: Vec<Matrix> = (0..alg.n_vertices())
        .map(|w| {
            let cols: Vec<usize> = alg.basis_to(top).filter(|&q| alg.basis()[q].source == w).collect();
            let rows: Vec<usize> = alg.basis_to(below).filter(|&p| alg.basis()[p].source == w).collect();
            Matrix::from_fn(field, rows.len(), cols.len(), |r, c| {
                if alg.mul(b, rows[r]) == Some(cols[c]) {
                    field.one()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    let ker: Subspace = components.iter().map(|m| m.kernel()).collect();
    i_top.restrict_to(&ker).module
}

/// The largest submodule of I(i_t) with composition factors in layers > t or at i_t.
pub fn costandard_by_support(n: &NsqAlgebra, field: Field, idx: LayeredIndex) -> Module {
    let st = n.staircase();
    let inj = injective(n, field, idx);
    let allowed: Vec<bool> = (0..st.quiver().n_vertices())
        .map(|v| {
            let (i, t) = st.split(v);
            t > idx.layer || (i, t) == (idx.vertex, idx.layer)
        })
        .collect();
    let u = largest_submodule_within(&inj, &allowed);
    inj.restrict_to(&u).module
}

/// Largest submodule of `m` that vanishes at every vertex not marked as allowed.
pub fn largest_submodule_within(m: &Module, allowed: &[bool]) -> Subspace {
    let field = m.field();
    let q = m.algebra().quiver();
    let mut u: Subspace = m
        .dims()
        .iter()
        .zip(allowed)
        .map(|(&d, &ok)| if ok { Matrix::identity(field, d) } else { Matrix::zeros(field, d, 0) })
        .collect();
    loop {
        let mut changed = false;
        for (k, a) in q.arrows().iter().enumerate() {
            let image = m.action(k).mul(&u[a.source]);
            let ann = u[a.target].left_annihilator();
            let c = ann.mul(&image).kernel();
            if c.cols() < u[a.source].cols() {
                u[a.source] = u[a.source].mul(&c).column_basis();
                changed = true;
            }
        }
        if !changed {
            return u;
        }
    }
}

/// A module over N_{s−t}(Q) inflated to N_s(Q) along i_u ↦ i_{u+t}.
pub fn inflate(n: &NsqAlgebra, shift: usize, m: &Module) -> Module {
    let small = m.nsq().expect("inflation needs a nilpotent quiver algebra module");
    assert_eq!(small.s() + shift, n.s(), "inflation shift does not match");
    let st = n.staircase();
    let sst = small.staircase();
    let field = m.field();
    let dims: Vec<usize> = (0..st.quiver().n_vertices())
        .map(|v| {
            let (i, t) = st.split(v);
            if t > shift {
                m.dims()[sst.vertex(i, t - shift)]
            } else {
                0
            }
        })
        .collect();
    let action = st
        .quiver()
        .arrows()
        .iter()
        .zip(st.kinds())
        .map(|(a, k)| match *k {
            StairArrow::Vertical { vertex, layer } if layer > shift => m.action(sst.vertical(vertex, layer - shift)).clone(),
            StairArrow::Diagonal { arrow, layer } if layer > shift + 1 => m.action(sst.diagonal(arrow, layer - shift)).clone(),
            _ => Matrix::zeros(field, dims[a.target], dims[a.source]),
        })
        .collect();
    Module::new(n.algebra(), field, dims, action).expect("inflation along a layer quotient satisfies the relations")
}

/// T(i_t): the injective envelope of S(i_s) over N_{s−t+1}(Q), inflated.
pub fn tilting_module(n: &NsqAlgebra, field: Field, idx: LayeredIndex) -> Module {
    check_index(n, idx);
    if idx.layer == 1 {
        return injective(n, field, LayeredIndex::new(idx.vertex, n.s()));
    }
    let lq = n.layer_quotient(idx.layer - 1);
    let small = &lq.algebra;
    let inj = repmod::injective(small.algebra(), field, small.vertex(idx.vertex, small.s()));
    inflate(n, lq.shift, &inj)
}

/// True iff every vertical arrow acts injectively.
pub fn is_delta_filtered(m: &Module) -> bool {
    repmod::verticals_injective(m).unwrap_or(false)
}

/// The multiplicities m with dd = Σ m_{i_t}[Δ(i_t)], namely m_{i_t} = dd_{i_t} − dd_{i_{t−1}}.
pub fn delta_decomposition(n: &NsqAlgebra, dd: &DimFiltration) -> Result<DimFiltration, QhError> {
    let (nv, s) = (n.base().n_vertices(), n.s());
    if dd.s() != s || dd.n_vertices() != nv {
        return Err(QhError::WrongShape {
            s,
            n: nv,
            got: dd.s(),
            got_n: dd.n_vertices(),
        });
    }
    let mut layers = Vec::with_capacity(s);
    for t in 1..=s {
        let mut row = Vec::with_capacity(nv);
        for i in 0..nv {
            let value = dd.at(i, t) as i64 - dd.at(i, t - 1) as i64;
            if value < 0 {
                return Err(QhError::NegativeMultiplicity {
                    vertex: n.base().vertices()[i].clone(),
                    layer: t,
                    value,
                });
            }
            row.push(value as usize);
        }
        layers.push(DimVector(row));
    }
    Ok(DimFiltration::layered(layers).expect("layers have equal length"))
}

/// Dimension vectors of all Δ(i_t) in staircase vertex order.
pub fn delta_classes(n: &NsqAlgebra) -> Vec<Vec<usize>> {
    classes(n, |idx| standard_module(n, Field::Rational, idx).dims().to_vec())
}

/// Dimension vectors of all ∇(i_t) in staircase vertex order.
pub fn nabla_classes(n: &NsqAlgebra) -> Vec<Vec<usize>> {
    classes(n, |idx| costandard_module(n, Field::Rational, idx).dims().to_vec())
}

fn classes(n: &NsqAlgebra, f: impl Fn(LayeredIndex) -> Vec<usize>) -> Vec<Vec<usize>> {
    let st = n.staircase();
    (0..st.quiver().n_vertices())
        .map(|v| {
            let (i, t) = st.split(v);
            f(LayeredIndex::new(i, t))
        })
        .collect()
}

/// Coordinates of `dd` in the basis given by `classes`, if they are integers.
pub fn decompose_in(classes: &[Vec<usize>], dd: &[usize]) -> Option<Vec<i64>> {
    let f = Field::Rational;
    let k = classes.len();
    let m = Matrix::from_fn(f, dd.len(), k, |r, c| f.from_i64(classes[c][r] as i64));
    let b: Vec<_> = dd.iter().map(|&x| f.from_i64(x as i64)).collect();
    let x = m.solve(&b)?;
    x.iter()
        .map(|s| {
            let q = s.lift();
            q.is_integer().then(|| i64::try_from(q.to_integer()).ok()).flatten()
        })
        .collect()
}
