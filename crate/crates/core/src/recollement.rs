//! The recollement of N_s(Q) at the idempotent e = Σ e(i_s), with corner algebra
//! kQ/J^s: the functors e, ℓ, r, c, q, stability, and the data describing the
//! fibres of the desingularisation map.

use std::sync::Arc;

use crate::algebra::{truncated_path_algebra, BoundQuiverAlgebra, NsqAlgebra};
use crate::linalg::Matrix;
use crate::quiver::{DimFiltration, StairArrow};
use crate::repmod::{self, free_module, hom_basis, projective_resolution, same_algebra, Module, ModuleError, Morphism, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecollementError {
    #[error("corner identification is not multiplicative on basis elements {0} and {1}")]
    CornerNotMultiplicative(usize, usize),
    #[error("module is over the wrong algebra")]
    WrongAlgebra,
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// N_s(Q) together with its corner algebra e·N_s(Q)·e ≅ kQ/J^s.
#[derive(Debug, Clone)]
pub struct RecollementContext {
    nsq: NsqAlgebra,
    corner: Arc<BoundQuiverAlgebra>,
    corner_image: Vec<usize>,
}

impl RecollementContext {
    /// Builds kQ/J^s and checks that φ: kQ/J^s → e·N_s(Q)·e respects products.
    pub fn new(nsq: &NsqAlgebra) -> Result<RecollementContext, RecollementError> {
        let corner = truncated_path_algebra(nsq.base(), nsq.s());
        let corner_image: Vec<usize> = corner
            .basis()
            .iter()
            .map(|b| nsq.phi_iso(&b.path).expect("paths shorter than s have an image"))
            .collect();
        let alg = nsq.algebra();
        for x in 0..corner.dim() {
            for y in 0..corner.dim() {
                let lhs = corner.mul(y, x).map(|p| corner_image[p]);
                let rhs = alg.mul(corner_image[y], corner_image[x]);
                if lhs != rhs {
                    return Err(RecollementError::CornerNotMultiplicative(y, x));
                }
            }
        }
        Ok(RecollementContext {
            nsq: nsq.clone(),
            corner,
            corner_image,
        })
    }

    pub fn nsq(&self) -> &NsqAlgebra {
        &self.nsq
    }

    pub fn corner(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.corner
    }

    /// Image in N_s(Q) of a basis element of kQ/J^s.
    pub fn corner_image(&self, b: usize) -> usize {
        self.corner_image[b]
    }

    fn check_nsq(&self, n: &Module) -> Result<(), RecollementError> {
        if same_algebra(n.algebra(), self.nsq.algebra()) {
            Ok(())
        } else {
            Err(RecollementError::WrongAlgebra)
        }
    }

    fn check_corner(&self, m: &Module) -> Result<(), RecollementError> {
        if same_algebra(m.algebra(), &self.corner) {
            Ok(())
        } else {
            Err(RecollementError::WrongAlgebra)
        }
    }

    /// e·N: the spaces at the top layer, with a acting as b(j_{s−1})·a_s.
    pub fn restrict_e(&self, n: &Module) -> Result<Module, RecollementError> {
        self.check_nsq(n)?;
        let s = self.nsq.s();
        let base = self.nsq.base();
        let field = n.field();
        let dims: Vec<usize> = (0..base.n_vertices()).map(|i| n.dims()[self.nsq.vertex(i, s)]).collect();
        let alg = self.nsq.algebra();
        let action = base
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| match self.corner.arrow(k) {
                Some(c) => n.path_matrix(&alg.basis()[self.corner_image[c]].path),
                None => Matrix::zeros(field, dims[a.target], dims[a.source]),
            })
            .collect();
        Ok(Module::new_unchecked(&self.corner, field, dims, action))
    }

    /// Assembles an N_s(Q)-module from subspaces U_t ⊂ M (t = 1..s, increasing in t)
    /// with inclusions as verticals and restrictions of M_a as diagonals.
    fn module_from_layers(&self, m: &Module, layers: &[Subspace]) -> Module {
        let st = self.nsq.staircase();
        let field = m.field();
        let dims: Vec<usize> = (0..st.quiver().n_vertices())
            .map(|v| {
                let (i, t) = st.split(v);
                layers[t - 1][i].cols()
            })
            .collect();
        let action = st
            .kinds()
            .iter()
            .map(|k| match *k {
                StairArrow::Vertical { vertex, layer } => {
                    layers[layer][vertex].solve_matrix(&layers[layer - 1][vertex]).expect("layers increase")
                }
                StairArrow::Diagonal { arrow, layer } => {
                    let a = &self.nsq.base().arrows()[arrow];
                    let image = m.action(arrow).mul(&layers[layer - 1][a.source]);
                    layers[layer - 2][a.target].solve_matrix(&image).expect("arrows lower the layer")
                }
            })
            .collect();
        Module::new(self.nsq.algebra(), field, dims, action).expect("layered construction satisfies the relations")
    }

    /// r(M): layer t is soc^t(M).
    pub fn r_of(&self, m: &Module) -> Result<Module, RecollementError> {
        self.check_corner(m)?;
        Ok(self.module_from_layers(m, &self.socle_layers(m)))
    }

    /// c(M): layer t is J^{s−t}M.
    pub fn c_of(&self, m: &Module) -> Result<Module, RecollementError> {
        self.check_corner(m)?;
        Ok(self.module_from_layers(m, &self.radical_layers(m)))
    }

    fn socle_layers(&self, m: &Module) -> Vec<Subspace> {
        (1..=self.nsq.s()).map(|t| m.socle_power(t)).collect()
    }

    fn radical_layers(&self, m: &Module) -> Vec<Subspace> {
        let s = self.nsq.s();
        (1..=s).map(|t| m.radical_power(s - t)).collect()
    }

    /// The monomorphism c(M) → r(M) induced by J^{s−t}M ⊆ soc^t(M).
    pub fn c_to_r(&self, m: &Module) -> Result<Morphism, RecollementError> {
        self.check_corner(m)?;
        let st = self.nsq.staircase();
        let (soc, rad) = (self.socle_layers(m), self.radical_layers(m));
        let components: Vec<Matrix> = (0..st.quiver().n_vertices())
            .map(|v| {
                let (i, t) = st.split(v);
                soc[t - 1][i].solve_matrix(&rad[t - 1][i]).expect("J^{s−t}M is killed by J^t")
            })
            .collect();
        let f = Morphism { components };
        assert!(f.is_mono(), "c(M) → r(M) must be injective");
        Ok(f)
    }

    /// ℓ(M) as the cokernel of ℓ(P_1) → ℓ(P_0), with ℓ((kQ/J^s)e_i) = P(i_s).
    pub fn ell_of(&self, m: &Module) -> Result<Module, RecollementError> {
        self.check_corner(m)?;
        let s = self.nsq.s();
        let alg = self.nsq.algebra();
        let field = m.field();
        let res = projective_resolution(m, 1);
        let lift = |gens: &[usize]| -> Vec<usize> { gens.iter().map(|&v| self.nsq.vertex(v, s)).collect() };
        let f0 = free_module(alg, field, &lift(&res.terms[0].generators));
        let Some(p1) = res.terms.get(1) else {
            return Ok(f0.module);
        };
        let p0 = &res.terms[0];
        let d = &res.differentials[0];
        let f1 = free_module(alg, field, &lift(&p1.generators));
        let pos: Vec<std::collections::HashMap<(usize, usize), usize>> = f0
            .index
            .iter()
            .map(|l| l.iter().enumerate().map(|(k, &x)| (x, k)).collect())
            .collect();
        let mut image: Subspace = f0.module.zero_subspace();
        for (w, list) in f1.index.iter().enumerate() {
            let mut comp = Matrix::zeros(field, f0.module.dims()[w], list.len());
            for (col, &(g1, b1)) in list.iter().enumerate() {
                // b1·gen_{g1} ↦ Σ c_{(g,b)} (b1·φ(b))·gen_g
                let v1 = p1.generators[g1];
                let coeffs = d.components[v1].column(p1.generator_position(g1));
                for (k, &(g, b)) in p0.index[v1].iter().enumerate() {
                    if coeffs[k].is_zero() {
                        continue;
                    }
                    if let Some(prod) = alg.mul(b1, self.corner_image[b]) {
                        let r = pos[w][&(g, prod)];
                        comp.set(r, col, comp.get(r, col) + coeffs[k].clone());
                    }
                }
            }
            image[w] = comp.column_basis();
        }
        Ok(f0.module.quotient(&image).module)
    }

    /// r(M) via Hom_{kQ/J^s}(e·N_s(Q)·e(i_t), M), with the action by precomposition.
    pub fn generic_r(&self, m: &Module) -> Result<Module, RecollementError> {
        self.check_corner(m)?;
        let st = self.nsq.staircase();
        let alg = self.nsq.algebra();
        let field = m.field();
        let nv = st.quiver().n_vertices();
        let columns: Vec<CornerColumn> = (0..nv).map(|v| self.corner_column(v, field)).collect();
        let homs: Vec<Vec<Morphism>> = columns
            .iter()
            .map(|c| hom_basis(&c.module, m).map(|h| h.basis))
            .collect::<Result<_, _>>()?;
        let flat = |f: &Morphism| -> Vec<crate::linalg::Scalar> { f.components.iter().flat_map(|c| c.vec_col_major()).collect() };
        let bases: Vec<Matrix> = homs
            .iter()
            .enumerate()
            .map(|(v, h)| {
                let len: usize = columns[v].module.dims().iter().zip(m.dims()).map(|(a, b)| a * b).sum();
                let cols: Vec<Matrix> = h.iter().map(|f| Matrix::column_vector(field, &flat(f))).collect();
                Matrix::hstack(field, len, &cols.iter().collect::<Vec<_>>())
            })
            .collect();
        let dims: Vec<usize> = homs.iter().map(|h| h.len()).collect();
        let action = st
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let beta = alg.arrow(k).expect("staircase arrows are nonzero");
                // ρ: e·B·e(target) → e·B·e(source), y ↦ y·β
                let (src, tgt) = (&columns[a.source], &columns[a.target]);
                let rho: Vec<Matrix> = (0..self.nsq.base().n_vertices())
                    .map(|j| {
                        Matrix::from_fn(field, src.index[j].len(), tgt.index[j].len(), |r, c| {
                            if alg.mul(tgt.index[j][c], beta) == Some(src.index[j][r]) {
                                field.one()
                            } else {
                                field.zero()
                            }
                        })
                    })
                    .collect();
                let images: Vec<Matrix> = homs[a.source]
                    .iter()
                    .map(|f| {
                        let g = Morphism {
                            components: f.components.iter().zip(&rho).map(|(x, y)| x.mul(y)).collect(),
                        };
                        Matrix::column_vector(field, &flat(&g))
                    })
                    .collect();
                let rows = bases[a.target].rows();
                let stacked = Matrix::hstack(field, rows, &images.iter().collect::<Vec<_>>());
                bases[a.target].solve_matrix(&stacked).expect("precomposition stays in the Hom space")
            })
            .collect();
        Ok(Module::new(alg, field, dims, action)?)
    }

    /// e·N_s(Q)·e(v) as a left kQ/J^s-module; index[j] lists basis elements from v to j_s.
    fn corner_column(&self, v: usize, field: crate::linalg::Field) -> CornerColumn {
        let alg = self.nsq.algebra();
        let s = self.nsq.s();
        let base = self.nsq.base();
        let index: Vec<Vec<usize>> = (0..base.n_vertices())
            .map(|j| {
                let top = self.nsq.vertex(j, s);
                alg.basis_from(v).filter(|&b| alg.basis()[b].target == top).collect()
            })
            .collect();
        let dims: Vec<usize> = index.iter().map(|l| l.len()).collect();
        let action = base
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut mat = Matrix::zeros(field, dims[a.target], dims[a.source]);
                if let Some(c) = self.corner.arrow(k) {
                    let phi = self.corner_image[c];
                    for (col, &x) in index[a.source].iter().enumerate() {
                        if let Some(y) = alg.mul(phi, x) {
                            let row = index[a.target].iter().position(|&z| z == y).expect("product ends at the top layer");
                            mat.set(row, col, field.one());
                        }
                    }
                }
                mat
            })
            .collect();
        CornerColumn {
            module: Module::new_unchecked(&self.corner, field, dims, action),
            index,
        }
    }

    /// q(N) = N / (submodule generated by the top layer), an N_s(Q)-module killed by e.
    pub fn q_of(&self, n: &Module) -> Result<repmod::Quotient, RecollementError> {
        self.check_nsq(n)?;
        let st = self.nsq.staircase();
        let s = self.nsq.s();
        let gens: Subspace = (0..st.quiver().n_vertices())
            .map(|v| {
                let d = n.dims()[v];
                if st.layer(v) == s {
                    Matrix::identity(n.field(), d)
                } else {
                    Matrix::zeros(n.field(), d, 0)
                }
            })
            .collect();
        Ok(n.quotient(&n.close_subspace(&gens)))
    }

    /// Stable points are the Δ-filtered modules: all verticals injective.
    pub fn is_stable(&self, n: &Module) -> bool {
        crate::qh::is_delta_filtered(n)
    }

    /// qr(M) = r(M)/c(M), the target dd − Dim c(M), and whether Dim c(M) ≤ dd ≤ Dim r(M).
    pub fn fibre_data(&self, m: &Module, dd: &DimFiltration) -> Result<FibreData, RecollementError> {
        let r = self.r_of(m)?;
        let c = self.c_of(m)?;
        let inc = self.c_to_r(m)?;
        let qr = r.quotient(&inc.image()).module;
        let dim_r = r.dim_filtration()?;
        let dim_c = c.dim_filtration()?;
        let necessary = dim_c.le(dd) && dd.le(&dim_r);
        Ok(FibreData {
            qr,
            target: dd.sub(&dim_c),
            necessary,
            dim_c,
            dim_r,
        })
    }

    /// (dim End(M), dim End(qr(M)), rank of ψ_M: End(M) → End(qr(M))).
    pub fn psi_rank(&self, m: &Module) -> Result<(usize, usize, usize), RecollementError> {
        let field = m.field();
        let soc = self.socle_layers(m);
        let r = self.r_of(m)?;
        let inc = self.c_to_r(m)?;
        let quot = r.quotient(&inc.image());
        let st = self.nsq.staircase();
        let end = hom_basis(m, m)?;
        let end_q = hom_basis(&quot.module, &quot.module)?;
        let images: Vec<Vec<crate::linalg::Scalar>> = end
            .basis
            .iter()
            .map(|f| {
                (0..st.quiver().n_vertices())
                    .flat_map(|v| {
                        let (i, t) = st.split(v);
                        let u = &soc[t - 1][i];
                        let rf = u.solve_matrix(&f.components[i].mul(u)).expect("endomorphisms preserve socle layers");
                        quot.projection.components[v].mul(&rf).mul(&quot.section[v]).vec_col_major()
                    })
                    .collect()
            })
            .collect();
        let len: usize = quot.module.dims().iter().map(|d| d * d).sum();
        let cols: Vec<Matrix> = images.iter().map(|x| Matrix::column_vector(field, x)).collect();
        let rank = Matrix::hstack(field, len, &cols.iter().collect::<Vec<_>>()).rank();
        Ok((end.dim(), end_q.dim(), rank))
    }
}

struct CornerColumn {
    module: Module,
    index: Vec<Vec<usize>>,
}

/// Data attached to the fibre of the desingularisation map over M.
#[derive(Debug, Clone)]
pub struct FibreData {
    pub qr: Module,
    /// dd − Dim c(M), when dd ≥ Dim c(M).
    pub target: Option<DimFiltration>,
    /// Dim c(M) ≤ dd ≤ Dim r(M); for s = 2 this is equivalent to the fibre being nonempty.
    pub necessary: bool,
    pub dim_c: DimFiltration,
    pub dim_r: DimFiltration,
}
