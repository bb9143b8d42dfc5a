//! Modules over bound quiver algebras: construction, Hom spaces, minimal
//! projective resolutions, Ext, radical and socle series, sub- and quotient
//! modules, randomized isomorphism and decomposition probes, and the passage
//! to tuples of kQ-modules joined by homomorphisms.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::{AlgebraKind, BoundQuiverAlgebra, NsqAlgebra};
use crate::linalg::{Field, LinalgError, Matrix, Scalar};
use crate::quiver::{DimFiltration, Path, StairArrow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("expected {expected} vertex dimensions, got {got}")]
    DimsLength { expected: usize, got: usize },
    #[error("expected {expected} arrow matrices, got {got}")]
    ArrowCount { expected: usize, got: usize },
    #[error("matrix for arrow {arrow} is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    Shape {
        arrow: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("matrix for arrow {0} is over a different field")]
    FieldMismatch(String),
    #[error("relation {0} does not vanish")]
    RelationViolated(String),
    #[error("projective resolution does not stop within {0} steps")]
    ResolutionTooLong(usize),
    #[error("modules are over different algebras or fields")]
    AlgebraMismatch,
    #[error("module is not over a nilpotent quiver algebra")]
    NotNilpotent,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Whether two algebra handles describe the same algebra.
pub fn same_algebra(a: &Arc<BoundQuiverAlgebra>, b: &Arc<BoundQuiverAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || (a.kind() == b.kind() && a.quiver() == b.quiver())
}

/// A graded subspace, as one matrix of independent basis columns per vertex.
pub type Subspace = Vec<Matrix>;

/// A left module given by one matrix per arrow (target dimension × source dimension).
#[derive(Debug, Clone)]
pub struct Module {
    algebra: Arc<BoundQuiverAlgebra>,
    field: Field,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Module) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.field == other.field
            && self.dims == other.dims
            && self.action == other.action
    }
}

impl Module {
    /// Validates shapes and relations.
    pub fn new(
        algebra: &Arc<BoundQuiverAlgebra>,
        field: Field,
        dims: Vec<usize>,
        action: Vec<Matrix>,
    ) -> Result<Module, ModuleError> {
        let q = algebra.quiver();
        if dims.len() != q.n_vertices() {
            return Err(ModuleError::DimsLength {
                expected: q.n_vertices(),
                got: dims.len(),
            });
        }
        if action.len() != q.n_arrows() {
            return Err(ModuleError::ArrowCount {
                expected: q.n_arrows(),
                got: action.len(),
            });
        }
        for (a, m) in q.arrows().iter().zip(&action) {
            if m.field() != field {
                return Err(ModuleError::FieldMismatch(a.name.clone()));
            }
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(ModuleError::Shape {
                    arrow: a.name.clone(),
                    rows: dims[a.target],
                    cols: dims[a.source],
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        let m = Module::new_unchecked(algebra, field, dims, action);
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        algebra: &Arc<BoundQuiverAlgebra>,
        field: Field,
        dims: Vec<usize>,
        action: Vec<Matrix>,
    ) -> Module {
        Module {
            algebra: algebra.clone(),
            field,
            dims,
            action,
        }
    }

    pub fn zero(algebra: &Arc<BoundQuiverAlgebra>, field: Field) -> Module {
        Module::from_dims_zero(algebra, field, vec![0; algebra.n_vertices()])
    }

    /// The semisimple module with the given dimensions (all arrows act by zero).
    pub fn from_dims_zero(algebra: &Arc<BoundQuiverAlgebra>, field: Field, dims: Vec<usize>) -> Module {
        let action = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Module::new_unchecked(algebra, field, dims, action)
    }

    pub fn simple(algebra: &Arc<BoundQuiverAlgebra>, field: Field, v: usize) -> Module {
        let mut dims = vec![0; algebra.n_vertices()];
        dims[v] = 1;
        Module::from_dims_zero(algebra, field, dims)
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, arrow: usize) -> &Matrix {
        &self.action[arrow]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Dimension vector arranged by layers (modules over N_s(Q) only).
    pub fn dim_filtration(&self) -> Result<DimFiltration, ModuleError> {
        match self.algebra.kind() {
            AlgebraKind::Nilpotent { s } => Ok(DimFiltration::from_staircase_vec(self.algebra.base().n_vertices(), s, &self.dims)),
            AlgebraKind::Truncated { .. } => Err(ModuleError::NotNilpotent),
        }
    }

    /// The algebra as an N_s(Q), if it is one.
    pub fn nsq(&self) -> Result<NsqAlgebra, ModuleError> {
        NsqAlgebra::from_algebra(self.algebra.clone()).ok_or(ModuleError::NotNilpotent)
    }

    /// Action of a path of the underlying quiver.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.action[a].mul(&m);
        }
        m
    }

    /// Action of every basis element of the algebra, in basis order.
    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.algebra.basis().iter().map(|b| self.path_matrix(&b.path)).collect()
    }

    pub fn check_relations(&self) -> Result<(), ModuleError> {
        for r in self.algebra.relations() {
            let first = &r.terms[0].1;
            let mut sum = Matrix::zeros(self.field, self.dims[first.target], self.dims[first.source]);
            for (c, p) in &r.terms {
                sum = sum.add(&self.path_matrix(p).scale(&self.field.from_i64(*c)));
            }
            if !sum.is_zero() {
                return Err(ModuleError::RelationViolated(r.name.clone()));
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        assert!(same_algebra(&self.algebra, &other.algebra) && self.field == other.field, "direct sum across algebras");
        Module::direct_sum_all(&self.algebra, self.field, &[self, other])
    }

    pub fn direct_sum_all(algebra: &Arc<BoundQuiverAlgebra>, field: Field, parts: &[&Module]) -> Module {
        let nv = algebra.n_vertices();
        let dims = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let action = (0..algebra.n_arrows())
            .map(|a| Matrix::block_diag(field, &parts.iter().map(|m| &m.action[a]).collect::<Vec<_>>()))
            .collect();
        Module::new_unchecked(algebra, field, dims, action)
    }

    /// Same matrices over another field (reduction or symmetric lift), re-validated.
    pub fn to_field(&self, field: Field) -> Result<Module, ModuleError> {
        let action = self.action.iter().map(|m| m.to_field(field)).collect::<Result<Vec<_>, _>>()?;
        Module::new(&self.algebra, field, self.dims.clone(), action)
    }

    pub fn full_subspace(&self) -> Subspace {
        self.dims.iter().map(|&d| Matrix::identity(self.field, d)).collect()
    }

    pub fn zero_subspace(&self) -> Subspace {
        self.dims.iter().map(|&d| Matrix::zeros(self.field, d, 0)).collect()
    }

    /// Smallest submodule containing the given vectors.
    pub fn close_subspace(&self, gens: &Subspace) -> Subspace {
        let mut cur: Subspace = gens.iter().map(|g| g.column_basis()).collect();
        loop {
            let mut changed = false;
            for (k, a) in self.algebra.quiver().arrows().iter().enumerate() {
                let image = self.action[k].mul(&cur[a.source]);
                let joined = Matrix::hstack(self.field, self.dims[a.target], &[&cur[a.target], &image]);
                let basis = joined.column_basis();
                if basis.cols() > cur[a.target].cols() {
                    cur[a.target] = basis;
                    changed = true;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        self.algebra.quiver().arrows().iter().enumerate().all(|(k, a)| {
            let image = self.action[k].mul(&u[a.source]);
            contains(&u[a.target], &image)
        })
    }

    /// The submodule generated by the given vectors, with its inclusion.
    pub fn submodule(&self, gens: &Subspace) -> Submodule {
        self.restrict_to(&self.close_subspace(gens))
    }

    /// The submodule carried by a closed subspace with independent columns.
    pub fn restrict_to(&self, u: &Subspace) -> Submodule {
        debug_assert!(self.is_submodule(u), "subspace is not closed under the action");
        let dims: Vec<usize> = u.iter().map(|m| m.cols()).collect();
        let action = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let image = self.action[k].mul(&u[a.source]);
                u[a.target].solve_matrix(&image).expect("subspace is closed under the action")
            })
            .collect();
        Submodule {
            module: Module::new_unchecked(&self.algebra, self.field, dims, action),
            inclusion: Morphism {
                components: u.clone(),
            },
        }
    }

    /// M/U for a submodule U, with the projection.
    pub fn quotient(&self, u: &Subspace) -> Quotient {
        let comps: Vec<Matrix> = u.iter().map(|m| m.complement_columns()).collect();
        let proj: Vec<Matrix> = u
            .iter()
            .zip(&comps)
            .enumerate()
            .map(|(v, (um, cm))| {
                let full = Matrix::hstack(self.field, self.dims[v], &[um, cm]);
                let inv = full.inverse().expect("subspace and complement span");
                inv.block(um.cols(), 0, cm.cols(), self.dims[v])
            })
            .collect();
        let dims: Vec<usize> = comps.iter().map(|c| c.cols()).collect();
        let action = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| proj[a.target].mul(&self.action[k]).mul(&comps[a.source]))
            .collect();
        Quotient {
            module: Module::new_unchecked(&self.algebra, self.field, dims, action),
            projection: Morphism { components: proj },
            section: comps,
        }
    }

    /// J·M, the sum of the images of all arrows.
    pub fn radical(&self) -> Subspace {
        self.radical_power(1)
    }

    /// J^t·M.
    pub fn radical_power(&self, t: usize) -> Subspace {
        let mut cur = self.full_subspace();
        for _ in 0..t {
            let mut next = self.zero_subspace();
            for (k, a) in self.algebra.quiver().arrows().iter().enumerate() {
                let image = self.action[k].mul(&cur[a.source]);
                next[a.target] = Matrix::hstack(self.field, self.dims[a.target], &[&next[a.target], &image]);
            }
            cur = next.into_iter().map(|m| m.column_basis()).collect();
        }
        cur
    }

    pub fn socle(&self) -> Subspace {
        self.socle_power(1)
    }

    /// soc^t(M): vectors killed by every path of length t.
    pub fn socle_power(&self, t: usize) -> Subspace {
        let mats = self.basis_matrices();
        (0..self.dims.len())
            .map(|v| {
                let killers: Vec<&Matrix> = self
                    .algebra
                    .basis_from(v)
                    .filter(|&b| self.algebra.basis()[b].path.len() == t)
                    .map(|b| &mats[b])
                    .collect();
                if killers.is_empty() {
                    return Matrix::identity(self.field, self.dims[v]);
                }
                let stacked = Matrix::vstack(self.field, self.dims[v], &killers);
                stacked.kernel()
            })
            .collect()
    }

    /// soc^0 ⊂ soc^1 ⊂ … up to the first term equal to M.
    pub fn socle_filtration(&self) -> Vec<Subspace> {
        let mut out = vec![self.zero_subspace()];
        let mut t = 1;
        loop {
            let s = self.socle_power(t);
            let full = s.iter().zip(&self.dims).all(|(m, &d)| m.cols() == d);
            out.push(s);
            if full {
                return out;
            }
            t += 1;
        }
    }

    /// M / JM.
    pub fn top(&self) -> Quotient {
        self.quotient(&self.radical())
    }
}

/// A submodule together with its inclusion.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub module: Module,
    pub inclusion: Morphism,
}

/// A quotient together with the projection and a linear section.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: Module,
    pub projection: Morphism,
    pub section: Vec<Matrix>,
}

/// Whether the column space of `sub` lies in that of `space`.
pub fn contains(space: &Matrix, sub: &Matrix) -> bool {
    if sub.cols() == 0 {
        return true;
    }
    let joined = Matrix::hstack(space.field(), space.rows(), &[space, sub]);
    joined.rank() == space.rank()
}

/// Intersection of two column spaces, as independent columns.
pub fn intersect(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let joined = Matrix::hstack(field, a.rows(), &[a, &b.neg()]);
    let k = joined.kernel();
    a.mul(&k.block(0, 0, a.cols(), k.cols())).column_basis()
}

/// A module homomorphism, one matrix per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    pub components: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(source: &Module, target: &Module) -> Morphism {
        Morphism {
            components: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Matrix::zeros(source.field, t, s))
                .collect(),
        }
    }

    pub fn identity(m: &Module) -> Morphism {
        Morphism {
            components: m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect(),
        }
    }

    /// self ∘ first
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism {
            components: self.components.iter().zip(&first.components).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism {
            components: self.components.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn is_homomorphism(&self, source: &Module, target: &Module) -> bool {
        source.algebra.quiver().arrows().iter().enumerate().all(|(k, a)| {
            self.components[a.target].mul(&source.action[k]) == target.action[k].mul(&self.components[a.source])
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|m| m.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|m| m.is_invertible())
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|m| m.is_injective())
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().all(|m| m.is_surjective())
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|m| m.rank()).sum()
    }

    pub fn kernel(&self) -> Subspace {
        self.components.iter().map(|m| m.kernel()).collect()
    }

    pub fn image(&self) -> Subspace {
        self.components.iter().map(|m| m.column_basis()).collect()
    }

    /// Block-diagonal matrix acting on the direct sum of the vertex spaces.
    pub fn total_matrix(&self, field: Field) -> Matrix {
        Matrix::block_diag(field, &self.components.iter().collect::<Vec<_>>())
    }
}

/// A basis of Hom(M, N).
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// A random linear combination of the basis.
    pub fn random_element<R: Rng + ?Sized>(&self, source: &Module, target: &Module, rng: &mut R) -> Morphism {
        let mut f = Morphism::zero(source, target);
        for b in &self.basis {
            f = f.add(&b.scale(&source.field.random(rng)));
        }
        f
    }
}

/// Tuples (f_v) with f_t·M_a = N_a·f_s for every arrow (s → t), over a bare quiver.
pub fn hom_raw(
    field: Field,
    arrows: &[(usize, usize)],
    mdims: &[usize],
    mact: &[Matrix],
    ndims: &[usize],
    nact: &[Matrix],
) -> Vec<Vec<Matrix>> {
    let n = mdims.len();
    let mut off = vec![0; n + 1];
    for v in 0..n {
        off[v + 1] = off[v] + ndims[v] * mdims[v];
    }
    let rows: usize = arrows.iter().map(|&(s, t)| ndims[t] * mdims[s]).sum();
    let mut c = Matrix::zeros(field, rows, off[n]);
    let mut r0 = 0;
    for (k, &(s, t)) in arrows.iter().enumerate() {
        let h = ndims[t] * mdims[s];
        if h == 0 {
            continue;
        }
        // vec(f_t M_a) = (M_aᵀ ⊗ I) vec f_t and vec(N_a f_s) = (I ⊗ N_a) vec f_s
        c.add_block(r0, off[t], &mact[k].transpose().kron(&Matrix::identity(field, ndims[t])));
        c.add_block(r0, off[s], &Matrix::identity(field, mdims[s]).kron(&nact[k]).neg());
        r0 += h;
    }
    let ker = c.kernel();
    (0..ker.cols())
        .map(|j| {
            let col = ker.column(j);
            (0..n)
                .map(|v| Matrix::reshape_col_major(field, &col[off[v]..off[v + 1]], ndims[v], mdims[v]))
                .collect()
        })
        .collect()
}

pub fn hom_basis(m: &Module, n: &Module) -> Result<HomSpace, ModuleError> {
    if !same_algebra(&m.algebra, &n.algebra) || m.field != n.field {
        return Err(ModuleError::AlgebraMismatch);
    }
    let arrows: Vec<(usize, usize)> = m.algebra.quiver().arrows().iter().map(|a| (a.source, a.target)).collect();
    let basis = hom_raw(m.field, &arrows, &m.dims, &m.action, &n.dims, &n.action)
        .into_iter()
        .map(|components| Morphism { components })
        .collect();
    Ok(HomSpace { basis })
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize, ModuleError> {
    hom_basis(m, n).map(|h| h.dim())
}

/// ⊕_g A·e_{v_g}, with the basis of each vertex space listed as (generator, basis element).
#[derive(Debug, Clone)]
pub struct FreeModule {
    pub module: Module,
    pub generators: Vec<usize>,
    pub index: Vec<Vec<(usize, usize)>>,
}

impl FreeModule {
    /// Position of generator g inside the space at its vertex.
    pub fn generator_position(&self, g: usize) -> usize {
        let v = self.generators[g];
        let e = self.module.algebra.trivial(v);
        self.index[v].iter().position(|&x| x == (g, e)).expect("generator present")
    }
}

pub fn free_module(algebra: &Arc<BoundQuiverAlgebra>, field: Field, generators: &[usize]) -> FreeModule {
    let nv = algebra.n_vertices();
    let mut index = vec![Vec::new(); nv];
    for (g, &v) in generators.iter().enumerate() {
        for b in algebra.basis_from(v) {
            index[algebra.basis()[b].target].push((g, b));
        }
    }
    let pos: Vec<HashMap<(usize, usize), usize>> =
        index.iter().map(|l| l.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
    let dims: Vec<usize> = index.iter().map(|l| l.len()).collect();
    let action = algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
            if let Some(ar) = algebra.arrow(k) {
                for (col, &(g, b)) in index[a.source].iter().enumerate() {
                    if let Some(ab) = algebra.mul(ar, b) {
                        m.set(pos[a.target][&(g, ab)], col, field.one());
                    }
                }
            }
            m
        })
        .collect();
    FreeModule {
        module: Module::new_unchecked(algebra, field, dims, action),
        generators: generators.to_vec(),
        index,
    }
}

/// The indecomposable projective A·e_v; its basis is the paths starting at v.
pub fn projective(algebra: &Arc<BoundQuiverAlgebra>, field: Field, v: usize) -> Module {
    free_module(algebra, field, &[v]).module
}

/// The indecomposable injective D(e_v·A); its basis is dual to the paths ending at v.
pub fn injective(algebra: &Arc<BoundQuiverAlgebra>, field: Field, v: usize) -> Module {
    let nv = algebra.n_vertices();
    let mut index = vec![Vec::new(); nv];
    for b in algebra.basis_to(v) {
        index[algebra.basis()[b].source].push(b);
    }
    let pos: Vec<HashMap<usize, usize>> = index.iter().map(|l| l.iter().enumerate().map(|(i, &b)| (b, i)).collect()).collect();
    let dims: Vec<usize> = index.iter().map(|l| l.len()).collect();
    let action = algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
            if let Some(ar) = algebra.arrow(k) {
                for (row, &b2) in index[a.target].iter().enumerate() {
                    if let Some(b) = algebra.mul(b2, ar) {
                        m.set(row, pos[a.source][&b], field.one());
                    }
                }
            }
            m
        })
        .collect();
    Module::new_unchecked(algebra, field, dims, action)
}

/// A projective cover P → X built on lifts of a basis of X/JX.
#[derive(Debug, Clone)]
pub struct Cover {
    pub free: FreeModule,
    pub map: Morphism,
}

pub fn projective_cover(x: &Module) -> Cover {
    let rad = x.radical();
    let mut generators = Vec::new();
    let mut vectors = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let comp = r.complement_columns();
        for j in 0..comp.cols() {
            generators.push(v);
            vectors.push(comp.block(0, j, x.dims[v], 1));
        }
    }
    let free = free_module(&x.algebra, x.field, &generators);
    let mats = x.basis_matrices();
    let components = free
        .index
        .iter()
        .enumerate()
        .map(|(w, list)| {
            let cols: Vec<Matrix> = list.iter().map(|&(g, b)| mats[b].mul(&vectors[g])).collect();
            Matrix::hstack(x.field, x.dims[w], &cols.iter().collect::<Vec<_>>())
        })
        .collect();
    Cover {
        free,
        map: Morphism { components },
    }
}

/// Kernel of a homomorphism out of `source`, as a submodule.
pub fn kernel_submodule(source: &Module, f: &Morphism) -> Submodule {
    source.restrict_to(&f.kernel())
}

/// P_k → … → P_0 → M with differentials d_k: P_k → P_{k−1}.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub terms: Vec<FreeModule>,
    pub differentials: Vec<Morphism>,
    pub augmentation: Morphism,
    pub complete: bool,
}

impl Resolution {
    /// Index of the last nonzero term (0 for projective or zero modules).
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|p| !p.generators.is_empty()).unwrap_or(0)
    }
}

/// Minimal resolution computed up to P_{max_len}; `complete` records whether it stopped.
pub fn projective_resolution(m: &Module, max_len: usize) -> Resolution {
    let c0 = projective_cover(m);
    let mut ker = kernel_submodule(&c0.free.module, &c0.map);
    let mut terms = vec![c0.free];
    let mut differentials = Vec::new();
    let complete = loop {
        if ker.module.is_zero() {
            break true;
        }
        if terms.len() > max_len {
            break false;
        }
        let c = projective_cover(&ker.module);
        let d = ker.inclusion.compose(&c.map);
        let next = kernel_submodule(&c.free.module, &c.map);
        terms.push(c.free);
        differentials.push(d);
        ker = next;
    };
    Resolution {
        terms,
        differentials,
        augmentation: c0.map,
        complete,
    }
}

pub fn minimal_projective_resolution(m: &Module, max_len: usize) -> Result<Resolution, ModuleError> {
    let r = projective_resolution(m, max_len);
    if r.complete {
        Ok(r)
    } else {
        Err(ModuleError::ResolutionTooLong(max_len))
    }
}

/// Matrix of Hom(P_j, N) → Hom(P_{j+1}, N), f ↦ f∘d_{j+1}, on generator coordinates.
fn hom_differential(res: &Resolution, j: usize, n: &Module, nmats: &[Matrix]) -> Matrix {
    let (pj, pj1) = (&res.terms[j], &res.terms[j + 1]);
    let d = &res.differentials[j];
    let field = n.field;
    let col_off: Vec<usize> = offsets(pj.generators.iter().map(|&v| n.dims[v]));
    let row_off: Vec<usize> = offsets(pj1.generators.iter().map(|&v| n.dims[v]));
    let mut out = Matrix::zeros(field, *row_off.last().unwrap(), *col_off.last().unwrap());
    for (g1, &w) in pj1.generators.iter().enumerate() {
        let pos = pj1.generator_position(g1);
        let image = d.components[w].column(pos);
        for (i, &(g, b)) in pj.index[w].iter().enumerate() {
            if image[i].is_zero() {
                continue;
            }
            out.add_block(row_off[g1], col_off[g], &nmats[b].scale(&image[i]));
        }
    }
    out
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// dim Ext^k(M, N) for k = 0..=max_k.
pub fn ext_dims(m: &Module, n: &Module, max_k: usize) -> Result<Vec<usize>, ModuleError> {
    if !same_algebra(&m.algebra, &n.algebra) || m.field != n.field {
        return Err(ModuleError::AlgebraMismatch);
    }
    let res = projective_resolution(m, max_k + 1);
    let nmats = n.basis_matrices();
    let hom: Vec<usize> = (0..=max_k)
        .map(|j| res.terms.get(j).map_or(0, |p| p.generators.iter().map(|&v| n.dims[v]).sum()))
        .collect();
    let ranks: Vec<usize> = (0..=max_k)
        .map(|j| {
            if j + 1 < res.terms.len() {
                hom_differential(&res, j, n, &nmats).rank()
            } else {
                0
            }
        })
        .collect();
    Ok((0..=max_k)
        .map(|k| hom[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect())
}

pub fn ext_dim(m: &Module, n: &Module, k: usize) -> Result<usize, ModuleError> {
    ext_dims(m, n, k).map(|v| v[k])
}

pub fn is_rigid(m: &Module) -> Result<bool, ModuleError> {
    Ok(ext_dim(m, m, 1)? == 0)
}

/// True if a random element of Hom(M, N) is invertible within `trials` attempts.
pub fn iso_probe<R: Rng + ?Sized>(m: &Module, n: &Module, rng: &mut R, trials: usize) -> bool {
    if m.dims != n.dims {
        return false;
    }
    let Ok(h) = hom_basis(m, n) else { return false };
    if m.is_zero() {
        return true;
    }
    (0..trials).any(|_| h.random_element(m, n, rng).is_iso())
}

/// Splits M into summands with no further Fitting splitting after `trials` random
/// endomorphisms each (prime fields only).
pub fn fitting_decompose<R: Rng + ?Sized>(m: &Module, rng: &mut R, trials: usize) -> Result<Vec<Module>, ModuleError> {
    let Field::Prime(p) = m.field else {
        return Err(ModuleError::Unsupported(
            "Fitting decomposition needs eigenvalues and is only available over prime fields".into(),
        ));
    };
    let mut out = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(x) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match fitting_split(&x, p, rng, trials)? {
            Some((a, b)) => {
                stack.push(x.restrict_to(&b).module);
                stack.push(x.restrict_to(&a).module);
            }
            None => out.push(x),
        }
    }
    Ok(out)
}

fn fitting_split<R: Rng + ?Sized>(x: &Module, p: u64, rng: &mut R, trials: usize) -> Result<Option<(Subspace, Subspace)>, ModuleError> {
    let end = hom_basis(x, x)?;
    if end.dim() <= 1 {
        return Ok(None);
    }
    let n = x.total_dim() as u32;
    for _ in 0..trials {
        let f = end.random_element(x, x, rng);
        let t = f.total_matrix(x.field);
        let mu = poly::krylov(&t, p, rng);
        for lambda in poly::roots(&mu, p, rng) {
            let shift = x.field.from_i64(0) - Scalar::Prime { value: lambda, p };
            let h_pow: Vec<Matrix> = f
                .components
                .iter()
                .map(|c| c.add(&Matrix::identity(x.field, c.rows()).scale(&shift)).pow(n))
                .collect();
            if h_pow.iter().all(|m| m.is_zero()) {
                continue;
            }
            let ker: Subspace = h_pow.iter().map(|m| m.kernel()).collect();
            let im: Subspace = h_pow.iter().map(|m| m.column_basis()).collect();
            return Ok(Some((ker, im)));
        }
    }
    Ok(None)
}

/// Polynomials over F_p, coefficient vectors from low to high degree.
mod poly {
    use rand::Rng;

    use crate::linalg::{inv_mod, mul_mod, Field, Matrix};

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(out)
    }

    /// (quotient, remainder)
    fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = inv_mod(*b.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), inv, p);
            q[shift] = c;
            for (i, &y) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mul_mod(c, y, p)) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    fn monic(a: Vec<u64>, p: u64) -> Vec<u64> {
        match a.last() {
            None => a,
            Some(&l) => {
                let inv = inv_mod(l, p);
                a.into_iter().map(|x| mul_mod(x, inv, p)).collect()
            }
        }
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let (_, r) = divmod(&x, &y, p);
            x = y;
            y = r;
        }
        monic(x, p)
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = divmod(base, m, p).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = divmod(&mul(&acc, &b, p), m, p).1;
            }
            b = divmod(&mul(&b, &b, p), m, p).1;
            e >>= 1;
        }
        acc
    }

    /// Monic polynomial annihilating a random vector under `t`.
    pub fn krylov<R: Rng + ?Sized>(t: &Matrix, p: u64, rng: &mut R) -> Vec<u64> {
        let field = Field::Prime(p);
        let n = t.rows();
        let v = Matrix::random(field, n, 1, rng);
        let mut cols = vec![v];
        loop {
            let k = Matrix::hstack(field, n, &cols.iter().collect::<Vec<_>>());
            let next = t.mul(cols.last().unwrap());
            if let Some(c) = k.solve_matrix(&next) {
                let mut out: Vec<u64> = c
                    .column(0)
                    .iter()
                    .map(|s| match s {
                        crate::linalg::Scalar::Prime { value, .. } => (p - value) % p,
                        _ => unreachable!(),
                    })
                    .collect();
                out.push(1);
                return out;
            }
            cols.push(next);
        }
    }

    /// Distinct roots in F_p.
    pub fn roots<R: Rng + ?Sized>(f: &[u64], p: u64, rng: &mut R) -> Vec<u64> {
        let f = monic(trim(f.to_vec()), p);
        if f.len() <= 1 {
            return Vec::new();
        }
        if p < 512 {
            return (0..p)
                .filter(|&x| f.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p) == 0)
                .collect();
        }
        let xp = powmod(&[0, 1], p, &f, p);
        let g = gcd(&sub(&xp, &[0, 1], p), &f, p);
        let mut out = Vec::new();
        split(g, p, rng, &mut out);
        out.sort_unstable();
        out
    }

    fn split<R: Rng + ?Sized>(g: Vec<u64>, p: u64, rng: &mut R, out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push((p - g[0]) % p),
            _ => loop {
                let a = rng.gen_range(0..p);
                let h = powmod(&[a, 1], (p - 1) / 2, &g, p);
                let d = gcd(&sub(&h, &[1], p), &g, p);
                if d.len() > 1 && d.len() < g.len() {
                    let (other, _) = divmod(&g, &d, p);
                    split(d, p, rng, out);
                    split(monic(other, p), p, rng, out);
                    return;
                }
            },
        }
    }

}

/// Layers M_t = e_t·N as kQ/J^s-modules with the maps φ_t: M_t → M_{t+1}.
#[derive(Debug, Clone)]
pub struct MonObject {
    pub layers: Vec<Module>,
    pub maps: Vec<Morphism>,
    pub monic: Vec<bool>,
}

impl MonObject {
    pub fn is_monic(&self) -> bool {
        self.monic.iter().all(|&b| b)
    }
}

/// Arrow a acts on layer t as b(j_{t−1})·a_t (zero on the first layer); φ_t is b(i_t).
pub fn to_mono_object(n: &Module, corner: &Arc<BoundQuiverAlgebra>) -> Result<MonObject, ModuleError> {
    let nsq = n.nsq()?;
    let st = nsq.staircase();
    let base = nsq.base();
    assert!(corner.quiver() == base, "corner algebra must be built on the same quiver");
    let s = nsq.s();
    let field = n.field;
    let layers: Vec<Module> = (1..=s)
        .map(|t| {
            let dims: Vec<usize> = (0..base.n_vertices()).map(|i| n.dims[st.vertex(i, t)]).collect();
            let action = base
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, a)| {
                    if t == 1 {
                        Matrix::zeros(field, dims[a.target], dims[a.source])
                    } else {
                        n.action[st.vertical(a.target, t - 1)].mul(&n.action[st.diagonal(k, t)])
                    }
                })
                .collect();
            Module::new_unchecked(corner, field, dims, action)
        })
        .collect();
    let maps: Vec<Morphism> = (1..s)
        .map(|t| Morphism {
            components: (0..base.n_vertices()).map(|i| n.action[st.vertical(i, t)].clone()).collect(),
        })
        .collect();
    let monic = maps.iter().map(|m| m.is_mono()).collect();
    Ok(MonObject { layers, maps, monic })
}

/// dim of the space of compatible tuples of kQ-maps between two objects.
pub fn mono_hom_dim(x: &MonObject, y: &MonObject) -> usize {
    let corner = x.layers[0].algebra();
    let base = corner.quiver();
    let nv = base.n_vertices();
    let s = x.layers.len();
    let field = x.layers[0].field;
    let mut arrows = Vec::new();
    let mut mact = Vec::new();
    let mut nact = Vec::new();
    for t in 0..s {
        for (k, a) in base.arrows().iter().enumerate() {
            arrows.push((t * nv + a.source, t * nv + a.target));
            mact.push(x.layers[t].action[k].clone());
            nact.push(y.layers[t].action[k].clone());
        }
    }
    for t in 0..s.saturating_sub(1) {
        for i in 0..nv {
            arrows.push((t * nv + i, (t + 1) * nv + i));
            mact.push(x.maps[t].components[i].clone());
            nact.push(y.maps[t].components[i].clone());
        }
    }
    let mdims: Vec<usize> = x.layers.iter().flat_map(|m| m.dims.iter().copied()).collect();
    let ndims: Vec<usize> = y.layers.iter().flat_map(|m| m.dims.iter().copied()).collect();
    hom_raw(field, &arrows, &mdims, &mact, &ndims, &nact).len()
}

/// Whether every vertical arrow of an N_s(Q)-module acts injectively.
pub fn verticals_injective(n: &Module) -> Result<bool, ModuleError> {
    let nsq = n.nsq()?;
    let st = nsq.staircase();
    Ok(st
        .kinds()
        .iter()
        .enumerate()
        .filter(|(_, k)| matches!(k, StairArrow::Vertical { .. }))
        .all(|(a, _)| n.action[a].is_injective()))
}

/// A random module: a quotient of a free module, a submodule of a sum of
/// injectives, or the sum of one of each.
pub fn random_module<R: Rng + ?Sized>(algebra: &Arc<BoundQuiverAlgebra>, field: Field, rng: &mut R, max_gens: usize) -> Module {
    let nv = algebra.n_vertices();
    let pick = |rng: &mut R| -> Vec<usize> { (0..rng.gen_range(1..=max_gens.max(1))).map(|_| rng.gen_range(0..nv)).collect() };
    let quotient_of_free = |rng: &mut R, gens: Vec<usize>| {
        let f = free_module(algebra, field, &gens).module;
        let rels = random_generators(&f, rng.gen_range(0..=2), rng);
        f.quotient(&f.close_subspace(&rels)).module
    };
    let sub_of_injectives = |rng: &mut R, vs: Vec<usize>| {
        let parts: Vec<Module> = vs.iter().map(|&v| injective(algebra, field, v)).collect();
        let i = Module::direct_sum_all(algebra, field, &parts.iter().collect::<Vec<_>>());
        let gens = random_generators(&i, rng.gen_range(1..=2), rng);
        i.submodule(&gens).module
    };
    match rng.gen_range(0..3) {
        0 => {
            let g = pick(rng);
            quotient_of_free(rng, g)
        }
        1 => {
            let g = pick(rng);
            sub_of_injectives(rng, g)
        }
        _ => {
            let (g1, g2) = (pick(rng), pick(rng));
            let a = quotient_of_free(rng, g1);
            let b = sub_of_injectives(rng, g2);
            a.direct_sum(&b)
        }
    }
}

/// `count` random homogeneous vectors at random vertices with nonzero spaces.
fn random_generators<R: Rng + ?Sized>(m: &Module, count: usize, rng: &mut R) -> Subspace {
    let mut gens = m.zero_subspace();
    let support: Vec<usize> = (0..m.dims.len()).filter(|&v| m.dims[v] > 0).collect();
    if support.is_empty() {
        return gens;
    }
    for _ in 0..count {
        let v = support[rng.gen_range(0..support.len())];
        let x = Matrix::random(m.field, m.dims[v], 1, rng);
        gens[v] = Matrix::hstack(m.field, m.dims[v], &[&gens[v], &x]);
    }
    gens
}
