//! Sampling of flagged representation spaces, the search for rigid Δ-filtered
//! modules, lifts of kQ/J^s-modules, and the scan for irreducible components of
//! rep_d(kQ/J^s).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::NsqAlgebra;
use crate::linalg::{Field, Matrix};
use crate::quiver::{filtrations_with_top, DimFiltration, DimVector, QuiverError, StairArrow};
use crate::recollement::{RecollementContext, RecollementError};
use crate::repmod::{ext_dim, Module, ModuleError};

/// Default cap on the number of filtrations enumerated by a component scan.
pub const DEFAULT_FILTRATION_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RichardsonError {
    #[error("invalid dimension filtration: {0}")]
    InvalidFiltration(#[from] QuiverError),
    #[error("filtration has {got_s} layers over {got_n} vertices, expected {s} over {n}")]
    WrongShape { s: usize, n: usize, got_s: usize, got_n: usize },
    #[error("at least one sample is required")]
    NoSamples,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Recollement(#[from] RecollementError),
}

/// Independent stream `index` derived from `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn check_filtration(n: &NsqAlgebra, dd: &DimFiltration) -> Result<(), RichardsonError> {
    let (s, nv) = (n.s(), n.base().n_vertices());
    if dd.s() != s || dd.n_vertices() != nv {
        return Err(RichardsonError::WrongShape {
            s,
            n: nv,
            got_s: dd.s(),
            got_n: dd.n_vertices(),
        });
    }
    dd.check_monotone()?;
    Ok(())
}

/// A point of rep_dd in standard coordinates, with its Δ-filtered N_s(Q)-module.
#[derive(Debug, Clone)]
pub struct FlaggedSample {
    pub dd: DimFiltration,
    /// M_a as d_j × d_i matrices mapping F_i^(t) into F_j^(t−1).
    pub matrices: Vec<Matrix>,
    pub module: Module,
}

impl FlaggedSample {
    /// The kQ/J^s-module (k^d, M_a).
    pub fn corner_module(&self, ctx: &RecollementContext) -> Module {
        let dims = self.dd.top().0.clone();
        Module::new(ctx.corner(), self.module.field(), dims, self.matrices.clone())
            .expect("flag-compatible matrices satisfy the truncation")
    }
}

/// Layer of coordinate `c` at vertex `i`: the least t with c < d_i^(t).
fn coordinate_layer(dd: &DimFiltration, i: usize, c: usize) -> usize {
    (1..=dd.s()).find(|&t| c < dd.at(i, t)).expect("coordinate inside the top space")
}

/// Uniform entries in the blocks allowed by the standard flag.
pub fn sample_flagged<R: Rng + ?Sized>(n: &NsqAlgebra, dd: &DimFiltration, field: Field, rng: &mut R) -> Result<FlaggedSample, RichardsonError> {
    check_filtration(n, dd)?;
    let base = n.base();
    let matrices: Vec<Matrix> = base
        .arrows()
        .iter()
        .map(|a| {
            let (di, dj) = (dd.top().0[a.source], dd.top().0[a.target]);
            let mut m = Matrix::zeros(field, dj, di);
            for c in 0..di {
                let t = coordinate_layer(dd, a.source, c);
                for r in 0..dd.at(a.target, t - 1) {
                    m.set(r, c, field.random(rng));
                }
            }
            m
        })
        .collect();
    let module = flagged_module(n, dd, field, &matrices)?;
    Ok(FlaggedSample {
        dd: dd.clone(),
        matrices,
        module,
    })
}

/// N(F, M): F_i^(t) at i_t, inclusions as verticals, restrictions of M_a as diagonals.
pub fn flagged_module(n: &NsqAlgebra, dd: &DimFiltration, field: Field, matrices: &[Matrix]) -> Result<Module, RichardsonError> {
    check_filtration(n, dd)?;
    let st = n.staircase();
    let base = n.base();
    let dims = dd.to_staircase_vec();
    let action = st
        .kinds()
        .iter()
        .map(|k| match *k {
            StairArrow::Vertical { vertex, layer } => {
                Matrix::identity(field, dd.at(vertex, layer + 1)).block(0, 0, dd.at(vertex, layer + 1), dd.at(vertex, layer))
            }
            StairArrow::Diagonal { arrow, layer } => {
                let a = &base.arrows()[arrow];
                matrices[arrow].block(0, 0, dd.at(a.target, layer - 1), dd.at(a.source, layer))
            }
        })
        .collect();
    Ok(Module::new(n.algebra(), field, dims, action)?)
}

/// Outcome of a search for a rigid Δ-filtered module.
#[derive(Debug, Clone)]
pub enum RichardsonVerdict {
    /// A sample with Ext¹ = 0; the witness certifies a Richardson orbit.
    RigidFound { witness: FlaggedSample, sample_index: u64, samples: u64, seed: u64 },
    /// No rigid sample; `min_ext1` bounds the generic value from above.
    NoRigidAmongSamples { min_ext1: usize, histogram: BTreeMap<usize, u64>, samples: u64, seed: u64 },
}

impl RichardsonVerdict {
    pub fn is_rigid_found(&self) -> bool {
        matches!(self, RichardsonVerdict::RigidFound { .. })
    }
}

/// Samples rep_dd in parallel, one stream per sample, and reports the first rigid one.
pub fn richardson_search(n: &NsqAlgebra, dd: &DimFiltration, field: Field, samples: u64, seed: u64) -> Result<RichardsonVerdict, RichardsonError> {
    check_filtration(n, dd)?;
    if samples == 0 {
        return Err(RichardsonError::NoSamples);
    }
    const CHUNK: u64 = 32;
    let mut histogram = BTreeMap::new();
    let mut start = 0;
    while start < samples {
        let end = (start + CHUNK).min(samples);
        let results: Vec<(u64, usize)> = (start..end)
            .into_par_iter()
            .map(|k| {
                let x = sample_flagged(n, dd, field, &mut stream_rng(seed, k)).expect("filtration already checked");
                (k, ext_dim(&x.module, &x.module, 1).expect("same algebra"))
            })
            .collect();
        if let Some(&(k, _)) = results.iter().find(|(_, e)| *e == 0) {
            let witness = sample_flagged(n, dd, field, &mut stream_rng(seed, k))?;
            return Ok(RichardsonVerdict::RigidFound {
                witness,
                sample_index: k,
                samples,
                seed,
            });
        }
        for (_, e) in results {
            *histogram.entry(e).or_insert(0) += 1;
        }
        start = end;
    }
    let min_ext1 = *histogram.keys().next().expect("at least one sample");
    Ok(RichardsonVerdict::NoRigidAmongSamples {
        min_ext1,
        histogram,
        samples,
        seed,
    })
}

/// Lifts the witness entries to Q (symmetric residues) and recomputes Ext¹ there.
pub fn revalidate_over_rationals(witness: &FlaggedSample, n: &NsqAlgebra) -> Result<usize, RichardsonError> {
    let q = Field::Rational;
    let matrices = witness.matrices.iter().map(|m| m.to_field(q)).collect::<Result<Vec<_>, _>>().map_err(ModuleError::from)?;
    let m = flagged_module(n, &witness.dd, q, &matrices)?;
    Ok(ext_dim(&m, &m, 1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftMode {
    C,
    R,
}

/// A lift c(M) or r(M) with the rigidity data on both sides.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub mode: LiftMode,
    pub dd: DimFiltration,
    pub module: Module,
    pub ext1_corner: usize,
    pub ext1_lift: usize,
    /// Lifted dimension filtrations always have the relaxed Richardson property.
    pub relaxed: bool,
    /// False only if M is rigid while the lift is not.
    pub transfer_holds: bool,
}

pub fn lift_rigid(ctx: &RecollementContext, m: &Module, mode: LiftMode) -> Result<LiftReport, RichardsonError> {
    let module = match mode {
        LiftMode::C => ctx.c_of(m)?,
        LiftMode::R => ctx.r_of(m)?,
    };
    let ext1_corner = ext_dim(m, m, 1)?;
    let ext1_lift = ext_dim(&module, &module, 1)?;
    Ok(LiftReport {
        mode,
        dd: module.dim_filtration()?,
        module,
        ext1_corner,
        ext1_lift,
        relaxed: true,
        transfer_holds: ext1_corner != 0 || ext1_lift == 0,
    })
}

/// Dim c of the corner module of every sample, the pointwise maximum, and the histogram.
#[derive(Debug, Clone)]
pub struct GenericDimC {
    pub generic: DimFiltration,
    pub histogram: BTreeMap<DimFiltration, u64>,
}

fn pointwise_max(a: &DimFiltration, b: &DimFiltration) -> DimFiltration {
    let layers = a
        .layers()
        .iter()
        .zip(b.layers())
        .map(|(x, y)| DimVector(x.0.iter().zip(&y.0).map(|(p, q)| *p.max(q)).collect()))
        .collect();
    DimFiltration::layered(layers).expect("same shape")
}

/// Dim c(M) for a sampled point of rep_dd.
fn sampled_dim_c(ctx: &RecollementContext, dd: &DimFiltration, field: Field, rng: &mut ChaCha8Rng) -> Result<(DimFiltration, Module), RichardsonError> {
    let x = sample_flagged(ctx.nsq(), dd, field, rng)?;
    let m = x.corner_module(ctx);
    let c = ctx.c_of(&m)?;
    Ok((c.dim_filtration()?, m))
}

pub fn generic_dim_c(ctx: &RecollementContext, dd: &DimFiltration, field: Field, samples: u64, seed: u64) -> Result<GenericDimC, RichardsonError> {
    check_filtration(ctx.nsq(), dd)?;
    if samples == 0 {
        return Err(RichardsonError::NoSamples);
    }
    let observed: Vec<DimFiltration> = (0..samples)
        .into_par_iter()
        .map(|k| sampled_dim_c(ctx, dd, field, &mut stream_rng(seed, k)).map(|(c, _)| c))
        .collect::<Result<_, _>>()?;
    let mut histogram = BTreeMap::new();
    for c in &observed {
        *histogram.entry(c.clone()).or_insert(0) += 1;
    }
    let generic = observed.iter().skip(1).fold(observed[0].clone(), |acc, c| pointwise_max(&acc, c));
    Ok(GenericDimC { generic, histogram })
}

/// A maximal Dim c stratum: the closure of its image is an irreducible component.
#[derive(Debug, Clone)]
pub struct Component {
    pub dd: DimFiltration,
    pub witness: Module,
    /// Σ d_i² − ⟨dd, dd⟩.
    pub dim: i64,
}

#[derive(Debug, Clone)]
pub struct ComponentScan {
    pub components: Vec<Component>,
    pub histogram: BTreeMap<DimFiltration, u64>,
    pub filtrations: usize,
    pub truncated: bool,
}

/// Samples every rep_dd with top d and keeps the maximal observed values of Dim c.
pub fn component_scan(
    ctx: &RecollementContext,
    d: &DimVector,
    field: Field,
    samples_per_dd: u64,
    seed: u64,
    cap: usize,
) -> Result<ComponentScan, RichardsonError> {
    let n = ctx.nsq();
    if d.0.len() != n.base().n_vertices() {
        return Err(RichardsonError::WrongShape {
            s: n.s(),
            n: n.base().n_vertices(),
            got_s: n.s(),
            got_n: d.0.len(),
        });
    }
    if samples_per_dd == 0 {
        return Err(RichardsonError::NoSamples);
    }
    let (dds, truncated) = filtrations_with_top(d, n.s(), cap);
    let tasks: Vec<(usize, u64)> = (0..dds.len()).flat_map(|i| (0..samples_per_dd).map(move |k| (i, k))).collect();
    let observed: Vec<(DimFiltration, Module)> = tasks
        .par_iter()
        .map(|&(i, k)| sampled_dim_c(ctx, &dds[i], field, &mut stream_rng(seed, i as u64 * samples_per_dd + k)))
        .collect::<Result<_, _>>()?;
    let mut histogram = BTreeMap::new();
    let mut witnesses: BTreeMap<DimFiltration, Module> = BTreeMap::new();
    for (c, m) in observed {
        *histogram.entry(c.clone()).or_insert(0) += 1;
        witnesses.entry(c).or_insert(m);
    }
    let keys: Vec<&DimFiltration> = histogram.keys().collect();
    let d2: i64 = d.0.iter().map(|&x| (x * x) as i64).sum();
    let components = keys
        .iter()
        .filter(|&&x| !keys.iter().any(|&y| y != x && x.le(y)))
        .map(|&x| Component {
            dd: x.clone(),
            witness: witnesses[x].clone(),
            dim: d2 - n.euler_form(x, x),
        })
        .collect();
    Ok(ComponentScan {
        components,
        histogram,
        filtrations: dds.len(),
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qh::{self, is_delta_filtered, LayeredIndex};
    use crate::quiver::catalog::*;
    use crate::quiver::Quiver;
    use proptest::prelude::*;
    use rand::Rng;

    fn fp() -> Field {
        Field::default_prime()
    }

    fn rows(r: &[&[usize]]) -> DimFiltration {
        DimFiltration::from_rows(r).unwrap()
    }

    #[test]
    fn sample_block_patterns() {
        let n = NsqAlgebra::new(&jordan(), 2);
        let mut rng = stream_rng(1, 0);
        let x = sample_flagged(&n, &rows(&[&[1], &[2]]), fp(), &mut rng).unwrap();
        let a = &x.matrices[0];
        // image inside the flag line, and the line is killed
        assert!(a.get(1, 0).is_zero() && a.get(1, 1).is_zero() && a.get(0, 0).is_zero());
        assert!(a.mul(a).is_zero());
        let n1 = NsqAlgebra::new(&kronecker(), 1);
        let y = sample_flagged(&n1, &rows(&[&[2, 3]]), fp(), &mut rng).unwrap();
        assert!(y.matrices.iter().all(|m| m.is_zero()));
        let nk = NsqAlgebra::new(&kronecker(), 2);
        let z = sample_flagged(&nk, &rows(&[&[0, 1], &[1, 1]]), fp(), &mut rng).unwrap();
        assert!(z.matrices.iter().all(|m| m.rows() == 1 && m.cols() == 1 && !m.is_zero()));
    }

    #[test]
    fn invalid_filtrations_are_rejected() {
        let n = NsqAlgebra::new(&a2(), 2);
        let bad = DimFiltration::layered(vec![DimVector(vec![1, 0]), DimVector(vec![0, 0])]).unwrap();
        assert!(matches!(richardson_search(&n, &bad, fp(), 1, 0), Err(RichardsonError::InvalidFiltration(_))));
        assert!(matches!(
            richardson_search(&n, &rows(&[&[0, 0], &[1, 1], &[1, 1]]), fp(), 1, 0),
            Err(RichardsonError::WrongShape { .. })
        ));
    }

    #[test]
    fn kronecker_has_no_rigid_sample() {
        let n = NsqAlgebra::new(&kronecker(), 2);
        let dd = rows(&[&[0, 1], &[1, 1]]);
        match richardson_search(&n, &dd, fp(), 100, 7).unwrap() {
            RichardsonVerdict::NoRigidAmongSamples { min_ext1, samples, .. } => {
                assert!(min_ext1 >= 1);
                assert_eq!(samples, 100);
            }
            v => panic!("unexpected verdict {v:?}"),
        }
        let ctx = RecollementContext::new(&n).unwrap();
        assert_eq!(generic_dim_c(&ctx, &dd, fp(), 50, 7).unwrap().generic, dd);
    }

    #[test]
    fn projective_filtrations_have_rigid_samples() {
        for q in [a2(), two_arms(), kronecker()] {
            let n = NsqAlgebra::new(&q, 2);
            for i in 0..q.n_vertices() {
                for t in 1..=2 {
                    let p = qh::projective(&n, fp(), LayeredIndex::new(i, t));
                    let dd = p.dim_filtration().unwrap();
                    let v = richardson_search(&n, &dd, fp(), 20, 3).unwrap();
                    let RichardsonVerdict::RigidFound { witness, .. } = v else { panic!("projective {i} {t}") };
                    assert!(is_delta_filtered(&witness.module));
                    assert_eq!(revalidate_over_rationals(&witness, &n).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn search_is_deterministic() {
        let n = NsqAlgebra::new(&kronecker(), 2);
        let dd = rows(&[&[0, 1], &[1, 2]]);
        let a = format!("{:?}", richardson_search(&n, &dd, fp(), 30, 11).unwrap());
        let b = format!("{:?}", richardson_search(&n, &dd, fp(), 30, 11).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn lift_examples() {
        let n = NsqAlgebra::new(&two_arms(), 2);
        let ctx = RecollementContext::new(&n).unwrap();
        let m = crate::repmod::injective(ctx.corner(), fp(), 1).direct_sum(&crate::repmod::projective(ctx.corner(), fp(), 1));
        let r = lift_rigid(&ctx, &m, LiftMode::R).unwrap();
        let c = lift_rigid(&ctx, &m, LiftMode::C).unwrap();
        assert_eq!(r.ext1_lift, 0);
        assert!(c.ext1_lift >= 1);
        let zero = Module::zero(ctx.corner(), fp());
        let z = lift_rigid(&ctx, &zero, LiftMode::C).unwrap();
        assert!(z.module.is_zero() && z.ext1_lift == 0 && z.transfer_holds);
        for i in 0..3 {
            let p = crate::repmod::projective(ctx.corner(), fp(), i);
            for mode in [LiftMode::C, LiftMode::R] {
                let l = lift_rigid(&ctx, &p, mode).unwrap();
                assert_eq!(l.ext1_corner, 0);
                assert_eq!(l.ext1_lift, 0);
            }
        }
    }

    #[test]
    fn component_scan_examples() {
        let ctx = RecollementContext::new(&NsqAlgebra::new(&jordan(), 2)).unwrap();
        let scan = component_scan(&ctx, &DimVector(vec![2]), fp(), 10, 5, DEFAULT_FILTRATION_CAP).unwrap();
        assert_eq!(scan.components.len(), 1);
        assert_eq!(scan.components[0].dim, 2);
        assert_eq!(scan.components[0].dd, rows(&[&[1], &[2]]));
        for q in [a2(), kronecker(), jordan()] {
            let ctx = RecollementContext::new(&NsqAlgebra::new(&q, 1)).unwrap();
            let d = DimVector(vec![2; q.n_vertices()]);
            let scan = component_scan(&ctx, &d, fp(), 3, 1, DEFAULT_FILTRATION_CAP).unwrap();
            assert_eq!(scan.components.len(), 1);
            assert_eq!(scan.components[0].dim, 0);
        }
        // paths shorter than s: rep_d(kQ/J^s) = rep_d(kQ) is irreducible
        let ctx = RecollementContext::new(&NsqAlgebra::new(&a2(), 2)).unwrap();
        let scan = component_scan(&ctx, &DimVector(vec![1, 1]), fp(), 10, 2, DEFAULT_FILTRATION_CAP).unwrap();
        assert_eq!(scan.components.len(), 1);
        assert_eq!(scan.components[0].dim, 1);
        let tiny = component_scan(&ctx, &DimVector(vec![2, 2]), fp(), 1, 2, 3).unwrap();
        assert!(tiny.truncated && tiny.filtrations == 3);
    }

    fn weak_filtration(q: &Quiver, s: usize, rng: &mut ChaCha8Rng) -> DimFiltration {
        let mut cur = vec![0usize; q.n_vertices()];
        let layers = (0..s)
            .map(|_| {
                for x in cur.iter_mut() {
                    *x += rng.gen_range(0..2);
                }
                DimVector(cur.clone())
            })
            .collect();
        DimFiltration::new(layers).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn samples_are_filtered_with_given_dimension(seed in any::<u64>(), s in 1usize..4) {
            let mut rng = stream_rng(seed, 0);
            for q in [two_arms(), jordan()] {
                let n = NsqAlgebra::new(&q, s);
                let dd = weak_filtration(&q, s, &mut rng);
                let x = sample_flagged(&n, &dd, fp(), &mut rng).unwrap();
                prop_assert!(is_delta_filtered(&x.module));
                prop_assert_eq!(x.module.dim_filtration().unwrap(), dd.clone());
                let ctx = RecollementContext::new(&n).unwrap();
                let m = x.corner_module(&ctx);
                prop_assert_eq!(ctx.restrict_e(&x.module).unwrap(), m);
            }
        }

        #[test]
        fn sampled_dim_c_never_exceeds_generic(seed in any::<u64>()) {
            let mut rng = stream_rng(seed, 0);
            let n = NsqAlgebra::new(&kronecker(), 2);
            let ctx = RecollementContext::new(&n).unwrap();
            let dd = weak_filtration(&kronecker(), 2, &mut rng);
            let g = generic_dim_c(&ctx, &dd, fp(), 20, seed).unwrap();
            let (c, m) = sampled_dim_c(&ctx, &dd, fp(), &mut rng).unwrap();
            prop_assert!(c.le(&g.generic));
            // Dim c(M) ≤ dd ≤ Dim r(M) for every point of rep_dd
            let r = ctx.r_of(&m).unwrap().dim_filtration().unwrap();
            prop_assert!(c.le(&dd) && dd.le(&r));
        }
    }
}
