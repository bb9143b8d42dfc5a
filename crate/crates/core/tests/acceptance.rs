//! Acceptance suite: one pass/fail line per criterion, exit status 1 on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use nilquiver::algebra::NsqAlgebra;
use nilquiver::linalg::{Field, Matrix};
use nilquiver::qh::{costandard_module, injective, is_delta_filtered, projective, standard_module, tilting_module, LayeredIndex};
use nilquiver::quiver::catalog::{a2, a_n_oriented, d4_sink, jordan, kronecker, loops_e6, two_arms};
use nilquiver::quiver::{classify_components, euler_form_one, filtrations_with_top, separation_quiver, ComponentClass, DimFiltration, DimVector, DynkinType, Quiver};
use nilquiver::recollement::RecollementContext;
use nilquiver::repmod::{self, ext_dim, ext_dims, is_rigid, iso_probe, minimal_projective_resolution, random_module, Module};
use nilquiver::richardson::{component_scan, generic_dim_c, richardson_search, stream_rng, RichardsonVerdict};
use rand::Rng;

const CORNER_LIMIT: Duration = Duration::from_secs(5);
const KRONECKER_LIMIT: Duration = Duration::from_secs(10);
const A2_LIMIT: Duration = Duration::from_secs(60);
const SCAN_LIMIT: Duration = Duration::from_secs(5);
const ISO_TRIALS: usize = 20;
const SEED: u64 = 20_240_501;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn fp() -> Field {
    Field::default_prime()
}

fn suite_quivers() -> Vec<(&'static str, Quiver)> {
    vec![
        ("A_2", a2()),
        ("Jordan", jordan()),
        ("Kronecker", kronecker()),
        ("1←2→3", two_arms()),
        ("D_4", d4_sink()),
        ("E_6 example", loops_e6()),
    ]
}

fn rows(r: &[&[usize]]) -> DimFiltration {
    DimFiltration::from_rows(r).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

fn indices(n: &NsqAlgebra) -> Vec<LayeredIndex> {
    (1..=n.s()).flat_map(|t| (0..n.base().n_vertices()).map(move |i| LayeredIndex::new(i, t))).collect()
}

fn class(m: &Module) -> Vec<i64> {
    m.dims().iter().map(|&x| x as i64).collect()
}

fn plus(a: &[i64], b: &[i64], sign: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + sign * y).collect()
}

fn corner_isomorphism() -> Verdict {
    let start = Instant::now();
    let mut checked = 0usize;
    for (name, q) in suite_quivers() {
        for s in 1..=3 {
            let n = NsqAlgebra::new(&q, s);
            let alg = n.algebra();
            let top: Vec<usize> = (0..q.n_vertices()).map(|i| n.vertex(i, s)).collect();
            let corner_dim = alg.basis().iter().filter(|b| top.contains(&b.source) && top.contains(&b.target)).count();
            let paths = q.paths_up_to_length(s - 1);
            ensure(corner_dim == paths.len(), || format!("{name}, s={s}: dim eNe = {corner_dim}, paths = {}", paths.len()))?;
            let images: Vec<usize> = paths
                .iter()
                .map(|p| n.phi_iso(p).ok_or_else(|| format!("{name}, s={s}: no image for {}", p.display(&q))))
                .collect::<Result<_, _>>()?;
            let mut sorted = images.clone();
            sorted.sort_unstable();
            sorted.dedup();
            ensure(sorted.len() == paths.len(), || format!("{name}, s={s}: images not distinct"))?;
            for (x, p) in paths.iter().enumerate() {
                for (y, r) in paths.iter().enumerate() {
                    let product = alg.mul(images[y], images[x]);
                    let expected = if p.target == r.source && p.len() + r.len() < s { n.phi_iso(&p.concat(r)) } else { None };
                    ensure(product == expected, || format!("{name}, s={s}: product of {} then {}", p.display(&q), r.display(&q)))?;
                    checked += 1;
                }
            }
        }
    }
    within(start, CORNER_LIMIT)?;
    Ok(format!("{checked} basis pairs"))
}

fn global_dimension() -> Verdict {
    let mut max_len = 0;
    let mut count = 0;
    for (name, q) in suite_quivers() {
        for s in 1..=3 {
            let n = NsqAlgebra::new(&q, s);
            let mut rng = stream_rng(SEED, (s * 10) as u64);
            for _ in 0..50 {
                let m = random_module(n.algebra(), fp(), &mut rng, 2);
                let r = minimal_projective_resolution(&m, 3).map_err(|e| format!("{name}, s={s}: {e}"))?;
                ensure(r.length() <= 2, || format!("{name}, s={s}: resolution of length {}", r.length()))?;
                max_len = max_len.max(r.length());
                count += 1;
            }
        }
    }
    Ok(format!("{count} modules, longest resolution {max_len}"))
}

fn random_filtration<R: Rng>(n_vertices: usize, s: usize, rng: &mut R) -> DimFiltration {
    let mut layers = vec![vec![0usize; n_vertices]; s];
    for i in 0..n_vertices {
        let mut v = 0;
        for layer in layers.iter_mut() {
            v += rng.gen_range(0..=1);
            layer[i] = v;
        }
    }
    DimFiltration::layered(layers.into_iter().map(DimVector).collect()).unwrap()
}

fn euler_form() -> Verdict {
    let (mut pairs, mut filtrations) = (0, 0);
    for (name, q) in suite_quivers() {
        for s in 1..=3 {
            let n = NsqAlgebra::new(&q, s);
            let mut rng = stream_rng(SEED, 100 + s as u64);
            for _ in 0..30 {
                let m = random_module(n.algebra(), fp(), &mut rng, 2);
                let k = random_module(n.algebra(), fp(), &mut rng, 2);
                let e = ext_dims(&m, &k, 3).map_err(|e| e.to_string())?;
                ensure(e[3] == 0, || format!("{name}, s={s}: Ext³ ≠ 0"))?;
                let alt = e[0] as i64 - e[1] as i64 + e[2] as i64;
                let form = n.euler_form(&m.dim_filtration().unwrap(), &k.dim_filtration().unwrap());
                ensure(alt == form, || format!("{name}, s={s}: Σ(−1)^k ext = {alt}, form = {form}"))?;
                pairs += 1;
            }
            for _ in 0..100 {
                let dd = random_filtration(q.n_vertices(), s, &mut rng);
                let a = euler_form_one(&q, &dd);
                let b = n.euler_form(&dd, &dd);
                ensure(a == b, || format!("{name}, {dd}: ⟨dd,dd⟩^(1) = {a}, ⟨dd,dd⟩ = {b}"))?;
                filtrations += 1;
            }
        }
    }
    Ok(format!("{pairs} module pairs, {filtrations} filtrations"))
}

fn recollement_closed_forms() -> Verdict {
    let mut count = 0;
    for (name, q) in suite_quivers() {
        for s in 1..=3 {
            let ctx = RecollementContext::new(&NsqAlgebra::new(&q, s)).map_err(|e| e.to_string())?;
            let mut rng = stream_rng(SEED, 200 + s as u64);
            for _ in 0..50 {
                let m = random_module(ctx.corner(), fp(), &mut rng, 2);
                let r = ctx.r_of(&m).map_err(|e| e.to_string())?;
                let g = ctx.generic_r(&m).map_err(|e| e.to_string())?;
                ensure(r.dims() == g.dims(), || format!("{name}, s={s}: r and generic r differ in dimension"))?;
                ensure(iso_probe(&r, &g, &mut rng, ISO_TRIALS), || format!("{name}, s={s}: r ≇ generic r"))?;
                let c = ctx.c_of(&m).map_err(|e| e.to_string())?;
                for (label, x) in [("c", &c), ("r", &r)] {
                    let back = ctx.restrict_e(x).map_err(|e| e.to_string())?;
                    ensure(iso_probe(&back, &m, &mut rng, ISO_TRIALS), || format!("{name}, s={s}: e·{label}(M) ≇ M"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} modules"))
}

fn running_example() -> Verdict {
    let ctx = RecollementContext::new(&NsqAlgebra::new(&two_arms(), 2)).map_err(|e| e.to_string())?;
    let v2 = 1;
    let m = repmod::injective(ctx.corner(), fp(), v2).direct_sum(&repmod::projective(ctx.corner(), fp(), v2));
    let r = ctx.r_of(&m).map_err(|e| e.to_string())?;
    let c = ctx.c_of(&m).map_err(|e| e.to_string())?;
    let (dr, dc) = (r.dim_filtration().unwrap(), c.dim_filtration().unwrap());
    ensure(dr == rows(&[&[1, 1, 1], &[1, 2, 1]]), || format!("Dim r = {dr}"))?;
    ensure(dc == rows(&[&[1, 0, 1], &[1, 2, 1]]), || format!("Dim c = {dc}"))?;
    let (er, ec) = (ext_dim(&r, &r, 1).unwrap(), ext_dim(&c, &c, 1).unwrap());
    ensure(er == 0, || format!("Ext¹(r, r) = {er}"))?;
    ensure(ec >= 1, || format!("Ext¹(c, c) = {ec}"))?;
    Ok(format!("Dim r = {dr}, Dim c = {dc}, Ext¹(c,c) = {ec}"))
}

fn kronecker_example() -> Verdict {
    let start = Instant::now();
    let n = NsqAlgebra::new(&kronecker(), 2);
    let dd = rows(&[&[0, 1], &[1, 1]]);
    let verdict = richardson_search(&n, &dd, fp(), 100, SEED).map_err(|e| e.to_string())?;
    let RichardsonVerdict::NoRigidAmongSamples { min_ext1, .. } = verdict else {
        return Err("a rigid sample was found".into());
    };
    ensure(min_ext1 >= 1, || format!("min Ext¹ = {min_ext1}"))?;
    let again = richardson_search(&n, &dd, fp(), 100, SEED).map_err(|e| e.to_string())?;
    ensure(matches!(again, RichardsonVerdict::NoRigidAmongSamples { min_ext1: m, .. } if m == min_ext1), || "search is not deterministic".into())?;
    let ctx = RecollementContext::new(&n).map_err(|e| e.to_string())?;
    let g = generic_dim_c(&ctx, &dd, fp(), 100, SEED).map_err(|e| e.to_string())?;
    ensure(g.generic == dd, || format!("generic Dim c = {}", g.generic))?;
    within(start, KRONECKER_LIMIT)?;
    Ok(format!("min Ext¹ = {min_ext1}, generic Dim c = {}", g.generic))
}

fn d4_example() -> Verdict {
    let n = NsqAlgebra::new(&d4_sink(), 3);
    let dd = rows(&[&[0, 0, 1, 0], &[0, 0, 2, 0], &[1, 1, 2, 1]]);
    match richardson_search(&n, &dd, fp(), 200, SEED).map_err(|e| e.to_string())? {
        RichardsonVerdict::NoRigidAmongSamples { min_ext1, .. } if min_ext1 >= 1 => Ok(format!("min Ext¹ = {min_ext1} over 200 samples")),
        RichardsonVerdict::NoRigidAmongSamples { min_ext1, .. } => Err(format!("min Ext¹ = {min_ext1}")),
        RichardsonVerdict::RigidFound { sample_index, .. } => Err(format!("sample {sample_index} is rigid")),
    }
}

fn a2_algorithm() -> Verdict {
    let start = Instant::now();
    let mut all = Vec::new();
    for s in 1..=4 {
        let n = NsqAlgebra::new(&a2(), s);
        for a in 0..=3 {
            for b in 0..=3 {
                let (dds, _) = filtrations_with_top(&DimVector(vec![a, b]), s, usize::MAX);
                for dd in dds {
                    let r = nilquiver::a2::a2_rigid_module(&n, fp(), &dd).map_err(|e| format!("{dd}: {e}"))?;
                    ensure(r.module.dim_filtration().unwrap() == dd, || format!("{dd}: wrong dimension"))?;
                    ensure(is_delta_filtered(&r.module), || format!("{dd}: not Δ-filtered"))?;
                    ensure(r.ext1 == 0, || format!("{dd}: Ext¹ = {}", r.ext1))?;
                    all.push((s, dd, r.module));
                }
            }
        }
    }
    let mut rng = stream_rng(SEED, 300);
    for k in 0..20 {
        let (s, dd, m) = &all[rng.gen_range(0..all.len())];
        let n = NsqAlgebra::new(&a2(), *s);
        let RichardsonVerdict::RigidFound { witness, .. } = richardson_search(&n, dd, fp(), 20, SEED + k).map_err(|e| e.to_string())? else {
            return Err(format!("{dd}: no rigid sample for A_2"));
        };
        ensure(iso_probe(m, &witness.module, &mut rng, ISO_TRIALS), || format!("{dd}: output ≇ sampled witness"))?;
    }
    within(start, A2_LIMIT)?;
    Ok(format!("{} filtrations, 20 witness cross-checks", all.len()))
}

fn qh_sequences() -> Verdict {
    let mut checks = 0;
    for (name, q) in suite_quivers() {
        for s in 1..=3 {
            let n = NsqAlgebra::new(&q, s);
            for idx in indices(&n) {
                let t = idx.layer;
                let delta = standard_module(&n, fp(), idx);
                if t >= 2 {
                    let mut cls = class(&projective(&n, fp(), idx));
                    for a in q.arrows().iter().filter(|a| a.source == idx.vertex) {
                        cls = plus(&cls, &class(&projective(&n, fp(), LayeredIndex::new(a.target, t - 1))), -1);
                    }
                    ensure(cls == class(&delta), || format!("{name}, s={s}: (Res) fails at {idx}"))?;
                    let cores = plus(&class(&injective(&n, fp(), idx)), &class(&injective(&n, fp(), LayeredIndex::new(idx.vertex, t - 1))), -1);
                    ensure(cores == class(&costandard_module(&n, fp(), idx)), || format!("{name}, s={s}: (Cores) fails at {idx}"))?;
                }
                if t < s {
                    let mut cls = class(&delta);
                    for a in q.arrows().iter().filter(|a| a.target == idx.vertex) {
                        cls = plus(&cls, &class(&tilting_module(&n, fp(), LayeredIndex::new(a.source, t + 1))), 1);
                    }
                    ensure(cls == class(&tilting_module(&n, fp(), idx)), || format!("{name}, s={s}: (Filt) fails at {idx}"))?;
                }
                checks += 1;
            }
            if s == 3 && q.n_vertices() <= 3 {
                for x in indices(&n) {
                    for y in indices(&n).into_iter().filter(|y| y.layer >= x.layer) {
                        let e = ext_dim(&standard_module(&n, fp(), x), &standard_module(&n, fp(), y), 1).unwrap();
                        ensure(e == 0, || format!("{name}: Ext¹(Δ{x}, Δ{y}) = {e}"))?;
                    }
                }
            }
        }
    }
    let mut rng = stream_rng(SEED, 400);
    let mut subs = 0;
    for (name, q) in suite_quivers() {
        let n = NsqAlgebra::new(&q, 3);
        let idx = indices(&n);
        for _ in 0..10 {
            let m = projective(&n, fp(), idx[rng.gen_range(0..idx.len())]).direct_sum(&tilting_module(&n, fp(), idx[rng.gen_range(0..idx.len())]));
            let mut gens = m.zero_subspace();
            let v = rng.gen_range(0..m.dims().len());
            gens[v] = Matrix::random(fp(), m.dims()[v], 1, &mut rng);
            ensure(is_delta_filtered(&m.submodule(&gens).module), || format!("{name}: submodule not Δ-filtered"))?;
            subs += 1;
        }
    }
    Ok(format!("{checks} indices, {subs} submodules"))
}

fn rigidity_transfer() -> Verdict {
    let mut quivers = vec![a2()];
    for f in [[true, true], [true, false], [false, true], [false, false]] {
        quivers.push(a_n_oriented(&f));
    }
    let mut rng = stream_rng(SEED, 500);
    let mut found = 0;
    let mut tries = 0;
    while found < 20 {
        tries += 1;
        ensure(tries <= 2000, || format!("only {found} rigid samples"))?;
        let q = &quivers[tries % quivers.len()];
        let ctx = RecollementContext::new(&NsqAlgebra::new(q, 2)).map_err(|e| e.to_string())?;
        let m = random_module(ctx.corner(), fp(), &mut rng, 3);
        if m.is_zero() || !is_rigid(&m).unwrap() {
            continue;
        }
        let c = ctx.c_of(&m).map_err(|e| e.to_string())?;
        let e = ext_dim(&c, &c, 1).unwrap();
        ensure(e == 0, || format!("Ext¹(c(M), c(M)) = {e} for M of dims {:?}", m.dims()))?;
        found += 1;
    }
    Ok(format!("20 rigid modules from {tries} samples"))
}

fn component_oracle() -> Verdict {
    let start = Instant::now();
    let f3 = Field::prime(3).unwrap();
    let ctx = RecollementContext::new(&NsqAlgebra::new(&jordan(), 2)).map_err(|e| e.to_string())?;
    let mut square_zero = 0;
    let mut best: Option<DimFiltration> = None;
    let mut strata = std::collections::BTreeSet::new();
    for code in 0..81u32 {
        let entries: Vec<i64> = (0..4).map(|k| ((code / 3u32.pow(k)) % 3) as i64).collect();
        let x = Matrix::from_i64(f3, 2, 2, &entries);
        if !x.mul(&x).is_zero() {
            continue;
        }
        square_zero += 1;
        let m = Module::new(ctx.corner(), f3, vec![2], vec![x]).map_err(|e| e.to_string())?;
        let dc = ctx.c_of(&m).map_err(|e| e.to_string())?.dim_filtration().unwrap();
        strata.insert(dc.clone());
        best = match best {
            Some(b) if dc.le(&b) => Some(b),
            Some(b) if b.le(&dc) => Some(dc),
            None => Some(dc),
            Some(b) => return Err(format!("incomparable maximal strata {b} and {dc}")),
        };
    }
    let best = best.ok_or("no square-zero matrices")?;
    // 9 = 3² points: the variety has dimension 2
    ensure(square_zero == 9, || format!("{square_zero} square-zero matrices over F_3"))?;
    let dim = 4 - ctx.nsq().euler_form(&best, &best);
    ensure(dim == 2, || format!("dimension {dim}"))?;
    let scan = component_scan(&ctx, &DimVector(vec![2]), f3, 20, SEED, usize::MAX).map_err(|e| e.to_string())?;
    ensure(scan.components.len() == 1, || format!("{} components", scan.components.len()))?;
    ensure(scan.components[0].dd == best && scan.components[0].dim == dim, || format!("scan gives {} of dim {}", scan.components[0].dd, scan.components[0].dim))?;
    within(start, SCAN_LIMIT)?;
    Ok(format!("single maximal Dim c {best} of dimension {dim}; {} strata", strata.len()))
}

fn separation_quiver_example() -> Verdict {
    let sep = separation_quiver(&loops_e6());
    let classes = classify_components(&sep);
    let types: Vec<_> = classes.iter().map(|(_, c)| c.clone()).collect();
    ensure(types == vec![ComponentClass::Dynkin(DynkinType::E6)], || format!("classified as {types:?}"))?;
    let out = nilquiver::cli::run(["nilquiver", "sepquiver", concat!(env!("CARGO_MANIFEST_DIR"), "/data/loops_e6.json")]);
    ensure(out.code == 0, || out.stderr.clone())?;
    ensure(out.stdout.contains("\"E_6; kQ/J² representation-finite\""), || "CLI verdict missing".into())?;
    Ok("E_6; kQ/J² representation-finite".into())
}

/// All k×d matrices of rank k over F_3 spanning candidate F^(1) at one vertex.
fn subspaces_f3(d: usize, k: usize) -> Vec<Matrix> {
    let f3 = Field::prime(3).unwrap();
    let cells = (d * k) as u32;
    (0..3u64.pow(cells))
        .filter_map(|code| {
            let entries: Vec<i64> = (0..cells).map(|c| ((code / 3u64.pow(c)) % 3) as i64).collect();
            let b = Matrix::from_i64(f3, d, k, &entries);
            (b.rank() == k).then_some(b)
        })
        .collect()
}

/// Exact membership in Im π_dd for s = 2 by enumerating F^(1) vertex by vertex:
/// M_a kills F^(1) at the source and maps M into F^(1) at the target.
fn in_image_s2(q: &Quiver, m: &Module, dd: &DimFiltration) -> bool {
    (0..q.n_vertices()).all(|i| {
        let d = m.dims()[i];
        let k = dd.at(i, 1);
        subspaces_f3(d, k).iter().any(|b| {
            q.arrows().iter().enumerate().all(|(ai, a)| {
                let ma = m.action(ai);
                let kills = a.source != i || ma.mul(b).is_zero();
                let contains = a.target != i || Matrix::hstack(m.field(), d, &[b, ma]).rank() == k;
                kills && contains
            })
        })
    })
}

fn fibre_criterion() -> Verdict {
    let f3 = Field::prime(3).unwrap();
    let mut rng = stream_rng(SEED, 600);
    let (mut agree, mut members, mut total) = (0, 0, 0);
    let mut tries = 0;
    while total < 100 {
        tries += 1;
        ensure(tries <= 10_000, || format!("only {total} usable samples"))?;
        let q = if total % 2 == 0 { kronecker() } else { a2() };
        let ctx = RecollementContext::new(&NsqAlgebra::new(&q, 2)).map_err(|e| e.to_string())?;
        let m = random_module(ctx.corner(), f3, &mut rng, 2);
        if m.is_zero() || m.dims().iter().any(|&d| d > 3) {
            continue;
        }
        let lower: Vec<usize> = m.dims().iter().map(|&d| rng.gen_range(0..=d)).collect();
        let dd = DimFiltration::layered(vec![DimVector(lower), DimVector(m.dims().to_vec())]).unwrap();
        let flag = ctx.fibre_data(&m, &dd).map_err(|e| e.to_string())?.necessary;
        let oracle = in_image_s2(&q, &m, &dd);
        total += 1;
        members += usize::from(oracle);
        if flag == oracle {
            agree += 1;
        }
    }
    ensure(members > 0 && members < total, || format!("degenerate sample: {members}/{total} in the image"))?;
    ensure(agree == total, || format!("agreement {agree}/{total}"))?;
    Ok(format!("{agree}/{total} agree, {members} in the image"))
}

fn determinism() -> Verdict {
    let exe = env!("CARGO_BIN_EXE_nilquiver");
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let runs: Vec<Vec<String>> = [
        vec!["--seed", "11", "richardson", "kronecker.json", "--s", "2", "--dd", "0,1;1,2", "--samples", "64"],
        vec!["--seed", "11", "richardson", "d4_sink.json", "--s", "3", "--dd", "0,0,1,0;0,0,2,0;1,1,2,1", "--samples", "40"],
        vec!["--seed", "5", "components", "jordan.json", "--s", "2", "--d", "3", "--samples", "10"],
        vec!["--seed", "2", "analyze", "running_example.json", "--dd", "1,1,1;1,2,1"],
        vec!["--field", "Q", "a2", "--s", "3", "--dd", "0,1;1,1;2,2"],
    ]
    .iter()
    .map(|a| a.iter().map(|x| if x.ends_with(".json") { format!("{data}/{x}") } else { x.to_string() }).collect())
    .collect();
    for args in &runs {
        let first = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        let second = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        ensure(first.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&first.stderr)))?;
        ensure(first.stdout == second.stdout && !first.stdout.is_empty(), || format!("{args:?}: outputs differ"))?;
    }
    Ok(format!("{} commands byte-identical", runs.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("corner isomorphism", corner_isomorphism),
        ("global dimension at most 2", global_dimension),
        ("Euler form", euler_form),
        ("recollement closed forms", recollement_closed_forms),
        ("running example", running_example),
        ("Kronecker has no rigid sample", kronecker_example),
        ("D_4 embedding has no rigid sample", d4_example),
        ("A_2 algorithm", a2_algorithm),
        ("quasi-hereditary sequences", qh_sequences),
        ("rigidity transfer", rigidity_transfer),
        ("component scan oracle", component_oracle),
        ("separation quiver", separation_quiver_example),
        ("s=2 fibre criterion", fibre_criterion),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
