//! Acceptance checks. Runs without the libtest harness so every check prints
//! exactly one PASS/FAIL line; exits nonzero if any check fails.
//!
//! Every comparison below is exact (tolerance 0): all fields are exact.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use gequiv::group::parse_group;
use gequiv::invariants::{evaluate_generators, generic_point};
use gequiv::oracle::{enumerate_group, find_witness};
use gequiv::random::{random_free_map, random_invertible, random_map, random_special, random_with_det};
use gequiv::signature::signature_in_basis;
use gequiv::{
    check_algebraic_independence, compute_signature, decide, decide_affine, decide_gl, decide_subgroup,
    reconstruct_canonical, signatures_equal, verify_witness, DecideOptions, Field, GroupSpec, Matrix, PrimeField,
    Rationals, SampleKey, SampleMap, ScalarField,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cramer, leibniz_det, maps_onto, subsets};

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let checks: [(&str, Check); 11] = [
        ("oracle agreement, GL(2,3)", oracle_gl),
        ("oracle agreement, SL(2,3)", oracle_sl),
        ("oracle agreement, affine GL(2,2)", oracle_affine),
        ("soundness with witness over Q", soundness),
        ("minor-choice invariance", minor_choice),
        ("canonical round trip", canonical_round_trip),
        ("SL separation by scaling", sl_separation),
        ("SL below full rank", sl_reduction),
        ("generator invariance and separation", generators),
        ("algebraic independence", independence),
        ("degenerate inputs", degenerate),
    ];
    // keep failing checks' panic messages on one line
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: gequiv::Error) -> String {
    e.to_string()
}

// ---- oracle agreement over small prime fields ----

/// Pairs mixing orbit members, perturbed orbit members and unrelated maps.
fn prime_pair(
    f: &PrimeField,
    n: usize,
    m: usize,
    shifts: bool,
    gl: &[Matrix<PrimeField>],
    rng: &mut ChaCha8Rng,
) -> (SampleMap<PrimeField>, SampleMap<PrimeField>) {
    let u = random_free_map(f, n, m, rng).unwrap();
    let kind = rng.gen_range(0..3);
    if kind == 0 {
        return (u, random_free_map(f, n, m, rng).unwrap());
    }
    let g = gl.choose(rng).unwrap();
    let mut v = u.transform(g).unwrap();
    if shifts {
        let b: Vec<u64> = (0..n).map(|_| f.random_elem(rng)).collect();
        v = v.translate(&b).unwrap();
    }
    if kind == 2 {
        let key = v.keys().nth(rng.gen_range(0..m)).unwrap().clone();
        let value = (0..n).map(|_| f.random_elem(rng)).collect();
        v = v.with_sample(&key, value).unwrap();
    }
    (u, v)
}

fn oracle_run(p: u64, group: GroupSpec<PrimeField>, pairs: usize, seed: u64) -> Result<String, String> {
    let f = PrimeField::new(p).map_err(e2s)?;
    let n = 2;
    let elements = enumerate_group(&group, n, p).map_err(e2s)?;
    let gl: Vec<Matrix<PrimeField>> =
        enumerate_group(&GroupSpec::GL, n, p).map_err(e2s)?.into_iter().map(|w| w.g).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut yes, mut no) = (0, 0);
    for trial in 0..pairs {
        let m = rng.gen_range(2..=4);
        let (u, v) = prime_pair(&f, n, m, group.is_affine(), &gl, &mut rng);
        let decision = match &group {
            GroupSpec::GL => decide_gl(&u, &v),
            GroupSpec::AffineOver(inner) => decide_affine(&u, &v, inner),
            other => decide_subgroup(&u, &v, other),
        }
        .map_err(e2s)?;
        let truth = find_witness(&u, &v, &elements).is_some();
        ensure(decision.equivalent == truth, || {
            format!("trial {trial}: decision {} vs oracle {truth}", decision.equivalent)
        })?;
        if truth {
            ensure(verify_witness(&u, &v, &decision, &group), || format!("trial {trial}: bad witness"))?;
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!(
        "{pairs}/{pairs} pairs agree against {} enumerated elements ({yes} equivalent, {no} not), mismatches 0",
        elements.len()
    ))
}

fn oracle_gl() -> Result<String, String> {
    oracle_run(3, GroupSpec::GL, 500, 1)
}

fn oracle_sl() -> Result<String, String> {
    let out = oracle_run(3, GroupSpec::SL, 500, 2)?;
    let size = enumerate_group(&GroupSpec::SL, 2, 3).map_err(e2s)?.len();
    ensure(size == 24, || format!("|SL(2,3)| = {size}"))?;
    Ok(out)
}

fn oracle_affine() -> Result<String, String> {
    let group = GroupSpec::affine(GroupSpec::GL);
    let size = enumerate_group(&group, 2, 2).map_err(e2s)?.len();
    // |GL(2,2)| * |GF(2)^2| = 6 * 4
    ensure(size == 24, || format!("affine group has {size} elements"))?;
    oracle_run(2, group, 200, 3)
}

// ---- soundness over Q ----

fn soundness() -> Result<String, String> {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let names = ["gl", "sl", "aff-gl", "aff-sl"];
    let trials = 1000;
    for name in names {
        let group: GroupSpec<Rationals> = parse_group(name).unwrap();
        for trial in 0..trials {
            let n = rng.gen_range(2..=4);
            let m = rng.gen_range(1..=6);
            let rank = rng.gen_range(0..=n.min(m));
            let u = random_map(&f, n, m, rank, &mut rng).map_err(e2s)?;
            let g = match group.linear_part() {
                GroupSpec::SL => random_special(&f, n, &mut rng),
                _ => random_invertible(&f, n, &mut rng),
            };
            let b: Option<Vec<_>> = group.is_affine().then(|| (0..n).map(|_| f.random_elem(&mut rng)).collect());
            let mut v = u.transform(&g).map_err(e2s)?;
            if let Some(b) = &b {
                v = v.translate(b).map_err(e2s)?;
            }
            let d = decide(&u, &v, &group, &DecideOptions::default()).map_err(e2s)?;
            ensure(d.equivalent, || format!("{name} trial {trial}: rejected ({})", d.reason.code()))?;
            ensure(verify_witness(&u, &v, &d, &group), || format!("{name} trial {trial}: witness rejected"))?;
            let w = d.witness.as_ref().unwrap();
            ensure(maps_onto(&u, &v, &w.g, w.translation.as_deref()), || {
                format!("{name} trial {trial}: witness fails entrywise check")
            })?;
            let det = leibniz_det(&w.g);
            ensure(!f.is_zero(&det), || format!("{name} trial {trial}: singular witness"))?;
            if matches!(group.linear_part(), GroupSpec::SL) {
                ensure(f.is_one(&det), || format!("{name} trial {trial}: det {det}"))?;
            }
        }
    }
    Ok(format!("{trials} trials each for {} all accepted with verified witnesses", names.join("/")))
}

// ---- signatures ----

fn minor_choice() -> Result<String, String> {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let instances = 200;
    let mut minors = 0;
    for trial in 0..instances {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=n);
        let basis = loop {
            let b = gequiv::random::random_matrix(&f, n, k, &mut rng);
            if b.rank() == k {
                break b;
            }
        };
        let alpha: Vec<_> = (0..k).map(|_| f.random_elem(&mut rng)).collect();
        let target = basis.mul_vec(&alpha).map_err(e2s)?;
        let solved = basis.solve_in_column_space(&target).map_err(e2s)?.ok_or("target outside span")?;
        ensure(solved == alpha, || format!("trial {trial}: solve disagrees with construction"))?;
        let mut invertible = 0;
        for rows in subsets(n, k) {
            let minor = basis.select_rows(&rows);
            let rhs: Vec<_> = rows.iter().map(|&r| target[r].clone()).collect();
            if let Some(x) = cramer(&minor, &rhs) {
                invertible += 1;
                ensure(x == solved, || format!("trial {trial}: rows {rows:?} give a different solution"))?;
            }
        }
        ensure(invertible > 0, || format!("trial {trial}: no invertible minor"))?;
        minors += invertible;
    }
    Ok(format!("{instances} instances, {minors} invertible minors, all equal to the solve"))
}

fn canonical_round_trip() -> Result<String, String> {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let count = 200;
    for trial in 0..count {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=6);
        let rank = rng.gen_range(0..=n.min(m));
        let u = random_map(&f, n, m, rank, &mut rng).map_err(e2s)?;
        let sig = compute_signature(&u, &u.select_base_points()).map_err(e2s)?;
        let canon = reconstruct_canonical(&sig, n, &GroupSpec::GL).map_err(e2s)?;
        let again = compute_signature(&canon, &canon.select_base_points()).map_err(e2s)?;
        ensure(signatures_equal(&sig, &again), || format!("trial {trial}: signature changed"))?;
        // any other preimage: an orbit member of u
        let g = random_invertible(&f, n, &mut rng);
        let other = u.transform(&g).map_err(e2s)?;
        for preimage in [&u, &other] {
            let d = decide_gl(&canon, preimage).map_err(e2s)?;
            ensure(d.equivalent, || format!("trial {trial}: canonical map not equivalent to preimage"))?;
            ensure(verify_witness(&canon, preimage, &d, &GroupSpec::GL), || format!("trial {trial}: witness"))?;
        }
    }
    Ok(format!("{count} signatures reproduced exactly; canonical maps equivalent to their preimages"))
}

// ---- special linear group ----

fn sl_separation() -> Result<String, String> {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c = f.from_i64(2);
    let count = 100;
    for trial in 0..count {
        let m = rng.gen_range(2..=5);
        let u = loop {
            let u = random_map(&f, 2, m, 2, &mut rng).map_err(e2s)?;
            if u.rank() == 2 {
                break u;
            }
        };
        let v = u.try_map_vectors(|x| Ok(x.iter().map(|a| f.mul(&c, a)).collect())).map_err(e2s)?;
        ensure(decide_gl(&u, &v).map_err(e2s)?.equivalent, || format!("trial {trial}: GL rejected c*u"))?;
        let sl = decide_subgroup(&u, &v, &GroupSpec::SL).map_err(e2s)?;
        ensure(!sl.equivalent, || format!("trial {trial}: SL accepted c*u"))?;
    }

    // over GF(3): for full-rank u, v = g u is SL-equivalent exactly when the
    // base determinants agree, which the enumerated SL(2,3) confirms
    let p = PrimeField::new(3).map_err(e2s)?;
    let sl = enumerate_group(&GroupSpec::SL, 2, 3).map_err(e2s)?;
    let gl = enumerate_group(&GroupSpec::GL, 2, 3).map_err(e2s)?;
    let mut checked = 0;
    for trial in 0..20 {
        let u = loop {
            let u = random_free_map(&p, 2, rng.gen_range(2..=4), &mut rng).map_err(e2s)?;
            if u.rank() == 2 {
                break u;
            }
        };
        let base = u.select_base_points();
        for w in &gl {
            let v = u.transform(&w.g).map_err(e2s)?;
            let same_det = leibniz_det(&base.base_matrix) == leibniz_det(&v.columns_at(&base.keys).map_err(e2s)?);
            let oracle = find_witness(&u, &v, &sl).is_some();
            ensure(same_det == oracle, || format!("GF(3) trial {trial}: det test {same_det}, oracle {oracle}"))?;
            let decided = decide_subgroup(&u, &v, &GroupSpec::SL).map_err(e2s)?.equivalent;
            ensure(decided == oracle, || format!("GF(3) trial {trial}: decision {decided}, oracle {oracle}"))?;
            checked += 1;
        }
    }
    Ok(format!("{count} maps separated at c=2; det condition matched the SL(2,3) oracle on {checked} pairs"))
}

fn sl_reduction() -> Result<String, String> {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let dets = [2, 5, -3];
    let count = 100;
    for trial in 0..count {
        let m = rng.gen_range(2..=5);
        let u = loop {
            let u = random_map(&f, 3, m, 2, &mut rng).map_err(e2s)?;
            if u.rank() == 2 {
                break u;
            }
        };
        let d = f.from_i64(dets[trial % dets.len()]);
        let g = random_with_det(&f, 3, &d, &mut rng);
        let v = u.transform(&g).map_err(e2s)?;
        let gl = decide_gl(&u, &v).map_err(e2s)?;
        let sl = decide_subgroup(&u, &v, &GroupSpec::SL).map_err(e2s)?;
        ensure(gl.equivalent && sl.equivalent, || format!("trial {trial}: GL {} SL {}", gl.equivalent, sl.equivalent))?;
        let w = sl.witness.as_ref().unwrap();
        let det = leibniz_det(&w.g);
        ensure(f.is_one(&det), || format!("trial {trial}: witness det {det}"))?;
        ensure(maps_onto(&u, &v, &w.g, None), || format!("trial {trial}: witness does not map u to v"))?;
    }
    Ok(format!("{count} rank-2 pairs in dimension 3, SL verdict = GL verdict, witness det exactly 1"))
}

// ---- invariants ----

fn generators() -> Result<String, String> {
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let actions = 500;
    for trial in 0..actions {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=6);
        let rank = rng.gen_range(0..=n.min(m));
        let u = random_map(&f, n, m, rank, &mut rng).map_err(e2s)?;
        let (group, g) = if trial % 2 == 0 {
            (GroupSpec::GL, random_invertible(&f, n, &mut rng))
        } else {
            (GroupSpec::SL, random_special(&f, n, &mut rng))
        };
        let v = u.transform(&g).map_err(e2s)?;
        let a = evaluate_generators(&u, &group).map_err(e2s)?;
        let b = evaluate_generators(&v, &group).map_err(e2s)?;
        ensure(a == b, || format!("action {trial}: generators changed"))?;
    }

    let pairs = 200;
    let (mut yes, mut no) = (0, 0);
    let mut trial = 0;
    while yes + no < pairs {
        trial += 1;
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(n + 1..=5);
        let u = random_map(&f, n, m, n, &mut rng).map_err(e2s)?;
        let group = if trial % 2 == 0 { GroupSpec::GL } else { GroupSpec::SL };
        let g = match rng.gen_range(0..3) {
            0 => random_special(&f, n, &mut rng),
            _ => random_invertible(&f, n, &mut rng),
        };
        let mut v = u.transform(&g).map_err(e2s)?;
        if rng.gen_bool(0.5) {
            // move one sample inside the span to change its coordinates
            let base = u.select_base_points();
            let key = v.keys().find(|k| !base.keys.contains(k)).cloned().unwrap();
            let shifted: Vec<_> =
                v.get(&key).unwrap().iter().zip(v.get(&base.keys[0]).unwrap()).map(|(a, b)| f.add(a, b)).collect();
            v = v.with_sample(&key, shifted).map_err(e2s)?;
        }
        if u.select_base_points().keys != v.select_base_points().keys {
            continue;
        }
        let same = evaluate_generators(&u, &group).map_err(e2s)? == evaluate_generators(&v, &group).map_err(e2s)?;
        let verdict = decide_subgroup(&u, &v, &group).map_err(e2s)?.equivalent;
        ensure(same == verdict, || format!("pair {trial}: generators equal {same}, verdict {verdict}"))?;
        if verdict {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 20 && no > 20, || format!("unbalanced pairs: {yes} equivalent, {no} not"))?;
    Ok(format!(
        "{actions} actions left generators unchanged; {pairs} same-base pairs ({yes} equivalent, {no} not) matched"
    ))
}

fn independence() -> Result<String, String> {
    let mut shapes = 0;
    for n in 1..=4 {
        for k in 0..=n {
            for m in k + 1..=5 {
                let mut groups = vec![GroupSpec::GL];
                if k == n {
                    groups.push(GroupSpec::SL);
                }
                for group in &groups {
                    for seed in [1, 2, 3] {
                        let ok = check_algebraic_independence(n, k, m, group, seed).map_err(e2s)?;
                        ensure(ok, || format!("n={n} k={k} m={m} {} seed {seed}", group.name()))?;
                    }
                    shapes += 1;
                }
            }
        }
    }
    Ok(format!("{shapes} (shape, group) cases independent for seeds 1, 2, 3"))
}

// ---- degenerate inputs ----

fn degenerate() -> Result<String, String> {
    let f = Rationals;
    let zero = |n: usize, m: usize| {
        SampleMap::new(f, n, (0..m).map(|i| (SampleKey::new(format!("t{i}")), vec![f.zero(); n]))).unwrap()
    };
    for n in 1..=4 {
        let u = zero(n, 3);
        let d = decide_gl(&u, &u).map_err(e2s)?;
        ensure(d.equivalent && d.witness.as_ref().unwrap().g.is_identity(), || format!("rank 0, n={n}"))?;
        let sl = decide_subgroup(&u, &u, &GroupSpec::SL).map_err(e2s)?;
        ensure(sl.equivalent && sl.witness.unwrap().g.is_identity(), || format!("rank 0 SL, n={n}"))?;
        let gens = evaluate_generators(&u, &GroupSpec::SL).map_err(e2s)?;
        ensure(gens.is_empty(), || format!("rank 0 generators {gens:?}"))?;
        let sig = compute_signature(&u, &u.select_base_points()).map_err(e2s)?;
        ensure(sig.k == 0 && sig.coords.values().all(Vec::is_empty), || "empty signature".into())?;
        let canon = reconstruct_canonical(&sig, n, &GroupSpec::GL).map_err(e2s)?;
        ensure(canon == u, || "canonical of the zero map".into())?;
        let empty = Matrix::zeros(f, n, 0);
        let sig = signature_in_basis(&u, &[], &empty).map_err(e2s)?;
        ensure(sig.k == 0, || "signature in empty basis".into())?;
    }

    let det0 = Matrix::<Rationals>::zeros(f, 0, 0).determinant().map_err(e2s)?;
    ensure(f.is_one(&det0), || format!("det of 0x0 = {det0}"))?;
    let inv0 = Matrix::<Rationals>::zeros(f, 0, 0).inverse().map_err(e2s)?;
    ensure(inv0.rows() == 0, || "inverse of 0x0".into())?;
    let p = generic_point(3, 0, 2, 1).map_err(e2s)?;
    ensure(p.rows() == 3 && p.cols() == 2, || "generic point with k=0".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..50 {
        let n = rng.gen_range(1..=4);
        let c1: Vec<_> = (0..n).map(|_| f.random_elem(&mut rng)).collect();
        let c2: Vec<_> = (0..n).map(|_| f.random_elem(&mut rng)).collect();
        let constant =
            |c: &Vec<_>| SampleMap::new(f, n, (0..4).map(|i| (SampleKey::new(format!("t{i}")), c.clone()))).unwrap();
        let (u, v) = (constant(&c1), constant(&c2));
        for inner in [GroupSpec::GL, GroupSpec::SL] {
            let group = GroupSpec::affine(inner.clone());
            let d = decide_affine(&u, &v, &inner).map_err(e2s)?;
            ensure(d.equivalent, || format!("constant maps, trial {trial}, {}", group.name()))?;
            ensure(verify_witness(&u, &v, &d, &group), || format!("constant witness, trial {trial}"))?;
        }
    }
    Ok("rank-0 pairs accepted with identity witnesses; constant maps affine-equivalent; 0x0 det = 1".into())
}
