//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quivhom::gen::{random_sheaf_pair, random_vector_pair, SheafBounds, VectorBounds};
use quivhom::linalg::Matrix;
use quivhom::p1::{cech_hyper, chi, ext_quiver_sheaf, QSheafP1, SplitBundle};
use quivhom::twisted::{
    apply_d, build_extension, check_resolution_exactness, ext1_classes, ext1_dim, hom_space, is_split_extension,
    lift_beta, random_beta, DeltaLayout, TwistedRep,
};
use quivhom::{Field, PrimeField, Quiver, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VECTOR_INSTANCES: usize = 60;
const SHEAF_INSTANCES: usize = 60;
const BETAS: usize = 240;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn vector_instances() -> Vec<(TwistedRep<PrimeField>, TwistedRep<PrimeField>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    (0..VECTOR_INSTANCES)
        .map(|_| random_vector_pair(&mut rng, f101(), &VectorBounds::default()))
        .collect()
}

fn sheaf_instances() -> Vec<(QSheafP1<PrimeField>, QSheafP1<PrimeField>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    (0..SHEAF_INSTANCES)
        .map(|_| random_sheaf_pair(&mut rng, f101(), &SheafBounds::default()))
        .collect()
}

fn timed(limit: Duration, start: Instant, detail: String) -> Outcome {
    let spent = start.elapsed();
    if spent > limit {
        Err(format!("{detail}, but took {spent:.2?} (limit {limit:?})"))
    } else {
        Ok(format!("{detail} in {spent:.2?}"))
    }
}

fn resolution_exact() -> Outcome {
    let start = Instant::now();
    let mut max_rows = 0;
    for (k, (v, _)) in vector_instances().iter().enumerate() {
        let r = check_resolution_exactness(v, 4).map_err(|e| format!("instance {k}: {e}"))?;
        if !r.all_pass() {
            return Err(format!("instance {k} dims {:?}: {r:?}", v.dims()));
        }
        max_rows = max_rows.max(r.middle_dim);
    }
    timed(
        Duration::from_secs(30),
        start,
        format!("{VECTOR_INSTANCES} instances exact at N=4, largest middle term {max_rows}"),
    )
}

fn lifting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut done = 0;
    while done < BETAS {
        let (v, _) = random_vector_pair(&mut rng, f101(), &VectorBounds::default());
        if v.quiver().n_arrows() == 0 {
            continue;
        }
        let degrees = rng.gen_range(1..=3);
        let beta = random_beta(&v, degrees, &mut rng);
        let alpha = lift_beta(&v, &beta).map_err(|e| format!("beta {done}: {e}"))?;
        let back = apply_d(&v, &alpha).map_err(|e| format!("beta {done}: {e}"))?;
        if back != beta {
            return Err(format!("beta {done}: d(lift) differs"));
        }
        done += 1;
    }
    Ok(format!("{done} random beta lifted and re-applied"))
}

fn euler_vector() -> Outcome {
    for (k, (v, w)) in vector_instances().iter().enumerate() {
        let q = v.quiver();
        let hom = hom_space(v, w).map_err(|e| e.to_string())?.len() as i64;
        let ext1 = ext1_dim(v, w).map_err(|e| e.to_string())? as i64;
        let vertices: i64 = (0..q.n_vertices()).map(|i| (v.dim(i) * w.dim(i)) as i64).sum();
        let arrows: i64 = (0..q.n_arrows())
            .map(|a| (v.twist().dim(a) * v.dim(q.tail(a)) * w.dim(q.head(a))) as i64)
            .sum();
        if hom - vertices + arrows != ext1 {
            return Err(format!("instance {k}: {hom} - {vertices} + {arrows} != {ext1}"));
        }
    }
    Ok(format!("{VECTOR_INSTANCES} instances"))
}

fn extensions() -> Outcome {
    let mut classes = 0;
    for (k, (v, w)) in vector_instances().iter().enumerate().take(30) {
        let err = |e: quivhom::Error| format!("instance {k}: {e}");
        let zero = vec![v.field().zero(); DeltaLayout::new(v, w).codomain_dim];
        let e0 = build_extension(v, w, &zero).map_err(err)?;
        if !is_split_extension(&e0, v, w).map_err(err)? {
            return Err(format!("instance {k}: zero class does not split"));
        }
        for (c, eta) in ext1_classes(v, w).map_err(err)?.iter().enumerate() {
            let e = build_extension(v, w, eta).map_err(err)?;
            if is_split_extension(&e, v, w).map_err(err)? {
                return Err(format!("instance {k}: basis class {c} splits"));
            }
            classes += 1;
        }
    }
    Ok(format!("{classes} basis classes non-split, zero classes split"))
}

/// `X |-> J_n X - X J_m` on `Hom(k^m, k^n)` as `I (x) J_n - J_m^T (x) I`
/// on column-major vectors.
fn commutator_map(m: usize, n: usize) -> Matrix<Rationals> {
    let f = Rationals;
    let jm = TwistedRep::jordan_block(f, m).phi(0).clone();
    let jn = TwistedRep::jordan_block(f, n).phi(0).clone();
    let mut k = Matrix::zeros(f, m * n, m * n);
    for c in 0..m {
        for r in 0..n {
            let row = c * n + r;
            for r2 in 0..n {
                let x = jn.get(r, r2).clone();
                let cur = k.get(row, c * n + r2).clone();
                k.set(row, c * n + r2, f.add(&cur, &x));
            }
            for c2 in 0..m {
                let x = jm.get(c2, c).clone();
                let cur = k.get(row, c2 * n + r).clone();
                k.set(row, c2 * n + r, f.sub(&cur, &x));
            }
        }
    }
    k
}

fn jordan() -> Outcome {
    let f = Rationals;
    for m in 1..=4 {
        for n in 1..=4 {
            let (jm, jn) = (TwistedRep::jordan_block(f, m), TwistedRep::jordan_block(f, n));
            let hom = hom_space(&jm, &jn).map_err(|e| e.to_string())?.len();
            let ext = ext1_dim(&jm, &jn).map_err(|e| e.to_string())?;
            let k = commutator_map(m, n);
            let (hom2, ext2) = (k.nullity(), m * n - k.rank());
            let want = m.min(n);
            if [hom, ext, hom2, ext2] != [want; 4] {
                return Err(format!(
                    "J{m}, J{n}: library ({hom}, {ext}), commutator ({hom2}, {ext2}), want {want}"
                ));
            }
        }
    }
    Ok("J_m, J_n for m, n in 1..4 agree with the commutator map".into())
}

fn les_vs_cech() -> Outcome {
    let start = Instant::now();
    for (k, (v, w)) in sheaf_instances().iter().enumerate() {
        let les = ext_quiver_sheaf(v, w).map_err(|e| format!("instance {k}: {e}"))?;
        let h = cech_hyper(v, w).map_err(|e| format!("instance {k}: {e}"))?;
        if les.dims() != h.dims() {
            return Err(format!("instance {k}: sequence {:?}, Cech {:?}", les.dims(), h.dims()));
        }
    }
    timed(
        Duration::from_secs(60),
        start,
        format!("{SHEAF_INSTANCES} instances agree"),
    )
}

fn euler_sheaf() -> Outcome {
    for (k, (v, w)) in sheaf_instances().iter().enumerate() {
        let q = v.quiver();
        let vertices: i64 = (0..q.n_vertices()).map(|i| chi(v.bundle(i), w.bundle(i))).sum();
        let arrows: i64 = (0..q.n_arrows())
            .map(|a| {
                let (m, src) = (v.twist(a), v.bundle(q.tail(a)));
                let tensor: Vec<i64> = m
                    .twists()
                    .iter()
                    .flat_map(|x| src.twists().iter().map(move |y| x + y))
                    .collect();
                chi(&SplitBundle::from_unsorted(tensor), w.bundle(q.head(a)))
            })
            .sum();
        let got = ext_quiver_sheaf(v, w).map_err(|e| e.to_string())?.euler();
        if got != vertices - arrows {
            return Err(format!("instance {k}: {got} != {vertices} - {arrows}"));
        }
    }
    Ok(format!("{SHEAF_INSTANCES} instances"))
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = quivhom::cli::run(args.iter().copied(), &mut out, &mut err);
    (code, out, err)
}

fn higgs() -> Outcome {
    let path = fixture("higgs.json");
    let mut seen = Vec::new();
    for (cmd, keys) in [("ext", ["ext0", "ext1", "ext2"]), ("hyper", ["hh0", "hh1", "hh2"])] {
        let (code, out, err) = run_cli(&["--json", cmd, &path, "V", "--verify"]);
        if code != 0 {
            return Err(format!("{cmd} exited {code}: {}", String::from_utf8_lossy(&err)));
        }
        let v: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
        let dims: Vec<u64> = keys
            .iter()
            .map(|k| v["results"][k].as_u64().unwrap_or(u64::MAX))
            .collect();
        if dims != [1, 3, 0] {
            return Err(format!("{cmd} gave {dims:?}"));
        }
        seen.push(dims);
    }
    let f = f101();
    let b = |t: i64| SplitBundle::new(vec![t]).unwrap();
    let v = QSheafP1::zero_maps(f, Quiver::loop_quiver(), vec![b(-2)], vec![b(0)]).map_err(|e| e.to_string())?;
    let lib = ext_quiver_sheaf(&v, &v).map_err(|e| e.to_string())?.dims();
    if lib != [1, 3, 0] {
        return Err(format!("library gave {lib:?}"));
    }
    Ok("sequence and Cech both give (1, 3, 0)".into())
}

fn deterministic() -> Outcome {
    let (higgs, triple, jordan) = (fixture("higgs.json"), fixture("triple.json"), fixture("jordan.json"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["ext", &higgs, "V", "--verify"],
        vec!["--json", "hyper", &higgs, "V"],
        vec!["--json", "ext", &triple, "V", "W", "--verify"],
        vec!["check", &jordan, "J3", "--max-degree", "3", "--seed", "7"],
        vec!["gen", "--seed", "11"],
        vec!["gen", "--seed", "11", "--mode", "p1"],
    ];
    for args in &runs {
        let a = run_cli(args);
        let b = run_cli(args);
        if a != b {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
        if a.0 != 0 {
            return Err(format!("`{}` exited {}", args.join(" "), a.0));
        }
    }
    Ok(format!("{} invocations byte-identical", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("resolution exactness", resolution_exact),
        ("lifting", lifting),
        ("vector Euler identity", euler_vector),
        ("extension classes", extensions),
        ("Jordan blocks", jordan),
        ("sequence vs Cech", les_vs_cech),
        ("sheaf Euler identity", euler_sheaf),
        ("Higgs fixture", higgs),
        ("determinism", deterministic),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
