//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the terminal:
//! `cargo test -p anosov-cli --test acceptance`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use anosov_core::arith::squarefree_part;
use anosov_core::chain::{almost_commensurability_chain, verify_chain, Evidence};
use anosov_core::commensurability::{
    are_commensurable, build_certificate, stabilization_exponent, trace_power, verify_certificate,
    CommensurabilityCertificate, Options,
};
use anosov_core::conjugacy::{are_equivalent, brute_force_conjugator, evaluate_word, rl_word, RlWord};
use anosov_core::linalg::{enumerate_sublattices, hnf};
use anosov_core::models::{
    genus_model_matrix, orbifold_euler_characteristic, orbifold_model_matrix, Model,
};
use anosov_core::{HyperbolicMatrix, Lattice2, Mat2};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const LIMIT_EQUIVALENCE: Duration = Duration::from_secs(60);
const LIMIT_EXPONENTS: Duration = Duration::from_secs(30);
const LIMIT_CERTIFICATES: Duration = Duration::from_secs(30);
const LIMIT_DISCRIMINANT: Duration = Duration::from_secs(30);
const LIMIT_CHAINS: Duration = Duration::from_secs(120);

const BRUTE_FORCE_BOUND: u64 = 50;
const EXPONENT_ORACLE_BOUND: u64 = 20;
const CORPUS_SIZE: usize = 50;
const CORPUS_MAX_TRACE: i64 = 12;
const BIG_TRACE: u64 = 1_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Edit<'a> = (&'a str, &'a dyn Fn(&mut Value));

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
    Mat2::new(a, b, c, d)
}

fn hyp(a: i64, b: i64, c: i64, d: i64) -> HyperbolicMatrix {
    HyperbolicMatrix::from_i64(a, b, c, d).unwrap()
}

fn random_unimodular(rng: &mut ChaCha8Rng, max_len: usize) -> Mat2 {
    let r_inv = Mat2::r().inverse_unimodular().unwrap();
    let l_inv = Mat2::l().inverse_unimodular().unwrap();
    let len = rng.gen_range(0..=max_len);
    (0..len).fold(Mat2::identity(), |acc, _| {
        let g = match rng.gen_range(0..4) {
            0 => Mat2::r(),
            1 => r_inv.clone(),
            2 => Mat2::l(),
            _ => l_inv.clone(),
        };
        &acc * &g
    })
}

/// A random positive word conjugated by a random element of SL2(Z).
fn random_hyperbolic(rng: &mut ChaCha8Rng, max_pairs: usize, max_exp: u64, max_conj: usize) -> HyperbolicMatrix {
    let pairs = rng.gen_range(1..=max_pairs);
    let exps: Vec<u64> = (0..2 * pairs).map(|_| rng.gen_range(1..=max_exp)).collect();
    let w = evaluate_word(&RlWord::from_exponents(&exps).unwrap());
    let q = random_unimodular(rng, max_conj);
    HyperbolicMatrix::new(w.as_mat().conjugate_by(&q).unwrap()).unwrap()
}

fn timed(limit: Duration, start: Instant) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "took {elapsed:.1?}, limit {limit:?}");
    Ok(elapsed)
}

/// Every conjugator returned on the full enumeration box must satisfy
/// `Q⁻¹·A·Q = B` exactly; the curated non-conjugate pair is confirmed by
/// exhaustive search.
fn criterion_equivalence() -> Outcome {
    let start = Instant::now();
    let mut matrices = Vec::new();
    for a in -10i64..=10 {
        for d in -10i64..=10 {
            let t = a + d;
            if !(3..=20).contains(&t) {
                continue;
            }
            for b in -10i64..=10 {
                for c in -10i64..=10 {
                    if a * d - b * c == 1 {
                        matrices.push(hyp(a, b, c, d));
                    }
                }
            }
        }
    }
    let mut classes: BTreeMap<RlWord, Vec<usize>> = BTreeMap::new();
    for (idx, a) in matrices.iter().enumerate() {
        classes.entry(rl_word(a).unwrap().0).or_default().push(idx);
    }
    let check = |a: &HyperbolicMatrix, b: &HyperbolicMatrix| -> Result<bool, String> {
        let v = are_equivalent(a, b).map_err(|e| e.to_string())?;
        if let Some(q) = &v.conjugator {
            ensure!(q.det() == BigInt::from(1), "conjugator {q} for {a}, {b} has det {}", q.det());
            ensure!(a.as_mat() * q == q * b.as_mat(), "Q⁻¹AQ ≠ B for {a}, {b}, Q = {q}");
        }
        ensure!(v.equivalent == v.conjugator.is_some(), "verdict and conjugator disagree");
        Ok(v.equivalent)
    };
    let mut positives = 0usize;
    for members in classes.values() {
        let rep = &matrices[members[0]];
        for &idx in members {
            ensure!(check(rep, &matrices[idx])?, "{rep} and {} share a word but were not equivalent", matrices[idx]);
            ensure!(check(&matrices[idx], rep)?, "equivalence is not symmetric");
            positives += 2;
        }
    }
    // Random pairs, mostly across classes.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut negatives = 0usize;
    for _ in 0..5000 {
        let a = matrices.choose(&mut rng).unwrap();
        let b = matrices.choose(&mut rng).unwrap();
        if check(a, b)? {
            positives += 1;
        } else {
            ensure!(a.trace() != b.trace() || rl_word(a).unwrap().0 != rl_word(b).unwrap().0, "inconsistent verdict");
            negatives += 1;
        }
    }
    let (a, b) = (hyp(3, 1, 2, 1), hyp(3, 2, 1, 1));
    ensure!(!check(&a, &b)?, "curated pair reported equivalent");
    ensure!(
        brute_force_conjugator(&a, &b, BRUTE_FORCE_BOUND).is_none(),
        "brute force found a conjugator for the curated pair"
    );
    let elapsed = timed(LIMIT_EQUIVALENCE, start)?;
    Ok(format!(
        "{} matrices, {} classes, {positives} conjugators checked, {negatives} negatives, curated pair confirmed at bound {BRUTE_FORCE_BOUND} [{elapsed:.1?}]",
        matrices.len(),
        classes.len()
    ))
}

fn corpus() -> Vec<HyperbolicMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut out = vec![hyp(2, 1, 1, 1), hyp(0, 1, -1, 7)];
    while out.len() < CORPUS_SIZE {
        let a = random_hyperbolic(&mut rng, 2, 4, 4);
        if a.trace() <= BigInt::from(CORPUS_MAX_TRACE) && !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

/// Least `(i, j)` with `tr(A^i) = tr(B^j)` by direct powering.
fn exponent_oracle(a: &HyperbolicMatrix, b: &HyperbolicMatrix) -> Option<(u64, u64)> {
    let ta: Vec<BigInt> = (1..=EXPONENT_ORACLE_BOUND).map(|i| a.as_mat().pow(i).trace()).collect();
    let tb: Vec<BigInt> = (1..=EXPONENT_ORACLE_BOUND).map(|j| b.as_mat().pow(j).trace()).collect();
    for (i, x) in ta.iter().enumerate() {
        for (j, y) in tb.iter().enumerate() {
            if x == y {
                return Some((i as u64 + 1, j as u64 + 1));
            }
        }
    }
    None
}

fn criterion_exponents() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    let opts = Options::default();
    let mut positive = 0;
    let mut pairs = 0;
    for (x, a) in corpus.iter().enumerate() {
        for b in &corpus[x..] {
            let v = are_commensurable(a, b, &opts).map_err(|e| e.to_string())?;
            let expected = exponent_oracle(a, b);
            ensure!(
                v.minimal_exponents == expected,
                "{a} vs {b}: got {:?}, oracle {:?}",
                v.minimal_exponents,
                expected
            );
            ensure!(v.commensurable == expected.is_some(), "{a} vs {b}: verdict disagrees");
            positive += usize::from(v.commensurable);
            pairs += 1;
        }
    }
    let v = are_commensurable(hyp(2, 1, 1, 1), hyp(0, 1, -1, 7), &opts).map_err(|e| e.to_string())?;
    ensure!(v.minimal_exponents == Some((2, 1)), "worked instance gave {:?}", v.minimal_exponents);
    ensure!(v.common_trace == Some(BigInt::from(7)), "worked instance common trace {:?}", v.common_trace);
    let elapsed = timed(LIMIT_EXPONENTS, start)?;
    Ok(format!(
        "{pairs} pairs ({positive} commensurable) match the i,j ≤ {EXPONENT_ORACLE_BOUND} oracle; worked instance (2,1), trace 7 [{elapsed:.1?}]"
    ))
}

fn bump(x: &BigInt) -> BigInt {
    x + 1
}

fn bump_entry(m: &Mat2, k: usize) -> Mat2 {
    let mut out = m.clone();
    match k {
        0 => out.a = bump(&out.a),
        1 => out.b = bump(&out.b),
        2 => out.c = bump(&out.c),
        _ => out.d = bump(&out.d),
    }
    out
}

/// Every certificate obtained by changing exactly one field.
fn mutations(c: &CommensurabilityCertificate) -> Vec<(String, CommensurabilityCertificate)> {
    let mut out = Vec::new();
    let mut push = |name: String, f: &dyn Fn(&mut CommensurabilityCertificate)| {
        let mut m = c.clone();
        f(&mut m);
        out.push((name, m));
    };
    for k in 0..4 {
        push(format!("a[{k}]"), &|m| m.a = bump_entry(&m.a, k));
        push(format!("b[{k}]"), &|m| m.b = bump_entry(&m.b, k));
        push(format!("p[{k}]"), &|m| m.p = bump_entry(&m.p, k));
    }
    push("i".into(), &|m| m.i += 1);
    push("j".into(), &|m| m.j += 1);
    push("det_p".into(), &|m| m.det_p = bump(&m.det_p));
    push("k".into(), &|m| m.k += 1);
    push("index_over_a".into(), &|m| m.index_over_a = bump(&m.index_over_a));
    push("index_over_b".into(), &|m| m.index_over_b = bump(&m.index_over_b));
    push("lambda_p".into(), &|m| {
        let (a, b, d) = m.lambda_p.triple();
        let shifted = if a > BigInt::from(1) {
            Lattice2::new(a.clone(), (b + 1) % &a, d)
        } else {
            Lattice2::new(d.clone(), BigInt::from(0), a)
        };
        m.lambda_p = match shifted {
            Ok(l) if l != m.lambda_p => l,
            _ => Lattice2::new(2, 0, 1).unwrap(),
        };
    });
    out
}

fn criterion_certificates() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    let opts = Options::default();
    let (mut certified, mut mutated) = (0, 0);
    for (x, a) in corpus.iter().enumerate() {
        for b in &corpus[x..] {
            let v = are_commensurable(a, b, &opts).map_err(|e| e.to_string())?;
            let Some((i, j)) = v.minimal_exponents else { continue };
            let c = build_certificate(a, b, i, j, &opts).map_err(|e| format!("{a} vs {b}: {e}"))?;
            ensure!(v.certificate.as_ref() == Some(&c), "verdict certificate differs from a rebuilt one");
            verify_certificate(&c).map_err(|e| format!("{a} vs {b}: {e}"))?;
            ensure!(&a.as_mat().pow(i) * &c.p == &c.p * &b.as_mat().pow(j), "A^i·P ≠ P·B^j for {a} vs {b}");
            let det = c.p.det();
            ensure!(det != BigInt::from(0) && det == c.det_p, "bad det P for {a} vs {b}");
            ensure!(c.k == 1, "{a} vs {b}: k = {}", c.k);
            ensure!(c.index_over_a == BigInt::from(i) * BigInt::from(det.magnitude().clone()), "{a} vs {b}: index over A");
            for (name, m) in mutations(&c) {
                ensure!(verify_certificate(&m).is_err(), "{a} vs {b}: mutation of {name} accepted");
                mutated += 1;
            }
            certified += 1;
        }
    }
    let elapsed = timed(LIMIT_CERTIFICATES, start)?;
    Ok(format!(
        "{certified} certificates verified with k = 1; {mutated}/{mutated} single-field mutations rejected [{elapsed:.1?}]"
    ))
}

fn criterion_discriminant() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut max_bits = 0;
    for _ in 0..100 {
        let t = rng.gen_range(3..=BIG_TRACE) as i64;
        let base = if rng.gen_bool(0.5) { m(0, 1, -1, t) } else { m(t - 1, 1, t - 2, 1) };
        let q = random_unimodular(&mut rng, 6);
        let a = HyperbolicMatrix::new(base.conjugate_by(&q).unwrap()).unwrap();
        let mut first = None;
        for i in 1..=10 {
            let ti = trace_power(&a, i);
            let n: BigInt = &ti * &ti - 4;
            max_bits = max_bits.max(n.bits());
            let s = squarefree_part(&n).map_err(|e| format!("{a}, i = {i}: {e}"))?;
            match &first {
                None => first = Some(s),
                Some(f) => ensure!(*f == s, "{a}: squarefree part changes at i = {i}: {f} vs {s}"),
            }
        }
    }
    let elapsed = timed(LIMIT_DISCRIMINANT, start)?;
    Ok(format!("100 matrices × 10 powers, up to {max_bits}-bit discriminants, zero exceptions [{elapsed:.1?}]"))
}

fn criterion_models() -> Outcome {
    let g2 = genus_model_matrix(2).map_err(|e| e.to_string())?;
    ensure!(*g2.as_mat() == m(7, 12, 4, 7), "genus 2 model is {g2}");
    ensure!(g2.trace() == BigInt::from(14), "genus 2 trace");
    for g in 2..=10u64 {
        let a = genus_model_matrix(g).map_err(|e| e.to_string())?;
        ensure!(a.as_mat().det() == BigInt::from(1), "genus {g}: det");
        ensure!(a.trace() == BigInt::from(4 * g * g - 2), "genus {g}: trace {}", a.trace());
    }
    for t in 3..=50u64 {
        let f = orbifold_model_matrix(t).map_err(|e| e.to_string())?;
        ensure!(f.as_mat().det() == BigInt::from(1), "F_{t}: det");
        ensure!(f.trace() == BigInt::from(t), "F_{t}: trace");
    }
    let chi = orbifold_euler_characteristic(0, &[2, 3, 12]).map_err(|e| e.to_string())?;
    ensure!(chi == BigRational::new((-1).into(), 12.into()), "chi(0;2,3,12) = {chi}");
    Ok("genus 2 model ((7,12),(4,7)); 4g²−2 for g = 2..10; F_t for t = 3..50; χ(0;2,3,12) = −1/12".into())
}

fn criterion_chains() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut models: Vec<Model> = (0..20)
        .map(|_| Model::Suspension(random_hyperbolic(&mut rng, 2, 5, 4)))
        .collect();
    models.extend((2..=5).map(|g| Model::surface(g).unwrap()));
    models.extend((7..=12).map(|n| Model::orbifold(n).unwrap()));
    let opts = Options::default();
    let mut pairs = 0;
    let mut links = 0;
    for (x, m1) in models.iter().enumerate() {
        for m2 in &models[x + 1..] {
            let chain = almost_commensurability_chain(m1, m2, &opts).map_err(|e| format!("{m1} → {m2}: {e}"))?;
            ensure!(chain.endpoints == (m1.clone(), m2.clone()), "{m1} → {m2}: endpoints");
            verify_chain(&chain).map_err(|e| format!("{m1} → {m2}: {e}"))?;
            links += chain.links.len();
            pairs += 1;
        }
    }
    ensure!(pairs == 435, "expected 435 pairs, got {pairs}");
    let (s2, o18) = (Model::surface(2).unwrap(), Model::orbifold(18).unwrap());
    let chain = almost_commensurability_chain(&s2, &o18, &opts).map_err(|e| e.to_string())?;
    verify_chain(&chain).map_err(|e| e.to_string())?;
    let f14 = Model::Suspension(orbifold_model_matrix(14).unwrap());
    let through = chain.links.iter().any(|l| match &l.evidence {
        Evidence::Certificate(c) => c.i == 1 && c.j == 1 && (l.from == f14 || l.to == f14),
        _ => false,
    });
    ensure!(through, "surface(2) → orbifold(2,3,18) does not pass through F_14 with exponents (1,1)");
    let elapsed = timed(LIMIT_CHAINS, start)?;
    Ok(format!("{pairs} chains ({links} links) verified; surface 2 → (2,3,18) via F_14 with (1,1) [{elapsed:.1?}]"))
}

fn criterion_lattices() -> Outcome {
    for n in 1..=200u64 {
        let sigma: u64 = (1..=n).filter(|d| n % d == 0).sum();
        let count = enumerate_sublattices(n).len() as u64;
        ensure!(count == sigma, "n = {n}: {count} sublattices, σ = {sigma}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    while cases < 1000 {
        let b = m(
            rng.gen_range(-40..=40),
            rng.gen_range(-40..=40),
            rng.gen_range(-40..=40),
            rng.gen_range(-40..=40),
        );
        if b.det() == BigInt::from(0) {
            continue;
        }
        let u = random_unimodular(&mut rng, 10);
        let (l1, l2) = (hnf(&b).unwrap(), hnf(&(&b * &u)).unwrap());
        ensure!(l1 == l2, "hnf({b}) = {l1} but hnf({b}·{u}) = {l2}");
        cases += 1;
    }
    let mut checked = 0;
    for _ in 0..50 {
        let a = random_hyperbolic(&mut rng, 2, 4, 4);
        for n in 1..=12u64 {
            let sigma: u64 = (1..=n).filter(|d| n % d == 0).sum();
            for lattice in enumerate_sublattices(n) {
                let expected = orbit_oracle(&a, &lattice);
                let got = stabilization_exponent(&a, &lattice, sigma).map_err(|e| e.to_string())?;
                ensure!(got == expected, "{a} on {lattice}: got {got}, oracle {expected}");
                checked += 1;
            }
        }
    }
    Ok(format!("σ(n) for n ≤ 200; 1000 basis changes; {checked} stabilization exponents match the orbit oracle"))
}

/// Least `k` with both columns of `A^k·basis(L)` in `L`; no normal forms.
fn orbit_oracle(a: &HyperbolicMatrix, lattice: &Lattice2) -> u64 {
    let basis = lattice.basis();
    let mut power = a.as_mat().clone();
    for k in 1..=1_000_000u64 {
        let image = &power * &basis;
        if lattice.contains(&image.column(0)) && lattice.contains(&image.column(1)) {
            return k;
        }
        power = &power * a.as_mat();
    }
    panic!("orbit of {lattice} under {a} longer than 10^6");
}

fn anosov(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_anosov"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn arg(a: &HyperbolicMatrix) -> String {
    let m = a.as_mat();
    format!("[[{},{}],[{},{}]]", m.a, m.b, m.c, m.d)
}

fn tamper(doc: &Value, dir: &Path, name: &str, edit: impl Fn(&mut Value)) -> String {
    let mut doc = doc.clone();
    edit(&mut doc);
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn bump_string(v: &mut Value) {
    let n: BigInt = v.as_str().unwrap().parse().unwrap();
    *v = Value::String((n + 1u32).to_string());
}

fn criterion_cli() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = vec![(hyp(2, 1, 1, 1), hyp(0, 1, -1, 7))];
    while pairs.len() < 20 {
        let a = random_hyperbolic(&mut rng, 2, 3, 3);
        let b = match pairs.len() % 3 {
            0 => a.pow(rng.gen_range(2..=3)),
            1 => HyperbolicMatrix::new(a.as_mat().conjugate_by(&random_unimodular(&mut rng, 4)).unwrap()).unwrap(),
            _ => orbifold_model_matrix(a.trace().try_into().unwrap()).unwrap(),
        };
        pairs.push((a, b));
    }
    let mut tampered = 0;
    for (n, (a, b)) in pairs.iter().enumerate() {
        let (a, b) = (arg(a), arg(b));
        let path = dir.path().join(format!("cover{n}.json"));
        let path = path.to_str().unwrap();
        let (code, _) = anosov(&["cover", &a, &b, "--output", path]);
        ensure!(code == 0, "cover {a} {b} exited {code}");
        let (code, _) = anosov(&["verify", path]);
        ensure!(code == 0, "verify after cover {a} {b} exited {code}");
        let (c1, first) = anosov(&["cover", &a, &b]);
        let (c2, second) = anosov(&["cover", &a, &b]);
        ensure!(c1 == 0 && c2 == 0 && first == second, "cover {a} {b} is not byte-identical across runs");
        ensure!(first == std::fs::read(path).unwrap(), "stdout and --output differ for {a} {b}");
        let doc: Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
        let edits: [Edit; 5] = [
            ("p", &|d| bump_string(&mut d["certificate"]["p"][0][0])),
            ("det_p", &|d| bump_string(&mut d["certificate"]["det_p"])),
            ("k", &|d| bump_string(&mut d["certificate"]["k"])),
            ("index_over_a", &|d| bump_string(&mut d["certificate"]["index_over_a"])),
            ("a", &|d| bump_string(&mut d["certificate"]["a"][1][1])),
        ];
        for (field, edit) in edits {
            let bad = tamper(&doc, dir.path(), &format!("tampered{n}_{field}.json"), edit);
            let (code, _) = anosov(&["verify", &bad]);
            ensure!(code == 1, "tampered {field} for {a} {b} exited {code}");
            tampered += 1;
        }
    }
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"kind\": \"commensurability\", ").unwrap();
    let malformed: [Vec<&str>; 5] = [
        vec!["equiv", "[[2,x],[1,1]]", "[[1,1],[1,2]]"],
        vec!["commensurable", "2,1;1", "0,1;-1,7"],
        vec!["canon", "[[2,1],[1,1]]", "--frobnicate"],
        vec!["chain", "torus:1", "surface:g=2"],
        vec!["verify", garbage.to_str().unwrap()],
    ];
    for args in &malformed {
        let (code, _) = anosov(args);
        ensure!(code == 2, "{args:?} exited {code}");
    }
    let chain_path = dir.path().join("chain.json");
    let chain_path = chain_path.to_str().unwrap();
    let (code, _) = anosov(&["chain", "surface:g=2", "orbifold:2,3,18", "-o", chain_path]);
    ensure!(code == 0, "chain exited {code}");
    let (code, _) = anosov(&["verify", chain_path]);
    ensure!(code == 0, "chain verify exited {code}");
    Ok(format!(
        "20 cover→verify round trips, {tampered} tampered files rejected (exit 1), {} malformed inputs exit 2, output byte-identical",
        malformed.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 equivalence conjugators", criterion_equivalence),
        ("2 minimal exponents", criterion_exponents),
        ("3 covering certificates", criterion_certificates),
        ("4 discriminant soundness", criterion_discriminant),
        ("5 model matrices", criterion_models),
        ("6 almost-commensurability chains", criterion_chains),
        ("7 lattice layer", criterion_lattices),
        ("8 CLI contract", criterion_cli),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS — {detail}"),
            Err(detail) => {
                println!("criterion {name}: FAIL — {detail}");
                failed += 1;
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", 8 - failed, 8);
    if failed > 0 {
        std::process::exit(1);
    }
}
