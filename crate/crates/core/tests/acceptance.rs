//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS or FAIL line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use littelmann::crystal::{decompose_tensor, generate_crystal, Limits};
use littelmann::extremal::{criterion_negative_set, criterion_roots, is_extremal, necessary_condition, satisfies_criterion};
use littelmann::oracle::{dominant_weights_up_to_dim, freudenthal_multiplicities, tensor_decompose_oracle, weyl_dim};
use littelmann::prv::{
    build_witness, classic_prv_set, enumerate_prv, verify_witness, EnumerateOptions, PrvCase, PrvInstance, PrvWitness,
};
use littelmann::rootops::{lower, lower_k, raise, reflect_path, weyl_path_action};
use littelmann::{Path, Rational, RationalWeight, RootSystem, VerifyMode, Weight, WeylElement};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + Sync + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rs(name: &str) -> RootSystem {
    RootSystem::builtin(name).unwrap()
}

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn weights_in_box(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Weight(vec![])];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|p| (0..=max).map(move |c| Weight([p.0.clone(), vec![c]].concat()))).collect();
    }
    out
}

fn path_model_equals_oracle(rs: &RootSystem, pairs: &[(Weight, Weight)]) -> Result<usize, String> {
    pairs.par_iter().try_for_each(|(mu, nu)| {
        let got = decompose_tensor(rs, &Path::straight_int(mu), &Path::straight_int(nu), Limits::none())
            .and_then(|d| d.complete())
            .map_err(|e| format!("{mu} (x) {nu}: {e}"))?;
        let want = tensor_decompose_oracle(rs, mu, nu).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{mu} (x) {nu}: path model {got}, oracle {want}"))
    })?;
    Ok(pairs.len())
}

fn all_pairs(rank: usize, max: i64) -> Vec<(Weight, Weight)> {
    let ws = weights_in_box(rank, max);
    ws.iter().flat_map(|a| ws.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

fn criterion_1() -> Outcome {
    let mut n = 0;
    n += path_model_equals_oracle(&rs("A1"), &all_pairs(1, 6))?;
    n += path_model_equals_oracle(&rs("A2"), &all_pairs(2, 3))?;
    n += path_model_equals_oracle(&rs("A2"), &[(w(&[7, 3]), w(&[1, 3]))])?;
    n += path_model_equals_oracle(&rs("B2"), &all_pairs(2, 2))?;
    n += path_model_equals_oracle(&rs("G2"), &[(w(&[0, 2]), w(&[2, 2]))])?;
    Ok(format!("{n} tensor products identical"))
}

#[derive(Default)]
struct Sweep {
    weights: usize,
    nodes: usize,
    character_failures: Vec<String>,
    criterion_passing: usize,
    soundness_failures: Vec<String>,
    inversion_failures: Vec<String>,
}

impl Sweep {
    fn merge(mut self, other: Sweep) -> Sweep {
        self.weights += other.weights;
        self.nodes += other.nodes;
        self.criterion_passing += other.criterion_passing;
        self.character_failures.extend(other.character_failures);
        self.soundness_failures.extend(other.soundness_failures);
        self.inversion_failures.extend(other.inversion_failures);
        self
    }
}

/// Shared by criteria 2 to 4: every dominant weight of dimension at most
/// 3000 in A2, B2 and G2.
fn sweep() -> Sweep {
    ["A2", "B2", "G2"]
        .into_iter()
        .map(|name| {
            let rs = rs(name);
            let roots = criterion_roots(&rs, None).unwrap();
            dominant_weights_up_to_dim(&rs, 3000)
                .unwrap()
                .par_iter()
                .map(|lam| {
                    let mut s = Sweep { weights: 1, ..Sweep::default() };
                    let b = generate_crystal(&rs, &Path::straight_int(lam), Limits::none()).unwrap();
                    s.nodes = b.len();
                    let table = freudenthal_multiplicities(&rs, lam).unwrap();
                    let dim = weyl_dim(&rs, lam).unwrap();
                    if b.len() as u64 != dim || b.character().weights != table.mults {
                        s.character_failures.push(format!("{name} {lam}: |B| = {}, dim = {dim}", b.len()));
                    }
                    for pi in b.nodes() {
                        let report = satisfies_criterion(&rs, pi, &roots).unwrap();
                        if !report.passed {
                            continue;
                        }
                        s.criterion_passing += 1;
                        let (extremal, x) = is_extremal(&rs, pi).unwrap();
                        if !extremal {
                            s.soundness_failures.push(format!("{name} {lam}: {}", pi.to_json()));
                        }
                        if criterion_negative_set(pi, &roots) != rs.inversion_set(&x) {
                            s.inversion_failures.push(format!("{name} {lam}: {}", pi.to_json()));
                        }
                    }
                    s
                })
                .reduce(Sweep::default, Sweep::merge)
        })
        .fold(Sweep::default(), Sweep::merge)
}

fn criterion_2(s: &Sweep) -> Outcome {
    ensure(s.character_failures.is_empty(), || s.character_failures.join("; "))?;
    Ok(format!("{} highest weights, {} crystal nodes", s.weights, s.nodes))
}

fn criterion_3(s: &Sweep) -> Outcome {
    ensure(s.soundness_failures.is_empty(), || {
        format!("{} criterion-passing paths are not extremal: {}", s.soundness_failures.len(), s.soundness_failures[0])
    })?;
    Ok(format!("{} criterion-passing nodes, all extremal", s.criterion_passing))
}

fn criterion_4(s: &Sweep) -> Outcome {
    ensure(s.inversion_failures.is_empty(), || {
        format!("{} negative sets differ from I(w): {}", s.inversion_failures.len(), s.inversion_failures[0])
    })?;
    Ok(format!("{} negative sets equal I(w)", s.criterion_passing))
}

fn criterion_5() -> Outcome {
    let opts = EnumerateOptions { check_oracle: true, ..EnumerateOptions::default() };
    let mut instances: Vec<(&str, Weight, Weight)> = vec![("A2", w(&[7, 3]), w(&[1, 3]))];
    for (mu, nu) in all_pairs(2, 2) {
        instances.push(("B2", mu, nu));
    }
    for (mu, nu) in all_pairs(2, 1) {
        instances.push(("G2", mu, nu));
    }
    instances.push(("G2", w(&[0, 2]), w(&[2, 2])));
    let results: Vec<(usize, Vec<PrvWitness>)> = instances
        .par_iter()
        .map(|(name, mu, nu)| {
            let rs = rs(name);
            let wits = enumerate_prv(&rs, mu, nu, opts).map_err(|e| format!("{name} {mu} (x) {nu}: {e}"))?;
            let oracle = tensor_decompose_oracle(&rs, mu, nu).map_err(|e| e.to_string())?;
            for x in &wits {
                ensure(x.oracle_confirmed == Some(true) && oracle.get(&x.lambda) >= 1, || {
                    format!("{name} {mu} (x) {nu}: lambda {} not in the decomposition", x.lambda)
                })?;
            }
            Ok((wits.len(), wits))
        })
        .collect::<Result<_, String>>()?;
    let total: usize = results.iter().map(|r| r.0).sum();

    let g2 = rs("G2");
    let produced = results.last().unwrap().1.iter().any(|x| x.lambda == w(&[1, 1]));
    ensure(produced, || "enumeration of (0,2) (x) (2,2) in G2 misses lambda = (1,1)".into())?;
    let pinned = PrvWitness::from_json(&g2, &std::fs::read_to_string(fixture("g2_witness.json")).unwrap())
        .map_err(|e| e.to_string())?;
    let beta = g2.real_root(&[3, 1]).unwrap();
    ensure(pinned.instance.betas == vec![beta] && pinned.instance.ks == vec![1], || "fixture instance changed".into())?;
    let rebuilt = build_witness(&g2, &pinned.instance, None).map_err(|e| e.to_string())?;
    ensure(rebuilt.witness_path == pinned.witness_path, || "G2 witness path differs from the fixture".into())?;
    ensure(rebuilt.lambda == w(&[1, 1]) && rebuilt.criterion.passed, || "G2 witness fails the criterion".into())?;
    let checked = verify_witness(&g2, &rebuilt, VerifyMode::Bruteforce).map_err(|e| e.to_string())?;
    ensure(checked.brute_force == Some(true), || "G2 witness is not extremal".into())?;
    Ok(format!("{total} witnesses over {} instances oracle-confirmed; G2 witness for (1,1) verified", instances.len()))
}

fn criterion_6() -> Outcome {
    let a2 = rs("A2");
    let (mu, nu) = (w(&[7, 3]), w(&[1, 3]));
    let gen: BTreeSet<Weight> = enumerate_prv(&a2, &mu, &nu, EnumerateOptions::default())
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|x| x.lambda)
        .collect();
    let classic = classic_prv_set(&a2, &mu, &nu).map_err(|e| e.to_string())?;
    ensure(classic.is_subset(&gen), || "a classic component is missing".into())?;
    let extra: Vec<String> = gen.difference(&classic).map(Weight::to_string).collect();
    ensure(!extra.is_empty(), || "no generalized component beyond the classic ones".into())?;
    Ok(format!("{} classic, {} generalized; new: {}", classic.len(), gen.len(), extra.join(" ")))
}

fn random_path(rng: &mut ChaCha8Rng, rs: &RootSystem) -> Path {
    loop {
        let n = rng.random_range(1..=4);
        let segs: Vec<RationalWeight> = (0..n)
            .map(|_| {
                let den = rng.random_range(1..=3i64);
                RationalWeight((0..rs.rank()).map(|_| Rational::new(rng.random_range(-4..=4i64), den)).collect())
            })
            .collect();
        if let Ok(p) = Path::new(rs.rank(), segs) {
            if !p.is_empty() && p.is_integral(rs) && p.endpoint().is_integral() {
                return p;
            }
        }
    }
}

/// `(floor(H(1) - m), floor(-m))` from the breakpoint heights.
fn string_lengths(pi: &Path, i: usize) -> (i64, i64) {
    let mut h = Rational::ZERO;
    let mut m = Rational::ZERO;
    for s in pi.segments() {
        h += &s[i];
        if h < m {
            m = h.clone();
        }
    }
    ((&h - &m).floor().to_i64().unwrap(), (-&m).floor().to_i64().unwrap())
}

fn operator_properties(rs: &RootSystem, pi: &Path) -> Result<(), String> {
    let fail = |what: &str| format!("{what} fails for {}", pi.to_json());
    for i in 0..rs.rank() {
        let alpha = rs.simple_root(i);
        let (nf, ne) = string_lengths(pi, i);
        let mut down = 0;
        let mut cur = pi.clone();
        while let Some(next) = lower(rs, &cur, i) {
            ensure(next.endpoint() == cur.endpoint().sub_scaled(&Rational::ONE, alpha), || fail("f endpoint shift"))?;
            ensure(raise(rs, &next, i).as_ref() == Some(&cur), || fail("e f = id"))?;
            ensure(lower(rs, &cur, i).map(|p| p.dual()) == raise(rs, &cur.dual(), i), || fail("(f pi)* = e pi*"))?;
            cur = next;
            down += 1;
        }
        ensure(down == nf, || fail("f string length"))?;
        let mut up = 0;
        let mut cur = pi.clone();
        while let Some(next) = raise(rs, &cur, i) {
            ensure(next.endpoint() == cur.endpoint().sub_scaled(&Rational::from(-1), alpha), || fail("e endpoint shift"))?;
            ensure(lower(rs, &next, i).as_ref() == Some(&cur), || fail("f e = id"))?;
            ensure(raise(rs, &cur, i) == lower(rs, &cur.dual(), i).map(|p| p.dual()), || fail("e = * f *"))?;
            cur = next;
            up += 1;
        }
        ensure(up == ne, || fail("e string length"))?;
        for n in 2..=3u64 {
            let scaled = pi.scale(&Rational::from(n as i64));
            let lhs = lower_k(rs, &scaled, i, n);
            let rhs = lower(rs, pi, i).map(|p| p.scale(&Rational::from(n as i64)));
            ensure(lhs == rhs, || fail("f^n (n pi) = n (f pi)"))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let systems = ["A1", "A2", "B2", "G2"].map(rs);
    let per = 2600;
    (0..systems.len()).into_par_iter().try_for_each(|k| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + k as u64);
        (0..per).try_for_each(|_| operator_properties(&systems[k], &random_path(&mut rng, &systems[k])))
    })?;
    Ok(format!("{} random integral paths in ranks 1 and 2", per * systems.len()))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for (name, m) in [("A2", 3), ("B2", 4), ("G2", 6)] {
        let rs = rs(name);
        let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
        let alt = |first: usize| -> Vec<usize> { (0..m).map(|j| (first + j) % 2).collect() };
        for _ in 0..300 {
            let pi = random_path(&mut rng, &rs);
            for i in 0..2 {
                let twice = reflect_path(&rs, &reflect_path(&rs, &pi, i).unwrap(), i).unwrap();
                ensure(twice == pi, || format!("{name}: s{i} s{i} != id on {}", pi.to_json()))?;
            }
            let (a, b) = (weyl_path_action(&rs, &pi, &alt(0)).unwrap(), weyl_path_action(&rs, &pi, &alt(1)).unwrap());
            ensure(a == b, || format!("{name}: braid relation fails on {}", pi.to_json()))?;
            checked += 1;
        }
        for lam in weights_in_box(2, 2) {
            for x in rs.weyl_elements().unwrap() {
                let wl = rs.weyl_apply(&x, &lam.to_rational());
                for i in 0..2 {
                    let got = reflect_path(&rs, &Path::straight(&wl), i).unwrap();
                    let want = Path::straight(&rs.reflect_simple(&wl, i));
                    ensure(got == want, || format!("{name}: s~ on straight path to {wl}"))?;
                }
            }
        }
    }
    Ok(format!("involutions and braid relations on {checked} paths; straight paths map to straight paths"))
}

/// Smallest three-segment integral A2 paths (by total size) with the two
/// properties.
fn counterexample_search(rs: &RootSystem) -> (Option<Path>, Option<Path>) {
    let roots = criterion_roots(rs, None).unwrap();
    let mut ws: Vec<Weight> = (-2..=2i64).flat_map(|a| (-2..=2i64).map(move |b| w(&[a, b]))).filter(|x| x.0 != [0, 0]).collect();
    ws.sort_by_key(|x| (x.0.iter().map(|c| c.abs()).sum::<i64>(), x.clone()));
    let mut triples: Vec<[&Weight; 3]> = Vec::new();
    for x in &ws {
        for y in &ws {
            for z in &ws {
                triples.push([x, y, z]);
            }
        }
    }
    triples.sort_by_key(|t| (t.iter().map(|x| x.0.iter().map(|c| c.abs()).sum::<i64>()).sum::<i64>(), t.map(|x| x.clone())));
    let mut extremal_failing = None;
    let mut necessary_not_extremal = None;
    for [x, y, z] in triples {
        let segs = vec![x.to_rational(), y.to_rational(), z.to_rational()];
        let Ok(pi) = Path::new(2, segs) else { continue };
        if pi.len() != 3 || !pi.is_integral(rs) {
            continue;
        }
        let (ext, _) = is_extremal(rs, &pi).unwrap();
        if ext && extremal_failing.is_none() && !satisfies_criterion(rs, &pi, &roots).unwrap().passed {
            extremal_failing = Some(pi.clone());
        }
        if !ext && necessary_not_extremal.is_none() && necessary_condition(&pi, &roots) {
            necessary_not_extremal = Some(pi);
        }
        if extremal_failing.is_some() && necessary_not_extremal.is_some() {
            break;
        }
    }
    (extremal_failing, necessary_not_extremal)
}

fn criterion_9() -> Outcome {
    let a2 = rs("A2");
    let roots = criterion_roots(&a2, None).unwrap();
    let (first, second) = counterexample_search(&a2);
    let first = first.ok_or("no extremal path failing the criterion")?;
    let second = second.ok_or("no non-extremal path with the necessary condition")?;
    let load = |name: &str| Path::from_json(&std::fs::read_to_string(fixture(name)).unwrap(), 2).unwrap();
    let (pin1, pin2) = (load("a2_extremal_failing_criterion.json"), load("a2_necessary_not_extremal.json"));
    ensure(first == pin1, || format!("search found {}, fixture holds {}", first.to_json(), pin1.to_json()))?;
    ensure(second == pin2, || format!("search found {}, fixture holds {}", second.to_json(), pin2.to_json()))?;
    ensure(is_extremal(&a2, &pin1).unwrap().0, || "first fixture is not extremal".into())?;
    ensure(!satisfies_criterion(&a2, &pin1, &roots).unwrap().passed, || "first fixture passes the criterion".into())?;
    ensure(necessary_condition(&pin2, &roots), || "second fixture violates the necessary condition".into())?;
    ensure(!is_extremal(&a2, &pin2).unwrap().0, || "second fixture is extremal".into())?;
    Ok(format!("extremal, criterion fails: {}; necessary holds, not extremal: {}", pin1.to_json(), pin2.to_json()))
}

fn criterion_10() -> Outcome {
    let aff = rs("A1~");
    let b = generate_crystal(&aff, &Path::straight_int(&w(&[2, 2])), Limits::nodes(500)).map_err(|e| e.to_string())?;
    ensure(b.is_truncated() && b.len() <= 500, || format!("crystal not truncated at 500 nodes: {}", b.len()))?;
    ensure(b.edges_consistent(&aff), || "inconsistent edges".into())?;
    let inst = PrvInstance {
        mu: w(&[2, 2]),
        nu: w(&[2, 2]),
        v: WeylElement::identity(),
        w: aff.reduce_word(&[0]).unwrap(),
        betas: vec![aff.real_root(&[0, 1]).unwrap()],
        ks: vec![1],
        case: PrvCase::VSide,
    };
    let wit = build_witness(&aff, &inst, Some(10)).map_err(|e| e.to_string())?;
    let wit = verify_witness(&aff, &wit, VerifyMode::Bruteforce).map_err(|e| e.to_string())?;
    ensure(wit.brute_force == Some(true), || "witness is not extremal".into())?;
    ensure(wit.criterion.height_cutoff == Some(10), || "report does not carry the cutoff".into())?;
    ensure(wit.criterion.verdict == "passed up to height 10", || format!("verdict: {}", wit.criterion.verdict))?;
    Ok(format!("{} nodes (truncated); witness lambda = {}, {}", b.len(), wit.lambda, wit.criterion.verdict))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let run = |f: &(dyn Fn() -> Outcome + Sync)| -> (Outcome, f64) {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        (out, t.elapsed().as_secs_f64())
    };
    let shared = std::sync::OnceLock::new();
    let swept = || shared.get_or_init(sweep);
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(criterion_1)),
        ("character identity", Box::new(move || criterion_2(swept()))),
        ("criterion soundness", Box::new(move || criterion_3(swept()))),
        ("inversion-set identity", Box::new(move || criterion_4(swept()))),
        ("PRV witnesses", Box::new(criterion_5)),
        ("classic PRV containment", Box::new(criterion_6)),
        ("root operator properties", Box::new(criterion_7)),
        ("Weyl group action", Box::new(criterion_8)),
        ("counterexample fixtures", Box::new(criterion_9)),
        ("affine smoke test", Box::new(criterion_10)),
    ];
    let results: Vec<(Outcome, f64)> = criteria.par_iter().map(|(_, f)| run(f.as_ref())).collect();
    let mut failed = 0;
    for (k, ((name, _), (outcome, secs))) in criteria.iter().zip(results).enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({secs:.1}s) {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.1}s) {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", criteria.len() - failed, started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
