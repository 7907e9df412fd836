//! Acceptance criteria 1-9, one PASS/FAIL line each, all exact.
//!
//! Expected values come from oracles written here (gcd segment test, upper
//! envelope for one input and one output, a hand-solved two-weight LP), not
//! from the library under test.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use dealab::data::{BoundingBox, Dataset, Dmu, Point};
use dealab::models::{
    overestimation_report, solve_additive, solve_ccr, solve_kkm, solve_lvm, solve_vrs_radial,
};
use dealab::ppslab::{
    axiom_closure, integer_segment_points, lemma_gap, membership_corollary, membership_real_vrs,
    n_point_integer_combination, AxiomOrder, Rule,
};
use dealab::{frac, int, Rational};
use dealab_cli::scenario::{builtin, builtin_names};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the only failing clause is one shown to be false as stated.
    unattainable: Option<String>,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            unattainable: None,
        }
    }
}

fn pts(list: &[(i64, i64)]) -> BTreeSet<Point> {
    list.iter().map(|&(x, y)| Point::integer(&[x], &[y])).collect()
}

fn planar(list: &[(&str, i64, i64)]) -> Dataset {
    Dataset::new(list.iter().map(|&(n, x, y)| Dmu::integer(n, &[x], &[y])).collect()).unwrap()
}

fn ab() -> Dataset {
    planar(&[("A", 5, 9), ("B", 2, 2)])
}

fn bbox59() -> BoundingBox {
    BoundingBox::new(vec![5], vec![9])
}

/// Interior lattice points of a planar segment: steps of `(b - a) / g`.
fn segment_oracle(a: (i64, i64), b: (i64, i64)) -> BTreeSet<(i64, i64)> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let g = dx.abs().gcd(&dy.abs());
    (1..g.max(1)).map(|k| (a.0 + k * dx / g, a.1 + k * dy / g)).collect()
}

/// Largest real output at input `x` over convex mixes of the observations
/// (with input disposal), by scanning single points and two-point mixes.
fn envelope(obs: &[(i64, i64)], x: i64) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    let mut offer = |v: Rational| {
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    };
    for &(ax, ay) in obs {
        if ax <= x {
            offer(int(ay));
        }
        for &(bx, by) in obs {
            if ax < x && x < bx {
                offer(frac(ay * (bx - x) + by * (x - ax), bx - ax));
            }
        }
    }
    best
}

fn real_oracle(obs: &[(i64, i64)], xmax: i64, ymax: i64) -> BTreeSet<(i64, i64)> {
    let mut set = BTreeSet::new();
    for x in 0..=xmax {
        if let Some(top) = envelope(obs, x) {
            for y in 0..=ymax {
                if int(y) <= top {
                    set.insert((x, y));
                }
            }
        }
    }
    set
}

/// Inclusion, pairwise integer segments, then disposal inside the box.
fn single_pass_oracle(obs: &[(i64, i64)], xmax: i64) -> BTreeSet<(i64, i64)> {
    let mut set: BTreeSet<(i64, i64)> = obs.iter().copied().collect();
    let base: Vec<_> = set.iter().copied().collect();
    for (i, &a) in base.iter().enumerate() {
        for &b in &base[i + 1..] {
            set.extend(segment_oracle(a, b));
        }
    }
    let convex: Vec<_> = set.iter().copied().collect();
    for (x, y) in convex {
        for x2 in x..=xmax {
            for y2 in 0..=y {
                set.insert((x2, y2));
            }
        }
    }
    set
}

fn to_points(set: &BTreeSet<(i64, i64)>) -> BTreeSet<Point> {
    set.iter().map(|&(x, y)| Point::integer(&[x], &[y])).collect()
}

fn criterion_1() -> Outcome {
    let got = integer_segment_points(&Point::integer(&[5], &[9]), &Point::integer(&[2], &[2])).unwrap();
    let oracle = segment_oracle((5, 9), (2, 2));
    Outcome::check(
        got.is_empty() && oracle.is_empty(),
        format!("segment A(5,9)-B(2,2): {} interior integer points (oracle gcd(3,7) = 1)", got.len()),
    )
}

fn criterion_2() -> Outcome {
    let expected = pts(&[(3, 3), (3, 4), (4, 3), (4, 4), (4, 5), (4, 6)]);
    let gap = lemma_gap(&ab(), &bbox59()).unwrap();
    let closure = axiom_closure(&ab(), &bbox59(), &AxiomOrder::single_pass()).unwrap();
    let mut brute = BTreeSet::new();
    for p in bbox59().grid() {
        if !closure.contains(&p) && membership_real_vrs(&ab(), &p).unwrap().is_some() {
            brute.insert(p);
        }
    }
    let obs = [(5, 9), (2, 2)];
    let independent: BTreeSet<Point> = to_points(
        &real_oracle(&obs, 5, 9)
            .difference(&single_pass_oracle(&obs, 5))
            .copied()
            .collect(),
    );
    Outcome::check(
        gap == expected && brute == expected && independent == expected,
        format!(
            "gap {:?}; grid LP membership agrees: {}; envelope oracle agrees: {}",
            gap.iter().map(ToString::to_string).collect::<Vec<_>>(),
            brute == gap,
            independent == gap
        ),
    )
}

fn criterion_3() -> Outcome {
    let abf = planar(&[("A", 5, 9), ("B", 2, 2), ("F", 5, 6)]);
    let target = Point::integer(&[4], &[6]);
    let lambda = n_point_integer_combination(&abf, &target).unwrap();
    let expected = vec![frac(4, 9), frac(1, 3), frac(2, 9)];
    let reproduces = lambda.as_ref().is_some_and(|l| {
        let sum: Rational = l.iter().sum();
        let x: Rational = l[0].clone() * int(5) + l[1].clone() * int(2) + l[2].clone() * int(5);
        let y: Rational = l[0].clone() * int(9) + l[1].clone() * int(2) + l[2].clone() * int(6);
        sum.is_one() && x == int(4) && y == int(6)
    });
    let without_f = n_point_integer_combination(&ab(), &target).unwrap();
    Outcome::check(
        lambda.as_ref() == Some(&expected) && reproduces && without_f.is_none(),
        format!(
            "lambda over A,B,F = {}; over A,B = {}",
            lambda.map_or("none".into(), |l| l.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
            if without_f.is_none() { "none" } else { "found" }
        ),
    )
}

fn criterion_4() -> Outcome {
    let state = axiom_closure(&ab(), &bbox59(), &AxiomOrder::fixpoint()).unwrap();
    let oracle = to_points(&real_oracle(&[(5, 9), (2, 2)], 5, 9));
    let gen = |x, y| state.generation_of(&Point::integer(&[x], &[y]));
    let (e, c, d) = (gen(5, 8), gen(3, 4), gen(4, 6));
    let ordered = matches!((e, c, d), (Some(e), Some(c), Some(d)) if e < c && e < d);
    let e_from_disposal = matches!(
        state.provenance.get(&Point::integer(&[5], &[8])).map(|p| &p.rule),
        Some(Rule::Disposal { .. })
    );
    let c_convex = matches!(
        state.provenance.get(&Point::integer(&[3], &[4])).map(|p| &p.rule),
        Some(Rule::Convexity { .. })
    );
    let d_convex = matches!(
        state.provenance.get(&Point::integer(&[4], &[6])).map(|p| &p.rule),
        Some(Rule::Convexity { .. })
    );
    Outcome::check(
        state.points == oracle && ordered && e_from_disposal && c_convex && d_convex,
        format!(
            "fixpoint {} points = envelope oracle: {}; generations (5,8)={:?} (3,4)={:?} (4,6)={:?}",
            state.points.len(),
            state.points == oracle,
            e,
            c,
            d
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut total = 0usize;
    let mut agree = 0usize;
    let mut first_miss = None;
    for name in builtin_names() {
        let ws = builtin(name).unwrap().workspace().unwrap();
        for p in ws.bbox.grid() {
            total += 1;
            let corollary = membership_corollary(&ws.data, &p, &ws.bbox).unwrap();
            let identity = membership_real_vrs(&ws.data, &p).unwrap().is_some() && p.is_integer();
            if corollary == identity {
                agree += 1;
            } else if first_miss.is_none() {
                first_miss = Some(format!("{name} {p}"));
            }
        }
    }
    Outcome::check(
        agree == total,
        format!(
            "{agree}/{total} grid points agree across {} scenarios{}",
            builtin_names().len(),
            first_miss.map_or(String::new(), |m| format!("; first disagreement {m}"))
        ),
    )
}

fn criterion_6() -> Outcome {
    let data = Dataset::new(vec![
        Dmu::integer("A", &[2, 8], &[1]),
        Dmu::integer("B", &[9, 2], &[1]),
        Dmu::integer("C", &[6, 6], &[1]),
    ])
    .unwrap();
    // Hand LP: both inputs bind, so (2a + 9b)/6 = (8a + 2b)/6 with a + b = 1.
    let a = frac(7, 13);
    let b = Rational::one() - &a;
    let lhs = (int(2) * &a + int(9) * &b) / int(6);
    let rhs = (int(8) * &a + int(2) * &b) / int(6);
    let hand_theta = lhs.clone();

    let lvm = solve_lvm(&data, "C").unwrap();
    let kkm = solve_kkm(&data, "C").unwrap();
    let ccr = solve_ccr(&data, "C").unwrap();
    let bbox = BoundingBox::covering(&data).unwrap();
    let dominators = overestimation_report(&data, "C", &bbox).unwrap();
    let has = |x1, x2| dominators.contains(&Point::integer(&[x1, x2], &[1]));
    let pass = lhs == rhs
        && hand_theta == frac(34, 39)
        && lvm.theta() == Some(&int(1))
        && kkm.theta() == Some(&int(1))
        && has(5, 6)
        && has(6, 5)
        && ccr.theta() == Some(&hand_theta)
        && ccr.lambda[..2] == [a, b];
    Outcome::check(
        pass,
        format!(
            "LVM {} KKM {} CCR {} (hand LP {}); dominators {:?}",
            lvm.theta().unwrap(),
            kkm.theta().unwrap(),
            ccr.theta().unwrap(),
            hand_theta,
            dominators.iter().map(ToString::to_string).collect::<Vec<_>>()
        ),
    )
}

/// Random point of the simplex with rational coordinates.
fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1000)).collect();
    let total: i64 = weights.iter().sum::<i64>().max(1);
    if weights.iter().all(|&w| w == 0) {
        return (0..n).map(|i| if i == 0 { int(1) } else { int(0) }).collect();
    }
    weights.into_iter().map(|w| frac(w, total)).collect()
}

/// Slacks of C(3,1) for intensity weights over A(2,1), B(3,2), C(3,1);
/// `None` when a slack would be negative.
fn additive_total(lambda: &[Rational]) -> Option<Rational> {
    let x = int(2) * &lambda[0] + int(3) * &lambda[1] + int(3) * &lambda[2];
    let y = int(1) * &lambda[0] + int(2) * &lambda[1] + int(1) * &lambda[2];
    let s_in = int(3) - x;
    let s_out = y - int(1);
    (s_in >= Rational::zero() && s_out >= Rational::zero()).then(|| s_in + s_out)
}

fn criterion_7() -> Outcome {
    let data = planar(&[("A", 2, 1), ("B", 3, 2), ("C", 3, 1)]);
    let result = solve_additive(&data, "C").unwrap();
    let vectors: BTreeSet<(Rational, Rational)> = result
        .alternates
        .iter()
        .map(|a| (a.input_slacks[0].clone(), a.output_slacks[0].clone()))
        .collect();
    let both = vectors.contains(&(int(1), int(0))) && vectors.contains(&(int(0), int(1)));
    let optimum = result.total_slack() == Some(&int(1));

    // Literal clause: λ drawn from the whole feasible set of the model.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut feasible = 0;
    let mut exactly_one = 0;
    let mut counterexample = None;
    while feasible < 100 {
        let lambda = random_simplex(&mut rng, 3);
        if let Some(total) = additive_total(&lambda) {
            feasible += 1;
            if total == int(1) {
                exactly_one += 1;
            } else if counterexample.is_none() {
                counterexample = Some((lambda, total));
            }
        }
    }
    // Supplementary: λ drawn from the optimal face λ_C = 0.
    let mut face_one = 0;
    for _ in 0..100 {
        let mut lambda = random_simplex(&mut rng, 2);
        lambda.push(int(0));
        if additive_total(&lambda) == Some(int(1)) {
            face_one += 1;
        }
    }
    let vertex_total = additive_total(&[int(0), int(0), int(1)]);

    let sampling = exactly_one == 100;
    let mut detail = format!(
        "optimum {}; vertices {:?}; {exactly_one}/100 feasible samples give total slack 1",
        result.total_slack().unwrap(),
        vectors.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>()
    );
    if let Some((l, t)) = &counterexample {
        detail.push_str(&format!(
            " (e.g. lambda ({}, {}, {}) gives {t}; lambda = C gives {}); on the optimal face lambda_C = 0: {face_one}/100",
            l[0],
            l[1],
            l[2],
            vertex_total.map_or("infeasible".into(), |v| v.to_string())
        ));
    }
    Outcome {
        pass: optimum && both && sampling,
        detail,
        unattainable: (optimum && both && !sampling && face_one == 100).then(|| {
            "total slack equals 1 - lambda_C on the feasible set, so it is constant only on the optimal face".into()
        }),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut evaluated = 0;
    let mut violations = Vec::new();
    for trial in 0..200 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(1..=2);
        let mut dmus = Vec::new();
        for i in 0..n {
            let x: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
            let y: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
            dmus.push(Dmu::integer(format!("D{i}"), &x, &y));
        }
        let data = Dataset::new(dmus).unwrap();
        for dmu in data.dmus() {
            evaluated += 1;
            let vrs = solve_vrs_radial(&data, &dmu.name).unwrap();
            let kkm = solve_kkm(&data, &dmu.name).unwrap();
            let lvm = solve_lvm(&data, &dmu.name).unwrap();
            let ordered = vrs.theta() <= kkm.theta() && kkm.theta() <= lvm.theta() && lvm.theta() <= Some(&int(1));
            let kkm_member = kkm.targets.is_integer() && membership_real_vrs(&data, &kkm.targets).unwrap().is_some();
            let lvm_member =
                lvm.targets.is_integer() && n_point_integer_combination(&data, &lvm.targets).unwrap().is_some();
            if !(ordered && kkm_member && lvm_member) {
                violations.push(format!("trial {trial} {}", dmu.name));
            }
        }
    }
    Outcome::check(
        violations.is_empty(),
        format!(
            "{evaluated} DMUs over 200 datasets; violations {}",
            if violations.is_empty() { "none".to_string() } else { violations.join(", ") }
        ),
    )
}

fn walk(dir: &Path, out: &mut Vec<PathBuf>) {
    for entry in std::fs::read_dir(dir).unwrap().flatten() {
        let path = entry.path();
        if path.is_dir() {
            if path.file_name().is_some_and(|n| n != "target" && n != ".git") {
                walk(&path, out);
            }
        } else if path
            .extension()
            .is_some_and(|e| e == "rs" || e == "json" || e == "csv")
        {
            out.push(path);
        }
    }
}

fn criterion_9() -> Outcome {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let needles = [format!("{}.{}", 37, 5), format!("{}.{}", 36, 84210526), format!("{}.{}", 233, 3)];
    let this_file = PathBuf::from(file!());
    let mut sources = Vec::new();
    walk(&root.join("crates"), &mut sources);
    walk(&root.join("data"), &mut sources);
    let mut hits = Vec::new();
    for path in &sources {
        if path.ends_with(&this_file) {
            continue;
        }
        let text = std::fs::read_to_string(path).unwrap_or_default();
        if needles.iter().any(|n| text.contains(n.as_str())) {
            hits.push(path.display().to_string());
        }
    }
    let readme = std::fs::read_to_string(root.join("README.md")).unwrap_or_default();
    let documented = needles.iter().all(|n| readme.contains(n.as_str())) && readme.contains("not reproducible");
    Outcome::check(
        hits.is_empty() && documented,
        format!(
            "{} source/data files scanned, hits {:?}; README marks them not reproducible: {documented}",
            sources.len(),
            hits
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("segment emptiness", criterion_1),
        ("lemma gap", criterion_2),
        ("A/B/F combination", criterion_3),
        ("fixpoint completion", criterion_4),
        ("corollary identity", criterion_5),
        ("over-estimation", criterion_6),
        ("additive alternate optima", criterion_7),
        ("model ordering", criterion_8),
        ("out-of-scope guard", criterion_9),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        println!(
            "{} {}. {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail
        );
        if outcome.pass {
            passed += 1;
        } else if let Some(reason) = &outcome.unattainable {
            println!("     unattainable as stated: {reason}");
        } else {
            unexpected += 1;
        }
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
