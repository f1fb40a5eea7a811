//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::process::{exit, Command};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;

use rpotent::decomposition::{brute_force_pattern, is_decomposable};
use rpotent::generators::{cycle_matrix, rng_from_seed};
use rpotent::matrix::Rational;
use rpotent::potency::{is_r_potent, rank_trace_check};
use rpotent::semigroup::{closure_cap_from_env, equivalence_report, pattern_closure, symmetric_group_analysis};
use rpotent::spectral::{is_primitive, perron_value, wielandt_exponent, DEFAULT_MAX_ITER};
use rpotent::structure::analyze_structure;
use rpotent::verify::{
    draw_any_r_potent, draw_rank_above_bound, draw_semigroup_generators, draw_singular_zero_diagonal, run_claim,
    trial_seed, Draw, VerifyOptions, ATTEMPTS_PER_TRIAL,
};
use rpotent::{PatternMatrix, Permutation, RMatrix};

const SEED: u64 = 1;
const PERRON_TOLERANCE: f64 = 1e-9;
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const RANK_ABOVE_LIMIT: Duration = Duration::from_secs(30);
const S6_LIMIT: Duration = Duration::from_secs(5);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn dump(label: &str, seed: u64, m: &RMatrix) {
    eprintln!("  {} seed {}: {}", label, seed, serde_json::to_string(&m.to_json()).unwrap());
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut disagreements = 0usize;
    let mut check = |p: &PatternMatrix| {
        let fast = is_decomposable(&RMatrix::indicator(p));
        let slow = brute_force_pattern(p).unwrap().is_some();
        checked += 1;
        if fast != slow {
            disagreements += 1;
            eprintln!("  disagreement on {:?}", p);
        }
    };
    for n in 3..=4 {
        for code in 0..1u64 << (n * n) {
            check(&PatternMatrix::from_code(n, code));
        }
    }
    for n in 5..=8 {
        let mut rng = rng_from_seed(trial_seed(SEED, n));
        for _ in 0..1000 {
            let density = rng.gen_range(0.05..0.6);
            check(&PatternMatrix::from_fn(n, |_, _| rng.gen_bool(density)));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        disagreements == 0 && checked == 512 + 65_536 + 4000 && elapsed < ORACLE_LIMIT,
        format!("{} patterns, {} disagreements, {:.2?}", checked, disagreements, elapsed),
    )
}

fn rank_trace() -> Verdict {
    let mut failures = 0;
    let mut rs = [0usize; 6];
    let mut max_n = 0;
    for t in 0..500 {
        let d = draw_any_r_potent(trial_seed(SEED, t)).unwrap();
        rs[d.r as usize] += 1;
        max_n = max_n.max(d.matrix.n());
        if d.matrix.n() > 36 || !rank_trace_check(&d.matrix, d.r).unwrap() {
            failures += 1;
            dump("rank-trace", d.seed, &d.matrix);
        }
    }
    verdict(
        failures == 0 && rs[2..=5].iter().all(|&c| c > 0),
        format!("500 r-potents, r = 2..5 counts {:?}, max n {}, {} failures", &rs[2..=5], max_n, failures),
    )
}

fn rank_above_bound(draws: &mut Vec<Draw>) -> Verdict {
    let start = Instant::now();
    let mut exceptions = 0;
    for t in 0..200 {
        let d = draw_rank_above_bound(trial_seed(SEED, t)).unwrap();
        let valid = is_r_potent(&d.matrix, d.r).unwrap() && d.matrix.exact_rank() > (d.r - 1) as usize;
        if !valid || !is_decomposable(&d.matrix) {
            exceptions += 1;
            dump("rank above r-1", d.seed, &d.matrix);
        }
        draws.push(d);
    }
    let elapsed = start.elapsed();
    verdict(
        exceptions == 0 && elapsed < RANK_ABOVE_LIMIT,
        format!("200 draws, {} exceptions, {:.2?}", exceptions, elapsed),
    )
}

fn singular_zero_diagonal(draws: &mut Vec<Draw>) -> Verdict {
    let mut found = 0;
    let mut exceptions = 0;
    let mut attempt = 0;
    while found < 100 && attempt < 100 * ATTEMPTS_PER_TRIAL {
        let seed = trial_seed(SEED, attempt);
        attempt += 1;
        let Some(d) = draw_singular_zero_diagonal(seed).unwrap() else { continue };
        found += 1;
        let a = &d.matrix;
        let rank = a.exact_rank();
        let hypotheses = is_r_potent(a, d.r).unwrap()
            && rank <= (d.r - 1) as usize
            && rank < a.n()
            && (2..d.r).all(|j| a.power(j as u64).has_zero_diagonal_entry());
        if !hypotheses || !is_decomposable(a) {
            exceptions += 1;
            dump("singular zero-diagonal", d.seed, a);
        }
        draws.push(d);
    }
    verdict(
        found == 100 && exceptions == 0,
        format!("{} draws in {} attempts, {} exceptions", found, attempt, exceptions),
    )
}

fn rank_one_idempotents() -> Verdict {
    let mut mismatches = 0;
    let mut padded = 0;
    let mut positive = 0;
    for t in 0..100 {
        let mut rng = rng_from_seed(trial_seed(SEED, t));
        let n = rng.gen_range(2..=8);
        let e = rpotent::generators::random_rank_one_idempotent(n, t % 2 == 0, &mut rng);
        assert!(is_r_potent(&e, 2).unwrap() && e.exact_rank() == 1);
        if e.is_positive() {
            positive += 1;
        } else {
            padded += 1;
        }
        if is_decomposable(&e) != e.has_zero_diagonal_entry() {
            mismatches += 1;
            dump("rank-one idempotent", trial_seed(SEED, t), &e);
        }
    }
    verdict(
        mismatches == 0 && positive > 0 && padded > 0,
        format!("100 idempotents ({} positive, {} with zeros), {} mismatches", positive, padded, mismatches),
    )
}

fn structure(draws: &[Draw]) -> Verdict {
    let mut checked = 0;
    let mut violations = 0;
    let mut unseparated = 0;
    for d in draws.iter().filter(|d| is_decomposable(&d.matrix)) {
        let s = analyze_structure(&d.matrix, d.r).unwrap();
        checked += 1;
        if s.consecutive_zero_pairs > 0 {
            unseparated += 1;
        }
        if !(s.blocks_ok && s.rank_sum_ok && s.nonzero_bounds_ok() && s.separated_total_bound_ok()) {
            violations += 1;
            dump(&format!("structure r = {}", d.r), d.seed, &d.matrix);
        }
    }
    verdict(
        violations == 0,
        format!(
            "{} decomposable matrices, {} violations, {} without a zero-separating order (logged)",
            checked, violations, unseparated
        ),
    )
}

fn kronecker() -> Verdict {
    let opts = VerifyOptions { trials: 100, seed: SEED, n: None };
    let a = run_claim("5.1", &opts).unwrap();
    let b = run_claim("5.2", &opts).unwrap();
    verdict(
        a.all_passed() && b.all_passed() && a.trials == 100 && b.trials == 100,
        format!("r-potent factor {}/{}, idempotent factor {}/{}", a.passed, a.trials, b.passed, b.trials),
    )
}

fn wielandt() -> Verdict {
    let mut exceptions = 0;
    let mut total = 0;
    for n in 2..=6 {
        let mut rng = rng_from_seed(trial_seed(SEED, n));
        let mut found = 0;
        while found < 100 {
            let density = rng.gen_range(0.2..0.6);
            let p = PatternMatrix::from_fn(n, |_, _| rng.gen_bool(density));
            if !is_primitive(&RMatrix::indicator(&p)) {
                continue;
            }
            found += 1;
            let mut power = p.clone();
            for _ in 1..wielandt_exponent(n) {
                power = power.product(&p);
            }
            if !power.is_full() {
                exceptions += 1;
                eprintln!("  primitive pattern without positive power: {:?}", p);
            }
        }
        total += found;
    }
    verdict(
        exceptions == 0 && total == 500,
        format!("{} primitive patterns, n = 2..6, {} exceptions", total, exceptions),
    )
}

fn perron_and_trace() -> Verdict {
    let mut perron_bad = 0;
    let mut checked = 0;
    for t in 0..200 {
        let d = draw_any_r_potent(trial_seed(SEED, t)).unwrap();
        if d.matrix.is_zero() {
            continue;
        }
        checked += 1;
        let rho = perron_value(&d.matrix, PERRON_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        if (rho - 1.0).abs() > PERRON_TOLERANCE {
            perron_bad += 1;
            dump(&format!("perron value {}", rho), d.seed, &d.matrix);
        }
    }
    let mut trace_checked = 0;
    let mut trace_bad = 0;
    for t in 0..100 {
        let mut rng = rng_from_seed(trial_seed(SEED, t));
        let m = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=3);
        let base = cycle_matrix(m).kron(&RMatrix::uniform_idempotent(k));
        let a = base.conjugate(&Permutation::random(base.n(), &mut rng)).unwrap();
        let r = m as u32 + 1;
        assert!(is_r_potent(&a, r).unwrap() && a.exact_rank() == m && !is_decomposable(&a));
        trace_checked += 1;
        let rho = perron_value(&a, PERRON_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        if a.trace() != Rational::zero() || (rho - 1.0).abs() > PERRON_TOLERANCE {
            trace_bad += 1;
            dump("indecomposable rank r-1", trial_seed(SEED, t), &a);
        }
    }
    verdict(
        perron_bad == 0 && trace_bad == 0,
        format!(
            "{} nonzero r-potents off by more than {:e}: {}; {} indecomposable rank-(r-1) r-potents with r >= 3, nonzero trace: {}",
            checked, PERRON_TOLERANCE, perron_bad, trace_checked, trace_bad
        ),
    )
}

fn high_rank_semigroups() -> Verdict {
    let opts = VerifyOptions { trials: 100, seed: SEED, n: None };
    let report = run_claim("6.3", &opts).unwrap();
    for note in &report.notes {
        eprintln!("  note: {}", note);
    }
    if let Some(c) = &report.first_counterexample {
        eprintln!("  first counterexample seed {}: {}", c.seed, c.detail);
        for m in &c.matrices {
            eprintln!("  {}", serde_json::to_string(m).unwrap());
        }
    }
    // The same semigroups, checked for agreement of the three criteria.
    let mut closed = 0;
    let mut disagree = 0;
    for t in 0..report.trials + report.skipped {
        let mut rng = rng_from_seed(trial_seed(SEED, t));
        let r = rng.gen_range(2..=5);
        let count = rng.gen_range(1..=3);
        let gens = draw_semigroup_generators(&mut rng, r, count, true, 6).unwrap();
        let pats: Vec<PatternMatrix> = gens.iter().map(RMatrix::pattern).collect();
        let s = pattern_closure(&pats, closure_cap_from_env()).unwrap();
        if s.truncated {
            continue;
        }
        closed += 1;
        if !equivalence_report(&s).unwrap().agree {
            disagree += 1;
        }
    }
    verdict(
        report.all_passed() && report.trials == 100 && disagree == 0,
        format!(
            "{}/{} semigroups decomposable, {} failed; three-way agreement on {} closed semigroups, {} disagreements",
            report.passed, report.trials, report.failed, closed, disagree
        ),
    )
}

fn minimal_potency_by_powers(p: &RMatrix) -> u32 {
    let mut power = p.multiply(p).unwrap();
    let mut r = 2;
    while &power != p {
        power = power.multiply(p).unwrap();
        r += 1;
    }
    r
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn symmetric_groups() -> Verdict {
    let mut problems = Vec::new();
    let mut s6 = Duration::ZERO;
    let mut maxima = Vec::new();
    for n in 2..=6 {
        let start = Instant::now();
        let g = symmetric_group_analysis(n).unwrap();
        if n == 6 {
            s6 = start.elapsed();
        }
        let mut oracle_max = 0;
        for p in Permutation::all(n) {
            let r = minimal_potency_by_powers(&p.to_matrix());
            let expected = p.cycle_type().into_iter().fold(1, lcm) as u32 + 1;
            if r != expected {
                problems.push(format!("S_{}: {:?} has potency {} not {}", n, p.as_slice(), r, expected));
            }
            oracle_max = oracle_max.max(r);
        }
        if oracle_max != g.max_potency {
            problems.push(format!("S_{}: library maximum {} but oracle {}", n, g.max_potency, oracle_max));
        }
        if !g.sum_positive || !g.indecomposable || !g.potency_matches_lcm {
            problems.push(format!("S_{}: sum positive {}, indecomposable {}", n, g.sum_positive, g.indecomposable));
        }
        if oracle_max != n as u32 + 1 {
            problems.push(format!(
                "S_{}: maximum potency {} (cycle type {:?}), expected {}",
                n, oracle_max, g.max_potency_cycle_type, n + 1
            ));
        }
        maxima.push(format!("{}:{}", n, oracle_max));
    }
    if s6 >= S6_LIMIT {
        problems.push(format!("S_6 took {:.2?}", s6));
    }
    for p in &problems {
        eprintln!("  {}", p);
    }
    verdict(
        problems.is_empty(),
        format!("maximum potency by n [{}], S_6 in {:.2?}, {} problems", maxima.join(" "), s6, problems.len()),
    )
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_rpotent"))
        .args(args)
        .env_remove("RPOTENT_CLOSURE_CAP")
        .output()
        .unwrap();
    [out.stdout, out.stderr, vec![out.status.code().unwrap_or(-1) as u8]].concat()
}

fn determinism() -> Verdict {
    let commands: [&[&str]; 7] = [
        &["generate", "--kind", "cycle", "--len", "5", "--seed", "3"],
        &["generate", "--kind", "kronecker", "--r", "3", "--rank", "4", "--seed", "11"],
        &["generate", "--kind", "triangular_family", "--r", "4", "--rank", "2", "--seed", "5"],
        &["generate", "--kind", "conjugated", "--r", "5", "--rank", "6", "--seed", "42"],
        &["generate", "--kind", "permutation", "--n", "6", "--seed", "8"],
        &["verify", "--theorem", "3.2", "--trials", "50", "--seed", "9"],
        &["verify", "--theorem", "4.1", "--trials", "30", "--seed", "2", "--json"],
    ];
    let differing: Vec<String> = commands
        .iter()
        .filter(|args| run_cli(args) != run_cli(args))
        .map(|args| args.join(" "))
        .collect();
    verdict(
        differing.is_empty(),
        format!("{} commands run twice, {} differ {:?}", commands.len(), differing.len(), differing),
    )
}

fn main() {
    let mut draws = Vec::new();
    let mut results = Vec::new();
    let mut record = |n: usize, name: &str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = f();
        println!(
            "{} criterion {}: {}: {} [{:.2?}]",
            if v.ok { "PASS" } else { "FAIL" },
            n,
            name,
            v.detail,
            start.elapsed()
        );
        results.push(v.ok);
    };
    record(1, "graph test matches subset oracle", &mut oracle_equivalence);
    record(2, "rank equals trace of A^(r-1)", &mut rank_trace);
    record(3, "rank above r-1 forces decomposable", &mut || rank_above_bound(&mut draws));
    record(4, "singular with zero-diagonal powers forces decomposable", &mut || singular_zero_diagonal(&mut draws));
    record(5, "rank-one idempotent decomposable iff zero diagonal", &mut rank_one_idempotents);
    record(6, "block structure of decomposable r-potents", &mut || structure(&draws));
    record(7, "Kronecker products stay decomposable r-potents", &mut kronecker);
    record(8, "primitive patterns have positive Wielandt powers", &mut wielandt);
    record(9, "Perron value one and zero trace", &mut perron_and_trace);
    record(10, "semigroups of high-rank r-potents are decomposable", &mut high_rank_semigroups);
    record(11, "symmetric groups: positive sum, potency lcm+1, maximum n+1", &mut symmetric_groups);
    record(12, "generate and verify are deterministic", &mut determinism);
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        exit(1);
    }
}
