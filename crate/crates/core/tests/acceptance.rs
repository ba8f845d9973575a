//! One PASS/FAIL line per acceptance criterion. Runs without the test
//! harness so the lines always reach stdout.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prefix_limits::demos::delayed_choice_maps;
use prefix_limits::family::{builtin_family, constant, fan_grow, fan_grow_object, fan_strand, fan_strand_object, BuiltinParams};
use prefix_limits::flows::{dyadic_tower, inclusion_demo, reconstruct, thread_of_flow, Dyadic, FlowSet};
use prefix_limits::limits::{check_naturality, enumerate_threads, exact_chain_limit};
use prefix_limits::lts::witness::{check_limit_bisim_witness, builtin_witness, WitnessBounds};
use prefix_limits::lts::{bisimilar, early_choice_lts, delayed_choice_lts, BisimResult};
use prefix_limits::maps::{all_partial_functions, compose, validate_php_direct, validate_php_structural, PartialFn, PhpMap};
use prefix_limits::order::{OrderBuilder, PrefixOrder};
use prefix_limits::sample::{random_lts, random_order, random_partial_fn, random_php_fn};

const SEED: u64 = 20_240_601;

// criterion 1
const EXHAUSTIVE_MAX: usize = 4;
const RANDOM_CASES: usize = 10_000;
const RANDOM_MAX: usize = 6;
const MAX_DISAGREEMENTS: usize = 0;
// criterion 2
const BUILTIN_MAX_N: usize = 8;
// criterion 3
const FAN_RANGE: std::ops::RangeInclusive<usize> = 2..=8;
// criterion 4
const CONSTANT_ORDERS: usize = 20;
const CONSTANT_MAX: usize = 6;
const CONSTANT_N: usize = 5;
// criterion 5
const LABELED_EXPECTED: usize = 0;
const UNLABELED_MIN: usize = 1;
// criterion 6
const WITNESS_BOUNDS: WitnessBounds = WitnessBounds { max_offset: 4, max_stride: 4, horizon: 32, depth: 6 };
// criterion 7
const MAX_DISTINGUISHING_LEVEL: usize = 2;
const RANDOM_SYSTEMS: usize = 20;
// criterion 8
const TOWER_K: usize = 6;
/// Exact dyadic arithmetic: values must be equal, not close.
const ROUND_TRIP_TOLERANCE: i64 = 0;
// criterion 9
const INCLUSION_LEN: usize = 8;
const INCLUSION_SAMPLES: usize = 10_000;
// criterion 10
const CATEGORY_CASES: usize = 10_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Every forest on `n` labelled-by-position elements: element `i` has no
/// parent or a parent among `0..i`.
fn all_orders(n: usize) -> Vec<PrefixOrder> {
    let mut out = Vec::new();
    let mut parents = vec![0usize; n];
    loop {
        let mut b = OrderBuilder::new();
        let mut ids = Vec::new();
        for i in 0..n {
            let parent = (parents[i] < i).then(|| ids[parents[i]]);
            ids.push(b.add(format!("e{i}"), parent).unwrap());
        }
        out.push(b.build());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            parents[i] += 1;
            if parents[i] <= i {
                break;
            }
            parents[i] = 0;
            i += 1;
        }
    }
}

fn verdicts_agree(f: PartialFn) -> (bool, bool) {
    let a = validate_php_direct(f.clone()).is_ok();
    let b = validate_php_structural(f).is_ok();
    (a == b, a)
}

fn criterion_1() -> Outcome {
    let orders: Vec<Arc<PrefixOrder>> = (0..=EXHAUSTIVE_MAX).flat_map(all_orders).map(Arc::new).collect();
    let (mut cases, mut accepted, mut disagreements) = (0usize, 0usize, 0usize);
    for s in &orders {
        for t in &orders {
            for f in all_partial_functions(s, t, &[]) {
                let (agree, ok) = verdicts_agree(f);
                cases += 1;
                accepted += usize::from(ok);
                disagreements += usize::from(!agree);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut random_accepted, mut random_disagreements) = (0usize, 0usize);
    for i in 0..RANDOM_CASES {
        let n = rng.gen_range(0..=RANDOM_MAX);
        let s = Arc::new(random_order(&mut rng, n));
        let n = rng.gen_range(0..=RANDOM_MAX);
        let t = Arc::new(random_order(&mut rng, n));
        let f = if i % 2 == 0 { random_partial_fn(&mut rng, &s, &t) } else { random_php_fn(&mut rng, &s, &t, 0.15) };
        let (agree, ok) = verdicts_agree(f);
        random_accepted += usize::from(ok);
        random_disagreements += usize::from(!agree);
    }
    let total = disagreements + random_disagreements;
    outcome(
        total <= MAX_DISAGREEMENTS,
        format!(
            "{} orders, {cases} exhaustive cases ({accepted} accepted), {RANDOM_CASES} random ({random_accepted} accepted), {total} disagreements",
            orders.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let base = random_order(&mut rng, 5);
    let mut checked = 0;
    let mut failures = Vec::new();
    for name in ["fan_strand", "fan_grow", "constant", "dyadic_tower"] {
        for n in 0..=BUILTIN_MAX_N {
            let params = BuiltinParams { n, order: Some(base.clone()), flows: Some(FlowSet::standard()) };
            let result = (|| -> Result<(), String> {
                let fam = builtin_family(name, &params).map_err(|e| e.to_string())?;
                let threads = enumerate_threads(&fam, n).map_err(|e| e.to_string())?;
                for i in 0..threads.index_count() {
                    let p = threads.projection_fn(i);
                    validate_php_direct(p.clone()).map_err(|e| format!("π_{i}: {e}"))?;
                    validate_php_structural(p).map_err(|e| format!("π_{i}: {e}"))?;
                }
                check_naturality(&threads).map_err(|e| e.to_string())
            })();
            checked += 1;
            if let Err(e) = result {
                failures.push(format!("{name} N={n}: {e}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{checked} families, {} violations {failures:?}", failures.len()))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for n in FAN_RANGE {
        let ys = exact_chain_limit(&fan_strand(n)).map(|l| l.order);
        let xs = exact_chain_limit(&fan_grow(n)).map(|l| l.order);
        let yt = enumerate_threads(&fan_strand(n), n);
        let xt = enumerate_threads(&fan_grow(n), n);
        let ok = match (ys, xs, yt, xt) {
            (Ok(ys), Ok(xs), Ok(yt), Ok(xt)) => {
                ys.is_isomorphic(&fan_strand_object(n))
                    && xs.is_isomorphic(&fan_grow_object(n))
                    && ys.is_isomorphic(yt.order())
                    && xs.is_isomorphic(xt.order())
            }
            _ => false,
        };
        if !ok {
            bad.push(n);
        }
    }
    outcome(bad.is_empty(), format!("N in {FAN_RANGE:?}, mismatches at {bad:?}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut matched = 0;
    for _ in 0..CONSTANT_ORDERS {
        let n = rng.gen_range(0..=CONSTANT_MAX);
        let order = random_order(&mut rng, n);
        if let Ok(t) = enumerate_threads(&constant(order.clone(), CONSTANT_N), CONSTANT_N) {
            matched += usize::from(t.order().is_isomorphic(&order));
        }
    }
    outcome(matched == CONSTANT_ORDERS, format!("{matched}/{CONSTANT_ORDERS} thread orders isomorphic to the object"))
}

fn criterion_5() -> Outcome {
    let (labeled, unlabeled) = delayed_choice_maps();
    outcome(
        labeled.len() == LABELED_EXPECTED && unlabeled.len() >= UNLABELED_MIN,
        format!("{} label-preserving maps, {} without labels", labeled.len(), unlabeled.len()),
    )
}

fn criterion_6() -> Outcome {
    let run = |name: &str| check_limit_bisim_witness(&builtin_witness(name).unwrap(), WITNESS_BOUNDS);
    let (w1, w2, literal, naive) = (run("witness-1"), run("witness-2"), run("witness-2-literal"), run("naive-fan"));
    let pass1 = matches!(&w1, Ok(o) if o.is_pass());
    let pass2 = matches!(&w2, Ok(o) if o.is_pass());
    let naive3 = matches!(&naive, Ok(o) if o.violated_bullet() == Some(3));
    let literal_text = match &literal {
        Ok(o) => match o.violated_bullet() {
            Some(b) => format!("condition {b} violated"),
            None => "passes".into(),
        },
        Err(e) => e.to_string(),
    };
    outcome(
        pass1 && pass2 && naive3,
        format!(
            "witness 1 {}, witness 2 {} (cofinal-restriction reading; tail-only reading: {literal_text}), naive relation condition-3 violation {}",
            if pass1 { "passes" } else { "fails" },
            if pass2 { "passes" } else { "fails" },
            if naive3 { "found" } else { "missing" },
        ),
    )
}

fn criterion_7() -> Outcome {
    let distinguished = matches!(bisimilar(&early_choice_lts(), &delayed_choice_lts()), Ok(BisimResult::Distinguished { level }) if level <= MAX_DISTINGUISHING_LEVEL);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut reflexive = 0;
    for _ in 0..RANDOM_SYSTEMS {
        let states = rng.gen_range(1..=6);
        let l = random_lts(&mut rng, states, &["a", "b"], 0.25);
        reflexive += usize::from(matches!(bisimilar(&l, &l), Ok(r) if r.is_bisimilar()));
    }
    outcome(
        distinguished && reflexive == RANDOM_SYSTEMS,
        format!("early vs delayed choice distinguished: {distinguished}; reflexive on {reflexive}/{RANDOM_SYSTEMS}"),
    )
}

fn criterion_8() -> Outcome {
    let flows = FlowSet::standard();
    let tower = match dyadic_tower(&flows, TOWER_K) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("tower rejected: {e}")),
    };
    let mut step_failures = 0;
    for n in 0..TOWER_K {
        let step = tower.family().step(n).as_partial_fn().clone();
        step_failures += usize::from(validate_php_direct(step.clone()).is_err());
        step_failures += usize::from(validate_php_structural(step).is_err());
    }
    let mut mismatches = 0usize;
    let mut compared = 0usize;
    for f in &flows.generators {
        let thread = match thread_of_flow(&tower, f) {
            Ok(t) => t,
            Err(_) => {
                mismatches += 1;
                continue;
            }
        };
        for d in 0..=TOWER_K as u32 {
            match reconstruct(&tower, &thread, d) {
                Ok(r) => {
                    let expected = f.samples(d);
                    compared += expected.len();
                    if r.values().len() != expected.len() {
                        mismatches += 1;
                        continue;
                    }
                    for (got, want) in r.values().iter().zip(&expected) {
                        if (got - want).abs() > Dyadic::from_int(ROUND_TRIP_TOLERANCE) {
                            mismatches += 1;
                        }
                    }
                }
                Err(_) => mismatches += 1,
            }
        }
    }
    outcome(
        step_failures == 0 && mismatches == 0,
        format!("K={TOWER_K}: {step_failures} step validation failures, {compared} samples compared, {mismatches} mismatches"),
    )
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for k in 1..=3u32 {
        match inclusion_demo(k, k + 1, INCLUSION_LEN, INCLUSION_SAMPLES, SEED) {
            Ok(r) => {
                pass &= r.passed();
                parts.push(format!(
                    "k={k}: zero member {}, {}/{} Lipschitz, zero increments 0 {}",
                    r.zero_member,
                    r.threads_checked - r.lipschitz_failures.len(),
                    r.threads_checked,
                    r.zero_increments_zero
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("k={k}: {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let (mut assoc, mut ident) = (0usize, 0usize);
    for _ in 0..CATEGORY_CASES {
        let objs: Vec<Arc<PrefixOrder>> = (0..4)
            .map(|_| {
                let n = rng.gen_range(0..=5);
                Arc::new(random_order(&mut rng, n))
            })
            .collect();
        let mut map = |i: usize| -> PhpMap {
            validate_php_direct(random_php_fn(&mut rng, &objs[i], &objs[i + 1], 0.1)).expect("generated maps are PHP")
        };
        let (f, g, h) = (map(0), map(1), map(2));
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        assoc += usize::from(!left.same_as(&right));
        let id_s = PhpMap::identity(objs[0].clone());
        let id_t = PhpMap::identity(objs[1].clone());
        ident += usize::from(!compose(&f, &id_s).unwrap().same_as(&f));
        ident += usize::from(!compose(&id_t, &f).unwrap().same_as(&f));
    }
    outcome(
        assoc + ident == 0,
        format!("{CATEGORY_CASES} triples: {assoc} associativity and {ident} identity violations"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("history-preservation characterizations agree", criterion_1),
        ("builtin limits are prefix orders with valid projections", criterion_2),
        ("fan limits", criterion_3),
        ("constant family recovers its object", criterion_4),
        ("no label-preserving delayed-choice map", criterion_5),
        ("limit bisimulation witnesses", criterion_6),
        ("bisimulation", criterion_7),
        ("dyadic tower round trip", criterion_8),
        ("differential inclusion closure", criterion_9),
        ("category laws", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {}: {title}: {} [{:.1}s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
