//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any failed.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use geolang::cone::{build_cone_automaton, validate_automaton, WindowFilter};
use geolang::fsa::Fsa;
use geolang::group::{builtin, enumerate_ball, LoadedGroup};
use geolang::growth::{
    count_matrix, extend_with_free_factor, growth_rate, pf_eigenvalue, rational_series,
    strict_gap_check, HELD_OUT_TERMS,
};
use geolang::pump::{check_linear_power_growth, periodic_word, pump_decomposition};
use geolang::scenario::SHIPPED_TRIPLES;
use geolang::shortlex::{auto_equality_recognizer, unique_rep_language, ShortlexOptions};
use geolang::subgroup::{
    default_validation_depth, escalate_k, subgroup_word_automaton, unique_rep_subgroup_language,
    KEscalation,
};
use geolang::word::Word;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(name: &str) -> LoadedGroup {
    builtin(name).expect("builtin").expect("loads")
}

fn pf(fsa: &Fsa) -> f64 {
    pf_eigenvalue(
        &count_matrix(&fsa.determinize().trim()).unwrap(),
        1e-12,
        1_000_000,
    )
    .unwrap()
}

fn spheres(fsa: &Fsa, n: usize) -> Vec<u64> {
    fsa.count_words(n).unwrap().sphere_u64().unwrap()
}

fn cumulative(fsa: &Fsa, n: usize) -> Vec<u64> {
    fsa.count_words(n).unwrap().cumulative_u64().unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

/// Freely reduced words over a, A, b, B, counted by length.
fn reduced_word_counts(n: usize) -> Vec<u64> {
    let inv = [1, 0, 3, 2];
    let mut out = vec![0u64; n + 1];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(0, None)];
    while let Some((len, last)) = stack.pop() {
        out[len] += 1;
        if len == n {
            continue;
        }
        for (a, &ia) in inv.iter().enumerate() {
            if last != Some(ia) {
                stack.push((len + 1, Some(a)));
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = group("f2");
    let auto = build_cone_automaton(&g.model, 1, &WindowFilter::trivial(), 40)
        .map_err(|e| e.to_string())?;
    let trimmed = auto.fsa().trim();
    ensure(trimmed.num_states() == 5, || {
        format!("{} trimmed states", trimmed.num_states())
    })?;
    let rho = pf(auto.fsa());
    ensure((rho - 3.0).abs() <= 1e-9, || format!("pf {rho}"))?;
    let sphere = spheres(auto.fsa(), 12);
    for n in 1..=12u32 {
        ensure(sphere[n as usize] == 4 * 3u64.pow(n - 1), || {
            format!("sphere({n}) = {}", sphere[n as usize])
        })?;
    }
    let oracle = reduced_word_counts(9);
    ensure(sphere[..=9] == oracle[..], || {
        format!("machine {sphere:?} vs reduced words {oracle:?}")
    })?;
    let long: Vec<BigInt> = cumulative(auto.fsa(), 30)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let series = rational_series(&long, 6).map_err(|e| e.to_string())?;
    // (1 + x) / ((1 - 3x)(1 - x)) = (1 + x) / (1 - 4x + 3x^2)
    let expected: Vec<BigInt> = [1, -4, 3].into_iter().map(BigInt::from).collect();
    ensure(
        series.numerator == [BigInt::from(1), BigInt::from(1)] && series.denominator == expected,
        || format!("series {series}"),
    )?;
    ensure(series.expand(long.len()).unwrap() == long, || {
        "series does not reproduce counts".into()
    })?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "5 states, pf {rho}, series {series}, {:?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g = group("z2");
    let filter = WindowFilter::trivial();
    let auto = build_cone_automaton(&g.model, 1, &filter, 40).map_err(|e| e.to_string())?;
    let trimmed = auto.fsa().trim();
    ensure(trimmed.num_states() == 9, || {
        format!("{} trimmed states", trimmed.num_states())
    })?;
    let sl = unique_rep_language(&g.model, &filter, 1, &g.order, &ShortlexOptions::default())
        .map_err(|e| e.to_string())?;
    let counts = cumulative(&sl.fsa, 10);
    let ball = enumerate_ball(&g.model, 10).map_err(|e| e.to_string())?;
    let mut total = 0u64;
    for n in 0..=10i64 {
        total += ball.sphere(n as usize).len() as u64;
        // lattice points with |i| + |j| <= n
        let lattice = (-n..=n).map(|i| 2 * (n - i.abs()) + 1).sum::<i64>() as u64;
        let formula = (2 * n * n + 2 * n + 1) as u64;
        ensure(
            counts[n as usize] == formula && lattice == formula && total == formula,
            || {
                format!(
                    "n = {n}: machine {}, ball {total}, lattice {lattice}",
                    counts[n as usize]
                )
            },
        )?;
    }
    let rho = pf(&sl.fsa);
    ensure((rho - 1.0).abs() <= 1e-6, || format!("pf {rho}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "9 states, counts {counts:?}, pf {rho}, {:?}",
        start.elapsed()
    ))
}

/// Pairs of equal-length geodesic words in Z^2 ending at the same point,
/// counted by brute force over all words.
fn z2_pair_counts(n: usize) -> Vec<u64> {
    let steps = [(1i32, 0i32), (-1, 0), (0, 1), (0, -1)];
    let mut out = Vec::new();
    for len in 0..=n {
        let mut endpoints: HashMap<(i32, i32), u64> = HashMap::new();
        for code in 0..4usize.pow(len as u32) {
            let (mut x, mut y, mut c) = (0, 0, code);
            for _ in 0..len {
                x += steps[c % 4].0;
                y += steps[c % 4].1;
                c /= 4;
            }
            if (x.abs() + y.abs()) as usize == len {
                *endpoints.entry((x, y)).or_default() += 1;
            }
        }
        out.push(endpoints.values().map(|c| c * c).sum());
    }
    out
}

fn criterion_3() -> Outcome {
    let g = group("z2");
    let auto = build_cone_automaton(&g.model, 1, &WindowFilter::trivial(), 40)
        .map_err(|e| e.to_string())?;
    let (q, r) =
        auto_equality_recognizer(auto.fsa(), &g.model, 0, 6, 24).map_err(|e| e.to_string())?;
    let machine = spheres(&q.fsa().determinize(), 6);
    let brute = z2_pair_counts(6);
    ensure(machine[2] == 20 && machine[3] == 76, || {
        format!("lengths 2, 3: {} {}", machine[2], machine[3])
    })?;
    ensure(machine == brute, || {
        format!("machine {machine:?} vs brute force {brute:?}")
    })?;
    Ok(format!("r = {r}, pair counts {machine:?}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let g = group("z2*z");
    let h = g.subgroup("ab").map_err(|e| e.to_string())?;
    let al = g.model.alphabet();
    let (a, b) = (al.letter("a").unwrap(), al.letter("b").unwrap());
    for k in 0..=4 {
        let n = k + 2;
        let mut letters = vec![a; n];
        letters.extend(vec![b; n]);
        let w = Word::from_letters(letters);
        let machine = subgroup_word_automaton(&g.model, h, k).map_err(|e| e.to_string())?;
        ensure(!machine.accepts(&w).unwrap(), || {
            format!("k = {k} accepts a^{n} b^{n}")
        })?;
        // a and b commute and generate a free abelian factor, so a^n b^n is
        // geodesic (length 2n) and equals (ab)^n.
        let len = g.model.geodesic_length(&w).unwrap();
        let ab_n = Word::from_letters([a, b].repeat(n));
        let same = g.model.normal_form(&w).unwrap() == g.model.normal_form(&ab_n).unwrap();
        ensure(
            len == 2 * n && same && h.contains(&g.model.normal_form(&w).unwrap()),
            || format!("oracle: a^{n} b^{n} has length {len}, equals (ab)^{n}: {same}"),
        )?;
    }
    let esc = escalate_k(
        &g.model,
        h,
        &WindowFilter::trivial(),
        1,
        0,
        4,
        default_validation_depth(4),
    )
    .map_err(|e| e.to_string())?;
    ensure(matches!(esc, KEscalation::CapHit { .. }), || {
        format!("escalation: {}", esc.label())
    })?;
    ensure(esc.label().contains("inconclusive/cap-hit"), || esc.label())?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "a^(k+2) b^(k+2) rejected for k <= 4; {}; {:?}",
        esc.label(),
        start.elapsed()
    ))
}

fn j_machine(g: &LoadedGroup, sub: &str) -> Result<Fsa, String> {
    let h = g.subgroup(sub).map_err(|e| e.to_string())?;
    unique_rep_subgroup_language(&g.model, h, 1, &WindowFilter::trivial(), 1, &g.order)
        .map_err(|e| e.to_string())
}

fn criterion_5() -> Outcome {
    let g = group("f2");
    let j = j_machine(&g, "a")?;
    let lam = growth_rate(&j, 1e-12).map_err(|e| e.to_string())?;
    ensure((lam - 1.0).abs() <= 1e-6, || format!("lambda(J) = {lam}"))?;
    let ext = extend_with_free_factor(&j, &g.model.alphabet().parse_word("b").unwrap())
        .map_err(|e| e.to_string())?;
    let lam_ext = growth_rate(&ext, 1e-12).map_err(|e| e.to_string())?;
    ensure((1.1..=3.0).contains(&lam_ext), || {
        format!("lambda' = {lam_ext}")
    })?;
    let gap = strict_gap_check(&j, &ext, 0.1).map_err(|e| e.to_string())?;
    ensure(gap.passed, || format!("gap {gap:?}"))?;
    let full = build_cone_automaton(&g.model, 1, &WindowFilter::trivial(), 40)
        .map_err(|e| e.to_string())?;
    let lam_full = growth_rate(full.fsa(), 1e-12).map_err(|e| e.to_string())?;
    ensure(
        (lam_full - 3.0).abs() <= 1e-9 && lam_ext <= lam_full,
        || format!("lambda' = {lam_ext}, full = {lam_full}"),
    )?;
    Ok(format!("lambda {lam} < lambda' {lam_ext} <= {lam_full}"))
}

fn criterion_6() -> Outcome {
    let g = group("f2");
    let j = j_machine(&g, "a")?;
    let j2 = j_machine(&g, "a2")?;
    let f = cumulative(&j, 32);
    let f2 = cumulative(&j2, 32);
    for n in 0..=30 {
        // <a> meets B(e, n) in a^-n..a^n; <a^2> in the even powers
        let (oracle, oracle2) = (2 * n as u64 + 1, 2 * (n as u64 / 2) + 1);
        ensure(f[n] == oracle && f2[n] == oracle2, || {
            format!("n = {n}: counts {} {} vs {oracle} {oracle2}", f[n], f2[n])
        })?;
        ensure(f2[n] <= f[n] && f[n] <= 2 * f2[n + 2], || {
            format!("sandwich fails at n = {n}")
        })?;
    }
    let (l1, l2) = (
        growth_rate(&j, 1e-12).unwrap(),
        growth_rate(&j2, 1e-12).unwrap(),
    );
    ensure((l1 - 1.0).abs() <= 1e-6 && (l2 - 1.0).abs() <= 1e-6, || {
        format!("lambdas {l1} {l2}")
    })?;
    Ok(format!("sandwich holds for n <= 30, lambdas {l1} {l2}"))
}

fn criterion_7() -> Outcome {
    let mut words = 0;
    for &(name, spec, m) in SHIPPED_TRIPLES {
        let g = group(name);
        let filter = WindowFilter::new(spec, &g.model);
        let auto = build_cone_automaton(&g.model, m, &filter, 40)
            .map_err(|e| format!("{name} {spec} m={m}: {e}"))?;
        let v = validate_automaton(&auto, &g.model, &filter, 8).map_err(|e| e.to_string())?;
        ensure(v.passed(), || {
            format!(
                "{name} {spec} m={m}: {} mismatches, first {:?}",
                v.mismatch_count,
                v.mismatches.first()
            )
        })?;
        words += v.machine_words;
    }
    Ok(format!(
        "{} triples, {words} words up to length 8, zero mismatches",
        SHIPPED_TRIPLES.len()
    ))
}

fn fits_with_held_out(name: &str, fsa: &Fsa) -> Result<(), String> {
    let live = fsa.determinize().trim();
    let s = live.num_states();
    let n = 2 * s + HELD_OUT_TERMS;
    let counts: Vec<BigInt> = live
        .count_words(n)
        .unwrap()
        .sphere
        .into_iter()
        .map(BigInt::from)
        .collect();
    let series = rational_series(&counts, s).map_err(|e| format!("{name}: {e}"))?;
    ensure(
        series.order <= s
            && series.fitted_terms == 2 * s + 1
            && series.validated_terms >= HELD_OUT_TERMS,
        || {
            format!(
                "{name}: order {} fitted {} validated {}",
                series.order, series.fitted_terms, series.validated_terms
            )
        },
    )?;
    ensure(series.expand(counts.len()).unwrap() == counts, || {
        format!("{name}: expansion differs")
    })
}

fn criterion_8() -> Outcome {
    let mut machines: Vec<(String, Fsa)> = Vec::new();
    for &(name, spec, m) in SHIPPED_TRIPLES {
        let g = group(name);
        let auto = build_cone_automaton(&g.model, m, &WindowFilter::new(spec, &g.model), 40)
            .map_err(|e| e.to_string())?;
        machines.push((format!("{name} {spec} m={m}"), auto.into_fsa()));
    }
    let z2 = group("z2");
    let sl = unique_rep_language(
        &z2.model,
        &WindowFilter::trivial(),
        1,
        &z2.order,
        &ShortlexOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    machines.push(("z2 shortlex".into(), sl.fsa));
    let f2 = group("f2");
    let j = j_machine(&f2, "a")?;
    machines.push(("J_<a>".into(), j.clone()));
    machines.push(("J_<a^2>".into(), j_machine(&f2, "a2")?));
    let b = f2.model.alphabet().parse_word("b").unwrap();
    machines.push(("J_<a> + b".into(), extend_with_free_factor(&j, &b).unwrap()));
    for (name, fsa) in &machines {
        fits_with_held_out(name, fsa)?;
    }
    Ok(format!(
        "{} machines fitted with {HELD_OUT_TERMS} held-out terms",
        machines.len()
    ))
}

fn criterion_9() -> Outcome {
    let g = group("f2");
    let auto = build_cone_automaton(&g.model, 1, &WindowFilter::trivial(), 40)
        .map_err(|e| e.to_string())?;
    let al = g.model.alphabet();
    let prefix = al.parse_word("a b a b a b a b a b").unwrap();
    let d = pump_decomposition(auto.fsa(), &prefix, 1).map_err(|e| e.to_string())?;
    let trace = auto.fsa().trace(&prefix).unwrap();
    ensure(
        d.u.concat(&d.v).concat(&d.q) == prefix
            && !d.u.is_empty()
            && !d.v.is_empty()
            && trace[d.u.len()] == trace[d.u.len() + d.v.len()],
        || format!("invalid split {d:?}"),
    )?;
    for n in 0..=50 {
        let w = periodic_word(&d, n);
        // in F2 a word is geodesic iff it is freely reduced
        let reduced = w.letters().windows(2).all(|p| al.inverse(p[0]) != p[1]);
        ensure(auto.accepts(&w).unwrap() && reduced, || {
            format!("u v^{n} fails")
        })?;
    }
    ensure(
        check_linear_power_growth(&g.model, &d, 50)
            .unwrap()
            .is_none(),
        || "power growth fails".into(),
    )?;
    Ok(format!(
        "u = `{}`, v = `{}`",
        al.format_word(&d.u),
        al.format_word(&d.v)
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("F2 baseline", criterion_1),
        ("Z^2 baseline", criterion_2),
        ("Z^2 equality recognizer", criterion_3),
        ("non-regularity witness", criterion_4),
        ("growth gap", criterion_5),
        ("finite-index growth", criterion_6),
        ("oracle equivalence", criterion_7),
        ("rational series fidelity", criterion_8),
        ("pumping", criterion_9),
    ];
    let mut failed = 0;
    let mut seen = BTreeMap::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match &outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
        seen.insert(i + 1, outcome.is_ok());
    }
    println!(
        "{} of {} criteria passed",
        seen.values().filter(|&&p| p).count(),
        seen.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
