//! Named end-to-end pipelines with expected outcomes, and the oracle
//! cross-check matrix over the shipped (group, filter, m) triples.
//!
//! Reports carry no timings or addresses, so identical configurations give
//! byte-identical text and JSON.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cone::{
    build_with_budget, validate_automaton, ConeAutomaton, FilterSpec, ValidationReport,
    WindowFilter,
};
use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::group::{
    enumerate_ball, enumerate_geodesic_words, load_group, LoadedGroup, DEFAULT_ELEMENT_BUDGET,
};
use crate::growth::{
    count_matrix, extend_with_free_factor, growth_rate, pf_eigenvalue, rational_series,
    strict_gap_check, DEFAULT_PF_ITERATIONS, DEFAULT_PF_TOLERANCE,
};
use crate::pump::{check_linear_power_growth, periodic_word, pump_decomposition};
use crate::shortlex::{auto_equality_recognizer, unique_rep_language, ShortlexOptions};
use crate::subgroup::{
    default_validation_depth, escalate_k, subgroup_word_automaton, unique_rep_subgroup_language,
    KEscalation,
};
use crate::word::SymbolOrder;

/// Resource limits shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Cap on group elements held by one ball enumeration.
    pub elements: usize,
    /// Cap on signature classes explored by one cone build.
    pub classes: usize,
    /// Longest word any exploration or validation may reach.
    pub depth: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            elements: DEFAULT_ELEMENT_BUDGET,
            classes: crate::cone::DEFAULT_CLASS_BUDGET,
            depth: 40,
        }
    }
}

/// One (group, filter, m) combination of the oracle matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub group: String,
    pub filter: FilterSpec,
    pub m: usize,
}

/// The triples checked by [`validate_all`] by default.
pub const SHIPPED_TRIPLES: &[(&str, FilterSpec, usize)] = &[
    ("f2", FilterSpec::Trivial, 1),
    ("z2", FilterSpec::Trivial, 2),
    ("z2*z", FilterSpec::Trivial, 2),
    ("z2*z", FilterSpec::SyllableBound(1), 2),
    ("raag-abc", FilterSpec::CommutingBlock(1), 2),
    ("z-x-f2", FilterSpec::Trivial, 1),
    ("s3", FilterSpec::Trivial, 2),
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub budgets: Budgets,
    /// Length up to which machines are compared with brute force.
    pub validation_depth: usize,
    /// Cone builds escalate `m` at most this many times.
    pub max_escalations: usize,
    /// Replaces the `m` of every triple when set.
    pub m_override: Option<usize>,
    pub triples: Vec<Triple>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            budgets: Budgets::default(),
            validation_depth: 8,
            max_escalations: 3,
            m_override: None,
            triples: SHIPPED_TRIPLES
                .iter()
                .map(|&(g, filter, m)| Triple {
                    group: g.to_string(),
                    filter,
                    m,
                })
                .collect(),
        }
    }
}

impl RunConfig {
    /// Checks that depths fit the budgets and that every group resolves.
    pub fn check(&self) -> Result<()> {
        if self.validation_depth > self.budgets.depth {
            return Err(Error::budget("validation depth", self.budgets.depth));
        }
        for t in &self.triples {
            load_group(&t.group)?;
        }
        Ok(())
    }

    fn load(&self, name: &str) -> Result<LoadedGroup> {
        let mut g = load_group(name)?;
        g.model = g.model.with_budget(self.budgets.elements);
        Ok(g)
    }

    fn cone(&self, g: &LoadedGroup, m: usize, filter: &WindowFilter) -> Result<ConeAutomaton> {
        build_with_budget(
            &g.model,
            m,
            filter,
            self.budgets.depth,
            self.budgets.classes,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl ScenarioReport {
    fn new(name: &str) -> Self {
        ScenarioReport {
            scenario: name.to_string(),
            passed: true,
            checks: Vec::new(),
            data: json!({}),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn record(&mut self, key: &str, value: impl Serialize) {
        self.data[key] = serde_json::to_value(value).expect("report data serializes");
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("scenario {}: {}\n", self.scenario, verdict(self.passed));
        for c in &self.checks {
            let _ = writeln!(s, "  [{}] {}: {}", verdict(c.passed), c.name, c.detail);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Shipped scenarios and what each exercises.
pub const SCENARIOS: &[(&str, &str)] = &[
    (
        "f2-baseline",
        "F2 cone automaton: 5 states, growth 3, counts 4*3^(n-1), cumulative series",
    ),
    (
        "z2-shortlex",
        "Z^2: 9-state cone automaton, shortlex counts 2n^2+2n+1 matching the ball",
    ),
    (
        "z2-equality",
        "Z^2 equality recognizer pair counts against brute-force pairs",
    ),
    (
        "z2xz-nonregular-witness",
        "Z^2*Z, H=<ab>: a^n b^n escapes every L_{H,k}; escalation stays inconclusive",
    ),
    ("f2-growth-gap", "F2: J_<a> < J_<a> + b < F2 growth rates"),
    (
        "f2-finite-index",
        "F2: <a> and <a^2> have comparable counts and equal growth",
    ),
    ("f2-pump", "F2: pumping (ab)^5 through the cone automaton"),
];

pub fn run_scenario(name: &str, config: &RunConfig) -> Result<ScenarioReport> {
    match name {
        "f2-baseline" => f2_baseline(config),
        "z2-shortlex" => z2_shortlex(config),
        "z2-equality" => z2_equality(config),
        "z2xz-nonregular-witness" => z2xz_witness(config),
        "f2-growth-gap" => f2_growth_gap(config),
        "f2-finite-index" => f2_finite_index(config),
        "f2-pump" => f2_pump(config),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn u64s(v: &[num_bigint::BigUint]) -> Vec<u64> {
    v.iter()
        .map(|x| u64::try_from(x).unwrap_or(u64::MAX))
        .collect()
}

fn bigs(v: &[num_bigint::BigUint]) -> Vec<BigInt> {
    v.iter().map(|x| BigInt::from(x.clone())).collect()
}

fn pf_of(fsa: &Fsa) -> Result<f64> {
    pf_eigenvalue(
        &count_matrix(&fsa.determinize().trim())?,
        DEFAULT_PF_TOLERANCE,
        DEFAULT_PF_ITERATIONS,
    )
}

fn f2_baseline(config: &RunConfig) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("f2-baseline");
    let g = config.load("f2")?;
    let filter = WindowFilter::trivial();
    let auto = config.cone(&g, 1, &filter)?;
    r.check(
        "cone states",
        auto.num_states() == 5,
        format!("{} (expected 5)", auto.num_states()),
    );
    let pf = pf_of(auto.fsa())?;
    r.check(
        "pf eigenvalue",
        (pf - 3.0).abs() <= 1e-9,
        format!("{pf} (expected 3)"),
    );
    let counts = auto.fsa().count_words(12)?;
    let sphere = u64s(&counts.sphere);
    let expected: Vec<u64> = (1..=12).map(|n| 4 * 3u64.pow(n - 1)).collect();
    r.check(
        "sphere counts",
        sphere[1..] == expected[..],
        "4*3^(n-1) for 1 <= n <= 12",
    );
    let s = auto.num_states();
    let long = auto
        .fsa()
        .count_words(2 * (s + 1) + 1 + crate::growth::HELD_OUT_TERMS)?;
    let series = rational_series(&bigs(&long.cumulative), s + 1)?;
    r.check(
        "cumulative series",
        series.to_string() == "(1 + x) / (1 - 4x + 3x^2)",
        series.to_string(),
    );
    let v = validate_automaton(&auto, &g.model, &filter, config.validation_depth)?;
    r.check("oracle agreement", v.passed(), validation_detail(&v));
    r.record("states", auto.num_states());
    r.record("pf_eigenvalue", pf);
    r.record("sphere_counts", sphere);
    r.record("cumulative_series", series.to_string());
    Ok(r)
}

fn validation_detail(v: &ValidationReport) -> String {
    match v.mismatches.first() {
        None => format!("{} words up to length {}", v.machine_words, v.depth),
        Some(m) => format!(
            "{} mismatches up to length {}, first `{}` (machine {}, oracle {})",
            v.mismatch_count, v.depth, m.word, m.in_machine, m.in_oracle
        ),
    }
}

fn z2_shortlex(config: &RunConfig) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("z2-shortlex");
    let g = config.load("z2")?;
    let filter = WindowFilter::trivial();
    let auto = config.cone(&g, 1, &filter)?;
    r.check(
        "cone states",
        auto.num_states() == 9,
        format!("{} (expected 9)", auto.num_states()),
    );
    let opts = ShortlexOptions {
        depth_budget: config.budgets.depth,
        max_escalations: config.max_escalations,
        ..ShortlexOptions::default()
    };
    let sl = unique_rep_language(&g.model, &filter, 1, &g.order, &opts)?;
    let n = 10;
    let counts = u64s(&sl.fsa.count_words(n)?.cumulative);
    let formula: Vec<u64> = (0..=n as u64).map(|k| 2 * k * k + 2 * k + 1).collect();
    r.check("counts 2n^2+2n+1", counts == formula, format!("{counts:?}"));
    let ball = enumerate_ball(&g.model, n)?;
    let by_ball: Vec<u64> = ball
        .sphere_sizes()
        .iter()
        .scan(0u64, |t, &c| {
            *t += c as u64;
            Some(*t)
        })
        .collect();
    r.check(
        "counts match the ball",
        counts == by_ball,
        format!("|B(e, {n})| = {}", ball.len()),
    );
    let pf = pf_of(&sl.fsa)?;
    r.check(
        "pf eigenvalue",
        (pf - 1.0).abs() <= 1e-6,
        format!("{pf} (expected 1)"),
    );
    r.record("cone_states", auto.num_states());
    r.record("shortlex_states", sl.fsa.num_states());
    r.record("fellow_travel_bound", sl.r);
    r.record("cumulative_counts", counts);
    Ok(r)
}

/// `Σ (number of geodesics to x)²` over elements `x` of each length.
pub fn brute_force_pair_counts(model: &crate::group::GroupModel, n: usize) -> Result<Vec<u64>> {
    let mut mult = std::collections::BTreeMap::<crate::word::Word, u64>::new();
    for w in enumerate_geodesic_words(model, n, None)? {
        *mult.entry(model.normal_form(&w)?).or_default() += 1;
    }
    let mut out = vec![0u64; n + 1];
    for (x, c) in mult {
        out[x.len()] += c * c;
    }
    Ok(out)
}

fn z2_equality(config: &RunConfig) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("z2-equality");
    let g = config.load("z2")?;
    let auto = config.cone(&g, 1, &WindowFilter::trivial())?;
    let depth = 6;
    let (q, bound) = auto_equality_recognizer(auto.fsa(), &g.model, 0, depth, 24)?;
    let machine = u64s(&q.fsa().determinize().count_words(depth)?.sphere);
    let brute = brute_force_pair_counts(&g.model, depth)?;
    r.check(
        "pair counts at lengths 2 and 3",
        machine[2] == 20 && machine[3] == 76,
        format!("{} and {} (expected 20 and 76)", machine[2], machine[3]),
    );
    r.check(
        "pair counts match brute force",
        machine == brute,
        format!("{machine:?} to length {depth}"),
    );
    r.record("fellow_travel_bound", bound);
    r.record("recognizer_states", q.fsa().num_states());
    r.record("pair_counts", machine);
    Ok(r)
}

fn z2xz_witness(config: &RunConfig) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("z2xz-nonregular-witness");
    let g = config.load("z2*z")?;
    let h = g.subgroup("ab")?;
    let filter = WindowFilter::trivial();
    let al = g.model.alphabet();
    let cap = 4;
    let mut family = Vec::new();
    for k in 0..=cap {
        let n = k + 2;
        let w = al.parse_word(&format!(
            "{} {}",
            vec!["a"; n].join(" "),
            vec!["b"; n].join(" ")
        ))?;
        let lhk = subgroup_word_automaton(&g.model, h, k)?;
        let rejected = !lhk.accepts(&w)?;
        let in_lh = g.model.is_geodesic(&w)? && h.contains(&g.model.normal_form(&w)?);
        r.check(
            &format!("k = {k}"),
            rejected && in_lh,
            format!("a^{n} b^{n}: machine rejects {rejected}, oracle in L_H {in_lh}"),
        );
        family.push(
            json!({ "k": k, "word": al.format_word(&w), "rejected": rejected, "in_oracle": in_lh }),
        );
    }
    let esc = escalate_k(
        &g.model,
        h,
        &filter,
        1,
        0,
        cap,
        default_validation_depth(cap),
    )?;
    r.check(
        "escalation",
        matches!(esc, KEscalation::CapHit { .. }),
        esc.label(),
    );
    r.record("rejection_family", family);
    r.record("escalation", &esc);
    Ok(r)
}

fn subgroup_machine(g: &LoadedGroup, name: &str) -> Result<Fsa> {
    unique_rep_subgroup_language(
        &g.model,
        g.subgroup(name)?,
        1,
        &WindowFilter::trivial(),
        1,
        &g.order,
    )
}

fn f2_growth_gap(config: &RunConfig) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("f2-growth-gap");
    let g = config.load("f2")?;
    let j = subgroup_machine(&g, "a")?;
    let b = g.model.alphabet().parse_word("b")?;
    let ext = extend_with_free_factor(&j, &b)?;
    let full = config.cone(&g, 1, &WindowFilter::trivial())?;
    let lam = growth_rate(&j, DEFAULT_PF_TOLERANCE)?;
    let lam_ext = growth_rate(&ext, DEFAULT_PF_TOLERANCE)?;
    let lam_full = growth_rate(full.fsa(), DEFAULT_PF_TOLERANCE)?;
    r.check(
        "lambda(J_<a>)",
        (lam - 1.0).abs() <= 1e-6,
        format!("{lam} (expected 1)"),
    );
    r.check(
        "lambda(J_<a> + b)",
        (1.1..=3.0).contains(&lam_ext),
        format!("{lam_ext} (expected in [1.1, 3])"),
    );
    let gap = strict_gap_check(&j, &ext, 0.1)?;
    r.check(
        "strict gap at margin 0.1",
        gap.passed,
        format!("{} + 0.1 <= {}", gap.sub, gap.sup),
    );
    r.check(
        "increasing order",
        lam < lam_ext && lam_ext <= lam_full,
        format!("{lam} < {lam_ext} <= {lam_full}"),
    );
    r.record("lambda", [lam, lam_ext, lam_full]);
    Ok(r)
}

fn f2_finite_index(config: &RunConfig) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("f2-finite-index");
    let g = config.load("f2")?;
    let j = subgroup_machine(&g, "a")?;
    let j2 = subgroup_machine(&g, "a2")?;
    let n = 30;
    let f = u64s(&j.count_words(n + 2)?.cumulative);
    let f2 = u64s(&j2.count_words(n + 2)?.cumulative);
    let sandwich = (0..=n).all(|i| f2[i] <= f[i] && f[i] <= 2 * f2[i + 2]);
    r.check(
        "f_<a^2>(n) <= f_<a>(n) <= 2 f_<a^2>(n+2)",
        sandwich,
        format!("n <= {n}"),
    );
    let (l1, l2) = (pf_of(&j)?.max(1.0), pf_of(&j2)?.max(1.0));
    r.check(
        "equal growth rates",
        (l1 - 1.0).abs() <= 1e-6 && (l2 - 1.0).abs() <= 1e-6,
        format!("{l1} and {l2}"),
    );
    r.record("counts_a", &f[..=n]);
    r.record("counts_a2", &f2[..=n]);
    Ok(r)
}

fn f2_pump(config: &RunConfig) -> Result<ScenarioReport> {
    let mut r = ScenarioReport::new("f2-pump");
    let g = config.load("f2")?;
    let auto = config.cone(&g, 1, &WindowFilter::trivial())?;
    let al = g.model.alphabet();
    let prefix = al.parse_word("a b a b a b a b a b")?;
    let d = pump_decomposition(auto.fsa(), &prefix, 1)?;
    let trace = auto.fsa().trace(&prefix).unwrap_or_default();
    let split_ok = d.u.concat(&d.v).concat(&d.q) == prefix
        && !d.v.is_empty()
        && !d.u.is_empty()
        && trace.get(d.u.len()) == trace.get(d.u.len() + d.v.len());
    r.check(
        "repeated-state split",
        split_ok,
        format!(
            "u = `{}`, v = `{}`, q = `{}`",
            al.format_word(&d.u),
            al.format_word(&d.v),
            al.format_word(&d.q)
        ),
    );
    let mut bad = None;
    for n in 0..=50 {
        let w = periodic_word(&d, n);
        if !(auto.accepts(&w)? && g.model.is_geodesic(&w)?) {
            bad = Some(n);
            break;
        }
    }
    r.check(
        "u v^n accepted and geodesic",
        bad.is_none(),
        bad.map_or_else(|| "n <= 50".to_string(), |n| format!("fails at n = {n}")),
    );
    let violation = check_linear_power_growth(&g.model, &d, 50)?;
    r.check(
        "|g^n| >= n|v| - 2|u|",
        violation.is_none(),
        violation.map_or_else(|| "n <= 50".to_string(), |n| format!("fails at n = {n}")),
    );
    r.record(
        "decomposition",
        json!({
            "u": al.format_word(&d.u),
            "v": al.format_word(&d.v),
            "q": al.format_word(&d.q),
            "state": d.state,
        }),
    );
    r.record(
        "candidate",
        al.format_word(&crate::pump::morse_element_candidate(&g.model, &d)?),
    );
    Ok(r)
}

/// Outcome of one triple of the oracle matrix. Build errors are captured
/// rather than propagated so one bad triple does not hide the others.
#[derive(Debug, Clone, Serialize)]
pub struct TripleReport {
    pub group: String,
    pub filter: String,
    pub m: usize,
    pub states: Option<usize>,
    pub raw_classes: Option<usize>,
    pub validation: Option<ValidationReport>,
    /// Growth series of sphere counts, order at most the state count.
    pub series: Option<String>,
    pub error: Option<String>,
    pub error_code: Option<i32>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixReport {
    pub validation_depth: usize,
    pub passed: bool,
    pub triples: Vec<TripleReport>,
}

impl MatrixReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "oracle matrix (words up to length {}): {}\n",
            self.validation_depth,
            verdict(self.passed)
        );
        for t in &self.triples {
            let _ = write!(
                s,
                "  [{}] {} {} m={}: ",
                verdict(t.passed),
                t.group,
                t.filter,
                t.m
            );
            match (&t.error, &t.validation) {
                (Some(e), _) => {
                    let _ = writeln!(s, "{e}");
                }
                (None, Some(v)) => {
                    let _ = writeln!(
                        s,
                        "{} states ({} raw), {}, series {}",
                        t.states.unwrap_or(0),
                        t.raw_classes.unwrap_or(0),
                        validation_detail(v),
                        t.series.as_deref().unwrap_or("-")
                    );
                }
                (None, None) => {
                    let _ = writeln!(s);
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn run_triple(config: &RunConfig, t: &Triple) -> TripleReport {
    let m = config.m_override.unwrap_or(t.m);
    let mut out = TripleReport {
        group: t.group.clone(),
        filter: t.filter.to_string(),
        m,
        states: None,
        raw_classes: None,
        validation: None,
        series: None,
        error: None,
        error_code: None,
        passed: false,
    };
    let result = (|| -> Result<()> {
        let g = config.load(&t.group)?;
        let filter = WindowFilter::new(t.filter, &g.model);
        let auto = config.cone(&g, m, &filter)?;
        out.states = Some(auto.num_states());
        out.raw_classes = Some(auto.raw_classes());
        let v = validate_automaton(&auto, &g.model, &filter, config.validation_depth)?;
        let s = auto.num_states();
        let counts = auto
            .fsa()
            .count_words(2 * s + crate::growth::HELD_OUT_TERMS)?;
        let series = rational_series(&bigs(&counts.sphere), s)?;
        out.series = Some(series.to_string());
        out.passed = v.passed();
        out.validation = Some(v);
        Ok(())
    })();
    if let Err(e) = result {
        out.error_code = Some(e.exit_code());
        out.error = Some(e.to_string());
        out.passed = false;
    }
    out
}

/// Builds, validates and fits a growth series for every configured triple.
/// Triples run in parallel; the report keeps configuration order.
pub fn validate_all(config: &RunConfig) -> Result<MatrixReport> {
    config.check()?;
    let triples: Vec<TripleReport> = config
        .triples
        .par_iter()
        .map(|t| run_triple(config, t))
        .collect();
    Ok(MatrixReport {
        validation_depth: config.validation_depth,
        passed: triples.iter().all(|t| t.passed),
        triples,
    })
}

/// Parses a comma- or space-separated symbol order against a group's alphabet.
pub fn parse_order(g: &LoadedGroup, text: Option<&str>) -> Result<SymbolOrder> {
    match text {
        None => Ok(g.order.clone()),
        Some(t) => {
            let names: Vec<&str> = t.split([',', ' ']).filter(|s| !s.is_empty()).collect();
            SymbolOrder::from_names(g.model.alphabet(), &names)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario() {
        let e = run_scenario("nope", &RunConfig::default()).unwrap_err();
        assert_eq!(e, Error::UnknownScenario("nope".into()));
    }

    #[test]
    fn depth_over_budget_names_the_stage() {
        let config = RunConfig {
            validation_depth: 50,
            ..RunConfig::default()
        };
        match validate_all(&config) {
            Err(Error::BudgetExceeded { stage, limit }) => {
                assert_eq!(stage, "validation depth");
                assert_eq!(limit, 40);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_m_surfaces_witness_words() {
        let config = RunConfig {
            validation_depth: 4,
            m_override: Some(0),
            triples: vec![Triple {
                group: "z2".into(),
                filter: FilterSpec::Trivial,
                m: 2,
            }],
            ..RunConfig::default()
        };
        let report = validate_all(&config).unwrap();
        assert!(!report.passed);
        let t = &report.triples[0];
        assert_eq!(
            t.error_code,
            Some(
                Error::InconsistentLocality {
                    m: 0,
                    left: String::new(),
                    right: String::new(),
                    letter: String::new(),
                    detail: String::new(),
                }
                .exit_code()
            )
        );
        assert!(t.error.as_deref().unwrap().contains('`'));
    }

    #[test]
    fn reports_are_deterministic() {
        let config = RunConfig::default();
        let a = run_scenario("f2-pump", &config).unwrap();
        let b = run_scenario("f2-pump", &config).unwrap();
        assert!(a.passed);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
    }
}
