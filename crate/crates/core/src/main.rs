use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geolang::cone::{
    build_with_budget, build_with_escalation, validate_automaton, FilterSpec, WindowFilter,
};
use geolang::fsa::Fsa;
use geolang::group::{load_group, LoadedGroup, DEFAULT_ELEMENT_BUDGET};
use geolang::growth::{extend_with_free_factor, growth_report, strict_gap_check};
use geolang::pump::{check_linear_power_growth, morse_element_candidate, pump_decomposition};
use geolang::scenario::{
    parse_order, run_scenario, validate_all, Budgets, RunConfig, Triple, SCENARIOS,
};
use geolang::shortlex::{unique_rep_language, ShortlexOptions};
use geolang::subgroup::{
    default_validation_depth, escalate_k, stable_language_from, unique_rep_subgroup_language,
    SubgroupOracle,
};
use geolang::{Error, Result};

const EXIT_CODES: &str = "\
Exit codes:
   0  success
   1  a check or scenario expectation failed
   2  bad command line
  10  unknown symbol                 20  no stabilization
  11  budget exceeded                21  eigenvalue did not converge
  12  word not geodesic              22  no linear recurrence found
  13  word rejected by filter        23  empty word
  14  endpoints too far apart        24  prefix too short to pump
  15  alphabet mismatch              25  word not accepted
  16  automaton not deterministic    26  unknown scenario
  17  automaton not trimmed          27  invalid group spec
  18  inconsistent locality          28  invalid automaton
  19  fellow-travel bound too small  29  i/o error

Budgets can also be set with GEOLANG_ELEMENT_BUDGET, GEOLANG_CLASS_BUDGET
and GEOLANG_DEPTH_BUDGET.";

#[derive(Parser)]
#[command(
    name = "geolang",
    version,
    about = "Geodesic languages, cone automata and growth of finitely generated groups"
)]
#[command(after_help = EXIT_CODES)]
struct Cli {
    #[command(flatten)]
    budgets: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Max group elements in one ball enumeration
    #[arg(long, global = true, env = "GEOLANG_ELEMENT_BUDGET", default_value_t = DEFAULT_ELEMENT_BUDGET)]
    element_budget: usize,
    /// Max signature classes in one cone build
    #[arg(long, global = true, env = "GEOLANG_CLASS_BUDGET", default_value_t = geolang::cone::DEFAULT_CLASS_BUDGET)]
    class_budget: usize,
    /// Max word length explored or validated
    #[arg(
        long,
        global = true,
        env = "GEOLANG_DEPTH_BUDGET",
        default_value_t = 40
    )]
    depth_budget: usize,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            elements: self.element_budget,
            classes: self.class_budget,
            depth: self.depth_budget,
        }
    }
}

#[derive(Args, Clone)]
struct Machine {
    /// Built-in group name (f2, z2, z2*z, raag-abc, z-x-f2, s3) or path to a TOML spec
    #[arg(long, short, default_value = "f2")]
    group: String,
    /// trivial, syllable:S or commuting:S
    #[arg(long, default_value = "trivial")]
    filter: FilterSpec,
    /// Locality radius of cone signatures
    #[arg(long, short, default_value_t = 1)]
    m: usize,
}

#[derive(Args)]
struct Output {
    /// Export the resulting automaton
    #[arg(long, value_enum)]
    export: Option<Format>,
    /// Where to write the export (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the report as JSON to this file
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cone-type automaton of the filtered geodesic language
    BuildCone {
        #[command(flatten)]
        machine: Machine,
        /// Raise m up to this many times on inconsistency
        #[arg(long, default_value_t = 0)]
        escalate: usize,
        /// Compare with brute-force enumeration up to this length
        #[arg(long)]
        validate: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Build the short-lex unique-representative language
    Shortlex {
        #[command(flatten)]
        machine: Machine,
        /// Symbol order, e.g. "a,a^-1,b,b^-1" (defaults to the group's)
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 4)]
        r_hint: usize,
        #[arg(long, default_value_t = 24)]
        max_r: usize,
        #[arg(long, default_value_t = 4)]
        check_depth: usize,
        /// Report word counts up to this length
        #[arg(long, default_value_t = 10)]
        counts: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Build the subgroup language L_{H,k} restricted to the cone language
    Sublang {
        #[command(flatten)]
        machine: Machine,
        #[command(flatten)]
        subgroup: SubgroupArg,
        #[arg(long, short, default_value_t = 1)]
        k: usize,
        /// Keep only short-lex least representatives
        #[arg(long)]
        unique: bool,
        /// Escalate k up to this cap against the brute-force language
        #[arg(long)]
        cap: Option<usize>,
        /// Validation length for --cap (default 2*cap+2)
        #[arg(long)]
        depth: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Word counts, growth rate and growth series of a machine
    Growth {
        #[command(flatten)]
        machine: Machine,
        /// Read the automaton from a JSON file instead of building a cone
        #[arg(long)]
        fsa: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        terms: usize,
        /// Fit rational growth series
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare the growth of J_H with J_H extended by a free factor word
    Gap {
        #[command(flatten)]
        machine: Machine,
        #[command(flatten)]
        subgroup: SubgroupArg,
        #[arg(long, short, default_value_t = 1)]
        k: usize,
        /// Word spelled by the added loop
        #[arg(long, short)]
        word: String,
        #[arg(long, default_value_t = 0.1)]
        margin: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Pump an accepted prefix through the cone automaton
    Pump {
        #[command(flatten)]
        machine: Machine,
        /// Space-separated accepted word
        #[arg(long)]
        prefix: String,
        /// Minimum length of u
        #[arg(long, short, default_value_t = 1)]
        i: usize,
        /// Check |g^n| >= n|v| - 2|u| up to this n
        #[arg(long, default_value_t = 50)]
        powers: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run a named end-to-end scenario (or all of them)
    Scenario {
        /// Scenario name; omit with --list or --all
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        all: bool,
        /// Write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Cross-check machines against brute force over a matrix of groups
    Validate {
        /// Validation length
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Use this m for every triple
        #[arg(long)]
        m: Option<usize>,
        /// "group,filter,m"; repeatable (defaults to the shipped matrix)
        #[arg(long = "triple")]
        triples: Vec<String>,
        /// Write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct SubgroupArg {
    /// Named subgroup of the group spec
    #[arg(long, short = 'H', conflicts_with = "generator")]
    subgroup: Option<String>,
    /// Cyclic subgroup generated by this word
    #[arg(long)]
    generator: Option<String>,
}

impl SubgroupArg {
    fn resolve(&self, g: &LoadedGroup) -> Result<SubgroupOracle> {
        match (&self.subgroup, &self.generator) {
            (Some(name), _) => g.subgroup(name).cloned(),
            (None, Some(w)) => SubgroupOracle::cyclic(&g.model, &g.model.alphabet().parse_word(w)?),
            (None, None) => Err(Error::InvalidSpec("give --subgroup or --generator".into())),
        }
    }
}

/// A finished command: human-readable text, the JSON report, and whether
/// every check it made passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            passed: true,
        }
    }
}

fn load(name: &str, b: &Budgets) -> Result<LoadedGroup> {
    let mut g = load_group(name)?;
    g.model = g.model.with_budget(b.elements);
    Ok(g)
}

fn export(fsa: &Fsa, name: &str, output: &Output) -> Result<bool> {
    let Some(format) = output.export else {
        return Ok(false);
    };
    let text = match format {
        Format::Dot => fsa.to_dot(name),
        Format::Json => fsa.to_json(),
    };
    match &output.out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            if let Err(e) = writeln!(std::io::stdout(), "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(output.out.is_none())
}

/// Prints the outcome, to stderr when stdout carries an export.
fn finish(out: Outcome, report: Option<&PathBuf>, stdout_taken: bool) -> Result<bool> {
    if stdout_taken {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    if let Some(p) = report {
        std::fs::write(
            p,
            serde_json::to_string_pretty(&out.json).expect("report serializes"),
        )?;
    }
    Ok(out.passed)
}

fn run(cli: Cli) -> Result<bool> {
    let b = cli.budgets.budgets();
    match cli.command {
        Command::BuildCone {
            machine,
            escalate,
            validate,
            output,
        } => {
            let g = load(&machine.group, &b)?;
            let filter = WindowFilter::new(machine.filter, &g.model);
            let (auto, steps) = if escalate > 0 {
                build_with_escalation(&g.model, machine.m, &filter, b.depth, escalate, None)?
            } else {
                (
                    build_with_budget(&g.model, machine.m, &filter, b.depth, b.classes)?,
                    Vec::new(),
                )
            };
            let mut text = format!(
                "{} {} m={}: {} states ({} signature classes)\n",
                g.name,
                machine.filter,
                auto.m(),
                auto.num_states(),
                auto.raw_classes()
            );
            for s in &steps {
                text += &format!("  m={}: {}\n", s.m, s.outcome);
            }
            let mut json = json!({
                "group": g.name,
                "filter": machine.filter.to_string(),
                "m": auto.m(),
                "states": auto.num_states(),
                "raw_classes": auto.raw_classes(),
                "escalation": steps,
            });
            let mut passed = true;
            if let Some(n) = validate {
                if n > b.depth {
                    return Err(Error::BudgetExceeded {
                        stage: "validation depth".into(),
                        limit: b.depth,
                    });
                }
                let v = validate_automaton(&auto, &g.model, &filter, n)?;
                text += &format!(
                    "validation to length {n}: {} ({} machine words, {} oracle words, {} mismatches)\n",
                    if v.passed() { "PASS" } else { "FAIL" },
                    v.machine_words,
                    v.oracle_words,
                    v.mismatch_count
                );
                for m in &v.mismatches {
                    text += &format!(
                        "  `{}` machine {} oracle {}\n",
                        m.word, m.in_machine, m.in_oracle
                    );
                }
                passed = v.passed();
                json["validation"] = serde_json::to_value(&v).expect("serializes");
            }
            let taken = export(auto.fsa(), "cone", &output)?;
            finish(
                Outcome { text, json, passed },
                output.report.as_ref(),
                taken,
            )
        }
        Command::Shortlex {
            machine,
            order,
            r_hint,
            max_r,
            check_depth,
            counts,
            output,
        } => {
            let g = load(&machine.group, &b)?;
            let filter = WindowFilter::new(machine.filter, &g.model);
            let order = parse_order(&g, order.as_deref())?;
            let opts = ShortlexOptions {
                r_hint,
                max_r,
                check_depth,
                depth_budget: b.depth,
                ..ShortlexOptions::default()
            };
            let sl = unique_rep_language(&g.model, &filter, machine.m, &order, &opts)?;
            let c = sl.fsa.count_words(counts)?;
            let cumulative: Vec<String> = c.cumulative.iter().map(ToString::to_string).collect();
            let text = format!(
                "{} {}: cone {} states, r = {}, equality recognizer {} states, shortlex {} states\n\
                 cumulative counts: {}\n",
                g.name,
                machine.filter,
                sl.cone.num_states(),
                sl.r,
                sl.recognizer_states,
                sl.fsa.num_states(),
                cumulative.join(" ")
            );
            let json = json!({
                "group": g.name,
                "filter": machine.filter.to_string(),
                "m": sl.cone.m(),
                "cone_states": sl.cone.num_states(),
                "fellow_travel_bound": sl.r,
                "recognizer_states": sl.recognizer_states,
                "states": sl.fsa.num_states(),
                "counts": c,
            });
            let taken = export(&sl.fsa, "shortlex", &output)?;
            finish(Outcome::ok(text, json), output.report.as_ref(), taken)
        }
        Command::Sublang {
            machine,
            subgroup,
            k,
            unique,
            cap,
            depth,
            output,
        } => {
            let g = load(&machine.group, &b)?;
            let filter = WindowFilter::new(machine.filter, &g.model);
            let h = subgroup.resolve(&g)?;
            if let Some(cap) = cap {
                let n = depth.unwrap_or_else(|| default_validation_depth(cap));
                let esc = escalate_k(&g.model, &h, &filter, machine.m, k, cap, n)?;
                let mut text = format!("{} H = {}: {}\n", g.name, h.describe(), esc.label());
                for a in esc.attempts() {
                    text += &format!(
                        "  k={}: {} states, {} mismatches{}\n",
                        a.k,
                        a.states,
                        a.mismatches,
                        a.witness
                            .as_ref()
                            .map(|w| format!(", first `{w}`"))
                            .unwrap_or_default()
                    );
                }
                let json = json!({ "group": g.name, "subgroup": h.describe(), "depth": n, "escalation": esc });
                return finish(Outcome::ok(text, json), output.report.as_ref(), false);
            }
            let fsa = if unique {
                unique_rep_subgroup_language(&g.model, &h, k, &filter, machine.m, &g.order)?
            } else {
                let cone = build_with_budget(&g.model, machine.m, &filter, b.depth, b.classes)?;
                stable_language_from(cone.fsa(), &g.model, &h, k)?
            };
            let text = format!(
                "{} H = {} k={}: {} states\n",
                g.name,
                h.describe(),
                k,
                fsa.num_states()
            );
            let json = json!({ "group": g.name, "subgroup": h.describe(), "k": k, "unique": unique, "states": fsa.num_states() });
            let taken = export(&fsa, "subgroup", &output)?;
            finish(Outcome::ok(text, json), output.report.as_ref(), taken)
        }
        Command::Growth {
            machine,
            fsa,
            terms,
            series,
            output,
        } => {
            let f = match fsa {
                Some(p) => Fsa::from_json(&std::fs::read_to_string(&p)?)?,
                None => {
                    let g = load(&machine.group, &b)?;
                    let filter = WindowFilter::new(machine.filter, &g.model);
                    build_with_budget(&g.model, machine.m, &filter, b.depth, b.classes)?.into_fsa()
                }
            };
            let r = growth_report(&f, terms, series)?;
            let sphere: Vec<String> = r
                .counts
                .sphere
                .iter()
                .take(terms + 1)
                .map(ToString::to_string)
                .collect();
            let mut text = format!(
                "{} states, pf eigenvalue {}, growth rate {}\nsphere counts: {}\n",
                r.states,
                r.pf_eigenvalue,
                r.growth_rate,
                sphere.join(" ")
            );
            if let (Some(s), Some(c)) = (&r.sphere_series, &r.cumulative_series) {
                text += &format!("sphere series: {s}\ncumulative series: {c}\n");
            }
            let json = serde_json::to_value(&r).expect("serializes");
            let taken = export(&f.determinize().trim(), "growth", &output)?;
            finish(Outcome::ok(text, json), output.report.as_ref(), taken)
        }
        Command::Gap {
            machine,
            subgroup,
            k,
            word,
            margin,
            output,
        } => {
            let g = load(&machine.group, &b)?;
            let filter = WindowFilter::new(machine.filter, &g.model);
            let h = subgroup.resolve(&g)?;
            let j = unique_rep_subgroup_language(&g.model, &h, k, &filter, machine.m, &g.order)?;
            let w = g.model.alphabet().parse_word(&word)?;
            let ext = extend_with_free_factor(&j, &w)?;
            let v = strict_gap_check(&j, &ext, margin)?;
            let text = format!(
                "growth of J_H {} vs extended by `{}` {}: {} at margin {}\n",
                v.sub,
                word,
                v.sup,
                if v.passed { "PASS" } else { "FAIL" },
                margin
            );
            let json = json!({ "group": g.name, "subgroup": h.describe(), "word": word, "gap": v });
            let taken = export(&ext, "extended", &output)?;
            let passed = v.passed;
            finish(
                Outcome { text, json, passed },
                output.report.as_ref(),
                taken,
            )
        }
        Command::Pump {
            machine,
            prefix,
            i,
            powers,
            output,
        } => {
            let g = load(&machine.group, &b)?;
            let filter = WindowFilter::new(machine.filter, &g.model);
            let auto = build_with_budget(&g.model, machine.m, &filter, b.depth, b.classes)?;
            let al = g.model.alphabet();
            let d = pump_decomposition(auto.fsa(), &al.parse_word(&prefix)?, i)?;
            let cand = morse_element_candidate(&g.model, &d)?;
            let violation = check_linear_power_growth(&g.model, &d, powers)?;
            let text = format!(
                "u = `{}`, v = `{}`, q = `{}` (state {})\ng = u v u^-1 = `{}`\n|g^n| >= n|v| - 2|u| for n <= {}: {}\n",
                al.format_word(&d.u),
                al.format_word(&d.v),
                al.format_word(&d.q),
                d.state,
                al.format_word(&cand),
                powers,
                match violation {
                    None => "PASS".to_string(),
                    Some(n) => format!("FAIL at n = {n}"),
                }
            );
            let json = json!({
                "u": al.format_word(&d.u),
                "v": al.format_word(&d.v),
                "q": al.format_word(&d.q),
                "state": d.state,
                "candidate": al.format_word(&cand),
                "violation": violation,
            });
            let passed = violation.is_none();
            finish(
                Outcome { text, json, passed },
                output.report.as_ref(),
                false,
            )
        }
        Command::Scenario {
            name,
            list,
            all,
            report,
        } => {
            if list {
                for (n, desc) in SCENARIOS {
                    println!("{n:<26}{desc}");
                }
                return Ok(true);
            }
            let config = RunConfig {
                budgets: b,
                ..RunConfig::default()
            };
            let names: Vec<String> = match (all, name) {
                (true, _) => SCENARIOS.iter().map(|(n, _)| n.to_string()).collect(),
                (false, Some(n)) => vec![n],
                (false, None) => return Err(Error::UnknownScenario(String::new())),
            };
            let mut reports = Vec::new();
            let mut passed = true;
            for n in &names {
                let r = run_scenario(n, &config)?;
                print!("{}", r.to_text());
                passed &= r.passed;
                reports.push(r);
            }
            if let Some(p) = report {
                let body = if reports.len() == 1 {
                    reports[0].to_json()
                } else {
                    serde_json::to_string_pretty(&reports).expect("serializes")
                };
                std::fs::write(p, body)?;
            }
            Ok(passed)
        }
        Command::Validate {
            depth,
            m,
            triples,
            report,
        } => {
            let mut config = RunConfig {
                budgets: b,
                validation_depth: depth,
                m_override: m,
                ..RunConfig::default()
            };
            if !triples.is_empty() {
                config.triples = triples
                    .iter()
                    .map(|t| parse_triple(t))
                    .collect::<Result<_>>()?;
            }
            let r = validate_all(&config)?;
            print!("{}", r.to_text());
            if let Some(p) = report {
                std::fs::write(p, r.to_json())?;
            }
            Ok(r.passed)
        }
    }
}

fn parse_triple(s: &str) -> Result<Triple> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [group, filter, m] = parts[..] else {
        return Err(Error::InvalidSpec(format!(
            "triple `{s}` is not group,filter,m"
        )));
    };
    Ok(Triple {
        group: group.to_string(),
        filter: filter.parse()?,
        m: m.parse()
            .map_err(|_| Error::InvalidSpec(format!("bad m in `{s}`")))?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
