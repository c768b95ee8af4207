use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fsa::Fsa;
use crate::word::Alphabet;

/// Serialized form of an [`Fsa`]. Transition labels are symbol names.
///
/// ```json
/// { "alphabet": ["a", "a^-1"], "inverses": [1, 0], "states": 1,
///   "initial": 0, "accepts": [0], "transitions": [[0, "a", 0]] }
/// ```
///
/// When `inverses` is omitted, `x^-1` is paired with `x` and every other
/// symbol is taken to be its own inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FsaJson {
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<Vec<usize>>,
    pub states: usize,
    pub initial: usize,
    pub accepts: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

fn guess_inverses(names: &[String]) -> Vec<usize> {
    (0..names.len())
        .map(|i| {
            let n = &names[i];
            let partner = match n.strip_suffix("^-1") {
                Some(base) => names.iter().position(|m| m == base),
                None => names.iter().position(|m| *m == format!("{n}^-1")),
            };
            partner.unwrap_or(i)
        })
        .collect()
}

impl FsaJson {
    pub fn from_fsa(f: &Fsa) -> Self {
        let al = f.alphabet();
        FsaJson {
            alphabet: al.names().to_vec(),
            inverses: Some(al.inverse_table()),
            states: f.num_states(),
            initial: f.initial(),
            accepts: f.accept_states().collect(),
            transitions: f
                .transitions()
                .map(|(s, a, t)| (s, al.name(a).to_string(), t))
                .collect(),
        }
    }

    pub fn to_fsa(&self) -> Result<Fsa> {
        let bad = |msg: String| Error::InvalidAutomaton(msg);
        let inverses = self
            .inverses
            .clone()
            .unwrap_or_else(|| guess_inverses(&self.alphabet));
        let al = Alphabet::new(self.alphabet.clone(), inverses)?;
        if self.states == 0 {
            return Err(bad("an automaton needs at least one state".into()));
        }
        if self.initial >= self.states {
            return Err(bad(format!("initial state {} out of range", self.initial)));
        }
        let mut f = Fsa::new(al, self.states, self.initial);
        for &s in &self.accepts {
            if s >= self.states {
                return Err(bad(format!("accept state {s} out of range")));
            }
            f.set_accept(s, true);
        }
        for (s, label, t) in &self.transitions {
            if *s >= self.states || *t >= self.states {
                return Err(bad(format!("transition {s} -{label}-> {t} out of range")));
            }
            let a = f
                .alphabet()
                .names()
                .iter()
                .position(|n| n == label)
                .ok_or_else(|| Error::UnknownSymbol(label.clone()))?;
            f.add_transition(*s, crate::word::Letter(a as u16), *t);
        }
        Ok(f)
    }
}

impl Fsa {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FsaJson::from_fsa(self)).expect("automaton serializes")
    }

    pub fn from_json(text: &str) -> Result<Fsa> {
        let j: FsaJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidAutomaton(e.to_string()))?;
        j.to_fsa()
    }

    /// Graphviz rendering; parallel edges between two states are merged into
    /// one edge with a comma-separated label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  start [shape=point];");
        for s in 0..self.num_states() {
            let shape = if self.is_accept(s) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {s} [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> {};", self.initial());
        let mut edges: Vec<(usize, usize, String)> = Vec::new();
        for (s, a, t) in self.transitions() {
            let label = self.alphabet().name(a);
            match edges.iter_mut().find(|e| e.0 == s && e.1 == t) {
                Some(e) => {
                    e.2.push_str(", ");
                    e.2.push_str(label);
                }
                None => edges.push((s, t, label.to_string())),
            }
        }
        for (s, t, label) in edges {
            let _ = writeln!(out, "  {s} -> {t} [label=\"{}\"];", label.replace('"', "'"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::tests::even_a;

    #[test]
    fn json_round_trip() {
        let f = even_a();
        let back = Fsa::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn inverses_default_from_names() {
        let text = r#"{"alphabet": ["x", "x^-1", "s"], "states": 1, "initial": 0,
                       "accepts": [0], "transitions": [[0, "x", 0], [0, "s", 0]]}"#;
        let f = Fsa::from_json(text).unwrap();
        let al = f.alphabet();
        assert_eq!(al.inverse_table(), vec![1, 0, 2]);
        assert!(f.accepts(&al.parse_word("x s x").unwrap()).unwrap());
    }

    #[test]
    fn malformed_input_is_rejected() {
        let bad_state = r#"{"alphabet": ["a"], "states": 1, "initial": 0,
                            "accepts": [3], "transitions": []}"#;
        assert!(matches!(
            Fsa::from_json(bad_state),
            Err(Error::InvalidAutomaton(_))
        ));
        let bad_label = r#"{"alphabet": ["a"], "states": 1, "initial": 0,
                            "accepts": [], "transitions": [[0, "q", 0]]}"#;
        assert!(matches!(
            Fsa::from_json(bad_label),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(Fsa::from_json("{").is_err());
    }

    #[test]
    fn dot_merges_parallel_edges() {
        let mut f = Fsa::new(Alphabet::from_generators(&["a"]).unwrap(), 1, 0);
        f.set_accept(0, true);
        f.add_transition(0, crate::word::Letter(0), 0);
        f.add_transition(0, crate::word::Letter(1), 0);
        let dot = f.to_dot("g");
        assert!(dot.contains("0 -> 0 [label=\"a, a^-1\"]"));
        assert!(dot.contains("doublecircle"));
    }
}
