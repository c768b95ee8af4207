//! Group models, Cayley-graph balls and the brute-force geodesic oracle.

mod ball;
mod model;
pub mod spec;

pub use ball::{enumerate_ball, enumerate_geodesic_words, geodesics_to, Ball};
pub use model::{GroupModel, DEFAULT_ELEMENT_BUDGET};
pub use spec::{load_group, GroupSpec, LoadedGroup};

use crate::error::Result;

/// Names accepted by [`builtin`].
pub const BUILTIN_GROUPS: &[&str] = &["f2", "z2", "z2*z", "raag-abc", "z-x-f2", "s3"];

const F2: &str = r#"
kind = "free"
generators = ["a", "b"]
[[subgroups]]
name = "a"
kind = "cyclic"
words = ["a"]
[[subgroups]]
name = "a2"
kind = "cyclic"
words = ["a a"]
[[subgroups]]
name = "ab"
kind = "cyclic"
words = ["a b"]
[[subgroups]]
name = "b"
kind = "cyclic"
words = ["b"]
[[subgroups]]
name = "trivial"
kind = "trivial"
[[subgroups]]
name = "whole"
kind = "whole"
"#;

const Z2: &str = r#"
kind = "abelian"
generators = ["x", "y"]
[[subgroups]]
name = "x"
kind = "cyclic"
words = ["x"]
[[subgroups]]
name = "trivial"
kind = "trivial"
[[subgroups]]
name = "whole"
kind = "whole"
"#;

const Z2_FREE_Z: &str = r#"
kind = "free_product"
[[factors]]
kind = "abelian"
generators = ["a", "b"]
[[factors]]
kind = "free"
generators = ["c"]
[[subgroups]]
name = "ab"
kind = "cyclic"
words = ["a b"]
[[subgroups]]
name = "c"
kind = "factor"
generators = ["c"]
[[subgroups]]
name = "flat"
kind = "factor"
generators = ["a", "b"]
"#;

const RAAG_ABC: &str = r#"
kind = "raag"
generators = ["a", "b", "c"]
commute = [["a", "b"]]
[[subgroups]]
name = "ab"
kind = "cyclic"
words = ["a b"]
[[subgroups]]
name = "c"
kind = "factor"
generators = ["c"]
"#;

const Z_X_F2: &str = r#"
kind = "direct_product"
[[factors]]
kind = "free"
generators = ["z"]
[[factors]]
kind = "free"
generators = ["a", "b"]
"#;

// S3 = <s, t> with s = (0 1), t = (1 2); elements listed as permutations
// id, (01), (12), (012), (021), (02).
const S3: &str = r#"
kind = "finite"
table = [
  [0, 1, 2, 3, 4, 5],
  [1, 0, 4, 5, 2, 3],
  [2, 3, 0, 1, 5, 4],
  [3, 2, 5, 4, 0, 1],
  [4, 5, 1, 0, 3, 2],
  [5, 4, 3, 2, 1, 0],
]
generators = [{ name = "s", element = 1 }, { name = "t", element = 2 }]
"#;

/// Built-in groups: `f2` (free group on a, b), `z2` (Z^2 on x, y), `z2*z`
/// (Z^2 * Z on a, b | c, as a free product; aliases `z2z`, `z2xz`),
/// `raag-abc` (the same group as the RAAG <a,b,c | [a,b]>), `z-x-f2`
/// (Z x F2) and `s3` (symmetric group on two transpositions).
pub fn builtin(name: &str) -> Option<Result<LoadedGroup>> {
    let (canonical, text) = match name {
        "f2" => ("f2", F2),
        "z2" => ("z2", Z2),
        "z2*z" | "z2z" | "z2xz" => ("z2*z", Z2_FREE_Z),
        "raag-abc" => ("raag-abc", RAAG_ABC),
        "z-x-f2" => ("z-x-f2", Z_X_F2),
        "s3" => ("s3", S3),
        _ => return None,
    };
    Some(GroupSpec::parse(text).and_then(|s| s.load(canonical)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in BUILTIN_GROUPS {
            let g = builtin(name).unwrap().unwrap();
            assert_eq!(g.name, *name);
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn s3_table_is_a_group_of_order_six() {
        let g = builtin("s3").unwrap().unwrap();
        let ball = enumerate_ball(&g.model, 10).unwrap();
        assert_eq!(ball.len(), 6);
        let w = g.model.alphabet().parse_word("s t s t s t").unwrap();
        assert_eq!(g.model.geodesic_length(&w).unwrap(), 0);
    }
}
