use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fsa::Fsa;

pub const DEFAULT_PF_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_PF_ITERATIONS: usize = 100_000;

/// Square nonnegative integer matrix indexed by automaton states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountMatrix {
    pub entries: Vec<Vec<u64>>,
}

fn check_input(fsa: &Fsa) -> Result<()> {
    if !fsa.is_deterministic() {
        return Err(Error::NondeterministicInput);
    }
    if !fsa.is_trimmed() {
        return Err(Error::NotTrimmed);
    }
    Ok(())
}

/// Entry `(i, j)` is the number of labeled transitions from `i` to `j`.
pub fn count_matrix(fsa: &Fsa) -> Result<CountMatrix> {
    check_input(fsa)?;
    let n = fsa.num_states();
    let mut entries = vec![vec![0u64; n]; n];
    for (s, _, t) in fsa.transitions() {
        entries[s][t] += 1;
    }
    Ok(CountMatrix { entries })
}

/// Entry `(i, j)` is 1 if some transition leads from `i` to `j`.
pub fn adjacency_matrix(fsa: &Fsa) -> Result<CountMatrix> {
    let mut m = count_matrix(fsa)?;
    for row in &mut m.entries {
        for x in row.iter_mut() {
            *x = u64::from(*x > 0);
        }
    }
    Ok(m)
}

impl CountMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    /// `e_initial · Mⁿ · 1_accepts` for `n = 0..=len`.
    pub fn path_counts(&self, initial: usize, accepts: &[bool], len: usize) -> Vec<BigUint> {
        let d = self.dim();
        let mut v = vec![BigUint::zero(); d];
        if d == 0 {
            return vec![BigUint::zero(); len + 1];
        }
        v[initial] = BigUint::from(1u8);
        let mut out = Vec::with_capacity(len + 1);
        for step in 0..=len {
            out.push(
                (0..d)
                    .filter(|&i| accepts[i])
                    .fold(BigUint::zero(), |acc, i| acc + &v[i]),
            );
            if step == len {
                break;
            }
            let mut next = vec![BigUint::zero(); d];
            for (i, row) in self.entries.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                for (j, &c) in row.iter().enumerate() {
                    if c > 0 {
                        next[j] += &v[i] * c;
                    }
                }
            }
            v = next;
        }
        out
    }

    /// Strongly connected components (Tarjan), each as a sorted index list.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // explicit call stack: (node, next neighbor to visit)
            let mut calls = vec![(root, 0usize)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut next)) = calls.last_mut() {
                if *next < n {
                    let w = *next;
                    *next += 1;
                    if self.entries[v][w] == 0 {
                        continue;
                    }
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        calls.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    calls.pop();
                    if let Some(&(parent, _)) = calls.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("component on stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
        out
    }
}

/// Spectral radius of `m` to within `tol`.
///
/// The radius is the largest radius over strongly connected components. On
/// each component with at least one internal edge, power iteration runs on
/// `A + I`, which is primitive, so iterates converge even when `A` is
/// periodic; the Collatz–Wielandt quotients `min_i (Mx)_i / x_i` and
/// `max_i (Mx)_i / x_i` bracket the radius of `A + I` and the iteration stops
/// once the bracket is narrower than `tol`. Acyclic matrices give 0.
pub fn pf_eigenvalue(m: &CountMatrix, tol: f64, max_iterations: usize) -> Result<f64> {
    let mut best: f64 = 0.0;
    for comp in m.components() {
        let k = comp.len();
        let sub: Vec<Vec<f64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| m.entries[i][j] as f64).collect())
            .collect();
        if sub.iter().all(|r| r.iter().all(|&x| x == 0.0)) {
            continue;
        }
        best = best.max(component_radius(&sub, k, tol, max_iterations)?);
    }
    Ok(best)
}

fn component_radius(a: &[Vec<f64>], k: usize, tol: f64, max_iterations: usize) -> Result<f64> {
    let mut x = vec![1.0; k];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for _ in 0..max_iterations {
        let y: Vec<f64> = (0..k)
            .map(|i| x[i] + (0..k).map(|j| a[i][j] * x[j]).sum::<f64>())
            .collect();
        lower = f64::INFINITY;
        upper = 0.0;
        for i in 0..k {
            let q = y[i] / x[i];
            lower = f64::min(lower, q);
            upper = f64::max(upper, q);
        }
        if upper - lower <= tol {
            return Ok((lower + upper) / 2.0 - 1.0);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::NoConvergence {
        lower: lower - 1.0,
        upper: upper - 1.0,
        iterations: max_iterations,
    })
}
