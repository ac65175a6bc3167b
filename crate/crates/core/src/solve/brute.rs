//! Exhaustive enumeration, the reference oracle for the other solvers.

use crate::csp::{table::increment, Problem};
use crate::error::{Error, Result};
use crate::value::Value;

use super::frontier::{undominated, Frontier, Solution};

/// Default limit on the number of full assignments enumerated.
pub const BRUTE_FORCE_CAP: u128 = 1_000_000;

/// The join of all full-assignment values and their undominated frontier.
pub fn brute_force_solve(p: &Problem) -> Result<(Value, Frontier)> {
    brute_force_solve_capped(p, BRUTE_FORCE_CAP)
}

pub fn brute_force_solve_capped(p: &Problem, cap: u128) -> Result<(Value, Frontier)> {
    let space = p.search_space();
    if space > cap {
        return Err(Error::Resource(format!(
            "{space} assignments exceed the brute-force cap of {cap}"
        )));
    }
    let alg = p.alg();
    let dims: Vec<usize> = p.variables().iter().map(|v| v.domain.len()).collect();
    let mut digits = vec![0; dims.len()];
    let mut all = Vec::with_capacity(space as usize);
    for _ in 0..space {
        let mut t = p.empty_assignment();
        for (v, &d) in digits.iter().enumerate() {
            t.set(v, d);
        }
        let value = p.value_of(&t)?;
        all.push(Solution { assignment: t, value });
        increment(&mut digits, &dims);
    }
    let values: Vec<Value> = all.iter().map(|s| s.value.clone()).collect();
    Ok((alg.join(&values), undominated(alg, all)))
}
