//! Depth-first branch-and-bound over partially ordered preferences.

use crate::csp::{evaluate, Assignment, Constraint, Problem};
use crate::error::Result;
use crate::value::Value;

use super::bucket::mini_bucket_sweep;
use super::frontier::{strictly_dominated, undominated, Frontier, Solution};
use super::order::check_order;

/// How [`ub_estimate`] overestimates the completions of a partial assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UbPolicy {
    /// Combine the fully assigned constraints with `⊤` for each of the rest.
    #[default]
    Trivial,
    /// Mini-bucket elimination of the conditioned problem with width `z`.
    Mbe(usize),
}

/// Values that dominate `⊗C(t′)` for every full extension `t′` of `t`.
///
/// Under the trivial policy a constraint that is not fully assigned counts as
/// `⊤`; when the algebra has no top it counts as the join of its table
/// restricted to `t`.
pub fn ub_estimate(p: &Problem, t: &Assignment, policy: UbPolicy, order: &[usize]) -> Result<Vec<Value>> {
    let alg = p.alg();
    match policy {
        UbPolicy::Trivial => {
            let top = alg.top();
            let mut acc = alg.identity();
            for c in p.constraints() {
                let v = match evaluate(p, c, t) {
                    Ok(v) => v,
                    Err(_) => match &top {
                        Some(top) => top.clone(),
                        None => alg.join(c.table.condition(t.slots()).cells()),
                    },
                };
                acc = alg.combine(&acc, &v);
            }
            Ok(vec![acc])
        }
        UbPolicy::Mbe(z) => {
            let conditioned: Vec<Constraint> = p
                .constraints()
                .iter()
                .map(|c| Constraint::new(c.id.clone(), c.table.condition(t.slots())))
                .collect();
            let free: Vec<usize> = order.iter().copied().filter(|&v| t.get(v).is_none()).collect();
            let names: Vec<&str> = p.variables().iter().map(|v| v.name.as_str()).collect();
            Ok(vec![mini_bucket_sweep(alg, conditioned, &free, z, &names)?.bound])
        }
    }
}

/// Branch-and-bound search for the undominated full assignments.
///
/// Variables are assigned in `order`, values in domain order. `lb0` seeds the
/// lower-bound set (`{⊥}` when empty). A subtree is explored while some
/// upper bound is not strictly below every known lower bound, so incomparable
/// and tied optima are never pruned.
pub fn soft_dfbb(p: &Problem, order: &[usize], lb0: &[Value], ub: UbPolicy) -> Result<Frontier> {
    check_order(p, order)?;
    let mut search = Search {
        p,
        order,
        ub,
        lb: if lb0.is_empty() {
            vec![(None, p.alg().bottom())]
        } else {
            lb0.iter().map(|v| (None, v.clone())).collect()
        },
    };
    // Surfaces an infeasible z before searching.
    ub_estimate(p, &p.empty_assignment(), ub, order)?;
    search.visit(p.empty_assignment(), 0)?;
    let found = search
        .lb
        .into_iter()
        .filter_map(|(t, value)| t.map(|assignment| Solution { assignment, value }))
        .collect();
    Ok(undominated(p.alg(), found))
}

struct Search<'a> {
    p: &'a Problem,
    order: &'a [usize],
    ub: UbPolicy,
    /// Lower bounds; seeds carry no assignment.
    lb: Vec<(Option<Assignment>, Value)>,
}

impl Search<'_> {
    fn visit(&mut self, t: Assignment, depth: usize) -> Result<()> {
        let alg = self.p.alg();
        if depth == self.order.len() {
            let value = self.p.value_of(&t)?;
            self.lb.push((Some(t), value));
            let values: Vec<Value> = self.lb.iter().map(|(_, v)| v.clone()).collect();
            self.lb.retain(|(_, v)| !strictly_dominated(alg, v, &values));
            return Ok(());
        }
        let v = self.order[depth];
        for d in 0..self.p.variables()[v].domain.len() {
            let next = t.with(v, d);
            let h = ub_estimate(self.p, &next, self.ub, self.order)?;
            let bounds: Vec<Value> = self.lb.iter().map(|(_, l)| l.clone()).collect();
            if h.iter().any(|u| !strictly_dominated(alg, u, &bounds)) {
                self.visit(next, depth + 1)?;
            }
        }
        Ok(())
    }
}
