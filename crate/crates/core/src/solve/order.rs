//! Variable orderings.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::csp::Problem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    /// Ascending names, comparing digit runs numerically (`v2 < v10`).
    #[default]
    NameLex,
    /// Ascending constraint-graph degree, ties by name.
    MinDegree,
}

/// Compares digit runs by numeric value and everything else bytewise.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    while let (Some(&cx), Some(&cy)) = (x.first(), y.first()) {
        let ord = if cx.is_ascii_digit() && cy.is_ascii_digit() {
            let (dx, rx) = split_digits(x);
            let (dy, ry) = split_digits(y);
            x = rx;
            y = ry;
            let (tx, ty) = (trim_zeros(dx), trim_zeros(dy));
            tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty))
        } else {
            x = &x[1..];
            y = &y[1..];
            cx.cmp(&cy)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    x.len().cmp(&y.len()).then_with(|| a.cmp(b))
}

fn split_digits(s: &[u8]) -> (&[u8], &[u8]) {
    let n = s.iter().take_while(|c| c.is_ascii_digit()).count();
    s.split_at(n)
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let n = s.iter().take_while(|&&c| c == b'0').count();
    &s[n..]
}

/// The order `v_1, …, v_n`. Elimination runs from `v_n` down to `v_1`;
/// search assigns `v_1` first.
pub fn compute_order(p: &Problem, policy: OrderPolicy) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.variables().len()).collect();
    let by_name = |a: &usize, b: &usize| natural_cmp(p.var_name(*a), p.var_name(*b));
    match policy {
        OrderPolicy::NameLex => order.sort_by(by_name),
        OrderPolicy::MinDegree => {
            let mut neighbours = vec![BTreeSet::new(); order.len()];
            for c in p.constraints() {
                for &v in c.support() {
                    neighbours[v].extend(c.support().iter().copied().filter(|&u| u != v));
                }
            }
            order.sort_by(|a, b| neighbours[*a].len().cmp(&neighbours[*b].len()).then_with(|| by_name(a, b)));
        }
    }
    order
}

/// Checks that `order` is a permutation of the problem's variables.
pub(crate) fn check_order(p: &Problem, order: &[usize]) -> Result<()> {
    let n = p.variables().len();
    let distinct: BTreeSet<usize> = order.iter().copied().collect();
    if order.len() != n || distinct.len() != n || distinct.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument(format!(
            "order {order:?} is not a permutation of {n} variables"
        )));
    }
    Ok(())
}
