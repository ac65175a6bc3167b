//! Seeded random problems for the equivalence suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csp::{Constraint, Problem, Table, Variable};
use crate::error::Result;
use crate::instances::{make_algebra, InstanceSpec};

pub const MAX_VARIABLES: usize = 5;
pub const MAX_DOMAIN: usize = 3;
pub const MAX_CONSTRAINTS: usize = 6;
pub const MAX_ARITY: usize = 3;

/// The algebras the corpus cycles through.
pub fn corpus_algebras() -> Vec<InstanceSpec> {
    vec![
        InstanceSpec::Tropical,
        InstanceSpec::Chain { n: 6 },
        InstanceSpec::product(InstanceSpec::Chain { n: 3 }, InstanceSpec::Chain { n: 3 }),
        InstanceSpec::lex(InstanceSpec::Chain { n: 3 }, 2),
    ]
}

/// A random problem over `spec`, fully determined by `seed`.
///
/// Variables `v1..vN` are first covered by disjoint scopes, then random extra
/// scopes are added up to the constraint limit.
pub fn generate(spec: &InstanceSpec, seed: u64) -> Result<Problem> {
    let alg = make_algebra(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=MAX_VARIABLES);
    let values = ["a", "b", "c"];
    let variables: Vec<Variable> = (1..=n)
        .map(|i| Variable {
            name: format!("v{i}"),
            domain: values[..rng.gen_range(1..=MAX_DOMAIN)].iter().map(|s| s.to_string()).collect(),
        })
        .collect();

    let mut shuffled: Vec<usize> = (0..n).collect();
    shuffled.shuffle(&mut rng);
    let mut scopes = Vec::new();
    let mut rest = &shuffled[..];
    while !rest.is_empty() {
        let k = rng.gen_range(1..=MAX_ARITY.min(rest.len()));
        let (head, tail) = rest.split_at(k);
        scopes.push(head.to_vec());
        rest = tail;
    }
    let total = rng.gen_range(scopes.len()..=MAX_CONSTRAINTS.max(scopes.len()));
    while scopes.len() < total {
        let k = rng.gen_range(1..=MAX_ARITY.min(n));
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(&mut rng);
        all.truncate(k);
        scopes.push(all);
    }

    let constraints = scopes
        .into_iter()
        .enumerate()
        .map(|(i, scope)| {
            let dims: Vec<usize> = scope.iter().map(|&v| variables[v].domain.len()).collect();
            let table = Table::tabulate(scope, dims, |_| alg.sample(&mut rng));
            Constraint::new(format!("c{}", i + 1), table)
        })
        .collect();
    Ok(Problem::from_parts(spec.clone(), alg, variables, constraints))
}

/// `count` problems with seeds `0..count`, cycling through [`corpus_algebras`].
pub fn corpus(count: u64) -> Result<Vec<(u64, Problem)>> {
    let algebras = corpus_algebras();
    (0..count)
        .map(|seed| Ok((seed, generate(&algebras[seed as usize % algebras.len()], seed)?)))
        .collect()
}
