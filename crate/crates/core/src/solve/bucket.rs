//! Bucket and mini-bucket elimination, plus the residuation-based distance
//! between a bucket and one of its partitions.

use crate::algebra::PreferenceAlgebra;
use crate::csp::{combine_all, project_out, residuate_constraints, Assignment, Constraint, Problem, Table};
use crate::error::{Error, Result};
use crate::value::Value;

use super::frontier::{maximal, set_combine, strictly_dominated, undominated, Frontier, Solution};
use super::order::check_order;

/// Largest table a bucket may combine before elimination gives up.
pub const MAX_TABLE_CELLS: u128 = 1 << 24;

/// Fails with a resource error when combining `cs` would exceed [`MAX_TABLE_CELLS`].
fn check_table_size<'c>(cs: impl IntoIterator<Item = &'c Constraint>) -> Result<()> {
    let mut dims: Vec<(usize, usize)> = Vec::new();
    for c in cs {
        for (&v, &n) in c.support().iter().zip(c.table.dims()) {
            if !dims.iter().any(|&(u, _)| u == v) {
                dims.push((v, n));
            }
        }
    }
    let cells = dims.iter().fold(1u128, |acc, &(_, n)| acc.saturating_mul(n as u128));
    if cells > MAX_TABLE_CELLS {
        return Err(Error::Resource(format!(
            "combined table of {} variables has {cells} cells, above the limit of {MAX_TABLE_CELLS}",
            dims.len()
        )));
    }
    Ok(())
}

/// The constraints eliminated together with `variable`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bucket {
    pub variable: usize,
    pub constraints: Vec<Constraint>,
}

/// A split of a bucket into mini-buckets of joint support at most `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub mini_buckets: Vec<Vec<Constraint>>,
    pub z: usize,
}

impl Partition {
    /// The partition with a single mini-bucket.
    pub fn trivial(b: &Bucket) -> Self {
        let z = support_size(&b.constraints);
        Partition {
            mini_buckets: if b.constraints.is_empty() {
                Vec::new()
            } else {
                vec![b.constraints.clone()]
            },
            z,
        }
    }
}

fn support_size(cs: &[Constraint]) -> usize {
    let mut vars: Vec<usize> = cs.iter().flat_map(|c| c.support().iter().copied()).collect();
    vars.sort_unstable();
    vars.dedup();
    vars.len()
}

/// Greedy first-fit: each constraint, in bucket order, goes to the first
/// mini-bucket whose support stays within `z`, else opens a new one.
pub fn bucket_partition(b: &Bucket, z: usize) -> Result<Partition> {
    let mut minis: Vec<Vec<Constraint>> = Vec::new();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for c in &b.constraints {
        if c.arity() > z {
            return Err(Error::InfeasibleZ {
                z,
                constraint: c.id.clone(),
                arity: c.arity(),
            });
        }
        let fits = supports.iter().position(|s| {
            let extra = c.support().iter().filter(|v| !s.contains(v)).count();
            s.len() + extra <= z
        });
        match fits {
            Some(j) => {
                for &v in c.support() {
                    if !supports[j].contains(&v) {
                        supports[j].push(v);
                    }
                }
                minis[j].push(c.clone());
            }
            None => {
                supports.push(c.support().to_vec());
                minis.push(vec![c.clone()]);
            }
        }
    }
    Ok(Partition { mini_buckets: minis, z })
}

/// What happened to one variable during an elimination sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketRecord {
    pub variable: usize,
    /// Ids of the bucket's constraints, per mini-bucket.
    pub mini_buckets: Vec<Vec<String>>,
    /// The projected messages, one per mini-bucket.
    pub messages: Vec<Constraint>,
}

/// Result of [`bucket_eliminate`].
#[derive(Debug, Clone)]
pub struct Elimination {
    /// `⋁_t ⊗C(t)` over full assignments `t`.
    pub bound: Value,
    pub solutions: Frontier,
    pub buckets: Vec<BucketRecord>,
}

/// A join-valued message together with the undominated value sets it summarizes.
#[derive(Clone)]
struct Factor {
    join: Constraint,
    front: Table<Vec<Value>>,
}

impl Factor {
    fn original(c: &Constraint) -> Self {
        Factor {
            join: c.clone(),
            front: c.table.map(|v| vec![v.clone()]),
        }
    }
}

/// Exact bucket elimination.
///
/// Messages carry, next to the projected join, the set of undominated values
/// reachable by the eliminated variables. The forward sweep uses those sets to
/// keep exactly the partial assignments that extend to an undominated full
/// assignment, so the returned frontier is exact on any partial order.
pub fn bucket_eliminate(p: &Problem, order: &[usize]) -> Result<Elimination> {
    check_order(p, order)?;
    let alg = p.alg();
    let n = order.len();
    let mut pool: Vec<Factor> = p.constraints().iter().map(Factor::original).collect();
    let mut snapshots: Vec<Vec<Table<Vec<Value>>>> = vec![Vec::new(); n];
    let mut buckets = Vec::with_capacity(n);

    for i in (0..n).rev() {
        let v = order[i];
        snapshots[i] = pool.iter().map(|f| f.front.clone()).collect();
        let (bucket, rest): (Vec<Factor>, Vec<Factor>) = pool.into_iter().partition(|f| f.join.table.contains_var(v));
        pool = rest;
        if bucket.is_empty() {
            buckets.push(BucketRecord {
                variable: v,
                mini_buckets: Vec::new(),
                messages: Vec::new(),
            });
            continue;
        }
        check_table_size(bucket.iter().map(|f| &f.join))?;
        let joined = combine_all(alg, bucket.iter().map(|f| &f.join));
        let mut message = project_out(alg, &joined, v);
        message.id = format!("g[{}]", p.var_name(v));
        let front = bucket
            .iter()
            .fold(Table::constant(vec![alg.identity()]), |acc, f| {
                acc.zip_with(&f.front, |a, b| set_combine(alg, a, b))
            })
            .eliminate(v, |column| maximal(alg, column.concat()))
            .expect("bucket variable in scope");
        buckets.push(BucketRecord {
            variable: v,
            mini_buckets: vec![bucket.iter().map(|f| f.join.id.clone()).collect()],
            messages: vec![message.clone()],
        });
        pool.push(Factor { join: message, front });
    }

    let bound = pool
        .iter()
        .map(|f| f.join.as_constant().expect("every variable eliminated"))
        .fold(alg.identity(), |acc, v| alg.combine(&acc, v));

    let mut kept = vec![p.empty_assignment()];
    for (i, &v) in order.iter().enumerate() {
        let candidates: Vec<Assignment> = kept
            .iter()
            .flat_map(|t| (0..p.variables()[v].domain.len()).map(move |d| t.with(v, d)))
            .collect();
        let sets: Vec<Vec<Value>> = candidates
            .iter()
            .map(|t| {
                snapshots[i].iter().fold(vec![alg.identity()], |acc, f| {
                    let cell = f.lookup(t.slots()).expect("snapshot scoped within the prefix");
                    set_combine(alg, &acc, cell)
                })
            })
            .collect();
        let all: Vec<Value> = maximal(alg, sets.concat());
        kept = candidates
            .into_iter()
            .zip(&sets)
            .filter(|(_, s)| s.iter().any(|x| !strictly_dominated(alg, x, &all)))
            .map(|(t, _)| t)
            .collect();
    }
    let solutions = kept
        .into_iter()
        .map(|t| {
            let value = p.value_of(&t)?;
            Ok(Solution { assignment: t, value })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Elimination {
        bound,
        solutions: undominated(alg, solutions),
        buckets,
    })
}

/// One bucket of a mini-bucket sweep.
#[derive(Debug, Clone)]
pub struct MiniBucketStep {
    pub bucket: Bucket,
    pub partition: Partition,
    pub messages: Vec<Constraint>,
}

/// Result of [`mini_bucket_eliminate`].
#[derive(Debug, Clone)]
pub struct MiniBucketRun {
    /// A value that no full assignment's preference exceeds.
    pub bound: Value,
    pub steps: Vec<MiniBucketStep>,
}

impl MiniBucketRun {
    pub fn step(&self, variable: usize) -> Option<&MiniBucketStep> {
        self.steps.iter().find(|s| s.bucket.variable == variable)
    }

    pub fn records(&self) -> Vec<BucketRecord> {
        self.steps
            .iter()
            .map(|s| BucketRecord {
                variable: s.bucket.variable,
                mini_buckets: s
                    .partition
                    .mini_buckets
                    .iter()
                    .map(|q| q.iter().map(|c| c.id.clone()).collect())
                    .collect(),
                messages: s.messages.clone(),
            })
            .collect()
    }
}

/// Mini-bucket elimination with width `z`.
pub fn mini_bucket_eliminate(p: &Problem, order: &[usize], z: usize) -> Result<MiniBucketRun> {
    check_order(p, order)?;
    let names: Vec<&str> = p.variables().iter().map(|v| v.name.as_str()).collect();
    mini_bucket_sweep(p.alg(), p.constraints().to_vec(), order, z, &names)
}

/// The sweep over an explicit constraint list; variables outside every
/// support get empty buckets.
pub(crate) fn mini_bucket_sweep(
    alg: &dyn PreferenceAlgebra,
    mut pool: Vec<Constraint>,
    order: &[usize],
    z: usize,
    names: &[&str],
) -> Result<MiniBucketRun> {
    let mut steps = Vec::with_capacity(order.len());
    for &v in order.iter().rev() {
        let (members, rest): (Vec<Constraint>, Vec<Constraint>) = pool.into_iter().partition(|c| c.table.contains_var(v));
        pool = rest;
        let bucket = Bucket {
            variable: v,
            constraints: members,
        };
        let partition = bucket_partition(&bucket, z)?;
        for q in &partition.mini_buckets {
            check_table_size(q)?;
        }
        let messages: Vec<Constraint> = partition
            .mini_buckets
            .iter()
            .enumerate()
            .map(|(j, q)| {
                let mut g = project_out(alg, &combine_all(alg, q), v);
                g.id = format!("g[{},{}]", names[v], j + 1);
                g
            })
            .collect();
        pool.extend(messages.iter().cloned());
        steps.push(MiniBucketStep {
            bucket,
            partition,
            messages,
        });
    }
    let bound = pool
        .iter()
        .map(|c| c.as_constant().expect("every variable eliminated"))
        .fold(alg.identity(), |acc, v| alg.combine(&acc, v));
    Ok(MiniBucketRun { bound, steps })
}

/// `μ^Q = ⊗_j (⊗Q_j)⇓v`.
pub fn mu_of_partition(alg: &dyn PreferenceAlgebra, b: &Bucket, q: &Partition) -> Constraint {
    let parts: Vec<Constraint> = q
        .mini_buckets
        .iter()
        .map(|m| project_out(alg, &combine_all(alg, m), b.variable))
        .collect();
    let mut mu = combine_all(alg, &parts);
    mu.id = "mu".into();
    mu
}

/// The exact bucket message `(⊗B)⇓v`.
pub fn exact_projection(alg: &dyn PreferenceAlgebra, b: &Bucket) -> Constraint {
    let mut exact = project_out(alg, &combine_all(alg, &b.constraints), b.variable);
    exact.id = "exact".into();
    exact
}

/// `(⊗B)⇓v ⊖ μ^Q`, pointwise.
pub fn bucket_distance(alg: &dyn PreferenceAlgebra, b: &Bucket, q: &Partition) -> Result<Constraint> {
    let mut d = residuate_constraints(alg, &exact_projection(alg, b), &mu_of_partition(alg, b, q))?;
    d.id = "distance".into();
    Ok(d)
}

/// `((⊗B ⊖ ⊗(B∖Q_j))⇓v) ⊖ ((⊗Q_j)⇓v)` for the 1-based mini-bucket `j`.
pub fn refined_mini_bucket_approx(alg: &dyn PreferenceAlgebra, b: &Bucket, q: &Partition, j: usize) -> Result<Constraint> {
    if j == 0 || j > q.mini_buckets.len() {
        return Err(Error::InvalidArgument(format!(
            "mini-bucket {j} out of range 1..={}",
            q.mini_buckets.len()
        )));
    }
    let qj = &q.mini_buckets[j - 1];
    let others: Vec<&Constraint> = q
        .mini_buckets
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j - 1)
        .flat_map(|(_, m)| m)
        .collect();
    let all = combine_all(alg, &b.constraints);
    let rest = combine_all(alg, others);
    let inner = project_out(alg, &residuate_constraints(alg, &all, &rest)?, b.variable);
    let own = project_out(alg, &combine_all(alg, qj), b.variable);
    let mut r = residuate_constraints(alg, &inner, &own)?;
    r.id = format!("approx[{j}]");
    Ok(r)
}

/// `⊗_j` of the refined approximations.
pub fn composed_approx(alg: &dyn PreferenceAlgebra, b: &Bucket, q: &Partition) -> Result<Constraint> {
    let parts = (1..=q.mini_buckets.len())
        .map(|j| refined_mini_bucket_approx(alg, b, q, j))
        .collect::<Result<Vec<_>>>()?;
    let mut c = combine_all(alg, &parts);
    c.id = "approx".into();
    Ok(c)
}
