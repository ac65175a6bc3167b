//! Exact and approximate solvers for soft constraint problems.

mod brute;
mod bucket;
mod dfbb;
mod frontier;
mod generate;
mod order;

pub use brute::{brute_force_solve, brute_force_solve_capped, BRUTE_FORCE_CAP};
pub use bucket::{
    bucket_distance, bucket_eliminate, bucket_partition, composed_approx, exact_projection, mini_bucket_eliminate,
    mu_of_partition, refined_mini_bucket_approx, Bucket, MAX_TABLE_CELLS, BucketRecord, Elimination, MiniBucketRun, MiniBucketStep,
    Partition,
};
pub use dfbb::{soft_dfbb, ub_estimate, UbPolicy};
pub use frontier::{undominated, Frontier, Solution};
pub use generate::{corpus, corpus_algebras, generate, MAX_ARITY, MAX_CONSTRAINTS, MAX_DOMAIN, MAX_VARIABLES};
pub use order::{compute_order, natural_cmp, OrderPolicy};
