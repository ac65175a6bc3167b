//! Result documents.

use respom::csp::{Constraint, Problem};
use respom::solve::{
    bucket_distance, composed_approx, exact_projection, mu_of_partition, refined_mini_bucket_approx, BucketRecord,
    Elimination, Frontier, MiniBucketRun, MiniBucketStep, UbPolicy,
};
use respom::Result;
use serde_json::{json, Value as Json};

fn names(p: &Problem, vars: &[usize]) -> Json {
    vars.iter().map(|&v| p.var_name(v)).collect()
}

fn table(p: &Problem, c: &Constraint) -> Json {
    serde_json::to_value(p.constraint_to_doc(c)).expect("constraints serialize")
}

fn solutions(p: &Problem, frontier: &Frontier) -> Json {
    frontier
        .iter()
        .map(|s| json!({"assignment": p.named(&s.assignment), "value": p.alg().value_to_json(&s.value)}))
        .collect()
}

fn bucket(p: &Problem, r: &BucketRecord) -> Json {
    json!({
        "variable": p.var_name(r.variable),
        "mini_buckets": r.mini_buckets,
        "messages": r.messages.iter().map(|m| json!({
            "id": m.id,
            "scope": names(p, m.support()),
        })).collect::<Vec<_>>(),
    })
}

fn document(algorithm: &str, seed: u64, p: &Problem, order: &[usize], bound: Json, sols: Json, buckets: Json) -> Json {
    json!({
        "algorithm": algorithm,
        "seed": seed,
        "algebra": serde_json::to_value(p.spec()).expect("specs serialize"),
        "bound": bound,
        "solutions": sols,
        "diagnostics": {
            "order": names(p, order),
            "buckets": buckets,
            "distances": [],
        },
    })
}

pub fn solve_be(p: &Problem, seed: u64, order: &[usize], e: &Elimination) -> Json {
    document(
        "be",
        seed,
        p,
        order,
        p.alg().value_to_json(&e.bound),
        solutions(p, &e.solutions),
        e.buckets.iter().map(|r| bucket(p, r)).collect(),
    )
}

/// The bound of a branch-and-bound run is the join of its frontier.
pub fn solve_dfbb(p: &Problem, seed: u64, order: &[usize], ub: UbPolicy, frontier: &Frontier) -> Json {
    let values: Vec<_> = frontier.iter().map(|s| s.value.clone()).collect();
    let mut doc = document(
        "dfbb",
        seed,
        p,
        order,
        p.alg().value_to_json(&p.alg().join(&values)),
        solutions(p, frontier),
        json!([]),
    );
    doc["diagnostics"]["ub"] = match ub {
        UbPolicy::Trivial => json!({"policy": "trivial"}),
        UbPolicy::Mbe(z) => json!({"policy": "mbe", "z": z}),
    };
    doc
}

pub fn bound(p: &Problem, seed: u64, order: &[usize], z: usize, run: &MiniBucketRun) -> Json {
    let mut doc = document(
        "mbe",
        seed,
        p,
        order,
        p.alg().value_to_json(&run.bound),
        json!([]),
        run.records().iter().map(|r| bucket(p, r)).collect(),
    );
    doc["z"] = json!(z);
    doc
}

pub fn distance(p: &Problem, seed: u64, order: &[usize], z: usize, run: &MiniBucketRun, step: &MiniBucketStep) -> Result<Json> {
    let alg = p.alg();
    let (b, q) = (&step.bucket, &step.partition);
    let refined = (1..=q.mini_buckets.len())
        .map(|j| refined_mini_bucket_approx(alg, b, q, j).map(|c| table(p, &c)))
        .collect::<Result<Vec<_>>>()?;
    let entry = json!({
        "variable": p.var_name(b.variable),
        "mini_buckets": q.mini_buckets.iter().map(|m| m.iter().map(|c| c.id.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "exact": table(p, &exact_projection(alg, b)),
        "mu": table(p, &mu_of_partition(alg, b, q)),
        "distance": table(p, &bucket_distance(alg, b, q)?),
        "refined": refined,
        "composed": table(p, &composed_approx(alg, b, q)?),
    });
    let mut doc = bound(p, seed, order, z, run);
    doc["diagnostics"]["distances"] = json!([entry]);
    Ok(doc)
}
