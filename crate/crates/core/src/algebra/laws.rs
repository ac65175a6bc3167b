//! Executable law checks for residuated POM instances.
//!
//! Finite instances can be checked exhaustively; infinite ones are checked on
//! a seeded sample. Which laws run is decided by the instance's
//! [`Properties`] flags and [`Structure`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    brute_force_residual_over, collapsing_oracle, weakly_collapsing_oracle, PreferenceAlgebra,
    Properties, Structure,
};
use crate::error::{Error, Result};
use crate::lex;
use crate::value::Value;

/// Seed used by sampled checks when the caller does not provide one.
pub const DEFAULT_SEED: u64 = 0x5EED_0001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// Every element, pair and triple of a finite carrier.
    Exhaustive,
    /// `samples` random pairs and triples drawn from a seeded pool.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    /// The offending elements, as value literals of the checked instance.
    pub values: Vec<serde_json::Value>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawVerdict {
    pub law: &'static str,
    pub status: LawStatus,
    /// Number of cases evaluated.
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Why the law was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// Finite carriers up to this size get a collapsing summary even when sampled.
const SUMMARY_LIMIT: usize = 64;

/// `C(A)` and `C'(A)` of a finite carrier, reported alongside the verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapsingSummary {
    pub collapsing: Vec<serde_json::Value>,
    pub weakly_collapsing: Vec<serde_json::Value>,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub algebra: serde_json::Value,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub residuated: bool,
    pub distributive: bool,
    pub zero_bottom: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapsing: Option<CollapsingSummary>,
    pub laws: Vec<LawVerdict>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.status != LawStatus::Fail)
    }

    pub fn verdict(&self, law: &str) -> Option<&LawVerdict> {
        self.laws.iter().find(|l| l.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawVerdict> {
        self.laws.iter().filter(|l| l.status == LawStatus::Fail)
    }
}

/// Runs every applicable law against `alg`.
///
/// Fails only when an exhaustive check is requested on an infinite carrier.
pub fn check_laws(alg: &dyn PreferenceAlgebra, budget: Budget) -> Result<LawReport> {
    let cases = Cases::new(alg, budget)?;
    let props = alg.properties();
    let mut h = Harness {
        alg,
        cases: &cases,
        props,
        laws: Vec::new(),
    };
    h.run();
    let small = alg.elements().is_some_and(|e| e.len() <= SUMMARY_LIMIT);
    let collapsing = if cases.exhaustive || small {
        collapsing_summary(alg)
    } else {
        None
    };
    let (seed, samples) = match budget {
        Budget::Exhaustive => (None, None),
        Budget::Sampled { samples, seed } => (Some(seed), Some(samples)),
    };
    Ok(LawReport {
        algebra: serde_json::to_value(alg.spec()).unwrap_or(serde_json::Value::Null),
        mode: if cases.exhaustive { "exhaustive" } else { "sampled" },
        seed,
        samples,
        residuated: props.residuated,
        distributive: props.distributive,
        zero_bottom: props.zero_bottom,
        collapsing,
        laws: h.laws,
    })
}

fn collapsing_summary(alg: &dyn PreferenceAlgebra) -> Option<CollapsingSummary> {
    let c = collapsing_oracle(alg).ok()?.collapsing;
    let weak = weakly_collapsing_oracle(alg).ok()?;
    Some(CollapsingSummary {
        equal: c == weak,
        collapsing: c.iter().map(|v| alg.value_to_json(v)).collect(),
        weakly_collapsing: weak.iter().map(|v| alg.value_to_json(v)).collect(),
    })
}

/// The elements, pairs and triples a budget selects.
struct Cases {
    exhaustive: bool,
    pool: Vec<Value>,
    pairs: Vec<(usize, usize)>,
    triples: Vec<(usize, usize, usize)>,
}

impl Cases {
    fn new(alg: &dyn PreferenceAlgebra, budget: Budget) -> Result<Self> {
        match budget {
            Budget::Exhaustive => {
                let pool = alg.elements().ok_or_else(|| {
                    Error::Unsupported(format!(
                        "exhaustive law check on the infinite carrier of {}",
                        alg.name()
                    ))
                })?;
                let n = pool.len();
                let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
                let triples = (0..n)
                    .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
                    .collect();
                Ok(Cases {
                    exhaustive: true,
                    pool,
                    pairs,
                    triples,
                })
            }
            Budget::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut pool = vec![alg.bottom(), alg.identity()];
                pool.extend(alg.top());
                let special = pool.len();
                pool.extend((0..samples).map(|_| alg.sample(&mut rng)));
                let n = pool.len();
                let mut pairs: Vec<(usize, usize)> = (0..special)
                    .flat_map(|i| (0..special).map(move |j| (i, j)))
                    .collect();
                pairs.extend((0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))));
                let triples = (0..samples)
                    .map(|_| {
                        (
                            rng.gen_range(0..n),
                            rng.gen_range(0..n),
                            rng.gen_range(0..n),
                        )
                    })
                    .collect();
                Ok(Cases {
                    exhaustive: false,
                    pool,
                    pairs,
                    triples,
                })
            }
        }
    }
}

/// Accumulates one law's verdict.
struct Check<'a> {
    alg: &'a dyn PreferenceAlgebra,
    law: &'static str,
    checked: u64,
    counterexample: Option<Counterexample>,
}

impl<'a> Check<'a> {
    fn case(&mut self, ok: bool, values: &[&Value], detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                values: values.iter().map(|v| self.alg.value_to_json(v)).collect(),
                detail: detail(),
            });
        }
    }

    fn finish(self) -> LawVerdict {
        LawVerdict {
            law: self.law,
            status: if self.counterexample.is_some() {
                LawStatus::Fail
            } else {
                LawStatus::Pass
            },
            checked: self.checked,
            counterexample: self.counterexample,
            reason: None,
        }
    }
}

struct Harness<'a> {
    alg: &'a dyn PreferenceAlgebra,
    cases: &'a Cases,
    props: Properties,
    laws: Vec<LawVerdict>,
}

impl<'a> Harness<'a> {
    fn check(&self, law: &'static str) -> Check<'a> {
        Check {
            alg: self.alg,
            law,
            checked: 0,
            counterexample: None,
        }
    }

    fn skip(&mut self, law: &'static str, reason: impl Into<String>) {
        self.laws.push(LawVerdict {
            law,
            status: LawStatus::Skipped,
            checked: 0,
            counterexample: None,
            reason: Some(reason.into()),
        });
    }

    fn leq(&self, a: &Value, b: &Value) -> bool {
        self.alg.compare(a, b).is_le()
    }

    fn elements(&self) -> &'a [Value] {
        &self.cases.pool
    }

    fn pairs(&self) -> impl Iterator<Item = (&'a Value, &'a Value)> + 'a {
        let pool = &self.cases.pool;
        self.cases.pairs.iter().map(move |&(i, j)| (&pool[i], &pool[j]))
    }

    fn triples(&self) -> impl Iterator<Item = (&'a Value, &'a Value, &'a Value)> + 'a {
        let pool = &self.cases.pool;
        self.cases
            .triples
            .iter()
            .map(move |&(i, j, k)| (&pool[i], &pool[j], &pool[k]))
    }

    fn run(&mut self) {
        self.closure();
        self.order();
        self.monoid();
        self.monotonicity();
        self.bounds();
        self.joins();
        self.distributivity();
        self.residuation();
        self.collapsing();
        self.structural();
    }

    fn closure(&mut self) {
        let alg = self.alg;
        let mut c = self.check("closure");
        for (a, b) in self.pairs() {
            let ab = alg.combine(a, b);
            c.case(alg.contains(&ab), &[a, b], || format!("{a} ⊗ {b} = {ab} leaves the carrier"));
            let j = alg.join(&[a.clone(), b.clone()]);
            c.case(alg.contains(&j), &[a, b], || format!("{a} ∨ {b} = {j} leaves the carrier"));
            if self.props.residuated {
                if let Ok(r) = alg.residual(a, b) {
                    c.case(alg.contains(&r), &[a, b], || {
                        format!("{a} ⊖ {b} = {r} leaves the carrier")
                    });
                }
            }
        }
        self.laws.push(c.finish());
    }

    fn order(&mut self) {
        let alg = self.alg;
        let mut refl = self.check("order-reflexive");
        for a in self.elements() {
            refl.case(alg.compare(a, a) == super::OrderRelation::Equal, &[a], || {
                format!("compare({a}, {a}) = {}", alg.compare(a, a))
            });
        }
        self.laws.push(refl.finish());

        let mut anti = self.check("order-antisymmetric");
        let mut sym = self.check("compare-symmetry");
        for (a, b) in self.pairs() {
            let ab = alg.compare(a, b);
            anti.case((ab == super::OrderRelation::Equal) == (a == b), &[a, b], || {
                format!("compare({a}, {b}) = {ab}")
            });
            let ba = alg.compare(b, a);
            sym.case(ab == ba.reverse(), &[a, b], || {
                format!("compare({a}, {b}) = {ab} but compare({b}, {a}) = {ba}")
            });
        }
        self.laws.push(anti.finish());
        self.laws.push(sym.finish());

        let mut trans = self.check("order-transitive");
        for (a, b, c) in self.triples() {
            if self.leq(a, b) && self.leq(b, c) {
                trans.case(self.leq(a, c), &[a, b, c], || format!("{a} ≤ {b} ≤ {c} but not {a} ≤ {c}"));
            }
        }
        self.laws.push(trans.finish());
    }

    fn monoid(&mut self) {
        let alg = self.alg;
        let one = alg.identity();
        let mut id = self.check("monoid-identity");
        for a in self.elements() {
            let r = alg.combine(a, &one);
            id.case(&r == a, &[a], || format!("{a} ⊗ 1 = {r}"));
        }
        self.laws.push(id.finish());

        let mut comm = self.check("monoid-commutative");
        for (a, b) in self.pairs() {
            let (ab, ba) = (alg.combine(a, b), alg.combine(b, a));
            comm.case(ab == ba, &[a, b], || format!("{a} ⊗ {b} = {ab} but {b} ⊗ {a} = {ba}"));
        }
        self.laws.push(comm.finish());

        let mut assoc = self.check("monoid-associative");
        for (a, b, c) in self.triples() {
            let l = alg.combine(&alg.combine(a, b), c);
            let r = alg.combine(a, &alg.combine(b, c));
            assoc.case(l == r, &[a, b, c], || format!("({a} ⊗ {b}) ⊗ {c} = {l} but {a} ⊗ ({b} ⊗ {c}) = {r}"));
        }
        self.laws.push(assoc.finish());
    }

    fn monotonicity(&mut self) {
        let alg = self.alg;
        let mut m = self.check("monotonicity");
        for (a, b, c) in self.triples() {
            if self.leq(a, b) {
                let (ac, bc) = (alg.combine(a, c), alg.combine(b, c));
                m.case(self.leq(&ac, &bc), &[a, b, c], || {
                    format!("{a} ≤ {b} but {a} ⊗ {c} = {ac} is not below {b} ⊗ {c} = {bc}")
                });
            }
        }
        self.laws.push(m.finish());
    }

    fn bounds(&mut self) {
        let alg = self.alg;
        let bot = alg.bottom();
        let mut least = self.check("bottom-least");
        for a in self.elements() {
            least.case(self.leq(&bot, a), &[a], || format!("⊥ = {bot} is not below {a}"));
        }
        self.laws.push(least.finish());

        match alg.top() {
            Some(top) => {
                let mut greatest = self.check("top-greatest");
                for a in self.elements() {
                    greatest.case(self.leq(a, &top), &[a], || format!("{a} is not below ⊤ = {top}"));
                }
                self.laws.push(greatest.finish());
            }
            None => self.skip("top-greatest", "no top element"),
        }

        if self.props.zero_bottom {
            let mut zero = self.check("bottom-annihilation");
            for a in self.elements() {
                let r = alg.combine(a, &bot);
                zero.case(r == bot, &[a], || format!("{a} ⊗ ⊥ = {r}"));
            }
            self.laws.push(zero.finish());
        } else {
            self.skip("bottom-annihilation", "not flagged zero_bottom");
        }
    }

    fn joins(&mut self) {
        let alg = self.alg;
        let mut empty = self.check("join-empty");
        let j = alg.join(&[]);
        empty.case(j == alg.bottom(), &[], || format!("join(∅) = {j}"));
        self.laws.push(empty.finish());

        let mut lub = self.check("join-lub");
        for (a, b) in self.pairs() {
            let j = alg.join(&[a.clone(), b.clone()]);
            lub.case(self.leq(a, &j) && self.leq(b, &j), &[a, b], || {
                format!("{a} ∨ {b} = {j} is not an upper bound")
            });
            for u in self.elements() {
                if self.leq(a, u) && self.leq(b, u) {
                    lub.case(self.leq(&j, u), &[a, b, u], || {
                        format!("{a} ∨ {b} = {j} is not below the upper bound {u}")
                    });
                }
            }
        }
        self.laws.push(lub.finish());
    }

    fn distributivity(&mut self) {
        if !self.props.distributive {
            self.skip("distributivity", "not flagged distributive");
            return;
        }
        let alg = self.alg;
        let mut d = self.check("distributivity");
        if self.props.zero_bottom {
            for a in self.elements() {
                let l = alg.combine(a, &alg.join(&[]));
                d.case(l == alg.join(&[]), &[a], || format!("{a} ⊗ ⋁∅ = {l}"));
            }
        }
        for (a, x) in self.pairs() {
            let l = alg.combine(a, &alg.join(std::slice::from_ref(x)));
            let r = alg.join(&[alg.combine(a, x)]);
            d.case(l == r, &[a, x], || format!("{a} ⊗ ⋁{{{x}}} = {l} but ⋁{{{a} ⊗ {x}}} = {r}"));
        }
        for (a, x, y) in self.triples() {
            let l = alg.combine(a, &alg.join(&[x.clone(), y.clone()]));
            let r = alg.join(&[alg.combine(a, x), alg.combine(a, y)]);
            d.case(l == r, &[a, x, y], || {
                format!("{a} ⊗ ({x} ∨ {y}) = {l} but ({a} ⊗ {x}) ∨ ({a} ⊗ {y}) = {r}")
            });
        }
        self.laws.push(d.finish());
    }

    fn residuation(&mut self) {
        const LAWS: [&str; 3] = ["adjunction", "residual-oracle", "residual-identities"];
        if !self.props.residuated {
            for law in LAWS {
                self.skip(law, "not residuated");
            }
            return;
        }
        let alg = self.alg;

        let mut adj = self.check("adjunction");
        for (a, b, c) in self.triples() {
            match alg.residual(a, b) {
                Ok(r) => {
                    let bc = alg.combine(b, c);
                    let lhs = self.leq(&bc, a);
                    let rhs = self.leq(c, &r);
                    adj.case(lhs == rhs, &[a, b, c], || {
                        format!("{b} ⊗ {c} = {bc} ≤ {a} is {lhs} but {c} ≤ {a} ⊖ {b} = {r} is {rhs}")
                    });
                }
                Err(e) => adj.case(false, &[a, b], || format!("{a} ⊖ {b} failed: {e}")),
            }
        }
        // the residual itself is the greatest sub-solution
        for (a, b) in self.pairs() {
            if let Ok(r) = alg.residual(a, b) {
                let br = alg.combine(b, &r);
                adj.case(self.leq(&br, a), &[a, b], || format!("{b} ⊗ ({a} ⊖ {b}) = {br} exceeds {a}"));
            }
        }
        self.laws.push(adj.finish());

        if self.cases.exhaustive {
            let mut oracle = self.check("residual-oracle");
            for (a, b) in self.pairs() {
                let brute = brute_force_residual_over(alg, a, b, self.elements());
                match alg.residual(a, b) {
                    Ok(r) => oracle.case(r == brute, &[a, b], || {
                        format!("{a} ⊖ {b} = {r} but the brute-force join is {brute}")
                    }),
                    Err(e) => oracle.case(false, &[a, b], || format!("{a} ⊖ {b} failed: {e}")),
                }
            }
            self.laws.push(oracle.finish());
        } else {
            self.skip("residual-oracle", "needs an enumerable carrier");
        }

        let mut ids = self.check("residual-identities");
        let one = alg.identity();
        let bot = alg.bottom();
        let top = alg.top();
        for a in self.elements() {
            if let Ok(r) = alg.residual(a, &one) {
                ids.case(&r == a, &[a], || format!("{a} ⊖ 1 = {r}"));
            }
            if let Some(top) = &top {
                if self.props.zero_bottom {
                    if let Ok(r) = alg.residual(a, &bot) {
                        ids.case(&r == top, &[a], || format!("{a} ⊖ ⊥ = {r}, expected ⊤ = {top}"));
                    }
                }
                if let Ok(r) = alg.residual(top, a) {
                    ids.case(&r == top, &[a], || format!("⊤ ⊖ {a} = {r}, expected ⊤ = {top}"));
                }
            }
        }
        self.laws.push(ids.finish());
    }

    fn collapsing(&mut self) {
        let alg = self.alg;
        let mut id = self.check("identity-cancellative");
        let one = alg.identity();
        id.case(!alg.is_collapsing(&one), &[&one], || "the identity is flagged collapsing".into());
        self.laws.push(id.finish());

        // closed-form predicate, on the selected pairs
        let mut sub = self.check("cancellative-submonoid");
        let mut ideal = self.check("collapsing-prime-ideal");
        for (a, b) in self.pairs() {
            let ab = alg.combine(a, b);
            let (ca, cb, cab) = (alg.is_collapsing(a), alg.is_collapsing(b), alg.is_collapsing(&ab));
            sub.case(ca || cb || !cab, &[a, b], || {
                format!("{a} and {b} are cancellative but {a} ⊗ {b} = {ab} is not")
            });
            ideal.case(cab == (ca || cb), &[a, b], || {
                format!("C(A) membership: {a} {ca}, {b} {cb}, {a} ⊗ {b} = {ab} {cab}")
            });
        }

        if !self.cases.exhaustive {
            self.laws.push(sub.finish());
            self.laws.push(ideal.finish());
            for law in [
                "collapsing-closed-form",
                "weakly-collapsing-subset",
                "weakly-collapsing-equals-collapsing",
                "weakly-collapsing-closed-form",
            ] {
                self.skip(law, "needs an enumerable carrier");
            }
            return;
        }

        let analysis = collapsing_oracle(alg).expect("finite carrier");
        for v in &analysis.violations {
            sub.case(false, &[], || v.clone());
        }
        self.laws.push(sub.finish());
        self.laws.push(ideal.finish());

        let mut closed = self.check("collapsing-closed-form");
        for a in self.elements() {
            let oracle = analysis.collapsing.contains(a);
            let claimed = alg.is_collapsing(a);
            closed.case(oracle == claimed, &[a], || {
                format!("is_collapsing({a}) = {claimed} but the pair search says {oracle}")
            });
        }
        self.laws.push(closed.finish());

        let weak = weakly_collapsing_oracle(alg).expect("finite carrier");
        let mut subset = self.check("weakly-collapsing-subset");
        for a in &weak {
            subset.case(analysis.collapsing.contains(a), &[a], || format!("{a} ∈ C'(A) ∖ C(A)"));
        }
        self.laws.push(subset.finish());

        if self.props.distributive {
            let mut eq = self.check("weakly-collapsing-equals-collapsing");
            for a in &analysis.collapsing {
                eq.case(weak.contains(a), &[a], || format!("{a} ∈ C(A) ∖ C'(A)"));
            }
            self.laws.push(eq.finish());
        } else {
            self.skip("weakly-collapsing-equals-collapsing", "not flagged distributive");
        }

        let mut weak_closed = self.check("weakly-collapsing-closed-form");
        for a in self.elements() {
            let oracle = weak.contains(a);
            match alg.is_weakly_collapsing(a) {
                Ok(claimed) => weak_closed.case(claimed == oracle, &[a], || {
                    format!("is_weakly_collapsing({a}) = {claimed} but the pair search says {oracle}")
                }),
                Err(e) => weak_closed.case(false, &[a], || format!("is_weakly_collapsing({a}) failed: {e}")),
            }
        }
        self.laws.push(weak_closed.finish());
    }

    fn structural(&mut self) {
        let alg = self.alg;
        match alg.structure() {
            Structure::Product(left, right) => {
                if !self.cases.exhaustive {
                    self.skip("product-collapsing", "needs an enumerable carrier");
                    return;
                }
                let whole = collapsing_oracle(alg).expect("finite carrier").collapsing;
                let (Ok(l), Ok(r)) = (collapsing_oracle(&**left), collapsing_oracle(&**right)) else {
                    self.skip("product-collapsing", "component carriers not enumerable");
                    return;
                };
                let mut c = self.check("product-collapsing");
                for v in self.elements() {
                    let (x, y) = v.as_pair().expect("product value");
                    let expected = l.collapsing.contains(x) || r.collapsing.contains(y);
                    let actual = whole.contains(v);
                    c.case(expected == actual, &[v], || {
                        format!("{v}: in C(A1×A2) is {actual}, in C(A1)×A2 ∪ A1×C(A2) is {expected}")
                    });
                }
                self.laws.push(c.finish());
            }
            Structure::Lex { base, k } => {
                let mut c = self.check("lex-limit");
                for (a, b) in self.pairs() {
                    let (ta, tb) = (a.as_lex().expect("lex value"), b.as_lex().expect("lex value"));
                    match (lex::gamma(&**base, ta, tb), lex::delta(&**base, ta, tb)) {
                        (Ok(g), Ok(d)) => c.case(d == k + 1 || d <= g, &[a, b], || {
                            format!("γ({a}, {b}) = {g}, δ = {d}")
                        }),
                        (Err(e), _) | (_, Err(e)) => c.case(false, &[a, b], || e.to_string()),
                    }
                }
                self.laws.push(c.finish());
            }
            Structure::Omega { base } => {
                let mut c = self.check("lex-limit");
                for (a, b) in self.pairs() {
                    let (ta, tb) = (a.as_omega().expect("omega value"), b.as_omega().expect("omega value"));
                    match (lex::omega_gamma(&**base, ta, tb), lex::omega_delta(&**base, ta, tb)) {
                        (Ok(g), Ok(d)) => {
                            let ok = match (g, d) {
                                (_, None) => true,
                                (Some(g), Some(d)) => d <= g,
                                (None, Some(_)) => true,
                            };
                            c.case(ok, &[a, b], || format!("γ({a}, {b}) = {g:?}, δ = {d:?}"))
                        }
                        (Err(e), _) | (_, Err(e)) => c.case(false, &[a, b], || e.to_string()),
                    }
                }
                self.laws.push(c.finish());
            }
            Structure::Atomic => {}
        }
    }
}
