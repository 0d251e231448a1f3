//! Property suites that replay the structural facts about chains, degrees and
//! the `eta` construction over exhaustive or seeded instance families.
//!
//! Every suite returns a [`VerificationReport`]. Reports are deterministic for
//! fixed parameters except for `duration_ms`, which
//! [`VerificationReport::canonical_json`] leaves out.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::{self, boundary, cycle_multiple, oriented_cycle_chain, EdgeChain};
use crate::construction::{
    cyclic_identity, eta, eta_prime, generator, h_k, olsak_identities, siggers_identity,
    GeneratorKind, MinorIdentity,
};
use crate::degree::{
    check_unary_degree_laws, coordinate_degree_global, delta, joint_degree, largest_odd_n,
    local_degrees_all_edges, reverse_coordinate, unary_degree,
};
use crate::error::{invalid_parameter, Result};
use crate::graph::{
    fold_hom, is_homomorphism, make_complete, make_cycle, make_dk, make_power, Graph, TupleCodec,
};
use crate::homsearch::{
    budget_from_env, enumerate_homs, for_each_polymorphism, sample_hom, sample_polymorphism,
    SearchConfig,
};
use crate::minion::{
    check_identity, essential_coordinates, is_in_z_leq_n, is_polymorphism, linear_minor, minor,
    pullback, FunctionTable, LinearForm, MinorMap,
};

/// Outcome of one property over a family of instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyRecord {
    pub id: String,
    pub instances: u64,
    pub passed: u64,
    pub counterexample: Option<String>,
}

impl PropertyRecord {
    pub fn new(id: impl Into<String>) -> Self {
        PropertyRecord {
            id: id.into(),
            instances: 0,
            passed: 0,
            counterexample: None,
        }
    }

    /// Records one instance; `describe` is only called for the first failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    /// Records an instance whose check itself may have failed with an error.
    pub fn record_result(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(ok, describe),
            Err(e) => self.record(false, || format!("{}: {e}", describe())),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.instances
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub config: BTreeMap<String, Value>,
    pub properties: Vec<PropertyRecord>,
    pub duration_ms: u128,
}

impl VerificationReport {
    fn new(suite: &str, seed: u64, config: BTreeMap<String, Value>) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            seed,
            config,
            properties: Vec::new(),
            duration_ms: 0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyRecord::all_passed)
    }

    pub fn property(&self, id: &str) -> Option<&PropertyRecord> {
        self.properties.iter().find(|p| p.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// The report without its duration, for byte-level comparison.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serialization");
        if let Value::Object(map) = &mut value {
            map.remove("duration_ms");
        }
        serde_json::to_string_pretty(&value).expect("report serialization")
    }
}

fn timed(mut report: VerificationReport, start: Instant) -> VerificationReport {
    report.duration_ms = start.elapsed().as_millis();
    report
}

fn config(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "chains",
    "unary-degree",
    "local-global",
    "minor-preservation",
    "bounding",
    "appendix-a",
    "essential-arity",
];

/// Parameters shared by the suites; each suite reads the ones it needs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub l: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<VerificationReport> {
    match name {
        "chains" => chain_laws(p.samples.unwrap_or(200), p.seed),
        "unary-degree" => unary_degree_laws(p.m.unwrap_or(9), p.l.unwrap_or(3)),
        "local-global" => local_global(p.k.unwrap_or(5), p.n.unwrap_or(2)),
        "minor-preservation" => {
            minor_preservation(p.k.unwrap_or(5), p.samples.unwrap_or(100), p.seed)
        }
        "bounding" => bounding(
            p.k.unwrap_or(9),
            p.n.unwrap_or(2),
            p.samples.unwrap_or(100),
            p.seed,
        ),
        "appendix-a" => eta_construction(p.k.unwrap_or(9)),
        "essential-arity" => essential_arity(),
        other => Err(invalid_parameter(format!(
            "unknown suite '{other}'; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

fn random_edge_chain<'g>(g: &'g Graph, rng: &mut ChaCha8Rng) -> EdgeChain<'g> {
    let mut w = EdgeChain::zero(g);
    for &(u, v) in g.edges() {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(-3..=3);
            let (a, b) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            w.add_oriented(a, b, c).expect("edge of host");
        }
    }
    w
}

/// Boundary/induced-map compatibility and linearity on random homomorphisms
/// among `C_3, C_4, C_5, C_9, C_5^2`, plus an exhaustive pass over every
/// homomorphism `C_5^2 -> K_3` and every generator edge.
pub fn chain_laws(instances: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report =
        VerificationReport::new("chains", seed, config(&[("instances", json!(instances))]));
    let graphs: Vec<(&str, Graph)> = vec![
        ("C3", make_cycle(3)?),
        ("C4", make_cycle(4)?),
        ("C5", make_cycle(5)?),
        ("C9", make_cycle(9)?),
        ("C5^2", make_power(&make_cycle(5)?, 2)?),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut commute = PropertyRecord::new("boundary-commutes");
    let mut linear = PropertyRecord::new("linearity");
    let mut kernel = PropertyRecord::new("cycle-kernel");
    let mut attempts = 0;
    while (commute.instances as usize) < instances {
        attempts += 1;
        if attempts > 100 * instances.max(1) {
            break;
        }
        let (sname, source) = &graphs[rng.gen_range(0..graphs.len())];
        let (tname, target) = &graphs[rng.gen_range(0..graphs.len())];
        let Some(f) = sample_hom(source, target, rng.gen())? else {
            continue;
        };
        let w = random_edge_chain(source, &mut rng);
        let w2 = random_edge_chain(source, &mut rng);
        let label = || format!("{sname} -> {tname}, f = {f:?}, W = {w:?}");

        let lhs = chain::induced_vertex_map(source, target, &f, &boundary(&w))?;
        let rhs = boundary(&chain::induced_edge_map(source, target, &f, &w)?);
        commute.record(lhs == rhs, label);

        let fe = |x: &EdgeChain<'_>| chain::induced_edge_map(source, target, &f, x);
        let sum = w.add(&w2)?;
        let c: i64 = rng.gen_range(-4..=4);
        let ok = fe(&sum)? == fe(&w)?.add(&fe(&w2)?)?
            && fe(&w.scale(c))? == fe(&w)?.scale(c)
            && boundary(&sum) == boundary(&w).add(&boundary(&w2))?
            && chain::induced_vertex_map(source, target, &f, &boundary(&sum))?
                == chain::induced_vertex_map(source, target, &f, &boundary(&w))?.add(
                    &chain::induced_vertex_map(source, target, &f, &boundary(&w2))?,
                )?;
        linear.record(ok, label);

        if !tname.contains('^') {
            // the image of a random chain is in ker(boundary) exactly when it is d * O_l
            let image = fe(&w)?;
            let d = rng.gen_range(-5..=5);
            let multiple = oriented_cycle_chain(target)?.scale(d);
            let ok = (boundary(&image).is_zero() == cycle_multiple(&image)?.is_some())
                && cycle_multiple(&multiple)? == Some(d);
            kernel.record(ok, || format!("{tname}: image {image:?}, d = {d}"));
        }
    }

    let mut exhaustive = PropertyRecord::new("boundary-commutes-exhaustive");
    let power = &graphs[4].1;
    let k3 = make_complete(3)?;
    for f in enumerate_homs(power, &k3, &SearchConfig::default())? {
        for &(u, v) in power.edges() {
            let w = EdgeChain::edge(power, u, v)?;
            let lhs = chain::induced_vertex_map(power, &k3, &f, &boundary(&w))?;
            let rhs = boundary(&chain::induced_edge_map(power, &k3, &f, &w)?);
            exhaustive.record(lhs == rhs, || format!("f = {f:?}, edge [{u},{v}]"));
        }
    }

    report.properties = vec![commute, linear, kernel, exhaustive];
    Ok(timed(report, start))
}

/// Closed form of the number of proper 3-colourings of `C_m`.
pub fn chromatic_c_k_3(m: usize) -> u64 {
    let base = 1u64 << m;
    if m % 2 == 0 {
        base + 2
    } else {
        base - 2
    }
}

/// The unary degree laws over every homomorphism `C_m -> C_l`.
pub fn unary_degree_laws(m: usize, l: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(
        "unary-degree",
        0,
        config(&[("m", json!(m)), ("l", json!(l))]),
    );
    let (cm, cl) = (make_cycle(m)?, make_cycle(l)?);
    let homs = enumerate_homs(&cm, &cl, &SearchConfig::default())?;
    let mut laws = PropertyRecord::new("degree-laws");
    let mut odd_nonzero = PropertyRecord::new("odd-cycles-nonzero-degree");
    let mut histogram: BTreeMap<i64, u64> = BTreeMap::new();
    for f in &homs {
        let outcome = check_unary_degree_laws(f, l);
        if let Ok(r) = &outcome {
            *histogram.entry(r.degree).or_default() += 1;
            if m % 2 == 1 && l % 2 == 1 {
                odd_nonzero.record(r.degree != 0, || format!("f = {f:?}"));
            }
        }
        laws.record_result(outcome.map(|r| r.all_hold()), || format!("f = {f:?}"));
    }
    report.properties.push(laws);
    if m % 2 == 1 && l % 2 == 1 {
        report.properties.push(odd_nonzero);
    }
    if l == 3 {
        let mut count = PropertyRecord::new("count-matches-chromatic");
        let expected = chromatic_c_k_3(m);
        count.record(homs.len() as u64 == expected, || {
            format!("enumerated {}, closed form {expected}", homs.len())
        });
        report.properties.push(count);
    }
    report
        .config
        .insert("degree_histogram".into(), json!(histogram));
    Ok(timed(report, start))
}

/// Counts all maps `{0,1,2}^2 -> {0,1,2}` preserving the adjacency of `K_3^2`
/// by trying every one of the `3^9` tables.
fn brute_force_binary_k3() -> u64 {
    let adjacent = |a: usize, b: usize| a != b;
    let mut count = 0;
    for code in 0..3usize.pow(9) {
        let mut table = [0usize; 9];
        let mut c = code;
        for slot in table.iter_mut().rev() {
            *slot = c % 3;
            c /= 3;
        }
        let ok = (0..9).all(|u| {
            (0..9).all(|v| {
                let tuple_edge = adjacent(u / 3, v / 3) && adjacent(u % 3, v % 3);
                !tuple_edge || adjacent(table[u], table[v])
            })
        });
        count += ok as u64;
    }
    count
}

/// `Pol(K_3, K_3)` in arities 2 and 3: counts and essential arity.
pub fn essential_arity() -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("essential-arity", 0, BTreeMap::new());
    let k3 = make_complete(3)?;
    let budget = budget_from_env();
    let mut arity = PropertyRecord::new("essential-arity-at-most-1");
    let mut counts = BTreeMap::new();
    for n in [2, 3] {
        let mut count = 0u64;
        for_each_polymorphism(3, n, &k3, budget, |f| {
            count += 1;
            let ess = essential_coordinates(&f);
            arity.record(ess.len() <= 1, || {
                format!("arity {n}: {f:?} has essential {ess:?}")
            });
            ControlFlow::Continue(())
        })?;
        counts.insert(n, count);
    }
    let mut binary = PropertyRecord::new("binary-count");
    let brute = brute_force_binary_k3();
    binary.record(counts[&2] == 12 && brute == 12, || {
        format!(
            "search found {}, brute force found {brute}, expected 12",
            counts[&2]
        )
    });
    let mut ternary = PropertyRecord::new("ternary-count");
    ternary.record(counts[&3] == 18, || {
        format!("search found {}, expected 18", counts[&3])
    });
    report.properties = vec![binary, ternary, arity];
    Ok(timed(report, start))
}

/// Local degrees along every edge of `C_k^(n-1)` agree with each other and
/// with the global degree, for every `f` in `Pol(C_k, K_3)^(n)`.
pub fn local_global(k: usize, n: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(
        "local-global",
        0,
        config(&[("k", json!(k)), ("n", json!(n))]),
    );
    if n < 2 {
        return Err(invalid_parameter("local degrees need arity >= 2"));
    }
    let k3 = make_complete(3)?;
    let mut independent = PropertyRecord::new("edge-independence");
    let mut agrees = PropertyRecord::new("local-equals-global");
    let mut failure = None;
    for_each_polymorphism(k, n, &k3, budget_from_env(), |f| {
        for i in 0..n {
            let outcome = local_degrees_all_edges(&f, i)
                .and_then(|locals| Ok((locals, coordinate_degree_global(&f, i)?)));
            match outcome {
                Ok((locals, global)) => {
                    independent.record(locals.iter().all(|&d| d == locals[0]), || {
                        format!("coordinate {i}: locals {locals:?} for {}", f.to_json())
                    });
                    agrees.record(locals[0] == global, || {
                        format!(
                            "coordinate {i}: local {} vs global {global} for {}",
                            locals[0],
                            f.to_json()
                        )
                    });
                }
                Err(e) => {
                    failure = Some(e);
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = failure {
        agrees.record(false, || e.to_string());
    }
    report.properties = vec![independent, agrees];
    Ok(timed(report, start))
}

/// A polymorphism with a planted dummy coordinate: a seeded unary or binary
/// polymorphism spread over `n` coordinates avoiding `planted`.
fn planted_dummy(rng: &mut ChaCha8Rng) -> Result<(FunctionTable, usize)> {
    let k3 = make_complete(3)?;
    let k = [5, 7, 9][rng.gen_range(0..3)];
    let n = rng.gen_range(2..=3);
    let inner_arity = rng.gen_range(1..n);
    let planted = rng.gen_range(0..n);
    let inner =
        sample_polymorphism(k, inner_arity, &k3, rng.gen())?.expect("odd cycles map to K_3");
    let free: Vec<usize> = (0..n).filter(|&j| j != planted).collect();
    let image = (0..inner_arity)
        .map(|_| free[rng.gen_range(0..free.len())])
        .collect();
    Ok((minor(&inner, &MinorMap::new(image, n)?)?, planted))
}

/// Degree behaviour under minors for every binary polymorphism of `C_k`, and
/// the dummy-coordinate law on `planted` seeded instances.
pub fn minor_preservation(k: usize, planted: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(
        "minor-preservation",
        seed,
        config(&[("k", json!(k)), ("planted", json!(planted))]),
    );
    let k3 = make_complete(3)?;
    let diagonal = MinorMap::new(vec![0, 0], 1)?;
    let maps: Vec<MinorMap> = MinorMap::all(2, 1)
        .into_iter()
        .chain(MinorMap::all(2, 2))
        .collect();
    let mut diag = PropertyRecord::new("diagonal-degree-sum");
    let mut joint = PropertyRecord::new("joint-degree-sum");
    let mut commutes = PropertyRecord::new("delta-commutes-with-minors");
    let mut reversal = PropertyRecord::new("reversal-flips-degree");
    let mut dummy_zero = PropertyRecord::new("dummy-implies-zero-degree");
    for_each_polymorphism(k, 2, &k3, budget_from_env(), |f| {
        let label = || f.to_json();
        let outcome = delta(&f);
        let Ok(df) = outcome else {
            diag.record(false, || format!("{}: {}", label(), outcome.unwrap_err()));
            return ControlFlow::Continue(());
        };
        let g = minor(&f, &diagonal).expect("binary table");
        diag.record_result(
            unary_degree(g.values(), 3).map(|d| d == df.coeffs[0] + df.coeffs[1]),
            label,
        );
        joint.record_result(
            joint_degree(&f).map(|d| d == df.coeffs[0] + df.coeffs[1]),
            label,
        );
        for pi in &maps {
            let lhs = minor(&f, pi).and_then(|g| delta(&g));
            let rhs = linear_minor(&df, pi);
            commutes.record_result(lhs.and_then(|a| Ok(a == rhs?)), || {
                format!("pi = {:?}, f = {}", pi.image(), label())
            });
        }
        let flipped = reverse_coordinate(&f, 0).and_then(|r| delta(&r));
        reversal.record_result(
            flipped.map(|d| d.coeffs == vec![-df.coeffs[0], df.coeffs[1]]),
            label,
        );
        // contrapositive of the dummy law
        let ess = essential_coordinates(&f);
        for i in 0..2 {
            if df.coeffs[i] != 0 {
                dummy_zero.record(ess.contains(&i), || {
                    format!("coordinate {i} of {}", label())
                });
            }
        }
        ControlFlow::Continue(())
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planted_rec = PropertyRecord::new("planted-dummy-degree-zero");
    for _ in 0..planted {
        let (f, p) = planted_dummy(&mut rng)?;
        let ess = essential_coordinates(&f);
        planted_rec.record_result(
            delta(&f).map(|d| d.coeffs[p] == 0 && !ess.contains(&p)),
            || format!("planted {p} in k={}, n={}", f.domain(), f.arity()),
        );
    }
    report.properties = vec![diag, joint, commutes, reversal, dummy_zero, planted_rec];
    Ok(timed(report, start))
}

/// `delta(f)` lies in `Z_<=N` for every enumerated (or, past the budget,
/// sampled) `f` in `Pol(C_k, K_3)^(n)`, and commutes with pullback along the
/// fold `C_k -> C_m` for odd `m < k`.
pub fn bounding(k: usize, n: usize, samples: usize, seed: u64) -> Result<VerificationReport> {
    let start = Instant::now();
    let big_n = largest_odd_n(k)?;
    let k3 = make_complete(3)?;
    let mut member = PropertyRecord::new("delta-in-z-leq-n");
    let mut fold_rec = PropertyRecord::new("delta-commutes-with-fold-pullback");
    let ck = make_cycle(k)?;
    let check = |f: &FunctionTable, member: &mut PropertyRecord| {
        member.record_result(
            delta(f).and_then(|d| is_in_z_leq_n(&d, big_n as i64)),
            || f.to_json(),
        );
    };
    let mut mode = "exhaustive";
    let outcome = for_each_polymorphism(k, n, &k3, budget_from_env(), |f| {
        check(&f, &mut member);
        ControlFlow::Continue(())
    });
    match outcome {
        Ok(_) => {}
        Err(crate::Error::BudgetExceeded { .. }) => {
            mode = "sampled";
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let f = sample_polymorphism(k, n, &k3, rng.gen())?.expect("odd cycles map to K_3");
                check(&f, &mut member);
            }
        }
        Err(e) => return Err(e),
    }
    // pull the smaller cycle's polymorphisms back to C_k
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for m in (3..k).step_by(2) {
        let cm = make_cycle(m)?;
        let fold = fold_hom(k, m)?;
        for _ in 0..samples.min(20) {
            let f = sample_polymorphism(m, n, &k3, rng.gen())?.expect("odd cycles map to K_3");
            let ok = pullback(&f, &ck, &cm, &fold).and_then(|g| Ok(delta(&g)? == delta(&f)?));
            fold_rec.record_result(ok, || format!("m = {m}, f = {}", f.to_json()));
        }
    }
    let mut report = VerificationReport::new(
        "bounding",
        seed,
        config(&[
            ("k", json!(k)),
            ("n", json!(n)),
            ("N", json!(big_n)),
            ("mode", json!(mode)),
            ("samples", json!(samples)),
        ]),
    );
    report.properties = vec![member, fold_rec];
    Ok(timed(report, start))
}

/// Every sign pattern over `N` variables and all of its minors of arity at
/// most 3, deduplicated and sorted.
pub fn bounded_sign_forms(big_n: usize) -> Vec<LinearForm> {
    let mut forms = BTreeSet::new();
    for mask in 0..(1usize << big_n) {
        let pattern = LinearForm::new(
            (0..big_n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        );
        for arity in 1..=3 {
            for pi in MinorMap::all(big_n, arity) {
                forms.insert(linear_minor(&pattern, &pi).expect("matching arity").coeffs);
            }
        }
    }
    forms.into_iter().map(LinearForm::new).collect()
}

fn identity_counterexample(f: &FunctionTable, id: &MinorIdentity) -> String {
    let (Ok(a), Ok(b)) = (minor(f, &id.lhs), minor(f, &id.rhs)) else {
        return "minor failed".into();
    };
    let codec = TupleCodec::new(f.domain(), id.lhs.target_arity()).expect("small arity");
    match a.values().iter().zip(b.values()).position(|(x, y)| x != y) {
        Some(idx) => format!(
            "{}: variables {:?} give {} vs {}",
            id.name,
            codec.decode(idx),
            a.values()[idx],
            b.values()[idx]
        ),
        None => format!("{}: sides agree", id.name),
    }
}

/// The reverse construction at `k`: the colouring `h_k`, validity and minor
/// preservation of `eta'` and `eta`, the round trip `delta . eta = id`, and
/// the cyclic, Siggers and Olsak identities on `eta` of their generators.
pub fn eta_construction(k: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let big_n = largest_odd_n(k)?;
    let k0 = 3 * big_n;
    let mut report = VerificationReport::new(
        "appendix-a",
        0,
        config(&[("k", json!(k)), ("N", json!(big_n))]),
    );
    let (ck, c3) = (make_cycle(k)?, make_cycle(3)?);

    let mut colouring = PropertyRecord::new("h-k-colours-d-k");
    let hk = h_k(k0)?;
    colouring.record(is_homomorphism(&make_dk(k0, big_n)?, &c3, &hk)?, || {
        format!("h = {hk:?}")
    });
    if k0 == 9 {
        colouring.record(hk == [0, 1, 0, 1, 2, 1, 2, 0, 2], || {
            format!("h_9 = {hk:?}")
        });
    }

    let forms = bounded_sign_forms(big_n);
    let dk = make_dk(k, big_n)?;
    let mut prime_valid = PropertyRecord::new("eta-prime-polymorphism");
    let mut valid = PropertyRecord::new("eta-polymorphism");
    let mut roundtrip = PropertyRecord::new("delta-eta-identity");
    for f in &forms {
        let label = || format!("{:?}", f.coeffs);
        prime_valid.record_result(
            eta_prime(f, k).and_then(|t| is_polymorphism(&t, &ck, &dk)),
            label,
        );
        match eta(f, k) {
            Ok(t) => {
                valid.record_result(is_polymorphism(&t, &ck, &c3), label);
                roundtrip.record_result(delta(&t).map(|d| d == *f), || {
                    format!("{:?} -> {:?}", f.coeffs, delta(&t).map(|d| d.coeffs))
                });
            }
            Err(e) => valid.record(false, || format!("{}: {e}", label())),
        }
    }

    let mut minors = PropertyRecord::new("eta-minor-preservation");
    for gen in forms.iter().filter(|f| f.arity() == 3 && f.abs_sum() == 3) {
        let table = eta(gen, k)?;
        for arity in 1..=3 {
            for pi in MinorMap::all(3, arity) {
                let lhs = eta(&linear_minor(gen, &pi)?, k)?;
                let rhs = minor(&table, &pi)?;
                minors.record(lhs == rhs, || {
                    format!("{:?} along {:?}", gen.coeffs, pi.image())
                });
            }
        }
    }

    let mut cyclic = PropertyRecord::new("cyclic-identity");
    for m in (3..=big_n).step_by(2) {
        let g = generator(GeneratorKind::Cyclic(m), big_n)?;
        let t = eta(&g.form, k)?;
        let id = cyclic_identity(m);
        cyclic.record(check_identity(&t, &id.lhs, &id.rhs)?, || {
            identity_counterexample(&t, &id)
        });
    }
    report.properties = vec![colouring, prime_valid, valid, roundtrip, minors, cyclic];

    if big_n >= 3 {
        let mut siggers = PropertyRecord::new("siggers-identity");
        let t = eta(&generator(GeneratorKind::Siggers, big_n)?.form, k)?;
        let id = siggers_identity();
        siggers.record(check_identity(&t, &id.lhs, &id.rhs)?, || {
            identity_counterexample(&t, &id)
        });

        let mut olsak = PropertyRecord::new("olsak-identities");
        let t = eta(&generator(GeneratorKind::Olsak, big_n)?.form, k)?;
        for id in olsak_identities() {
            olsak.record(check_identity(&t, &id.lhs, &id.rhs)?, || {
                identity_counterexample(&t, &id)
            });
        }
        report.properties.push(siggers);
        report.properties.push(olsak);
    }
    Ok(timed(report, start))
}
