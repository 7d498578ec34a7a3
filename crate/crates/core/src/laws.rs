//! Seeded randomized checks of the algebraic laws.
//!
//! Every suite draws its cases from a ChaCha stream keyed by
//! `(seed, suite, case)`, so a verdict and its counterexample depend only
//! on the seed and case count, never on thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aggregation::{pfwa_geometric, pfwa_linear, WeightVector};
use crate::par::{self, Execution};
use crate::pfn::{OrderKind, Pfn, COMPARE_EPS};
use crate::soft_set::{null_set, whole_set, AlternativeId, PfParameter, PhiSoftSet};

/// Tolerance for the closed-form vs. fold aggregation check.
pub const ORACLE_EPS: f64 = 1e-9;

type Check = fn(&mut ChaCha8Rng) -> Result<(), String>;

/// Every suite, in execution order.
pub const SUITES: &[(&str, Check)] = &[
    ("closure", closure),
    ("operation-laws", operation_laws),
    ("membership-es-partial-order", membership_es_partial_order),
    ("score-accuracy-equals-es-membership", order_equivalence),
    ("equal-score-tie-structure", tie_structure),
    ("additive-monotonicity", additive_monotonicity),
    ("scalar-monotonicity", scalar_monotonicity),
    ("expectation-score-monotone", expectation_monotone),
    ("null-whole-identities", null_whole_identities),
    ("subset-order", subset_order),
    ("combination-operators", combination_operators),
    ("pfwa-closed-form-vs-fold", pfwa_oracle),
    ("aggregation-bounds", aggregation_bounds),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawConfig {
    pub cases: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { cases: 10_000, seed: 0x5eed, execution: Execution::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub case: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub seed: u64,
    pub suites: Vec<SuiteOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }
}

/// Deterministic generator for one case of one suite.
pub fn case_rng(seed: u64, suite: usize, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(case as u64);
    rng
}

pub fn run_suite(index: usize, cfg: &LawConfig) -> SuiteOutcome {
    let (name, check) = SUITES[index];
    let counterexample = par::find_first(cfg.execution, cfg.cases, |case| {
        let mut rng = case_rng(cfg.seed, index, case);
        check(&mut rng).err().map(|detail| Counterexample { case, detail })
    });
    SuiteOutcome { name, cases: cfg.cases, counterexample }
}

pub fn run_all(cfg: &LawConfig) -> LawReport {
    LawReport {
        seed: cfg.seed,
        suites: (0..SUITES.len()).map(|i| run_suite(i, cfg)).collect(),
    }
}

pub fn suite_index(name: &str) -> Option<usize> {
    SUITES.iter().position(|(n, _)| *n == name)
}

// ---------------------------------------------------------------- generators

/// Random PFN: mostly uniform over the quarter disk, with a share of
/// one-decimal grid points, boundary points and corners so that ties and
/// edge cases actually occur.
pub fn random_pfn(rng: &mut impl Rng) -> Pfn {
    match rng.random_range(0..10) {
        0 | 1 => {
            let m = rng.random_range(0..=10);
            let max_n = (0..=10).rev().find(|n| m * m + n * n <= 100).unwrap();
            let n = rng.random_range(0..=max_n);
            Pfn::new(m as f64 / 10.0, n as f64 / 10.0).unwrap()
        }
        2 => {
            let theta = rng.random_range(0.0..=std::f64::consts::FRAC_PI_2);
            Pfn::new(theta.cos().clamp(0.0, 1.0), theta.sin().clamp(0.0, 1.0)).unwrap()
        }
        3 => [Pfn::ZERO, Pfn::ONE, Pfn::new(0.0, 0.0).unwrap()][rng.random_range(0..3)],
        _ => loop {
            let (m, n): (f64, f64) = (rng.random(), rng.random());
            if m * m + n * n <= 1.0 {
                break Pfn::new(m, n).unwrap();
            }
        },
    }
}

pub fn random_scalar(rng: &mut impl Rng) -> f64 {
    if rng.random_bool(0.2) {
        [0.5, 1.0, 2.0, 3.0][rng.random_range(0..4)]
    } else {
        rng.random_range(0.05..5.0)
    }
}

/// Weights of length `k`, sometimes with zeros.
pub fn random_weights(rng: &mut impl Rng, k: usize) -> WeightVector {
    loop {
        let raw: Vec<f64> = (0..k)
            .map(|_| if rng.random_bool(0.1) { 0.0 } else { rng.random::<f64>() })
            .collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 {
            if let Ok(w) = WeightVector::new(raw.iter().map(|x| x / total).collect()) {
                return w;
            }
        }
    }
}

const PARAM_POOL: [&str; 6] = ["s1", "s2", "s3", "s4", "s5", "s6"];

fn universe(k: usize) -> Vec<AlternativeId> {
    (1..=k).map(|i| AlternativeId::new(format!("p{i}")).unwrap()).collect()
}

fn random_names(rng: &mut impl Rng) -> Vec<&'static str> {
    loop {
        let names: Vec<_> = PARAM_POOL.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        if !names.is_empty() {
            return names;
        }
    }
}

pub fn random_set_over(rng: &mut impl Rng, alts: usize, names: &[&str]) -> PhiSoftSet {
    let params = names
        .iter()
        .map(|n| PfParameter::new(*n, random_pfn(rng)).unwrap())
        .collect();
    let rows = (0..alts)
        .map(|_| (0..names.len()).map(|_| random_pfn(rng)).collect())
        .collect();
    PhiSoftSet::from_rows(universe(alts), params, rows).unwrap()
}

pub fn random_set(rng: &mut impl Rng, alts: usize) -> PhiSoftSet {
    let names = random_names(rng);
    random_set_over(rng, alts, &names)
}

/// A superset of `base`: every value raised in the lattice, and possibly
/// extra parameters.
fn random_superset(rng: &mut impl Rng, base: &PhiSoftSet) -> PhiSoftSet {
    let mut names: Vec<&str> = base.parameters().iter().map(|p| p.name()).collect();
    for extra in PARAM_POOL {
        if !names.contains(&extra) && rng.random_bool(0.3) {
            names.push(extra);
        }
    }
    let params = names
        .iter()
        .map(|n| {
            let imp = lift(rng, base.parameter(n).map(|p| p.importance()));
            PfParameter::new(*n, imp).unwrap()
        })
        .collect();
    let rows = base
        .universe()
        .iter()
        .map(|a| names.iter().map(|n| lift(rng, base.cell(a.as_str(), n))).collect())
        .collect();
    PhiSoftSet::from_rows(base.universe().to_vec(), params, rows).unwrap()
}

fn lift(rng: &mut impl Rng, v: Option<Pfn>) -> Pfn {
    let r = random_pfn(rng);
    match v {
        Some(v) if rng.random_bool(0.3) => v,
        Some(v) => v.join(&r),
        None => r,
    }
}

// ---------------------------------------------------------------- helpers

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: &Pfn, b: &Pfn, law: &str) -> Result<(), String> {
    ensure(a.approx_eq(b), || format!("{law}: {a:?} != {b:?}"))
}

fn le(x: f64, y: f64) -> bool {
    x <= y + COMPARE_EPS
}

fn eq(x: f64, y: f64) -> bool {
    (x - y).abs() <= COMPARE_EPS
}

fn cmp_le(a: &Pfn, b: &Pfn, order: OrderKind) -> bool {
    a.compare(b, order).is_le()
}

// ---------------------------------------------------------------- PFN suites

fn closure(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (a, b, alpha) = (random_pfn(rng), random_pfn(rng), random_scalar(rng));
    let results = [
        ("add_p", a.add_p(&b)),
        ("mul_p", a.mul_p(&b)),
        ("scalar_mul", a.scalar_mul(alpha).unwrap()),
        ("power", a.power(alpha).unwrap()),
        ("join", a.join(&b)),
        ("meet", a.meet(&b)),
        ("complement", a.complement()),
    ];
    for (op, r) in results {
        ensure(r.is_valid(), || format!("{op}({a:?}, {b:?}, alpha={alpha}) = {r:?} is not a PFN"))?;
    }
    let i = a.indeterminacy();
    ensure((0.0..=1.0).contains(&i), || format!("indeterminacy({a:?}) = {i}"))?;
    ensure((-1.0..=1.0).contains(&a.score()), || format!("score({a:?}) out of range"))?;
    ensure((0.0..=1.0).contains(&a.expectation_score()), || format!("ES({a:?}) out of range"))
}

fn operation_laws(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (m, n) = (random_pfn(rng), random_pfn(rng));
    let (alpha, a1, a2) = (random_scalar(rng), random_scalar(rng), random_scalar(rng));
    let ctx = || format!("M={m:?} N={n:?} alpha={alpha} a1={a1} a2={a2}");
    let s = |x: &Pfn, k: f64| x.scalar_mul(k).unwrap();
    let pw = |x: &Pfn, k: f64| x.power(k).unwrap();

    close(&m.add_p(&n), &n.add_p(&m), &format!("(i) M+N = N+M; {}", ctx()))?;
    close(&m.mul_p(&n), &n.mul_p(&m), &format!("(ii) MxN = NxM; {}", ctx()))?;
    close(
        &s(&m.add_p(&n), alpha),
        &s(&m, alpha).add_p(&s(&n, alpha)),
        &format!("(iii) a(M+N) = aM + aN; {}", ctx()),
    )?;
    close(
        &s(&m, a1).add_p(&s(&m, a2)),
        &s(&m, a1 + a2),
        &format!("(iv) a1 M + a2 M = (a1+a2) M; {}", ctx()),
    )?;
    close(
        &pw(&m.mul_p(&n), alpha),
        &pw(&m, alpha).mul_p(&pw(&n, alpha)),
        &format!("(v) (MxN)^a = M^a x N^a; {}", ctx()),
    )?;
    close(
        &pw(&m, a1).mul_p(&pw(&m, a2)),
        &pw(&m, a1 + a2),
        &format!("(vi) M^a1 x M^a2 = M^(a1+a2); {}", ctx()),
    )?;
    close(
        &m.mul_p(&n),
        &m.complement().add_p(&n.complement()).complement(),
        &format!("duality of x and +; {}", ctx()),
    )?;
    close(&pw(&m, alpha), &s(&m.complement(), alpha).complement(), &format!("duality of power and scalar; {}", ctx()))
}

fn membership_es_partial_order(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let o = OrderKind::MembershipThenES;
    let a = random_pfn(rng);
    let b = if rng.random_bool(0.2) { a } else { random_pfn(rng) };
    let c = if rng.random_bool(0.2) { b } else { random_pfn(rng) };
    ensure(cmp_le(&a, &a, o), || format!("reflexivity fails for {a:?}"))?;
    if cmp_le(&a, &b, o) && cmp_le(&b, &a, o) {
        let same = eq(a.m(), b.m()) && (a.n() * a.n() - b.n() * b.n()).abs() <= 4.0 * COMPARE_EPS;
        ensure(same, || format!("antisymmetry fails: {a:?} <= {b:?} <= {a:?}"))?;
    }
    if cmp_le(&a, &b, o) && cmp_le(&b, &c, o) {
        ensure(cmp_le(&a, &c, o), || format!("transitivity fails: {a:?} <= {b:?} <= {c:?}"))?;
    }
    Ok(())
}

fn order_equivalence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_pfn(rng);
    let b = if rng.random_bool(0.1) { a } else { random_pfn(rng) };
    let sa = a.compare(&b, OrderKind::ScoreAccuracy);
    let em = a.compare(&b, OrderKind::ESThenMembership);
    ensure(sa == em, || format!("{a:?} vs {b:?}: (SF,AF) gives {sa:?}, (ES,m) gives {em:?}"))
}

/// A partner with the same score as `a`.
fn equal_score_partner(rng: &mut impl Rng, a: &Pfn) -> Pfn {
    if rng.random_bool(0.2) {
        return *a;
    }
    let (ma2, na2) = (a.m() * a.m(), a.n() * a.n());
    let lo = (ma2 - na2).max(0.0);
    let hi = ((1.0 + ma2 - na2) / 2.0).min(1.0);
    let mb2 = if hi > lo { rng.random_range(lo..=hi) } else { lo };
    let nb2 = (na2 + mb2 - ma2).max(0.0);
    Pfn::new(mb2.sqrt(), nb2.sqrt()).unwrap()
}

fn tie_structure(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_pfn(rng);
    let b = equal_score_partner(rng, &a);
    for (x, y) in [(a, b), (b, a)] {
        let sf_eq = eq(x.score(), y.score());
        let es_eq = eq(x.expectation_score(), y.expectation_score());
        let conds = [
            sf_eq && le(x.accuracy(), y.accuracy()),
            es_eq && le(x.m(), y.m()),
            es_eq && le(x.n(), y.n()),
            sf_eq && le(x.m(), y.m()),
            sf_eq && le(x.n(), y.n()),
        ];
        ensure(conds.iter().all(|&c| c == conds[0]), || {
            format!("conditions disagree for {x:?}, {y:?}: {conds:?}")
        })?;
    }
    Ok(())
}

fn additive_monotonicity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let o = OrderKind::MembershipThenES;
    let (m, n) = (random_pfn(rng), random_pfn(rng));
    let k = if rng.random_bool(0.5) { n.join(&random_pfn(rng)) } else { random_pfn(rng) };
    if cmp_le(&n, &k, o) {
        let (l, r) = (m.add_p(&n), m.add_p(&k));
        ensure(cmp_le(&l, &r, o), || format!("N={n:?} <= K={k:?} but M+N={l:?} > M+K={r:?} (M={m:?})"))?;
    }
    Ok(())
}

fn scalar_monotonicity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let o = OrderKind::MembershipThenES;
    let (m, n) = (random_pfn(rng), random_pfn(rng));
    let alpha = random_scalar(rng);
    if cmp_le(&m, &n, o) {
        let (l, r) = (m.scalar_mul(alpha).unwrap(), n.scalar_mul(alpha).unwrap());
        ensure(cmp_le(&l, &r, o), || format!("M={m:?} <= N={n:?} but {alpha}M={l:?} > {alpha}N={r:?}"))?;
    }
    let (x, y) = (random_scalar(rng), random_scalar(rng));
    let (a1, a2) = if x <= y { (x, y) } else { (y, x) };
    let (l, r) = (m.scalar_mul(a1).unwrap(), m.scalar_mul(a2).unwrap());
    ensure(cmp_le(&l, &r, o), || format!("{a1} <= {a2} but {a1}M={l:?} > {a2}M={r:?} (M={m:?})"))
}

fn expectation_monotone(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_pfn(rng);
    ensure(a.expectation_score() == (a.score() + 1.0) / 2.0, || {
        format!("ES({a:?}) != (SF+1)/2")
    })?;
    let room_m = (1.0 - a.n() * a.n()).sqrt() - a.m();
    if room_m > 1e-9 {
        let up = Pfn::new(a.m() + rng.random_range(0.0..room_m).max(1e-9), a.n()).unwrap();
        ensure(up.expectation_score() > a.expectation_score(), || {
            format!("ES not increasing in m: {a:?} -> {up:?}")
        })?;
    }
    let room_n = (1.0 - a.m() * a.m()).sqrt() - a.n();
    if room_n > 1e-9 {
        let up = Pfn::new(a.m(), a.n() + rng.random_range(0.0..room_n).max(1e-9)).unwrap();
        ensure(up.expectation_score() < a.expectation_score(), || {
            format!("ES not decreasing in n: {a:?} -> {up:?}")
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------- set suites

fn set_eq(a: &PhiSoftSet, b: &PhiSoftSet, law: &str, x: &PhiSoftSet) -> Result<(), String> {
    ensure(a.equals(b), || format!("{law} fails for {x:?}"))
}

fn null_whole_identities(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let alts = rng.random_range(1..=5);
    let x = random_set(rng, alts);
    let names: Vec<&str> = x.parameters().iter().map(|p| p.name()).collect();
    let null = null_set(x.universe().to_vec(), names.iter().copied()).unwrap();
    let whole = whole_set(x.universe().to_vec(), names.iter().copied()).unwrap();

    let eu = |a: &PhiSoftSet, b: &PhiSoftSet| a.extended_union(b).unwrap();
    let ei = |a: &PhiSoftSet, b: &PhiSoftSet| a.extended_intersection(b).unwrap();
    let ru = |a: &PhiSoftSet, b: &PhiSoftSet| a.restricted_union(b).unwrap();
    let ri = |a: &PhiSoftSet, b: &PhiSoftSet| a.restricted_intersection(b).unwrap();

    set_eq(&eu(&x, &x), &x, "(i) X u_E X = X", &x)?;
    set_eq(&ru(&x, &x), &x, "(i) X u_R X = X", &x)?;
    set_eq(&ei(&x, &x), &x, "(ii) X n_E X = X", &x)?;
    set_eq(&ri(&x, &x), &x, "(ii) X n_R X = X", &x)?;
    set_eq(&eu(&x, &null), &x, "(iii) X u_E null = X", &x)?;
    set_eq(&ru(&x, &null), &x, "(iii) X u_R null = X", &x)?;
    set_eq(&ei(&x, &null), &null, "(iv) X n_E null = null", &x)?;
    set_eq(&ri(&x, &null), &null, "(iv) X n_R null = null", &x)?;
    set_eq(&eu(&x, &whole), &whole, "(v) X u_E whole = whole", &x)?;
    set_eq(&ru(&x, &whole), &whole, "(v) X u_R whole = whole", &x)?;
    set_eq(&ei(&x, &whole), &x, "(vi) X n_E whole = X", &x)?;
    set_eq(&ri(&x, &whole), &x, "(vi) X n_R whole = X", &x)
}

fn subset_order(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let alts = rng.random_range(1..=4);
    let a = random_set(rng, alts);
    let b = match rng.random_range(0..4) {
        0 => a.clone(),
        1 => random_set(rng, alts),
        _ => random_superset(rng, &a),
    };
    let c = match rng.random_range(0..4) {
        0 => b.clone(),
        1 => random_set(rng, alts),
        _ => random_superset(rng, &b),
    };
    if a.is_subset(&b) && b.is_subset(&c) {
        ensure(a.is_subset(&c), || format!("transitivity fails: {a:?} <= {b:?} <= {c:?}"))?;
    }
    if a.is_subset(&b) && b.is_subset(&a) {
        ensure(a.equals(&b), || format!("antisymmetry fails: {a:?} vs {b:?}"))?;
    }
    if a.equals(&b) && c.equals(&a) {
        ensure(a.equals(&c), || format!("equality not transitive: {a:?}, {b:?}, {c:?}"))?;
    }
    ensure(a.is_subset(&a), || format!("reflexivity fails: {a:?}"))
}

fn combination_operators(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let alts = rng.random_range(1..=4);
    let x = random_set(rng, alts);
    let y = random_set(rng, alts);
    let ctx = || format!("X={x:?} Y={y:?}");

    let eu = x.extended_union(&y).unwrap();
    let ei = x.extended_intersection(&y).unwrap();
    ensure(eu.equals(&y.extended_union(&x).unwrap()), || format!("u_E not commutative: {}", ctx()))?;
    ensure(ei.equals(&y.extended_intersection(&x).unwrap()), || format!("n_E not commutative: {}", ctx()))?;

    let shared: Vec<&str> = x
        .parameters()
        .iter()
        .map(|p| p.name())
        .filter(|n| y.parameter(n).is_some())
        .collect();
    if shared.is_empty() {
        ensure(x.restricted_union(&y).is_err(), || format!("u_R accepted disjoint sets: {}", ctx()))?;
        return Ok(());
    }
    let ru = x.restricted_union(&y).unwrap();
    let ri = x.restricted_intersection(&y).unwrap();
    ensure(ru.equals(&y.restricted_union(&x).unwrap()), || format!("u_R not commutative: {}", ctx()))?;
    ensure(ri.equals(&y.restricted_intersection(&x).unwrap()), || format!("n_R not commutative: {}", ctx()))?;
    ensure(eu.project(&shared).unwrap().equals(&ru), || format!("u_E and u_R disagree on shared parameters: {}", ctx()))?;
    ensure(ei.project(&shared).unwrap().equals(&ri), || format!("n_E and n_R disagree on shared parameters: {}", ctx()))?;

    for name in &shared {
        for alt in x.universe() {
            let (a, b) = (x.cell(alt.as_str(), name).unwrap(), y.cell(alt.as_str(), name).unwrap());
            let (u, i) = (ru.cell(alt.as_str(), name).unwrap(), ri.cell(alt.as_str(), name).unwrap());
            ensure(a.lattice_le(&u) && b.lattice_le(&u), || format!("union does not dominate at ({alt}, {name}): {}", ctx()))?;
            ensure(i.lattice_le(&a) && i.lattice_le(&b), || format!("intersection not dominated at ({alt}, {name}): {}", ctx()))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- aggregation suites

/// `ω₁π₁ +_P ω₂π₂ +_P ⋯` built from the binary operations.
pub fn pfwa_fold(values: &[Pfn], w: &WeightVector) -> Pfn {
    values
        .iter()
        .zip(w.as_slice())
        .filter(|(_, &wi)| wi > 0.0)
        .map(|(v, &wi)| v.scalar_mul(wi).expect("positive weight"))
        .fold(Pfn::ZERO, |acc, t| acc.add_p(&t))
}

fn pfwa_oracle(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let k = rng.random_range(1..=8);
    let values: Vec<Pfn> = (0..k).map(|_| random_pfn(rng)).collect();
    let w = random_weights(rng, k);
    let closed = pfwa_geometric(&values, &w).unwrap();
    let folded = pfwa_fold(&values, &w);
    ensure(closed.approx_eq_within(&folded, ORACLE_EPS), || {
        format!("closed form {closed:?} vs fold {folded:?} for {values:?} w={:?}", w.as_slice())
    })
}

fn aggregation_bounds(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let k = rng.random_range(1..=8);
    let values: Vec<Pfn> = (0..k).map(|_| random_pfn(rng)).collect();
    let w = random_weights(rng, k);
    let g = pfwa_geometric(&values, &w).unwrap();
    let ctx = || format!("{values:?} w={:?}", w.as_slice());

    let used: Vec<&Pfn> = values.iter().zip(w.as_slice()).filter(|(_, &x)| x > 0.0).map(|(v, _)| v).collect();
    let lo_m = used.iter().map(|v| v.m()).fold(f64::INFINITY, f64::min);
    let hi_m = used.iter().map(|v| v.m()).fold(0.0, f64::max);
    let lo_n = used.iter().map(|v| v.n()).fold(f64::INFINITY, f64::min);
    let hi_n = used.iter().map(|v| v.n()).fold(0.0, f64::max);
    ensure(le(lo_m, g.m()) && le(g.m(), hi_m), || format!("m out of bounds: {g:?} for {}", ctx()))?;
    ensure(le(lo_n, g.n()) && le(g.n(), hi_n), || format!("n out of bounds: {g:?} for {}", ctx()))?;

    let v = values[0];
    let same = vec![v; k];
    ensure(pfwa_geometric(&same, &w).unwrap().approx_eq(&v), || format!("geometric not idempotent at {v:?}"))?;
    ensure(pfwa_linear(&same, &w).unwrap().approx_eq(&v), || format!("linear not idempotent at {v:?}"))?;

    let mut order: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let pv: Vec<Pfn> = order.iter().map(|&i| values[i]).collect();
    let pw = WeightVector::new(order.iter().map(|&i| w.as_slice()[i]).collect()).unwrap();
    ensure(pfwa_geometric(&pv, &pw).unwrap().approx_eq(&g), || format!("geometric not permutation invariant: {}", ctx()))?;
    ensure(
        pfwa_linear(&pv, &pw).unwrap().approx_eq(&pfwa_linear(&values, &w).unwrap()),
        || format!("linear not permutation invariant: {}", ctx()),
    )?;

    // raise one membership (or non-membership) within the disk
    let j = rng.random_range(0..k);
    let x = values[j];
    let m_room = (1.0 - x.n() * x.n()).sqrt() - x.m();
    if m_room > 0.0 {
        let mut up = values.clone();
        up[j] = Pfn::new(x.m() + rng.random_range(0.0..=m_room), x.n()).unwrap();
        let g2 = pfwa_geometric(&up, &w).unwrap();
        ensure(le(g.m(), g2.m()), || format!("raising m decreased output m: {}", ctx()))?;
    }
    let n_room = (1.0 - x.m() * x.m()).sqrt() - x.n();
    if n_room > 0.0 {
        let mut up = values.clone();
        up[j] = Pfn::new(x.m(), x.n() + rng.random_range(0.0..=n_room)).unwrap();
        let g2 = pfwa_geometric(&up, &w).unwrap();
        ensure(le(g.n(), g2.n()), || format!("raising n decreased output n: {}", ctx()))?;
    }
    Ok(())
}
