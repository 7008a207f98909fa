//! Commands behind the `linkform` binary. Each command returns a serialisable
//! value; `main.rs` only parses arguments and prints.

use std::time::Instant;

use linkform::linking::verify_linking_isometry;
use linkform::par::Execution;
use linkform::quotient::qclass_equal;
use linkform::union::{check_union_even, rank_one_union_gram, union_gram, UnionSummary};
use linkform::units::{
    classify_unit, decompose_by_theta, enumerate_unitary, is_odd_prime, rank_one_orbit_set,
    square_roots_of_one, theta, theta_lift, OrbitBounds, OrbitSet,
};
use linkform::words::{admissible_action_units, conjugation_action, psi, theta_scan, Generator, Letter};
use linkform::{
    Error, FreeProductWord, GroupRingElement, LaurentPoly, LinkingPresentation, OrbitClass,
    TorsionIsometry, UnitaryUnit,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_MAX_Q: u64 = 100;

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Usage(String),
    /// A computation that ran but did not certify: exit code 1.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Check(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotOddPrime(_)
            | Error::InvalidModulus(_)
            | Error::WordParse(_)
            | Error::Json(_)
            | Error::MissingModulus
            | Error::ModulusMismatch(..) => CliError::Usage(e.to_string()),
            _ => CliError::Check(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Tunable limits for the verification pipeline.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub span: u32,
    pub cap: u128,
    pub max_q: u64,
    pub random_cases: usize,
    pub exec: Execution,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            span: 2,
            cap: linkform::units::DEFAULT_CANDIDATE_CAP,
            max_q: DEFAULT_MAX_Q,
            random_cases: 200,
            exec: Execution::Auto,
        }
    }
}

fn validate_q(q: u64, budgets: &Budgets) -> CliResult<()> {
    if !is_odd_prime(q) {
        return Err(CliError::Usage(format!("{q} is not an odd prime")));
    }
    if q > budgets.max_q {
        return Err(CliError::Usage(format!(
            "q = {q} exceeds the configured bound {}",
            budgets.max_q
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// What the check establishes.
    pub anchor: &'static str,
    pub status: Status,
    pub details: Value,
}

impl Check {
    fn new(name: &'static str, anchor: &'static str, outcome: linkform::Result<(bool, Value)>) -> Self {
        let (status, details) = match outcome {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        Check {
            name,
            anchor,
            status,
            details,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub q: u64,
    pub seed: u64,
    pub span: u32,
    pub checks: Vec<Check>,
    pub orbit_set: Value,
    pub passed: bool,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn failing(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name)
            .collect()
    }

    /// Plain-text rendering of the JSON report.
    pub fn render(&self) -> String {
        let mut out = format!("q = {}, seed = {}, span = {}\n", self.q, self.seed, self.span);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("[{tag}] {:<28} {}\n", c.name, c.details));
        }
        out.push_str(&format!("orbit set: {}\n", self.orbit_set));
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}

fn theta_grid(q: u64) -> linkform::Result<(bool, Value)> {
    let mut failures = Vec::new();
    for n in -5..=5 {
        for m in -5..=5 {
            let prod = theta(n, q)?.mul(&theta(m, q)?)?;
            if classify_unit(&prod)? != (OrbitClass { k: n + m }) {
                failures.push(json!([n, m]));
            }
        }
    }
    for n in -10..=10 {
        let u = theta(n, q)?;
        if classify_unit(&u)?.k != n || u.as_trivial().is_some() != (n == 0) {
            failures.push(json!([n]));
        }
    }
    Ok((failures.is_empty(), json!({ "pairs": 121, "singles": 21, "failures": failures })))
}

fn quad_sym_grid(q: u64) -> linkform::Result<(bool, Value)> {
    let p = LaurentPoly::constant(2 * q as i64);
    let mut failures = Vec::new();
    for n in -10..=10 {
        let h = TorsionIsometry::rank_one(p.clone(), theta_lift(n, q)?)?;
        if !(verify_linking_isometry(&h, false)? && verify_linking_isometry(&h, true)?) {
            failures.push(n);
        }
    }
    Ok((failures.is_empty(), json!({ "n_range": [-10, 10], "failures": failures })))
}

fn surjectivity(q: u64, budgets: &Budgets) -> linkform::Result<(bool, Value)> {
    let units = enumerate_unitary(2 * q, budgets.span, budgets.cap, budgets.exec)?;
    let bound = 2 * budgets.span as i64;
    let mut exceptions = Vec::new();
    for u in &units {
        let ok = match decompose_by_theta(u, q, bound)? {
            Some((_, k)) => classify_unit(u)?.k == k,
            None => false,
        };
        if !ok {
            exceptions.push(u.poly().to_string());
        }
    }
    Ok((
        exceptions.is_empty() && !units.is_empty(),
        json!({ "unitary_units": units.len(), "k_bound": bound, "exceptions": exceptions }),
    ))
}

fn roots_of_one(q: u64) -> linkform::Result<(bool, Value)> {
    let roots = square_roots_of_one(2 * q);
    Ok((roots == vec![1, 2 * q - 1], json!({ "modulus": 2 * q, "roots": roots })))
}

fn union_grid(q: u64) -> linkform::Result<(bool, Value)> {
    let p = LaurentPoly::constant(2 * q as i64);
    let mut failures = Vec::new();
    for n in -3..=3 {
        let lift = theta_lift(n, q)?;
        let h = TorsionIsometry::rank_one(p.clone(), lift.clone())?;
        let s = UnionSummary::new(&h)?;
        let oracle = rank_one_union_gram(&p, &lift)?;
        if !(s.even && s.det_class.is_unit() && s.signature_at_1 == Some(0) && *s.gram.gram() == oracle) {
            failures.push(n);
        }
    }
    Ok((failures.is_empty(), json!({ "n_range": [-3, 3], "failures": failures })))
}

fn random_element(rng: &mut ChaCha8Rng, m: u64) -> linkform::Result<GroupRingElement> {
    let terms: Vec<(i64, i64)> = (0..rng.gen_range(0..=6))
        .map(|_| (rng.gen_range(-8..=8), rng.gen_range(0..m as i64)))
        .collect();
    GroupRingElement::from_terms(m, &terms)
}

fn random_kernel_word(rng: &mut ChaCha8Rng, m: u64, max_len: usize) -> linkform::Result<FreeProductWord> {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter {
            generator: if rng.gen_bool(0.5) { Generator::X } else { Generator::T },
            exponent: rng.gen_range(-4..=4),
        })
        .collect();
    let w = FreeProductWord::from_letters(m, letters)?;
    w.try_mul(&FreeProductWord::t(m, -w.phi())?)
}

fn psi_theta_batch(q: u64, seed: u64, cases: usize) -> linkform::Result<(bool, Value)> {
    let m = 2 * q;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    for _ in 0..cases {
        let p = random_element(&mut rng, m)?;
        if theta_scan(&psi(&p))? != p {
            violations += 1;
        }
        let w = random_kernel_word(&mut rng, m, 20)?;
        let v = random_kernel_word(&mut rng, m, 20)?;
        let g = random_kernel_word(&mut rng, m, 6)?.try_mul(&FreeProductWord::t(m, rng.gen_range(-5..=5))?)?;
        if conjugation_action(&g, &w)? != theta_scan(&w)?.shift(g.phi()) {
            violations += 1;
        }
        if !theta_scan(&FreeProductWord::commutator(&w, &v))?.poly().is_zero() {
            violations += 1;
        }
    }
    Ok((violations == 0, json!({ "m": m, "cases": cases, "violations": violations })))
}

fn orbit_set_json(set: &OrbitSet) -> Value {
    match set {
        OrbitSet::InfiniteCyclic {
            generator,
            generator_unit,
            generator_verified,
            ..
        } => json!({
            "structure": "Z",
            "generator_class": generator.k,
            "generator": generator_unit.poly().to_string(),
            "generator_verified": generator_verified,
        }),
        other => json!({ "structure": other.summary() }),
    }
}

/// The six checks behind the claim that the orbit set for `(2q)` is `Z`.
pub fn cmd_verify(q: u64, seed: u64, budgets: &Budgets) -> CliResult<VerificationReport> {
    validate_q(q, budgets)?;
    let start = Instant::now();
    let checks = vec![
        Check::new("theta_homomorphism", "theta is an injective homomorphism onto the orbit classes", theta_grid(q)),
        Check::new("quadratic_equals_symmetric", "each theta(n) preserves the quadratic refinement on (2q)", quad_sym_grid(q)),
        Check::new("surjectivity", "every bounded unitary unit is a trivial unit times some theta(k)", surjectivity(q, budgets)),
        Check::new("square_roots_of_one", "a^2 = 1 in Z/2q only for a = 1, -1", roots_of_one(q)),
        Check::new("union_evenness", "unions along theta(n) are even, unimodular, signature 0", union_grid(q)),
        Check::new("psi_theta", "Psi and Theta are inverse and t-equivariant", psi_theta_batch(q, seed, budgets.random_cases)),
    ];
    let passed = checks.iter().all(|c| c.status == Status::Pass);
    let orbit_set = if passed {
        let set = rank_one_orbit_set(&LaurentPoly::constant(2 * q as i64), OrbitBounds::default(), budgets.exec)?;
        orbit_set_json(&set)
    } else {
        json!({ "structure": "unverified" })
    };
    Ok(VerificationReport {
        q,
        seed,
        span: budgets.span,
        checks,
        orbit_set,
        passed,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equivalent,
    Distinct,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishingCertificate {
    pub q: u64,
    pub n1: i64,
    pub n2: i64,
    pub b_classes: (OrbitClass, OrbitClass),
    pub representatives: (String, String),
    /// Constants `a` with `a² = 1` mod `2q`; a self-equivalence acts on the
    /// generator by `a t^k` with `a` among these.
    pub admissible_units: Vec<u64>,
    pub verdict: Verdict,
}

pub fn cmd_distinguish(q: u64, n1: i64, n2: i64, budgets: &Budgets) -> CliResult<DistinguishingCertificate> {
    validate_q(q, budgets)?;
    let (u1, u2) = (theta(n1, q)?, theta(n2, q)?);
    let (c1, c2) = (classify_unit(&u1)?, classify_unit(&u2)?);
    let admissible_units = admissible_action_units(2 * q)?;
    if admissible_units != [1, 2 * q - 1] {
        return Err(CliError::Check(format!("unexpected square roots of one mod {}", 2 * q)));
    }
    Ok(DistinguishingCertificate {
        q,
        n1,
        n2,
        b_classes: (c1, c2),
        representatives: (u1.poly().to_string(), u2.poly().to_string()),
        admissible_units,
        verdict: if c1 == c2 { Verdict::Equivalent } else { Verdict::Distinct },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionReport {
    pub q: u64,
    pub n: i64,
    pub h: String,
    #[serde(flatten)]
    pub summary: UnionSummary,
}

pub fn cmd_union(q: u64, n: i64, budgets: &Budgets) -> CliResult<UnionReport> {
    validate_q(q, budgets)?;
    let lift = theta_lift(n, q)?;
    let h = TorsionIsometry::rank_one(LaurentPoly::constant(2 * q as i64), lift.clone())?;
    Ok(UnionReport {
        q,
        n,
        h: lift.to_string(),
        summary: UnionSummary::new(&h)?,
    })
}

/// Multiplication by 3 on the boundary of `(8)`.
pub fn cmd_counterexample_z8() -> CliResult<Value> {
    let eight = LaurentPoly::constant(8);
    let p = LinkingPresentation::rank_one(eight.clone())?;
    let h = TorsionIsometry::rank_one(eight, LaurentPoly::constant(3))?;
    let symmetric = verify_linking_isometry(&h, false)?;
    let quadratic = verify_linking_isometry(&h, true)?;
    let mu_3 = p.mu_partial(&[LaurentPoly::constant(3)])?;
    let mu_1 = p.mu_partial(&[LaurentPoly::one()])?;
    let gram = union_gram(&h)?;
    Ok(json!({
        "symmetric": symmetric,
        "quadratic": quadratic,
        "mu_3": mu_3.value().to_string(),
        "mu_1": mu_1.value().to_string(),
        "mu_equal_in_q1": qclass_equal(&mu_3, &mu_1)?,
        "union_diagonal": gram.gram()[(0, 0)].to_string(),
        "union_even": check_union_even(&h, None)?,
        "admissible_units_mod_8": admissible_action_units(8)?,
    }))
}

pub fn cmd_units_classify(m: u64, poly_json: &str) -> CliResult<Value> {
    let p: LaurentPoly =
        serde_json::from_str(poly_json).map_err(|e| CliError::Usage(format!("bad polynomial JSON: {e}")))?;
    let p = match p.modulus() {
        Some(k) if k != m => return Err(Error::ModulusMismatch(Some(k), Some(m)).into()),
        Some(_) => p,
        None => p.reduce_mod(m)?,
    };
    if !m.is_multiple_of(2) || !is_odd_prime(m / 2) {
        return Err(CliError::Usage(format!("modulus {m} is not twice an odd prime")));
    }
    let u = UnitaryUnit::new(p)?;
    let class = classify_unit(&u)?;
    Ok(json!({ "unit": u.poly().to_string(), "class": class.k }))
}

pub fn cmd_units_enum(m: u64, span: u32, budgets: &Budgets) -> CliResult<Value> {
    let units = enumerate_unitary(m, span, budgets.cap, budgets.exec)?;
    let listed: Vec<String> = units.iter().map(|u| u.poly().to_string()).collect();
    Ok(json!({ "modulus": m, "span": span, "count": listed.len(), "units": listed }))
}

pub fn cmd_units_theta(q: u64, n: i64, budgets: &Budgets) -> CliResult<Value> {
    validate_q(q, budgets)?;
    let u = theta(n, q)?;
    Ok(json!({
        "q": q,
        "n": n,
        "unit": u.poly().to_string(),
        "poly": u.poly(),
        "class": classify_unit(&u)?.k,
    }))
}

pub fn cmd_words_eval(literal: &str, m: u64) -> CliResult<Value> {
    let w = FreeProductWord::parse(m, literal)?;
    let phi = w.phi();
    let (theta, order) = if phi == 0 {
        let t = theta_scan(&w)?;
        (Some(t.poly().to_string()), Some(t.additive_order()))
    } else {
        (None, None)
    };
    Ok(json!({
        "word": w.to_string(),
        "m": m,
        "phi": phi,
        "in_kernel": phi == 0,
        "theta": theta,
        "order": order,
    }))
}
