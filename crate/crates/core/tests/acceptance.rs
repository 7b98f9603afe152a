//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use elliptica::catalog::{self, catalog_spec, random_pure_models};
use elliptica::commutative::{basis, derivation_extend, multiply, Element, Generator, Monomial};
use elliptica::dsl::{parse, serialize, Model};
use elliptica::invariants::{
    compare_models, dgl_invariants, dgl_ledger, odd_sphere_detect, sullivan_invariants, sullivan_ledger,
    InvariantReport,
};
use elliptica::lie::{bracket, lie_basis, LieElement, LieGenerator, WordIndex};
use elliptica::linalg::{frac, span_dim, QVector, Rational};
use elliptica::quillen::{DGLModel, QuillenAnalysis};
use elliptica::sullivan::{SullivanAnalysis, SullivanModel};

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sullivan(spec: &str) -> SullivanModel {
    match catalog_spec(spec).expect("catalog spec") {
        Model::Sullivan(m) => m,
        Model::Quillen(_) => panic!("{spec} is a Quillen model"),
    }
}

fn quillen(spec: &str) -> DGLModel {
    match catalog_spec(spec).expect("catalog spec") {
        Model::Quillen(m) => m,
        Model::Sullivan(_) => panic!("{spec} is a Sullivan model"),
    }
}

const RANDOM_SEED: u64 = 0x5eed_2024;
const RANDOM_COUNT: usize = 120;
const RANDOM_MAX_NC: i64 = 14;

/// Catalog Sullivan models, pairwise tensor products, and random pure models.
fn population() -> Vec<SullivanModel> {
    let mut out: Vec<SullivanModel> = catalog::standard_specs()
        .iter()
        .filter_map(|s| match catalog_spec(s).ok()? {
            Model::Sullivan(m) => Some(m),
            Model::Quillen(_) => None,
        })
        .collect();
    let factors = ["s2", "sphere_odd(3)", "sphere_even(4)", "sphere_odd(5)", "cpn(2)", "cpn(3)"];
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i..] {
            out.push(sullivan(&format!("product({a},{b})")));
        }
    }
    out.extend(random_pure_models(RANDOM_SEED, RANDOM_COUNT, RANDOM_MAX_NC));
    out
}

fn quillen_population() -> Vec<DGLModel> {
    catalog::standard_specs()
        .iter()
        .filter_map(|s| match catalog_spec(s).ok()? {
            Model::Quillen(m) => Some(m),
            Model::Sullivan(_) => None,
        })
        .collect()
}

struct Context {
    reports: Vec<(SullivanModel, InvariantReport)>,
}

impl Context {
    fn build() -> Result<Self, String> {
        let mut reports = Vec::new();
        for m in population() {
            let r = sullivan_invariants(&m, None).map_err(|e| format!("{}: {e}", m.name()))?;
            reports.push((m, r));
        }
        Ok(Self { reports })
    }

    fn for_each(&self, check: impl Fn(&SullivanModel, &InvariantReport) -> Result<(), String>) -> Outcome {
        for (m, r) in &self.reports {
            check(m, r).map_err(|e| format!("{}: {e}", m.name()))?;
        }
        Ok(format!("{} models", self.reports.len()))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_1() -> Outcome {
    let mut worst = Duration::ZERO;
    for n in 1..=4u32 {
        let m = sullivan(&format!("cpn({n})"));
        let (r, t) = timed(|| sullivan_invariants(&m, None));
        let r = r.map_err(|e| e.to_string())?;
        worst = worst.max(t);
        let n = n as i64;
        let got = (r.rho, r.chi_h, r.chi_v, r.formal_dimension as i64, r.f0);
        ensure(got == (n + 1, n + 1, 0, 2 * n, true), || {
            format!("CP{n}: (rho, chi_H, chi_V, n, F0) = {got:?}")
        })?;
        ensure(t < Duration::from_secs(5), || format!("CP{n} took {t:?}"))?;
    }
    Ok(format!("n = 1..4, slowest {worst:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut times = Vec::new();
    for n in 1..=3u32 {
        let q = quillen(&format!("cpn_quillen({n})"));
        let (eta, t) = timed(|| {
            let a = QuillenAnalysis::new(&q, q.eta_bound()).map_err(|e| e.to_string())?;
            Ok::<_, String>((a.eta().map_err(|e| e.to_string())?, a.homology_dims()))
        });
        let (eta, dims) = eta?;
        times.push(t);
        ensure(eta == n as i64 + 1, || format!("CP{n}q: eta = {eta}"))?;
        // H_{i-1} nonzero exactly for i in {2, 2n+1}
        for (d, &h) in dims.iter().enumerate().skip(1) {
            let i = d as u32 + 1;
            let expected = usize::from(i == 2 || i == 2 * n + 1);
            ensure(h == expected, || format!("CP{n}q: dim H_{d} = {h}, expected {expected}"))?;
        }
        if n == 3 {
            ensure(t < Duration::from_secs(30), || format!("CP3q took {t:?}"))?;
        }
    }
    Ok(format!("n = 1..3, CP3q in {:.2?}", times[2]))
}

fn criterion_3(ctx: &Context) -> Outcome {
    ctx.for_each(|_, r| {
        ensure(r.rho == r.chi_h - r.chi_v, || {
            format!("rho = {}, chi_H - chi_V = {}", r.rho, r.chi_h - r.chi_v)
        })
    })
}

fn criterion_4(ctx: &Context) -> Outcome {
    ctx.for_each(|_, r| {
        let slack = r.rho - r.rho_partial_sum();
        ensure((0..=2).contains(&slack), || format!("slack {slack}"))
    })
}

fn criterion_5(ctx: &Context) -> Outcome {
    let claims = [
        "rho-positive",
        "even-l-dominates-odd-l",
        "total-dimension-count",
        "odd-generators-dominate",
        "no-generators-from-twice-formal-dimension",
        "no-even-generators-above-formal-dimension",
        "single-odd-generator-above-formal-dimension",
        "euler-characteristic-signs",
        "l-matches-generators-above-formal-dimension",
        "odd-l-vanishes-above-formal-dimension",
        "l-vanishes-above-twice-formal-dimension",
    ];
    ctx.for_each(|_, r| {
        let ledger = sullivan_ledger(r);
        for claim in claims {
            ensure(ledger.get(claim).is_some(), || format!("missing claim {claim}"))?;
        }
        let violated = ledger.violations().next().map(|e| format!("{} violated: {}", e.claim, e.witness));
        violated.map_or(Ok(()), Err)
    })
    .map(|s| format!("{s}, every ledger claim checked"))
}

fn criterion_6() -> Outcome {
    let cases = [
        ("sphere_odd(3)", true),
        ("sphere_odd(5)", true),
        ("sphere_odd(7)", true),
        ("s2", false),
        ("cpn(2)", false),
        ("cpn(3)", false),
        ("product(s2,sphere_odd(3))", false),
        ("product(sphere_odd(3),sphere_odd(5))", false),
        ("product(s2,sphere_even(4))", false),
    ];
    for (spec, expected) in cases {
        let r = sullivan_invariants(&sullivan(spec), None).map_err(|e| e.to_string())?;
        let (verdict, ledger) = odd_sphere_detect(&r);
        ensure(verdict.detected == expected, || format!("{spec}: detected = {}", verdict.detected))?;
        if expected {
            let support: Vec<(usize, usize)> = r
                .betti
                .iter()
                .enumerate()
                .filter(|(_, &b)| b != 0)
                .map(|(i, &b)| (i, b))
                .collect();
            let ok = matches!(support.as_slice(), [(0, 1), (n, 1)] if n % 2 == 1);
            ensure(ok && ledger.all_hold(), || format!("{spec}: H support {support:?}"))?;
        }
    }
    Ok("exactly S3, S5, S7 detected among 9 models".into())
}

fn criterion_7() -> Outcome {
    for spec in ["cpn(1)", "cpn(2)", "cpn(3)", "product(s2,sphere_even(4))"] {
        let r = sullivan_invariants(&sullivan(spec), None).map_err(|e| e.to_string())?;
        ensure(r.f0, || format!("{spec} is not F0"))?;
        ensure(r.l_odd() == 0, || format!("{spec}: dim L^odd = {}", r.l_odd()))?;
        let even_rank: usize = r.rank_b.iter().step_by(2).sum();
        ensure(even_rank == 0, || format!("{spec}: rank of even b = {even_rank}"))?;
    }
    Ok("CP1..CP3 and S2xS4".into())
}

fn criterion_8() -> Outcome {
    for (s, q) in [("s2", "s2_quillen"), ("sphere_odd(3)", "sphere_odd_quillen(3)"), ("cpn(2)", "cpn_quillen(2)")] {
        let d = compare_models(&sullivan(s), &quillen(q)).map_err(|e| e.to_string())?;
        ensure(d.connecting.iter().all(|row| row.left == row.right), || {
            format!("{s}/{q}: L/Γ rows {:?}", d.connecting)
        })?;
        ensure(d.rho == d.eta, || format!("{s}/{q}: rho = {}, eta = {}", d.rho, d.eta))?;
        ensure(d.is_consistent(), || format!("{s}/{q}: {:?}", d.first_mismatch))?;
    }
    Ok("S2, S3, CP2 pairs agree in every degree".into())
}

const PROPERTY_CASES: usize = 1000;

fn random_element(rng: &mut StdRng, gens: &[Generator], max_degree: u32) -> (Element, u32) {
    loop {
        let d = rng.gen_range(0..=max_degree);
        let b = basis(gens, d);
        if b.is_empty() {
            continue;
        }
        let mut e = Element::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let m = b.choose(rng).expect("nonempty").clone();
            e.add_term(m, frac(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
        }
        return (e, d);
    }
}

fn random_lie(rng: &mut StdRng, bases: &BTreeMap<u32, Vec<LieElement>>) -> (LieElement, u32) {
    let degrees: Vec<u32> = bases.iter().filter(|(_, b)| !b.is_empty()).map(|(&d, _)| d).collect();
    let d = *degrees.choose(rng).expect("some degree");
    let mut e = LieElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let b = bases[&d].choose(rng).expect("nonempty");
        e.add_assign_scaled(b, &frac(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    (e, d)
}

fn sign(odd: bool) -> Rational {
    if odd {
        frac(-1, 1)
    } else {
        frac(1, 1)
    }
}

fn criterion_9(ctx: &Context) -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    // differentials square to zero on every fixture and population model
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/valid");
    let mut fixture_count = 0;
    for entry in fs::read_dir(&fixtures).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        fixture_count += 1;
    }
    for (m, _) in &ctx.reports {
        ensure(m.validate().is_ok(), || format!("{}: d^2 != 0", m.name()))?;
    }
    let qpop = quillen_population();
    for q in &qpop {
        ensure(q.validate().is_ok(), || format!("{}: δ^2 != 0", q.name()))?;
    }

    // Koszul sign law and Leibniz on a mixed-parity generator set
    let gens = vec![
        Generator::new("a", 2),
        Generator::new("b", 3),
        Generator::new("c", 3),
        Generator::new("e", 4),
        Generator::new("f", 5),
    ];
    let images = vec![
        Element::zero(),
        multiply(&gens, &Element::generator(0), &Element::generator(0)),
        Element::zero(),
        Element::zero(),
        Element::zero(),
    ];
    for _ in 0..PROPERTY_CASES {
        let (x, dx) = random_element(&mut rng, &gens, 8);
        let (y, dy) = random_element(&mut rng, &gens, 8);
        let xy = multiply(&gens, &x, &y);
        let yx = multiply(&gens, &y, &x).scaled(&sign(dx * dy % 2 == 1));
        ensure(xy == yx, || "Koszul sign law fails".into())?;
        let d = |e: &Element| derivation_extend(&gens, &images, e).expect("valid images");
        let lhs = d(&xy);
        let rhs = multiply(&gens, &d(&x), &y).sum(&multiply(&gens, &x, &d(&y)).scaled(&sign(dx % 2 == 1)));
        ensure(lhs == rhs, || "Leibniz rule fails".into())?;
    }

    // graded antisymmetry and Jacobi in a free Lie algebra
    let lgens = vec![LieGenerator::new("u", 1), LieGenerator::new("v", 2), LieGenerator::new("w", 3)];
    let bases: BTreeMap<u32, Vec<LieElement>> = (1..=8)
        .map(|d| (d, lie_basis(&lgens, d).into_iter().map(|b| b.element).collect()))
        .collect();
    for _ in 0..PROPERTY_CASES {
        let (a, da) = random_lie(&mut rng, &bases);
        let (b, db) = random_lie(&mut rng, &bases);
        let (c, _) = random_lie(&mut rng, &bases);
        let s = sign(da * db % 2 == 1);
        let anti = bracket(&lgens, &a, &b).sum(&bracket(&lgens, &b, &a).scaled(&s));
        ensure(anti.is_zero(), || "graded antisymmetry fails".into())?;
        let lhs = bracket(&lgens, &a, &bracket(&lgens, &b, &c));
        let rhs = bracket(&lgens, &bracket(&lgens, &a, &b), &c)
            .sum(&bracket(&lgens, &b, &bracket(&lgens, &a, &c)).scaled(&s));
        ensure(lhs == rhs, || "graded Jacobi fails".into())?;
    }

    // Whitehead exactness on every validated model
    for (m, r) in &ctx.reports {
        ensure(r.whitehead_failure.is_none(), || format!("{}: {:?}", m.name(), r.whitehead_failure))?;
    }
    for q in &qpop {
        let r = dgl_invariants(q).map_err(|e| format!("{}: {e}", q.name()))?;
        ensure(dgl_ledger(&r).all_hold(), || format!("{}: Quillen ledger violated", q.name()))?;
        ensure(r.whitehead_failure.is_none(), || format!("{}: {:?}", q.name(), r.whitehead_failure))?;
    }
    Ok(format!(
        "{fixture_count} fixtures, {} + {} models exact, {PROPERTY_CASES} cases per identity",
        ctx.reports.len(),
        qpop.len()
    ))
}

fn all_bracketings(gens: &[LieGenerator], degree: u32) -> Vec<LieElement> {
    fn trees(gens: &[LieGenerator], seq: &[usize]) -> Vec<LieElement> {
        if seq.len() == 1 {
            return vec![LieElement::generator(seq[0])];
        }
        let mut out = Vec::new();
        for split in 1..seq.len() {
            for l in trees(gens, &seq[..split]) {
                for r in trees(gens, &seq[split..]) {
                    out.push(bracket(gens, &l, &r));
                }
            }
        }
        out
    }
    fn sequences(gens: &[LieGenerator], rem: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, g) in gens.iter().enumerate() {
            if g.degree <= rem {
                cur.push(i);
                sequences(gens, rem - g.degree, cur, out);
                cur.pop();
            }
        }
    }
    let mut seqs = Vec::new();
    sequences(gens, degree, &mut Vec::new(), &mut seqs);
    seqs.iter().flat_map(|s| trees(gens, s)).collect()
}

fn criterion_10() -> Outcome {
    for a in 1..=3u32 {
        for m in 2..=5u32 {
            let model = SullivanModel::new(
                "trunc",
                vec![Generator::new("x", 2 * a), Generator::new("y", 2 * a * m - 1)],
                vec![
                    Element::zero(),
                    Element::monomial(Monomial::from_exponents([(0, m)]), frac(1, 1)),
                ],
            );
            let top = 2 * a * m + 4;
            let an = SullivanAnalysis::new(&model, top).map_err(|e| e.to_string())?;
            for d in 0..=top {
                let expected = usize::from(d % (2 * a) == 0 && d <= 2 * a * (m - 1));
                ensure(an.betti(d) == expected, || {
                    format!("x:{}, x^{m}: H^{d} = {}, expected {expected}", 2 * a, an.betti(d))
                })?;
            }
        }
    }
    let generator_sets: [&[u32]; 6] = [&[1], &[2], &[1, 1], &[1, 2], &[1, 3], &[2, 2, 3]];
    for degrees in generator_sets {
        let gens: Vec<LieGenerator> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| LieGenerator::new(format!("g{i}"), d))
            .collect();
        for d in 1..=6 {
            let all = all_bracketings(&gens, d);
            let index = WordIndex::spanning(all.iter());
            let vectors: Vec<QVector> = all.iter().map(|e| index.vector(e).expect("indexed")).collect();
            let oracle = span_dim(&vectors);
            let got = lie_basis(&gens, d).len();
            ensure(got == oracle, || format!("degrees {degrees:?}, d = {d}: {got} vs oracle {oracle}"))?;
        }
    }
    Ok("12 truncated polynomial algebras, 6 generator sets through degree 6".into())
}

fn criterion_11() -> Outcome {
    let mut models: Vec<Model> = catalog::standard_specs()
        .iter()
        .map(|s| catalog_spec(s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    models.push(catalog_spec("product(s2,s2)").map_err(|e| e.to_string())?);
    models.extend(
        random_pure_models(RANDOM_SEED ^ 11, 100, RANDOM_MAX_NC)
            .into_iter()
            .map(Model::Sullivan),
    );
    for m in &models {
        let text = serialize(m);
        let back = parse(&text).map_err(|e| format!("{}: {e}\n{text}", m.name()))?;
        ensure(&back == m, || format!("{}: round trip changed the model", m.name()))?;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/malformed");
    let mut kinds = std::collections::BTreeSet::new();
    let mut count = 0;
    for entry in fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let expect = text
            .lines()
            .find_map(|l| l.strip_prefix("# expect: "))
            .ok_or_else(|| format!("{}: no expectation line", path.display()))?;
        let (kind, line) = expect
            .split_once(" line ")
            .ok_or_else(|| format!("{}: bad expectation", path.display()))?;
        let line: usize = line.trim().parse().map_err(|_| "bad line number".to_string())?;
        let err = match parse(&text) {
            Ok(_) => return Err(format!("{} parsed without error", path.display())),
            Err(e) => e,
        };
        ensure(err.kind() == kind && err.line() == line, || {
            format!("{}: got {} at line {}, expected {kind} at line {line}", path.display(), err.kind(), err.line())
        })?;
        kinds.insert(kind.to_string());
        count += 1;
    }
    ensure(kinds.len() == 5, || format!("error kinds covered: {kinds:?}"))?;
    Ok(format!("{} round trips, {count} malformed fixtures covering {} error kinds", models.len(), kinds.len()))
}

fn main() -> ExitCode {
    let (ctx, build_time) = timed(Context::build);
    let ctx = match ctx {
        Ok(c) => Some(c),
        Err(e) => {
            println!("population failed to certify: {e}");
            None
        }
    };
    let ctx = ctx.as_ref();
    let with_ctx = |f: fn(&Context) -> Outcome| -> Box<dyn FnOnce() -> Outcome + '_> {
        Box::new(move || match ctx {
            Some(c) => f(c),
            None => Err("population unavailable".into()),
        })
    };
    let criteria: Vec<Criterion> = vec![
        (1, "projective spaces, Sullivan invariants", Box::new(criterion_1)),
        (2, "projective spaces, Quillen eta and homology", Box::new(criterion_2)),
        (3, "rho = chi_H - chi_V on population", with_ctx(criterion_3)),
        (4, "partial-sum bound on rho", with_ctx(criterion_4)),
        (5, "elliptic structure claims", with_ctx(criterion_5)),
        (6, "odd-sphere detection", Box::new(criterion_6)),
        (7, "consequences of H^odd = 0", Box::new(criterion_7)),
        (8, "Sullivan/Quillen duality", Box::new(criterion_8)),
        (9, "structural property suites", with_ctx(criterion_9)),
        (10, "independent oracles", Box::new(criterion_10)),
        (11, "parser round trip and diagnostics", Box::new(criterion_11)),
    ];
    println!("population certified in {build_time:.2?}");
    let mut failed = 0;
    for (id, title, run) in criteria {
        let (outcome, t) = timed(run);
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {title} ({detail}) [{t:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title}: {detail} [{t:.2?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
