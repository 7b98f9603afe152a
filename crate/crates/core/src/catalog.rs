//! Built-in models and a generator of random pure elliptic Sullivan models.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::commutative::{basis_where, Element, Generator, Monomial};
use crate::dsl::Model;
use crate::lie::{bracket, LieElement, LieGenerator};
use crate::linalg::{frac, Rational};
use crate::quillen::DGLModel;
use crate::sullivan::SullivanModel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("bad parameter for `{entry}`: {reason}")]
    BadParameter { entry: String, reason: String },
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub parameters: &'static str,
    pub kind: &'static str,
    pub summary: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "sphere_odd",
        parameters: "k (odd, >= 3)",
        kind: "sullivan",
        summary: "Λ(x:k), d = 0",
    },
    CatalogEntry {
        name: "sphere_even",
        parameters: "k (even, >= 2)",
        kind: "sullivan",
        summary: "Λ(x:k, y:2k-1), dy = x^2",
    },
    CatalogEntry {
        name: "s2",
        parameters: "",
        kind: "sullivan",
        summary: "Λ(x:2, y:3), dy = x^2",
    },
    CatalogEntry {
        name: "cpn_sullivan",
        parameters: "n (>= 1)",
        kind: "sullivan",
        summary: "Λ(x:2, y:2n+1), dy = x^(n+1); alias cpn",
    },
    CatalogEntry {
        name: "product",
        parameters: "a, b (Sullivan catalog specs)",
        kind: "sullivan",
        summary: "tensor product, names suffixed _1/_2 on clash",
    },
    CatalogEntry {
        name: "cpn_quillen",
        parameters: "n (>= 1)",
        kind: "quillen",
        summary: "𝕃(w1, w3, .., w(2n-1)), dw_k = 1/2 sum_{i+j=k-1} [w_i,w_j]",
    },
    CatalogEntry {
        name: "sphere_odd_quillen",
        parameters: "k (odd, >= 3)",
        kind: "quillen",
        summary: "𝕃(w:k-1), d = 0",
    },
    CatalogEntry {
        name: "sphere_even_quillen",
        parameters: "k (even, >= 2)",
        kind: "quillen",
        summary: "𝕃(w:k-1), d = 0",
    },
    CatalogEntry {
        name: "s2_quillen",
        parameters: "",
        kind: "quillen",
        summary: "𝕃(w:1), d = 0",
    },
];

fn bad(entry: &str, reason: impl Into<String>) -> CatalogError {
    CatalogError::BadParameter {
        entry: entry.into(),
        reason: reason.into(),
    }
}

fn power(i: usize, e: u32) -> Element {
    Element::monomial(Monomial::from_exponents([(i, e)]), Rational::from_integer(1.into()))
}

pub fn sphere_odd(k: u32) -> Result<SullivanModel, CatalogError> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(bad("sphere_odd", format!("k = {k} must be odd and at least 3")));
    }
    Ok(SullivanModel::with_zero_differential(
        format!("S{k}"),
        vec![Generator::new("x", k)],
    ))
}

pub fn sphere_even(k: u32) -> Result<SullivanModel, CatalogError> {
    if k < 2 || k % 2 == 1 {
        return Err(bad("sphere_even", format!("k = {k} must be even and at least 2")));
    }
    Ok(SullivanModel::new(
        format!("S{k}"),
        vec![Generator::new("x", k), Generator::new("y", 2 * k - 1)],
        vec![Element::zero(), power(0, 2)],
    ))
}

pub fn cpn_sullivan(n: u32) -> Result<SullivanModel, CatalogError> {
    if n < 1 {
        return Err(bad("cpn_sullivan", "n must be at least 1"));
    }
    Ok(SullivanModel::new(
        format!("CP{n}"),
        vec![Generator::new("x", 2), Generator::new("y", 2 * n + 1)],
        vec![Element::zero(), power(0, n + 1)],
    ))
}

pub fn cpn_quillen(n: u32) -> Result<DGLModel, CatalogError> {
    if n < 1 {
        return Err(bad("cpn_quillen", "n must be at least 1"));
    }
    let gens: Vec<LieGenerator> = (0..n)
        .map(|k| LieGenerator::new(format!("w{}", 2 * k + 1), 2 * k + 1))
        .collect();
    // generator k has degree 2k+1, so degrees i + j = 2k pair up as a + b = k - 1
    let differential = (0..n as usize)
        .map(|k| {
            let mut d = LieElement::zero();
            for a in 0..k {
                let b = k - 1 - a;
                let term = bracket(&gens, &LieElement::generator(a), &LieElement::generator(b));
                d.add_assign_scaled(&term, &frac(1, 2));
            }
            d
        })
        .collect();
    Ok(DGLModel::new(format!("CP{n}q"), gens, differential))
}

fn free_lie_sphere(k: u32) -> DGLModel {
    DGLModel::with_zero_differential(format!("S{k}q"), vec![LieGenerator::new("w", k - 1)])
}

pub fn sphere_odd_quillen(k: u32) -> Result<DGLModel, CatalogError> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(bad("sphere_odd_quillen", format!("k = {k} must be odd and at least 3")));
    }
    Ok(free_lie_sphere(k))
}

pub fn sphere_even_quillen(k: u32) -> Result<DGLModel, CatalogError> {
    if k < 2 || k % 2 == 1 {
        return Err(bad("sphere_even_quillen", format!("k = {k} must be even and at least 2")));
    }
    Ok(free_lie_sphere(k))
}

/// Looks up an entry with integer parameters.
pub fn catalog(name: &str, params: &[u32]) -> Result<Model, CatalogError> {
    let one = |entry: &str| match params {
        [p] => Ok(*p),
        _ => Err(bad(entry, format!("expected one parameter, got {}", params.len()))),
    };
    let none = |entry: &str| {
        if params.is_empty() {
            Ok(())
        } else {
            Err(bad(entry, "takes no parameters"))
        }
    };
    Ok(match name {
        "sphere_odd" => Model::Sullivan(sphere_odd(one(name)?)?),
        "sphere_even" => Model::Sullivan(sphere_even(one(name)?)?),
        "s2" => {
            none(name)?;
            Model::Sullivan(sphere_even(2)?)
        }
        "cpn" | "cpn_sullivan" => Model::Sullivan(cpn_sullivan(one(name)?)?),
        "cpn_quillen" => Model::Quillen(cpn_quillen(one(name)?)?),
        "sphere_odd_quillen" => Model::Quillen(sphere_odd_quillen(one(name)?)?),
        "sphere_even_quillen" => Model::Quillen(sphere_even_quillen(one(name)?)?),
        "s2_quillen" => {
            none(name)?;
            Model::Quillen(sphere_even_quillen(2)?)
        }
        "product" => return Err(bad(name, "takes two model specs; use catalog_spec")),
        other => return Err(CatalogError::UnknownEntry(other.into())),
    })
}

/// Parses specs such as `cpn_sullivan(2)`, `s2` or `product(s2,sphere_even(4))`.
pub fn catalog_spec(spec: &str) -> Result<Model, CatalogError> {
    let spec = spec.trim();
    let Some(open) = spec.find('(') else {
        return catalog(spec, &[]);
    };
    let name = spec[..open].trim();
    let inner = spec[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| bad(name, "missing closing parenthesis"))?;
    let args = split_top_level(inner);
    if name == "product" {
        let [a, b] = args.as_slice() else {
            return Err(bad(name, format!("expected two arguments, got {}", args.len())));
        };
        let sullivan = |s: &str| match catalog_spec(s)? {
            Model::Sullivan(m) => Ok(m),
            Model::Quillen(_) => Err(bad("product", format!("`{s}` is not a Sullivan model"))),
        };
        return Ok(Model::Sullivan(sullivan(a)?.tensor(&sullivan(b)?)));
    }
    let params = args
        .iter()
        .map(|a| a.trim().parse::<u32>().map_err(|_| bad(name, format!("`{a}` is not a nonnegative integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    catalog(name, &params)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s.trim().is_empty() {
        out.push(s[start..].trim());
    }
    out
}

/// Specs of every parameter-free or small-parameter catalog model, used by
/// test suites.
pub fn standard_specs() -> Vec<String> {
    let mut specs: Vec<String> = vec!["s2".into(), "s2_quillen".into()];
    specs.extend((3..=9).step_by(2).map(|k| format!("sphere_odd({k})")));
    specs.extend((2..=8).step_by(2).map(|k| format!("sphere_even({k})")));
    specs.extend((1..=4).map(|n| format!("cpn_sullivan({n})")));
    specs.extend((1..=3).map(|n| format!("cpn_quillen({n})")));
    specs.extend((3..=7).step_by(2).map(|k| format!("sphere_odd_quillen({k})")));
    specs.extend((2..=6).step_by(2).map(|k| format!("sphere_even_quillen({k})")));
    specs
}

/// A random pure Sullivan model, elliptic by construction.
///
/// Even generators `x_1..x_m` (degrees in {2,4,6,8}) are paired with odd
/// `y_j` where `dy_j = x_j^(k_j) + (decomposable terms in x_1..x_(j-1))`, so
/// the images form a regular sequence. With probability 1/2 an extra odd
/// generator `z` is added with `dz` a decomposable polynomial in the `x`s,
/// possibly zero. The candidate formal dimension is kept at most `max_nc`.
pub fn random_pure_model(rng: &mut impl Rng, name: impl Into<String>, max_nc: i64) -> SullivanModel {
    loop {
        let m = rng.gen_range(1..=3usize);
        let even: Vec<u32> = (0..m).map(|_| *[2u32, 4, 6, 8].choose(rng).expect("nonempty")).collect();
        let powers: Vec<u32> = (0..m).map(|_| rng.gen_range(2..=3)).collect();
        let extra: Option<u32> = rng.gen_bool(0.5).then(|| *[3u32, 5, 7].choose(rng).expect("nonempty"));
        let nc: i64 = even
            .iter()
            .zip(&powers)
            .map(|(&d, &k)| ((k - 1) * d) as i64)
            .sum::<i64>()
            + extra.map_or(0, |d| d as i64);
        if nc > max_nc {
            continue;
        }
        let mut gens: Vec<Generator> = even
            .iter()
            .enumerate()
            .map(|(j, &d)| Generator::new(format!("x{}", j + 1), d))
            .collect();
        gens.extend(
            even.iter()
                .zip(&powers)
                .enumerate()
                .map(|(j, (&d, &k))| Generator::new(format!("y{}", j + 1), k * d - 1)),
        );
        if let Some(d) = extra {
            gens.push(Generator::new("z", d));
        }
        let mut differential = vec![Element::zero(); m];
        for j in 0..m {
            let mut dy = power(j, powers[j]);
            let target = powers[j] * even[j];
            add_random_terms(rng, &gens, &mut dy, target, |i| i < j);
            differential.push(dy);
        }
        if let Some(d) = extra {
            let mut dz = Element::zero();
            add_random_terms(rng, &gens, &mut dz, d + 1, |i| i < m);
            differential.push(dz);
        }
        return SullivanModel::new(name, gens, differential);
    }
}

/// Adds random small rational multiples of decomposable monomials of
/// `degree` in the generators accepted by `allowed`.
fn add_random_terms(
    rng: &mut impl Rng,
    gens: &[Generator],
    e: &mut Element,
    degree: u32,
    allowed: impl Fn(usize) -> bool,
) {
    for mono in basis_where(gens, degree, allowed) {
        if mono.word_length() < 2 || !rng.gen_bool(0.5) {
            continue;
        }
        let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
        let den = rng.gen_range(1..=2);
        e.add_term(mono, frac(num, den));
    }
}

/// `count` random pure models from a fixed seed.
pub fn random_pure_models(seed: u64, count: usize, max_nc: i64) -> Vec<SullivanModel> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_pure_model(&mut rng, format!("random{i}"), max_nc))
        .collect()
}
