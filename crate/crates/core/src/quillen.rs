//! Quillen models `(𝕃(W), δ)`: homology, the spaces `Γ_i`, the Whitehead
//! sequence `W_{i+1} -> Γ_i -> H_i(𝕃W) -> W_i -> Γ_{i-1}` and the invariant η.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, ExactnessFailure, Result};
use crate::lie::{
    apply_lie_derivation, format_lie_element, lie_basis, LieBasisElement, LieElement, LieGenerator, TensorDisplay,
    WordIndex,
};
use crate::linalg::{kernel_basis, rank, solve_in_span, QMatrix, QVector, Rational, Subquotient};
use crate::validation::{Check, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGLModel {
    name: String,
    generators: Vec<LieGenerator>,
    differential: Vec<LieElement>,
}

impl DGLModel {
    /// Assembles a model without validating it; see [`DGLModel::validate`].
    pub fn new(name: impl Into<String>, generators: Vec<LieGenerator>, differential: Vec<LieElement>) -> Self {
        assert_eq!(
            generators.len(),
            differential.len(),
            "one differential image per generator"
        );
        Self {
            name: name.into(),
            generators,
            differential,
        }
    }

    pub fn with_zero_differential(name: impl Into<String>, generators: Vec<LieGenerator>) -> Self {
        let differential = vec![LieElement::zero(); generators.len()];
        Self::new(name, generators, differential)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn generators(&self) -> &[LieGenerator] {
        &self.generators
    }

    pub fn differential(&self) -> &[LieElement] {
        &self.differential
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn top_generator_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn generators_of_degree(&self, degree: u32) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].degree == degree)
            .collect()
    }

    pub fn dim_w(&self, degree: u32) -> usize {
        self.generators.iter().filter(|g| g.degree == degree).count()
    }

    pub fn delta(&self, e: &LieElement) -> LieElement {
        apply_lie_derivation(&self.generators, &self.differential, e)
    }

    /// Window `2 * top + 2` in which η is certified.
    pub fn eta_bound(&self) -> u32 {
        2 * self.top_generator_degree() + 2
    }

    pub fn validate(&self) -> ValidationReport {
        validate_dgl(self)
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::Validation(report))
        }
    }

    /// `δ(w)` as a bracket expression, falling back to tensor form.
    pub fn display_differential(&self, index: usize) -> String {
        let e = &self.differential[index];
        format_lie_element(&self.generators, e)
            .unwrap_or_else(|_| TensorDisplay(&self.generators, e).to_string())
    }
}

/// Checks degrees, names, homogeneity of degree -1, minimality and `δ² = 0`.
pub fn validate_dgl(model: &DGLModel) -> ValidationReport {
    let mut report = ValidationReport::default();
    let gens = &model.generators;
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].iter().any(|h| h.name == g.name) {
            report.fail(&g.name, Check::DuplicateName, "name declared twice");
        }
        if g.degree < 1 {
            report.fail(&g.name, Check::DegreeBound, "degree must be at least 1");
        }
    }
    for (g, dg) in gens.iter().zip(&model.differential) {
        match dg.degree(gens) {
            Err(_) => report.fail(&g.name, Check::Homogeneity, "differential is not homogeneous"),
            Ok(Some(d)) if d + 1 != g.degree || dg.terms().any(|(w, _)| w.is_empty()) => report.fail(
                &g.name,
                Check::Homogeneity,
                format!("differential has degree {d}, expected {}", g.degree as i64 - 1),
            ),
            _ => {}
        }
        if !dg.is_decomposable() {
            report.fail(&g.name, Check::Minimality, "differential has a linear term");
        }
    }
    if !report.has(Check::Homogeneity) {
        for (g, dg) in gens.iter().zip(&model.differential) {
            let dd = model.delta(dg);
            if !dd.is_zero() {
                report.fail(
                    &g.name,
                    Check::SquareZero,
                    format!("δ(δ({})) = {}", g.name, TensorDisplay(gens, &dd)),
                );
            }
        }
    }
    report
}

/// The sub-DGL on generators of degree at most `k`, reindexed.
pub fn truncate_dgl(model: &DGLModel, k: u32) -> DGLModel {
    let kept: Vec<usize> = (0..model.generators.len())
        .filter(|&i| model.generators[i].degree <= k)
        .collect();
    let position: HashMap<usize, usize> = kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    // δ lowers degree, so images only involve kept generators
    let differential = kept
        .iter()
        .map(|&i| model.differential[i].reindexed(|j| position[&j]))
        .collect();
    let generators = kept.iter().map(|&i| model.generators[i].clone()).collect();
    DGLModel::new(format!("{}<={}", model.name, k), generators, differential)
}

/// One degree of `H_*(𝕃(W))`, with classes as vectors over tensor words.
#[derive(Clone, Debug)]
pub struct LieHomology {
    degree: u32,
    index: WordIndex,
    classes: Subquotient,
}

impl LieHomology {
    /// Homology at `here`, a basis of the chains in `degree`; `above` spans
    /// the chains one degree up.
    fn compute(model: &DGLModel, degree: u32, here: &[&LieBasisElement], above: &[&LieBasisElement]) -> Result<Self> {
        let index = WordIndex::spanning(here.iter().map(|b| &b.element));
        let here_vectors: Vec<QVector> = here
            .iter()
            .map(|b| index.vector(&b.element).expect("word indexed"))
            .collect();
        let images: Vec<LieElement> = here.iter().map(|b| model.delta(&b.element)).collect();
        let below = WordIndex::spanning(images.iter());
        let image_vectors: Vec<QVector> = images
            .iter()
            .map(|e| below.vector(e).expect("word indexed"))
            .collect();
        let d_out = QMatrix::from_columns(below.len(), &image_vectors);
        let cycles: Vec<QVector> = kernel_basis(&d_out)
            .into_iter()
            .map(|c| combine(&here_vectors, &c, index.len()))
            .collect();
        let mut boundaries = Vec::with_capacity(above.len());
        for b in above {
            let db = model.delta(&b.element);
            let v = index.vector(&db).ok_or_else(|| {
                Error::InternalInconsistency(format!("boundary in degree {degree} leaves the chain basis"))
            })?;
            boundaries.push(v);
        }
        let classes = Subquotient::new(&cycles, &boundaries, index.len())?;
        Ok(Self { degree, index, classes })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    pub fn representatives(&self) -> Vec<LieElement> {
        self.classes
            .representatives()
            .iter()
            .map(|v| self.index.element(v))
            .collect()
    }

    /// Coordinates of the class of `z`; `None` when `z` is not a cycle here.
    pub fn coordinates(&self, z: &LieElement) -> Option<QVector> {
        self.classes.coordinates(&self.index.vector(z)?)
    }
}

fn combine(vectors: &[QVector], coefficients: &[Rational], len: usize) -> QVector {
    let mut out = vec![Rational::zero(); len];
    for (v, c) in vectors.iter().zip(coefficients) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// `Γ_i = ker(H_i(𝕃(W_{<=i})) -> W_i)`.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub degree: u32,
    /// Basis of the kernel, in class coordinates of `H_i(𝕃(W_{<=i}))`.
    pub basis: Vec<QVector>,
    pub representatives: Vec<LieElement>,
}

impl Gamma {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Matrix of the linear-part map from the classes of `h` to `W_degree`.
fn linear_part_matrix(model: &DGLModel, h: &LieHomology) -> QMatrix {
    let gens = model.generators_of_degree(h.degree());
    let reps = h.representatives();
    let mut m = QMatrix::zeros(gens.len(), reps.len());
    for (j, rep) in reps.iter().enumerate() {
        let linear = rep.linear_part();
        for (r, g) in gens.iter().enumerate() {
            if let Some(c) = linear.get(g) {
                m.set(r, j, c.clone());
            }
        }
    }
    m
}

/// Precomputed homology of `𝕃(W)` and of its truncations up to degree `top`.
pub struct QuillenAnalysis<'m> {
    model: &'m DGLModel,
    top: u32,
    /// `H_d(𝕃W)` at index `d`; index 0 is the zero space.
    homology: Vec<LieHomology>,
    /// `H_d(𝕃(W_{<=d}))` at index `d`.
    truncated: Vec<LieHomology>,
    gamma: Vec<Gamma>,
}

impl<'m> QuillenAnalysis<'m> {
    pub fn new(model: &'m DGLModel, top: u32) -> Result<Self> {
        let gens = model.generators();
        let bases: Vec<Vec<LieBasisElement>> = (0..=top + 1).map(|d| lie_basis(gens, d)).collect();
        let mut homology = Vec::with_capacity(top as usize + 1);
        let mut truncated = Vec::with_capacity(top as usize + 1);
        let mut gamma = Vec::with_capacity(top as usize + 1);
        for d in 0..=top {
            let here: Vec<&LieBasisElement> = bases[d as usize].iter().collect();
            let above: Vec<&LieBasisElement> = bases[d as usize + 1].iter().collect();
            // a greedy basis restricts to a basis of each sub-Lie algebra on a
            // subset of generators, since words split by multidegree
            let above_truncated: Vec<&LieBasisElement> = above
                .iter()
                .copied()
                .filter(|b| b.element.uses_only(|i| gens[i].degree <= d))
                .collect();
            let h = LieHomology::compute(model, d, &here, &above)?;
            let t = if above_truncated.len() == above.len() {
                h.clone()
            } else {
                LieHomology::compute(model, d, &here, &above_truncated)?
            };
            let j = linear_part_matrix(model, &t);
            let kernel = kernel_basis(&j);
            let reps = t.representatives();
            let representatives = kernel
                .iter()
                .map(|c| {
                    let mut e = LieElement::zero();
                    for (r, x) in reps.iter().zip(c) {
                        e.add_assign_scaled(r, x);
                    }
                    e
                })
                .collect();
            gamma.push(Gamma {
                degree: d,
                basis: kernel,
                representatives,
            });
            homology.push(h);
            truncated.push(t);
        }
        Ok(Self {
            model,
            top,
            homology,
            truncated,
            gamma,
        })
    }

    pub fn model(&self) -> &DGLModel {
        self.model
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn homology(&self, degree: u32) -> &LieHomology {
        &self.homology[degree as usize]
    }

    pub fn dim_h(&self, degree: u32) -> usize {
        self.homology[degree as usize].dim()
    }

    /// `dim H_d(𝕃W)` for `d = 0..=top`.
    pub fn homology_dims(&self) -> Vec<usize> {
        self.homology.iter().map(LieHomology::dim).collect()
    }

    pub fn truncated_homology(&self, degree: u32) -> &LieHomology {
        &self.truncated[degree as usize]
    }

    pub fn gamma(&self, degree: u32) -> &Gamma {
        &self.gamma[degree as usize]
    }

    pub fn dim_gamma(&self, degree: u32) -> usize {
        self.gamma.get(degree as usize).map_or(0, Gamma::dim)
    }

    /// Matrix of `b_i: W_i -> Γ_{i-1}`, `w -> [δw]`.
    pub fn b_matrix(&self, i: u32) -> Result<QMatrix> {
        let gens = self.model.generators_of_degree(i);
        if i < 2 || i - 1 > self.top {
            return Ok(QMatrix::zeros(0, gens.len()));
        }
        let h = &self.truncated[i as usize - 1];
        let gamma = &self.gamma[i as usize - 1];
        let j = linear_part_matrix(self.model, h);
        let mut m = QMatrix::zeros(gamma.dim(), gens.len());
        for (col, &g) in gens.iter().enumerate() {
            let name = &self.model.generators[g].name;
            let coords = h.coordinates(&self.model.differential[g]).ok_or_else(|| {
                Error::InternalInconsistency(format!("δ({name}) is not a cycle of the truncation below degree {i}"))
            })?;
            if j.apply(&coords).iter().any(|x| !x.is_zero()) {
                return Err(Error::InternalInconsistency(format!(
                    "class of δ({name}) has a nonzero linear part"
                )));
            }
            let in_gamma = solve_in_span(&gamma.basis, &coords).ok_or_else(|| {
                Error::InternalInconsistency(format!("class of δ({name}) is outside Γ_{}", i - 1))
            })?;
            for (r, c) in in_gamma.into_iter().enumerate() {
                m.set(r, col, c);
            }
        }
        Ok(m)
    }

    /// Matrix of `Γ_i -> H_i(𝕃W)` induced by the inclusion of the truncation.
    pub fn inclusion_matrix(&self, i: u32) -> Result<QMatrix> {
        let h = &self.homology[i as usize];
        let reps = &self.gamma[i as usize].representatives;
        let mut m = QMatrix::zeros(h.dim(), reps.len());
        for (col, z) in reps.iter().enumerate() {
            let coords = h.coordinates(z).ok_or_else(|| {
                Error::InternalInconsistency(format!("representative of Γ_{i} is not a cycle of the model"))
            })?;
            for (r, c) in coords.into_iter().enumerate() {
                m.set(r, col, c);
            }
        }
        Ok(m)
    }

    /// Matrix of the Hurewicz counterpart `H_i(𝕃W) -> W_i`, class to linear part.
    pub fn hurewicz_matrix(&self, i: u32) -> QMatrix {
        linear_part_matrix(self.model, &self.homology[i as usize])
    }

    /// Nodes for `1 <= i <= top`.
    pub fn whitehead_sequence(&self) -> Result<WhiteheadSequenceL> {
        let mut nodes = Vec::new();
        let mut first_failure = None;
        for i in 1..=self.top {
            let b_next = self.b_matrix(i + 1)?;
            let incl = self.inclusion_matrix(i)?;
            let hur = self.hurewicz_matrix(i);
            let b = self.b_matrix(i)?;
            let node = WhiteheadNodeL {
                degree: i,
                dim_w_next: self.model.dim_w(i + 1),
                dim_gamma: self.dim_gamma(i),
                dim_h: self.dim_h(i),
                dim_w: self.model.dim_w(i),
                rank_b_next: rank(&b_next),
                rank_inclusion: rank(&incl),
                rank_hurewicz: rank(&hur),
                rank_b: rank(&b),
            };
            let checks = [
                (
                    format!("Γ_{i}"),
                    incl.mul(&b_next)?.is_zero(),
                    node.dim_gamma - node.rank_inclusion == node.rank_b_next,
                ),
                (
                    format!("H_{i}"),
                    hur.mul(&incl)?.is_zero(),
                    node.dim_h - node.rank_hurewicz == node.rank_inclusion,
                ),
                (
                    format!("W_{i}"),
                    b.mul(&hur)?.is_zero(),
                    node.dim_w - node.rank_b == node.rank_hurewicz,
                ),
            ];
            if first_failure.is_none() {
                if let Some((position, composite_zero, ranks_match)) =
                    checks.into_iter().find(|(_, z, r)| !(*z && *r))
                {
                    first_failure = Some(ExactnessFailure {
                        degree: i,
                        position,
                        detail: if composite_zero {
                            "kernel and image dimensions differ".into()
                        } else {
                            format!("composite of consecutive maps is nonzero (ranks match: {ranks_match})")
                        },
                    });
                }
            }
            nodes.push(node);
        }
        Ok(WhiteheadSequenceL { nodes, first_failure })
    }

    /// `1 + Σ_{i>=2} (-1)^i dim Γ_i`, provided homology vanishes in the two
    /// degrees above `2 * top generator degree`.
    pub fn eta(&self) -> Result<i64> {
        let bound = self.model.eta_bound();
        if self.top < bound {
            return Err(Error::InternalInconsistency(format!(
                "η needs homology through degree {bound}, analysis stops at {}",
                self.top
            )));
        }
        for d in bound - 1..=bound {
            if self.dim_h(d) != 0 {
                return Err(Error::UnboundedGamma { bound, degree: d });
            }
        }
        Ok(1 + (2..=bound)
            .map(|i| {
                let g = self.dim_gamma(i) as i64;
                if i % 2 == 0 {
                    g
                } else {
                    -g
                }
            })
            .sum::<i64>())
    }
}

/// Dimensions and ranks around `W_{i+1} -> Γ_i -> H_i(𝕃W) -> W_i -> Γ_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WhiteheadNodeL {
    pub degree: u32,
    pub dim_w_next: usize,
    pub dim_gamma: usize,
    pub dim_h: usize,
    pub dim_w: usize,
    /// rank of `b_{i+1}: W_{i+1} -> Γ_i`
    pub rank_b_next: usize,
    /// rank of `Γ_i -> H_i(𝕃W)`
    pub rank_inclusion: usize,
    /// rank of `H_i(𝕃W) -> W_i`
    pub rank_hurewicz: usize,
    /// rank of `b_i: W_i -> Γ_{i-1}`
    pub rank_b: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WhiteheadSequenceL {
    pub nodes: Vec<WhiteheadNodeL>,
    pub first_failure: Option<ExactnessFailure>,
}

impl WhiteheadSequenceL {
    pub fn is_exact(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn ensure_exact(&self) -> Result<()> {
        match &self.first_failure {
            None => Ok(()),
            Some(f) => Err(Error::Exactness(f.clone())),
        }
    }
}

pub fn dgl_homology(model: &DGLModel, degree: u32) -> Result<LieHomology> {
    Ok(QuillenAnalysis::new(model, degree)?.homology[degree as usize].clone())
}

pub fn gamma(model: &DGLModel, i: u32) -> Result<Gamma> {
    Ok(QuillenAnalysis::new(model, i)?.gamma[i as usize].clone())
}

pub fn b_map(model: &DGLModel, i: u32) -> Result<QMatrix> {
    QuillenAnalysis::new(model, i.saturating_sub(1))?.b_matrix(i)
}

pub fn whitehead_sequence_dgl(model: &DGLModel, max_degree: u32) -> Result<WhiteheadSequenceL> {
    QuillenAnalysis::new(model, max_degree)?.whitehead_sequence()
}

pub fn eta(model: &DGLModel) -> Result<i64> {
    QuillenAnalysis::new(model, model.eta_bound())?.eta()
}

/// The same alternating sum with topological indexing `Γ_i(X) = Γ_{i-1}`,
/// which flips every sign after the leading 1.
pub fn eta_topological_indexing(eta: i64) -> i64 {
    2 - eta
}
