//! Numerical invariants of elliptic models and the ledger of structural
//! claims checked against them.
//!
//! Every verdict carries the degree bound it was certified in. A Sullivan
//! model counts as elliptic within bound `B` when its top cohomology degree
//! `n` equals `sum_odd deg - sum_even (deg - 1)` and `H^i = 0` for `n < i <= B`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, ExactnessFailure, Result};
use crate::linalg::rank;
use crate::quillen::{truncate_dgl, DGLModel, QuillenAnalysis};
use crate::sullivan::{SullivanAnalysis, SullivanModel};

fn alternating(i: u32, dim: usize) -> i64 {
    if i.is_multiple_of(2) {
        dim as i64
    } else {
        -(dim as i64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Verified,
    Violated,
    NotApplicable,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Verified => "verified",
            ClaimStatus::Violated => "violated",
            ClaimStatus::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub claim: String,
    pub statement: String,
    pub status: ClaimStatus,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremLedger {
    pub entries: Vec<LedgerEntry>,
}

impl TheoremLedger {
    fn record(&mut self, claim: &str, statement: &str, holds: bool, witness: impl Into<String>) {
        self.entries.push(LedgerEntry {
            claim: claim.into(),
            statement: statement.into(),
            status: if holds {
                ClaimStatus::Verified
            } else {
                ClaimStatus::Violated
            },
            witness: witness.into(),
        });
    }

    fn skip(&mut self, claim: &str, statement: &str, reason: impl Into<String>) {
        self.entries.push(LedgerEntry {
            claim: claim.into(),
            statement: statement.into(),
            status: ClaimStatus::NotApplicable,
            witness: reason.into(),
        });
    }

    pub fn extend(&mut self, other: TheoremLedger) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, claim: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.claim == claim)
    }

    pub fn violations(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.iter().filter(|e| e.status == ClaimStatus::Violated)
    }

    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Invariants of a Sullivan model certified elliptic within `bound`.
/// Per-degree vectors are indexed by degree `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub model: String,
    pub bound: u32,
    pub betti: Vec<usize>,
    pub dim_v: Vec<usize>,
    /// `dim L^i`, zero for `i < 2`.
    pub dim_l: Vec<usize>,
    pub chi_h: i64,
    pub chi_v: i64,
    pub rho: i64,
    pub formal_dimension: u32,
    pub elliptic_verified_up_to: u32,
    pub pure: bool,
    pub f0: bool,
    pub odd_sphere: bool,
    /// Ranks of `b^i: V^i -> L^(i+1)` indexed by `i`.
    pub rank_b: Vec<usize>,
    pub whitehead_failure: Option<ExactnessFailure>,
}

impl InvariantReport {
    pub fn l_even(&self) -> usize {
        self.dim_l.iter().step_by(2).sum()
    }

    pub fn l_odd(&self) -> usize {
        self.dim_l.iter().skip(1).step_by(2).sum()
    }

    pub fn total_betti(&self) -> usize {
        self.betti.iter().sum()
    }

    pub fn total_v(&self) -> usize {
        self.dim_v.iter().sum()
    }

    fn dim_l_at(&self, i: u32) -> usize {
        self.dim_l.get(i as usize).copied().unwrap_or(0)
    }

    fn dim_v_at(&self, i: u32) -> usize {
        self.dim_v.get(i as usize).copied().unwrap_or(0)
    }

    /// `sum_{i=4}^{n+1} (-1)^i dim L^i`.
    pub fn rho_partial_sum(&self) -> i64 {
        (4..=self.formal_dimension + 1)
            .map(|i| alternating(i, self.dim_l_at(i)))
            .sum()
    }
}

/// Computes every Sullivan-side invariant within `bound` (default
/// [`SullivanModel::default_bound`]), failing unless the model is elliptic there.
pub fn sullivan_invariants(model: &SullivanModel, bound: Option<u32>) -> Result<InvariantReport> {
    let bound = bound.unwrap_or_else(|| model.default_bound());
    let analysis = SullivanAnalysis::new(model, bound)?;
    let betti = analysis.betti_numbers();
    let nc = model.candidate_formal_dimension();
    let not_elliptic = |degree: u32, what: &str| Error::NotEllipticWithinBound {
        bound,
        degree,
        what: what.into(),
    };
    if let Some(top) = (0..=bound).rev().find(|&i| betti[i as usize] != 0) {
        if top as i64 != nc {
            let first = (0..=bound)
                .find(|&i| betti[i as usize] != 0 && i as i64 > nc.max(0))
                .unwrap_or(top);
            return Err(not_elliptic(first, "cohomology"));
        }
    }
    let n = nc as u32;
    if bound <= n || model.top_generator_degree() > bound {
        return Err(not_elliptic(bound, "window too small to certify"));
    }
    let dim_v: Vec<usize> = (0..=bound).map(|i| model.dim_v(i)).collect();
    let dim_l: Vec<usize> = (0..=bound).map(|i| analysis.dim_l(i)).collect();
    let chi_h = betti.iter().enumerate().map(|(i, &b)| alternating(i as u32, b)).sum();
    let chi_v = model.dim_v_even() as i64 - model.dim_v_odd() as i64;
    let rho = 1 + (4..=bound).map(|i| alternating(i, dim_l[i as usize])).sum::<i64>();
    let mut rank_b = Vec::with_capacity(bound as usize);
    for i in 0..bound {
        rank_b.push(rank(&analysis.b_matrix(i)?));
    }
    let sequence = analysis.whitehead_sequence()?;
    let f0 = betti.iter().skip(1).step_by(2).all(|&b| b == 0);
    let odd_sphere = dim_l.iter().step_by(2).all(|&d| d == 0);
    Ok(InvariantReport {
        model: model.name().into(),
        bound,
        betti,
        dim_v,
        dim_l,
        chi_h,
        chi_v,
        rho,
        formal_dimension: n,
        elliptic_verified_up_to: bound,
        pure: model.is_pure(),
        f0,
        odd_sphere,
        rank_b,
        whitehead_failure: sequence.first_failure,
    })
}

pub fn euler_characteristics(model: &SullivanModel, bound: u32) -> Result<(i64, i64)> {
    let r = sullivan_invariants(model, Some(bound))?;
    Ok((r.chi_h, r.chi_v))
}

pub fn formal_dimension(model: &SullivanModel, bound: u32) -> Result<u32> {
    Ok(sullivan_invariants(model, Some(bound))?.formal_dimension)
}

pub fn rho(model: &SullivanModel) -> Result<i64> {
    Ok(sullivan_invariants(model, None)?.rho)
}

/// Constraints on `V` and `L` that every elliptic model satisfies.
pub fn elliptic_checks(r: &InvariantReport) -> TheoremLedger {
    let mut ledger = TheoremLedger::default();
    let n = r.formal_dimension;
    let v_even: usize = r.dim_v.iter().step_by(2).sum();
    let v_odd: usize = r.dim_v.iter().skip(1).step_by(2).sum();
    ledger.record(
        "odd-generators-dominate",
        "dim V^odd >= dim V^even",
        v_odd >= v_even,
        format!("dim V^odd = {v_odd}, dim V^even = {v_even}"),
    );
    let high: Vec<u32> = (2 * n..=r.bound).filter(|&i| r.dim_v_at(i) != 0).collect();
    ledger.record(
        "no-generators-from-twice-formal-dimension",
        "V^i = 0 for i >= 2n",
        high.is_empty(),
        format!("n = {n}, nonzero V^i at {high:?}"),
    );
    let even_high: Vec<u32> = (n + 1..=r.bound)
        .filter(|&i| i % 2 == 0 && r.dim_v_at(i) != 0)
        .collect();
    ledger.record(
        "no-even-generators-above-formal-dimension",
        "V^i = 0 for even i > n",
        even_high.is_empty(),
        format!("nonzero even V^i above {n} at {even_high:?}"),
    );
    let odd_high: Vec<(u32, usize)> = (n + 1..=r.bound)
        .filter(|&i| i % 2 == 1 && r.dim_v_at(i) != 0)
        .map(|i| (i, r.dim_v_at(i)))
        .collect();
    ledger.record(
        "single-odd-generator-above-formal-dimension",
        "at most one V^i with i > n odd is nonzero, and it is one-dimensional",
        odd_high.len() <= 1 && odd_high.iter().all(|&(_, d)| d == 1),
        format!("(degree, dim) above {n}: {odd_high:?}"),
    );
    ledger.record(
        "euler-characteristic-signs",
        "chi_H >= 0, chi_V <= 0, and chi_H = 0 exactly when chi_V < 0",
        r.chi_h >= 0 && r.chi_v <= 0 && ((r.chi_h == 0) == (r.chi_v < 0)),
        format!("chi_H = {}, chi_V = {}", r.chi_h, r.chi_v),
    );
    let mismatched: Vec<u32> = (n + 2..=r.bound)
        .filter(|&i| r.dim_l_at(i) != r.dim_v_at(i - 1))
        .collect();
    ledger.record(
        "l-matches-generators-above-formal-dimension",
        "dim L^i = dim V^(i-1) for i > n + 1",
        mismatched.is_empty(),
        format!("degrees where they differ: {mismatched:?}"),
    );
    let odd_l: Vec<u32> = (n + 2..=r.bound)
        .filter(|&i| i % 2 == 1 && r.dim_l_at(i) != 0)
        .collect();
    ledger.record(
        "odd-l-vanishes-above-formal-dimension",
        "L^i = 0 for odd i > n + 1",
        odd_l.is_empty(),
        format!("nonzero odd L^i at {odd_l:?}"),
    );
    let far_l: Vec<u32> = (2 * n + 1..=r.bound).filter(|&i| r.dim_l_at(i) != 0).collect();
    ledger.record(
        "l-vanishes-above-twice-formal-dimension",
        "L^i = 0 for i > 2n",
        far_l.is_empty(),
        format!("nonzero L^i at {far_l:?}"),
    );
    ledger.record(
        "sullivan-whitehead-exact",
        "V^i -> L^(i+1) -> H^(i+1) -> V^(i+1) is exact at every node",
        r.whitehead_failure.is_none(),
        match &r.whitehead_failure {
            None => format!("nodes 1..{}", r.bound.saturating_sub(1)),
            Some(f) => format!("fails at {} (degree {}): {}", f.position, f.degree, f.detail),
        },
    );
    ledger
}

/// Identities relating ρ to the Euler characteristics and to `L`.
pub fn verify_identities(r: &InvariantReport) -> TheoremLedger {
    let mut ledger = TheoremLedger::default();
    ledger.record(
        "rho-equals-euler-difference",
        "rho = chi_H - chi_V",
        r.rho == r.chi_h - r.chi_v,
        format!("rho = {}, chi_H - chi_V = {}", r.rho, r.chi_h - r.chi_v),
    );
    let slack = r.rho - r.rho_partial_sum();
    ledger.record(
        "rho-partial-sum-bound",
        "0 <= rho - sum_{i=4}^{n+1} (-1)^i dim L^i <= 2",
        (0..=2).contains(&slack),
        format!("partial sum = {}, slack = {slack}", r.rho_partial_sum()),
    );
    ledger.record("rho-positive", "rho >= 1", r.rho >= 1, format!("rho = {}", r.rho));
    ledger.record(
        "rho-dichotomy",
        "rho = chi_H when chi_H > 0, and rho = -chi_V when chi_H = 0",
        if r.chi_h > 0 {
            r.rho == r.chi_h
        } else {
            r.rho == -r.chi_v
        },
        format!("rho = {}, chi_H = {}, chi_V = {}", r.rho, r.chi_h, r.chi_v),
    );
    ledger.record(
        "even-l-dominates-odd-l",
        "dim L^even >= dim L^odd",
        r.l_even() >= r.l_odd(),
        format!("dim L^even = {}, dim L^odd = {}", r.l_even(), r.l_odd()),
    );
    let statement = "L^even = 0 implies dim H^* = dim V^* + 1";
    if r.l_even() == 0 {
        ledger.record(
            "total-dimension-count",
            statement,
            r.total_betti() == r.total_v() + 1,
            format!("dim H^* = {}, dim V^* = {}", r.total_betti(), r.total_v()),
        );
    } else {
        ledger.skip("total-dimension-count", statement, "L^even is nonzero");
    }
    ledger
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F0Classification {
    pub f0: bool,
    pub pure: bool,
    pub evidence: String,
}

/// `H^odd = 0` within the window; for pure models also compared against `chi_V = 0`.
pub fn classify_f0(r: &InvariantReport) -> (F0Classification, TheoremLedger) {
    let mut ledger = TheoremLedger::default();
    let odd: Vec<u32> = (1..=r.bound)
        .step_by(2)
        .filter(|&i| r.betti[i as usize] != 0)
        .collect();
    let evidence = if r.f0 {
        format!("H^odd = 0 through degree {}", r.bound)
    } else {
        format!("H^odd nonzero in degrees {odd:?}")
    };
    let statement = "for a pure model, H^odd = 0 exactly when chi_V = 0";
    if r.pure {
        ledger.record(
            "f0-pure-criterion",
            statement,
            r.f0 == (r.chi_v == 0),
            format!("H^odd = 0: {}, chi_V = {}", r.f0, r.chi_v),
        );
    } else {
        ledger.skip("f0-pure-criterion", statement, "model is not pure");
    }
    (
        F0Classification {
            f0: r.f0,
            pure: r.pure,
            evidence,
        },
        ledger,
    )
}

/// For `H^odd = 0`: every odd `L^i` and every even-degree `b^i` vanish.
pub fn f0_consequences(r: &InvariantReport) -> TheoremLedger {
    let mut ledger = TheoremLedger::default();
    let (s1, s2) = ("L^i = 0 for every odd i", "b^i = 0 for every even i");
    if !r.f0 {
        ledger.skip("f0-odd-l-vanishes", s1, "H^odd is nonzero");
        ledger.skip("f0-even-b-vanishes", s2, "H^odd is nonzero");
        return ledger;
    }
    ledger.record(
        "f0-odd-l-vanishes",
        s1,
        r.l_odd() == 0,
        format!("dim L^odd = {}", r.l_odd()),
    );
    let even_rank: usize = r.rank_b.iter().step_by(2).sum();
    ledger.record(
        "f0-even-b-vanishes",
        s2,
        even_rank == 0,
        format!("total rank of even b^i = {even_rank}"),
    );
    ledger
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddSphereVerdict {
    pub detected: bool,
    pub evidence: String,
}

/// Detects `L^even = 0` and, when it holds, checks the odd-sphere shape.
pub fn odd_sphere_detect(r: &InvariantReport) -> (OddSphereVerdict, TheoremLedger) {
    let mut ledger = TheoremLedger::default();
    let statement = "L^even = 0 forces L^odd = 0, H^i = V^i for i >= 2, and H = Q in degrees 0 and one odd n";
    if !r.odd_sphere {
        let witness: Vec<(u32, usize)> = (0..=r.bound)
            .step_by(2)
            .filter(|&i| r.dim_l_at(i) != 0)
            .map(|i| (i, r.dim_l_at(i)))
            .collect();
        ledger.skip("odd-sphere-shape", statement, "L^even is nonzero");
        return (
            OddSphereVerdict {
                detected: false,
                evidence: format!("nonzero even L^i (degree, dim): {witness:?}"),
            },
            ledger,
        );
    }
    let support: Vec<(u32, usize)> = (0..=r.bound)
        .filter(|&i| r.betti[i as usize] != 0)
        .map(|i| (i, r.betti[i as usize]))
        .collect();
    let shape = support.len() == 2 && support[0] == (0, 1) && support[1].1 == 1 && support[1].0 % 2 == 1;
    let h_is_v = (2..=r.bound).all(|i| r.betti[i as usize] == r.dim_v_at(i));
    ledger.record(
        "odd-sphere-shape",
        statement,
        shape && h_is_v && r.l_odd() == 0,
        format!("H support {support:?}, dim L^odd = {}, H = V above 1: {h_is_v}", r.l_odd()),
    );
    (
        OddSphereVerdict {
            detected: true,
            evidence: format!("L^even = 0 through degree {}; H support {support:?}", r.bound),
        },
        ledger,
    )
}

/// Every Sullivan-side claim for `r`.
pub fn sullivan_ledger(r: &InvariantReport) -> TheoremLedger {
    let mut ledger = elliptic_checks(r);
    ledger.extend(verify_identities(r));
    ledger.extend(classify_f0(r).1);
    ledger.extend(f0_consequences(r));
    ledger.extend(odd_sphere_detect(r).1);
    ledger
}

/// Invariants of a Quillen model within its η window. Vectors are indexed by
/// degree `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DglInvariantReport {
    pub model: String,
    pub bound: u32,
    pub dim_w: Vec<usize>,
    /// `dim H_i(𝕃W)`; the space's `pi_(i+1)`.
    pub homology: Vec<usize>,
    /// `dim H_i(𝕃(W_{<=i}))`.
    pub truncated_homology: Vec<usize>,
    pub gamma: Vec<usize>,
    /// `dim H_i(𝕃(W_{<=i-1}))`, present only when `W_1 = 0`.
    pub lower_homology: Option<Vec<usize>>,
    pub eta: i64,
    /// The same sum read with topological indexing.
    pub eta_topological_indexing: i64,
    /// `top generator degree + 1`, the top homology degree of the modelled space.
    pub formal_dimension: u32,
    pub whitehead_failure: Option<ExactnessFailure>,
}

impl DglInvariantReport {
    fn gamma_at(&self, i: u32) -> usize {
        self.gamma.get(i as usize).copied().unwrap_or(0)
    }

    /// `sum_{i=2}^{n-1} (-1)^i dim Γ_i`.
    pub fn eta_partial_sum(&self) -> i64 {
        (2..self.formal_dimension).map(|i| alternating(i, self.gamma_at(i))).sum()
    }
}

pub fn dgl_invariants(model: &DGLModel) -> Result<DglInvariantReport> {
    let bound = model.eta_bound();
    let analysis = QuillenAnalysis::new(model, bound)?;
    let eta = analysis.eta()?;
    let sequence = analysis.whitehead_sequence()?;
    let lower_homology = if model.dim_w(1) == 0 {
        let mut dims = vec![0; bound as usize + 1];
        for i in 2..=bound {
            let lower = truncate_dgl(model, i - 1);
            dims[i as usize] = QuillenAnalysis::new(&lower, i)?.dim_h(i);
        }
        Some(dims)
    } else {
        None
    };
    Ok(DglInvariantReport {
        model: model.name().into(),
        bound,
        dim_w: (0..=bound).map(|i| model.dim_w(i)).collect(),
        homology: analysis.homology_dims(),
        truncated_homology: (0..=bound).map(|i| analysis.truncated_homology(i).dim()).collect(),
        gamma: (0..=bound).map(|i| analysis.dim_gamma(i)).collect(),
        lower_homology,
        eta,
        eta_topological_indexing: crate::quillen::eta_topological_indexing(eta),
        formal_dimension: model.top_generator_degree() + 1,
        whitehead_failure: sequence.first_failure,
    })
}

/// Quillen-side claims.
pub fn dgl_ledger(r: &DglInvariantReport) -> TheoremLedger {
    let mut ledger = TheoremLedger::default();
    ledger.record(
        "quillen-whitehead-exact",
        "W_(i+1) -> Γ_i -> H_i(𝕃W) -> W_i is exact at every node",
        r.whitehead_failure.is_none(),
        match &r.whitehead_failure {
            None => format!("nodes 1..{}", r.bound),
            Some(f) => format!("fails at {} (degree {}): {}", f.position, f.degree, f.detail),
        },
    );
    ledger.record("eta-positive", "eta >= 1", r.eta >= 1, format!("eta = {}", r.eta));
    let slack = r.eta - r.eta_partial_sum();
    ledger.record(
        "eta-partial-sum-bound",
        "0 <= eta - sum_{i=2}^{n-1} (-1)^i dim Γ_i <= 2",
        (0..=2).contains(&slack),
        format!("partial sum = {}, slack = {slack}", r.eta_partial_sum()),
    );
    let bad: Vec<usize> = (2..r.gamma.len())
        .filter(|&i| r.truncated_homology[i] == 0 && r.gamma[i] != 0)
        .collect();
    ledger.record(
        "gamma-vanishes-with-truncated-homology",
        "H_i(𝕃(W_{<=i})) = 0 implies Γ_i = 0",
        bad.is_empty(),
        format!("violating degrees {bad:?}"),
    );
    let statement = "when W_1 = 0, dim Γ_i = dim H_i(𝕃(W_{<=i-1})) for i >= 2";
    match &r.lower_homology {
        Some(lower) => {
            let bad: Vec<usize> = (2..r.gamma.len()).filter(|&i| lower[i] != r.gamma[i]).collect();
            ledger.record(
                "gamma-equals-lower-homology",
                statement,
                bad.is_empty(),
                format!("degrees where they differ: {bad:?}"),
            );
        }
        None => ledger.skip("gamma-equals-lower-homology", statement, "W_1 is nonzero"),
    }
    ledger
}

/// Side-by-side dimensions of a Sullivan and a Quillen model of one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityRow {
    pub degree: u32,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub bound: u32,
    /// `dim L^k` against `dim Γ_{k-2}`.
    pub connecting: Vec<DualityRow>,
    /// `dim V^i` against `dim H_{i-1}(𝕃W)`.
    pub homotopy: Vec<DualityRow>,
    /// `dim H^i(ΛV)` against `dim W_{i-1}`, for `i >= 2`.
    pub homology: Vec<DualityRow>,
    pub rho: i64,
    pub eta: i64,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    pub degree: u32,
    pub left: i64,
    pub right: i64,
}

impl DualityReport {
    pub fn is_consistent(&self) -> bool {
        self.first_mismatch.is_none()
    }

    pub fn ensure_consistent(&self) -> Result<()> {
        match &self.first_mismatch {
            None => Ok(()),
            Some(m) => Err(Error::Mismatch {
                check: m.check.clone(),
                degree: m.degree,
                left: m.left,
                right: m.right,
            }),
        }
    }
}

/// Compares two models the caller asserts present the same space.
pub fn compare_models(s: &SullivanModel, q: &DGLModel) -> Result<DualityReport> {
    let sr = sullivan_invariants(s, None)?;
    let bound = sr.bound;
    let top = (bound - 1).max(q.eta_bound());
    let qa = QuillenAnalysis::new(q, top)?;
    let eta = qa.eta()?;
    let connecting: Vec<DualityRow> = (4..=bound)
        .map(|k| DualityRow {
            degree: k,
            left: sr.dim_l[k as usize],
            right: qa.dim_gamma(k - 2),
        })
        .collect();
    let homotopy: Vec<DualityRow> = (2..=bound)
        .map(|i| DualityRow {
            degree: i,
            left: sr.dim_v[i as usize],
            right: qa.dim_h(i - 1),
        })
        .collect();
    let homology: Vec<DualityRow> = (2..=bound)
        .map(|i| DualityRow {
            degree: i,
            left: sr.betti[i as usize],
            right: q.dim_w(i - 1),
        })
        .collect();
    let mismatch = |check: &str, rows: &[DualityRow]| {
        rows.iter().find(|r| r.left != r.right).map(|r| Mismatch {
            check: check.into(),
            degree: r.degree,
            left: r.left as i64,
            right: r.right as i64,
        })
    };
    let first_mismatch = mismatch("dim L^k vs dim Γ_(k-2)", &connecting)
        .or_else(|| {
            (sr.rho != eta).then(|| Mismatch {
                check: "rho vs eta".into(),
                degree: 0,
                left: sr.rho,
                right: eta,
            })
        })
        .or_else(|| mismatch("dim V^i vs dim H_(i-1)(𝕃W)", &homotopy))
        .or_else(|| mismatch("dim H^i vs dim W_(i-1)", &homology));
    Ok(DualityReport {
        bound,
        connecting,
        homotopy,
        homology,
        rho: sr.rho,
        eta,
        first_mismatch,
    })
}
