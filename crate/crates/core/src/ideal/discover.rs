use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::blocks::{block_rows, check_cap, grouped, poly_row, HARD_DEGREE_CAP};
use super::points::random_trifocal_points;
use super::vanishing::{vanishing_mod_p, vanishing_subspace, VanishingReport};
use super::{GradedGeneratorSet, IdealError};
use crate::linalg::sparse::Echelon;
use crate::linalg::DEFAULT_PRIME;
use crate::poly::{weight_space_basis, ModPoly, Monomial27, Poly27, Weight};
use crate::rep::{hw_polys_mod_p, hw_space, module_dim, module_span, module_span_mod_p, multiplicity, IsotypicLabel};

/// Prime used for the modular half of exact discovery.
const P_EXACT: u32 = 2_147_483_647;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoverConfig {
    pub prime: u32,
    pub seed: u64,
    /// Evaluation points per unknown in the vanishing kernels.
    pub oversample: usize,
}

impl Default for DiscoverConfig {
    fn default() -> Self {
        DiscoverConfig { prime: DEFAULT_PRIME, seed: 1, oversample: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelReport {
    pub label: IsotypicLabel,
    pub kronecker: u64,
    pub ideal_multiplicity: usize,
    pub new_generators: usize,
    pub module_dim: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeInventory {
    pub degree: u32,
    /// Labels with a nonzero part in the ideal.
    pub labels: Vec<LabelReport>,
    #[serde(skip)]
    pub new_hw: Vec<(IsotypicLabel, ModPoly)>,
}

impl DegreeInventory {
    /// Number of new minimal generators in this degree.
    pub fn new_generator_count(&self) -> u64 {
        self.labels.iter().map(|l| l.new_generators as u64 * l.module_dim).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModularInventory {
    pub config: DiscoverConfig,
    pub degrees: Vec<DegreeInventory>,
    /// Bases of all generator modules found.
    #[serde(skip)]
    pub generators: GradedGeneratorSet,
}

impl ModularInventory {
    pub fn counts(&self) -> BTreeMap<u32, u64> {
        self.degrees.iter().map(|d| (d.degree, d.new_generator_count())).collect()
    }

    pub fn degree(&self, d: u32) -> Option<&DegreeInventory> {
        self.degrees.iter().find(|x| x.degree == d)
    }
}

fn label_seed(seed: u64, label: &IsotypicLabel) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.to_string().bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

/// Indices of the candidates that are independent modulo the products of
/// the lower degree generators with monomials, chosen greedily in order.
fn select_new(lower: &GradedGeneratorSet, candidates: &[ModPoly], w: &Weight, d: u32) -> Vec<usize> {
    let basis = weight_space_basis(w);
    let groups = grouped(lower, d - 1);
    let mut ech = Echelon::new(basis.len(), lower.p);
    for row in block_rows(&groups, w, &basis) {
        ech.insert(&row);
    }
    let mut out = Vec::new();
    for (i, f) in candidates.iter().enumerate() {
        let mut row = poly_row(&basis, f, Monomial27::ONE);
        row.sort_unstable();
        if ech.insert(&row) {
            out.push(i);
        }
    }
    out
}

fn scan_label(
    label: &IsotypicLabel,
    lower: &GradedGeneratorSet,
    cfg: &DiscoverConfig,
) -> Result<Option<(LabelReport, Vec<ModPoly>)>, IdealError> {
    let p = cfg.prime;
    let hw = hw_polys_mod_p(label, p)?.ok_or(IdealError::BadPrime(p))?;
    let mut rng = ChaCha8Rng::seed_from_u64(label_seed(cfg.seed, label));
    let ker = vanishing_mod_p(&hw, p, &mut rng, cfg.oversample)?;
    if ker.is_empty() {
        return Ok(None);
    }
    let vanishing: Vec<ModPoly> = ker.iter().map(|c| ModPoly::combination(p, &hw, c)).collect();
    let chosen = select_new(lower, &vanishing, &label.weight()?, label.degree());
    let report = LabelReport {
        label: label.clone(),
        kronecker: hw.len() as u64,
        ideal_multiplicity: vanishing.len(),
        new_generators: chosen.len(),
        module_dim: module_dim(label),
    };
    Ok(Some((report, chosen.into_iter().map(|i| vanishing[i].clone()).collect())))
}

/// Degree by degree search for minimal generators of the ideal of the
/// trifocal variety, entirely over GF(p).
///
/// In each degree every label is scanned: its highest weight space is cut
/// down to the part vanishing on random points of the variety, and the part
/// not already generated in lower degrees is kept.
pub fn discover(max_degree: u32, cfg: &DiscoverConfig) -> Result<ModularInventory, IdealError> {
    discover_with_progress(max_degree, cfg, |_| {})
}

/// `discover`, calling `progress` as each degree completes.
pub fn discover_with_progress(
    max_degree: u32,
    cfg: &DiscoverConfig,
    mut progress: impl FnMut(&DegreeInventory),
) -> Result<ModularInventory, IdealError> {
    check_cap(max_degree, HARD_DEGREE_CAP)?;
    let mut generators = GradedGeneratorSet::new(cfg.prime);
    let mut degrees = Vec::new();
    for d in 1..=max_degree {
        let labels: Vec<IsotypicLabel> = IsotypicLabel::all(d).into_iter().filter(|l| multiplicity(l) > 0).collect();
        let scanned: Vec<_> =
            labels.par_iter().map(|l| scan_label(l, &generators, cfg)).collect::<Result<Vec<_>, _>>()?;
        let mut reports = Vec::new();
        let mut new_hw = Vec::new();
        for (report, fresh) in scanned.into_iter().flatten() {
            new_hw.extend(fresh.into_iter().map(|f| (report.label.clone(), f)));
            reports.push(report);
        }
        let spans: Vec<Vec<ModPoly>> =
            new_hw.par_iter().map(|(_, f)| module_span_mod_p(f)).collect::<Result<Vec<_>, _>>()?;
        for f in spans.into_iter().flatten() {
            generators.push(f)?;
        }
        let done = DegreeInventory { degree: d, labels: reports, new_hw };
        progress(&done);
        degrees.push(done);
    }
    Ok(ModularInventory { config: *cfg, degrees, generators })
}

/// A minimal generator over Q: a highest weight vector whose module consists
/// of minimal generators.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactGenerator {
    pub label: IsotypicLabel,
    pub hw: Poly27,
}

impl ExactGenerator {
    pub fn degree(&self) -> u32 {
        self.label.degree()
    }
}

#[derive(Debug)]
pub struct ExactInventory {
    pub modular: ModularInventory,
    pub generators: Vec<ExactGenerator>,
    pub vanishing: Vec<VanishingReport>,
    modules: Vec<OnceLock<Vec<Poly27>>>,
}

impl ExactInventory {
    pub fn of_degree(&self, d: u32) -> impl Iterator<Item = (usize, &ExactGenerator)> {
        self.generators.iter().enumerate().filter(move |(_, g)| g.degree() == d)
    }

    pub fn find(&self, label: &IsotypicLabel) -> Option<usize> {
        self.generators.iter().position(|g| &g.label == label)
    }

    /// Basis over Q of the module generated by generator `i`.
    pub fn module_basis(&self, i: usize) -> &[Poly27] {
        self.modules[i]
            .get_or_init(|| module_span(&self.generators[i].hw).expect("generator is a highest weight vector"))
    }

    /// Generators of degree `d` together with their modules.
    pub fn module_bases_of_degree(&self, d: u32) -> Vec<Poly27> {
        let idx: Vec<usize> = self.of_degree(d).map(|(i, _)| i).collect();
        idx.par_iter().for_each(|&i| {
            self.module_basis(i);
        });
        idx.iter().flat_map(|&i| self.module_basis(i).iter().cloned()).collect()
    }
}

/// Rational highest weight vectors for every new generator module.
///
/// The labels come from a modular run at a large prime; each label's
/// vanishing space is then recomputed exactly at rational points and the new
/// part chosen against the lower degree modules.
pub fn discover_exact(max_degree: u32, cfg: &DiscoverConfig) -> Result<ExactInventory, IdealError> {
    let mcfg = DiscoverConfig { prime: P_EXACT, ..*cfg };
    let modular = discover(max_degree, &mcfg)?;
    let mut lower = GradedGeneratorSet::new(P_EXACT);
    let mut generators = Vec::new();
    let mut vanishing = Vec::new();
    for deg in &modular.degrees {
        let todo: Vec<&LabelReport> = deg.labels.iter().filter(|l| l.new_generators > 0).collect();
        let found = todo.par_iter().map(|lr| exact_label(lr, &lower, cfg)).collect::<Result<Vec<_>, _>>()?;
        let mut fresh = Vec::new();
        for (report, chosen) in found {
            vanishing.push(report);
            fresh.extend(chosen);
        }
        for g in &fresh {
            for f in module_span_mod_p(&ModPoly::from_poly(&g.hw, P_EXACT)?)? {
                lower.push(f)?;
            }
        }
        generators.extend(fresh);
    }
    let modules = generators.iter().map(|_| OnceLock::new()).collect();
    Ok(ExactInventory { modular, generators, vanishing, modules })
}

fn exact_label(
    lr: &LabelReport,
    lower: &GradedGeneratorSet,
    cfg: &DiscoverConfig,
) -> Result<(VanishingReport, Vec<ExactGenerator>), IdealError> {
    let h = hw_space(&lr.label)?;
    let seed = label_seed(cfg.seed, &lr.label);
    let points = random_trifocal_points(seed, cfg.oversample.max(1) * h.dim());
    let fresh = random_trifocal_points(seed ^ 0x5555, h.dim() + 2);
    let report = vanishing_subspace(&h, &points, &fresh)?;
    if report.ideal_multiplicity != lr.ideal_multiplicity {
        return Err(IdealError::Inconsistent(format!(
            "{}: {} vanishing vectors over Q, {} mod p",
            lr.label, report.ideal_multiplicity, lr.ideal_multiplicity
        )));
    }
    let cands = report.certificate.iter().map(|f| ModPoly::from_poly(f, P_EXACT)).collect::<Result<Vec<_>, _>>()?;
    let chosen = select_new(lower, &cands, &lr.label.weight()?, lr.label.degree());
    if chosen.len() != lr.new_generators {
        return Err(IdealError::Inconsistent(format!("{}: new generator count differs over Q", lr.label)));
    }
    let gens = chosen
        .into_iter()
        .map(|i| ExactGenerator { label: lr.label.clone(), hw: report.certificate[i].clone() })
        .collect();
    Ok((report, gens))
}

/// Exact inventory through degree six with the default configuration,
/// computed once per process.
pub fn default_inventory() -> &'static ExactInventory {
    static INV: OnceLock<ExactInventory> = OnceLock::new();
    INV.get_or_init(|| discover_exact(6, &DiscoverConfig::default()).expect("default discovery succeeds"))
}
