//! Fuzz campaigns over generator classes, and counterexample search.

mod campaign;
mod search;
mod witness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use campaign::{
    run_campaign, CampaignResult, DimSummary, MarginHistogram, SideStats, TargetResult,
};
pub use search::{
    search_counterexample, SearchId, SearchOutcome, SearchTarget, DEFAULT_PERTURB_STEPS,
};
pub use witness::{replay, Witness, WitnessOrigin};

use crate::decomp::cartesian;
use crate::inequalities::InequalityId;
use crate::numkernel::{ComplexMatrix, Tolerance};
use crate::randgen::{sample, GeneratorClass, PrngStream};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzError {
    #[error("invalid campaign config: {0}")]
    ConfigInvalid(String),
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignTarget {
    pub id: InequalityId,
    pub class: GeneratorClass,
}

impl CampaignTarget {
    pub fn new(id: InequalityId, class: GeneratorClass) -> Self {
        CampaignTarget { id, class }
    }

    pub fn canonical(id: InequalityId) -> Self {
        CampaignTarget::new(id, canonical_class(id))
    }

    /// Whether a `Violated` verdict contradicts a known result.
    ///
    /// Every catalog theorem carries its hypotheses into the verdict, so a
    /// failed hypothesis never counts as a violation. The Löwner statement is
    /// only known to hold when `A` is normal.
    pub fn expected_to_hold(&self) -> bool {
        match self.id {
            InequalityId::LoewnerCartesian => matches!(
                self.class,
                GeneratorClass::Hermitian
                    | GeneratorClass::Psd
                    | GeneratorClass::Unitary
                    | GeneratorClass::Normal
                    | GeneratorClass::NormalOrderConstrained
            ),
            _ => true,
        }
    }
}

/// The generator class whose samples satisfy each statement's hypotheses.
pub fn canonical_class(id: InequalityId) -> GeneratorClass {
    match id {
        InequalityId::Scalar16 | InequalityId::Thm25Plus | InequalityId::Thm25Minus => {
            GeneratorClass::Hermitian
        }
        InequalityId::Bk11 => GeneratorClass::Psd,
        InequalityId::Tao12 | InequalityId::Ak13 => GeneratorClass::PsdBlock2,
        InequalityId::Ak14 => GeneratorClass::DominatedPair,
        InequalityId::Thm21 | InequalityId::LoewnerCartesian | InequalityId::ProofFacts21 => {
            GeneratorClass::Normal
        }
        InequalityId::Thm24 => GeneratorClass::NormalOrderConstrained,
        InequalityId::Thm27 | InequalityId::Thm28 => GeneratorClass::Ginibre,
        InequalityId::Cor29 => GeneratorClass::NormalPairSharedBasis,
    }
}

/// How one trial turns class samples into checker inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Adapter {
    /// One sample, used as is.
    Direct,
    /// `k` independent samples of a single-matrix class.
    Independent(usize),
    /// Cartesian parts of one normal sample, a commuting Hermitian pair.
    CartesianParts,
}

fn adapter(target: &CampaignTarget) -> Option<Adapter> {
    let (id, class) = (target.id, target.class);
    match id {
        InequalityId::Scalar16 => matches!(class, GeneratorClass::Hermitian | GeneratorClass::Psd)
            .then_some(Adapter::Independent(2)),
        InequalityId::ProofFacts21 => match class {
            GeneratorClass::Normal
            | GeneratorClass::NormalOrderConstrained
            | GeneratorClass::Unitary => Some(Adapter::CartesianParts),
            GeneratorClass::Hermitian | GeneratorClass::Psd => Some(Adapter::Independent(2)),
            _ => None,
        },
        _ if class.arity() == id.arity() => Some(Adapter::Direct),
        _ if class.arity() == 1 => Some(Adapter::Independent(id.arity())),
        _ => None,
    }
}

/// Checker dimension for a campaign dimension; the scalar inequality is 1x1.
fn effective_dim(id: InequalityId, dim: usize) -> usize {
    if id == InequalityId::Scalar16 {
        1
    } else {
        dim
    }
}

fn draw_inputs(target: &CampaignTarget, dim: usize, rng: &mut PrngStream) -> Vec<ComplexMatrix> {
    let n = effective_dim(target.id, dim);
    match adapter(target).expect("validated target") {
        Adapter::Direct => sample(target.class, n, 1.0, rng),
        Adapter::Independent(k) => (0..k)
            .flat_map(|_| sample(target.class, n, 1.0, rng))
            .collect(),
        Adapter::CartesianParts => {
            let p = cartesian(&sample(target.class, n, 1.0, rng)[0]);
            vec![p.a1, p.a2]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub targets: Vec<CampaignTarget>,
    pub dims: Vec<usize>,
    pub trials_per_dim: u64,
    pub seed: u64,
    pub tol: Tolerance,
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), FuzzError> {
        let bad = |msg: String| Err(FuzzError::ConfigInvalid(msg));
        if self.targets.is_empty() {
            return bad("no targets".into());
        }
        if self.dims.is_empty() {
            return bad("no dimensions".into());
        }
        if self.trials_per_dim == 0 {
            return bad("trials_per_dim must be at least 1".into());
        }
        if self
            .trials_per_dim
            .checked_mul(self.dims.len() as u64)
            .is_none()
        {
            return bad("trial count overflows".into());
        }
        Tolerance::new(self.tol.tol_abs, self.tol.tol_rel).map_err(FuzzError::ConfigInvalid)?;
        for t in &self.targets {
            if adapter(t).is_none() {
                return bad(format!(
                    "class {} cannot supply the {} inputs of {}",
                    t.class,
                    t.id.arity(),
                    t.id
                ));
            }
            for &d in &self.dims {
                if d == 0 || d > t.class.max_dim() {
                    return bad(format!(
                        "dimension {d} outside 1..={} for class {}",
                        t.class.max_dim(),
                        t.class
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(targets: Vec<CampaignTarget>) -> CampaignConfig {
        CampaignConfig {
            targets,
            dims: vec![2, 3],
            trials_per_dim: 4,
            seed: 0,
            tol: Tolerance::default(),
        }
    }

    #[test]
    fn canonical_targets_are_valid() {
        let targets = InequalityId::ALL
            .iter()
            .map(|&id| CampaignTarget::canonical(id))
            .collect();
        config(targets).validate().unwrap();
    }

    #[test]
    fn adapters_produce_checker_arity() {
        let mut rng = PrngStream::new(0, 0);
        for id in InequalityId::ALL {
            for class in GeneratorClass::ALL {
                let t = CampaignTarget::new(id, class);
                if adapter(&t).is_some() {
                    let inputs = draw_inputs(&t, 3, &mut rng);
                    assert_eq!(inputs.len(), id.arity(), "{id} x {class}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let ok = config(vec![CampaignTarget::canonical(InequalityId::Thm27)]);
        let mut c = ok.clone();
        c.trials_per_dim = 0;
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.dims = vec![0];
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.dims.clear();
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.targets = vec![CampaignTarget::new(
            InequalityId::Tao12,
            GeneratorClass::DominatedPair,
        )];
        assert!(c.validate().is_err());
        let mut c = ok;
        c.tol.tol_rel = -1.0;
        assert!(c.validate().is_err());
    }
}
