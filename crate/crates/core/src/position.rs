//! Smoothness, general position and transversality of hypersurface systems.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::elimination::{check_proper_intersection, cone_dimension, Ideal};
use crate::error::{Error, Result};
use crate::par;
use crate::poly::{determinant, LinearChange, MultiPoly, Scalar};
use crate::Settings;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub name: String,
    pub poly: MultiPoly,
}

/// Named hypersurfaces in projective `n`-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSystem {
    dim: usize,
    divisors: Vec<Divisor>,
}

impl DivisorSystem {
    pub fn new(dim: usize, divisors: Vec<Divisor>) -> Result<DivisorSystem> {
        if divisors.is_empty() {
            return Err(Error::InvalidInput("no divisors given".into()));
        }
        let mut names = BTreeSet::new();
        for d in &divisors {
            if d.poly.nvars() != dim + 1 {
                return Err(Error::ArityMismatch {
                    expected: dim + 1,
                    found: d.poly.nvars(),
                });
            }
            if !d.poly.is_homogeneous() {
                return Err(Error::NotHomogeneous(d.name.clone()));
            }
            if d.poly.total_degree().unwrap_or(0) == 0 {
                return Err(Error::ConstantPolynomial(d.name.clone()));
            }
            if !names.insert(d.name.clone()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate divisor name `{}`",
                    d.name
                )));
            }
        }
        Ok(DivisorSystem { dim, divisors })
    }

    /// Divisors named `D1`, `D2`, ….
    pub fn from_polys(dim: usize, polys: Vec<MultiPoly>) -> Result<DivisorSystem> {
        let divisors = polys
            .into_iter()
            .enumerate()
            .map(|(i, poly)| Divisor {
                name: format!("D{}", i + 1),
                poly,
            })
            .collect();
        DivisorSystem::new(dim, divisors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.divisors.iter().map(|d| d.poly.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.divisors
            .iter()
            .map(|d| d.poly.total_degree().unwrap_or(0))
            .collect()
    }

    /// Pull every equation back along `change`.
    pub fn transformed(&self, change: &LinearChange) -> Result<DivisorSystem> {
        let divisors = self
            .divisors
            .iter()
            .map(|d| {
                Ok(Divisor {
                    name: d.name.clone(),
                    poly: change.apply(&d.poly)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DivisorSystem::new(self.dim, divisors)
    }
}

/// Gradients of every divisor at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentData {
    pub rows: Vec<Vec<Scalar>>,
}

impl TangentData {
    pub fn at(system: &DivisorSystem, point: &[Scalar]) -> Result<TangentData> {
        let rows = system
            .divisors
            .iter()
            .map(|d| {
                d.poly
                    .gradient()
                    .iter()
                    .map(|g| g.evaluate(point))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TangentData { rows })
    }

    pub fn is_smooth_point(&self, i: usize) -> bool {
        self.rows[i].iter().any(|x| !x.is_zero())
    }
}

/// `V(D, ∂D)` is the origin only.
pub fn check_smooth(d: &MultiPoly, settings: &Settings) -> Result<bool> {
    if !d.is_homogeneous() {
        return Err(Error::NotHomogeneous(d.to_string()));
    }
    if d.total_degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial(d.to_string()));
    }
    let mut gens = vec![d.clone()];
    gens.extend(d.gradient().into_iter().filter(|g| !g.is_zero()));
    Ok(cone_dimension(&Ideal::new(gens)?, settings.budget)? <= 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPositionReport {
    pub holds: bool,
    /// Indices of a subset violating the condition (all divisors when `q ≤ n`).
    pub failing_subset: Option<Vec<usize>>,
}

pub fn check_general_position(system: &DivisorSystem, settings: &Settings) -> Result<bool> {
    Ok(general_position_report(system, settings)?.holds)
}

pub fn general_position_report(
    system: &DivisorSystem,
    settings: &Settings,
) -> Result<GeneralPositionReport> {
    let n = system.dim();
    let q = system.len();
    if q <= n {
        let holds = check_proper_intersection(&system.polys(), None, settings.budget)?;
        return Ok(GeneralPositionReport {
            holds,
            failing_subset: (!holds).then(|| (0..q).collect()),
        });
    }
    let subsets: Vec<Vec<usize>> = (0..q).combinations(n + 1).collect();
    let results = par::map(settings.exec, &subsets, |s| {
        let gens = s.iter().map(|&i| system.divisors[i].poly.clone()).collect();
        cone_dimension(&Ideal::new(gens)?, settings.budget).map(|d| d <= 0)
    });
    for (s, r) in subsets.into_iter().zip(results) {
        if !r? {
            return Ok(GeneralPositionReport {
                holds: false,
                failing_subset: Some(s),
            });
        }
    }
    Ok(GeneralPositionReport {
        holds: true,
        failing_subset: None,
    })
}

/// `n` smooth hypersurfaces in projective `n`-space meet transversally: the
/// Jacobian has rank `n` at every common point.
pub fn check_transversal(system: &DivisorSystem, settings: &Settings) -> Result<bool> {
    let n = system.dim();
    if system.len() != n {
        return Err(Error::InvalidInput(format!(
            "transversality needs exactly {n} divisors, got {}",
            system.len()
        )));
    }
    for d in system.divisors() {
        if !check_smooth(&d.poly, settings)? {
            return Err(Error::NotSmooth {
                name: d.name.clone(),
            });
        }
    }
    let jac: Vec<Vec<MultiPoly>> = system
        .divisors()
        .iter()
        .map(|d| d.poly.gradient())
        .collect();
    let minors: Vec<MultiPoly> = par::map(settings.exec, &(0..=n).collect::<Vec<_>>(), |&skip| {
        let m: Vec<Vec<MultiPoly>> = jac
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        determinant(&m)
    });
    let mut gens = system.polys();
    gens.extend(minors.into_iter().filter(|m| !m.is_zero()));
    Ok(cone_dimension(&Ideal::new(gens)?, settings.budget)? <= 0)
}
