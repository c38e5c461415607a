//! Socle and radical series, Loewy lengths.

use serde::Serialize;

use super::hom::trace_of;
use super::series::{composition_series, CompositionSeries, FactorCount};
use super::MeataxeError;
use crate::ffla::{Scalar, Subspace};
use crate::grouprep::{dual, Rep};

/// Cumulative socle filtration `0 = soc^0 < soc^1 < ... < soc^L = V`.
#[derive(Clone, Debug)]
pub struct SocleSeries {
    pub filtration: Vec<Subspace>,
}

impl SocleSeries {
    /// Dimensions of the layers `soc^{i+1}/soc^i`, bottom up.
    pub fn graded(&self) -> Vec<usize> {
        self.filtration
            .windows(2)
            .map(|w| w[1].dim() - w[0].dim())
            .collect()
    }

    pub fn loewy_length(&self) -> usize {
        self.filtration.len() - 1
    }
}

/// Socle of `rep`: the sum of images of homomorphisms from every class.
pub fn socle(rep: &Rep, classes: &[Rep]) -> Result<Subspace, MeataxeError> {
    let mut s = Subspace::zero(rep.field(), rep.dim());
    for c in classes {
        s = s.sum(&trace_of(c, rep)?);
    }
    Ok(s)
}

/// Socle series, given representatives of all composition factors.
pub fn socle_series_with(rep: &Rep, classes: &[Rep]) -> Result<SocleSeries, MeataxeError> {
    let n = rep.dim();
    let mut current = Subspace::zero(rep.field(), n);
    let mut filtration = vec![current.clone()];
    while !current.is_full() {
        let quo = rep.quotient(&current);
        let comp = current.complement_indices();
        let soc = socle(&quo, classes)?;
        if soc.dim() == 0 {
            return Err(MeataxeError::Inconsistent(
                "a nonzero quotient has zero socle; factor classes incomplete".into(),
            ));
        }
        for v in soc.basis() {
            let mut lifted = vec![Scalar::ZERO; n];
            for (&c, &idx) in v.iter().zip(&comp) {
                lifted[idx] = c;
            }
            current.insert(lifted);
        }
        filtration.push(current.clone());
    }
    Ok(SocleSeries { filtration })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub factors: Vec<FactorCount>,
    /// Socle layer dimensions, bottom up.
    pub socle_series: Vec<usize>,
    /// Radical layer dimensions, top down.
    pub radical_series: Vec<usize>,
    pub loewy_length: usize,
}

/// Full structural analysis of a module.
#[derive(Clone, Debug)]
pub struct ModuleAnalysis {
    pub composition: CompositionSeries,
    pub socle: SocleSeries,
    /// Socle series of the dual; its layers are the radical layers, top down.
    pub dual_socle: SocleSeries,
    pub report: SeriesReport,
}

pub fn analyse(rep: &Rep, seed: u64) -> Result<ModuleAnalysis, MeataxeError> {
    let composition = composition_series(rep, seed)?;
    let classes: Vec<Rep> = composition
        .registry
        .classes()
        .iter()
        .map(|c| c.rep.clone())
        .collect();
    let socle = socle_series_with(rep, &classes)?;
    let dual_classes: Vec<Rep> = classes.iter().map(dual).collect();
    let dual_socle = socle_series_with(&dual(rep), &dual_classes)?;
    if socle.loewy_length() != dual_socle.loewy_length() {
        return Err(MeataxeError::Inconsistent(format!(
            "socle length {} differs from radical length {}",
            socle.loewy_length(),
            dual_socle.loewy_length()
        )));
    }
    let report = SeriesReport {
        factors: composition.factor_counts(),
        socle_series: socle.graded(),
        radical_series: dual_socle.graded(),
        loewy_length: socle.loewy_length(),
    };
    Ok(ModuleAnalysis {
        composition,
        socle,
        dual_socle,
        report,
    })
}

pub fn socle_series(rep: &Rep, seed: u64) -> Result<SeriesReport, MeataxeError> {
    Ok(analyse(rep, seed)?.report)
}

/// Graded dimensions of a box product from those of its factors.
pub fn loewy_convolution(v: &[usize], w: &[usize]) -> Vec<usize> {
    if v.is_empty() || w.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0; v.len() + w.len() - 1];
    for (i, &a) in v.iter().enumerate() {
        for (j, &b) in w.iter().enumerate() {
            c[i + j] += a * b;
        }
    }
    c
}
