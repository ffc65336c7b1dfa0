//! Separability elements: `d` with `sum_i X_i d Y_i = I`.

use super::{Base, FrobeniusSystem};
use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Where to look for a separability element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchSpace {
    /// Elements of the algebra commuting with the base.
    RelativeCentralizer,
    /// The center of the algebra.
    CenterOfAlgebra,
    /// The base itself (scalar multiples of `I` for the ground field).
    ScalarsOfBase,
}

impl SearchSpace {
    pub const ALL: [SearchSpace; 3] = [
        SearchSpace::RelativeCentralizer,
        SearchSpace::CenterOfAlgebra,
        SearchSpace::ScalarsOfBase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SearchSpace::RelativeCentralizer => "relative_centralizer",
            SearchSpace::CenterOfAlgebra => "center",
            SearchSpace::ScalarsOfBase => "scalars",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|sp| sp.name() == s)
    }
}

fn search_basis(s: &FrobeniusSystem, space: SearchSpace) -> Vec<Mat> {
    match space {
        SearchSpace::RelativeCentralizer => match s.base() {
            Base::Ground => s.algebra().elements().to_vec(),
            Base::Embedded(b) => s.algebra().commuting_subspace(b.elements()),
        },
        SearchSpace::CenterOfAlgebra => s.algebra().center(),
        SearchSpace::ScalarsOfBase => s.base_elements(),
    }
}

/// Solves `sum_i X_i d Y_i = I` exactly for `d` in `space`. Returns `None`
/// when the linear system is inconsistent.
pub fn separability_element(s: &FrobeniusSystem, space: SearchSpace) -> Result<Option<Mat>> {
    if !s.is_verified() {
        return Err(Error::UnverifiedSystem);
    }
    let field = s.field();
    let n = s.ambient();
    let basis = search_basis(s, space);
    if basis.is_empty() {
        return Ok(None);
    }
    let mut system = Mat::zeros(field, n * n, basis.len());
    for (j, d) in basis.iter().enumerate() {
        let image = s
            .x()
            .iter()
            .zip(s.y())
            .fold(Mat::zeros(field, n, n), |acc, (x, y)| &acc + &(&(x * d) * y));
        for (i, v) in image.vec().into_iter().enumerate() {
            system.set(i, j, v);
        }
    }
    let Some(coeffs) = system.solve(&Mat::identity(field, n).vec()) else {
        return Ok(None);
    };
    let d = basis
        .iter()
        .zip(&coeffs)
        .fold(Mat::zeros(field, n, n), |acc, (b, c)| &acc + &b.scale(c));
    Ok(Some(d))
}

/// `sum_i X_i d Y_i`, for checking a candidate by direct expansion.
pub fn expand_separability(s: &FrobeniusSystem, d: &Mat) -> Mat {
    let n = s.ambient();
    s.x()
        .iter()
        .zip(s.y())
        .fold(Mat::zeros(s.field(), n, n), |acc, (x, y)| &acc + &(&(x * d) * y))
}

/// Results of [`separability_element`] in all three spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityProbe {
    pub relative_centralizer: Option<Mat>,
    pub center: Option<Mat>,
    pub scalars: Option<Mat>,
    pub warnings: Vec<String>,
}

impl SeparabilityProbe {
    pub fn get(&self, space: SearchSpace) -> Option<&Mat> {
        match space {
            SearchSpace::RelativeCentralizer => self.relative_centralizer.as_ref(),
            SearchSpace::CenterOfAlgebra => self.center.as_ref(),
            SearchSpace::ScalarsOfBase => self.scalars.as_ref(),
        }
    }

    pub fn all_agree(&self) -> bool {
        let r = self.relative_centralizer.is_some();
        r == self.center.is_some() && r == self.scalars.is_some()
    }
}

pub fn probe_separability(s: &FrobeniusSystem) -> Result<SeparabilityProbe> {
    let mut probe = SeparabilityProbe {
        relative_centralizer: separability_element(s, SearchSpace::RelativeCentralizer)?,
        center: separability_element(s, SearchSpace::CenterOfAlgebra)?,
        scalars: separability_element(s, SearchSpace::ScalarsOfBase)?,
        warnings: Vec::new(),
    };
    if !probe.all_agree() {
        let found: Vec<&str> = SearchSpace::ALL
            .into_iter()
            .filter(|&sp| probe.get(sp).is_some())
            .map(SearchSpace::name)
            .collect();
        probe.warnings.push(format!(
            "separability depends on the search space: solvable in [{}] only; \
             scalar and relative-centralizer conventions disagree",
            found.join(", ")
        ));
    }
    Ok(probe)
}
