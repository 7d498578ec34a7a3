//! Pythagorean fuzzy parameterized soft sets.
//!
//! A [`PhiSoftSet`] pairs a universe of alternatives with a list of
//! parameters, each carrying a PFN importance, and stores one PFN per
//! (alternative, parameter) cell. Sets are immutable once built; every
//! combination operator returns a new set.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pfn::{Pfn, PfnError};

/// Row label reserved by the CSV format for the importance row.
pub const IMPORTANCE_ROW: &str = "__f__";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SetError {
    #[error("invalid identifier `{0}`: must be non-empty without commas, quotes, parentheses or line breaks")]
    InvalidId(String),
    #[error("duplicate {kind} `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("missing cell ({alt}, {param})")]
    MissingCell { alt: String, param: String },
    #[error("cell ({alt}, {param}) given more than once")]
    DuplicateCell { alt: String, param: String },
    #[error("cell ({alt}, {param}) refers to an unknown alternative or parameter")]
    UnknownCoordinate { alt: String, param: String },
    #[error("invalid PFN at ({alt}, {param}): {source}")]
    InvalidPfn {
        alt: String,
        param: String,
        #[source]
        source: PfnError,
    },
    #[error("the two sets are defined over different universes")]
    UniverseMismatch,
    #[error("the parameter sets do not overlap")]
    EmptyIntersection,
    #[error(transparent)]
    Pfn(#[from] PfnError),
}

fn check_ident(s: &str) -> Result<(), SetError> {
    let bad = s.trim().is_empty()
        || s != s.trim()
        || s.chars()
            .any(|c| matches!(c, ',' | '"' | '(' | ')' | '\n' | '\r'));
    if bad {
        Err(SetError::InvalidId(s.to_string()))
    } else {
        Ok(())
    }
}

/// An element of the universe, e.g. `p1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AlternativeId(String);

impl AlternativeId {
    pub fn new(id: impl Into<String>) -> Result<Self, SetError> {
        let id = id.into();
        check_ident(&id)?;
        if id == IMPORTANCE_ROW {
            return Err(SetError::InvalidId(id));
        }
        Ok(AlternativeId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for AlternativeId {
    type Error = SetError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        AlternativeId::new(s)
    }
}

impl From<AlternativeId> for String {
    fn from(id: AlternativeId) -> Self {
        id.0
    }
}

impl fmt::Display for AlternativeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.0)
    }
}

/// A parameter with its PF importance `(m_f, n_f)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PfParameter {
    name: String,
    importance: Pfn,
}

impl PfParameter {
    pub fn new(name: impl Into<String>, importance: Pfn) -> Result<Self, SetError> {
        let name = name.into();
        check_ident(&name)?;
        Ok(PfParameter { name, importance })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn importance(&self) -> Pfn {
        self.importance
    }
}

/// One raw cell as it arrives from a parser or caller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellEntry {
    pub alt: String,
    pub param: String,
    pub m: f64,
    pub n: f64,
}

/// Digit-aware ordering so that `s2 < s10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let dx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let dy = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let nx = trim_zeros(&x[..dx]);
                let ny = trim_zeros(&y[..dy]);
                let ord = nx.len().cmp(&ny.len()).then_with(|| nx.cmp(ny));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[dx..];
                y = &y[dy..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let k = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[k..]
}

/// A Pythagorean fuzzy parameterized soft set.
///
/// Cells are stored row-major: one row per alternative, in universe order,
/// one column per parameter, in parameter order.
#[derive(Debug, Clone)]
pub struct PhiSoftSet {
    universe: Vec<AlternativeId>,
    parameters: Vec<PfParameter>,
    cells: Vec<Pfn>,
}

impl PhiSoftSet {
    /// Validates and assembles a set. Every (alternative, parameter) pair
    /// must be covered exactly once by `cells`.
    pub fn build<I>(
        universe: Vec<AlternativeId>,
        parameters: Vec<PfParameter>,
        cells: I,
    ) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = CellEntry>,
    {
        let alt_index = index_unique(universe.iter().map(|a| a.as_str()), "alternative")?;
        let param_index = index_unique(parameters.iter().map(|p| p.name()), "parameter")?;

        let width = parameters.len();
        let mut slots: Vec<Option<Pfn>> = vec![None; universe.len() * width];
        for c in cells {
            let (Some(&i), Some(&j)) = (alt_index.get(c.alt.as_str()), param_index.get(c.param.as_str()))
            else {
                return Err(SetError::UnknownCoordinate { alt: c.alt, param: c.param });
            };
            let value = Pfn::new(c.m, c.n).map_err(|source| SetError::InvalidPfn {
                alt: c.alt.clone(),
                param: c.param.clone(),
                source,
            })?;
            let slot = &mut slots[i * width + j];
            if slot.is_some() {
                return Err(SetError::DuplicateCell { alt: c.alt, param: c.param });
            }
            *slot = Some(value);
        }

        let mut out = Vec::with_capacity(slots.len());
        for (k, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(v) => out.push(v),
                None => {
                    return Err(SetError::MissingCell {
                        alt: universe[k / width].to_string(),
                        param: parameters[k % width].name().to_string(),
                    })
                }
            }
        }
        Ok(PhiSoftSet { universe, parameters, cells: out })
    }

    /// Builds from rows of already-valid PFNs, one row per alternative.
    pub fn from_rows(
        universe: Vec<AlternativeId>,
        parameters: Vec<PfParameter>,
        rows: Vec<Vec<Pfn>>,
    ) -> Result<Self, SetError> {
        let mut cells = Vec::new();
        for (alt, row) in universe.iter().zip(&rows) {
            for (param, v) in parameters.iter().zip(row) {
                cells.push(CellEntry {
                    alt: alt.to_string(),
                    param: param.name().to_string(),
                    m: v.m(),
                    n: v.n(),
                });
            }
        }
        PhiSoftSet::build(universe, parameters, cells)
    }

    /// Assembles a set from parts that are known to be consistent.
    fn assemble(universe: Vec<AlternativeId>, parameters: Vec<PfParameter>, cells: Vec<Pfn>) -> Self {
        debug_assert_eq!(cells.len(), universe.len() * parameters.len());
        PhiSoftSet { universe, parameters, cells }
    }

    pub fn universe(&self) -> &[AlternativeId] {
        &self.universe
    }

    pub fn parameters(&self) -> &[PfParameter] {
        &self.parameters
    }

    pub fn parameter(&self, name: &str) -> Option<&PfParameter> {
        self.param_index(name).map(|j| &self.parameters[j])
    }

    pub fn alt_index(&self, alt: &str) -> Option<usize> {
        self.universe.iter().position(|a| a.as_str() == alt)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|p| p.name() == name)
    }

    /// Row of cells for an alternative, in parameter order.
    pub fn row(&self, alt: &str) -> Option<&[Pfn]> {
        self.alt_index(alt).map(|i| self.row_at(i))
    }

    pub fn row_at(&self, i: usize) -> &[Pfn] {
        let w = self.parameters.len();
        &self.cells[i * w..(i + 1) * w]
    }

    pub fn cell(&self, alt: &str, param: &str) -> Option<Pfn> {
        let i = self.alt_index(alt)?;
        let j = self.param_index(param)?;
        Some(self.cells[i * self.parameters.len() + j])
    }

    pub fn importances(&self) -> Vec<Pfn> {
        self.parameters.iter().map(|p| p.importance()).collect()
    }

    /// All cells as `(alternative, parameter, value)`, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (&AlternativeId, &PfParameter, Pfn)> + '_ {
        let w = self.parameters.len();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, v)| (&self.universe[k / w], &self.parameters[k % w], *v))
    }

    fn same_universe(&self, other: &PhiSoftSet) -> bool {
        self.universe.len() == other.universe.len()
            && self.universe.iter().all(|a| other.alt_index(a.as_str()).is_some())
    }

    /// Subset: every parameter of `self` appears in `other` with an
    /// importance no lower in the lattice order, and every cell of `self` is
    /// lattice-below the matching cell of `other`.
    pub fn is_subset(&self, other: &PhiSoftSet) -> bool {
        if !self.same_universe(other) {
            return false;
        }
        self.parameters.iter().enumerate().all(|(j, p)| {
            let Some(k) = other.param_index(p.name()) else {
                return false;
            };
            if !p.importance().lattice_le(&other.parameters[k].importance()) {
                return false;
            }
            self.universe.iter().enumerate().all(|(i, alt)| {
                let oi = other.alt_index(alt.as_str()).expect("same universe");
                let mine = self.row_at(i)[j];
                mine.lattice_le(&other.row_at(oi)[k])
            })
        })
    }

    /// Equality as sets: parameter and row order do not matter, values are
    /// compared within [`crate::pfn::COMPARE_EPS`].
    pub fn equals(&self, other: &PhiSoftSet) -> bool {
        if !self.same_universe(other) || self.parameters.len() != other.parameters.len() {
            return false;
        }
        self.parameters.iter().enumerate().all(|(j, p)| {
            let Some(k) = other.param_index(p.name()) else {
                return false;
            };
            p.importance().approx_eq(&other.parameters[k].importance())
                && self.universe.iter().enumerate().all(|(i, alt)| {
                    let oi = other.alt_index(alt.as_str()).expect("same universe");
                    self.row_at(i)[j].approx_eq(&other.row_at(oi)[k])
                })
        })
    }

    pub fn extended_union(&self, other: &PhiSoftSet) -> Result<PhiSoftSet, SetError> {
        self.combine(other, Scope::Extended, |a, b| a.join(b))
    }

    pub fn extended_intersection(&self, other: &PhiSoftSet) -> Result<PhiSoftSet, SetError> {
        self.combine(other, Scope::Extended, |a, b| a.meet(b))
    }

    pub fn restricted_union(&self, other: &PhiSoftSet) -> Result<PhiSoftSet, SetError> {
        self.combine(other, Scope::Restricted, |a, b| a.join(b))
    }

    pub fn restricted_intersection(&self, other: &PhiSoftSet) -> Result<PhiSoftSet, SetError> {
        self.combine(other, Scope::Restricted, |a, b| a.meet(b))
    }

    /// Shared parameters get `pick` applied to both the importance and
    /// every cell; in the extended scope, unshared parameters are copied
    /// from whichever side has them. Output parameters are in natural name
    /// order, rows follow `self`'s universe order.
    fn combine(
        &self,
        other: &PhiSoftSet,
        scope: Scope,
        pick: impl Fn(&Pfn, &Pfn) -> Pfn,
    ) -> Result<PhiSoftSet, SetError> {
        if !self.same_universe(other) {
            return Err(SetError::UniverseMismatch);
        }

        let mut names: Vec<&str> = match scope {
            Scope::Extended => {
                let mut seen: HashSet<&str> = HashSet::new();
                self.parameters
                    .iter()
                    .chain(&other.parameters)
                    .map(|p| p.name())
                    .filter(|n| seen.insert(n))
                    .collect()
            }
            Scope::Restricted => self
                .parameters
                .iter()
                .map(|p| p.name())
                .filter(|n| other.param_index(n).is_some())
                .collect(),
        };
        if names.is_empty() && scope == Scope::Restricted {
            return Err(SetError::EmptyIntersection);
        }
        names.sort_by(|a, b| natural_cmp(a, b));

        // (column in self, column in other) per output parameter
        let columns: Vec<(Option<usize>, Option<usize>)> = names
            .iter()
            .map(|n| (self.param_index(n), other.param_index(n)))
            .collect();

        let parameters = names
            .iter()
            .zip(&columns)
            .map(|(name, cols)| {
                let importance = match *cols {
                    (Some(j), Some(k)) => pick(
                        &self.parameters[j].importance(),
                        &other.parameters[k].importance(),
                    ),
                    (Some(j), None) => self.parameters[j].importance(),
                    (None, Some(k)) => other.parameters[k].importance(),
                    (None, None) => unreachable!(),
                };
                PfParameter { name: name.to_string(), importance }
            })
            .collect();

        let mut cells = Vec::with_capacity(self.universe.len() * names.len());
        for (i, alt) in self.universe.iter().enumerate() {
            let oi = other.alt_index(alt.as_str()).expect("same universe");
            let (mine, theirs) = (self.row_at(i), other.row_at(oi));
            cells.extend(columns.iter().map(|cols| match *cols {
                (Some(j), Some(k)) => pick(&mine[j], &theirs[k]),
                (Some(j), None) => mine[j],
                (None, Some(k)) => theirs[k],
                (None, None) => unreachable!(),
            }));
        }
        Ok(PhiSoftSet::assemble(self.universe.clone(), parameters, cells))
    }

    /// Keeps only the named parameters, in the given order.
    pub fn project(&self, names: &[&str]) -> Option<PhiSoftSet> {
        let cols: Vec<usize> = names
            .iter()
            .map(|n| self.param_index(n))
            .collect::<Option<_>>()?;
        let parameters = cols.iter().map(|&j| self.parameters[j].clone()).collect();
        let cells = (0..self.universe.len())
            .flat_map(|i| cols.iter().map(move |&j| self.row_at(i)[j]))
            .collect();
        Some(PhiSoftSet::assemble(self.universe.clone(), parameters, cells))
    }

    /// A set whose rows are reordered to follow `order`, which must be a
    /// permutation of the universe.
    pub fn reorder_universe(&self, order: &[AlternativeId]) -> Result<PhiSoftSet, SetError> {
        if order.len() != self.universe.len() {
            return Err(SetError::UniverseMismatch);
        }
        let mut cells = Vec::with_capacity(self.cells.len());
        for alt in order {
            let row = self.row(alt.as_str()).ok_or(SetError::UniverseMismatch)?;
            cells.extend_from_slice(row);
        }
        index_unique(order.iter().map(|a| a.as_str()), "alternative")?;
        Ok(PhiSoftSet::assemble(order.to_vec(), self.parameters.clone(), cells))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scope {
    Extended,
    Restricted,
}

fn index_unique<'a>(
    ids: impl Iterator<Item = &'a str>,
    kind: &'static str,
) -> Result<HashMap<&'a str, usize>, SetError> {
    let mut index = HashMap::new();
    for (i, id) in ids.enumerate() {
        if index.insert(id, i).is_some() {
            return Err(SetError::DuplicateId { kind, id: id.to_string() });
        }
    }
    Ok(index)
}

fn parameters_from_names<I, S>(names: I, importance: Pfn) -> Result<Vec<PfParameter>, SetError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    names
        .into_iter()
        .map(|n| PfParameter::new(n, importance))
        .collect()
}

fn uniform(universe: Vec<AlternativeId>, parameters: Vec<PfParameter>, value: Pfn) -> Result<PhiSoftSet, SetError> {
    index_unique(universe.iter().map(|a| a.as_str()), "alternative")?;
    index_unique(parameters.iter().map(|p| p.name()), "parameter")?;
    let cells = vec![value; universe.len() * parameters.len()];
    Ok(PhiSoftSet::assemble(universe, parameters, cells))
}

/// The `(a,b)`-constant set: every cell is `(a, b)`. Importances default to
/// `(a, b)` as well; use [`constant_set_with`] to supply them.
pub fn constant_set<I, S>(universe: Vec<AlternativeId>, names: I, a: f64, b: f64) -> Result<PhiSoftSet, SetError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let value = Pfn::new(a, b)?;
    uniform(universe, parameters_from_names(names, value)?, value)
}

/// The `(a,b)`-constant set over caller-supplied parameters.
pub fn constant_set_with(
    universe: Vec<AlternativeId>,
    parameters: Vec<PfParameter>,
    a: f64,
    b: f64,
) -> Result<PhiSoftSet, SetError> {
    let value = Pfn::new(a, b)?;
    uniform(universe, parameters, value)
}

/// Relative null set: cells and importances all `(0, 1)`.
pub fn null_set<I, S>(universe: Vec<AlternativeId>, names: I) -> Result<PhiSoftSet, SetError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    uniform(universe, parameters_from_names(names, Pfn::ZERO)?, Pfn::ZERO)
}

/// Relative whole set: cells and importances all `(1, 0)`.
pub fn whole_set<I, S>(universe: Vec<AlternativeId>, names: I) -> Result<PhiSoftSet, SetError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    uniform(universe, parameters_from_names(names, Pfn::ONE)?, Pfn::ONE)
}
