use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// What a chart coordinate parametrizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Time,
    Space,
    Velocity,
    Momentum,
    Rotation,
    MetricPerturbation,
    Potential,
    Phase,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub name: String,
    pub role: Role,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("duplicate coordinate name {0:?}")]
    Duplicate(String),
    #[error("unknown coordinate {0:?}")]
    UnknownCoordinate(String),
    #[error("operands live on different charts ({left} vs {right})")]
    Mismatch { left: String, right: String },
    #[error("expected exactly one phase coordinate, found {0}")]
    PhaseCount(usize),
}

/// Ordered list of named coordinates. Registration order is the canonical
/// variable order of every polynomial on the chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    coords: Vec<Coordinate>,
}

impl Chart {
    pub fn new<S: Into<String>>(
        coords: impl IntoIterator<Item = (S, Role)>,
    ) -> Result<Arc<Self>, ChartError> {
        let coords: Vec<Coordinate> = coords
            .into_iter()
            .map(|(name, role)| Coordinate {
                name: name.into(),
                role,
            })
            .collect();
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].iter().any(|d| d.name == c.name) {
                return Err(ChartError::Duplicate(c.name.clone()));
            }
        }
        Ok(Arc::new(Chart { coords }))
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn name(&self, i: usize) -> &str {
        &self.coords[i].name
    }

    pub fn role(&self, i: usize) -> Role {
        self.coords[i].role
    }

    pub fn index(&self, name: &str) -> Result<usize, ChartError> {
        self.coords
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| ChartError::UnknownCoordinate(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.coords.iter().map(|c| c.name.as_str())
    }

    /// Index of the unique phase coordinate of an extended-group chart.
    pub fn phase_index(&self) -> Result<usize, ChartError> {
        let phases: Vec<usize> = (0..self.len())
            .filter(|&i| self.coords[i].role == Role::Phase)
            .collect();
        match phases.as_slice() {
            [i] => Ok(*i),
            _ => Err(ChartError::PhaseCount(phases.len())),
        }
    }

    /// Chart of pairs `(g', g)`: primed copies first, then the originals.
    pub fn doubled(&self) -> Arc<Chart> {
        let coords = self
            .coords
            .iter()
            .map(|c| Coordinate {
                name: primed(&c.name),
                role: c.role,
            })
            .chain(self.coords.iter().cloned())
            .collect();
        Arc::new(Chart { coords })
    }

    /// Chart of triples `(g'', g', g)` used by associativity checks.
    pub fn tripled(&self) -> Arc<Chart> {
        let coords = self
            .coords
            .iter()
            .map(|c| Coordinate {
                name: format!("{}''", c.name),
                role: c.role,
            })
            .chain(self.coords.iter().map(|c| Coordinate {
                name: primed(&c.name),
                role: c.role,
            }))
            .chain(self.coords.iter().cloned())
            .collect();
        Arc::new(Chart { coords })
    }

    /// Sub-chart keeping the coordinates whose index satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Arc<Chart> {
        Arc::new(Chart {
            coords: (0..self.len())
                .filter(|&i| keep(i))
                .map(|i| self.coords[i].clone())
                .collect(),
        })
    }

    pub(crate) fn summary(&self) -> String {
        let names: Vec<&str> = self.names().collect();
        format!("[{}]", names.join(","))
    }
}

pub(crate) fn primed(name: &str) -> String {
    format!("{name}'")
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        let err = Chart::new([("x", Role::Space), ("x", Role::Time)]).unwrap_err();
        assert_eq!(err, ChartError::Duplicate("x".into()));
    }

    #[test]
    fn single_phase_required_for_extended_charts() {
        let c = Chart::new([("t", Role::Time), ("phi", Role::Phase)]).unwrap();
        assert_eq!(c.phase_index().unwrap(), 1);
        let d = c.doubled();
        assert_eq!(d.phase_index(), Err(ChartError::PhaseCount(2)));
        assert_eq!(d.name(0), "t'");
        assert_eq!(d.name(3), "phi");
    }
}
