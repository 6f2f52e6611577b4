use std::ops::Deref;

use super::{quadrants, validate, DiagramError, HeegaardDiagram, QuadrantStructure};

/// A diagram that passed [`validate`], bundled with its quadrant structure.
#[derive(Clone, Debug)]
pub struct ValidatedDiagram {
    diagram: HeegaardDiagram,
    quadrants: QuadrantStructure,
}

impl ValidatedDiagram {
    pub fn new(diagram: HeegaardDiagram) -> Result<Self, DiagramError> {
        let report = validate(&diagram);
        if !report.ok() {
            let first = &report.violations[0];
            return Err(DiagramError::Invalid(format!(
                "{} violation(s); first: {}: {}",
                report.violations.len(),
                first.invariant,
                first.detail
            )));
        }
        let quadrants = quadrants(&diagram)?;
        Ok(ValidatedDiagram { diagram, quadrants })
    }

    pub fn diagram(&self) -> &HeegaardDiagram {
        &self.diagram
    }

    pub fn quadrants(&self) -> &QuadrantStructure {
        &self.quadrants
    }

    pub fn into_inner(self) -> HeegaardDiagram {
        self.diagram
    }
}

impl Deref for ValidatedDiagram {
    type Target = HeegaardDiagram;
    fn deref(&self) -> &HeegaardDiagram {
        &self.diagram
    }
}
