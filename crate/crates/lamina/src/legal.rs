//! Compatibility of a critical portrait with a lamination.

use serde::{Deserialize, Serialize};

use crate::gaps::{GapAnalysis, GapClass};
use crate::pile::LaminationApprox;
use crate::polygon::GapLeaf;
use crate::portrait::CriticalCollection;
use crate::root::gap_of_polygon;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalReport {
    pub legal: bool,
    pub reasons: Vec<String>,
}

/// A portrait is legal for a lamination when no chord crosses a leaf and
/// every chord with a periodic endpoint of period `n` sits in a hyperbolic
/// cycle of period `n` whose gaps of degree `k` hold exactly `k - 1` chords.
pub fn check_legal(c: &CriticalCollection, lam: &LaminationApprox, analysis: &GapAnalysis) -> LegalReport {
    let d = c.degree();
    let mut reasons = vec![];
    for ch in c.chords() {
        if let Some(l) = lam.leaves.iter().find(|l| l.linked(ch)) {
            reasons.push(format!("chord {ch} crosses leaf {l}"));
        }
    }
    if reasons.is_empty() {
        let home: Vec<Option<usize>> = c
            .chords()
            .iter()
            .map(|ch| GapLeaf::new(ch.endpoints().map(Clone::clone)).and_then(|g| gap_of_polygon(analysis, &g)))
            .collect();
        for (ch, g) in c.chords().iter().zip(&home) {
            let Some(n) = ch.endpoints().iter().map(|x| x.classify(d)).find(|o| o.is_periodic()).map(|o| o.period) else {
                continue;
            };
            let cycle = g.and_then(|g| analysis.cycle_of(g));
            match cycle {
                Some(cy) if matches!(cy.class, GapClass::Hyperbolic { .. }) && cy.period == n => {
                    for &u in &cy.gaps {
                        let held = home.iter().filter(|h| **h == Some(u)).count();
                        let k = analysis.gaps[u].degree as usize;
                        if held + 1 != k {
                            reasons.push(format!("gap of degree {k} in the cycle of {ch} holds {held} chords"));
                        }
                    }
                }
                _ => reasons.push(format!("chord {ch} has a period-{n} endpoint but no period-{n} hyperbolic gap")),
            }
        }
    }
    reasons.dedup();
    LegalReport {
        legal: reasons.is_empty(),
        reasons,
    }
}
