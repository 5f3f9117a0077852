//! Verdict rules for the supported subject shapes. Every verdict cites one
//! row of [`RULES`].

use std::fmt;

use crate::error::{Error, Result};
use crate::quadric::{self, QuadricForm};

use super::tables::{del_pezzo_lookup, MukaiEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    BoundednessHolds,
    NoNonIsoEndo,
    AdmitsEndo,
    ToricIffIntAmplified,
    OpenQuestion,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::BoundednessHolds => "BoundednessHolds",
            Status::NoNonIsoEndo => "NoNonIsoEndo",
            Status::AdmitsEndo => "AdmitsEndo",
            Status::ToricIffIntAmplified => "ToricIffIntAmplified",
            Status::OpenQuestion => "OpenQuestion",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule {
    pub id: &'static str,
    pub statement: &'static str,
    /// Backed by a computation in this crate rather than cited only.
    pub computed: bool,
}

pub const RULES: &[Rule] = &[
    Rule {
        id: "fourfold-rho-one-index-above-one",
        statement: "Fano fourfolds of Picard number 1 and index at least 2, other than P^4, have bounded degree for finite morphisms from Fano fourfolds of Picard number 1",
        computed: false,
    },
    Rule {
        id: "fourfold-index-one-trivial-normal",
        statement: "index-1 Fano fourfolds of Picard number 1 whose minimal rational curves have 0-dimensional tangent variety carry a curve with trivial normal bundle, so degrees are bounded",
        computed: false,
    },
    Rule {
        id: "fourfold-index-one-vmrt-one",
        statement: "index-1 Fano fourfolds of Picard number 1 with 1-dimensional variety of minimal rational tangents: boundedness is open",
        computed: false,
    },
    Rule {
        id: "fourfold-index-one-vmrt-unknown",
        statement: "index-1 Fano fourfolds of Picard number 1 without a known tangent-variety dimension: boundedness is open",
        computed: false,
    },
    Rule {
        id: "projective-space-power-map",
        statement: "projective space admits the coordinate power maps, which are non-isomorphic polarized endomorphisms",
        computed: true,
    },
    Rule {
        id: "del-pezzo-rho-one-no-endo",
        statement: "del Pezzo manifolds of Picard number 1 admit no non-isomorphic surjective endomorphism",
        computed: true,
    },
    Rule {
        id: "del-pezzo-higher-rho-toric",
        statement: "del Pezzo manifolds of Picard number at least 2 are toric exactly when they admit an int-amplified endomorphism",
        computed: false,
    },
    Rule {
        id: quadric::RULE_NO_ENDO,
        statement: "a quadric of rank k+1 with k >= 4 admits no non-isomorphic surjective endomorphism",
        computed: true,
    },
    Rule {
        id: quadric::RULE_WITNESS,
        statement: "a quadric of rank k+1 with k <= 3 is preserved by a coordinate power map in a suitable normal form",
        computed: true,
    },
    Rule {
        id: quadric::RULE_LOW_DIM,
        statement: "quadrics in projective space of dimension below 3: power-map witness only, no theorem claim",
        computed: true,
    },
    Rule {
        id: "mukai-fourfold-bounded",
        statement: "Mukai fourfolds of Picard number 1 are covered by lines and have bounded degree for finite morphisms from Fano fourfolds of Picard number 1",
        computed: false,
    },
    Rule {
        id: "mukai-genus-two-wps",
        statement: "genus-2 Mukai manifolds are sextics in P(3,1^(n+1)) and satisfy the weighted positivity criterion",
        computed: true,
    },
    Rule {
        id: "mukai-genus-three",
        statement: "genus-3 Mukai manifolds are quartics, handled by the weighted positivity criterion, or double covers of a smooth quadric, handled by the quadric projection",
        computed: true,
    },
    Rule {
        id: "mukai-genus-four-ci",
        statement: "genus-4 Mukai manifolds are complete intersections of a quadric and a cubic, handled by a generalized positivity criterion",
        computed: false,
    },
    Rule {
        id: "mukai-higher-genus-open",
        statement: "Mukai manifolds of genus at least 5 in dimension at least 5: boundedness is open",
        computed: false,
    },
    Rule {
        id: "fano-threefold-rho-one",
        statement: "Fano threefolds of Picard number 1 other than P^3 admit no non-isomorphic surjective endomorphism",
        computed: false,
    },
    Rule {
        id: "middle-index-toric",
        statement: "Fano manifolds of Picard number at least 2 and index at least floor((n+1)/2) are toric exactly when they admit an int-amplified endomorphism",
        computed: false,
    },
    Rule {
        id: "higher-picard-low-index-open",
        statement: "Fano manifolds of Picard number at least 2 and index below floor((n+1)/2): not covered",
        computed: false,
    },
    Rule {
        id: "fano-rho-one-unclassified",
        statement: "Fano manifolds of Picard number 1 outside the classified index ranges: not covered",
        computed: false,
    },
];

pub fn lookup_rule(id: &str) -> Option<&'static Rule> {
    RULES.iter().find(|r| r.id == id)
}

fn rule(id: &str) -> &'static Rule {
    lookup_rule(id).unwrap_or_else(|| panic!("rule {id} missing from the table"))
}

/// Supported subject shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    /// Fano fourfold of Picard number 1; `vmrt_dim` matters for index 1.
    FanoFourfold {
        index: u32,
        vmrt_dim: Option<u32>,
    },
    DelPezzo {
        n: usize,
        d: u64,
    },
    /// Mukai manifold of Picard number 1.
    Mukai {
        n: usize,
        genus: u32,
    },
    Quadric {
        n: usize,
        k: usize,
    },
    Fano {
        n: usize,
        index: usize,
        rho: u32,
    },
}

pub const SUPPORTED_SHAPES: &str =
    "fourfold{index, vmrt?}, delpezzo{n, d}, mukai{n, g}, quadric{n, k}, fano{n, index, rho}";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub subject: Subject,
    pub status: Status,
    pub rule: &'static Rule,
}

fn v(subject: &Subject, status: Status, id: &str) -> Verdict {
    Verdict {
        subject: subject.clone(),
        status,
        rule: rule(id),
    }
}

pub fn verdict(subject: &Subject) -> Result<Verdict> {
    use Status::*;
    match *subject {
        Subject::FanoFourfold { index, vmrt_dim } => match (index, vmrt_dim) {
            (5, _) => Ok(v(subject, AdmitsEndo, "projective-space-power-map")),
            (2..=4, _) => Ok(v(subject, BoundednessHolds, "fourfold-rho-one-index-above-one")),
            (1, Some(0)) => Ok(v(subject, BoundednessHolds, "fourfold-index-one-trivial-normal")),
            (1, Some(1)) => Ok(v(subject, OpenQuestion, "fourfold-index-one-vmrt-one")),
            (1, None) => Ok(v(subject, OpenQuestion, "fourfold-index-one-vmrt-unknown")),
            (1, Some(p)) => Err(Error::Table(format!(
                "tangent-variety dimension {p} is impossible for an index-1 fourfold of Picard number 1"
            ))),
            _ => Err(Error::Table(format!("fourfold index must lie in 1..=5, got {index}"))),
        },
        Subject::DelPezzo { n, d } => {
            let entry = del_pezzo_lookup(n, d)?;
            if entry.picard_one {
                Ok(v(subject, NoNonIsoEndo, "del-pezzo-rho-one-no-endo"))
            } else {
                Ok(v(subject, ToricIffIntAmplified, "del-pezzo-higher-rho-toric"))
            }
        }
        Subject::Mukai { n, genus } => {
            MukaiEntry::new(genus)?;
            if n < 3 {
                return Err(Error::Table(format!("Mukai manifolds have dimension >= 3, got {n}")));
            }
            let (status, id) = match (n, genus) {
                (3, _) => (NoNonIsoEndo, "fano-threefold-rho-one"),
                (4, _) => (BoundednessHolds, "mukai-fourfold-bounded"),
                (_, 2) => (BoundednessHolds, "mukai-genus-two-wps"),
                (_, 3) => (BoundednessHolds, "mukai-genus-three"),
                (_, 4) => (BoundednessHolds, "mukai-genus-four-ci"),
                _ => (OpenQuestion, "mukai-higher-genus-open"),
            };
            Ok(v(subject, status, id))
        }
        Subject::Quadric { n, k } => {
            let d = quadric::decide(&QuadricForm::shorthand(n, k)?, 2)?;
            let status = if d.admits { AdmitsEndo } else { NoNonIsoEndo };
            Ok(v(subject, status, d.rule))
        }
        Subject::Fano { n, index, rho } => fano_verdict(subject, n, index, rho),
    }
}

fn fano_verdict(subject: &Subject, n: usize, r: usize, rho: u32) -> Result<Verdict> {
    use Status::*;
    if n < 3 {
        return Err(Error::usage(format!("fano subjects need dimension >= 3, got {n}")));
    }
    if r == 0 || r > n + 1 {
        return Err(Error::Table(format!("index must lie in 1..={}, got {r}", n + 1)));
    }
    if rho == 0 {
        return Err(Error::usage("Picard number must be at least 1"));
    }
    if rho >= 2 {
        if r == n + 1 || r == n || 2 * r > n + 2 {
            return Err(Error::hypothesis(
                "index-forces-picard-one",
                format!("index {r} in dimension {n} forces Picard number 1"),
            ));
        }
        return Ok(if r >= n.div_ceil(2) {
            v(subject, ToricIffIntAmplified, "middle-index-toric")
        } else {
            v(subject, OpenQuestion, "higher-picard-low-index-open")
        });
    }
    if r == n + 1 {
        return Ok(v(subject, AdmitsEndo, "projective-space-power-map"));
    }
    if r == n {
        return verdict(&Subject::Quadric { n: n + 1, k: n + 1 }).map(|q| Verdict {
            subject: subject.clone(),
            ..q
        });
    }
    if n == 4 {
        return verdict(&Subject::FanoFourfold {
            index: r as u32,
            vmrt_dim: None,
        })
        .map(|q| Verdict {
            subject: subject.clone(),
            ..q
        });
    }
    if r == n - 1 {
        return Ok(v(subject, NoNonIsoEndo, "del-pezzo-rho-one-no-endo"));
    }
    if n == 3 {
        return Ok(v(subject, NoNonIsoEndo, "fano-threefold-rho-one"));
    }
    Ok(v(subject, OpenQuestion, "fano-rho-one-unclassified"))
}
