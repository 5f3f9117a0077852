//! del Pezzo and Mukai tables, plus the named hypersurface aliases used by
//! the CLI.

use crate::chern::{validate, wps_positivity, Positivity, WeightedHypersurface};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoEntry {
    pub n: usize,
    pub d: u64,
    pub description: String,
    pub wps_model: Option<WeightedHypersurface>,
    /// Present for `d = 4` only.
    pub ci_model: Option<String>,
    pub picard_one: bool,
    pub very_ample_h: bool,
}

/// del Pezzo manifold of dimension `n ≥ 3` and degree `d = H^n`.
pub fn del_pezzo_lookup(n: usize, d: u64) -> Result<DelPezzoEntry> {
    if n < 3 {
        return Err(Error::Table(format!("del Pezzo table covers n >= 3, got n = {n}")));
    }
    if !(1..=7).contains(&d) {
        return Err(Error::Table(format!("del Pezzo degree must lie in 1..=7, got {d}")));
    }
    let mut wps_model = None;
    let mut ci_model = None;
    let description = match d {
        1 => {
            let mut w = vec![3, 2];
            w.extend(std::iter::repeat_n(1, n));
            wps_model = Some(WeightedHypersurface::new(w, 6)?);
            format!("sextic hypersurface in P(3,2,1^{n})")
        }
        2 => {
            let mut w = vec![2];
            w.extend(std::iter::repeat_n(1, n + 1));
            wps_model = Some(WeightedHypersurface::new(w, 4)?);
            format!("quartic hypersurface in P(2,1^{})", n + 1)
        }
        3 => {
            wps_model = Some(WeightedHypersurface::projective(n, 3)?);
            format!("cubic hypersurface in P^{}", n + 1)
        }
        4 => {
            let ci = format!("complete intersection of two quadrics in P^{}", n + 2);
            ci_model = Some(ci.clone());
            ci
        }
        5 => {
            if n > 6 {
                return Err(Error::Table(format!("degree 5 requires n <= 6, got n = {n}")));
            }
            format!("linear section of Gr(2,5) ⊂ P^9, contained in P^{}", n + 3)
        }
        6 => match n {
            3 => "P(T_P2) or P1×P1×P1".to_string(),
            4 => "P2×P2".to_string(),
            _ => return Err(Error::Table(format!("degree 6 requires n <= 4, got n = {n}"))),
        },
        7 => {
            if n != 3 {
                return Err(Error::Table(format!("degree 7 requires n = 3, got n = {n}")));
            }
            "blow-up of P^3 at a point".to_string()
        }
        _ => unreachable!(),
    };
    Ok(DelPezzoEntry {
        n,
        d,
        description,
        wps_model,
        ci_model,
        picard_one: d <= 5,
        very_ample_h: d >= 3,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpsConsistency {
    pub model: WeightedHypersurface,
    pub coprime: bool,
    pub degree_ok: bool,
    /// `d == a_0 + a_1 + 1`.
    pub degree_boundary: bool,
    pub positivity: Positivity,
}

pub fn del_pezzo_wps_consistency(n: usize, d: u64) -> Result<WpsConsistency> {
    if !(1..=3).contains(&d) {
        return Err(Error::Table(format!(
            "only degrees 1, 2, 3 have a weighted hypersurface model, got {d}"
        )));
    }
    let model = del_pezzo_lookup(n, d)?
        .wps_model
        .expect("degrees 1..=3 carry a weighted model");
    let report = validate(&model);
    let positivity = wps_positivity(&model)?;
    Ok(WpsConsistency {
        coprime: report.paper_mode,
        degree_ok: report.positivity_degree_ok,
        degree_boundary: report.positivity_degree_boundary,
        positivity,
        model,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiEntry {
    pub genus: u32,
    pub model: String,
}

impl MukaiEntry {
    pub fn new(genus: u32) -> Result<Self> {
        if !(2..=12).contains(&genus) || genus == 11 {
            return Err(Error::Table(format!(
                "Mukai genus must lie in 2..=12 and differ from 11, got {genus}"
            )));
        }
        let model = match genus {
            2 => "sextic hypersurface in P(3,1^(n+1))",
            3 => "quartic hypersurface in P^(n+1), or double cover of a smooth quadric",
            4 => "complete intersection of a quadric and a cubic in P^(n+2)",
            _ => "no hypersurface model recorded",
        };
        Ok(MukaiEntry {
            genus,
            model: model.to_string(),
        })
    }

    /// Weighted hypersurface model of dimension `n`, when one exists.
    pub fn wps_model(&self, n: usize) -> Result<Option<WeightedHypersurface>> {
        Ok(match self.genus {
            2 => {
                let mut w = vec![3];
                w.extend(std::iter::repeat_n(1, n + 1));
                Some(WeightedHypersurface::new(w, 6)?)
            }
            3 => Some(WeightedHypersurface::projective(n, 4)?),
            _ => None,
        })
    }
}

/// Named hypersurface: `cubic3fold`, `quintic3fold`, `quadric-surface`,
/// `cubic-surface`, `quartic-surface`, `delpezzo:n=N,d=D` (`D ≤ 3`) and
/// `mukai:n=N,g=G` (`G ≤ 3`).
pub fn resolve_alias(name: &str) -> Result<WeightedHypersurface> {
    let name = name.trim();
    match name {
        "cubic3fold" => return WeightedHypersurface::projective(3, 3),
        "quintic3fold" => return WeightedHypersurface::projective(3, 5),
        "quadric-surface" => return WeightedHypersurface::projective(2, 2),
        "cubic-surface" => return WeightedHypersurface::projective(2, 3),
        "quartic-surface" => return WeightedHypersurface::projective(2, 4),
        _ => {}
    }
    let (family, params) = name
        .split_once(':')
        .ok_or_else(|| Error::usage(format!("unknown alias {name:?}")))?;
    let mut n = None;
    let mut second = None;
    for kv in params.split(',') {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::usage(format!("malformed alias parameter {kv:?}")))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| Error::usage(format!("alias parameter {kv:?} is not an integer")))?;
        match (family, k.trim()) {
            (_, "n") => n = Some(v as usize),
            ("delpezzo", "d") | ("mukai", "g") => second = Some(v),
            _ => return Err(Error::usage(format!("unknown alias parameter {kv:?}"))),
        }
    }
    let (n, second) = match (n, second) {
        (Some(n), Some(s)) => (n, s),
        _ => return Err(Error::usage(format!("alias {name:?} needs both parameters"))),
    };
    match family {
        "delpezzo" => del_pezzo_lookup(n, second)?
            .wps_model
            .ok_or_else(|| Error::Table(format!("del Pezzo degree {second} has no weighted hypersurface model"))),
        "mukai" => {
            let g = u32::try_from(second).map_err(|_| Error::usage("genus out of range"))?;
            MukaiEntry::new(g)?
                .wps_model(n)?
                .ok_or_else(|| Error::Table(format!("Mukai genus {g} has no weighted hypersurface model")))
        }
        _ => Err(Error::usage(format!("unknown alias family {family:?}"))),
    }
}
