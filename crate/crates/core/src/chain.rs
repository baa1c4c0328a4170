//! Almost-commensurability chains between model flows.
//!
//! A chain is a sequence of links, each an almost equivalence or a
//! commensurability, with matching endpoints. Almost equivalences are
//! trusted facts restricted to a whitelist of (geodesic model, model matrix)
//! pairs; commensurabilities carry a checkable payload.

use std::fmt;

use num_traits::ToPrimitive;

use crate::commensurability::{
    are_commensurable, build_certificate, verify_certificate, CommensurabilityCertificate, Options,
};
use crate::error::{Error, Result};
use crate::linalg::HyperbolicMatrix;
use crate::models::{
    check_geodesic_cover, genus_model_matrix, geodesic_common_cover, orbifold_model_matrix,
    GeodesicCover, Model,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Citation {
    /// Genus-g geodesic flow ~ suspension of `[[g,g+1],[g-1,g]]²`.
    GhysHashiguchi,
    /// (2,3,t+4) geodesic flow ~ suspension of `[[0,1],[-1,t]]`.
    BirkhoffSection23n,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::GhysHashiguchi => "GHYS_HASHIGUCHI",
            Citation::BirkhoffSection23n => "BIRKHOFF_SECTION_23N",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Citation> {
        match tag {
            "GHYS_HASHIGUCHI" => Some(Citation::GhysHashiguchi),
            "BIRKHOFF_SECTION_23N" => Some(Citation::BirkhoffSection23n),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkKind {
    AlmostEquivalence,
    Commensurability,
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Citation(Citation),
    Certificate(Box<CommensurabilityCertificate>),
    GeodesicCommonCover(GeodesicCover),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub kind: LinkKind,
    pub from: Model,
    pub to: Model,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCertificate {
    pub endpoints: (Model, Model),
    pub links: Vec<ChainLink>,
}

/// The sanctioned almost-equivalence partner of a geodesic model.
pub fn model_suspension(model: &Model) -> Result<Option<(HyperbolicMatrix, Citation)>> {
    model.validate()?;
    Ok(match *model {
        Model::Suspension(_) => None,
        Model::GeodesicSurface { genus } => {
            Some((genus_model_matrix(genus)?, Citation::GhysHashiguchi))
        }
        Model::GeodesicOrbifold { n } => {
            Some((orbifold_model_matrix(n - 4)?, Citation::BirkhoffSection23n))
        }
    })
}

fn almost_equivalence(from: Model, to: Model, citation: Citation) -> ChainLink {
    ChainLink {
        kind: LinkKind::AlmostEquivalence,
        from,
        to,
        evidence: Evidence::Citation(citation),
    }
}

fn certificate_link(cert: CommensurabilityCertificate) -> Result<ChainLink> {
    Ok(ChainLink {
        kind: LinkKind::Commensurability,
        from: Model::Suspension(HyperbolicMatrix::new(cert.a.clone())?),
        to: Model::Suspension(HyperbolicMatrix::new(cert.b.clone())?),
        evidence: Evidence::Certificate(Box::new(cert)),
    })
}

/// Links from a model to a suspension, and that suspension.
fn to_suspension(model: &Model) -> Result<(Vec<ChainLink>, HyperbolicMatrix)> {
    match model_suspension(model)? {
        None => Ok((Vec::new(), model.monodromy().expect("suspension").clone())),
        Some((m, citation)) => Ok((
            vec![almost_equivalence(model.clone(), Model::Suspension(m.clone()), citation)],
            m,
        )),
    }
}

/// Links from a model to a geodesic model: a suspension `M_A` is first
/// certified commensurable to `M_{F_t}` (same trace `t`), then linked to the
/// (2,3,t+4) orbifold. `outward` orients the links from the model towards
/// the geodesic one; otherwise they run back towards the model.
fn to_geodesic(model: &Model, outward: bool, opts: &Options) -> Result<(Vec<ChainLink>, Model)> {
    let a = match model {
        Model::Suspension(a) => a,
        _ => return Ok((Vec::new(), model.clone())),
    };
    let t = a.trace().to_u64().ok_or_else(|| {
        Error::InvalidArgument(format!("trace of {a} is too large for an orbifold model"))
    })?;
    let f_t = orbifold_model_matrix(t)?;
    let orbifold = Model::orbifold(t + 4)?;
    let mut links = Vec::new();
    if *a != f_t {
        let cert = if outward {
            build_certificate(a, &f_t, 1, 1, opts)?
        } else {
            build_certificate(&f_t, a, 1, 1, opts)?
        };
        links.push(certificate_link(cert)?);
    }
    let (from, to) = (Model::Suspension(f_t), orbifold.clone());
    let ae = if outward {
        almost_equivalence(from, to, Citation::BirkhoffSection23n)
    } else {
        almost_equivalence(to, from, Citation::BirkhoffSection23n)
    };
    if outward {
        links.push(ae);
    } else {
        links.insert(0, ae);
    }
    Ok((links, orbifold))
}

/// A verifiable chain of almost equivalences and commensurabilities from
/// `m1` to `m2`.
///
/// Geodesic endpoints are replaced by their model suspensions. If those are
/// commensurable one certificate joins them; otherwise each side is moved to
/// a geodesic orbifold model and the two geodesic flows are joined by a
/// common-cover link.
pub fn almost_commensurability_chain(m1: &Model, m2: &Model, opts: &Options) -> Result<ChainCertificate> {
    let (mut links, s1) = to_suspension(m1)?;
    let (tail, s2) = to_suspension(m2)?;
    let verdict = are_commensurable(&s1, &s2, opts)?;
    if let Some(cert) = verdict.certificate {
        links.push(certificate_link(cert)?);
        links.extend(tail.into_iter().map(reverse_citation));
    } else {
        let (mut first, g1) = to_geodesic(m1, true, opts)?;
        let (last, g2) = to_geodesic(m2, false, opts)?;
        let cover = geodesic_common_cover(&g1, &g2)?;
        first.push(ChainLink {
            kind: LinkKind::Commensurability,
            from: g1,
            to: g2,
            evidence: Evidence::GeodesicCommonCover(cover),
        });
        first.extend(last);
        links = first;
    }
    Ok(ChainCertificate {
        endpoints: (m1.clone(), m2.clone()),
        links,
    })
}

fn reverse_citation(link: ChainLink) -> ChainLink {
    debug_assert_eq!(link.kind, LinkKind::AlmostEquivalence);
    ChainLink {
        from: link.to,
        to: link.from,
        ..link
    }
}

/// Why a chain was rejected; `link` is the index of the offending link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainViolation {
    pub link: Option<usize>,
    pub clause: &'static str,
    pub detail: String,
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.link {
            Some(i) => write!(f, "link {i}: {}: {}", self.clause, self.detail),
            None => write!(f, "{}: {}", self.clause, self.detail),
        }
    }
}

/// Checks continuity, endpoints and every link's payload.
pub fn verify_chain(c: &ChainCertificate) -> Result<(), ChainViolation> {
    let fail = |link: Option<usize>, clause, detail: String| ChainViolation { link, clause, detail };
    let (first, last) = match (c.links.first(), c.links.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(fail(None, "empty", "chain has no links".into())),
    };
    if first.from != c.endpoints.0 || last.to != c.endpoints.1 {
        return Err(fail(None, "endpoints", "chain does not join the stated endpoints".into()));
    }
    for (i, pair) in c.links.windows(2).enumerate() {
        if pair[0].to != pair[1].from {
            return Err(fail(
                Some(i + 1),
                "continuity",
                format!("starts at {} but the previous link ends at {}", pair[1].from, pair[0].to),
            ));
        }
    }
    for (i, link) in c.links.iter().enumerate() {
        verify_link(link).map_err(|(clause, detail)| fail(Some(i), clause, detail))?;
    }
    Ok(())
}

fn verify_link(link: &ChainLink) -> Result<(), (&'static str, String)> {
    for m in [&link.from, &link.to] {
        m.validate().map_err(|e| ("model", e.to_string()))?;
    }
    match (&link.kind, &link.evidence) {
        (LinkKind::AlmostEquivalence, Evidence::Citation(citation)) => {
            let (geodesic, other) = if link.from.is_geodesic() {
                (&link.from, &link.to)
            } else {
                (&link.to, &link.from)
            };
            let sanctioned = model_suspension(geodesic).map_err(|e| ("model", e.to_string()))?;
            match sanctioned {
                Some((m, cited)) if cited == *citation && other.monodromy() == Some(&m) => Ok(()),
                Some((m, cited)) => Err((
                    "citation",
                    format!("{geodesic} is sanctioned only with suspension:{m} via {}", cited.tag()),
                )),
                None => Err(("citation", "almost equivalence must involve a geodesic model".into())),
            }
        }
        (LinkKind::Commensurability, Evidence::Certificate(cert)) => {
            match (link.from.monodromy(), link.to.monodromy()) {
                (Some(a), Some(b)) if *a.as_mat() == cert.a && *b.as_mat() == cert.b => {}
                _ => {
                    return Err((
                        "certificate_endpoints",
                        "certificate matrices differ from the link's suspensions".into(),
                    ))
                }
            }
            verify_certificate(cert).map_err(|v| ("certificate", v.to_string()))
        }
        (LinkKind::Commensurability, Evidence::GeodesicCommonCover(cover)) => {
            check_geodesic_cover(&link.from, &link.to, cover).map_err(|e| ("cover", e))
        }
        (kind, _) => Err(("kind", format!("{kind:?} link carries the wrong kind of evidence"))),
    }
}
