//! On-disk certificate documents.
//!
//! One JSON object per file with a `kind` discriminator and
//! `format_version` "1". Every integer is a decimal string so values of any
//! size survive a round trip. `tool_version` is informational and never
//! verified.

use std::fmt;

use anosov_core::chain::{ChainCertificate, ChainLink, Citation, Evidence, LinkKind};
use anosov_core::commensurability::CommensurabilityCertificate;
use anosov_core::models::{GeodesicCover, Model};
use anosov_core::{HyperbolicMatrix, Lattice2, Mat2};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[allow(clippy::large_enum_variant)]
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Document {
    Commensurability {
        format_version: String,
        tool_version: String,
        certificate: CertificateDoc,
    },
    Chain {
        format_version: String,
        tool_version: String,
        endpoints: [ModelDoc; 2],
        links: Vec<LinkDoc>,
    },
}

type MatrixDoc = [[String; 2]; 2];

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub a: MatrixDoc,
    pub b: MatrixDoc,
    pub i: String,
    pub j: String,
    pub p: MatrixDoc,
    pub det_p: String,
    pub lambda_p: LatticeDoc,
    pub k: String,
    pub index_over_a: String,
    pub index_over_b: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub a: String,
    pub b: String,
    pub d: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelDoc {
    Suspension { monodromy: MatrixDoc },
    Surface { genus: String },
    Orbifold { orders: [String; 3] },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub kind: LinkKindDoc,
    pub from: ModelDoc,
    pub to: ModelDoc,
    pub evidence: EvidenceDoc,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum LinkKindDoc {
    AlmostEquivalence,
    Commensurability,
}

#[allow(clippy::large_enum_variant)]
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum EvidenceDoc {
    Citation {
        tag: String,
    },
    Certificate {
        certificate: CertificateDoc,
    },
    GeodesicCommonCover {
        chi_first: String,
        chi_second: String,
        cover_genus: String,
        degree_first: String,
        degree_second: String,
    },
}

/// Why a document could not be turned back into core values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadError {
    /// Not a well-formed document: bad JSON, unknown fields, bad numbers.
    Malformed(String),
    /// Well-formed but describes an invalid object (e.g. a non-SL2
    /// monodromy); the certificate is rejected.
    Invalid(String),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Malformed(s) => write!(f, "malformed document: {s}"),
            LoadError::Invalid(s) => write!(f, "invalid content: {s}"),
        }
    }
}

/// Parsed document contents.
#[allow(clippy::large_enum_variant)]
pub enum Loaded {
    Commensurability(CommensurabilityCertificate),
    Chain(ChainCertificate),
}

fn int(s: &str, field: &str) -> Result<BigInt, LoadError> {
    s.parse()
        .map_err(|_| LoadError::Malformed(format!("field '{field}': '{s}' is not a decimal integer")))
}

fn small(s: &str, field: &str) -> Result<u64, LoadError> {
    s.parse()
        .map_err(|_| LoadError::Malformed(format!("field '{field}': '{s}' is not a nonnegative 64-bit integer")))
}

fn mat_doc(m: &Mat2) -> MatrixDoc {
    [
        [m.a.to_string(), m.b.to_string()],
        [m.c.to_string(), m.d.to_string()],
    ]
}

fn mat_from(doc: &MatrixDoc, field: &str) -> Result<Mat2, LoadError> {
    Ok(Mat2::new(
        int(&doc[0][0], field)?,
        int(&doc[0][1], field)?,
        int(&doc[1][0], field)?,
        int(&doc[1][1], field)?,
    ))
}

fn certificate_doc(c: &CommensurabilityCertificate) -> CertificateDoc {
    CertificateDoc {
        a: mat_doc(&c.a),
        b: mat_doc(&c.b),
        i: c.i.to_string(),
        j: c.j.to_string(),
        p: mat_doc(&c.p),
        det_p: c.det_p.to_string(),
        lambda_p: LatticeDoc {
            a: c.lambda_p.a().to_string(),
            b: c.lambda_p.b().to_string(),
            d: c.lambda_p.d().to_string(),
        },
        k: c.k.to_string(),
        index_over_a: c.index_over_a.to_string(),
        index_over_b: c.index_over_b.to_string(),
    }
}

fn certificate_from(doc: &CertificateDoc) -> Result<CommensurabilityCertificate, LoadError> {
    let lambda_p = Lattice2::new(
        int(&doc.lambda_p.a, "lambda_p.a")?,
        int(&doc.lambda_p.b, "lambda_p.b")?,
        int(&doc.lambda_p.d, "lambda_p.d")?,
    )
    .map_err(|e| LoadError::Invalid(format!("lattice: {e}")))?;
    Ok(CommensurabilityCertificate {
        a: mat_from(&doc.a, "a")?,
        b: mat_from(&doc.b, "b")?,
        i: small(&doc.i, "i")?,
        j: small(&doc.j, "j")?,
        p: mat_from(&doc.p, "p")?,
        det_p: int(&doc.det_p, "det_p")?,
        lambda_p,
        k: small(&doc.k, "k")?,
        index_over_a: int(&doc.index_over_a, "index_over_a")?,
        index_over_b: int(&doc.index_over_b, "index_over_b")?,
    })
}

fn model_doc(m: &Model) -> ModelDoc {
    match m {
        Model::Suspension(a) => ModelDoc::Suspension {
            monodromy: mat_doc(a.as_mat()),
        },
        Model::GeodesicSurface { genus } => ModelDoc::Surface {
            genus: genus.to_string(),
        },
        Model::GeodesicOrbifold { n } => ModelDoc::Orbifold {
            orders: ["2".into(), "3".into(), n.to_string()],
        },
    }
}

fn model_from(doc: &ModelDoc) -> Result<Model, LoadError> {
    let invalid = |e: anosov_core::Error| LoadError::Invalid(format!("model: {e}"));
    match doc {
        ModelDoc::Suspension { monodromy } => {
            let m = mat_from(monodromy, "monodromy")?;
            Ok(Model::Suspension(HyperbolicMatrix::new(m).map_err(invalid)?))
        }
        ModelDoc::Surface { genus } => Model::surface(small(genus, "genus")?).map_err(invalid),
        ModelDoc::Orbifold { orders } => {
            if orders[0] != "2" || orders[1] != "3" {
                return Err(LoadError::Invalid(format!(
                    "model: unsupported orbifold signature ({},{},{})",
                    orders[0], orders[1], orders[2]
                )));
            }
            Model::orbifold(small(&orders[2], "orders")?).map_err(invalid)
        }
    }
}

fn link_doc(link: &ChainLink) -> LinkDoc {
    LinkDoc {
        kind: match link.kind {
            LinkKind::AlmostEquivalence => LinkKindDoc::AlmostEquivalence,
            LinkKind::Commensurability => LinkKindDoc::Commensurability,
        },
        from: model_doc(&link.from),
        to: model_doc(&link.to),
        evidence: match &link.evidence {
            Evidence::Citation(c) => EvidenceDoc::Citation {
                tag: c.tag().to_string(),
            },
            Evidence::Certificate(c) => EvidenceDoc::Certificate {
                certificate: certificate_doc(c),
            },
            Evidence::GeodesicCommonCover(g) => EvidenceDoc::GeodesicCommonCover {
                chi_first: g.chi_first.to_string(),
                chi_second: g.chi_second.to_string(),
                cover_genus: g.cover_genus.to_string(),
                degree_first: g.degree_first.to_string(),
                degree_second: g.degree_second.to_string(),
            },
        },
    }
}

fn link_from(doc: &LinkDoc) -> Result<ChainLink, LoadError> {
    let rational = |s: &str, field: &str| {
        s.parse::<num_rational::BigRational>()
            .map_err(|_| LoadError::Malformed(format!("field '{field}': '{s}' is not a rational")))
    };
    let evidence = match &doc.evidence {
        EvidenceDoc::Citation { tag } => Evidence::Citation(
            Citation::from_tag(tag)
                .ok_or_else(|| LoadError::Invalid(format!("citation: unknown tag '{tag}'")))?,
        ),
        EvidenceDoc::Certificate { certificate } => {
            Evidence::Certificate(Box::new(certificate_from(certificate)?))
        }
        EvidenceDoc::GeodesicCommonCover {
            chi_first,
            chi_second,
            cover_genus,
            degree_first,
            degree_second,
        } => Evidence::GeodesicCommonCover(GeodesicCover {
            chi_first: rational(chi_first, "chi_first")?,
            chi_second: rational(chi_second, "chi_second")?,
            cover_genus: int(cover_genus, "cover_genus")?,
            degree_first: int(degree_first, "degree_first")?,
            degree_second: int(degree_second, "degree_second")?,
        }),
    };
    Ok(ChainLink {
        kind: match doc.kind {
            LinkKindDoc::AlmostEquivalence => LinkKind::AlmostEquivalence,
            LinkKindDoc::Commensurability => LinkKind::Commensurability,
        },
        from: model_from(&doc.from)?,
        to: model_from(&doc.to)?,
        evidence,
    })
}

pub fn commensurability_document(c: &CommensurabilityCertificate) -> Document {
    Document::Commensurability {
        format_version: FORMAT_VERSION.into(),
        tool_version: TOOL_VERSION.into(),
        certificate: certificate_doc(c),
    }
}

pub fn chain_document(c: &ChainCertificate) -> Document {
    Document::Chain {
        format_version: FORMAT_VERSION.into(),
        tool_version: TOOL_VERSION.into(),
        endpoints: [model_doc(&c.endpoints.0), model_doc(&c.endpoints.1)],
        links: c.links.iter().map(link_doc).collect(),
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn load(text: &str) -> Result<Loaded, LoadError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| LoadError::Malformed(e.to_string()))?;
    let check_version = |v: &str| {
        if v == FORMAT_VERSION {
            Ok(())
        } else {
            Err(LoadError::Malformed(format!("unsupported format_version '{v}'")))
        }
    };
    match doc {
        Document::Commensurability {
            format_version,
            certificate,
            ..
        } => {
            check_version(&format_version)?;
            Ok(Loaded::Commensurability(certificate_from(&certificate)?))
        }
        Document::Chain {
            format_version,
            endpoints,
            links,
            ..
        } => {
            check_version(&format_version)?;
            Ok(Loaded::Chain(ChainCertificate {
                endpoints: (model_from(&endpoints[0])?, model_from(&endpoints[1])?),
                links: links.iter().map(link_from).collect::<Result<_, _>>()?,
            }))
        }
    }
}
