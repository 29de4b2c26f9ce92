//! JSON documents and text formats shared with the command-line tool.
//!
//! All numeric payloads are exact: `F_p` scalars serialize as integers,
//! rationals as `"num/den"` strings. Serialization is deterministic (struct
//! field order, collections pre-sorted), so identical inputs produce
//! byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{FramedFamily, RelationFamily};
use crate::field::{parse_scalar, Field, Scalar};
use crate::grading::{Degree, Multiset};
use crate::invariants::{Barcode, Death, RankInvariant};
use crate::moduli::OrbitReport;
use crate::module::PersistenceModule;
use crate::presentation::Presentation;

/// An exact scalar on the wire: integer for prime fields, `"num/den"` for
/// rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Text(String),
}

pub fn scalar_to_repr(s: &Scalar) -> ScalarRepr {
    match s {
        Scalar::Fp(v) => ScalarRepr::Int(*v as i64),
        Scalar::Q(_) => ScalarRepr::Text(s.to_string()),
    }
}

pub fn scalar_from_repr(field: Field, r: &ScalarRepr) -> Result<Scalar> {
    match r {
        ScalarRepr::Int(v) => Ok(field.from_i64(*v)),
        ScalarRepr::Text(t) => parse_scalar(field, t),
    }
}

fn vector_to_repr(v: &[Scalar]) -> Vec<ScalarRepr> {
    v.iter().map(scalar_to_repr).collect()
}

fn vector_from_repr(field: Field, v: &[ScalarRepr]) -> Result<Vec<Scalar>> {
    v.iter().map(|r| scalar_from_repr(field, r)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultisetEntry {
    pub degree: Vec<u32>,
    pub multiplicity: usize,
}

pub fn multiset_to_doc(xi: &Multiset) -> Vec<MultisetEntry> {
    xi.iter()
        .map(|(d, m)| MultisetEntry {
            degree: d.coords().to_vec(),
            multiplicity: m,
        })
        .collect()
}

pub fn multiset_from_doc(entries: &[MultisetEntry]) -> Result<Multiset> {
    Multiset::from_pairs(
        entries
            .iter()
            .map(|e| (Degree::new(e.degree.clone()), e.multiplicity)),
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationEntry {
    pub degree: Vec<u32>,
    pub vector: Vec<ScalarRepr>,
}

/// The presentation document: `{"xi0": [...], "xi1": [...], "relations":
/// [{"degree": [...], "vector": [...]}], "field": "Fp:5" | "Q"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub xi0: Vec<MultisetEntry>,
    pub xi1: Vec<MultisetEntry>,
    pub relations: Vec<RelationEntry>,
    pub field: String,
}

pub fn presentation_to_doc(p: &Presentation) -> PresentationDoc {
    PresentationDoc {
        xi0: multiset_to_doc(&p.xi0),
        xi1: multiset_to_doc(&p.xi1),
        relations: p
            .relations
            .iter()
            .map(|(d, v)| RelationEntry {
                degree: d.coords().to_vec(),
                vector: vector_to_repr(v),
            })
            .collect(),
        field: p.field.to_string(),
    }
}

pub fn presentation_from_doc(doc: &PresentationDoc) -> Result<Presentation> {
    let field = Field::parse(&doc.field)?;
    let pres = Presentation {
        field,
        xi0: multiset_from_doc(&doc.xi0)?,
        xi1: multiset_from_doc(&doc.xi1)?,
        relations: doc
            .relations
            .iter()
            .map(|r| {
                Ok((
                    Degree::new(r.degree.clone()),
                    vector_from_repr(field, &r.vector)?,
                ))
            })
            .collect::<Result<_>>()?,
    };
    pres.validate()?;
    Ok(pres)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceEntry {
    pub degree: Vec<u32>,
    pub basis: Vec<Vec<ScalarRepr>>,
}

/// A relation or framed family on the wire.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub kind: String,
    pub field: String,
    pub xi0: Vec<MultisetEntry>,
    pub xi1: Vec<MultisetEntry>,
    pub spaces: Vec<SpaceEntry>,
}

pub enum AnyFamily {
    Relation(RelationFamily),
    Framed(FramedFamily),
}

fn spaces_to_doc(spaces: &BTreeMap<Degree, Vec<Vec<Scalar>>>) -> Vec<SpaceEntry> {
    spaces
        .iter()
        .map(|(d, basis)| SpaceEntry {
            degree: d.coords().to_vec(),
            basis: basis.iter().map(|v| vector_to_repr(v)).collect(),
        })
        .collect()
}

pub fn relation_family_to_doc(f: &RelationFamily) -> FamilyDoc {
    FamilyDoc {
        kind: "relation".into(),
        field: f.field().to_string(),
        xi0: multiset_to_doc(f.xi0()),
        xi1: multiset_to_doc(f.xi1()),
        spaces: spaces_to_doc(f.spaces()),
    }
}

pub fn framed_family_to_doc(f: &FramedFamily) -> FamilyDoc {
    FamilyDoc {
        kind: "framed".into(),
        field: f.field().to_string(),
        xi0: multiset_to_doc(f.xi0()),
        xi1: multiset_to_doc(f.xi1()),
        spaces: spaces_to_doc(f.spaces()),
    }
}

pub fn family_from_doc(doc: &FamilyDoc) -> Result<AnyFamily> {
    let field = Field::parse(&doc.field)?;
    let xi0 = multiset_from_doc(&doc.xi0)?;
    let xi1 = multiset_from_doc(&doc.xi1)?;
    let mut spaces = BTreeMap::new();
    for s in &doc.spaces {
        let basis = s
            .basis
            .iter()
            .map(|v| vector_from_repr(field, v))
            .collect::<Result<_>>()?;
        spaces.insert(Degree::new(s.degree.clone()), basis);
    }
    match doc.kind.as_str() {
        "relation" => Ok(AnyFamily::Relation(RelationFamily::new(
            field, xi0, xi1, spaces,
        )?)),
        "framed" => Ok(AnyFamily::Framed(FramedFamily::new(
            field, xi0, xi1, spaces,
        )?)),
        other => Err(Error::Invalid(format!(
            "unknown family kind `{other}` (expected `relation` or `framed`)"
        ))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BarEntry {
    pub birth: u32,
    /// `null` encodes an immortal bar.
    pub death: Option<u32>,
}

/// `{"bars": [{"birth": 0, "death": 2}, {"birth": 1, "death": null}]}`,
/// sorted by birth then death with immortal bars last, multiplicities
/// written out as repeated entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BarcodeDoc {
    pub bars: Vec<BarEntry>,
}

pub fn barcode_to_doc(b: &Barcode) -> BarcodeDoc {
    let mut bars = Vec::new();
    for (birth, death, count) in b.iter() {
        let death = match death {
            Death::Finite(d) => Some(d),
            Death::Infinite => None,
        };
        for _ in 0..count {
            bars.push(BarEntry { birth, death });
        }
    }
    bars.sort_by_key(|e| (e.birth, e.death.is_none(), e.death));
    BarcodeDoc { bars }
}

pub fn barcode_from_doc(doc: &BarcodeDoc) -> Result<Barcode> {
    let mut b = Barcode::new();
    for e in &doc.bars {
        let death = e.death.map_or(Death::Infinite, Death::Finite);
        if let Death::Finite(d) = death {
            if e.birth >= d {
                return Err(Error::Invalid(format!("empty bar [{},{d})", e.birth)));
            }
        }
        b.add(e.birth, death, 1);
    }
    Ok(b)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankEntry {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub rank: usize,
    pub dim: usize,
}

/// The rank invariant as a flat list over all pairs `u ⪯ v ⪯ box`, sorted
/// lexicographically by `(u, v)`.
pub fn rank_to_doc(r: &RankInvariant) -> Vec<RankEntry> {
    r.table()
        .iter()
        .map(|((u, v), &(rank, dim))| RankEntry {
            u: u.coords().to_vec(),
            v: v.coords().to_vec(),
            rank,
            dim,
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimEntry {
    pub degree: Vec<u32>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepEntry {
    pub from: Vec<u32>,
    pub axis: usize,
    pub matrix: Vec<Vec<ScalarRepr>>,
}

/// A grid module on the wire: dimensions and unit-step matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub n: usize,
    pub field: String,
    #[serde(rename = "box")]
    pub bound: Vec<u32>,
    pub dims: Vec<DimEntry>,
    pub steps: Vec<StepEntry>,
}

pub fn module_to_doc(m: &PersistenceModule) -> ModuleDoc {
    let mut dims = Vec::new();
    let mut steps = Vec::new();
    for u in m.grid().points() {
        dims.push(DimEntry {
            degree: u.coords().to_vec(),
            dim: m.dim_at(&u),
        });
        for axis in 0..m.n() {
            if let Some(s) = m.step(&u, axis) {
                steps.push(StepEntry {
                    from: u.coords().to_vec(),
                    axis,
                    matrix: (0..s.rows())
                        .map(|i| vector_to_repr(s.row(i)))
                        .collect(),
                });
            }
        }
    }
    ModuleDoc {
        n: m.n(),
        field: m.field().to_string(),
        bound: m.bound().coords().to_vec(),
        dims,
        steps,
    }
}

/// `{"q": 3, "total": 256, "orbits": 15, "distinct_line_orbits": 1,
/// "sizes": {"1": ..}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitDoc {
    pub q: u32,
    pub total: usize,
    pub orbits: usize,
    pub distinct_line_orbits: Option<usize>,
    pub sizes: BTreeMap<usize, usize>,
}

pub fn orbit_report_to_doc(q: u32, r: &OrbitReport) -> OrbitDoc {
    OrbitDoc {
        q,
        total: r.total_points,
        orbits: r.orbit_count,
        distinct_line_orbits: r.distinct_line_orbits,
        sizes: r.orbit_sizes.clone(),
    }
}

/// Parses the multiset text syntax `{(v1 v2 ... vn):mult, ...}`,
/// e.g. `{(0 0):2}`.
pub fn parse_multiset_text(text: &str) -> Result<Multiset> {
    let bad = |msg: &str| Error::Invalid(format!("malformed multiset `{text}`: {msg}"));
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| bad("missing braces"))?
        .trim();
    let mut pairs = Vec::new();
    if inner.is_empty() {
        return Multiset::from_pairs(pairs);
    }
    for item in inner.split(',') {
        let item = item.trim();
        let (deg, mult) = item
            .rsplit_once(':')
            .ok_or_else(|| bad("missing `:multiplicity`"))?;
        let coords_text = deg
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| bad("degree is not parenthesized"))?;
        let coords: Vec<u32> = coords_text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(&format!("bad coordinate `{t}`"))))
            .collect::<Result<_>>()?;
        if coords.is_empty() {
            return Err(bad("empty degree"));
        }
        let mult: usize = mult
            .trim()
            .parse()
            .map_err(|_| bad(&format!("bad multiplicity `{mult}`")))?;
        pairs.push((Degree::new(coords), mult));
    }
    Multiset::from_pairs(pairs)
}

/// Canonical inverse of [`parse_multiset_text`].
pub fn format_multiset_text(xi: &Multiset) -> String {
    let items: Vec<String> = xi
        .iter()
        .map(|(d, m)| {
            let coords: Vec<String> = d.coords().iter().map(u32::to_string).collect();
            format!("({}):{m}", coords.join(" "))
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{quotient_module, PersistenceModule as PM};
    use crate::grading::FreeModule;

    #[test]
    fn multiset_text_round_trip() {
        for text in ["{(0 0):2}", "{(1):1, (2):3}", "{}"] {
            let xi = parse_multiset_text(text).unwrap();
            assert_eq!(format_multiset_text(&xi), text);
        }
        assert!(parse_multiset_text("{(0 0)}").is_err());
        assert!(parse_multiset_text("(0):1").is_err());
        assert!(parse_multiset_text("{(0):0}").is_err());
    }

    #[test]
    fn presentation_doc_round_trip() {
        let field = Field::fp(5).unwrap();
        let free = FreeModule::new(Multiset::from_coords(&[(&[1], 1), (&[2], 1)]));
        let gens = vec![
            (Degree::new(vec![2]), vec![field.one(), field.zero()]),
            (Degree::new(vec![3]), vec![field.zero(), field.one()]),
        ];
        let m = quotient_module(field, &free, &gens).unwrap();
        let pres = crate::presentation::minimal_presentation(&m).unwrap();
        let doc = presentation_to_doc(&pres);
        let json = serde_json::to_string(&doc).unwrap();
        let back: PresentationDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(presentation_from_doc(&back).unwrap(), pres);
        // Identical inputs serialize identically.
        assert_eq!(json, serde_json::to_string(&presentation_to_doc(&pres)).unwrap());
    }

    #[test]
    fn rational_scalars_serialize_as_strings() {
        let s = Scalar::rational(-3, 7);
        match scalar_to_repr(&s) {
            ScalarRepr::Text(t) => assert_eq!(t, "-3/7"),
            _ => panic!("expected text"),
        }
        assert_eq!(scalar_from_repr(Field::Q, &ScalarRepr::Text("-3/7".into())).unwrap(), s);
    }

    #[test]
    fn barcode_doc_round_trip_and_ordering() {
        let m = PM::interval_sum(Field::fp(2).unwrap(), 4, &[(1, None), (0, Some(2)), (0, Some(1))])
            .unwrap();
        let b = crate::invariants::barcode(&m).unwrap();
        let doc = barcode_to_doc(&b);
        let births: Vec<u32> = doc.bars.iter().map(|e| e.birth).collect();
        assert_eq!(births, vec![0, 0, 1]);
        assert_eq!(barcode_from_doc(&doc).unwrap(), b);
    }

    #[test]
    fn family_doc_round_trip() {
        let field = Field::fp(3).unwrap();
        let xi0 = Multiset::from_coords(&[(&[0, 0], 2)]);
        let xi1 = Multiset::from_coords(&[(&[1, 1], 1)]);
        let mut spaces = BTreeMap::new();
        spaces.insert(
            Degree::new(vec![1, 1]),
            vec![vec![field.one(), field.from_i64(2)]],
        );
        let fam = RelationFamily::new(field, xi0, xi1, spaces).unwrap();
        let doc = relation_family_to_doc(&fam);
        match family_from_doc(&doc).unwrap() {
            AnyFamily::Relation(back) => assert_eq!(back, fam),
            _ => panic!("kind mismatch"),
        }
        let mut framed_doc = doc.clone();
        framed_doc.kind = "framed".into();
        assert!(matches!(
            family_from_doc(&framed_doc).unwrap(),
            AnyFamily::Framed(_)
        ));
        framed_doc.kind = "nonsense".into();
        assert!(family_from_doc(&framed_doc).is_err());
    }
}
