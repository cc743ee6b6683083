//! Atlas documents: one JSON file per semigroup, mirroring
//! [`NormalFormEntry`]. See `docs/atlas-schema.md`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use qhc_core::atlas::{
    derive_map, param_poly_string, Constraint, ExpectedTangency, NormalFormEntry, ParamExpr, ParamLink, Template,
};
use qhc_core::invariants::Order;
use qhc_core::{Error, Rational, Result};

pub const ATLAS_4567: &str = include_str!("../atlas/4-5-6-7.json");
pub const ATLAS_456: &str = include_str!("../atlas/4-5-6.json");
pub const ATLAS_457: &str = include_str!("../atlas/4-5-7.json");

pub const SUPPORTED: [&[u32]; 3] = [&[4, 5, 6, 7], &[4, 5, 6], &[4, 5, 7]];

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasDoc {
    pub semigroup: Vec<u32>,
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub param: String,
    pub excluded: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangencyDoc {
    pub value: String,
    pub asserted: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateDoc {
    pub label: String,
    pub n: usize,
    pub components: Vec<String>,
    pub links: BTreeMap<String, String>,
    pub map: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub row: u32,
    pub restriction: String,
    pub params: Vec<String>,
    pub signs: Vec<String>,
    pub constraints: Vec<ConstraintDoc>,
    pub n2: Option<Vec<ConstraintDoc>>,
    pub min_n: usize,
    pub multiplicity: usize,
    pub isotropy: String,
    pub tangency: TangencyDoc,
    pub moduli: Vec<String>,
    pub templates: Vec<TemplateDoc>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| Error::Input(format!("not a rational number: {:?}", s)))
}

pub fn parse_order(s: &str) -> Result<Order> {
    match s {
        "inf" => Ok(Order::Infinite),
        _ => s.parse().map(Order::Finite).map_err(|_| Error::Input(format!("not an order: {:?}", s))),
    }
}

fn constraint(c: &ConstraintDoc) -> Result<Constraint> {
    Ok(Constraint { param: c.param.clone(), excluded: c.excluded.iter().map(|v| parse_rational(v)).collect::<Result<_>>()? })
}

fn constraint_doc(c: &Constraint) -> ConstraintDoc {
    ConstraintDoc { param: c.param.clone(), excluded: c.excluded.iter().map(|v| v.to_string()).collect() }
}

impl EntryDoc {
    pub fn to_entry(&self, semigroup: &[u32]) -> Result<NormalFormEntry> {
        let templates = self
            .templates
            .iter()
            .map(|t| {
                let comps: Vec<&str> = t.components.iter().map(String::as_str).collect();
                let links: Vec<(&str, &str)> = t.links.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
                let tpl = Template::parse(&t.label, t.n, &comps, &links)?;
                if t.map.is_empty() {
                    Ok(tpl)
                } else {
                    tpl.with_map(&t.map.iter().map(String::as_str).collect::<Vec<_>>())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let tangency = if self.tangency.asserted {
            ExpectedTangency::Asserted(
                self.tangency.value.parse().map_err(|_| Error::Input("asserted tangency must be finite".into()))?,
            )
        } else {
            ExpectedTangency::Order(parse_order(&self.tangency.value)?)
        };
        Ok(NormalFormEntry {
            semigroup: semigroup.to_vec(),
            row: self.row,
            restriction: NormalFormEntry::parse_restriction(&self.restriction)?,
            params: self.params.clone(),
            signs: self.signs.clone(),
            constraints: self.constraints.iter().map(constraint).collect::<Result<_>>()?,
            n2: self.n2.as_ref().map(|cs| cs.iter().map(constraint).collect::<Result<_>>()).transpose()?,
            min_n: self.min_n,
            multiplicity: self.multiplicity,
            isotropy: parse_order(&self.isotropy)?,
            tangency,
            moduli: self.moduli.clone(),
            templates,
        })
    }

    pub fn from_entry(e: &NormalFormEntry) -> EntryDoc {
        let tangency = match e.tangency {
            ExpectedTangency::Asserted(n) => TangencyDoc { value: n.to_string(), asserted: true },
            ExpectedTangency::Order(o) => TangencyDoc { value: o.to_string(), asserted: false },
        };
        EntryDoc {
            row: e.row,
            restriction: e.restriction_string(),
            params: e.params.clone(),
            signs: e.signs.clone(),
            constraints: e.constraints.iter().map(constraint_doc).collect(),
            n2: e.n2.as_ref().map(|cs| cs.iter().map(constraint_doc).collect()),
            min_n: e.min_n,
            multiplicity: e.multiplicity,
            isotropy: e.isotropy.to_string(),
            tangency,
            moduli: e.moduli.clone(),
            templates: e.templates.iter().map(template_doc).collect(),
        }
    }
}

fn template_doc(t: &Template) -> TemplateDoc {
    let mut components: Vec<String> = t
        .components
        .iter()
        .map(|c| {
            let mut s = String::new();
            for (k, (coef, p)) in c.iter().enumerate() {
                let atom = if *p == 1 { "t".to_string() } else { format!("t^{}", p) };
                let cs = coef.to_string();
                let term = match cs.as_str() {
                    "1" => atom,
                    "-1" => format!("-{}", atom),
                    _ => format!("{}*{}", cs, atom),
                };
                match (k, term.strip_prefix('-')) {
                    (0, _) => s.push_str(&term),
                    (_, Some(rest)) => s.push_str(&format!(" - {}", rest)),
                    (_, None) => s.push_str(&format!(" + {}", term)),
                }
            }
            if s.is_empty() {
                s.push('0');
            }
            s
        })
        .collect();
    while components.last().is_some_and(|c| c == "0") {
        components.pop();
    }
    TemplateDoc {
        label: t.label.clone(),
        n: t.n,
        components,
        links: t.links.iter().map(|l| (l.restriction.clone(), link_string(l))).collect(),
        map: t.map.iter().map(|c| param_poly_string(c)).collect(),
    }
}

fn link_string(l: &ParamLink) -> String {
    ParamExpr::param(&l.template).scale(&l.factor).to_string()
}

impl AtlasDoc {
    pub fn parse(text: &str) -> Result<AtlasDoc> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("atlas document: {}", e)))
    }

    pub fn entries(&self) -> Result<Vec<NormalFormEntry>> {
        self.entries.iter().map(|e| e.to_entry(&self.semigroup)).collect()
    }

    pub fn from_entries(semigroup: &[u32], entries: &[NormalFormEntry]) -> AtlasDoc {
        AtlasDoc { semigroup: semigroup.to_vec(), entries: entries.iter().map(EntryDoc::from_entry).collect() }
    }

    /// Canonical serialization (pretty JSON with a trailing newline).
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("atlas documents serialize");
        s.push('\n');
        s
    }
}

pub fn atlas_source(semigroup: &[u32]) -> Result<&'static str> {
    match semigroup {
        [4, 5, 6, 7] => Ok(ATLAS_4567),
        [4, 5, 6] => Ok(ATLAS_456),
        [4, 5, 7] => Ok(ATLAS_457),
        _ => Err(Error::Input(format!(
            "no atlas for semigroup {:?}; supported: (4,5,6,7), (4,5,6), (4,5,7)",
            semigroup
        ))),
    }
}

pub fn load_atlas(semigroup: &[u32]) -> Result<Vec<NormalFormEntry>> {
    AtlasDoc::parse(atlas_source(semigroup)?)?.entries()
}

/// Entries with every template map replaced by the derived one.
pub fn with_derived_maps(entries: &[NormalFormEntry]) -> Result<Vec<NormalFormEntry>> {
    entries
        .iter()
        .map(|e| {
            let mut e = e.clone();
            for t in e.templates.iter_mut() {
                t.map = derive_map(&e.semigroup, t, &e.signs)?;
            }
            Ok(e)
        })
        .collect()
}
