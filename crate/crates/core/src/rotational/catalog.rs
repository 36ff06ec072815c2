//! The reference table of rotationally symmetric R-separable coordinate
//! systems, stored as expressions in the scale constants `a` and `k`.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::RotParams;
use crate::error::{Error, Result};
use crate::exactmath::rational::parse_rational;
use crate::exactmath::{int, Rational};
use crate::expr::parse_constant;
use crate::group::{apply, from_gl2_f64, FloatGroupElement, GroupElement};
use crate::quartic::{canonical_form, classify_by_roots, WebType};

/// The catalog shipped with the crate.
pub const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.json");

#[derive(Deserialize)]
struct RawCatalog {
    schema: String,
    scales: BTreeMap<String, String>,
    rows: Vec<RawRow>,
}

#[derive(Deserialize)]
struct RawRow {
    name: String,
    params: BTreeMap<String, String>,
    expected_type: String,
    #[serde(default)]
    equivalence: Option<RawEquivalence>,
}

#[derive(Deserialize)]
struct RawEquivalence {
    equivalent_to: String,
    transformation: String,
    #[serde(default)]
    witness: Option<BTreeMap<String, serde_json::Value>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equivalence {
    pub equivalent_to: String,
    pub transformation: String,
    pub witness: Option<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: RotParams,
    pub expected_type: WebType,
    pub equivalence: Option<Equivalence>,
}

/// Values of the scale constants used to instantiate a catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scales(#[serde(serialize_with = "ser_map")] pub BTreeMap<String, Rational>);

fn ser_map<S: serde::Serializer>(m: &BTreeMap<String, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &v.to_string())?;
    }
    map.end()
}

impl Scales {
    /// Parses overrides of the form `name=value`.
    pub fn with_overrides<'a>(mut self, overrides: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        for item in overrides {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("scale override `{item}` is not of the form name=value")))?;
            let name = name.trim();
            if !self.0.contains_key(name) {
                return Err(Error::Parse(format!("unknown scale constant `{name}`")));
            }
            self.0.insert(name.to_string(), parse_rational(value)?);
        }
        self.validate()?;
        Ok(self)
    }

    /// Requires `a > 0` and `0 < k < 1` when those constants are present.
    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.0.get("a") {
            if !a.is_positive() {
                return Err(Error::Domain(format!("scale a = {a} must be positive")));
            }
        }
        if let Some(k) = self.0.get("k") {
            if !k.is_positive() || *k >= int(1) {
                return Err(Error::Domain(format!("scale k = {k} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

/// A parsed catalog before instantiation.
pub struct Catalog {
    raw: RawCatalog,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawCatalog =
            serde_json::from_str(text).map_err(|e| Error::Catalog(format!("malformed catalog: {e}")))?;
        if raw.schema != "rotweb.catalog/v1" {
            return Err(Error::Catalog(format!("unsupported catalog schema `{}`", raw.schema)));
        }
        Ok(Self { raw })
    }

    pub fn builtin() -> Self {
        Self::parse(BUILTIN_CATALOG).expect("the bundled catalog parses")
    }

    pub fn default_scales(&self) -> Result<Scales> {
        let map = self
            .raw
            .scales
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Scales(map))
    }

    pub fn instantiate(&self, scales: &Scales) -> Result<Vec<CatalogEntry>> {
        scales.validate()?;
        self.raw.rows.iter().map(|row| instantiate_row(row, &scales.0)).collect()
    }
}

fn instantiate_row(row: &RawRow, env: &BTreeMap<String, Rational>) -> Result<CatalogEntry> {
    let ctx = |e: Error| Error::Catalog(format!("row `{}`: {e}", row.name));
    let value = |key: &str| -> Result<Rational> {
        let src = row.params.get(key).ok_or_else(|| Error::Catalog(format!("row `{}` lacks {key}", row.name)))?;
        parse_constant(src, env).map_err(ctx)
    };
    let params =
        RotParams::from_array([value("M33")?, value("L3")?, value("H")?, value("C33")?, value("D3")?, value("A33")?]);
    let expected_type = row.expected_type.parse().map_err(ctx)?;
    let equivalence = row
        .equivalence
        .as_ref()
        .map(|eq| -> Result<Equivalence> {
            let witness = eq
                .witness
                .as_ref()
                .map(|w| -> Result<GroupElement> {
                    let field = |key: &str| -> Result<Rational> {
                        let src = w
                            .get(key)
                            .and_then(|v| v.as_str())
                            .ok_or_else(|| Error::Catalog(format!("row `{}`: witness lacks {key}", row.name)))?;
                        parse_constant(src, env).map_err(ctx)
                    };
                    let discrete = w.get("discrete").and_then(|v| v.as_bool()).unwrap_or(false);
                    GroupElement::new(field("a0")?, field("a1")?, field("a2")?, field("a3")?, field("a4")?, discrete)
                        .map_err(ctx)
                })
                .transpose()?;
            Ok(Equivalence {
                equivalent_to: eq.equivalent_to.clone(),
                transformation: eq.transformation.clone(),
                witness,
            })
        })
        .transpose()?;
    Ok(CatalogEntry { name: row.name.clone(), params, expected_type, equivalence })
}

/// The bundled table at `a = 1`, `k = ½`.
pub fn catalog() -> Vec<CatalogEntry> {
    let cat = Catalog::builtin();
    let scales = cat.default_scales().expect("bundled scales parse");
    cat.instantiate(&scales).expect("bundled catalog instantiates")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessCheck {
    /// `exact` for tabulated elements, `numeric` for ones assembled from
    /// canonical-form witnesses.
    pub kind: &'static str,
    pub element: Option<GroupElement>,
    pub numeric_element: Option<FloatGroupElement>,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowCheck {
    pub name: String,
    pub params: RotParams,
    pub expected_type: WebType,
    pub classified_type: Option<WebType>,
    pub type_matches: bool,
    pub equivalent_to: Option<String>,
    pub target_type_matches: Option<bool>,
    pub witness: Option<WitnessCheck>,
    pub error: Option<String>,
}

impl RowCheck {
    pub fn passes(&self) -> bool {
        self.type_matches && self.target_type_matches != Some(false) && self.witness.as_ref().is_none_or(|w| w.holds)
    }
}

/// Classifies every row and checks the listed equivalences.
pub fn check_catalog(entries: &[CatalogEntry]) -> Vec<RowCheck> {
    entries.iter().map(|e| check_row(e, entries)).collect()
}

fn check_row(entry: &CatalogEntry, all: &[CatalogEntry]) -> RowCheck {
    let classified = classify_by_roots(&entry.params.quartic());
    let classified_type = classified.as_ref().ok().copied();
    let mut check = RowCheck {
        name: entry.name.clone(),
        params: entry.params.clone(),
        expected_type: entry.expected_type,
        classified_type,
        type_matches: classified_type == Some(entry.expected_type),
        equivalent_to: None,
        target_type_matches: None,
        witness: None,
        error: classified.err().map(|e| e.to_string()),
    };
    let Some(eq) = &entry.equivalence else { return check };
    check.equivalent_to = Some(eq.equivalent_to.clone());
    let Some(target) = all.iter().find(|t| t.name.eq_ignore_ascii_case(&eq.equivalent_to)) else {
        check.error = Some(format!("equivalence target `{}` is not in the catalog", eq.equivalent_to));
        check.target_type_matches = Some(false);
        return check;
    };
    let target_type = classify_by_roots(&target.params.quartic()).ok();
    check.target_type_matches = Some(target_type.is_some() && target_type == classified_type);
    check.witness = Some(match &eq.witness {
        Some(g) => exact_witness(g, entry, target),
        None => numeric_witness(entry, target),
    });
    check
}

fn exact_witness(g: &GroupElement, entry: &CatalogEntry, target: &CatalogEntry) -> WitnessCheck {
    let (holds, detail) = match apply(g, &entry.params) {
        Ok(image) if image == target.params => (true, format!("maps {} onto {}", entry.params, target.params)),
        Ok(image) => (false, format!("image {image} differs from {}", target.params)),
        Err(e) => (false, e.to_string()),
    };
    WitnessCheck { kind: "exact", element: Some(g.clone()), numeric_element: None, holds, detail }
}

fn numeric_witness(entry: &CatalogEntry, target: &CatalogEntry) -> WitnessCheck {
    let fail =
        |detail: String| WitnessCheck { kind: "numeric", element: None, numeric_element: None, holds: false, detail };
    let (src, dst) = (entry.params.quartic(), target.params.quartic());
    let (cs, ct) = match (canonical_form(&src), canonical_form(&dst)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(e.to_string()),
    };
    if cs.form != ct.form || cs.parameter.as_ref().map(|p| p.approx) != ct.parameter.as_ref().map(|p| p.approx) {
        return fail(format!("canonical forms differ: {:?} versus {:?}", cs.representative, ct.representative));
    }
    let Some(back) = ct.witness.matrix().inverse() else { return fail("singular witness".into()) };
    let m = cs.witness.matrix().mul(&back);
    let Ok(mut g) = from_gl2_f64(&m) else { return fail("singular composite".into()) };
    let q = src.to_f64();
    let t = dst.to_f64();
    let image = g.apply_quartic(&q);
    let (k, _) = t.iter().enumerate().max_by(|a, b| a.1.abs().total_cmp(&b.1.abs())).expect("five coefficients");
    g.a3 *= t[k] / image[k];
    let image = g.apply_quartic(&q);
    let scale = t.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let err = image.iter().zip(&t).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale;
    // C₃₃ − H/3 transforms affinely, so a₄ can always match the target.
    let shifted_src = crate::exactmath::rational::to_f64(&entry.params.shifted_c33());
    let shifted_dst = crate::exactmath::rational::to_f64(&target.params.shifted_c33());
    g.a4 = shifted_dst - g.a3 * shifted_src;
    let holds = err < 1e-9;
    WitnessCheck {
        kind: "numeric",
        element: None,
        numeric_element: Some(g),
        holds,
        detail: format!(
            "quartic mismatch {err:.2e}; {}",
            if g.discrete { "uses the sphere inversion" } else { "continuous part only" }
        ),
    }
}
