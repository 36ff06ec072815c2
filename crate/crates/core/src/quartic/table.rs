//! Decision list over invariant signs. Sign conditions on covariants are
//! read in the semidefinite sense: `P > 0` means `P ≥ 0` on ℝ² and `P ≢ 0`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{covariant_l, covariant_m, form_sign, hessian, invariants, BinaryQuartic, FormSign, Invariants, WebType};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AuditEntry {
    pub row: WebType,
    pub condition: &'static str,
    pub holds: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InvariantClassification {
    pub web_type: Option<WebType>,
    pub invariants: Invariants,
    pub hessian_sign: FormSign,
    pub l_sign: FormSign,
    pub m_sign: FormSign,
    pub audit: Vec<AuditEntry>,
}

/// Runs the decision list in order and records every row it evaluated; the
/// first row whose condition holds decides. The Cardioid test (`I = J = 0`,
/// `H ≢ 0`) comes before the `L ≡ 0` rows.
pub fn invariant_table_decision(q: &BinaryQuartic) -> Result<InvariantClassification> {
    q.require_nonzero("classify_by_invariants")?;
    let inv = invariants(q);
    let hessian_sign = form_sign(hessian(q).form())?;
    let l_sign = form_sign(covariant_l(q).form())?;
    let m_sign = form_sign(&covariant_m(q))?;

    let delta = &inv.delta;
    let pos = |s: FormSign| s == FormSign::PsdNonzero;
    let neg = |s: FormSign| s == FormSign::NsdNonzero;
    let zero = |s: FormSign| s == FormSign::IdenticallyZero;

    let rows: [(WebType, &'static str, bool); 9] = [
        (WebType::DiskCyclide, "Δ < 0", delta.is_negative()),
        (WebType::BiCyclide, "Δ > 0 and H < 0 and M > 0", delta.is_positive() && neg(hessian_sign) && pos(m_sign)),
        (
            WebType::FlatRingCyclide,
            "Δ > 0 and (H > 0 or M > 0)",
            delta.is_positive() && (pos(hessian_sign) || pos(m_sign)),
        ),
        (WebType::InverseProlateSpheroidal, "Δ = 0 and L < 0", delta.is_zero() && neg(l_sign)),
        (WebType::InverseOblateSpheroidal, "Δ = 0 and L > 0", delta.is_zero() && pos(l_sign)),
        (WebType::Cardioid, "I = J = 0 and H ≢ 0", inv.i.is_zero() && inv.j.is_zero() && !zero(hessian_sign)),
        (WebType::Toroidal, "L ≡ 0 and H > 0", zero(l_sign) && pos(hessian_sign)),
        (WebType::Bispherical, "L ≡ 0 and H < 0", zero(l_sign) && neg(hessian_sign)),
        (WebType::TangentSphere, "H ≡ 0", zero(hessian_sign)),
    ];

    let mut audit = Vec::new();
    let mut web_type = None;
    for (row, condition, holds) in rows {
        audit.push(AuditEntry { row, condition, holds });
        if holds {
            web_type = Some(row);
            break;
        }
    }
    Ok(InvariantClassification { web_type, invariants: inv, hessian_sign, l_sign, m_sign, audit })
}

/// The decision-list classification; no matching row is an error carrying
/// the audit trail.
pub fn classify_by_invariants(q: &BinaryQuartic) -> Result<InvariantClassification> {
    let result = invariant_table_decision(q)?;
    if result.web_type.is_none() {
        let trail = serde_json::to_string(&result).unwrap_or_default();
        return Err(Error::Unclassified(format!("no decision row matched quartic {q}: {trail}")));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn kind(c: [i64; 5]) -> WebType {
        classify_by_invariants(&BinaryQuartic::from_ints(c)).unwrap().web_type.unwrap()
    }

    #[test]
    fn worked_examples() {
        let q = BinaryQuartic::new([rat(1, 2), int(0), int(1), int(0), rat(1, 2)]);
        let r = classify_by_invariants(&q).unwrap();
        assert_eq!(r.web_type, Some(WebType::Toroidal));
        assert_eq!(r.l_sign, FormSign::IdenticallyZero);
        assert_eq!(r.hessian_sign, FormSign::PsdNonzero);
        assert_eq!(kind([1, 0, -2, 0, 1]), WebType::Bispherical);
        assert_eq!(kind([0, 1, 0, 0, 0]), WebType::Cardioid);
        assert_eq!(kind([1, 0, 0, 0, 0]), WebType::TangentSphere);
    }

    #[test]
    fn audit_records_rows_until_match() {
        let r = invariant_table_decision(&BinaryQuartic::from_ints([0, 1, 0, 0, 0])).unwrap();
        assert_eq!(r.audit.len(), 6);
        assert!(r.audit[..5].iter().all(|e| !e.holds));
    }
}
