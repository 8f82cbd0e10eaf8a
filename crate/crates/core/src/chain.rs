//! The full verification chain for one starter record: starter conditions,
//! expansion, factorization check and, optionally, the seating lift.

use crate::error::HopError;
use crate::expand::{complete_starters, expand_starters, lift, ExpansionPlan};
use crate::factor::{Factorization, TwoFactor};
use crate::format::{StarterKind, StarterRecord};
use crate::verify::{check_a, check_d, check_e, verify_hop_factorization, Clause, Report, SeatingSolution};

fn error_report(clause: Clause, e: HopError) -> Report {
    let mut r = Report::new();
    r.push(clause, e.to_string());
    r
}

/// The starter conditions for the record's kind. Problems that stop the check
/// from running at all (no middle 2-cycle to derive `F2` from, say) are
/// reported as structure violations.
pub fn check_record(r: &StarterRecord) -> Report {
    check_starters(r.kind, r.n, &r.two_factors())
}

/// As [`check_record`], for factors given directly in file order.
pub fn check_starters(kind: StarterKind, n: usize, listed: &[TwoFactor]) -> Report {
    if !kind.parity_ok(n) {
        return error_report(
            Clause::Parity,
            HopError::WrongParity(format!("{kind} starters with n={n}")),
        );
    }
    let f = match complete_starters(kind, n, listed) {
        Ok(f) => f,
        Err(e) => return error_report(Clause::Structure, e),
    };
    let result = match kind {
        StarterKind::One => check_a(&f[0], n),
        StarterKind::Two => Ok(check_d(&f[0], &f[1], n)),
        StarterKind::Three => check_e(&f[0], &f[1], &f[2], n),
    };
    result.unwrap_or_else(|e| error_report(Clause::Parity, e))
}

pub fn expand_record(r: &StarterRecord) -> Result<Factorization, HopError> {
    ExpansionPlan::new(r.clone())?.expand()
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub id: String,
    pub report: Report,
    pub factorization: Option<Factorization>,
    pub seating: Option<SeatingSolution>,
}

impl Certificate {
    pub fn is_ok(&self) -> bool {
        self.report.is_ok()
    }
}

/// Runs every stage that the previous ones allow. The expansion is only
/// attempted for a starter that passes its conditions, and the lift only for
/// a factorization that passes its check.
pub fn certify(r: &StarterRecord, with_lift: bool) -> Certificate {
    certify_starters(r.id(), r.kind, r.n, &r.two_factors(), with_lift)
}

/// As [`certify`], for factors given directly in file order.
pub fn certify_starters(id: String, kind: StarterKind, n: usize, listed: &[TwoFactor], with_lift: bool) -> Certificate {
    let mut cert = Certificate {
        id,
        report: check_starters(kind, n, listed),
        factorization: None,
        seating: None,
    };
    if !cert.report.is_ok() {
        return cert;
    }
    let d = match expand_starters(kind, n, listed) {
        Ok(d) => d,
        Err(e) => {
            cert.report.push(Clause::Structure, format!("expansion: {e}"));
            return cert;
        }
    };
    cert.report.merge(verify_hop_factorization(&d));
    if cert.report.is_ok() && with_lift {
        match lift(&d) {
            Ok(s) => cert.seating = Some(s),
            Err(e) => cert.report.push(Clause::Lift, e.to_string()),
        }
    }
    cert.factorization = Some(d);
    cert
}
