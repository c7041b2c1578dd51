use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    #[serde(rename = "proper")]
    Proper,
    #[serde(rename = "immersive")]
    Immersive,
    #[serde(rename = "transversal")]
    Transversal,
    #[serde(rename = "2-transversal")]
    TwoTransversal,
    #[serde(rename = "good")]
    Good,
    #[serde(rename = "embedding")]
    Embedding,
    #[serde(rename = "separation")]
    Separation,
    #[serde(rename = "flag-property")]
    FlagProperty,
    #[serde(rename = "ledger")]
    Ledger,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Evidence attached to a failure.
///
/// `exact` holds parameter-level data (component indices, defining
/// polynomials of parameters) that does not depend on how the target space
/// is coordinatized; `image` holds exact image coordinates; `decimal` is
/// advisory only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: String,
    pub exact: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub image: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decimal: Vec<String>,
}

impl Witness {
    pub fn new(kind: &str, exact: Vec<String>) -> Self {
        Self { kind: kind.into(), exact, image: Vec::new(), decimal: Vec::new() }
    }

    pub fn with_image(mut self, image: Vec<String>) -> Self {
        self.image = image;
        self
    }

    pub fn with_decimal(mut self, decimal: Vec<String>) -> Self {
        self.decimal = decimal;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub label: String,
    pub value: String,
}

/// Kind, status, and witness kind with its exact lines.
pub type Verdict = (CertificateKind, Status, Option<(String, Vec<String>)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub status: Status,
    pub subject: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default)]
    pub trace: Vec<TraceEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Certificate>,
}

impl Certificate {
    pub fn pass(kind: CertificateKind, subject: impl Into<String>) -> Self {
        Self {
            kind,
            status: Status::Pass,
            subject: subject.into(),
            witness: None,
            reason: None,
            trace: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn fail(kind: CertificateKind, subject: impl Into<String>, witness: Witness) -> Self {
        Self { status: Status::Fail, witness: Some(witness), ..Self::pass(kind, subject) }
    }

    pub fn inconclusive(kind: CertificateKind, subject: impl Into<String>, reason: impl Into<String>) -> Self {
        Self { status: Status::Inconclusive, reason: Some(reason.into()), ..Self::pass(kind, subject) }
    }

    /// Fails with the first failing part's witness, else inconclusive if
    /// any part is, else passes.
    pub fn all_of(kind: CertificateKind, subject: impl Into<String>, parts: Vec<Certificate>) -> Self {
        let subject = subject.into();
        let mut c = if let Some(f) = parts.iter().find(|p| p.status == Status::Fail) {
            let mut c = Self::fail(kind, subject, f.witness.clone().expect("failures carry witnesses"));
            c.reason = Some(format!("{} failed", f.kind.label()));
            c
        } else if let Some(i) = parts.iter().find(|p| p.status == Status::Inconclusive) {
            Self::inconclusive(
                kind,
                subject,
                format!("{} inconclusive: {}", i.kind.label(), i.reason.clone().unwrap_or_default()),
            )
        } else {
            Self::pass(kind, subject)
        };
        c.parts = parts;
        c
    }

    pub fn with_trace(mut self, trace: Vec<TraceEntry>) -> Self {
        self.trace = trace;
        self
    }

    pub fn push(&mut self, label: impl Into<String>, value: impl Into<String>) {
        self.trace.push(TraceEntry { label: label.into(), value: value.into() });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Status and parameter-level witness data of this certificate and all
    /// parts, depth first.
    pub fn verdict_signature(&self) -> Vec<Verdict> {
        let mut out = vec![(self.kind, self.status, self.witness.as_ref().map(|w| (w.kind.clone(), w.exact.clone())))];
        for p in &self.parts {
            out.extend(p.verdict_signature());
        }
        out
    }

    /// First part (depth first, self included) of the given kind.
    pub fn find(&self, kind: CertificateKind) -> Option<&Certificate> {
        if self.kind == kind {
            return Some(self);
        }
        self.parts.iter().find_map(|p| p.find(kind))
    }

    /// Well-formedness: failures carry witnesses, inconclusive results carry reasons.
    pub fn is_well_formed(&self) -> bool {
        let own = match self.status {
            Status::Fail => self.witness.is_some(),
            Status::Inconclusive => self.reason.is_some(),
            Status::Pass => self.witness.is_none(),
        };
        own && self.parts.iter().all(Certificate::is_well_formed)
    }
}

pub(crate) fn trace(label: impl Into<String>, value: impl Into<String>) -> TraceEntry {
    TraceEntry { label: label.into(), value: value.into() }
}

impl CertificateKind {
    pub fn label(&self) -> &'static str {
        match self {
            CertificateKind::Proper => "proper",
            CertificateKind::Immersive => "immersive",
            CertificateKind::Transversal => "transversal",
            CertificateKind::TwoTransversal => "2-transversal",
            CertificateKind::Good => "good",
            CertificateKind::Embedding => "embedding",
            CertificateKind::Separation => "separation",
            CertificateKind::FlagProperty => "flag-property",
            CertificateKind::Ledger => "ledger",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_prefers_failure() {
        let p = Certificate::pass(CertificateKind::Proper, "x");
        let i = Certificate::inconclusive(CertificateKind::Transversal, "x", "infinite");
        let f = Certificate::fail(
            CertificateKind::Immersive,
            "x",
            Witness::new("critical-parameter", vec!["t = 0".into()]),
        );
        let all = Certificate::all_of(CertificateKind::Good, "x", vec![p.clone(), i.clone(), f]);
        assert_eq!(all.status, Status::Fail);
        assert!(all.is_well_formed());
        assert_eq!(Certificate::all_of(CertificateKind::Good, "x", vec![p.clone(), i]).status, Status::Inconclusive);
        assert!(Certificate::all_of(CertificateKind::Good, "x", vec![p]).passed());
    }

    #[test]
    fn serializes_kinds_with_their_names() {
        let c = Certificate::pass(CertificateKind::TwoTransversal, "x");
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"2-transversal\"") && json.contains("\"pass\""));
        assert_eq!(serde_json::from_str::<Certificate>(&json).unwrap(), c);
    }
}
