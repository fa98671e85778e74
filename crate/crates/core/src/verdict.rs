use serde::Serialize;

/// Outcome of an exhaustive law check: pass, or the first counterexample found.
#[must_use]
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Verdict<W> {
    Pass,
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

impl<W> From<Option<W>> for Verdict<W> {
    fn from(witness: Option<W>) -> Self {
        match witness {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail(w),
        }
    }
}
