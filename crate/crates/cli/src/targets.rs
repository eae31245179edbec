//! One lookup over the four id namespaces: terminating identities, product
//! formulas, integral representations and classical limits.

use qhyper::identities::{self, IdentityRecord, RhsKind};
use qhyper::integrals::IntegralRepId;
use qhyper::products::{ClassicalLimit, ProductId};
use qhyper::Mode;
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub enum Target {
    Terminating(&'static IdentityRecord),
    Product(ProductId),
    Integral(IntegralRepId),
    Classical(ClassicalLimit),
}

/// One line of `qhyper list`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListEntry {
    pub id: String,
    pub namespace: &'static str,
    pub params: Vec<&'static str>,
    pub modes: Vec<Mode>,
    pub description: &'static str,
}

impl Target {
    pub fn resolve(id: &str) -> Option<Target> {
        if let Ok(rec) = identities::lookup(id) {
            return Some(Target::Terminating(rec));
        }
        if let Some(p) = ProductId::from_name(id) {
            return Some(Target::Product(p));
        }
        if let Some(r) = IntegralRepId::from_name(id) {
            return Some(Target::Integral(r));
        }
        ClassicalLimit::from_name(id).map(Target::Classical)
    }

    /// Every target in listing order: namespace by namespace, each in its
    /// registry order.
    pub fn all() -> Vec<Target> {
        let mut v: Vec<Target> = identities::records().iter().map(Target::Terminating).collect();
        v.extend(ProductId::ALL.into_iter().map(Target::Product));
        v.extend(IntegralRepId::ALL.into_iter().map(Target::Integral));
        v.extend(ClassicalLimit::ALL.into_iter().map(Target::Classical));
        v
    }

    pub fn id(&self) -> &'static str {
        match self {
            Target::Terminating(r) => r.id,
            Target::Product(p) => p.name(),
            Target::Integral(r) => r.name(),
            Target::Classical(c) => c.name(),
        }
    }

    pub fn namespace(&self) -> &'static str {
        match self {
            Target::Terminating(_) => "terminating",
            Target::Product(_) => "product",
            Target::Integral(_) => "integral",
            Target::Classical(_) => "classical",
        }
    }

    pub fn params(&self) -> Vec<&'static str> {
        match self {
            Target::Terminating(r) => r.params.to_vec(),
            Target::Product(p) => p.params().to_vec(),
            Target::Integral(r) => r.params().to_vec(),
            Target::Classical(_) => vec!["a", "b", "z"],
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Target::Terminating(r) => r.description,
            Target::Product(p) => p.description(),
            Target::Integral(r) => r.description(),
            Target::Classical(c) => c.description(),
        }
    }

    /// Exact mode means exact equality of both sides for terminating
    /// identities and exact coefficient comparison for products.
    pub fn supports_exact(&self) -> bool {
        match self {
            Target::Terminating(r) => r.kind == RhsKind::Exact,
            Target::Product(p) => p.has_exact_coefficients(),
            Target::Integral(_) | Target::Classical(_) => false,
        }
    }

    pub fn default_mode(&self) -> Mode {
        match self {
            Target::Terminating(r) if r.kind == RhsKind::Exact => Mode::Exact,
            _ => Mode::Approx,
        }
    }

    pub fn default_eps(&self, mode: Mode) -> f64 {
        match (mode, self) {
            (Mode::Exact, _) => 0.0,
            (Mode::Approx, Target::Integral(_)) => 1e-25,
            (Mode::Approx, Target::Classical(_)) => qhyper::products::CLASSICAL_EPS,
            (Mode::Approx, _) => 1e-30,
        }
    }

    pub fn list_entry(&self) -> ListEntry {
        let modes = if self.supports_exact() { vec![Mode::Exact, Mode::Approx] } else { vec![Mode::Approx] };
        ListEntry {
            id: self.id().to_string(),
            namespace: self.namespace(),
            params: self.params(),
            modes,
            description: self.description(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn namespaces_are_disjoint_and_resolvable() {
        let all = Target::all();
        let ids: BTreeSet<&str> = all.iter().map(|t| t.id()).collect();
        assert_eq!(ids.len(), all.len());
        assert_eq!(all.len(), 22 + 18 + 5 + 5);
        for t in &all {
            assert_eq!(Target::resolve(t.id()).map(|r| r.id()), Some(t.id()));
        }
        assert!(Target::resolve("NOPE").is_none());
    }
}
