use std::fmt;
use std::sync::Arc;

use group_core::{coset_labels, Elem, GroupSpec, Result, Subgroup};

type OracleFn = Arc<dyn Fn(Elem) -> u64 + Send + Sync>;

/// A function on `G` constant on left cosets of a hidden subgroup and distinct across them.
#[derive(Clone)]
pub struct HidingOracle {
    group: GroupSpec,
    f: OracleFn,
    hidden: Option<Subgroup>,
}

impl fmt::Debug for HidingOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HidingOracle")
            .field("group", &self.group)
            .field("hidden_order", &self.hidden.as_ref().map(|h| h.order()))
            .finish()
    }
}

impl HidingOracle {
    pub fn from_fn(group: GroupSpec, f: impl Fn(Elem) -> u64 + Send + Sync + 'static) -> Self {
        HidingOracle { group, f: Arc::new(f), hidden: None }
    }

    /// Attaches the subgroup the caller knows to be hidden, for test assertions only.
    pub fn with_hidden(mut self, h: Subgroup) -> Self {
        self.hidden = Some(h);
        self
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn hidden(&self) -> Option<&Subgroup> {
        self.hidden.as_ref()
    }

    pub fn eval(&self, g: Elem) -> u64 {
        (self.f)(g)
    }

    /// `{g : f(g) = f(g0)}`, the coset of `g0`, found by scanning the group.
    pub fn coset_of(&self, g0: Elem) -> Vec<Elem> {
        let y = self.eval(g0);
        self.group.elements_iter().filter(|&g| self.eval(g) == y).collect()
    }

    /// Checks `f(a) = f(b) <=> aH = bH` against the attached subgroup.
    pub fn is_consistent(&self) -> Option<bool> {
        let h = self.hidden.as_ref()?;
        let labels = coset_labels(&self.group, h).ok()?;
        let n = self.group.order();
        let vals: Vec<u64> = (0..n).map(|g| self.eval(g)).collect();
        let mut first_of_label: Vec<Option<u64>> = vec![None; labels.iter().max().map_or(0, |m| m + 1)];
        let mut seen = std::collections::HashMap::new();
        for g in 0..n {
            match first_of_label[labels[g]] {
                None => first_of_label[labels[g]] = Some(vals[g]),
                Some(v) if v != vals[g] => return Some(false),
                _ => {}
            }
            if let Some(&l) = seen.get(&vals[g]) {
                if l != labels[g] {
                    return Some(false);
                }
            } else {
                seen.insert(vals[g], labels[g]);
            }
        }
        Some(true)
    }
}

/// `f(g)` = canonical coset label (rank of the coset minimum).
pub fn oracle_from_subgroup(g: &GroupSpec, h: &Subgroup) -> Result<HidingOracle> {
    let labels = Arc::new(coset_labels(g, h)?);
    Ok(HidingOracle::from_fn(g.clone(), move |x| labels[x] as u64).with_hidden(h.clone()))
}
