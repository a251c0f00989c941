use std::collections::BTreeMap;

use rand::Rng;

/// Probability map over ordered labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<L: Ord> {
    pub outcomes: BTreeMap<L, f64>,
}

impl<L: Ord + Clone> Distribution<L> {
    pub fn new() -> Self {
        Distribution { outcomes: BTreeMap::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (L, f64)>) -> Self {
        let mut d = Self::new();
        for (l, p) in pairs {
            d.add(l, p);
        }
        d
    }

    pub fn add(&mut self, l: L, p: f64) {
        *self.outcomes.entry(l).or_insert(0.0) += p;
    }

    pub fn get(&self, l: &L) -> f64 {
        self.outcomes.get(l).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.outcomes.values().sum()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Checks non-negativity (to 1e-12) and normalization (to 1e-9).
    pub fn is_valid(&self) -> bool {
        self.outcomes.values().all(|&p| p >= -1e-12) && (self.total() - 1.0).abs() < 1e-9
    }

    pub fn map<M: Ord + Clone>(&self, f: impl Fn(&L) -> M) -> Distribution<M> {
        Distribution::from_pairs(self.outcomes.iter().map(|(l, &p)| (f(l), p)))
    }

    /// Largest absolute difference over the union of supports.
    pub fn max_diff(&self, other: &Distribution<L>) -> f64 {
        let mut m = 0.0f64;
        for (l, &p) in &self.outcomes {
            m = m.max((p - other.get(l)).abs());
        }
        for (l, &p) in &other.outcomes {
            m = m.max((p - self.get(l)).abs());
        }
        m
    }

    pub fn tv_distance(&self, other: &Distribution<L>) -> f64 {
        let mut s = 0.0;
        for (l, &p) in &self.outcomes {
            s += (p - other.get(l)).abs();
        }
        for (l, &p) in &other.outcomes {
            if !self.outcomes.contains_key(l) {
                s += p.abs();
            }
        }
        s / 2.0
    }

    /// Empirical distribution of a sample list.
    pub fn empirical(samples: &[L]) -> Self {
        let w = 1.0 / samples.len() as f64;
        Self::from_pairs(samples.iter().map(|s| (s.clone(), w)))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> L {
        let u: f64 = rng.gen::<f64>() * self.total();
        let mut acc = 0.0;
        let mut last = None;
        for (l, &p) in &self.outcomes {
            acc += p;
            if p > 0.0 {
                last = Some(l);
            }
            if u < acc {
                return l.clone();
            }
        }
        last.expect("sampling from an empty distribution").clone()
    }
}

impl<L: Ord + Clone> Default for Distribution<L> {
    fn default() -> Self {
        Self::new()
    }
}

/// Draws an index from a cumulative table whose last entry is the total mass.
pub fn sample_cdf<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> usize {
    let total = *cdf.last().expect("empty cdf");
    let u = rng.gen::<f64>() * total;
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}

pub fn cumulative(p: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    p.iter()
        .map(|&x| {
            acc += x.max(0.0);
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn cdf_sampling_avoids_zero_mass() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let cdf = cumulative(&[0.0, 0.5, 0.0, 0.5, 0.0]);
        for _ in 0..1000 {
            let i = sample_cdf(&cdf, &mut rng);
            assert!(i == 1 || i == 3);
        }
    }

    #[test]
    fn tv_and_marginals() {
        let a = Distribution::from_pairs([((0, 1), 0.25), ((0, 2), 0.25), ((1, 1), 0.5)]);
        let m = a.map(|l| l.0);
        assert_eq!(m.get(&0), 0.5);
        let b = Distribution::from_pairs([((0, 1), 0.5), ((1, 1), 0.5)]);
        assert!((a.tv_distance(&b) - 0.25).abs() < 1e-15);
        assert!(a.is_valid());
    }
}
