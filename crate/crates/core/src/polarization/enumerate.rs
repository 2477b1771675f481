//! Enumeration of primitive types below the degree bound.

use num_traits::ToPrimitive;

use super::bounds::degree_threshold;
use super::types::PolarizationType;
use super::PolarizationError;

/// All primitive types of dimension `g` with degree strictly below the
/// threshold, sorted by degree and then lexicographically.
pub fn enumerate_below_bound(g: u32) -> Result<Vec<PolarizationType>, PolarizationError> {
    let threshold = degree_threshold(g)?;
    let limit = threshold
        .to_u64()
        .ok_or_else(|| PolarizationError::EnumerationTooLarge { g, threshold: threshold.to_string() })?;
    let mut out = Vec::new();
    let mut chain = vec![1u64];
    extend(g as usize, limit, 1, &mut chain, &mut out);
    let mut types: Vec<PolarizationType> =
        out.into_iter().map(|d| PolarizationType::new(d).expect("chains are valid")).collect();
    types.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(types)
}

/// Extends `chain` (product `prod`) by multiples of its last entry while the
/// smallest possible completion stays below `limit`.
fn extend(g: usize, limit: u64, prod: u64, chain: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if chain.len() == g {
        out.push(chain.clone());
        return;
    }
    let last = *chain.last().expect("starts with 1");
    let remaining = (g - chain.len()) as u32;
    let mut next = last;
    loop {
        // the completion with every later entry equal to `next` is minimal
        let min_completion = next
            .checked_pow(remaining)
            .and_then(|p| p.checked_mul(prod))
            .filter(|&p| p < limit);
        if min_completion.is_none() {
            break;
        }
        chain.push(next);
        extend(g, limit, prod * next, chain, out);
        chain.pop();
        next += last;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: every tuple with entries <= limit, filtered.
    fn brute_force(g: usize, limit: u64) -> Vec<Vec<u64>> {
        let mut all = vec![vec![1u64]];
        for _ in 1..g {
            let mut next = Vec::new();
            for t in &all {
                for d in 1..limit {
                    let mut u = t.clone();
                    u.push(d);
                    if u.iter().product::<u64>() < limit {
                        next.push(u);
                    }
                }
            }
            all = next;
        }
        all.retain(|t| t.windows(2).all(|w| w[1] % w[0] == 0));
        all.sort_by_key(|t| (t.iter().product::<u64>(), t.clone()));
        all
    }

    #[test]
    fn g4_is_three_types() {
        let got: Vec<Vec<u64>> = enumerate_below_bound(4).unwrap().into_iter().map(Vec::from).collect();
        assert_eq!(got, vec![vec![1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 1, 1, 3]]);
    }

    #[test]
    fn g4_and_g5_match_brute_force() {
        for (g, limit) in [(4, 4), (5, 45)] {
            let got: Vec<Vec<u64>> = enumerate_below_bound(g).unwrap().into_iter().map(Vec::from).collect();
            assert_eq!(got, brute_force(g as usize, limit), "g = {g}");
        }
    }

    #[test]
    fn g5_contents() {
        let got: Vec<Vec<u64>> = enumerate_below_bound(5).unwrap().into_iter().map(Vec::from).collect();
        assert!(got.contains(&vec![1, 2, 2, 2, 2]));
        assert!(got.contains(&vec![1, 1, 1, 1, 44]));
        assert!(!got.contains(&vec![1, 1, 1, 1, 45]));
        assert_eq!(got.len(), 72);
    }
}
