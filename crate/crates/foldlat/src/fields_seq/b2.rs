use serde::{Deserialize, Serialize};

use super::gf::{prime_power, FiniteField};
use crate::error::{Error, Result};

/// A set of residues mod n whose ordered differences are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct B2Set {
    pub n: u64,
    pub elements: Vec<u64>,
}

impl B2Set {
    /// Validates and sorts.
    pub fn new(n: u64, elements: impl IntoIterator<Item = u64>) -> Result<B2Set> {
        let mut elements: Vec<u64> = elements.into_iter().collect();
        elements.sort_unstable();
        if n == 0 || elements.iter().any(|&e| e >= n) {
            return Err(Error::ParamOutOfRange(format!("B2 elements must lie in Z_{n}")));
        }
        if elements.windows(2).any(|w| w[0] == w[1]) || !verify_b2(&elements, n) {
            return Err(Error::ParamOutOfRange(format!("{elements:?} is not a B2 set mod {n}")));
        }
        Ok(B2Set { n, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, r: u64) -> bool {
        self.elements.binary_search(&r).is_ok()
    }

    /// The translate a + B.
    pub fn shift(&self, a: u64) -> B2Set {
        let mut e: Vec<u64> = self.elements.iter().map(|&x| (x + a) % self.n).collect();
        e.sort_unstable();
        B2Set { n: self.n, elements: e }
    }
}

/// True iff the ordered differences of `b` are pairwise distinct mod n.
pub fn verify_b2(b: &[u64], n: u64) -> bool {
    if n == 0 {
        return b.is_empty();
    }
    let mut seen = vec![false; n as usize];
    for (i, &x) in b.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = ((x % n + n - y % n) % n) as usize;
            if d == 0 || seen[d] {
                return false;
            }
            seen[d] = true;
        }
    }
    true
}

/// Bose's set {i : θ^i − θ ∈ GF(q)} in Z_{q²−1}, computed inside GF(q²)
/// with θ primitive; GF(q) is the set of powers θ^{j(q+1)} together with 0.
pub fn bose_b2(q: u64) -> Result<B2Set> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > 1024 {
        return Err(Error::ParamOutOfRange(format!("Bose construction supports q <= 1024, got {q}")));
    }
    let f = FiniteField::new(p, 2 * k)?;
    let n = q * q - 1;
    let theta = f.alpha();
    let in_subfield = |a: u64| a == 0 || f.log(a).is_some_and(|l| l % (q + 1) == 0);
    let elements: Vec<u64> = (0..n).filter(|&i| in_subfield(f.sub(f.exp(i), theta))).collect();
    let set = B2Set { n, elements };
    if set.len() as u64 != q || !verify_b2(&set.elements, n) {
        return Err(Error::InternalInconsistency(format!("Bose construction for q={q} gave {:?}", set.elements)));
    }
    Ok(set)
}

/// Depth-first search for an m-element B2 set mod n containing 0, visiting
/// at most `node_budget` partial sets.
pub fn search_b2(n: u64, m: usize, node_budget: u64) -> Option<B2Set> {
    if n == 0 || n > 200 {
        return None;
    }
    if m == 0 {
        return Some(B2Set { n, elements: vec![] });
    }
    let mut used = vec![false; n as usize];
    let mut chosen = vec![0u64];
    let mut nodes = 0u64;
    fn go(n: u64, m: usize, used: &mut [bool], chosen: &mut Vec<u64>, nodes: &mut u64, budget: u64) -> bool {
        if chosen.len() == m {
            return true;
        }
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        let start = chosen.last().copied().unwrap_or(0) + 1;
        for c in start..n {
            let diffs: Vec<usize> = chosen
                .iter()
                .flat_map(|&x| [((c + n - x) % n) as usize, ((x + n - c) % n) as usize])
                .collect();
            let mut ok = true;
            for (i, &d) in diffs.iter().enumerate() {
                if used[d] || diffs[..i].contains(&d) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for &d in &diffs {
                used[d] = true;
            }
            chosen.push(c);
            if go(n, m, used, chosen, nodes, budget) {
                return true;
            }
            chosen.pop();
            for &d in &diffs {
                used[d] = false;
            }
            if *nodes > budget {
                return false;
            }
        }
        false
    }
    go(n, m, &mut used, &mut chosen, &mut nodes, node_budget).then_some(B2Set { n, elements: chosen })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_and_small_cases() {
        assert!(verify_b2(&[0, 1, 4, 10, 12, 17], 31));
        assert!(!verify_b2(&[0, 1, 2], 7));
        assert!(B2Set::new(7, [0, 1, 2]).is_err());
        assert_eq!(bose_b2(4).unwrap().len(), 4);
        assert!(matches!(bose_b2(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn search_finds_perfect_set() {
        let b = search_b2(31, 6, 1_000_000).unwrap();
        assert!(verify_b2(&b.elements, 31));
        assert!(search_b2(10, 5, 1_000_000).is_none());
    }
}
